//! The six Kepler error Hamiltonians and their equations of motion.
//!
//! A symmetric splitting scheme exactly conserves a modified Hamiltonian
//!
//! ```text
//! H_A = H₀ + ε² (e_TTV H_TTV + e_VTV H_VTV)
//!          + ε⁴ (e_TTTTV H_TTTTV + e_VTTTV H_VTTTV
//!               + e_TTVTV H_TTVTV + e_VTVTV H_VTVTV) + …
//! ```
//!
//! where each error term is a nested Poisson bracket of the kinetic and
//! potential pieces. For V = −1/r the brackets reduce to the closed forms
//! evaluated here:
//!
//! ```text
//! H_TTV   =  r⁻³ (p² − 3 (r̂·p)²)
//! H_VTV   = −r⁻⁴
//! H_TTVTV =  4 r⁻⁶ (p² − 6 (r̂·p)²)
//! H_VTVTV = −4 r⁻⁷
//! H_TTTTV = −9 r⁻⁵ (p⁴ − 10 p² (r̂·p)² + (35/3)(r̂·p)⁴)
//! H_VTTTV =  9 r⁻⁶ (p² − 3 (r̂·p)²)
//! ```
//!
//! The quadratic-in-p terms all belong to the two-parameter family
//! h(n, α) = r⁻ⁿ (p² − α (r̂·p)²). Every term conserves angular momentum, so
//! its flow can be written with three scalar fields f, g, h:
//!
//! ```text
//! ṗ = f r̂ + g (p·q) p
//! q̇ = −g (p·q) q + h p
//! ```
//!
//! which is the form consumed both by the corrector W-step and by the
//! brute-force precession oracle. (For the pure central potentials H_VTV
//! and H_VTVTV, g = h = 0.)

use crate::error::{Error, Result};
use crate::kepler::PhaseState;
use crate::vec2::Vec2;
use std::fmt;

/// Identifier of one of the six fourth-order-or-lower error Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorHamiltonianId {
    TTV,
    VTV,
    TTVTV,
    VTVTV,
    TTTTV,
    VTTTV,
}

impl ErrorHamiltonianId {
    pub const ALL: [ErrorHamiltonianId; 6] = [
        ErrorHamiltonianId::TTV,
        ErrorHamiltonianId::VTV,
        ErrorHamiltonianId::TTVTV,
        ErrorHamiltonianId::VTVTV,
        ErrorHamiltonianId::TTTTV,
        ErrorHamiltonianId::VTTTV,
    ];

    /// The ε power at which this term enters the modified Hamiltonian.
    pub fn order(self) -> u32 {
        match self {
            ErrorHamiltonianId::TTV | ErrorHamiltonianId::VTV => 2,
            _ => 4,
        }
    }

    /// True for the momentum-independent terms (−r⁻⁴ and −4r⁻⁷).
    pub fn is_central_potential(self) -> bool {
        matches!(self, ErrorHamiltonianId::VTV | ErrorHamiltonianId::VTVTV)
    }

    /// Parameters of h(n, α) for the three quadratic-in-p terms.
    pub fn quadratic_params(self) -> Option<QuadraticFamilyParams> {
        match self {
            ErrorHamiltonianId::TTV => Some(QuadraticFamilyParams::new(3, 3.0, 1.0)),
            ErrorHamiltonianId::TTVTV => Some(QuadraticFamilyParams::new(6, 6.0, 4.0)),
            ErrorHamiltonianId::VTTTV => Some(QuadraticFamilyParams::new(6, 3.0, 9.0)),
            _ => None,
        }
    }
}

impl fmt::Display for ErrorHamiltonianId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ErrorHamiltonianId::TTV => "TTV",
            ErrorHamiltonianId::VTV => "VTV",
            ErrorHamiltonianId::TTVTV => "TTVTV",
            ErrorHamiltonianId::VTVTV => "VTVTV",
            ErrorHamiltonianId::TTTTV => "TTTTV",
            ErrorHamiltonianId::VTTTV => "VTTTV",
        };
        f.write_str(name)
    }
}

/// Parameters of the quadratic family h(n, α) = scale · r⁻ⁿ (p² − α (r̂·p)²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFamilyParams {
    pub n: u32,
    pub alpha: f64,
    pub scale: f64,
}

impl QuadraticFamilyParams {
    pub const fn new(n: u32, alpha: f64, scale: f64) -> Self {
        QuadraticFamilyParams { n, alpha, scale }
    }
}

/// The three scalar fields of an angular-momentum-conserving flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EomFields {
    pub f: f64,
    pub g: f64,
    pub h: f64,
}

fn radius_checked(s: &PhaseState) -> Result<f64> {
    let r = s.q.norm();
    if r == 0.0 {
        return Err(Error::AtOrigin);
    }
    Ok(r)
}

/// Value of the chosen error Hamiltonian at a state.
pub fn eval_error_h(id: ErrorHamiltonianId, s: &PhaseState) -> Result<f64> {
    let r = radius_checked(s)?;
    let p2 = s.p.norm_squared();
    let pr = s.q.dot(s.p) / r; // r̂·p
    let pr2 = pr * pr;
    Ok(match id {
        ErrorHamiltonianId::TTV => (p2 - 3.0 * pr2) / r.powi(3),
        ErrorHamiltonianId::VTV => -1.0 / r.powi(4),
        ErrorHamiltonianId::TTVTV => 4.0 * (p2 - 6.0 * pr2) / r.powi(6),
        ErrorHamiltonianId::VTVTV => -4.0 / r.powi(7),
        ErrorHamiltonianId::TTTTV => {
            -9.0 * (p2 * p2 - 10.0 * p2 * pr2 + 35.0 / 3.0 * pr2 * pr2) / r.powi(5)
        }
        ErrorHamiltonianId::VTTTV => 9.0 * (p2 - 3.0 * pr2) / r.powi(6),
    })
}

/// f, g, h for a member of the quadratic family.
///
/// With s = scale these are
///
/// ```text
/// f = s (n r^{−n−1} p² − α(n+2) r^{−n−3} (p·q)²)
/// g = 2 s α r^{−n−2}
/// h = 2 s r^{−n}
/// ```
pub fn quadratic_eom(params: QuadraticFamilyParams, s: &PhaseState) -> Result<EomFields> {
    let r = radius_checked(s)?;
    let n = params.n as i32;
    let p2 = s.p.norm_squared();
    let pq = s.q.dot(s.p);
    let f = params.scale
        * (params.n as f64 * p2 / r.powi(n + 1)
            - params.alpha * (params.n as f64 + 2.0) * pq * pq / r.powi(n + 3));
    let g = 2.0 * params.scale * params.alpha / r.powi(n + 2);
    let h = 2.0 * params.scale / r.powi(n);
    Ok(EomFields { f, g, h })
}

/// f, g, h for the quartic-in-p term H_TTTTV:
///
/// ```text
/// f = −45 r⁻⁶ (p⁴ − 14 p²(r̂·p)² + 21 (r̂·p)⁴)
/// g =  60 r⁻⁷ (7 (r̂·p)² − 3 p²)
/// h = −36 r⁻⁵ (p² − 5 (r̂·p)²)
/// ```
pub fn quartic_eom(s: &PhaseState) -> Result<EomFields> {
    let r = radius_checked(s)?;
    let p2 = s.p.norm_squared();
    let pr = s.q.dot(s.p) / r;
    let pr2 = pr * pr;
    let f = -45.0 * (p2 * p2 - 14.0 * p2 * pr2 + 21.0 * pr2 * pr2) / r.powi(6);
    let g = 60.0 * (7.0 * pr2 - 3.0 * p2) / r.powi(7);
    let h = -36.0 * (p2 - 5.0 * pr2) / r.powi(5);
    Ok(EomFields { f, g, h })
}

/// f, g, h for any of the six error Hamiltonians.
pub fn eom_fields(id: ErrorHamiltonianId, s: &PhaseState) -> Result<EomFields> {
    if let Some(params) = id.quadratic_params() {
        return quadratic_eom(params, s);
    }
    match id {
        ErrorHamiltonianId::TTTTV => quartic_eom(s),
        // Pure central potentials: ṗ = f r̂ with f = −dv/dr, q̇ = 0.
        ErrorHamiltonianId::VTV => {
            let r = radius_checked(s)?;
            Ok(EomFields {
                f: -4.0 / r.powi(5),
                g: 0.0,
                h: 0.0,
            })
        }
        ErrorHamiltonianId::VTVTV => {
            let r = radius_checked(s)?;
            Ok(EomFields {
                f: -28.0 / r.powi(8),
                g: 0.0,
                h: 0.0,
            })
        }
        _ => unreachable!("quadratic ids handled above"),
    }
}

/// Hamilton's equations (q̇, ṗ) of the chosen error Hamiltonian.
///
/// Assembled from the f/g/h fields as ṗ = f r̂ + g (p·q) p and
/// q̇ = −g (p·q) q + h p, which conserves q × p identically.
pub fn error_h_flow_derivatives(
    id: ErrorHamiltonianId,
    s: &PhaseState,
) -> Result<(Vec2, Vec2)> {
    let r = radius_checked(s)?;
    let fields = eom_fields(id, s)?;
    let pq = s.q.dot(s.p);
    let q_dot = s.q * (-fields.g * pq) + s.p * fields.h;
    let p_dot = s.q * (fields.f / r) + s.p * (fields.g * pq);
    Ok((q_dot, p_dot))
}
