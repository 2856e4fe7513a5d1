//! Closed-form perihelion advance per period.
//!
//! A perturbation δH of the Kepler Hamiltonian rotates the LRL vector; the
//! rotation per period reduces to sums of the integrals
//!
//! ```text
//! C_n(e) = (1/e) ∫₀^{2π} (1 + e cosθ)ⁿ cosθ dθ
//! S_n(e) = ∫₀^{2π} (1 + e cosθ)ⁿ sin²θ dθ = C_{n+1}(e)/(n+1)
//! ```
//!
//! computed here by the upward recursion
//!
//! ```text
//! (1 + 1/(n+1)) C_{n+1} = (2 + 1/n) C_n − (1 − e²) C_{n−1},
//! C₀ = 0, C₁ = π,
//! ```
//!
//! which is stable for n ≤ 16 and 0 ≤ e < 1 (the e = 0 limit gives
//! C_n(0) = nπ automatically). A central-force perturbation with
//! −f r² = Σ λ_n r⁻ⁿ advances the perihelion by Δθ = Σ (λ_n/℘ⁿ) C_n(e).
//! For the quadratic family h(n, α) and for the quartic term, the three
//! flow fields contribute
//!
//! ```text
//! Δθ_f = (1/℘ⁿ) [(1 − (α/n)(n+2)) C_n + (α−n)((n+2)/(n+1)) C_{n+1}]
//! Δθ_g = 2(α/n) C_n / ℘ⁿ
//! Δθ_h = −2 C_n / ℘ⁿ
//! ```
//!
//! after substituting p² = 2/r − 1/a and (p·q)² = p²r² − L² along the
//! unperturbed orbit. Δθ_g and Δθ_h cancel exactly when n = α.

use crate::error::{Error, Result};
use crate::error_hamiltonians::{ErrorHamiltonianId, QuadraticFamilyParams};
use crate::integrators::ErrorCoefficients;

/// Largest n for which the recursion is used.
pub const MAX_POWER: u32 = 16;

fn check_ecc(ecc: f64) -> Result<()> {
    if !(0.0..1.0).contains(&ecc) {
        return Err(Error::EccentricityOutOfRange { value: ecc });
    }
    Ok(())
}

/// C_n(e), by the recursion seeded with C₀ = 0, C₁ = π.
pub fn c_n(n: u32, ecc: f64) -> Result<f64> {
    if n > MAX_POWER {
        return Err(Error::PowerOutOfRange {
            n,
            min: 0,
            max: MAX_POWER,
        });
    }
    check_ecc(ecc)?;
    if n == 0 {
        return Ok(0.0);
    }
    let one_minus_e2 = 1.0 - ecc * ecc;
    let mut prev = 0.0_f64; // C_0
    let mut cur = std::f64::consts::PI; // C_1
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 + 1.0 / kf) * cur - one_minus_e2 * prev) / (1.0 + 1.0 / (kf + 1.0));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// S_n(e) = C_{n+1}(e)/(n+1).
pub fn s_n(n: u32, ecc: f64) -> Result<f64> {
    Ok(c_n(n + 1, ecc)? / (n as f64 + 1.0))
}

/// Perihelion advance of a central-force perturbation with
/// −f r² = Σ λ_n r⁻ⁿ: Δθ = Σ (λ_n/℘ⁿ) C_n(e).
pub fn delta_theta_central(terms: &[(u32, f64)], semi_latus: f64, ecc: f64) -> Result<f64> {
    debug_assert!(semi_latus > 0.0);
    let mut total = 0.0;
    for &(n, lambda) in terms {
        total += lambda / semi_latus.powi(n as i32) * c_n(n, ecc)?;
    }
    Ok(total)
}

/// The three flow-field contributions to a perihelion advance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaThetaParts {
    pub f: f64,
    pub g: f64,
    pub h: f64,
}

impl DeltaThetaParts {
    pub fn total(&self) -> f64 {
        self.f + self.g + self.h
    }
}

/// Per-field advance for a member of the quadratic family h(n, α).
pub fn delta_theta_quadratic_parts(
    params: QuadraticFamilyParams,
    semi_latus: f64,
    ecc: f64,
) -> Result<DeltaThetaParts> {
    if params.n == 0 {
        return Err(Error::PowerOutOfRange {
            n: 0,
            min: 1,
            max: MAX_POWER - 1,
        });
    }
    debug_assert!(semi_latus > 0.0);
    let n = params.n as f64;
    let alpha = params.alpha;
    let wp_n = semi_latus.powi(params.n as i32);
    let cn = c_n(params.n, ecc)?;
    let cn1 = c_n(params.n + 1, ecc)?;
    let f = ((1.0 - alpha / n * (n + 2.0)) * cn + (alpha - n) * (n + 2.0) / (n + 1.0) * cn1)
        / wp_n;
    let g = 2.0 * alpha / n * cn / wp_n;
    let h = -2.0 * cn / wp_n;
    Ok(DeltaThetaParts {
        f: params.scale * f,
        g: params.scale * g,
        h: params.scale * h,
    })
}

/// Total advance for a member of the quadratic family.
pub fn delta_theta_quadratic(
    params: QuadraticFamilyParams,
    semi_latus: f64,
    ecc: f64,
) -> Result<f64> {
    Ok(delta_theta_quadratic_parts(params, semi_latus, ecc)?.total())
}

/// Per-field advance for the quartic term H_TTTTV, in the pre-simplified
/// C₄…C₈ form; the recursion reduces it to 36(C₆ + (6/7)C₇)/℘⁶.
pub fn delta_theta_quartic_parts(semi_latus: f64, ecc: f64) -> Result<DeltaThetaParts> {
    debug_assert!(semi_latus > 0.0);
    let om = 1.0 - ecc * ecc;
    let wp6 = semi_latus.powi(6);
    let c4 = c_n(4, ecc)?;
    let c5 = c_n(5, ecc)?;
    let c6 = c_n(6, ecc)?;
    let c7 = c_n(7, ecc)?;
    let c8 = c_n(8, ecc)?;
    let f = (360.0 * (4.0 * c6 - 4.0 * om * c5 + om * om * c4)
        + 315.0 * (3.0 * c8 - 8.0 * c7 + 4.0 * om * c6))
        / wp6;
    let g = 12.0 * (20.0 / 3.0 * c6 - 4.0 * om * c5 - 5.0 * c7) / wp6;
    let h = 36.0 * (-8.0 * c6 + 4.0 * om * c5 + 5.0 * c7) / wp6;
    Ok(DeltaThetaParts { f, g, h })
}

/// Perihelion advance per period, per unit coefficient, of one error
/// Hamiltonian.
///
/// The paired terms rotate the orbit oppositely by exactly the same
/// amount: Δθ_TTV = −Δθ_VTV, Δθ_TTVTV = −Δθ_VTVTV, Δθ_TTTTV = −Δθ_VTTTV.
pub fn delta_theta_for(id: ErrorHamiltonianId, semi_latus: f64, ecc: f64) -> Result<f64> {
    match id {
        ErrorHamiltonianId::VTV => delta_theta_central(&[(3, 4.0)], semi_latus, ecc),
        ErrorHamiltonianId::VTVTV => delta_theta_central(&[(6, 28.0)], semi_latus, ecc),
        ErrorHamiltonianId::TTTTV => {
            let quartic = delta_theta_quartic_parts(semi_latus, ecc)?.total();
            #[cfg(debug_assertions)]
            {
                let partner = delta_theta_for(ErrorHamiltonianId::VTTTV, semi_latus, ecc)?;
                debug_assert!(
                    (quartic + partner).abs() <= 1e-9 * quartic.abs().max(1.0),
                    "quartic path disagrees with -Δθ_VTTTV: {quartic} vs {partner}"
                );
            }
            Ok(quartic)
        }
        _ => {
            let params = id
                .quadratic_params()
                .expect("remaining ids are quadratic");
            delta_theta_quadratic(params, semi_latus, ecc)
        }
    }
}

/// Per-term advances and their coefficient-weighted sums for one scheme.
#[derive(Debug, Clone)]
pub struct PrecessionPrediction {
    per_term: [(ErrorHamiltonianId, f64); 6],
    /// e_TTV Δθ_TTV + e_VTV Δθ_VTV.
    pub second_order: f64,
    /// Σ over the four fourth-order terms of e_X Δθ_X.
    pub fourth_order: f64,
}

impl PrecessionPrediction {
    /// Δθ of one error Hamiltonian, per unit coefficient.
    pub fn per_term(&self, id: ErrorHamiltonianId) -> f64 {
        self.per_term
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, v)| *v)
            .expect("all six ids present")
    }

    pub fn terms(&self) -> impl Iterator<Item = (ErrorHamiltonianId, f64)> + '_ {
        self.per_term.iter().copied()
    }

    /// Total predicted advance per period at step size `eps`.
    pub fn total(&self, eps: f64) -> f64 {
        let e2 = eps * eps;
        e2 * self.second_order + e2 * e2 * self.fourth_order
    }
}

/// Build the per-term table and weighted sums for a coefficient set.
pub fn prediction_for(
    coeffs: &ErrorCoefficients,
    semi_latus: f64,
    ecc: f64,
) -> Result<PrecessionPrediction> {
    let mut per_term = [(ErrorHamiltonianId::TTV, 0.0); 6];
    for (slot, id) in per_term.iter_mut().zip(ErrorHamiltonianId::ALL) {
        *slot = (id, delta_theta_for(id, semi_latus, ecc)?);
    }
    let value = |id: ErrorHamiltonianId| {
        per_term
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, v)| *v)
            .unwrap()
    };
    let second_order = coeffs.e_ttv * value(ErrorHamiltonianId::TTV)
        + coeffs.e_vtv * value(ErrorHamiltonianId::VTV);
    let fourth_order = coeffs.e_ttttv * value(ErrorHamiltonianId::TTTTV)
        + coeffs.e_vtttv * value(ErrorHamiltonianId::VTTTV)
        + coeffs.e_ttvtv * value(ErrorHamiltonianId::TTVTV)
        + coeffs.e_vtvtv * value(ErrorHamiltonianId::VTVTV);
    Ok(PrecessionPrediction {
        per_term,
        second_order,
        fourth_order,
    })
}

/// Predicted perihelion advance per period for a coefficient set at step
/// size `eps`.
pub fn predict_algorithm_precession(
    coeffs: &ErrorCoefficients,
    eps: f64,
    semi_latus: f64,
    ecc: f64,
) -> Result<f64> {
    Ok(prediction_for(coeffs, semi_latus, ecc)?.total(eps))
}
