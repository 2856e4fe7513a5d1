//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A position exactly at the gravitational singularity.
    #[error("position at the gravitational singularity (|q| = 0)")]
    AtOrigin,

    /// A substage moved the state inside the singularity guard radius.
    #[error("substage reached |q| = {radius:.3e}, below the singularity guard")]
    SingularRadius { radius: f64 },

    /// A trajectory hit the singularity guard; carries the offending step.
    #[error("trajectory hit the singularity guard at step {step} (|q| = {radius:.3e})")]
    SingularityAtStep { radius: f64, step: usize },

    #[error("orbit is not bound (E = {energy})")]
    UnboundOrbit { energy: f64 },

    /// A vector too short to define a direction.
    #[error("vector of magnitude {magnitude:.3e} cannot define an angle")]
    DegenerateVector { magnitude: f64 },

    #[error("power n = {n} outside the supported range {min}..={max}")]
    PowerOutOfRange { n: u32, min: u32, max: u32 },

    #[error("eccentricity {value} outside [0, 1)")]
    EccentricityOutOfRange { value: f64 },

    /// The tailored scheme needs a strictly elliptic design eccentricity.
    #[error("tailored scheme requires an eccentricity in (0, 1), got {value}")]
    TailoredEccentricity { value: f64 },

    #[error("unknown algorithm id `{name}`")]
    UnknownAlgorithm { name: String },

    /// Energy-error extraction is defined for fourth-order schemes only.
    #[error("operation requires an order-4 scheme, got order {order}")]
    OrderMismatch { order: u32 },

    /// The perturbation oracle's two probe strengths disagreed.
    #[error("perturbation oracle did not converge (relative spread {spread:.3e})")]
    OracleNonConvergence { spread: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
