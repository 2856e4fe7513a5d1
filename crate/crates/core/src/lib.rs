//! Splitting-method symplectic integrators for the planar Kepler problem.
//!
//! Symmetric splitting schemes conserve a modified Hamiltonian whose error
//! terms are themselves Hamiltonians; on a Kepler orbit each error term
//! makes the ellipse precess by a closed-form angle per period. This crate
//! implements the three sides of that picture and checks them against each
//! other:
//!
//! * [`kepler`] — planar two-body dynamics, orbital elements, and
//!   continuous tracking of the Laplace-Runge-Lenz vector's rotation;
//! * [`error_hamiltonians`] — the six error Hamiltonians through fourth
//!   order and their exact equations of motion;
//! * [`precession`] — the C_n(e)/S_n(e) calculus and the per-term
//!   perihelion advances, plus per-algorithm predictions;
//! * [`integrators`] — the splitting engine (drift, kick, gradient kick,
//!   W-step) and the registry of named compositions with their error
//!   coefficients;
//! * [`experiments`] — the measurement harness: whole-period runs, scaled
//!   precession, energy-error functions, and a brute-force perturbation
//!   oracle that confirms every analytic advance independently.

pub mod error;
pub mod error_hamiltonians;
pub mod experiments;
pub mod integrators;
pub mod kepler;
pub mod precession;
pub mod vec2;

pub use error::{Error, Result};
pub use error_hamiltonians::{EomFields, ErrorHamiltonianId, QuadraticFamilyParams};
pub use experiments::{
    brute_force_delta_theta, convergence_sweep, h4_error_function, integrate_period,
    measure_scaled_precession, standard_initial_state, verify_against_prediction,
    MeasurementResult, TrajectoryRecord,
};
pub use integrators::{
    named_scheme, registry_ids, step, validate_scheme, w_step, AlgorithmId, ErrorCoefficients,
    SplittingScheme, Stage,
};
pub use kepler::{kepler_force, lrl_vector, orbit_elements, LrlTracker, OrbitElements, PhaseState};
pub use precession::{
    c_n, delta_theta_central, delta_theta_for, delta_theta_quadratic, predict_algorithm_precession,
    prediction_for, s_n, PrecessionPrediction,
};
pub use vec2::Vec2;
