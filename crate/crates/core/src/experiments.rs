//! Measurement harness: whole-period integrations, LRL precession and
//! energy-error extraction, ε-scaled comparisons against the analytic
//! predictions, and the brute-force perturbation oracle.
//!
//! Every run follows the same protocol: start from the reference state
//! q = (10, 0), p = (0, 0.1) — a bound orbit with ℘ = L² = 1, e = 0.9 —
//! and take N steps of size ε = P/N, where P = 2π a^{3/2} is the analytic
//! period. The per-period rotation of the LRL vector divided by the
//! scheme's leading coefficient-and-power of ε is then directly comparable
//! to the closed-form Δθ values of the `precession` module.

use crate::error::{Error, Result};
use crate::error_hamiltonians::{error_h_flow_derivatives, ErrorHamiltonianId};
use crate::integrators::{named_scheme, step, AlgorithmId, SplittingScheme};
use crate::kepler::{kepler_force, orbit_elements, LrlTracker, PhaseState};
use crate::precession::prediction_for;
use crate::vec2::Vec2;

/// Steps per period of the oracle's reference integrator.
pub const ORACLE_STEPS: usize = 2_000_000;

/// The reference starting state: q = (10, 0), p = (0, 1/10), giving
/// ℘ = 1 and e = 0.9.
pub fn standard_initial_state() -> PhaseState {
    PhaseState::new(Vec2::new(10.0, 0.0), Vec2::new(0.0, 0.1))
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub t: f64,
    pub state: PhaseState,
    pub energy: f64,
    pub angular_momentum: f64,
    /// Unwrapped LRL rotation since t = 0.
    pub lrl_angle: f64,
    /// H₀(t) − H₀(0).
    pub h0_dev: f64,
}

/// A sampled trajectory of `periods` whole periods at N steps per period.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub samples: Vec<Sample>,
    pub epsilon: f64,
    pub steps_per_period: usize,
    pub periods: usize,
}

/// Integrate whole periods of the orbit through `s0`, sampling every
/// `sample_every` steps (the t = 0 state is always the first sample).
pub fn integrate_period(
    scheme: &SplittingScheme,
    s0: &PhaseState,
    steps_per_period: usize,
    periods: usize,
    sample_every: usize,
) -> Result<TrajectoryRecord> {
    assert!(steps_per_period > 0 && periods > 0 && sample_every > 0);
    let elements = orbit_elements(s0)?;
    let eps = elements.period / steps_per_period as f64;
    let total = steps_per_period * periods;
    let mut z = *s0;
    let mut tracker = LrlTracker::new(&z)?;
    let e0 = z.energy();
    let mut samples = Vec::with_capacity(total / sample_every + 2);
    let push = |samples: &mut Vec<Sample>, k: usize, z: &PhaseState, angle: f64| {
        samples.push(Sample {
            t: k as f64 * eps,
            state: *z,
            energy: z.energy(),
            angular_momentum: z.angular_momentum(),
            lrl_angle: angle,
            h0_dev: z.energy() - e0,
        });
    };
    push(&mut samples, 0, &z, 0.0);
    for k in 1..=total {
        z = step(scheme, &z, eps).map_err(|e| match e {
            Error::SingularRadius { radius } => Error::SingularityAtStep { radius, step: k },
            other => other,
        })?;
        tracker.update(&z)?;
        if k % sample_every == 0 {
            push(&mut samples, k, &z, tracker.refined_angle());
        }
    }
    Ok(TrajectoryRecord {
        samples,
        epsilon: eps,
        steps_per_period,
        periods,
    })
}

/// Per-period precession of one algorithm, raw and ε-scaled.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementResult {
    /// LRL rotation at t = P, radians.
    pub precession_per_period: f64,
    /// Rotation divided by the algorithm's leading coefficient-and-power.
    pub scaled_precession: f64,
    /// Largest |scaled rotation| reached at any time during the period.
    pub scaled_precession_max: f64,
    /// Largest |H₄| over the period (order-4 schemes only).
    pub h4_max: Option<f64>,
    /// H₄ at t = P (order-4 schemes only).
    pub h4_final: Option<f64>,
}

/// The ε power and coefficient divisor that make a measured rotation
/// comparable to the closed-form per-term advances.
pub fn scaling_for(id: &AlgorithmId) -> (u32, f64) {
    match id {
        AlgorithmId::I | AlgorithmId::II => (2, 1.0 / 72.0),
        AlgorithmId::III => (4, 1.0 / 207_360.0),
        AlgorithmId::IV => (4, (7.0 - 4.0 * 3.0_f64.sqrt()) / 14_400.0),
        AlgorithmId::VV | AlgorithmId::TI | AlgorithmId::NF => (2, 1.0),
        AlgorithmId::FR
        | AlgorithmId::C
        | AlgorithmId::CPrime(_)
        | AlgorithmId::Tailored(_)
        | AlgorithmId::FourS => (4, 1.0),
    }
}

/// Run one period at ε = P/N and scale the LRL rotation by the
/// algorithm's leading coefficient-and-power.
pub fn measure_scaled_precession(id: &AlgorithmId, n: usize) -> Result<MeasurementResult> {
    let (scheme, _) = named_scheme(id)?;
    let (power, divisor) = scaling_for(id);
    measure_with_scaling(&scheme, n, power, divisor)
}

/// Measurement core, parameterised by the scaling convention; also usable
/// for ad-hoc schemes.
pub fn measure_with_scaling(
    scheme: &SplittingScheme,
    n: usize,
    power: u32,
    divisor: f64,
) -> Result<MeasurementResult> {
    let s0 = standard_initial_state();
    let elements = orbit_elements(&s0)?;
    let eps = elements.period / n as f64;
    let scale = eps.powi(power as i32) * divisor;
    let order4 = scheme.order >= 4;
    let e0 = s0.energy();
    let eps4 = eps.powi(4);

    let mut z = s0;
    let mut tracker = LrlTracker::new(&z)?;
    let mut max_rotation = 0.0f64;
    let mut h4_max = 0.0f64;
    let mut h4_final = 0.0f64;
    for k in 1..=n {
        z = step(scheme, &z, eps).map_err(|e| match e {
            Error::SingularRadius { radius } => Error::SingularityAtStep { radius, step: k },
            other => other,
        })?;
        tracker.update(&z)?;
        max_rotation = max_rotation.max(tracker.refined_angle().abs());
        if order4 {
            let h4 = (e0 - z.energy()) / eps4;
            h4_final = h4;
            h4_max = h4_max.max(h4.abs());
        }
    }
    let precession = tracker.refined_angle();
    Ok(MeasurementResult {
        precession_per_period: precession,
        scaled_precession: precession / scale,
        scaled_precession_max: max_rotation / scale,
        h4_max: order4.then_some(h4_max),
        h4_final: order4.then_some(h4_final),
    })
}

/// The fourth-order energy-error function H₄(t) − H₄(0), extracted as
/// (H₀(0) − H₀(t))/ε⁴ along one period.
pub fn h4_error_function(id: &AlgorithmId, n: usize) -> Result<Vec<(f64, f64)>> {
    let (scheme, _) = named_scheme(id)?;
    if scheme.order < 4 {
        return Err(Error::OrderMismatch {
            order: scheme.order,
        });
    }
    let record = integrate_period(
        &scheme,
        &standard_initial_state(),
        n,
        1,
        (n / 1000).max(1),
    )?;
    let eps4 = record.epsilon.powi(4);
    Ok(record
        .samples
        .iter()
        .map(|s| (s.t, -s.h0_dev / eps4))
        .collect())
}

/// Scaled precession across a list of step counts, with the relative
/// Cauchy difference of the last two entries.
#[derive(Debug, Clone)]
pub struct ConvergenceSweep {
    pub results: Vec<(usize, MeasurementResult)>,
    /// |last − previous| / |last| of the scaled precession.
    pub cauchy_relative: f64,
}

pub fn convergence_sweep(id: &AlgorithmId, n_list: &[usize]) -> Result<ConvergenceSweep> {
    let mut results = Vec::with_capacity(n_list.len());
    for &n in n_list {
        results.push((n, measure_scaled_precession(id, n)?));
    }
    let cauchy_relative = match results.len() {
        0 | 1 => 0.0,
        len => {
            let last = results[len - 1].1.scaled_precession;
            let prev = results[len - 2].1.scaled_precession;
            (last - prev).abs() / last.abs().max(f64::MIN_POSITIVE)
        }
    };
    Ok(ConvergenceSweep {
        results,
        cauchy_relative,
    })
}

/// Scaled measurement vs analytic prediction for one algorithm.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOutcome {
    pub scaled_measured: f64,
    pub scaled_predicted: f64,
    pub tolerance: f64,
    /// Whether `tolerance` is relative to the prediction or absolute.
    pub relative: bool,
    pub passed: bool,
}

/// Compare the measured scaled precession of `id` at N steps per period
/// against its analytic prediction.
///
/// Algorithms with a nonzero prediction must agree to 0.5% relative; the
/// correctors, whose prediction is exactly zero, must land within an
/// absolute band (1e-3 for the second-order pair, 6e-6 for the tailored
/// scheme, 5e-6 for the W-step corrector).
pub fn verify_against_prediction(id: &AlgorithmId, n: usize) -> Result<VerifyOutcome> {
    let (_, coeffs) = named_scheme(id)?;
    let s0 = standard_initial_state();
    let elements = orbit_elements(&s0)?;
    let prediction = prediction_for(
        &coeffs,
        elements.semi_latus_rectum,
        elements.eccentricity,
    )?;
    let (power, divisor) = scaling_for(id);
    let scaled_predicted = match power {
        2 => prediction.second_order / divisor,
        _ => prediction.fourth_order / divisor,
    };
    let measured = measure_scaled_precession(id, n)?;
    let (tolerance, relative) = if scaled_predicted.abs() > 1e-3 {
        (0.005, true)
    } else {
        let abs: f64 = match id {
            AlgorithmId::Tailored(_) => 6e-6,
            AlgorithmId::FourS => 5e-6,
            _ => 1e-3,
        };
        // The raw period-end rotation carries an f64 trajectory-roundoff
        // floor of ~1e-14 rad; scaled by 1/ε^power it can exceed the
        // nominal band at large N. A disagreement inside the floor is not
        // a verification failure.
        let eps = elements.period / n as f64;
        let noise_floor = 3e-14 / (eps.powi(power as i32) * divisor);
        (abs.max(noise_floor), false)
    };
    let miss = (measured.scaled_precession - scaled_predicted).abs();
    let passed = if relative {
        miss <= tolerance * scaled_predicted.abs()
    } else {
        miss <= tolerance
    };
    Ok(VerifyOutcome {
        scaled_measured: measured.scaled_precession,
        scaled_predicted,
        tolerance,
        relative,
        passed,
    })
}

/// Phase-space derivative of H₀ + δ·H_id.
fn perturbed_derivative(
    id: ErrorHamiltonianId,
    delta: f64,
    z: &PhaseState,
) -> Result<(Vec2, Vec2)> {
    let (dq, dp) = error_h_flow_derivatives(id, z)?;
    Ok((z.p + dq * delta, kepler_force(z.q)? + dp * delta))
}

/// One implicit-midpoint step of the perturbed flow.
fn perturbed_midpoint_step(
    id: ErrorHamiltonianId,
    delta: f64,
    z: &PhaseState,
    tau: f64,
    iterations: u8,
) -> Result<PhaseState> {
    let mut mid = *z;
    for _ in 0..iterations {
        let (dq, dp) = perturbed_derivative(id, delta, &mid)?;
        mid = PhaseState::new(z.q + dq * (0.5 * tau), z.p + dp * (0.5 * tau));
    }
    let (dq, dp) = perturbed_derivative(id, delta, &mid)?;
    Ok(PhaseState::new(z.q + dq * tau, z.p + dp * tau))
}

/// Brute-force perihelion-advance oracle, independent of the closed-form
/// route: integrate H₀ + δ·H_id for one period with an implicit-midpoint
/// reference integrator and return the LRL rotation per unit δ.
///
/// The probe is repeated at 2δ; the two estimates must agree to 1e-3
/// relative, otherwise the perturbation is outside its linear regime (or
/// the integrator is under-resolved) and an error is returned.
pub fn brute_force_delta_theta(
    id: ErrorHamiltonianId,
    delta: f64,
    s0: &PhaseState,
) -> Result<f64> {
    brute_force_delta_theta_with_steps(id, delta, s0, ORACLE_STEPS)
}

/// Oracle core with an explicit step count (testing hook; the default
/// [`ORACLE_STEPS`] keeps the reference integrator's own precession bias
/// far below the 1e-3 stationarity band).
pub fn brute_force_delta_theta_with_steps(
    id: ErrorHamiltonianId,
    delta: f64,
    s0: &PhaseState,
    steps: usize,
) -> Result<f64> {
    let period = orbit_elements(s0)?.period;
    let tau = period / steps as f64;
    let run = |d: f64| -> Result<f64> {
        let mut z = *s0;
        let mut tracker = LrlTracker::new(&z)?;
        for _ in 0..steps {
            z = perturbed_midpoint_step(id, d, &z, tau, 3)?;
            tracker.update(&z)?;
        }
        Ok(tracker.refined_angle() / d)
    };
    let fine = run(delta)?;
    let coarse = run(2.0 * delta)?;
    let spread = (fine - coarse).abs() / fine.abs().max(f64::MIN_POSITIVE);
    if spread > 1e-3 {
        return Err(Error::OracleNonConvergence { spread });
    }
    Ok(fine)
}

/// Default probe strength for the oracle: 1e-6 for the second-order
/// terms, 1e-8 for the fourth-order ones.
pub fn oracle_default_delta(id: ErrorHamiltonianId) -> f64 {
    match id.order() {
        2 => 1e-6,
        _ => 1e-8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precession::delta_theta_for;

    #[test]
    fn standard_state_elements() {
        let el = orbit_elements(&standard_initial_state()).unwrap();
        assert!((el.eccentricity - 0.9).abs() < 1e-14);
        assert!((el.semi_latus_rectum - 1.0).abs() < 1e-14);
        let expected = std::f64::consts::TAU * (1.0 / (2.0 * 0.095f64)).powf(1.5);
        assert!((el.period - expected).abs() < 1e-10);
    }

    #[test]
    fn sampling_arithmetic() {
        let (scheme, _) = named_scheme(&AlgorithmId::VV).unwrap();
        let record =
            integrate_period(&scheme, &standard_initial_state(), 400, 3, 400).unwrap();
        assert_eq!(record.samples.len(), 4); // periods + 1
        assert_eq!(record.samples[0].t, 0.0);
        assert_eq!(record.samples[0].lrl_angle, 0.0);
        for pair in record.samples.windows(2) {
            assert!(pair[1].t > pair[0].t);
        }
    }

    #[test]
    fn vv_energy_error_is_periodic() {
        let (scheme, _) = named_scheme(&AlgorithmId::VV).unwrap();
        let record =
            integrate_period(&scheme, &standard_initial_state(), 10_000, 1, 10_000).unwrap();
        let final_dev = record.samples.last().unwrap().h0_dev.abs();
        assert!(final_dev < 1e-6, "energy deviation at P: {final_dev:e}");
    }

    #[test]
    fn coarse_run_survives_perihelion() {
        let (scheme, _) = named_scheme(&AlgorithmId::I).unwrap();
        integrate_period(&scheme, &standard_initial_state(), 10, 1, 1).unwrap();
    }

    #[test]
    fn h4_starts_at_zero_and_rejects_order_two() {
        let series = h4_error_function(&AlgorithmId::C, 2000).unwrap();
        assert_eq!(series[0].1, 0.0);
        assert!(matches!(
            h4_error_function(&AlgorithmId::VV, 2000),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn oracle_smoke_vtv() {
        // Reduced step count: the midpoint bias grows quadratically with
        // the step, so keep it within the example's ±0.05 band.
        let value = brute_force_delta_theta_with_steps(
            ErrorHamiltonianId::VTV,
            1e-6,
            &standard_initial_state(),
            1_000_000,
        )
        .unwrap();
        let analytic = delta_theta_for(ErrorHamiltonianId::VTV, 1.0, 0.9).unwrap();
        assert!(
            (value - analytic).abs() < 0.05,
            "oracle {value} vs analytic {analytic}"
        );
    }

    #[test]
    fn sweep_reports_cauchy_difference() {
        let sweep = convergence_sweep(&AlgorithmId::I, &[1_000, 3_000, 10_000]).unwrap();
        assert_eq!(sweep.results.len(), 3);
        assert!(
            sweep.cauchy_relative < 1e-3,
            "I sweep cauchy: {}",
            sweep.cauchy_relative
        );
    }

    #[test]
    fn sweep_vv_converges_to_the_predicted_value() {
        let sweep = convergence_sweep(&AlgorithmId::VV, &[1_000, 10_000]).unwrap();
        for (_, m) in &sweep.results {
            assert!(
                (m.scaled_precession + 1.8888).abs() < 0.01 * 1.8888,
                "VV scaled: {}",
                m.scaled_precession
            );
        }
    }

    #[test]
    fn sweep_fr_approaches_prediction_from_the_measured_side() {
        // The measured FR value sits above the -10.8987 prediction and
        // descends toward it as the step shrinks.
        let sweep = convergence_sweep(&AlgorithmId::FR, &[2_500, 10_000]).unwrap();
        let coarse = sweep.results[0].1.scaled_precession;
        let fine = sweep.results[1].1.scaled_precession;
        let predicted = -10.8987;
        assert!(
            (fine - predicted).abs() < (coarse - predicted).abs(),
            "not approaching: {coarse} -> {fine}"
        );
        assert!((fine - predicted).abs() < 0.011);
    }
}
