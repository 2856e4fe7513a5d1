//! Command-line front end for the `apsidal` library.
//!
//! Subcommands:
//!   run      — integrate one algorithm and emit a trajectory CSV
//!   predict  — print the per-term analytic precession and totals
//!   verify   — measure, compare against the prediction, report PASS/FAIL
//!   table    — emit C_n(e) as CSV
//!   figure   — emit the multi-series data behind the five standard plots
//!
//! Exit codes: 0 ok, 2 usage (including unknown algorithm ids), 3 runtime
//! singularity, 4 verification failure.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::process::ExitCode;

use apsidal::experiments::{
    h4_error_function, integrate_period, scaling_for, standard_initial_state,
    verify_against_prediction,
};
use apsidal::{
    named_scheme, orbit_elements, prediction_for, AlgorithmId, Error, PhaseState, Vec2,
};

const EXIT_USAGE: u8 = 2;
const EXIT_SINGULARITY: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "apsidal",
    about = "Symplectic splitting integrators for the planar Kepler problem",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate an algorithm over whole periods and emit the trajectory.
    Run(RunArgs),
    /// Print per-term precession contributions and totals for an algorithm.
    Predict(PredictArgs),
    /// Measure an algorithm's scaled precession and compare to theory.
    Verify(VerifyArgs),
    /// Emit C_n(e) rows for a grid of n and e.
    Table(TableArgs),
    /// Emit the data series behind one of the five standard figures.
    Figure(FigureArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Algorithm id: I, II, III, IV, VV, TI, NF, FR, C, CPRIME, TAILORED, 4S.
    #[arg(long)]
    algorithm: String,
    /// Steps per period (>= 100).
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// Whole periods to integrate (>= 1).
    #[arg(long, default_value_t = 1)]
    periods: usize,
    /// Record every k-th step.
    #[arg(long = "sample-every", default_value_t = 10)]
    sample_every: usize,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
    /// Explicit initial position x (all four of --qx --qy --px --py
    /// required together; default is the reference state).
    #[arg(long, requires_all = ["qy", "px", "py"])]
    qx: Option<f64>,
    #[arg(long, requires_all = ["qx", "px", "py"])]
    qy: Option<f64>,
    #[arg(long, requires_all = ["qx", "qy", "py"])]
    px: Option<f64>,
    #[arg(long, requires_all = ["qx", "qy", "px"])]
    py: Option<f64>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    algorithm: String,
    /// Semi-latus rectum of the orbit.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Orbit eccentricity.
    #[arg(long, default_value_t = 0.9)]
    e: f64,
    /// Steps per period used to quote the absolute (unscaled) total.
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    algorithm: String,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
}

#[derive(Args)]
struct TableArgs {
    /// Largest n to tabulate (<= 16).
    #[arg(long = "max-n", default_value_t = 8)]
    max_n: u32,
    /// Comma-separated eccentricities.
    #[arg(long, default_value = "0,0.3,0.9", value_delimiter = ',')]
    e: Vec<f64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure number, 1..=5.
    which: u32,
    #[arg(long)]
    out: Option<String>,
    /// Steps per period (default 10000; figure 2 uses 5000).
    #[arg(long)]
    steps: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Figure(args) => cmd_figure(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnknownAlgorithm { .. }
        | Error::TailoredEccentricity { .. }
        | Error::PowerOutOfRange { .. }
        | Error::EccentricityOutOfRange { .. } => EXIT_USAGE,
        Error::SingularityAtStep { .. } | Error::SingularRadius { .. } | Error::AtOrigin => {
            EXIT_SINGULARITY
        }
        _ => 1,
    }
}

/// 17 significant digits: enough to round-trip any f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_algorithm(name: &str) -> Result<AlgorithmId, Error> {
    name.parse()
}

fn write_out(path: &Option<String>, contents: &str) -> Result<ExitCode, Error> {
    let result = match path {
        Some(p) => std::fs::write(p, contents),
        None => std::io::stdout().write_all(contents.as_bytes()),
    };
    if let Err(e) = result {
        eprintln!("error: cannot write output: {e}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, Error> {
    let id = parse_algorithm(&args.algorithm)?;
    if args.steps < 100 || args.periods < 1 || args.sample_every < 1 {
        eprintln!("error: --steps must be >= 100, --periods >= 1, --sample-every >= 1");
        return Ok(ExitCode::from(EXIT_USAGE));
    }
    let s0 = match (args.qx, args.qy, args.px, args.py) {
        (Some(qx), Some(qy), Some(px), Some(py)) => {
            PhaseState::new(Vec2::new(qx, qy), Vec2::new(px, py))
        }
        _ => standard_initial_state(),
    };
    let (scheme, _) = named_scheme(&id)?;
    let record = integrate_period(&scheme, &s0, args.steps, args.periods, args.sample_every)?;
    let mut csv = String::from("t,qx,qy,px,py,E,L,lrl_angle,h0_dev\n");
    for s in &record.samples {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt(s.t),
            fmt(s.state.q.x),
            fmt(s.state.q.y),
            fmt(s.state.p.x),
            fmt(s.state.p.y),
            fmt(s.energy),
            fmt(s.angular_momentum),
            fmt(s.lrl_angle),
            fmt(s.h0_dev),
        ));
    }
    write_out(&args.out, &csv)
}

fn cmd_predict(args: PredictArgs) -> Result<ExitCode, Error> {
    let mut id = parse_algorithm(&args.algorithm)?;
    // The tailored scheme is designed for the orbit it will run on.
    if let AlgorithmId::Tailored(_) = id {
        id = AlgorithmId::Tailored(args.e);
    }
    let (_, coeffs) = named_scheme(&id)?;
    let prediction = prediction_for(&coeffs, args.p, args.e)?;
    let semi_major = args.p / (1.0 - args.e * args.e);
    let period = std::f64::consts::TAU * semi_major.powf(1.5);
    let eps = period / args.steps as f64;
    let (power, divisor) = scaling_for(&id);

    println!("algorithm {id}   semi-latus = {}   e = {}", args.p, args.e);
    println!("{:<10} {:>24} {:>14} {:>24}", "term", "dtheta per unit coeff", "coefficient", "contribution");
    for (term, dtheta) in prediction.terms() {
        let coeff = coeffs.get(term);
        println!(
            "{:<10} {:>24.10} {:>14.8} {:>24.10e}",
            term.to_string(),
            dtheta,
            coeff,
            coeff * dtheta
        );
    }
    println!("second-order sum: {:.10}", prediction.second_order);
    println!("fourth-order sum: {:.10}", prediction.fourth_order);
    let scaled = match power {
        2 => prediction.second_order / divisor,
        _ => prediction.fourth_order / divisor,
    };
    println!("scaled total (eps^{power} x {divisor:e} removed): {scaled:.7}");
    println!(
        "total at eps = P/{} = {:.6e}: {:.10e}",
        args.steps,
        eps,
        prediction.total(eps)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let id = parse_algorithm(&args.algorithm)?;
    let outcome = verify_against_prediction(&id, args.steps)?;
    let status = if outcome.passed { "PASS" } else { "FAIL" };
    let kind = if outcome.relative {
        "relative"
    } else {
        "absolute"
    };
    println!(
        "{status} {id}: measured {:.7e}, predicted {:.7e}, tolerance {:.1e} ({kind}) at N = {}",
        outcome.scaled_measured, outcome.scaled_predicted, outcome.tolerance, args.steps
    );
    if outcome.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_VERIFY_FAILED))
    }
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, Error> {
    let mut csv = String::from("n,e,C\n");
    for n in 0..=args.max_n {
        for &e in &args.e {
            let value = apsidal::c_n(n, e)?;
            csv.push_str(&format!("{n},{},{}\n", fmt(e), fmt(value)));
        }
    }
    write_out(&args.out, &csv)
}

fn cmd_figure(args: FigureArgs) -> Result<ExitCode, Error> {
    let (series, energy): (&[&str], bool) = match args.which {
        1 => (&["I", "II"], false),
        2 => (&["III", "IV"], false),
        3 => (&["VV", "TI", "NF"], false),
        4 => (&["C", "CPRIME", "4S"], false),
        5 => (&["C", "CPRIME", "4S"], true),
        _ => {
            eprintln!("error: figure number must be in 1..=5");
            return Ok(ExitCode::from(EXIT_USAGE));
        }
    };
    let steps = args.steps.unwrap_or(match args.which {
        2 => 5_000,
        _ => 10_000,
    });
    let s0 = standard_initial_state();
    let period = orbit_elements(&s0)?.period;
    let mut csv = String::from("t_over_P,series_name,value\n");
    for name in series {
        let id: AlgorithmId = name.parse()?;
        if energy {
            for (t, value) in h4_error_function(&id, steps)? {
                csv.push_str(&format!("{},{name},{}\n", fmt(t / period), fmt(value)));
            }
        } else {
            let (scheme, _) = named_scheme(&id)?;
            let (power, divisor) = scaling_for(&id);
            let record =
                integrate_period(&scheme, &s0, steps, 1, (steps / 500).max(1))?;
            let scale = record.epsilon.powi(power as i32) * divisor;
            for s in &record.samples {
                csv.push_str(&format!(
                    "{},{name},{}\n",
                    fmt(s.t / period),
                    fmt(s.lrl_angle / scale)
                ));
            }
        }
    }
    write_out(&args.out, &csv)
}
