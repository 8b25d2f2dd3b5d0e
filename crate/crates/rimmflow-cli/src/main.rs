//! Command-line front end: steady solves, spectra, critical-curve tracing,
//! time integration, and the verification suite, with machine-readable
//! CSV/JSON output.
//!
//! Exit codes: 0 success, 2 steady solve failed (no convergence or lost
//! positivity), 3 invalid configuration, 4 spectral gap violated, 5 root
//! bracket failed while tracing, 6 time integration blew up, 1 other errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use rimmflow::error::Error;
use rimmflow::evolve::{EvolveOptions, evolve};
use rimmflow::field::SpectralField;
use rimmflow::hopf::{HopfOptions, Stability, classify, lambda_plus_tracked, trace_point};
use rimmflow::io;
use rimmflow::linop::{SpectrumOptions, leading_pair};
use rimmflow::params::{Params, rescale_physical};
use rimmflow::perturb::critical_slope;
use rimmflow::steady::{SteadyOptions, solve_steady, taylor_steady};
use rimmflow::verify;

const GOLDEN_JSON: &str = include_str!("../data/golden.json");

#[derive(Parser)]
#[command(
    name = "rimmflow",
    about = "Steady states, spectra, and Hopf bifurcations of the rimming-flow thin-film equation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Solve the steady profile and compare with its second-order expansion
    Steady,
    /// Assemble the linearized operator and report its spectrum
    Spectrum,
    /// Trace the critical curve eps2 = E2(eps1) over an eps1 grid
    Trace,
    /// Integrate the evolution equation from a perturbed steady state
    Evolve,
    /// Run the built-in verification suite
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Steady => "steady",
            Command::Spectrum => "spectrum",
            Command::Trace => "trace",
            Command::Evolve => "evolve",
            Command::Verify => "verify",
        }
    }
}

#[derive(Args, Serialize, Deserialize, Default, Clone)]
struct Flags {
    /// JSON config file; explicit flags override its entries
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<PathBuf>,

    /// Surface-tension coefficient (scaled parameters)
    #[arg(long, global = true, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    eps1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    eps2: Option<f64>,

    /// Physical parameters; converted via (beta delta^3/3, delta^2, gamma delta^3/3)
    #[arg(long, global = true, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    delta: Option<f64>,

    /// Fourier truncation, 8..=128 [default: 32]
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Newton / root tolerance [default: 1e-12]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Time step [default: 1e-3]
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Integration horizon [default: 50]
    #[arg(long, global = true)]
    t_end: Option<f64>,

    /// First eps1 grid point for `trace` [default: 0.0025]
    #[arg(long, global = true)]
    grid_start: Option<f64>,
    /// Last eps1 grid point [default: 0.02]
    #[arg(long, global = true)]
    grid_stop: Option<f64>,
    /// Number of grid points [default: 8]
    #[arg(long, global = true)]
    grid_count: Option<usize>,

    /// Output directory [default: ./out, or $RIMMFLOW_OUT when set]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the random perturbation phase [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Restrict `verify` to the closed-form criteria
    #[arg(long, global = true, default_value_t = false)]
    #[serde(default)]
    quick: bool,
    /// Trace all four zero branches around the origin, not just the
    /// first-quadrant curve
    #[arg(long, global = true, default_value_t = false)]
    #[serde(default)]
    all_branches: bool,
}

impl Flags {
    fn merge_over(self, base: Flags) -> Flags {
        Flags {
            config: self.config,
            b: self.b.or(base.b),
            eps1: self.eps1.or(base.eps1),
            eps2: self.eps2.or(base.eps2),
            beta: self.beta.or(base.beta),
            gamma: self.gamma.or(base.gamma),
            delta: self.delta.or(base.delta),
            n_max: self.n_max.or(base.n_max),
            tol: self.tol.or(base.tol),
            dt: self.dt.or(base.dt),
            t_end: self.t_end.or(base.t_end),
            grid_start: self.grid_start.or(base.grid_start),
            grid_stop: self.grid_stop.or(base.grid_stop),
            grid_count: self.grid_count.or(base.grid_count),
            out: self.out.or(base.out),
            seed: self.seed.or(base.seed),
            quick: self.quick || base.quick,
            all_branches: self.all_branches || base.all_branches,
        }
    }
}

/// Fully resolved run configuration; hashed into every output file.
/// The output directory is excluded from the hash so identical runs into
/// different directories produce byte-identical files.
#[derive(Serialize, Clone)]
struct RunConfig {
    command: String,
    params: Params,
    n_max: usize,
    tol: f64,
    dt: f64,
    t_end: f64,
    grid_start: f64,
    grid_stop: f64,
    grid_count: usize,
    #[serde(skip)]
    out: PathBuf,
    seed: u64,
    quick: bool,
    all_branches: bool,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn resolve(command: Command, flags: Flags) -> Result<RunConfig, Error> {
    let flags = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
            let from_file: Flags = serde_json::from_str(&text)
                .map_err(|e| invalid(format!("bad config {}: {e}", path.display())))?;
            flags.merge_over(from_file)
        }
        None => flags,
    };

    let physical = [flags.beta, flags.gamma, flags.delta];
    let scaled = [flags.b, flags.eps1, flags.eps2];
    let params = if physical.iter().any(Option::is_some) {
        if scaled.iter().any(Option::is_some) {
            return Err(invalid(
                "give either scaled parameters (--b/--eps1/--eps2) or physical ones \
                 (--beta/--gamma/--delta), not both",
            ));
        }
        let [beta, gamma, delta] = physical;
        match (beta, gamma, delta) {
            (Some(beta), Some(gamma), Some(delta)) => rescale_physical(beta, gamma, delta)?,
            _ => return Err(invalid("--beta, --gamma, --delta must be given together")),
        }
    } else {
        Params::new(
            flags.b.unwrap_or(1.0),
            flags.eps1.unwrap_or(0.0),
            flags.eps2.unwrap_or(0.0),
        )?
    };

    let n_max = flags.n_max.unwrap_or(32);
    if !(8..=128).contains(&n_max) {
        return Err(invalid(format!("n_max must be in 8..=128, got {n_max}")));
    }
    let tol = flags.tol.unwrap_or(1e-12);
    let dt = flags.dt.unwrap_or(1e-3);
    let t_end = flags.t_end.unwrap_or(50.0);
    for (name, value) in [("tol", tol), ("dt", dt), ("t_end", t_end)] {
        if value <= 0.0 || !value.is_finite() {
            return Err(invalid(format!("{name} must be positive, got {value}")));
        }
    }
    let grid_start = flags.grid_start.unwrap_or(0.0025);
    let grid_stop = flags.grid_stop.unwrap_or(0.02);
    let grid_count = flags.grid_count.unwrap_or(8);
    if command == Command::Trace {
        if grid_count == 0 {
            return Err(invalid("grid_count must be at least 1"));
        }
        if grid_start <= 0.0 || !grid_start.is_finite() || grid_stop < grid_start {
            return Err(invalid(format!(
                "need 0 < grid_start <= grid_stop, got [{grid_start}, {grid_stop}]"
            )));
        }
    }
    let out = flags
        .out
        .or_else(|| std::env::var_os("RIMMFLOW_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    Ok(RunConfig {
        command: command.name().to_string(),
        params,
        n_max,
        tol,
        dt,
        t_end,
        grid_start,
        grid_stop,
        grid_count,
        out,
        seed: flags.seed.unwrap_or(0),
        quick: flags.quick,
        all_branches: flags.all_branches,
    })
}

impl RunConfig {
    fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("config sha256:{}", &hex[..16])
    }

    fn steady_options(&self) -> SteadyOptions {
        SteadyOptions {
            n_max: self.n_max,
            tol: self.tol,
            max_iter: 25,
        }
    }

    fn hopf_options(&self) -> HopfOptions {
        HopfOptions {
            n_max: self.n_max,
            newton_tol: self.tol,
            ..HopfOptions::default()
        }
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, Error> {
        fs::create_dir_all(&self.out)?;
        let path = self.out.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }

    fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, Error> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, &text)
    }
}

fn run_steady(cfg: &RunConfig) -> Result<(), Error> {
    let p = cfg.params;
    println!("params: b={} eps1={} eps2={}", p.b, p.eps1, p.eps2);
    let s = solve_steady(&p, &cfg.steady_options())?;
    let taylor = taylor_steady(&p, cfg.n_max);
    let taylor_l2_diff = s.h.minus(&taylor).l2_norm();

    let hash = cfg.hash();
    cfg.write("steady.csv", &io::field_csv(&s.h, &hash))?;

    #[derive(Serialize)]
    struct Summary<'a> {
        config: &'a str,
        params: Params,
        n_max: usize,
        residual_norm: f64,
        newton_iters: usize,
        mean_mass: f64,
        min_height: f64,
        taylor_l2_diff: f64,
    }
    cfg.write_json(
        "steady.json",
        &Summary {
            config: &hash,
            params: p,
            n_max: cfg.n_max,
            residual_norm: s.residual_norm,
            newton_iters: s.newton_iters,
            mean_mass: s.mean_mass(),
            min_height: s.min_height,
            taylor_l2_diff,
        },
    )?;
    println!(
        "steady: residual {:.3e} after {} iterations, mean mass {:.9}, min height {:.6}, \
         |H - taylor| = {:.3e}",
        s.residual_norm,
        s.newton_iters,
        s.mean_mass(),
        s.min_height,
        taylor_l2_diff
    );
    Ok(())
}

fn run_spectrum(cfg: &RunConfig) -> Result<(), Error> {
    let s = solve_steady(&cfg.params, &cfg.steady_options())?;
    let report = leading_pair(&s, &SpectrumOptions::default())?;
    let hash = cfg.hash();
    cfg.write("spectrum.csv", &io::spectrum_csv(&report, &hash))?;

    #[derive(Serialize)]
    struct Report<'a> {
        config: &'a str,
        #[serde(flatten)]
        report: &'a rimmflow::linop::SpectrumReport,
        conjugate_pair_mismatch: f64,
    }
    let mismatch = (report.lambda_minus - report.lambda_plus.conj()).norm();
    cfg.write_json(
        "report.json",
        &Report {
            config: &hash,
            report: &report,
            conjugate_pair_mismatch: mismatch,
        },
    )?;
    let side = if report.lambda_plus.re > 0.0 {
        "unstable side"
    } else if report.lambda_plus.re < 0.0 {
        "stable side"
    } else {
        "critical"
    };
    println!(
        "lambda+ = {:+.9e} {:+.9e}i ({side}), gap_ok = {}, second Re = {:.6}",
        report.lambda_plus.re,
        report.lambda_plus.im,
        report.gap_ok,
        report.second_re()
    );
    println!(
        "conjugate pairing: {} (mismatch {:.3e})",
        if mismatch < 1e-9 { "pass" } else { "fail" },
        mismatch
    );
    if !report.gap_ok {
        return Err(Error::GapViolation {
            second_re: report.second_re(),
            threshold: -report.delta5,
        });
    }
    Ok(())
}

fn run_trace(cfg: &RunConfig) -> Result<(), Error> {
    let b = cfg.params.b;
    let grid: Vec<f64> = if cfg.grid_count == 1 {
        vec![cfg.grid_start]
    } else {
        (0..cfg.grid_count)
            .map(|k| {
                cfg.grid_start
                    + (cfg.grid_stop - cfg.grid_start) * k as f64 / (cfg.grid_count - 1) as f64
            })
            .collect()
    };
    let opts = cfg.hopf_options();
    let hash = cfg.hash();

    let mut samples = Vec::new();
    let mut seed = None;
    let mut failure = None;
    for &eps1 in &grid {
        match trace_point(b, eps1, cfg.tol.max(1e-12), &opts, seed) {
            Ok((sample, lambda)) => {
                seed = Some(lambda);
                samples.push(sample);
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    // Partial results are still written when a bracket fails.
    cfg.write("hopf_curve.csv", &io::curve_csv(&samples, &hash))?;

    let slope_fit = if samples.len() >= 2 {
        Some((samples[1].e2_numeric - samples[0].e2_numeric) / (grid[1] - grid[0]))
    } else {
        None
    };
    #[derive(Serialize)]
    struct Summary<'a> {
        config: &'a str,
        b: f64,
        grid: &'a [f64],
        root_tol: f64,
        newton_tol: f64,
        slope_fit: Option<f64>,
        quadratic_model: rimmflow::perturb::QuadraticModel,
        samples: &'a [rimmflow::hopf::HopfCurveSample],
    }
    cfg.write_json(
        "trace.json",
        &Summary {
            config: &hash,
            b,
            grid: &grid,
            root_tol: cfg.tol.max(1e-12),
            newton_tol: cfg.tol,
            slope_fit,
            quadratic_model: rimmflow::perturb::quadratic_model(b),
            samples: &samples,
        },
    )?;
    if cfg.all_branches {
        let radii: Vec<f64> = grid.iter().copied().filter(|r| *r > 0.0).collect();
        let branches = rimmflow::hopf::trace_branches(b, &radii, cfg.tol.max(1e-12), &opts)?;
        let mut csv = format!("# {hash}\nbranch,radius,eps1,eps2,residual\n");
        for s in &branches {
            csv.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                s.branch, s.radius, s.eps1, s.eps2, s.r_at_root
            ));
        }
        cfg.write("branches.csv", &csv)?;
    }
    cfg.write(
        "quadratic_model.csv",
        &rimmflow::io::quadratic_table_csv(&[0.25, 0.5, 1.0, 2.0, 4.0], &hash),
    )?;
    if let Some(slope) = slope_fit {
        println!(
            "traced {} points; small-end slope {:.5} vs model {:.5}",
            samples.len(),
            slope,
            critical_slope(b)
        );
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn run_evolve(cfg: &RunConfig) -> Result<(), Error> {
    let p = cfg.params;
    let s = solve_steady(&p, &cfg.steady_options())?;
    let opts = cfg.hopf_options();
    let side = classify(&p, &opts)?;
    let lambda = lambda_plus_tracked(&p, &opts, None)?;

    // Demo initial data: a cos perturbation with a seeded random phase,
    // small on the unstable side so the linear regime is visible.
    let amplitude = match side {
        Stability::Stable => 1e-3,
        _ => 1e-5,
    };
    let phase = ChaCha8Rng::seed_from_u64(cfg.seed).gen_range(0.0..std::f64::consts::TAU);
    let mut bump = SpectralField::zero(cfg.n_max);
    bump.set_coeff(1, num_complex_polar(amplitude / 2.0, -phase));
    bump.set_coeff(-1, num_complex_polar(amplitude / 2.0, phase));
    let h0 = s.h.plus(&bump);

    let mut evolve_opts = EvolveOptions::new(cfg.dt, cfg.t_end);
    if side != Stability::Stable {
        // Limit-cycle demos stop after 40 observed periods.
        evolve_opts.max_periods = Some(40);
    }
    let traj = evolve(&h0, &s, &evolve_opts)?;
    let hash = cfg.hash();
    cfg.write("timeseries.csv", &io::timeseries_csv(&traj, &hash))?;

    #[derive(Serialize)]
    struct Summary<'a> {
        config: &'a str,
        params: Params,
        classification: Stability,
        amplitude: f64,
        phase: f64,
        re_lambda_plus: f64,
        period_linear: f64,
        measured_rate: Option<f64>,
        cycle: Option<rimmflow::evolve::Cycle>,
        positivity_lost_at: Option<f64>,
        final_state: &'a SpectralField,
    }
    cfg.write_json(
        "summary.json",
        &Summary {
            config: &hash,
            params: p,
            classification: side,
            amplitude,
            phase,
            re_lambda_plus: lambda.re,
            period_linear: std::f64::consts::TAU / lambda.im,
            measured_rate: traj.measured_rate,
            cycle: traj.cycle,
            positivity_lost_at: traj.positivity_lost_at,
            final_state: &traj.final_state,
        },
    )?;
    println!(
        "classification: {side:?}; Re lambda+ = {:+.4e}; fitted rate {:?}; cycle {:?}",
        lambda.re, traj.measured_rate, traj.cycle
    );
    Ok(())
}

fn num_complex_polar(r: f64, theta: f64) -> rimmflow::field::C64 {
    rimmflow::field::C64::from_polar(r, theta)
}

fn run_verify(cfg: &RunConfig) -> Result<(), Error> {
    let mut results = verify::run_all(cfg.quick);
    let golden = match std::env::var("RIMMFLOW_GOLDEN") {
        Ok(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| invalid(format!("cannot read golden file {path}: {e}")))?;
            verify::golden_check(&text, &path)
        }
        Err(_) => verify::golden_check(GOLDEN_JSON, "builtin"),
    };
    results.push(golden);

    println!("{:-<72}", "");
    for r in &results {
        println!(
            "{:4} {}  {:6.2}s  {}",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
    }
    println!("{:-<72}", "");
    let failures: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failures.is_empty() {
        println!("all {} checks passed", results.len());
        Ok(())
    } else {
        println!("failed: {}", failures.join(", "));
        Err(invalid(format!("verification failed: {}", failures.join(", "))))
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NoConvergence { .. } | Error::LostPositivity { .. } => 2,
        Error::InvalidParameter(_) => 3,
        Error::GapViolation { .. } | Error::DegenerateNormalization { .. } => 4,
        Error::NoBracket { .. } | Error::NoCrossing => 5,
        Error::BlowUp { .. } => 6,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve(cli.command, cli.flags) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let result = match cli.command {
        Command::Steady => run_steady(&cfg),
        Command::Spectrum => run_spectrum(&cfg),
        Command::Trace => run_trace(&cfg),
        Command::Evolve => run_evolve(&cfg),
        Command::Verify => run_verify(&cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
