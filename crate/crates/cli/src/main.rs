//! `bes` - sweep, analyze, and validate the exact evolution of two-qutrit
//! states under the bilinear-biquadratic exchange Hamiltonian.
//!
//! Exit codes: 0 success; 1 validation gate failed; 2 invalid request
//! (bad flags, state spec, grid, or unreadable input); 3 output write
//! failure; 4 state file that parses but is not a density matrix.

mod state;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use bes_core::analytic;
use bes_core::criteria::{
    partial_transpose, realign, CriteriaReport, DEFAULT_CLASSIFICATION_TOL,
};
use bes_core::model::{evolve, DensityMatrix, HERMITICITY_TOL};
use bes_core::sweep::{
    format_number, oracle_deviations, parse_number, sweep_records, time_grid, write_csv,
    GridSpec,
};

use crate::state::{LoadError, StateSpec};

#[derive(Parser)]
#[command(
    name = "bes",
    version,
    about = "Exact evolution of 3x3 bound entangled states with PT and realignment tracking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a state over a time grid and write criteria per point as CSV
    Sweep(SweepArgs),
    /// Report both criteria (and closed-form cross-checks) for one state
    Analyze(AnalyzeArgs),
    /// Compare the numeric pipeline against the closed forms over a grid
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Initial state: horodecki:<alpha> | upb-tiles | upb-pyramid | file:<path>
    #[arg(long)]
    state: String,
    /// Biquadratic coupling
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    beta: String,
    /// First time of the grid (accepts pi forms: pi, pi/4, 2pi)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t_start: String,
    /// Last time of the grid
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    t_end: String,
    /// Number of grid points including both endpoints
    #[arg(long, default_value_t = 201)]
    steps: usize,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// State to analyze: horodecki:<alpha> | upb-tiles | upb-pyramid | file:<path>
    #[arg(long)]
    state: String,
    /// Evolution time
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    /// Biquadratic coupling
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    beta: String,
}

#[derive(Args)]
struct ValidateArgs {
    /// Alpha grid, start:end:step
    #[arg(long, default_value = "2:5:0.25")]
    alpha_grid: String,
    /// Time grid, start:end:step (pi forms accepted)
    #[arg(long, default_value = "0:pi:pi/200")]
    t_grid: String,
    /// Largest accepted deviation between numeric and closed-form results
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::new(2, e.to_string())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => run_sweep(&args),
        Command::Analyze(args) => run_analyze(&args),
        Command::Validate(args) => run_validate(&args),
    };
    if let Err(failure) = result {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn load_state(raw: &str) -> Result<(StateSpec, DensityMatrix), Failure> {
    let spec: StateSpec = raw.parse().map_err(invalid)?;
    let rho = spec.load().map_err(|e| match e {
        LoadError::Spec(m) => Failure::new(2, m),
        LoadError::Validation(m) => Failure::new(4, m),
    })?;
    Ok((spec, rho))
}

fn run_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let (spec, rho) = load_state(&args.state).map_err(|f| Failure::new(2, f.message))?;
    let beta = parse_number(&args.beta).map_err(invalid)?;
    let t_start = parse_number(&args.t_start).map_err(invalid)?;
    let t_end = parse_number(&args.t_end).map_err(invalid)?;
    if args.steps < 2 {
        return Err(invalid("--steps must be at least 2"));
    }
    if t_end <= t_start {
        return Err(invalid(format!(
            "--t-end ({t_end}) must exceed --t-start ({t_start})"
        )));
    }

    let times = time_grid(t_start, t_end, args.steps);
    let records = sweep_records(
        &rho,
        spec.alpha_label(),
        beta,
        &times,
        DEFAULT_CLASSIFICATION_TOL,
    )
    .map_err(invalid)?;

    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                Failure::new(3, format!("cannot create {}: {e}", path.display()))
            })?;
            let mut out = BufWriter::new(file);
            write_csv(&mut out, &records)
                .and_then(|()| out.flush())
                .map_err(|e| Failure::new(3, format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            let stdout = io::stdout();
            write_csv(&mut stdout.lock(), &records)
                .map_err(|e| Failure::new(3, format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

fn join_numbers(values: &[f64]) -> String {
    values.iter().map(|&v| format_number(v)).collect::<Vec<_>>().join("  ")
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let (spec, rho0) = load_state(&args.state)?;
    let t = parse_number(&args.t).map_err(invalid)?;
    let beta = parse_number(&args.beta).map_err(invalid)?;

    let rho = evolve(&rho0, t, beta).map_err(invalid)?;
    let report = CriteriaReport::evaluate(&rho, DEFAULT_CLASSIFICATION_TOL).map_err(invalid)?;
    let pt_eigs = partial_transpose(&rho)
        .hermitian_eigenvalues(HERMITICITY_TOL)
        .map_err(invalid)?;
    let re_sv = realign(&rho)
        .and_then(|m| m.singular_values())
        .map_err(invalid)?;

    println!("state: {spec}   t = {}   beta = {}", format_number(t), format_number(beta));
    println!();
    println!("  classification        {}", report.classification);
    println!("  N1                    {}", format_number(report.n1));
    println!("  N2                    {}", format_number(report.n2));
    println!("  pt_trace_norm         {}", format_number(report.pt_trace_norm));
    println!("  realign_trace_norm    {}", format_number(report.realign_trace_norm));
    println!("  concurrence_lb        {}", format_number(report.concurrence_lb));
    println!("  concurrence_lb_raw    {}", format_number(report.concurrence_lb_raw));
    println!();
    println!("PT spectrum (ascending):");
    println!("  {}", join_numbers(&pt_eigs));
    println!("realignment singular values (descending):");
    println!("  {}", join_numbers(&re_sv));

    if let StateSpec::Horodecki { alpha } = spec {
        if beta == -1.0 {
            print_oracle_table(alpha, t, &report, &pt_eigs, &re_sv).map_err(invalid)?;
        } else {
            println!();
            println!("closed-form oracle: skipped (closed forms hold at beta = -1 only)");
        }
    }
    Ok(())
}

/// Numeric-vs-closed-form table for a Horodecki state at `beta = -1`.
fn print_oracle_table(
    alpha: f64,
    t: f64,
    report: &CriteriaReport,
    pt_eigs: &[f64],
    re_sv: &[f64],
) -> bes_core::Result<()> {
    let co = analytic::abc_coefficients(alpha, t)?;
    let closed_n1 = analytic::negativity_closed(alpha, t)?;
    let closed_norm = analytic::realign_norm_closed(alpha, t)?;
    let closed_eigs = analytic::pt_spectrum_closed(alpha, t)?;
    let closed_sv = analytic::realign_singulars_closed(alpha, t)?.scaled_spectrum();

    println!();
    println!("closed-form oracle (beta = -1):");
    println!("  evolution coefficients: a = {}, b = {}, c = {}",
        format_number(co.a), format_number(co.b), format_number(co.c));
    println!("  {:<22}{:<22}{:<22}|diff|", "quantity", "numeric", "closed");
    println!(
        "  {:<22}{:<22}{:<22}{:.2e}",
        "N1",
        format_number(report.n1),
        format_number(closed_n1),
        (report.n1 - closed_n1).abs()
    );
    println!(
        "  {:<22}{:<22}{:<22}{:.2e}",
        "realign_trace_norm",
        format_number(report.realign_trace_norm),
        format_number(closed_norm),
        (report.realign_trace_norm - closed_norm).abs()
    );
    println!("  PT spectrum (numeric / closed, ascending):");
    println!("    {}", join_numbers(pt_eigs));
    println!("    {}", join_numbers(&closed_eigs));
    let eig_dev = pt_eigs
        .iter()
        .zip(closed_eigs)
        .map(|(n, c)| (n - c).abs())
        .fold(0.0, f64::max);
    println!("    max |diff| = {eig_dev:.2e}");
    println!("  realignment singulars (numeric / closed, descending):");
    println!("    {}", join_numbers(re_sv));
    println!("    {}", join_numbers(&closed_sv));
    let sv_dev = re_sv
        .iter()
        .zip(closed_sv)
        .map(|(n, c)| (n - c).abs())
        .fold(0.0, f64::max);
    println!("    max |diff| = {sv_dev:.2e}");
    Ok(())
}

fn run_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let alpha_grid: GridSpec = args.alpha_grid.parse().map_err(invalid)?;
    let t_grid: GridSpec = args.t_grid.parse().map_err(invalid)?;
    let alphas = alpha_grid.values();
    let times = t_grid.values();

    let devs = oracle_deviations(&alphas, &times).map_err(invalid)?;
    println!(
        "oracle agreement at beta = -1 over alpha {} ({} points) x t {} ({} points):",
        args.alpha_grid,
        alphas.len(),
        args.t_grid,
        times.len()
    );
    println!("  pt_spectrum         max |dev| = {:.3e}", devs.pt_spectrum);
    println!("  negativity          max |dev| = {:.3e}", devs.negativity);
    println!("  realign_singulars   max |dev| = {:.3e}", devs.realign_singulars);
    println!("  realign_norm        max |dev| = {:.3e}", devs.realign_norm);

    if devs.worst() < args.tol {
        println!("PASS: all deviations below tol = {:e}", args.tol);
        Ok(())
    } else {
        println!("FAIL: worst deviation {:.3e} reaches tol = {:e}", devs.worst(), args.tol);
        Err(Failure::new(
            1,
            format!(
                "numeric pipeline deviates from closed forms by {:.3e} (tol {:e})",
                devs.worst(),
                args.tol
            ),
        ))
    }
}
