use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rvb_ladder::sweep::{format_g, run_sweep, EntanglementReport, RunConfig};
use rvb_ladder::{Boundary, WrapConvention};

#[derive(Parser)]
#[command(name = "rvb-ladder", version, about = "Entanglement of RVB liquids on 2×M ladders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline over several ladder lengths and write CSV tables.
    Sweep(SweepArgs),
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Ladder lengths m (N = 2m sites each).
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,6")]
    sizes: Vec<usize>,
    #[arg(long, default_value = "periodic")]
    boundary: Boundary,
    /// Output directory for the CSV files.
    #[arg(long)]
    out: PathBuf,
    /// Bisection tolerance for θ-set endpoints.
    #[arg(long, default_value_t = 1e-9)]
    theta_tol: f64,
    /// Also write the state vector of each size as text.
    #[arg(long)]
    dump_states: bool,
    /// Grid resolution of the monogamy surface table.
    #[arg(long, default_value_t = 100)]
    surface_res: usize,
    /// Treatment of wrap-around rail dimers on periodic ladders with odd m.
    #[arg(long, default_value = "twisted")]
    odd_wrap: WrapConvention,
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> anyhow::Result<bool> {
    let Command::Sweep(args) = Cli::parse().command;
    let config = RunConfig {
        sizes: args.sizes,
        boundary: args.boundary,
        wrap: args.odd_wrap,
        output_dir: Some(args.out.clone()),
        theta_tolerance: args.theta_tol,
        emit_state_dumps: args.dump_states,
        surface_resolution: args.surface_res,
        ..RunConfig::default()
    };
    let report = run_sweep(&config).with_context(|| format!("sweep into {}", args.out.display()))?;
    print_summary(&report);
    Ok(report.all_succeeded())
}

fn print_summary(report: &EntanglementReport) {
    println!(
        "{:>3} {:>9} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>8}",
        "N", "coverings", "p_r", "p_s", "p_avg", "F_avg", "mono_lhs", "theta_max", "ggm", "split"
    );
    for row in &report.rows {
        let theta = row.theta_max().map_or_else(|| "empty".to_string(), |t| format!("{t:.6}"));
        println!(
            "{:>3} {:>9} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10} {:>10.6} {:>8}",
            row.n,
            row.coverings,
            row.p_rail(),
            row.p_step(),
            row.p_avg,
            row.fidelities.average,
            row.monogamy.lhs,
            theta,
            row.ggm.value,
            format!("{:#x}", row.reported_split),
        );
    }
    for failure in &report.failures {
        println!("m = {} failed: {}", failure.m, failure.reason);
    }
    if let Some(fits) = &report.fits {
        println!();
        for (label, fit, cmp) in [
            ("theta_max vs N", &fits.theta_linear, &fits.theta_linear_vs_reference),
            ("theta_max vs N", &fits.theta_quadratic, &fits.theta_quadratic_vs_reference),
            ("p_r vs p_s", &fits.pr_vs_ps, &fits.pr_vs_ps_vs_reference),
        ] {
            let coeffs: Vec<String> = fit.coefficients.iter().map(|&c| format_g(c)).collect();
            println!(
                "{label}: {} coefficients [{}] mse {} (reference [{}], max relative deviation {:.3})",
                fit.model,
                coeffs.join(", "),
                format_g(fit.mean_square_error),
                cmp.reference.iter().map(|&c| format_g(c)).collect::<Vec<_>>().join(", "),
                cmp.max_relative_deviation(),
            );
        }
    }
}
