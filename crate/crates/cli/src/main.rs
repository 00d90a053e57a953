//! swgate: configuration-driven front end for the spin-wave exchange gate
//! simulator. Subcommands: gate-run, sweep, budget, selfcheck.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod config;
mod output;
mod selfcheck;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinwave_gate::{error_budget, make_packet, run_gate, run_gate_full, Error as CoreError, GateReport};

use config::RunConfig;

#[derive(Debug)]
pub struct CmdError {
    pub exit_code: u8,
    pub message: String,
}

impl CmdError {
    fn config(message: String) -> Self {
        Self { exit_code: 2, message }
    }

    fn numerical(message: String) -> Self {
        Self { exit_code: 3, message }
    }

    fn io(err: std::io::Error, what: &str) -> Self {
        Self { exit_code: 3, message: format!("{what}: {err}") }
    }

    /// Core errors raised while interpreting configuration are the
    /// caller's fault; propagation failures are numerical.
    fn from_config_error(err: CoreError) -> Self {
        Self::config(err.to_string())
    }

    fn from_run_error(err: CoreError) -> Self {
        match err {
            CoreError::NonConvergence(_) | CoreError::Backend(_) => {
                Self::numerical(err.to_string())
            }
            other => Self::config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "swgate",
    version,
    about = "Spin-wave exchange phase gate simulator",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides output.dir from the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the canonical config with every default filled, then exit.
    #[arg(long)]
    echo_config: bool,
    /// Also print the primary JSON document to stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the gate protocol once and write the report.
    GateRun {
        #[command(flatten)]
        common: CommonArgs,
        /// Propagation tolerance override.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the gate across sweep axes (N, sigma, V/2J) and write a CSV
    /// table.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Propagation tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        /// Worker threads for sweep points.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Evaluate the analytic error budget and write the report.
    Budget {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the built-in oracle suite; nonzero exit on any failure.
    Selfcheck {
        /// Machine-readable check report on stdout.
        #[arg(long)]
        json: bool,
        /// Negative control: flip one Hamiltonian sign before checking.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GateRun { common, tol } => cmd_gate_run(&common, tol),
        Command::Sweep { common, tol, threads } => cmd_sweep(&common, tol, threads),
        Command::Budget { common } => cmd_budget(&common),
        Command::Selfcheck { json, inject_fault } => cmd_selfcheck(json, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code)
        }
    }
}

fn load_config(common: &CommonArgs) -> Result<RunConfig, CmdError> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = &common.out {
        cfg.output.dir = dir.clone();
    }
    Ok(cfg)
}

/// Handles --echo-config: prints the canonical config and reports whether
/// the command should stop there.
fn echo_and_stop(cfg: &RunConfig, common: &CommonArgs) -> Result<bool, CmdError> {
    if common.echo_config {
        println!("{}", output::to_json(&cfg.canonical()?));
        return Ok(true);
    }
    Ok(false)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CmdError> {
    fs::create_dir_all(dir).map_err(|e| CmdError::io(e, "creating output directory"))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CmdError::io(e, "writing output file"))?;
    Ok(path)
}

fn cmd_gate_run(common: &CommonArgs, tol: Option<f64>) -> Result<(), CmdError> {
    let cfg = load_config(common)?;
    if echo_and_stop(&cfg, common)? {
        return Ok(());
    }
    let spec = cfg.gate_run(tol)?;
    // Compute before touching the filesystem: a failed run leaves no
    // partial files behind.
    let outcome = run_gate_full(&spec).map_err(CmdError::from_run_error)?;
    let report = outcome.report;
    let json = output::to_json(&report);
    let csv = format!("{}\n{}\n", GateReport::CSV_COLUMNS, report.csv_row());
    write_file(&cfg.output.dir, "gate_report.json", &json)?;
    write_file(&cfg.output.dir, "gate_report.csv", &csv)?;
    if cfg.output.write_states {
        let dir = &cfg.output.dir;
        write_file(dir, "r_initial.csv", &output::single_state_csv(&make_packet(&spec.r)))?;
        write_file(dir, "l_initial.csv", &output::single_state_csv(&make_packet(&spec.l)))?;
        write_file(dir, "r_final.csv", &output::single_state_csv(&outcome.r_final))?;
        write_file(dir, "l_final.csv", &output::single_state_csv(&outcome.l_final))?;
        write_file(dir, "pair_final.csv", &output::pair_state_csv(&outcome.pair_final))?;
    }
    for warning in &report.packet_warnings {
        eprintln!("warning: {warning}");
    }
    if common.json {
        println!("{json}");
    } else {
        println!(
            "phi_nl = {:.9} rad (predicted {:.9}), f_mag = {:.6}, f_swap = {:.6}, distortion = {:.3e} [{} in {:.0} ms]",
            report.phi_nl,
            report.phi_pred,
            report.f_mag,
            report.f_swap,
            report.distortion,
            report.method,
            report.wall_ms
        );
    }
    Ok(())
}

fn cmd_sweep(
    common: &CommonArgs,
    tol: Option<f64>,
    threads: Option<usize>,
) -> Result<(), CmdError> {
    let cfg = load_config(common)?;
    if echo_and_stop(&cfg, common)? {
        return Ok(());
    }

    // Cartesian point list over the non-empty axes, outer to inner:
    // N, sigma, V/(2J). Empty axes fall back to the configured value.
    let all_empty = cfg.sweep.v_over_2j.is_empty()
        && cfg.sweep.n.is_empty()
        && cfg.sweep.sigma.is_empty();
    let mut points: Vec<(usize, Option<f64>, Option<f64>)> = Vec::new();
    if !all_empty {
        let n_axis: Vec<usize> =
            if cfg.sweep.n.is_empty() { vec![cfg.chain.n] } else { cfg.sweep.n.clone() };
        let sigma_axis: Vec<Option<f64>> = if cfg.sweep.sigma.is_empty() {
            vec![None]
        } else {
            cfg.sweep.sigma.iter().copied().map(Some).collect()
        };
        let v_axis: Vec<Option<f64>> = if cfg.sweep.v_over_2j.is_empty() {
            vec![None]
        } else {
            cfg.sweep.v_over_2j.iter().copied().map(Some).collect()
        };
        for &n in &n_axis {
            for &sigma in &sigma_axis {
                for &v in &v_axis {
                    points.push((n, sigma, v));
                }
            }
        }
    }

    // Specs are resolved up front so configuration errors exit before any
    // propagation starts (and before any file is written).
    let specs = points
        .iter()
        .map(|&(n, sigma, v)| cfg.gate_run_at(n, sigma, v, tol))
        .collect::<Result<Vec<_>, _>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CmdError::config(format!("thread pool: {e}")))?;
    let reports: Vec<Result<GateReport, CoreError>> = pool.install(|| {
        use rayon::prelude::*;
        specs.par_iter().map(run_gate).collect()
    });

    let mut csv = String::new();
    csv.push_str(&output::sweep_csv_header());
    csv.push('\n');
    let mut failures = 0usize;
    for (spec, result) in specs.iter().zip(&reports) {
        match result {
            Ok(report) => csv.push_str(&output::sweep_csv_row(report)),
            Err(e) => {
                failures += 1;
                csv.push_str(&output::sweep_csv_error_row(
                    spec.chain.n,
                    spec.couplings.j,
                    spec.couplings.v,
                    spec.r.sigma,
                    &e.to_string(),
                ));
            }
        }
        csv.push('\n');
    }
    let path = write_file(&cfg.output.dir, "sweep.csv", &csv)?;
    if common.json {
        let ok_reports: Vec<&GateReport> =
            reports.iter().filter_map(|r| r.as_ref().ok()).collect();
        println!("{}", output::to_json(&ok_reports));
    } else {
        println!("{} rows written to {} ({failures} failed)", points.len(), path.display());
    }
    if failures > 0 {
        return Err(CmdError::numerical(format!("{failures} sweep point(s) failed")));
    }
    Ok(())
}

fn cmd_budget(common: &CommonArgs) -> Result<(), CmdError> {
    let cfg = load_config(common)?;
    if echo_and_stop(&cfg, common)? {
        return Ok(());
    }
    let params = cfg.experiment_params()?;
    let chain = cfg.chain()?;
    let report = error_budget(&params, &chain).map_err(CmdError::from_config_error)?;
    let json = output::to_json(&report);
    write_file(&cfg.output.dir, "budget.json", &json)?;
    if common.json {
        println!("{json}");
    } else {
        print!("{}", report.table());
    }
    Ok(())
}

fn cmd_selfcheck(json: bool, inject_fault: bool) -> Result<(), CmdError> {
    let report = selfcheck::run(inject_fault);
    if json {
        println!("{}", output::to_json(&report));
    } else {
        for c in &report.checks {
            println!(
                "check {:<22} residual {:>12.3e}  (tol {:>8.1e})  {}",
                c.name,
                c.residual,
                c.threshold,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(CmdError::numerical("self-check failed".into()))
    }
}
