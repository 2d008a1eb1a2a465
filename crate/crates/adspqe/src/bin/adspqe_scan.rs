//! Scan driver CLI: runs SPQE / ASC over a manifest of FCIDUMP fixtures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use adspqe::pqe::MicroIterConfig;
use adspqe::scan::{run_scan, write_report, ScanManifest, ScanOptions};
use adspqe::spqe::SPQEConfig;

#[derive(Parser, Debug)]
#[command(name = "adspqe-scan", about = "SPQE / AD-ASC potential-energy scan driver")]
struct Args {
    /// Scan manifest (JSON: entries of {label, fcidump}, optional omega_sweep, fci)
    #[arg(long)]
    manifest: PathBuf,

    /// Single macro-iteration threshold
    #[arg(long, default_value_t = 1e-2)]
    omega: f64,

    /// Comma-separated threshold sweep (overrides --omega and the manifest)
    #[arg(long, value_delimiter = ',')]
    omega_sweep: Option<Vec<f64>>,

    /// Residual-state evolution time
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,

    /// Micro-iteration convergence threshold
    #[arg(long, default_value_t = 1e-5)]
    micro_tol: f64,

    /// Operator pool: sd, sdt or sdtq
    #[arg(long, default_value = "sdtq")]
    pool: String,

    /// Restrict the principal set to this pool rank (e.g. sd core from an
    /// sdtq pool); the rest of the pool stays auxiliary
    #[arg(long)]
    core_pool: Option<String>,

    /// Which energies to report: spqe, asc1, asc2 or all (asc energies are
    /// always computed; this only affects the summary)
    #[arg(long, default_value = "all")]
    scheme: String,

    /// Also compute the FCI reference per entry
    #[arg(long, default_value_t = false)]
    fci: bool,

    /// Measurement-bound target precision (hartree)
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,

    /// Output directory for results.csv, runs.json and summary.txt
    #[arg(long, default_value = "scan-out")]
    out_dir: PathBuf,
}

fn pool_rank(name: &str) -> Option<usize> {
    match name.to_lowercase().as_str() {
        "s" => Some(1),
        "sd" => Some(2),
        "sdt" => Some(3),
        "sdtq" => Some(4),
        _ => None,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();

    let manifest_text = match std::fs::read_to_string(&args.manifest) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read manifest {}: {e}", args.manifest.display());
            return ExitCode::from(2);
        }
    };
    let manifest: ScanManifest = match serde_json::from_str(&manifest_text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("bad manifest: {e}");
            return ExitCode::from(2);
        }
    };

    let Some(rank_cap) = pool_rank(&args.pool) else {
        eprintln!("unknown pool `{}` (expected sd, sdt or sdtq)", args.pool);
        return ExitCode::from(2);
    };
    let core_rank_cap = match &args.core_pool {
        None => None,
        Some(name) => match pool_rank(name) {
            Some(r) => Some(r),
            None => {
                eprintln!("unknown core pool `{}`", name);
                return ExitCode::from(2);
            }
        },
    };

    let omegas = args
        .omega_sweep
        .clone()
        .or_else(|| manifest.omega_sweep.clone())
        .unwrap_or_else(|| vec![args.omega]);

    let workers = std::env::var("ADSPQE_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());

    let options = ScanOptions {
        config: SPQEConfig {
            omega: args.omega,
            dt: args.dt,
            micro: MicroIterConfig {
                residual_tolerance: args.micro_tol,
                ..MicroIterConfig::default()
            },
            rank_cap,
            core_rank_cap,
            max_macro_iterations: 50,
        },
        omegas,
        fci: args.fci || manifest.fci,
        epsilon: args.epsilon,
        workers,
    };

    let report = run_scan(&manifest, &options);
    if let Err(e) = write_report(&report, &args.out_dir) {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }

    for row in &report.rows {
        let line = match args.scheme.as_str() {
            "spqe" => format!("{} omega={} E_SPQE={:.12}", row.label, row.omega, row.e_spqe),
            "asc1" => format!("{} omega={} E_I={:.12}", row.label, row.omega, row.e_scheme1),
            "asc2" => format!("{} omega={} E_II={:.12}", row.label, row.omega, row.e_scheme2),
            _ => format!(
                "{} omega={} E_SPQE={:.12} E_I={:.12} E_II={:.12} N_P={}",
                row.label, row.omega, row.e_spqe, row.e_scheme1, row.e_scheme2, row.n_p
            ),
        };
        println!("{line}");
    }
    for (label, err) in &report.failures {
        eprintln!("FAILED {label}: {err}");
    }

    if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
