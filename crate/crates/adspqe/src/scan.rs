//! Scan driver: runs SPQE and the auxiliary subspace corrections over a
//! manifest of FCIDUMP fixtures and threshold sweeps, emitting a results CSV
//! and per-run JSON records.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::asc::{energy_scheme2, map_auxiliary};
use crate::error::Result;
use crate::fci::fci_ground_energy;
use crate::hamiltonian::parse_fcidump;
use crate::resources::{measurement_bounds, MeasurementInputs, ResourceEstimate};
use crate::spqe::{run_spqe, SPQEConfig};

/// One scan target: a labelled FCIDUMP file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanEntry {
    pub label: String,
    pub fcidump: PathBuf,
}

/// Scan manifest: targets plus sweep settings. CLI flags override fields
/// left at their defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanManifest {
    pub entries: Vec<ScanEntry>,
    #[serde(default)]
    pub omega_sweep: Option<Vec<f64>>,
    #[serde(default)]
    pub fci: bool,
}

/// Fully resolved scan options.
#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub config: SPQEConfig,
    pub omegas: Vec<f64>,
    pub fci: bool,
    /// Measurement-bound target precision (hartree).
    pub epsilon: f64,
    pub workers: Option<usize>,
}

/// One CSV row worth of results.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub label: String,
    pub omega: f64,
    pub e_hf: f64,
    pub e_spqe: f64,
    pub e_scheme1: f64,
    pub e_scheme2: f64,
    pub e_fci: Option<f64>,
    pub n_p: usize,
    pub n_a: usize,
    pub cnot: u64,
    pub n_res: usize,
    pub m_spqe: f64,
    pub m_ii: f64,
}

impl ScanRow {
    fn err_millihartree(&self, energy: f64) -> Option<f64> {
        self.e_fci.map(|f| (energy - f) * 1e3)
    }
}

/// Scan outcome: ordered rows, per-run JSON records and per-entry failures.
#[derive(Debug)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub records: Vec<serde_json::Value>,
    pub failures: Vec<(String, String)>,
}

fn run_point(entry: &ScanEntry, omega: f64, options: &ScanOptions) -> Result<(ScanRow, serde_json::Value)> {
    let text = fs::read_to_string(&entry.fcidump)?;
    let mol = parse_fcidump(&text)?;
    let mut cfg = options.config.clone();
    cfg.omega = omega;

    let run = run_spqe(&mol, &cfg)?;
    let aux = map_auxiliary(&run.result, &run.hamiltonian, &run.reference, true)?;
    let energies = energy_scheme2(run.result.e_spqe, &aux, &run.hamiltonian, &run.reference)?;

    let estimate: ResourceEstimate = measurement_bounds(
        &run.result,
        run.hamiltonian.n_qubits,
        &MeasurementInputs {
            epsilon: options.epsilon,
            sum_abs_h: run.hamiltonian.coefficient_l1_norm(),
            dt: cfg.dt,
            omega,
        },
    );

    let e_fci = if options.fci {
        Some(fci_ground_energy(&mol)?.0)
    } else {
        None
    };

    let row = ScanRow {
        label: entry.label.clone(),
        omega,
        e_hf: run.reference.hf_energy,
        e_spqe: run.result.e_spqe,
        e_scheme1: energies.e_scheme1,
        e_scheme2: energies.e_scheme2,
        e_fci,
        n_p: run.result.n_principal(),
        n_a: run.result.n_auxiliary(),
        cnot: estimate.cnot_count,
        n_res: run.result.residual_evaluations,
        m_spqe: estimate.m_spqe_bound,
        m_ii: estimate.m_scheme2_bound,
    };

    let theta_a: Vec<f64> = aux.entries.iter().map(|e| e.theta).collect();
    let record = json!({
        "label": entry.label,
        "fcidump": entry.fcidump,
        "omega": omega,
        "dt": cfg.dt,
        "rank_cap": cfg.rank_cap,
        "core_rank_cap": cfg.core_rank_cap,
        "micro_tolerance": cfg.micro.residual_tolerance,
        "e_hf": row.e_hf,
        "e_spqe": row.e_spqe,
        "e_scheme1": row.e_scheme1,
        "e_scheme2": row.e_scheme2,
        "e_fci": row.e_fci,
        "term1": energies.term1,
        "term2_scheme2": energies.term2_scheme2,
        "n_principal": row.n_p,
        "n_auxiliary": row.n_a,
        "macro_converged": run.result.macro_converged,
        "micro_converged": run.result.micro_converged,
        "macro_history": run.result.macro_history,
        "principal": run.result.principal.iter().map(|l| json!({
            "holes": l.excitation.holes,
            "particles": l.excitation.particles,
            "theta": l.theta,
        })).collect::<Vec<_>>(),
        "theta_auxiliary": theta_a,
        "resources": estimate,
    });
    Ok((row, record))
}

/// Run every (entry, omega) pair. Points execute in parallel up to the
/// worker cap; results are returned in manifest order.
pub fn run_scan(manifest: &ScanManifest, options: &ScanOptions) -> ScanReport {
    let mut points: Vec<(usize, ScanEntry, f64)> = Vec::new();
    for (i, entry) in manifest.entries.iter().enumerate() {
        for &omega in &options.omegas {
            points.push((i, entry.clone(), omega));
        }
    }

    let execute = || {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|(_, entry, omega)| (entry.label.clone(), run_point(entry, *omega, options)))
            .collect::<Vec<_>>()
    };
    let outcomes = match options.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool construction")
            .install(execute),
        None => execute(),
    };

    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (label, outcome) in outcomes {
        match outcome {
            Ok((row, record)) => {
                rows.push(row);
                records.push(record);
            }
            Err(err) => failures.push((label, err.to_string())),
        }
    }
    ScanReport {
        rows,
        records,
        failures,
    }
}

/// Render the results CSV. Energies carry 12 significant digits; error
/// columns are in millihartree.
pub fn render_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(
        "label,omega,e_hf,e_spqe,e_scheme1,e_scheme2,e_fci,err_spqe,err_s1,err_s2,n_p,n_a,cnot,n_res,m_spqe,m_ii\n",
    );
    let fmt = |v: f64| format!("{:.11e}", v);
    let opt = |v: Option<f64>| v.map(fmt).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.label,
            r.omega,
            fmt(r.e_hf),
            fmt(r.e_spqe),
            fmt(r.e_scheme1),
            fmt(r.e_scheme2),
            opt(r.e_fci),
            opt(r.err_millihartree(r.e_spqe)),
            opt(r.err_millihartree(r.e_scheme1)),
            opt(r.err_millihartree(r.e_scheme2)),
            r.n_p,
            r.n_a,
            r.cnot,
            r.n_res,
            fmt(r.m_spqe),
            fmt(r.m_ii),
        ));
    }
    out
}

/// Write the CSV, JSON records and a plain-text summary into `out_dir`.
pub fn write_report(report: &ScanReport, out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("results.csv"), render_csv(&report.rows))?;
    fs::write(
        out_dir.join("runs.json"),
        serde_json::to_string_pretty(&report.records)?,
    )?;
    let mut summary = String::new();
    for row in &report.rows {
        summary.push_str(&format!(
            "{} omega={:.4}: E_SPQE={:.10} E_I={:.10} E_II={:.10} N_P={} N_A={} CNOT={}\n",
            row.label, row.omega, row.e_spqe, row.e_scheme1, row.e_scheme2, row.n_p, row.n_a,
            row.cnot
        ));
    }
    for (label, err) in &report.failures {
        summary.push_str(&format!("FAILED {}: {}\n", label, err));
    }
    fs::write(out_dir.join("summary.txt"), summary)?;
    Ok(())
}
