//! SPQE macro-iterations: residual-state construction, threshold-based
//! operator selection and orchestration of the micro-iteration optimizer.
//!
//! The residual-state "measurement" is emulated deterministically: exact
//! statevector amplitudes stand in for sampled frequencies, so a run is
//! reproducible bit for bit.

use serde::Serialize;

use crate::error::Result;
use crate::hamiltonian::{hf_reference, MolecularHamiltonian, ReferenceData};
use crate::pauli::{jordan_wigner, QubitOperator};
use crate::pool::{complement, generate_pool, OperatorPool};
use crate::pqe::{
    ansatz_energy, micro_iterate, residuals_batch, transformed_reference, MicroIterConfig,
    ResidualVector,
};
use crate::state::{AnsatzLayer, Excitation};

/// SPQE run settings.
#[derive(Debug, Clone)]
pub struct SPQEConfig {
    /// Macro-iteration exclusion threshold Omega (residual max-norm budget).
    pub omega: f64,
    /// Residual-state evolution time.
    pub dt: f64,
    pub micro: MicroIterConfig,
    /// Maximum excitation rank of the operator pool.
    pub rank_cap: usize,
    /// Optional cap on the rank of operators admissible to the principal
    /// set; operators above it stay auxiliary regardless of their residual.
    pub core_rank_cap: Option<usize>,
    pub max_macro_iterations: usize,
}

impl Default for SPQEConfig {
    fn default() -> Self {
        SPQEConfig {
            omega: 1e-2,
            dt: 1e-3,
            micro: MicroIterConfig::default(),
            rank_cap: 4,
            core_rank_cap: None,
            max_macro_iterations: 50,
        }
    }
}

/// One macro-iteration record.
#[derive(Debug, Clone, Serialize)]
pub struct MacroRecord {
    pub iteration: usize,
    pub added: Vec<Excitation>,
    /// Max residual magnitude among selection candidates at entry.
    pub max_candidate_residual: f64,
    pub micro_sweeps: usize,
    pub micro_converged: bool,
}

/// Outcome of an SPQE run: principal/auxiliary bipartition, energy and
/// bookkeeping for downstream corrections and resource estimates.
#[derive(Debug, Clone)]
pub struct SPQEResult {
    /// Ordered principal ansatz (selection order, theta optimized).
    pub principal: Vec<AnsatzLayer>,
    /// The excluded remainder of the pool, in pool order.
    pub auxiliary: Vec<Excitation>,
    pub e_spqe: f64,
    pub macro_history: Vec<MacroRecord>,
    /// Residuals over the full pool at the converged principal unitary.
    pub final_residuals: ResidualVector,
    pub macro_converged: bool,
    pub micro_converged: bool,
    /// Accumulated residual-element evaluations across all micro-iterations.
    pub residual_evaluations: usize,
}

impl SPQEResult {
    pub fn principal_excitations(&self) -> Vec<Excitation> {
        self.principal.iter().map(|l| l.excitation.clone()).collect()
    }

    pub fn n_principal(&self) -> usize {
        self.principal.len()
    }

    pub fn n_auxiliary(&self) -> usize {
        self.auxiliary.len()
    }
}

/// Magnitudes |C_mu| of the residual state
/// |r~> = (1 + i dt U^dag H U)|phi0> projected on every pool determinant.
pub fn residual_state_coefficients(
    layers: &[AnsatzLayer],
    hamiltonian: &QubitOperator,
    dt: f64,
    pool: &OperatorPool,
    reference: &ReferenceData,
) -> Result<Vec<(Excitation, f64)>> {
    let z = transformed_reference(layers, hamiltonian, reference)?;
    let mut out = Vec::with_capacity(pool.len());
    for exc in &pool.entries {
        let (det, _) = crate::state::apply_tau(exc, reference.determinant())
            .expect("pool entries are reference-connected by construction");
        // <phi_mu|r~> = i dt <phi_mu|U^dag H U|phi0> for mu != 0
        let magnitude = dt * crate::state::project(det, &z).norm();
        out.push((exc.clone(), magnitude));
    }
    Ok(out)
}

/// Split candidates by the cumulative exclusion budget: the excluded set is
/// the maximal ascending-|C| prefix with sum |C|^2/dt^2 <= Omega^2; the rest
/// is selected, ordered by descending magnitude.
pub fn select_operators(
    coefficients: &[(Excitation, f64)],
    omega: f64,
    dt: f64,
) -> (Vec<Excitation>, Vec<Excitation>) {
    let mut ranked: Vec<(usize, f64)> = coefficients
        .iter()
        .enumerate()
        .map(|(i, (_, c))| (i, (c / dt).powi(2)))
        .collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));

    let budget = omega * omega;
    let mut cumulative = 0.0;
    let mut n_excluded = 0;
    for &(_, weight) in &ranked {
        if cumulative + weight <= budget {
            cumulative += weight;
            n_excluded += 1;
        } else {
            break;
        }
    }

    let excluded: Vec<Excitation> = ranked[..n_excluded]
        .iter()
        .map(|&(i, _)| coefficients[i].0.clone())
        .collect();
    let selected: Vec<Excitation> = ranked[n_excluded..]
        .iter()
        .rev()
        .map(|&(i, _)| coefficients[i].0.clone())
        .collect();
    (selected, excluded)
}

/// A full SPQE run with the supporting objects it was built from.
#[derive(Debug, Clone)]
pub struct SpqeRun {
    pub hamiltonian: QubitOperator,
    pub reference: ReferenceData,
    pub pool: OperatorPool,
    pub result: SPQEResult,
}

/// Run SPQE on a molecular Hamiltonian, building the Jordan-Wigner operator,
/// reference data and pool internally.
pub fn run_spqe(mol: &MolecularHamiltonian, cfg: &SPQEConfig) -> Result<SpqeRun> {
    let reference = hf_reference(mol)?;
    let hamiltonian = jordan_wigner(mol);
    let pool = generate_pool(&reference, cfg.rank_cap)?;
    let result = run_spqe_with(&hamiltonian, &reference, &pool, cfg)?;
    Ok(SpqeRun {
        hamiltonian,
        reference,
        pool,
        result,
    })
}

/// Run SPQE against pre-built operator, reference and pool.
pub fn run_spqe_with(
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
    pool: &OperatorPool,
    cfg: &SPQEConfig,
) -> Result<SPQEResult> {
    let core_cap = cfg.core_rank_cap.unwrap_or(cfg.rank_cap);
    let mut layers: Vec<AnsatzLayer> = Vec::new();
    let mut macro_history = Vec::new();
    let mut macro_converged = false;
    let mut micro_converged = true;
    let mut residual_evaluations = 0usize;

    for iteration in 0..cfg.max_macro_iterations {
        let coefficients =
            residual_state_coefficients(&layers, hamiltonian, cfg.dt, pool, reference)?;
        let candidates: Vec<(Excitation, f64)> = coefficients
            .into_iter()
            .filter(|(e, _)| e.rank() <= core_cap)
            .collect();
        let max_candidate_residual = candidates
            .iter()
            .map(|(_, c)| c / cfg.dt)
            .fold(0.0, f64::max);
        let (selected, _) = select_operators(&candidates, cfg.omega, cfg.dt);

        let present: std::collections::BTreeSet<&Excitation> =
            layers.iter().map(|l| &l.excitation).collect();
        let added: Vec<Excitation> = selected
            .into_iter()
            .filter(|e| !present.contains(e))
            .collect();
        if added.is_empty() {
            macro_converged = true;
            break;
        }
        for exc in &added {
            layers.push(AnsatzLayer {
                excitation: exc.clone(),
                theta: 0.0,
            });
        }

        let active: Vec<usize> = (0..layers.len()).collect();
        let outcome = micro_iterate(layers, &active, hamiltonian, reference, &cfg.micro)?;
        layers = outcome.layers;
        residual_evaluations += outcome.residual_evaluations;
        micro_converged &= outcome.converged;
        macro_history.push(MacroRecord {
            iteration,
            added,
            max_candidate_residual,
            micro_sweeps: outcome.sweeps,
            micro_converged: outcome.converged,
        });
    }

    let final_residuals = residuals_batch(&layers, &pool.entries, hamiltonian, reference)?;
    let e_spqe = ansatz_energy(&layers, hamiltonian, reference)?;
    let principal_excitations: Vec<Excitation> =
        layers.iter().map(|l| l.excitation.clone()).collect();
    let auxiliary = complement(pool, &principal_excitations)?;

    Ok(SPQEResult {
        principal: layers,
        auxiliary,
        e_spqe,
        macro_history,
        final_residuals,
        macro_converged,
        micro_converged,
        residual_evaluations,
    })
}
