//! Principal-to-auxiliary parameter mapping and the non-iterative auxiliary
//! subspace corrections, schemes I and II.
//!
//! theta_A = r_A / D_A with r_A the residual of the converged principal
//! unitary against the auxiliary determinant. Scheme I folds the auxiliary
//! amplitudes through the Fock-diagonal approximation only; scheme II keeps
//! the bare-Hamiltonian double commutator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{mp_denominator, ReferenceData};
use crate::pauli::{self, QubitOperator};
use crate::pqe::residual_direct;
use crate::spqe::SPQEResult;
use crate::state::{apply_kappa, Excitation, StateVector};

/// Where an auxiliary amplitude came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ReusedFromFinalResiduals,
    FreshlyComputed,
}

/// One mapped auxiliary amplitude.
#[derive(Debug, Clone)]
pub struct AuxiliaryEntry {
    pub excitation: Excitation,
    pub theta: f64,
    pub denominator: f64,
    pub denominator_clamped: bool,
    pub provenance: Provenance,
}

/// Mapped amplitudes over the full auxiliary set.
#[derive(Debug, Clone)]
pub struct AuxiliarySolution {
    pub entries: Vec<AuxiliaryEntry>,
}

/// Scheme energies with the bookkeeping terms they are assembled from.
#[derive(Debug, Clone, Copy)]
pub struct ASCEnergies {
    pub e_spqe: f64,
    pub e_scheme1: f64,
    pub e_scheme2: f64,
    /// 2 sum theta_A^2 D_A, the analytic Term-1 value.
    pub term1: f64,
    /// 1/2 sum theta_A^2 <[[H,kappa],kappa]>, the scheme-II Term-2 value.
    pub term2_scheme2: f64,
}

/// Map auxiliary amplitudes from the converged principal parameters.
///
/// With `reuse_final_residuals` the amplitudes come straight from the
/// residuals the SPQE run already evaluated over the full pool; otherwise
/// each residual is recomputed through the direct pathway.
pub fn map_auxiliary(
    spqe: &SPQEResult,
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
    reuse_final_residuals: bool,
) -> Result<AuxiliarySolution> {
    let mut entries = Vec::with_capacity(spqe.auxiliary.len());
    for exc in &spqe.auxiliary {
        let (residual, provenance) = if reuse_final_residuals {
            let r = spqe.final_residuals.get(exc).ok_or_else(|| {
                Error::Numerical(format!("auxiliary {:?} missing from final residuals", exc))
            })?;
            (r, Provenance::ReusedFromFinalResiduals)
        } else {
            (
                residual_direct(&spqe.principal, exc, hamiltonian, reference)?,
                Provenance::FreshlyComputed,
            )
        };
        let d = mp_denominator(exc, reference);
        entries.push(AuxiliaryEntry {
            excitation: exc.clone(),
            theta: residual / d.value,
            denominator: d.value,
            denominator_clamped: d.clamped,
            provenance,
        });
    }
    Ok(AuxiliarySolution { entries })
}

/// <phi0| [[H, kappa], kappa] |phi0> = <phi0| (H kk - 2 k H k + kk H) |phi0>
/// by statevector application of kappa = tau - tau^dag and H.
pub fn double_commutator_expectation(
    exc: &Excitation,
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<f64> {
    let phi0 = StateVector::basis(hamiltonian.n_qubits, reference.determinant());
    let kv = apply_kappa(exc, &phi0);
    let kkv = apply_kappa(exc, &kv);

    let h_phi0 = pauli::apply(hamiltonian, &phi0)?;
    let h_kv = pauli::apply(hamiltonian, &kv)?;
    let h_kkv = pauli::apply(hamiltonian, &kkv)?;

    // kappa is anti-Hermitian: <phi0| kappa = -(kappa |phi0>)^dag
    let term_h_kk = phi0.inner(&h_kkv);
    let term_k_h_k = -kv.inner(&h_kv);
    let term_kk_h = kkv.inner(&h_phi0);

    let value: Complex64 = term_h_kk - 2.0 * term_k_h_k + term_kk_h;
    if value.im.abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "double commutator has imaginary part {:.3e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// Scheme-I energy: E_SPQE + sum theta_A^2 D_A.
pub fn energy_scheme1(e_spqe: f64, aux: &AuxiliarySolution) -> f64 {
    let correction: f64 = aux
        .entries
        .iter()
        .map(|e| e.theta * e.theta * e.denominator)
        .sum();
    e_spqe + correction
}

/// Scheme-II energy: E_SPQE + 2 sum theta^2 D + 1/2 sum theta^2 W with W the
/// diagonal double-commutator expectation of the bare Hamiltonian.
pub fn energy_scheme2(
    e_spqe: f64,
    aux: &AuxiliarySolution,
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<ASCEnergies> {
    let mut term1 = 0.0;
    let mut term2 = 0.0;
    for entry in &aux.entries {
        let t2 = entry.theta * entry.theta;
        term1 += 2.0 * t2 * entry.denominator;
        let w = double_commutator_expectation(&entry.excitation, hamiltonian, reference)?;
        term2 += 0.5 * t2 * w;
    }
    Ok(ASCEnergies {
        e_spqe,
        e_scheme1: energy_scheme1(e_spqe, aux),
        e_scheme2: e_spqe + term1 + term2,
        term1,
        term2_scheme2: term2,
    })
}

/// Full off-diagonal Term-2 double sum with the bare Hamiltonian, offered as
/// a diagnostic to quantify what the diagonal approximation drops.
pub fn term2_full_double_sum(
    aux: &AuxiliarySolution,
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<f64> {
    let phi0 = StateVector::basis(hamiltonian.n_qubits, reference.determinant());
    let mut total = 0.0;
    for a in &aux.entries {
        for b in &aux.entries {
            let ka = apply_kappa(&a.excitation, &phi0);
            let kb = apply_kappa(&b.excitation, &phi0);
            let ka_kb = apply_kappa(&a.excitation, &kb);
            // <phi0|[[H,ka],kb]|phi0> = <H ka kb> - <ka H kb> - <kb H ka> + <kb ka H>
            let h_phi0 = pauli::apply(hamiltonian, &phi0)?;
            let h_kb = pauli::apply(hamiltonian, &kb)?;
            let h_kakb = pauli::apply(hamiltonian, &ka_kb)?;
            let t1 = phi0.inner(&h_kakb);
            let t2 = -ka.inner(&h_kb);
            let t3 = -kb.inner(&pauli::apply(hamiltonian, &ka)?);
            // (kb ka)^dag phi0 = ka kb phi0 for anti-Hermitian kappas
            let t4 = ka_kb.inner(&h_phi0);
            let value = t1 - t2 - t3 + t4;
            total += 0.5 * a.theta * b.theta * value.re;
        }
    }
    Ok(total)
}
