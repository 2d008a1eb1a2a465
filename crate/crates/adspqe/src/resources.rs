//! Quantum-resource accounting: CNOT and parameter counts for the principal
//! ansatz, and measurement-cost bounds.
//!
//! CNOT convention: each exponentiated excitation is decomposed into Pauli
//! rotations through Jordan-Wigner (a rank-k excitation yields 2^(2k-1)
//! strings) and every rotation of weight w costs 2*(w-1) CNOTs for the
//! entangling staircase and its reverse. No cancellation across neighboring
//! rotations; single-qubit gates are not counted.

use serde::Serialize;

use crate::pauli::QubitOperator;
use crate::spqe::SPQEResult;
use crate::state::Excitation;

/// Resource tallies and measurement bounds for one run.
#[derive(Debug, Clone, Serialize)]
pub struct ResourceEstimate {
    pub cnot_count: u64,
    pub parameter_count: usize,
    /// Residual-element evaluations accumulated across micro-iterations.
    pub residual_evaluations: usize,
    pub m_spqe_bound: f64,
    pub m_scheme2_bound: f64,
    pub m_total_bound: f64,
    /// Macro-iteration measurement overhead estimate ~ (dt * omega)^-2.
    pub macro_measurement_overhead: f64,
    pub epsilon: f64,
    pub sum_abs_h: f64,
    /// Counting convention for the CNOT figure.
    pub cnot_convention: &'static str,
}

/// Staircase CNOT cost of one exponentiated excitation.
pub fn cnot_count(exc: &Excitation, n_qubits: usize) -> u64 {
    if exc.holes.is_empty() && exc.particles.is_empty() {
        return 0;
    }
    let kappa = kappa_operator(exc, n_qubits);
    kappa
        .terms()
        .map(|(string, _)| {
            let w = string.weight() as u64;
            if w > 1 {
                2 * (w - 1)
            } else {
                0
            }
        })
        .sum()
}

/// kappa = tau - tau^dag as a qubit operator, for gate counting.
pub fn kappa_operator(exc: &Excitation, n_qubits: usize) -> QubitOperator {
    // tau = a+_a a+_b ... a_j a_i: creations left of annihilations
    let mut op = QubitOperator::identity(n_qubits);
    for &a in exc.particles.iter() {
        op = op.multiply(&QubitOperator::ladder(a, true, n_qubits));
    }
    for &i in exc.holes.iter().rev() {
        op = op.multiply(&QubitOperator::ladder(i, false, n_qubits));
    }
    let mut dagger = QubitOperator::identity(n_qubits);
    for &i in exc.holes.iter() {
        dagger = dagger.multiply(&QubitOperator::ladder(i, true, n_qubits));
    }
    for &a in exc.particles.iter().rev() {
        dagger = dagger.multiply(&QubitOperator::ladder(a, false, n_qubits));
    }
    let mut kappa = op;
    let mut neg = dagger;
    neg.scale(num_complex::Complex64::new(-1.0, 0.0));
    kappa.add_assign(&neg);
    kappa.simplify();
    kappa
}

/// Total staircase CNOTs of the principal ansatz.
pub fn ansatz_cnot_count(result: &SPQEResult, n_qubits: usize) -> u64 {
    result
        .principal
        .iter()
        .map(|l| cnot_count(&l.excitation, n_qubits))
        .sum()
}

/// Inputs for the measurement bounds that are not part of the SPQE result.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementInputs {
    /// Target precision epsilon (hartree).
    pub epsilon: f64,
    /// Pauli 1-norm of the mapped Hamiltonian.
    pub sum_abs_h: f64,
    pub dt: f64,
    pub omega: f64,
}

/// Measurement-cost bounds:
/// M_SPQE <= N_res * 3 N_P (sum |h|)^2 / eps^2,
/// M_II   <= N_A (sum |h|)^2 / eps^2, total = sum of the two.
pub fn measurement_bounds(
    result: &SPQEResult,
    n_qubits: usize,
    inputs: &MeasurementInputs,
) -> ResourceEstimate {
    let h2_over_eps2 = (inputs.sum_abs_h / inputs.epsilon).powi(2);
    let m_spqe =
        result.residual_evaluations as f64 * 3.0 * result.n_principal() as f64 * h2_over_eps2;
    let m_scheme2 = result.n_auxiliary() as f64 * h2_over_eps2;
    ResourceEstimate {
        cnot_count: ansatz_cnot_count(result, n_qubits),
        parameter_count: result.n_principal(),
        residual_evaluations: result.residual_evaluations,
        m_spqe_bound: m_spqe,
        m_scheme2_bound: m_scheme2,
        m_total_bound: m_spqe + m_scheme2,
        macro_measurement_overhead: (inputs.dt * inputs.omega).powi(-2),
        epsilon: inputs.epsilon,
        sum_abs_h: inputs.sum_abs_h,
        cnot_convention: "jw-staircase-no-cancellation",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pqe::ResidualVector;

    #[test]
    fn rank1_adjacent_staircase() {
        // two strings of weight 2, each 2 CNOTs
        let exc = Excitation::new(vec![0], vec![1]);
        assert_eq!(cnot_count(&exc, 4), 4);
    }

    #[test]
    fn rank2_contiguous_staircase() {
        // 8 strings of weight 4, each 6 CNOTs
        let exc = Excitation::new(vec![0, 1], vec![2, 3]);
        assert_eq!(cnot_count(&exc, 4), 48);
    }

    #[test]
    fn kappa_string_count_is_two_to_the_2k_minus_1() {
        for (exc, expect) in [
            (Excitation::new(vec![0], vec![2]), 2usize),
            (Excitation::new(vec![0, 1], vec![2, 3]), 8),
            (Excitation::new(vec![0, 1, 2], vec![3, 4, 5]), 32),
        ] {
            let kappa = kappa_operator(&exc, 6);
            assert_eq!(kappa.len(), expect, "{exc:?}");
        }
    }

    #[test]
    fn empty_excitation_costs_nothing() {
        let exc = Excitation::new(vec![], vec![]);
        assert_eq!(cnot_count(&exc, 4), 0);
    }

    #[test]
    fn z_chain_raises_the_weight() {
        // 0 -> 3 crosses qubits 1 and 2: strings have weight 4
        let exc = Excitation::new(vec![0], vec![3]);
        assert_eq!(cnot_count(&exc, 4), 2 * 2 * 3);
    }

    fn dummy_result(n_p: usize, n_a: usize, n_res: usize) -> SPQEResult {
        SPQEResult {
            principal: (0..n_p)
                .map(|i| crate::state::AnsatzLayer {
                    excitation: Excitation::new(vec![i], vec![100 + i]),
                    theta: 0.1,
                })
                .collect(),
            auxiliary: (0..n_a)
                .map(|i| Excitation::new(vec![i], vec![200 + i]))
                .collect(),
            e_spqe: 0.0,
            macro_history: vec![],
            final_residuals: ResidualVector {
                entries: vec![],
                theta_snapshot: vec![],
            },
            macro_converged: true,
            micro_converged: true,
            residual_evaluations: n_res,
        }
    }

    #[test]
    fn scheme2_bound_formula() {
        let result = dummy_result(0, 10, 0);
        let inputs = MeasurementInputs {
            epsilon: 1e-3,
            sum_abs_h: 2.0,
            dt: 1e-3,
            omega: 1e-2,
        };
        let est = measurement_bounds(&result, 4, &inputs);
        assert!((est.m_scheme2_bound - 4e7).abs() < 1e-3);
        assert_eq!(est.m_spqe_bound, 0.0);
        assert_eq!(est.m_total_bound, est.m_spqe_bound + est.m_scheme2_bound);
    }
}
