//! Property-based invariants of the statevector and selection kernels.

use num_complex::Complex64;
use proptest::prelude::*;

use adspqe::spqe::select_operators;
use adspqe::state::{
    apply_ansatz, apply_ansatz_dagger, apply_exp_kappa, apply_kappa, AnsatzLayer, Determinant,
    Excitation, StateVector,
};

const N_QUBITS: usize = 6;

/// A valid excitation: disjoint hole/particle index sets.
fn excitation_strategy() -> impl Strategy<Value = Excitation> {
    (1usize..=3).prop_flat_map(|rank| {
        proptest::sample::subsequence((0..N_QUBITS).collect::<Vec<_>>(), 2 * rank).prop_flat_map(
            move |indices| {
                proptest::sample::subsequence(indices.clone(), rank).prop_map(move |holes| {
                    let particles: Vec<usize> = indices
                        .iter()
                        .copied()
                        .filter(|i| !holes.contains(i))
                        .collect();
                    Excitation::new(holes, particles)
                })
            },
        )
    })
}

fn layer_strategy() -> impl Strategy<Value = AnsatzLayer> {
    (excitation_strategy(), -1.5f64..1.5).prop_map(|(excitation, theta)| AnsatzLayer {
        excitation,
        theta,
    })
}

fn state_strategy() -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << N_QUBITS).prop_filter_map(
        "state must be normalizable",
        |pairs| {
            let mut v = StateVector::zeroed(N_QUBITS);
            for (i, (re, im)) in pairs.into_iter().enumerate() {
                v.amplitudes[i] = Complex64::new(re, im);
            }
            let norm = v.norm();
            if norm < 1e-3 {
                return None;
            }
            for a in &mut v.amplitudes {
                *a /= norm;
            }
            Some(v)
        },
    )
}

proptest! {
    #[test]
    fn exponential_preserves_the_norm(layer in layer_strategy(), v in state_strategy()) {
        let w = apply_exp_kappa(&layer, &v);
        prop_assert!((w.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_angle_undoes_the_exponential(layer in layer_strategy(), v in state_strategy()) {
        let w = apply_exp_kappa(&layer, &v);
        let inverse = AnsatzLayer { excitation: layer.excitation.clone(), theta: -layer.theta };
        let back = apply_exp_kappa(&inverse, &w);
        for i in 0..back.amplitudes.len() {
            prop_assert!((back.amplitudes[i] - v.amplitudes[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn ansatz_dagger_is_the_ansatz_inverse(
        layers in proptest::collection::vec(layer_strategy(), 0..5),
        v in state_strategy(),
    ) {
        let w = apply_ansatz(&layers, &v);
        let back = apply_ansatz_dagger(&layers, &w);
        for i in 0..back.amplitudes.len() {
            prop_assert!((back.amplitudes[i] - v.amplitudes[i]).norm() < 1e-11);
        }
    }

    #[test]
    fn exponential_conserves_particle_number_and_spin(
        layer in layer_strategy(),
        start in 0u64..(1 << N_QUBITS),
    ) {
        // Sz conservation only holds for spin-conserving excitations;
        // particle number is conserved by every particle-hole string.
        let v = StateVector::basis(N_QUBITS, Determinant(start));
        let w = apply_exp_kappa(&layer, &v);
        let n0 = Determinant(start).particle_count();
        for (i, amp) in w.amplitudes.iter().enumerate() {
            if amp.norm() > 1e-12 {
                prop_assert_eq!(Determinant(i as u64).particle_count(), n0);
            }
        }
    }

    #[test]
    fn kappa_cubed_is_minus_kappa(exc in excitation_strategy(), v in state_strategy()) {
        let k1 = apply_kappa(&exc, &v);
        let k3 = apply_kappa(&exc, &apply_kappa(&exc, &k1));
        for i in 0..v.amplitudes.len() {
            prop_assert!((k3.amplitudes[i] + k1.amplitudes[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn selection_bipartitions_the_candidates(
        magnitudes in proptest::collection::vec(0.0f64..0.5, 1..20),
        omega in 0.0f64..0.3,
    ) {
        let dt = 1e-3;
        let coeffs: Vec<(Excitation, f64)> = magnitudes
            .iter()
            .enumerate()
            .map(|(i, &r)| (Excitation::new(vec![i], vec![100 + i]), r * dt))
            .collect();
        let (selected, excluded) = select_operators(&coeffs, omega, dt);
        prop_assert_eq!(selected.len() + excluded.len(), coeffs.len());
        // every selected magnitude is >= every excluded magnitude
        let lookup = |e: &Excitation| coeffs.iter().find(|(c, _)| c == e).unwrap().1;
        let min_selected = selected.iter().map(&lookup).fold(f64::INFINITY, f64::min);
        let max_excluded = excluded.iter().map(&lookup).fold(0.0, f64::max);
        prop_assert!(selected.is_empty() || excluded.is_empty() || min_selected >= max_excluded);
        // the excluded set exhausts the budget
        let spent: f64 = excluded.iter().map(|e| (lookup(e) / dt).powi(2)).sum();
        prop_assert!(spent <= omega * omega + 1e-15);
    }

    #[test]
    fn selection_is_antitone_for_random_coefficients(
        magnitudes in proptest::collection::vec(0.0f64..0.5, 1..20),
        omega_small in 0.0f64..0.15,
        gap in 0.0f64..0.15,
    ) {
        let dt = 1e-3;
        let coeffs: Vec<(Excitation, f64)> = magnitudes
            .iter()
            .enumerate()
            .map(|(i, &r)| (Excitation::new(vec![i], vec![100 + i]), r * dt))
            .collect();
        let (loose, _) = select_operators(&coeffs, omega_small + gap, dt);
        let (tight, _) = select_operators(&coeffs, omega_small, dt);
        let tight_set: std::collections::BTreeSet<_> = tight.into_iter().collect();
        for e in loose {
            prop_assert!(tight_set.contains(&e), "larger omega selected an extra operator");
        }
    }
}
