//! Fock-space statevector over determinant bitstrings and exact application
//! of excitation-operator exponentials.
//!
//! Qubit `i` carries the occupation of spin orbital `i`, with qubit 0 as the
//! least-significant bit of the determinant index. Fermionic parity is
//! counted over lower-indexed occupied modes, matching the Jordan-Wigner
//! convention in [`crate::pauli`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An occupation-number determinant stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Determinant(pub u64);

impl Determinant {
    pub fn occupied(&self, orbital: usize) -> bool {
        self.0 >> orbital & 1 == 1
    }

    pub fn particle_count(&self) -> u32 {
        self.0.count_ones()
    }

    /// Count of occupied alpha (even) minus beta (odd) spin orbitals.
    pub fn sz2(&self) -> i32 {
        const ALPHA: u64 = 0x5555_5555_5555_5555;
        let a = (self.0 & ALPHA).count_ones() as i32;
        let b = (self.0 & !ALPHA).count_ones() as i32;
        a - b
    }
}

/// A multi-index particle-hole excitation: tau = a+_a a+_b ... a_j a_i with
/// holes {i,j,...} and particles {a,b,...} kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Excitation {
    pub holes: Vec<usize>,
    pub particles: Vec<usize>,
}

impl Excitation {
    pub fn new(mut holes: Vec<usize>, mut particles: Vec<usize>) -> Self {
        holes.sort_unstable();
        particles.sort_unstable();
        Excitation { holes, particles }
    }

    pub fn rank(&self) -> usize {
        self.holes.len()
    }
}

/// One factor e^{theta * kappa} of the disentangled product ansatz.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzLayer {
    pub excitation: Excitation,
    pub theta: f64,
}

/// Dense complex amplitudes over all 2^n determinants.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
    pub n_qubits: usize,
}

impl StateVector {
    pub fn zeroed(n_qubits: usize) -> Self {
        StateVector {
            amplitudes: vec![Complex64::ZERO; 1 << n_qubits],
            n_qubits,
        }
    }

    /// Basis state |d>.
    pub fn basis(n_qubits: usize, d: Determinant) -> Self {
        let mut v = Self::zeroed(n_qubits);
        v.amplitudes[d.0 as usize] = Complex64::ONE;
        v
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Apply tau to a determinant: annihilate the holes (ascending), then create
/// the particles (descending), accumulating the fermionic parity sign.
/// Returns `None` when the string annihilates an empty orbital or creates an
/// occupied one.
pub fn apply_tau(exc: &Excitation, d: Determinant) -> Option<(Determinant, i32)> {
    let mut bits = d.0;
    let mut sign = 1i32;
    for &i in &exc.holes {
        if bits >> i & 1 == 0 {
            return None;
        }
        if ((bits & ((1u64 << i) - 1)).count_ones()) % 2 == 1 {
            sign = -sign;
        }
        bits &= !(1u64 << i);
    }
    for &a in exc.particles.iter().rev() {
        if bits >> a & 1 == 1 {
            return None;
        }
        if ((bits & ((1u64 << a) - 1)).count_ones()) % 2 == 1 {
            sign = -sign;
        }
        bits |= 1u64 << a;
    }
    Some((Determinant(bits), sign))
}

/// Apply tau-dagger: annihilate the particles (ascending), then create the
/// holes (descending).
pub fn apply_tau_dagger(exc: &Excitation, d: Determinant) -> Option<(Determinant, i32)> {
    let adjoint = Excitation {
        holes: exc.particles.clone(),
        particles: exc.holes.clone(),
    };
    apply_tau(&adjoint, d)
}

/// kappa v with kappa = tau - tau^dagger, applied densely.
pub fn apply_kappa(exc: &Excitation, v: &StateVector) -> StateVector {
    let mut out = StateVector::zeroed(v.n_qubits);
    for (idx, amp) in v.amplitudes.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        if let Some((d, s)) = apply_tau(exc, Determinant(idx as u64)) {
            out.amplitudes[d.0 as usize] += amp * s as f64;
        }
        if let Some((d, s)) = apply_tau_dagger(exc, Determinant(idx as u64)) {
            out.amplitudes[d.0 as usize] -= amp * s as f64;
        }
    }
    out
}

/// Exact e^{theta kappa} v via the closed form
/// e^{theta kappa} = 1 + sin(theta) kappa + (1 - cos(theta)) kappa^2,
/// valid because kappa^3 = -kappa for elementary excitation strings.
pub fn apply_exp_kappa(layer: &AnsatzLayer, v: &StateVector) -> StateVector {
    let theta = layer.theta;
    if theta == 0.0 {
        return v.clone();
    }
    let kv = apply_kappa(&layer.excitation, v);
    let kkv = apply_kappa(&layer.excitation, &kv);
    let (s, c) = theta.sin_cos();
    let mut out = v.clone();
    for i in 0..out.amplitudes.len() {
        out.amplitudes[i] += s * kv.amplitudes[i] + (1.0 - c) * kkv.amplitudes[i];
    }
    out
}

/// Apply an ordered ansatz: the first layer acts on the ket first, so the
/// state is ... e^{theta_2 kappa_2} e^{theta_1 kappa_1} |v>.
pub fn apply_ansatz(layers: &[AnsatzLayer], v: &StateVector) -> StateVector {
    let mut out = v.clone();
    for layer in layers {
        out = apply_exp_kappa(layer, &out);
    }
    out
}

/// Apply the inverse ansatz: layers in reverse order with negated angles.
pub fn apply_ansatz_dagger(layers: &[AnsatzLayer], v: &StateVector) -> StateVector {
    let mut out = v.clone();
    for layer in layers.iter().rev() {
        let inv = AnsatzLayer {
            excitation: layer.excitation.clone(),
            theta: -layer.theta,
        };
        out = apply_exp_kappa(&inv, &out);
    }
    out
}

/// Amplitude <d|v>.
pub fn project(d: Determinant, v: &StateVector) -> Complex64 {
    v.amplitudes[d.0 as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_moves_an_electron_with_parity_sign() {
        // a+_2 a_0 on |0011>: annihilating 0 passes no occupied modes below,
        // creating 2 passes one (qubit 1) -> overall sign -1
        let exc = Excitation::new(vec![0], vec![2]);
        let (d, s) = apply_tau(&exc, Determinant(0b0011)).unwrap();
        assert_eq!(d, Determinant(0b0110));
        assert_eq!(s, -1);
    }

    #[test]
    fn tau_on_empty_orbital_vanishes() {
        let exc = Excitation::new(vec![0], vec![2]);
        assert!(apply_tau(&exc, Determinant(0b0100)).is_none());
    }

    #[test]
    fn tau_dagger_inverts_tau() {
        let exc = Excitation::new(vec![0, 1], vec![2, 3]);
        let start = Determinant(0b0011);
        let (mid, s1) = apply_tau(&exc, start).unwrap();
        let (back, s2) = apply_tau_dagger(&exc, mid).unwrap();
        assert_eq!(back, start);
        assert_eq!(s1 * s2, 1);
    }

    #[test]
    fn exp_kappa_at_zero_is_identity() {
        let exc = Excitation::new(vec![0], vec![2]);
        let v = StateVector::basis(4, Determinant(0b0011));
        let layer = AnsatzLayer {
            excitation: exc,
            theta: 0.0,
        };
        assert_eq!(apply_exp_kappa(&layer, &v), v);
    }

    #[test]
    fn exp_kappa_quarter_pi_is_equal_superposition() {
        let exc = Excitation::new(vec![0], vec![2]);
        let phi0 = Determinant(0b0011);
        let v = StateVector::basis(4, phi0);
        let layer = AnsatzLayer {
            excitation: exc.clone(),
            theta: std::f64::consts::FRAC_PI_4,
        };
        let w = apply_exp_kappa(&layer, &v);
        let (phi_mu, sign) = apply_tau(&exc, phi0).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((project(phi0, &w).re - inv_sqrt2).abs() < 1e-12);
        assert!((project(phi_mu, &w).re - sign as f64 * inv_sqrt2).abs() < 1e-12);
    }

    #[test]
    fn commuting_disjoint_layers_are_order_independent() {
        let l1 = AnsatzLayer {
            excitation: Excitation::new(vec![0], vec![2]),
            theta: 0.3,
        };
        let l2 = AnsatzLayer {
            excitation: Excitation::new(vec![1], vec![3]),
            theta: -0.7,
        };
        let v = StateVector::basis(4, Determinant(0b0011));
        let a = apply_ansatz(&[l1.clone(), l2.clone()], &v);
        let b = apply_ansatz(&[l2, l1], &v);
        for i in 0..a.amplitudes.len() {
            assert!((a.amplitudes[i] - b.amplitudes[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn empty_ansatz_is_identity() {
        let v = StateVector::basis(4, Determinant(0b0011));
        assert_eq!(apply_ansatz(&[], &v), v);
    }

    #[test]
    fn projection_on_basis_states() {
        let v = StateVector::basis(4, Determinant(0b0011));
        assert_eq!(project(Determinant(0b0011), &v), Complex64::ONE);
        assert_eq!(project(Determinant(0b0101), &v), Complex64::ZERO);
    }
}
