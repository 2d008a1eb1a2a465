//! Jordan-Wigner mapping and a bitmask algebra of weighted Pauli strings.
//!
//! A string is stored as an (x-mask, z-mask) pair with the letter at qubit q
//! given by the bit pair: (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y. The operator
//! represented is the tensor product of the letters themselves, i.e.
//! `i^{|x & z|} X^x Z^z`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::MolecularHamiltonian;
use crate::state::StateVector;

/// Coefficients below this magnitude are dropped during simplification.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// A Pauli string on up to 64 qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub z_mask: u64,
    pub x_mask: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { z_mask: 0, x_mask: 0 };

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    /// Product of two strings, returning the resulting string and the
    /// accumulated phase (a power of i).
    pub fn multiply(&self, other: &PauliString) -> (PauliString, Complex64) {
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        // S(x,z) = i^{|x&z|} X^x Z^z; Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1
        let mut exp = (self.x_mask & self.z_mask).count_ones()
            + (other.x_mask & other.z_mask).count_ones()
            + 2 * (self.z_mask & other.x_mask).count_ones();
        // subtract the phase folded into the product string's own letters
        exp += 4 - (x & z).count_ones() % 4;
        let phase = match exp % 4 {
            0 => Complex64::ONE,
            1 => Complex64::I,
            2 => -Complex64::ONE,
            _ => -Complex64::I,
        };
        (PauliString { z_mask: z, x_mask: x }, phase)
    }

    /// Action on a basis state: S|b> = i^{|x&z|} (-1)^{|z&b|} |b ^ x>.
    pub fn apply_to_basis(&self, bits: u64) -> (u64, Complex64) {
        let exp = ((self.x_mask & self.z_mask).count_ones()
            + 2 * (self.z_mask & bits).count_ones())
            % 4;
        let phase = match exp {
            0 => Complex64::ONE,
            1 => Complex64::I,
            2 => -Complex64::ONE,
            _ => -Complex64::I,
        };
        (bits ^ self.x_mask, phase)
    }

    pub fn label(&self, n_qubits: usize) -> String {
        (0..n_qubits)
            .map(|q| match (self.x_mask >> q & 1, self.z_mask >> q & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect()
    }
}

/// A weighted sum of Pauli strings. Terms are kept in a sorted map so that
/// iteration (and therefore floating-point summation) order is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitOperator {
    terms: BTreeMap<PauliString, Complex64>,
    pub n_qubits: usize,
}

impl QubitOperator {
    pub fn zero(n_qubits: usize) -> Self {
        QubitOperator {
            terms: BTreeMap::new(),
            n_qubits,
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let mut op = Self::zero(n_qubits);
        op.add_term(PauliString::IDENTITY, Complex64::ONE);
        op
    }

    pub fn add_term(&mut self, string: PauliString, coefficient: Complex64) {
        let entry = self.terms.entry(string).or_insert(Complex64::ZERO);
        *entry += coefficient;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drop terms with negligible coefficients.
    pub fn simplify(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_THRESHOLD);
    }

    pub fn scale(&mut self, factor: Complex64) {
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    pub fn add_assign(&mut self, other: &QubitOperator) {
        for (s, c) in other.terms() {
            self.add_term(*s, *c);
        }
    }

    /// Operator product, expanding term by term.
    pub fn multiply(&self, other: &QubitOperator) -> QubitOperator {
        let mut out = QubitOperator::zero(self.n_qubits);
        for (s1, c1) in self.terms() {
            for (s2, c2) in other.terms() {
                let (s, phase) = s1.multiply(s2);
                out.add_term(s, c1 * c2 * phase);
            }
        }
        out
    }

    /// Sum of |coefficient| over all terms (Pauli 1-norm).
    pub fn coefficient_l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Jordan-Wigner ladder operator: creation if `create`, else annihilation.
    pub fn ladder(index: usize, create: bool, n_qubits: usize) -> QubitOperator {
        let chain = (1u64 << index) - 1;
        let x_term = PauliString {
            x_mask: 1 << index,
            z_mask: chain,
        };
        let y_term = PauliString {
            x_mask: 1 << index,
            z_mask: chain | (1 << index),
        };
        let mut op = QubitOperator::zero(n_qubits);
        op.add_term(x_term, Complex64::new(0.5, 0.0));
        let sign = if create { -0.5 } else { 0.5 };
        op.add_term(y_term, Complex64::new(0.0, sign));
        op
    }

    /// Debug dump as `coefficient pauli-word` lines.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.terms() {
            out.push_str(&format!(
                "{:+.12e}{:+.12e}i {}\n",
                c.re,
                c.im,
                s.label(self.n_qubits)
            ));
        }
        out
    }
}

/// Jordan-Wigner transformation of the second-quantized Hamiltonian.
///
/// H = E_core + sum_pq h_pq a+_p a_q
///   + 1/2 sum_pqrs <pq|rs> a+_p a+_q a_s a_r  (spin orbitals).
pub fn jordan_wigner(h: &MolecularHamiltonian) -> QubitOperator {
    let n = h.n_spin_orbitals();
    let mut out = QubitOperator::zero(n);
    out.add_term(
        PauliString::IDENTITY,
        Complex64::new(h.core_energy, 0.0),
    );

    let create: Vec<QubitOperator> = (0..n).map(|p| QubitOperator::ladder(p, true, n)).collect();
    let annihilate: Vec<QubitOperator> =
        (0..n).map(|p| QubitOperator::ladder(p, false, n)).collect();

    for (p, create_p) in create.iter().enumerate() {
        for (q, annihilate_q) in annihilate.iter().enumerate() {
            let coeff = h.one_body_spin(p, q);
            if coeff.abs() < PRUNE_THRESHOLD {
                continue;
            }
            let mut term = create_p.multiply(annihilate_q);
            term.scale(Complex64::new(coeff, 0.0));
            out.add_assign(&term);
        }
    }

    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            for r in 0..n {
                for s in 0..n {
                    if r == s {
                        continue;
                    }
                    let coeff = 0.5 * h.coulomb_spin(p, q, r, s);
                    if coeff.abs() < PRUNE_THRESHOLD {
                        continue;
                    }
                    let term = create[p]
                        .multiply(&create[q])
                        .multiply(&annihilate[s])
                        .multiply(&annihilate[r]);
                    let mut term = term;
                    term.scale(Complex64::new(coeff, 0.0));
                    out.add_assign(&term);
                }
            }
        }
    }

    out.simplify();
    out
}

/// Apply the operator to a statevector: sum_l c_l P_l v.
pub fn apply(op: &QubitOperator, v: &StateVector) -> Result<StateVector> {
    if op.n_qubits != v.n_qubits {
        return Err(Error::Dimension(format!(
            "operator on {} qubits applied to {}-qubit state",
            op.n_qubits, v.n_qubits
        )));
    }
    let mut out = StateVector::zeroed(v.n_qubits);
    for (string, coeff) in op.terms() {
        for (idx, amp) in v.amplitudes.iter().enumerate() {
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            let (target, phase) = string.apply_to_basis(idx as u64);
            out.amplitudes[target as usize] += coeff * phase * amp;
        }
    }
    Ok(out)
}

/// Real expectation value <v|op|v> for a Hermitian operator.
pub fn expectation(op: &QubitOperator, v: &StateVector) -> Result<f64> {
    let w = apply(op, v)?;
    let value = v.inner(&w);
    if value.im.abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "expectation has imaginary part {:.3e}; operator is not Hermitian",
            value.im
        )));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Determinant;

    fn single_qubit(letter: char) -> PauliString {
        match letter {
            'I' => PauliString { x_mask: 0, z_mask: 0 },
            'X' => PauliString { x_mask: 1, z_mask: 0 },
            'Z' => PauliString { x_mask: 0, z_mask: 1 },
            'Y' => PauliString { x_mask: 1, z_mask: 1 },
            _ => unreachable!(),
        }
    }

    fn dense1(p: &PauliString) -> [[Complex64; 2]; 2] {
        let mut m = [[Complex64::ZERO; 2]; 2];
        for col in 0..2u64 {
            let (row, phase) = p.apply_to_basis(col);
            m[row as usize][col as usize] = phase;
        }
        m
    }

    #[test]
    fn single_qubit_products_match_dense_matrices() {
        let letters = ['I', 'X', 'Y', 'Z'];
        for &a in &letters {
            for &b in &letters {
                let pa = single_qubit(a);
                let pb = single_qubit(b);
                let (prod, phase) = pa.multiply(&pb);
                let ma = dense1(&pa);
                let mb = dense1(&pb);
                let mp = dense1(&prod);
                for r in 0..2 {
                    for c in 0..2 {
                        let direct: Complex64 =
                            (0..2).map(|k| ma[r][k] * mb[k][c]).sum();
                        let via = phase * mp[r][c];
                        assert!(
                            (direct - via).norm() < 1e-14,
                            "{a}{b}: ({r},{c}) {direct} vs {via}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn number_operator_is_half_one_minus_z() {
        let n = 1;
        let op = QubitOperator::ladder(0, true, n).multiply(&QubitOperator::ladder(0, false, n));
        let mut expected = QubitOperator::zero(n);
        expected.add_term(PauliString::IDENTITY, Complex64::new(0.5, 0.0));
        expected.add_term(
            PauliString { x_mask: 0, z_mask: 1 },
            Complex64::new(-0.5, 0.0),
        );
        let mut op = op;
        op.simplify();
        for (s, c) in expected.terms() {
            let got = op.terms().find(|(t, _)| *t == s).map(|(_, c)| *c).unwrap();
            assert!((got - c).norm() < 1e-14);
        }
        assert_eq!(op.len(), 2);
    }

    #[test]
    fn z_flips_sign_of_occupied_qubit() {
        let mut op = QubitOperator::zero(4);
        op.add_term(PauliString { x_mask: 0, z_mask: 1 }, Complex64::ONE);
        let v = StateVector::basis(4, Determinant(0b0001));
        let w = apply(&op, &v).unwrap();
        assert_eq!(w.amplitudes[1], -Complex64::ONE);
    }

    #[test]
    fn identity_apply_and_expectation() {
        let op = QubitOperator::identity(3);
        let v = StateVector::basis(3, Determinant(0b101));
        let w = apply(&op, &v).unwrap();
        assert_eq!(w, v);
        assert!((expectation(&op, &v).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let op = QubitOperator::identity(3);
        let v = StateVector::basis(4, Determinant(0));
        assert!(apply(&op, &v).is_err());
    }

    #[test]
    fn simplify_is_idempotent_for_the_l1_norm() {
        let mut op = QubitOperator::zero(2);
        op.add_term(PauliString { x_mask: 1, z_mask: 0 }, Complex64::new(0.25, 0.0));
        op.add_term(PauliString { x_mask: 0, z_mask: 3 }, Complex64::new(-1.5, 0.0));
        op.add_term(PauliString { x_mask: 2, z_mask: 2 }, Complex64::new(1e-15, 0.0));
        op.simplify();
        let first = op.coefficient_l1_norm();
        op.simplify();
        assert_eq!(first, op.coefficient_l1_norm());
    }
}
