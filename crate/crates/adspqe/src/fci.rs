//! Exact ground-state energies in the particle-number/Sz sector.
//!
//! The sector Hamiltonian is projected from the same Jordan-Wigner operator
//! used by the simulator, so the oracle shares no convention-sensitive code
//! with the fermionic statevector path beyond the operator itself. Dense
//! diagonalization is used below dimension 4096, a Lanczos iteration above.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{hf_reference, MolecularHamiltonian};
use crate::pauli::{self, jordan_wigner, QubitOperator};
use crate::state::{Determinant, StateVector};

const DENSE_LIMIT: usize = 4096;
const LANCZOS_TOLERANCE: f64 = 1e-10;
const LANCZOS_MAX_ITERATIONS: usize = 500;

/// Determinants of a fixed (n_alpha, n_beta) sector with an index map.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub determinants: Vec<Determinant>,
    pub n_qubits: usize,
    index: std::collections::HashMap<u64, usize>,
}

impl SectorBasis {
    /// Enumerate all determinants with the given alpha/beta occupations.
    /// Alpha spin orbitals are the even qubits, beta the odd.
    pub fn build(n_qubits: usize, n_alpha: u32, n_beta: u32) -> SectorBasis {
        let alpha_mask: u64 = (0..n_qubits as u64).filter(|q| q % 2 == 0).map(|q| 1 << q).sum();
        let mut determinants = Vec::new();
        for bits in 0u64..(1 << n_qubits) {
            let a = (bits & alpha_mask).count_ones();
            let b = (bits & !alpha_mask & ((1u64 << n_qubits) - 1)).count_ones();
            if a == n_alpha && b == n_beta {
                determinants.push(Determinant(bits));
            }
        }
        let index = determinants
            .iter()
            .enumerate()
            .map(|(i, d)| (d.0, i))
            .collect();
        SectorBasis {
            determinants,
            n_qubits,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.determinants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.determinants.is_empty()
    }

    pub fn position(&self, d: Determinant) -> Option<usize> {
        self.index.get(&d.0).copied()
    }
}

/// The sector-restricted Hamiltonian as a dense real symmetric matrix.
pub fn sector_matrix(op: &QubitOperator, basis: &SectorBasis) -> Result<DMatrix<f64>> {
    let dim = basis.len();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for (col, det) in basis.determinants.iter().enumerate() {
        for (string, coeff) in op.terms() {
            let (target, phase) = string.apply_to_basis(det.0);
            if let Some(row) = basis.position(Determinant(target)) {
                let value: Complex64 = coeff * phase;
                if value.im.abs() > 1e-12 {
                    return Err(Error::Numerical(format!(
                        "sector matrix element ({row},{col}) has imaginary part {:.3e}",
                        value.im
                    )));
                }
                m[(row, col)] += value.re;
            }
        }
    }
    Ok(m)
}

/// Lowest eigenvalue and ground vector of the molecular Hamiltonian in its
/// (n_electrons, sz2) sector. The returned energy includes the core energy
/// (it is carried by the identity term of the Jordan-Wigner operator).
pub fn fci_ground_energy(mol: &MolecularHamiltonian) -> Result<(f64, StateVector)> {
    let reference = hf_reference(mol)?;
    let op = jordan_wigner(mol);
    fci_ground_energy_with(&op, mol, reference.determinant())
}

/// Same as [`fci_ground_energy`] but reusing a pre-built operator.
pub fn fci_ground_energy_with(
    op: &QubitOperator,
    mol: &MolecularHamiltonian,
    reference_determinant: Determinant,
) -> Result<(f64, StateVector)> {
    let n_qubits = mol.n_spin_orbitals();
    let ne = mol.n_electrons as i32;
    let n_alpha = ((ne + mol.sz2) / 2) as u32;
    let n_beta = ((ne - mol.sz2) / 2) as u32;
    let basis = SectorBasis::build(n_qubits, n_alpha, n_beta);
    if basis.len() > 1 << 20 {
        return Err(Error::InvalidConfig(format!(
            "sector dimension {} exceeds the desk-scale guard",
            basis.len()
        )));
    }

    let (energy, vector) = if basis.len() <= DENSE_LIMIT {
        dense_ground_state(op, &basis)?
    } else {
        lanczos_ground_state(op, &basis, reference_determinant)?
    };

    // eigenpair check
    let hv = pauli::apply(op, &vector)?;
    let mut residual = 0.0f64;
    for i in 0..hv.amplitudes.len() {
        residual += (hv.amplitudes[i] - energy * vector.amplitudes[i]).norm_sqr();
    }
    let residual = residual.sqrt();
    if residual > 1e-7 {
        return Err(Error::EigensolverNonConvergence { residual });
    }
    Ok((energy, vector))
}

fn dense_ground_state(
    op: &QubitOperator,
    basis: &SectorBasis,
) -> Result<(f64, StateVector)> {
    let m = sector_matrix(op, basis)?;
    let eig = m.symmetric_eigen();
    let mut lowest = 0;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[lowest] {
            lowest = i;
        }
    }
    let energy = eig.eigenvalues[lowest];
    let mut vector = StateVector::zeroed(basis.n_qubits);
    for (i, det) in basis.determinants.iter().enumerate() {
        vector.amplitudes[det.0 as usize] = Complex64::new(eig.eigenvectors[(i, lowest)], 0.0);
    }
    Ok((energy, vector))
}

/// Lanczos with full reorthogonalization, matrix-free over the statevector.
/// The Krylov space stays inside the sector because the Hamiltonian
/// conserves particle number and Sz.
pub fn lanczos_ground_state(
    op: &QubitOperator,
    basis: &SectorBasis,
    start: Determinant,
) -> Result<(f64, StateVector)> {
    let n_qubits = basis.n_qubits;
    let mut vectors: Vec<StateVector> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let mut v = StateVector::basis(n_qubits, start);
    let mut previous_energy = f64::INFINITY;

    for _ in 0..LANCZOS_MAX_ITERATIONS {
        vectors.push(v.clone());
        let mut w = pauli::apply(op, &v)?;
        // full reorthogonalization
        for u in &vectors {
            let overlap = u.inner(&w);
            for i in 0..w.amplitudes.len() {
                w.amplitudes[i] -= overlap * u.amplitudes[i];
            }
        }
        let alpha = vectors.last().unwrap().inner(&pauli::apply(op, vectors.last().unwrap())?);
        alphas.push(alpha.re);
        let beta = w.norm();

        // tridiagonal eigenvalue via dense solve on the small Krylov matrix
        let k = alphas.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = t.symmetric_eigen();
        let mut lowest = 0;
        for i in 1..k {
            if eig.eigenvalues[i] < eig.eigenvalues[lowest] {
                lowest = i;
            }
        }
        let energy = eig.eigenvalues[lowest];

        let converged = (previous_energy - energy).abs() < LANCZOS_TOLERANCE;
        if converged || beta < 1e-14 || k == basis.len() {
            let mut ground = StateVector::zeroed(n_qubits);
            for (i, u) in vectors.iter().enumerate() {
                let c = eig.eigenvectors[(i, lowest)];
                for j in 0..ground.amplitudes.len() {
                    ground.amplitudes[j] += c * u.amplitudes[j];
                }
            }
            let norm = ground.norm();
            for a in &mut ground.amplitudes {
                *a /= norm;
            }
            return Ok((energy, ground));
        }
        previous_energy = energy;
        betas.push(beta);
        for a in &mut w.amplitudes {
            *a /= beta;
        }
        v = w;
    }
    Err(Error::EigensolverNonConvergence { residual: f64::NAN })
}
