//! Residual evaluation by two independent pathways and the PQE
//! micro-iteration optimizer.
//!
//! The direct path builds U|phi0>, applies H, undoes U and projects onto the
//! excited determinant. The diagonal path combines the three diagonal
//! expectation values of the similarity-transformed Hamiltonian:
//! r = <Omega(pi/4)|Hbar|Omega(pi/4)> - E_mu/2 - E_0/2.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{mp_denominator, ReferenceData};
use crate::pauli::{self, QubitOperator};
use crate::state::{
    apply_ansatz, apply_ansatz_dagger, apply_exp_kappa, apply_tau, AnsatzLayer, Excitation,
    StateVector,
};

const IMAG_TOLERANCE: f64 = 1e-8;

/// Residuals over a set of excitations, with the generating parameters.
#[derive(Debug, Clone)]
pub struct ResidualVector {
    pub entries: Vec<(Excitation, f64)>,
    pub theta_snapshot: Vec<f64>,
}

impl ResidualVector {
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, r)| r.abs())
            .fold(0.0, f64::max)
    }

    pub fn get(&self, exc: &Excitation) -> Option<f64> {
        self.entries
            .iter()
            .find(|(e, _)| e == exc)
            .map(|(_, r)| *r)
    }
}

/// Micro-iteration settings.
#[derive(Debug, Clone)]
pub struct MicroIterConfig {
    /// Max-norm convergence threshold on the active residuals (hartree).
    pub residual_tolerance: f64,
    pub max_iterations: usize,
    /// Update damping in (0, 1]; 1 reproduces the plain quasi-Newton step.
    pub damping: f64,
}

impl Default for MicroIterConfig {
    fn default() -> Self {
        MicroIterConfig {
            residual_tolerance: 1e-5,
            max_iterations: 2000,
            damping: 1.0,
        }
    }
}

/// One recorded sweep of the optimizer.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub sweep: usize,
    pub max_residual: f64,
    pub energy: f64,
}

/// Result of a micro-iteration run.
#[derive(Debug, Clone)]
pub struct MicroIterOutcome {
    pub layers: Vec<AnsatzLayer>,
    pub history: Vec<SweepRecord>,
    pub sweeps: usize,
    pub converged: bool,
    /// Accumulated residual-element evaluations (sweeps x active set size).
    pub residual_evaluations: usize,
}

fn real_part(value: Complex64, context: &str) -> Result<f64> {
    if value.im.abs() > IMAG_TOLERANCE {
        return Err(Error::Numerical(format!(
            "{} has imaginary part {:.3e}",
            context, value.im
        )));
    }
    Ok(value.re)
}

/// The transformed reference z = U^dag H U |phi0>, from which every residual
/// is a single projection.
pub fn transformed_reference(
    layers: &[AnsatzLayer],
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<StateVector> {
    let phi0 = StateVector::basis(hamiltonian.n_qubits, reference.determinant());
    let correlated = apply_ansatz(layers, &phi0);
    let h_applied = pauli::apply(hamiltonian, &correlated)?;
    Ok(apply_ansatz_dagger(layers, &h_applied))
}

fn project_residual(
    z: &StateVector,
    exc: &Excitation,
    reference: &ReferenceData,
) -> Result<f64> {
    let (det, sign) = apply_tau(exc, reference.determinant()).ok_or_else(|| {
        Error::Numerical(format!("excitation {:?} is not reference-connected", exc))
    })?;
    let amp = crate::state::project(det, z) * sign as f64;
    real_part(amp, "residual projection")
}

/// r_mu = <phi_mu| U^dag H U |phi0> by explicit construction.
pub fn residual_direct(
    layers: &[AnsatzLayer],
    exc: &Excitation,
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<f64> {
    let z = transformed_reference(layers, hamiltonian, reference)?;
    project_residual(&z, exc, reference)
}

/// All residuals for `excitations` from a single transformed reference.
pub fn residuals_batch(
    layers: &[AnsatzLayer],
    excitations: &[Excitation],
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<ResidualVector> {
    let z = transformed_reference(layers, hamiltonian, reference)?;
    let mut entries = Vec::with_capacity(excitations.len());
    for exc in excitations {
        entries.push((exc.clone(), project_residual(&z, exc, reference)?));
    }
    Ok(ResidualVector {
        entries,
        theta_snapshot: layers.iter().map(|l| l.theta).collect(),
    })
}

/// The same residual through the sum-of-diagonal-expectations identity.
pub fn residual_diagonal_form(
    layers: &[AnsatzLayer],
    exc: &Excitation,
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<f64> {
    let n = hamiltonian.n_qubits;
    let phi0 = StateVector::basis(n, reference.determinant());
    let (det_mu, _) = apply_tau(exc, reference.determinant()).ok_or_else(|| {
        Error::Numerical(format!("excitation {:?} is not reference-connected", exc))
    })?;
    let phi_mu = StateVector::basis(n, det_mu);

    let omega = apply_exp_kappa(
        &AnsatzLayer {
            excitation: exc.clone(),
            theta: std::f64::consts::FRAC_PI_4,
        },
        &phi0,
    );

    // <v|Hbar|v> = <Uv|H|Uv>
    let hbar_expectation = |v: &StateVector| -> Result<f64> {
        let uv = apply_ansatz(layers, v);
        pauli::expectation(hamiltonian, &uv)
    };

    let omega_term = hbar_expectation(&omega)?;
    let e_mu = hbar_expectation(&phi_mu)?;
    let e_0 = hbar_expectation(&phi0)?;
    Ok(omega_term - 0.5 * e_mu - 0.5 * e_0)
}

/// Energy <phi0| U^dag H U |phi0> of the current ansatz.
pub fn ansatz_energy(
    layers: &[AnsatzLayer],
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
) -> Result<f64> {
    let phi0 = StateVector::basis(hamiltonian.n_qubits, reference.determinant());
    let correlated = apply_ansatz(layers, &phi0);
    pauli::expectation(hamiltonian, &correlated)
}

/// Jacobi-style simultaneous quasi-Newton updates
/// theta <- theta + damping * r / D until max|r| over the active set drops
/// below the tolerance. If max|r| grows for 5 consecutive sweeps the damping
/// is halved once and iteration continues.
pub fn micro_iterate(
    mut layers: Vec<AnsatzLayer>,
    active: &[usize],
    hamiltonian: &QubitOperator,
    reference: &ReferenceData,
    cfg: &MicroIterConfig,
) -> Result<MicroIterOutcome> {
    if cfg.residual_tolerance <= 0.0 {
        return Err(Error::InvalidConfig("residual_tolerance must be > 0".into()));
    }
    let denominators: Vec<f64> = active
        .iter()
        .map(|&i| mp_denominator(&layers[i].excitation, reference).value)
        .collect();
    let active_excitations: Vec<Excitation> = active
        .iter()
        .map(|&i| layers[i].excitation.clone())
        .collect();

    let mut damping = cfg.damping;
    let mut history = Vec::new();
    let mut sweeps = 0usize;
    let mut residual_evaluations = 0usize;
    let mut converged = false;
    let mut previous_max = f64::INFINITY;
    let mut growth_streak = 0usize;
    let mut damping_halved = false;

    for sweep in 0..=cfg.max_iterations {
        let residuals = residuals_batch(&layers, &active_excitations, hamiltonian, reference)?;
        residual_evaluations += active.len();
        let max_r = residuals.max_abs();
        if max_r.is_nan() {
            return Err(Error::Numerical("NaN residual in micro-iteration".into()));
        }
        let energy = ansatz_energy(&layers, hamiltonian, reference)?;
        history.push(SweepRecord {
            sweep,
            max_residual: max_r,
            energy,
        });
        if max_r < cfg.residual_tolerance {
            converged = true;
            break;
        }
        if sweep == cfg.max_iterations {
            break;
        }

        if max_r > previous_max {
            growth_streak += 1;
            if growth_streak >= 5 && !damping_halved {
                damping *= 0.5;
                damping_halved = true;
                growth_streak = 0;
            }
        } else {
            growth_streak = 0;
        }
        previous_max = max_r;

        for (slot, &layer_idx) in active.iter().enumerate() {
            let r = residuals.entries[slot].1;
            layers[layer_idx].theta += damping * r / denominators[slot];
        }
        sweeps += 1;
    }

    Ok(MicroIterOutcome {
        layers,
        history,
        sweeps,
        converged,
        residual_evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{hf_reference, parse_fcidump};
    use crate::pauli::jordan_wigner;

    fn h2() -> (QubitOperator, ReferenceData) {
        let text = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/tests/fixtures/h2_sto3g_0.735.fcidump"
        ))
        .unwrap();
        let h = parse_fcidump(&text).unwrap();
        let reference = hf_reference(&h).unwrap();
        (jordan_wigner(&h), reference)
    }

    #[test]
    fn brillouin_zeroes_single_residuals_at_theta_zero() {
        let (ham, reference) = h2();
        for (&i, &a) in reference
            .occupied_spin_orbitals
            .iter()
            .zip(&reference.virtual_spin_orbitals)
        {
            let exc = Excitation::new(vec![i], vec![a]);
            let r = residual_direct(&[], &exc, &ham, &reference).unwrap();
            assert!(r.abs() < 1e-8, "Brillouin violated: r = {r:.3e}");
        }
    }

    #[test]
    fn double_residual_at_theta_zero_is_the_antisymmetrized_integral() {
        let text = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/tests/fixtures/h2_sto3g_0.735.fcidump"
        ))
        .unwrap();
        let h = parse_fcidump(&text).unwrap();
        let reference = hf_reference(&h).unwrap();
        let ham = jordan_wigner(&h);
        let exc = Excitation::new(vec![0, 1], vec![2, 3]);
        let r = residual_direct(&[], &exc, &ham, &reference).unwrap();
        // <phi_ab..ij| H |phi0> = <ab||ij> up to the tau sign convention
        let integral = h.antisym_spin(2, 3, 0, 1);
        assert!(
            (r.abs() - integral.abs()).abs() < 1e-10,
            "r = {r:.12e}, <ab||ij> = {integral:.12e}"
        );
    }

    #[test]
    fn already_converged_input_takes_no_sweeps() {
        let (ham, reference) = h2();
        let exc = Excitation::new(vec![0, 1], vec![2, 3]);
        let layers = vec![AnsatzLayer {
            excitation: exc,
            theta: 0.0,
        }];
        let cfg = MicroIterConfig::default();
        let first = micro_iterate(layers, &[0], &ham, &reference, &cfg).unwrap();
        assert!(first.converged);
        let again = micro_iterate(first.layers.clone(), &[0], &ham, &reference, &cfg).unwrap();
        assert!(again.converged);
        assert_eq!(again.sweeps, 0);
        assert_eq!(again.layers, first.layers);
    }

    #[test]
    fn h2_doubles_only_pqe_reaches_fci() {
        let (ham, reference) = h2();
        let exc = Excitation::new(vec![0, 1], vec![2, 3]);
        let layers = vec![AnsatzLayer {
            excitation: exc,
            theta: 0.0,
        }];
        let cfg = MicroIterConfig::default();
        let outcome = micro_iterate(layers, &[0], &ham, &reference, &cfg).unwrap();
        assert!(outcome.converged);
        let energy = ansatz_energy(&outcome.layers, &ham, &reference).unwrap();
        // frozen value from the independent determinant-basis FCI oracle
        let e_fci = -1.137306035753;
        assert!(
            (energy - e_fci).abs() < 1e-8,
            "E = {energy:.12}, FCI = {e_fci:.12}"
        );
    }

    #[test]
    fn undamped_update_matches_the_plain_formula() {
        let (ham, reference) = h2();
        let exc = Excitation::new(vec![0, 1], vec![2, 3]);
        let layers = vec![AnsatzLayer {
            excitation: exc.clone(),
            theta: 0.0,
        }];
        let r0 = residual_direct(&layers, &exc, &ham, &reference).unwrap();
        let d = mp_denominator(&exc, &reference).value;
        let cfg = MicroIterConfig {
            max_iterations: 1,
            ..MicroIterConfig::default()
        };
        let outcome = micro_iterate(layers, &[0], &ham, &reference, &cfg).unwrap();
        assert!((outcome.layers[0].theta - r0 / d).abs() < 1e-14);
    }
}
