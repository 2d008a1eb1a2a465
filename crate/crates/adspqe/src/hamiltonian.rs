//! FCIDUMP ingestion, Hartree-Fock reference data and Moller-Plesset
//! denominators.
//!
//! Spin orbitals are interleaved: spin orbital `2p` is spatial orbital `p`
//! alpha, `2p+1` is spatial `p` beta. FCIDUMP indices are 1-based on disk
//! and 0-based everywhere in memory.

use crate::error::{Error, Result};
use crate::state::Excitation;

/// Level-shift floor for Moller-Plesset denominators (hartree). Quasi-Newton
/// updates divide by the denominator, which is singular at strong degeneracy.
pub const DENOMINATOR_FLOOR: f64 = 1e-6;

/// Second-quantized molecular Hamiltonian in a spatial-orbital basis.
///
/// Two-electron integrals are stored in chemists' notation `(pq|rs)` with the
/// full 8-fold permutational symmetry expanded into a dense 4-index table.
#[derive(Debug, Clone)]
pub struct MolecularHamiltonian {
    pub n_spatial: usize,
    pub n_electrons: usize,
    /// Twice the spin projection.
    pub sz2: i32,
    pub core_energy: f64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
}

impl MolecularHamiltonian {
    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_spatial
    }

    /// One-electron integral h_pq over spatial orbitals.
    pub fn one_body(&self, p: usize, q: usize) -> f64 {
        self.one_body[p * self.n_spatial + q]
    }

    /// Chemists'-notation two-electron integral (pq|rs) over spatial orbitals.
    pub fn two_body(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_spatial;
        self.two_body[((p * n + q) * n + r) * n + s]
    }

    /// One-electron integral between spin orbitals (zero unless spins match).
    pub fn one_body_spin(&self, p: usize, q: usize) -> f64 {
        if p % 2 == q % 2 {
            self.one_body(p / 2, q / 2)
        } else {
            0.0
        }
    }

    /// Non-antisymmetrized physicists' integral <pq|rs> over spin orbitals.
    pub fn coulomb_spin(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        if p % 2 == r % 2 && q % 2 == s % 2 {
            self.two_body(p / 2, r / 2, q / 2, s / 2)
        } else {
            0.0
        }
    }

    /// Antisymmetrized integral <pq||rs> = <pq|rs> - <pq|sr> over spin orbitals.
    pub fn antisym_spin(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.coulomb_spin(p, q, r, s) - self.coulomb_spin(p, q, s, r)
    }
}

/// Aufbau reference determinant data: occupation lists, Fock diagonal and the
/// Hartree-Fock energy.
#[derive(Debug, Clone)]
pub struct ReferenceData {
    pub occupied_spin_orbitals: Vec<usize>,
    pub virtual_spin_orbitals: Vec<usize>,
    /// Orbital energy per spin orbital, epsilon_p = h_pp + sum_j <pj||pj>.
    pub fock_diagonal: Vec<f64>,
    pub hf_energy: f64,
}

impl ReferenceData {
    /// The Hartree-Fock determinant as an occupation bitmask.
    pub fn determinant(&self) -> crate::state::Determinant {
        let mut bits = 0u64;
        for &p in &self.occupied_spin_orbitals {
            bits |= 1 << p;
        }
        crate::state::Determinant(bits)
    }
}

/// A Moller-Plesset denominator, possibly clamped at the level-shift floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Denominator {
    pub value: f64,
    pub clamped: bool,
}

/// Parse an FCIDUMP character stream.
///
/// The namelist header must define NORB, NELEC and MS2. Records are
/// `value i j k l` with 1-based indices; `i=j=k=l=0` holds the core energy,
/// `k=l=0` the one-body integrals, and the rest the two-body integrals in
/// chemists' notation, expanded to their 8 permutations on read.
pub fn parse_fcidump(text: &str) -> Result<MolecularHamiltonian> {
    let mut header = String::new();
    let mut body_start = 0usize;
    let mut lines = text.lines().enumerate();
    let mut saw_end = false;
    for (lineno, line) in &mut lines {
        header.push_str(line);
        header.push(' ');
        let upper = line.to_uppercase();
        if upper.contains("&END") || upper.trim_start().starts_with('/') {
            body_start = lineno + 1;
            saw_end = true;
            break;
        }
    }
    if !saw_end {
        return Err(Error::Parse {
            line: 1,
            msg: "missing &END / terminator in namelist header".into(),
        });
    }

    let norb = header_value(&header, "NORB").ok_or_else(|| Error::Parse {
        line: 1,
        msg: "NORB missing from header".into(),
    })?;
    let nelec = header_value(&header, "NELEC").ok_or_else(|| Error::Parse {
        line: 1,
        msg: "NELEC missing from header".into(),
    })?;
    let ms2 = header_value(&header, "MS2").ok_or_else(|| Error::Parse {
        line: 1,
        msg: "MS2 missing from header".into(),
    })? as i32;

    let n = norb as usize;
    if nelec as usize > 2 * n {
        return Err(Error::Parse {
            line: 1,
            msg: format!("NELEC={} exceeds 2*NORB={}", nelec, 2 * n),
        });
    }

    let mut one_body = vec![0.0; n * n];
    let mut one_set = vec![false; n * n];
    let mut two_body = vec![0.0; n * n * n * n];
    let mut two_set = vec![false; n * n * n * n];
    let mut core_energy = 0.0;

    for (lineno, line) in text.lines().enumerate().skip(body_start) {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `value i j k l`, got {} fields", parts.len()),
            });
        }
        let value: f64 = parts[0].replace(['D', 'd'], "E").parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            msg: format!("bad value `{}`", parts[0]),
        })?;
        let idx: Vec<i64> = parts[1..]
            .iter()
            .map(|s| {
                s.parse::<i64>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad index `{}`", s),
                })
            })
            .collect::<Result<_>>()?;
        for &i in &idx {
            if i < 0 || i > norb {
                return Err(Error::Range {
                    line: lineno + 1,
                    msg: format!("index {} outside [0, {}]", i, norb),
                });
            }
        }
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        if i == 0 && j == 0 && k == 0 && l == 0 {
            core_energy = value;
        } else if k == 0 && l == 0 {
            if i == 0 || j == 0 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: "one-body record with a zero orbital index".into(),
                });
            }
            let (p, q) = ((i - 1) as usize, (j - 1) as usize);
            for (a, b) in [(p, q), (q, p)] {
                let slot = a * n + b;
                if one_set[slot] && (one_body[slot] - value).abs() > 1e-10 {
                    return Err(Error::Consistency {
                        line: lineno + 1,
                        msg: format!("h[{},{}] already set to {}", a, b, one_body[slot]),
                    });
                }
                one_body[slot] = value;
                one_set[slot] = true;
            }
        } else {
            if i == 0 || j == 0 || k == 0 || l == 0 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: "two-body record with a zero orbital index".into(),
                });
            }
            let (p, q, r, s) = (
                (i - 1) as usize,
                (j - 1) as usize,
                (k - 1) as usize,
                (l - 1) as usize,
            );
            // 8-fold symmetry of real chemists'-notation integrals
            for (a, b, c, d) in [
                (p, q, r, s),
                (q, p, r, s),
                (p, q, s, r),
                (q, p, s, r),
                (r, s, p, q),
                (s, r, p, q),
                (r, s, q, p),
                (s, r, q, p),
            ] {
                let slot = ((a * n + b) * n + c) * n + d;
                if two_set[slot] && (two_body[slot] - value).abs() > 1e-10 {
                    return Err(Error::Consistency {
                        line: lineno + 1,
                        msg: format!(
                            "({}{}|{}{}) already set to {}",
                            a, b, c, d, two_body[slot]
                        ),
                    });
                }
                two_body[slot] = value;
                two_set[slot] = true;
            }
        }
    }

    Ok(MolecularHamiltonian {
        n_spatial: n,
        n_electrons: nelec as usize,
        sz2: ms2,
        core_energy,
        one_body,
        two_body,
    })
}

fn header_value(header: &str, key: &str) -> Option<i64> {
    let upper = header.to_uppercase();
    let pos = upper.find(key)?;
    let rest = &upper[pos + key.len()..];
    let rest = rest.trim_start().strip_prefix('=')?.trim_start();
    let end = rest
        .find(|c: char| !(c.is_ascii_digit() || c == '-' || c == '+'))
        .unwrap_or(rest.len());
    rest[..end].parse().ok()
}

/// Build aufbau reference data: occupation, spin-orbital Fock diagonal and
/// the Hartree-Fock energy.
pub fn hf_reference(h: &MolecularHamiltonian) -> Result<ReferenceData> {
    let n_so = h.n_spin_orbitals();
    let ne = h.n_electrons as i32;
    if (ne + h.sz2) % 2 != 0 || ne + h.sz2 < 0 || ne - h.sz2 < 0 {
        return Err(Error::Configuration(format!(
            "n_electrons={} incompatible with sz2={}",
            h.n_electrons, h.sz2
        )));
    }
    let n_alpha = ((ne + h.sz2) / 2) as usize;
    let n_beta = ((ne - h.sz2) / 2) as usize;
    if n_alpha > h.n_spatial || n_beta > h.n_spatial {
        return Err(Error::Configuration(format!(
            "occupation ({} alpha, {} beta) exceeds {} spatial orbitals",
            n_alpha, n_beta, h.n_spatial
        )));
    }

    let mut occupied: Vec<usize> = (0..n_alpha)
        .map(|p| 2 * p)
        .chain((0..n_beta).map(|p| 2 * p + 1))
        .collect();
    occupied.sort_unstable();
    let occ_set: Vec<bool> = {
        let mut v = vec![false; n_so];
        for &p in &occupied {
            v[p] = true;
        }
        v
    };
    let virtuals: Vec<usize> = (0..n_so).filter(|&p| !occ_set[p]).collect();

    let fock_diagonal: Vec<f64> = (0..n_so)
        .map(|p| {
            occupied
                .iter()
                .fold(h.one_body_spin(p, p), |eps, &j| eps + h.antisym_spin(p, j, p, j))
        })
        .collect();

    let mut hf_energy = h.core_energy;
    for &i in &occupied {
        hf_energy += h.one_body_spin(i, i);
    }
    for &i in &occupied {
        for &j in &occupied {
            hf_energy += 0.5 * h.antisym_spin(i, j, i, j);
        }
    }

    Ok(ReferenceData {
        occupied_spin_orbitals: occupied,
        virtual_spin_orbitals: virtuals,
        fock_diagonal,
        hf_energy,
    })
}

/// Moller-Plesset denominator D = sum eps_holes - sum eps_particles, clamped
/// to the level-shift floor near degeneracy.
pub fn mp_denominator(exc: &Excitation, reference: &ReferenceData) -> Denominator {
    let mut d = 0.0;
    for &i in &exc.holes {
        d += reference.fock_diagonal[i];
    }
    for &a in &exc.particles {
        d -= reference.fock_diagonal[a];
    }
    if d.abs() < DENOMINATOR_FLOOR {
        let sign = if d > 0.0 { 1.0 } else { -1.0 };
        Denominator {
            value: sign * DENOMINATOR_FLOOR,
            clamped: true,
        }
    } else {
        Denominator {
            value: d,
            clamped: false,
        }
    }
}
