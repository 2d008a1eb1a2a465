//! Generation and indexing of the full excitation-operator pool.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::ReferenceData;
use crate::state::Excitation;

/// Ordered pool of Sz-conserving particle-hole excitations up to a rank cap.
#[derive(Debug, Clone)]
pub struct OperatorPool {
    pub entries: Vec<Excitation>,
    pub rank_cap: usize,
    index: BTreeMap<Excitation, usize>,
}

impl OperatorPool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, exc: &Excitation) -> Option<usize> {
        self.index.get(exc).copied()
    }

    pub fn contains(&self, exc: &Excitation) -> bool {
        self.index.contains_key(exc)
    }

    /// JSON dump of (rank, holes, particles) triples for run manifests.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            rank: usize,
            holes: &'a [usize],
            particles: &'a [usize],
        }
        serde_json::to_value(
            self.entries
                .iter()
                .map(|e| Entry {
                    rank: e.rank(),
                    holes: &e.holes,
                    particles: &e.particles,
                })
                .collect::<Vec<_>>(),
        )
        .expect("pool serialization cannot fail")
    }
}

fn spin_count(indices: &[usize]) -> usize {
    indices.iter().filter(|&&i| i % 2 == 0).count()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            recurse(items, k, i + 1, current, out);
            current.pop();
        }
    }
    recurse(items, k, 0, &mut current, &mut out);
    out
}

/// Enumerate every Sz-conserving excitation with holes from the occupied and
/// particles from the virtual spin orbitals, ranks 1..=rank_cap. Ordering is
/// deterministic: by rank, then lexicographically by (holes, particles).
pub fn generate_pool(reference: &ReferenceData, rank_cap: usize) -> Result<OperatorPool> {
    if !(1..=4).contains(&rank_cap) {
        return Err(Error::InvalidConfig(format!(
            "rank_cap {} outside [1,4]",
            rank_cap
        )));
    }
    let mut entries = Vec::new();
    for rank in 1..=rank_cap {
        let hole_sets = combinations(&reference.occupied_spin_orbitals, rank);
        let particle_sets = combinations(&reference.virtual_spin_orbitals, rank);
        let mut at_rank = Vec::new();
        for holes in &hole_sets {
            for particles in &particle_sets {
                if spin_count(holes) != spin_count(particles) {
                    continue;
                }
                at_rank.push(Excitation::new(holes.clone(), particles.clone()));
            }
        }
        at_rank.sort();
        entries.extend(at_rank);
    }
    let index = entries
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    Ok(OperatorPool {
        entries,
        rank_cap,
        index,
    })
}

/// Pool entries not in `selected`, preserving pool order.
pub fn complement(pool: &OperatorPool, selected: &[Excitation]) -> Result<Vec<Excitation>> {
    for exc in selected {
        if !pool.contains(exc) {
            return Err(Error::PoolMembership(format!("{:?}", exc)));
        }
    }
    let selected_set: std::collections::BTreeSet<&Excitation> = selected.iter().collect();
    Ok(pool
        .entries
        .iter()
        .filter(|e| !selected_set.contains(e))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference(n_occ: usize, n_virt: usize) -> ReferenceData {
        ReferenceData {
            occupied_spin_orbitals: (0..n_occ).collect(),
            virtual_spin_orbitals: (n_occ..n_occ + n_virt).collect(),
            fock_diagonal: vec![0.0; n_occ + n_virt],
            hf_energy: 0.0,
        }
    }

    /// Brute-force enumeration over all index tuples, independent of the
    /// recursive generator.
    fn brute_force_count(reference: &ReferenceData, rank: usize) -> usize {
        let occ = &reference.occupied_spin_orbitals;
        let virt = &reference.virtual_spin_orbitals;
        let holes = combinations(occ, rank);
        let particles = combinations(virt, rank);
        holes
            .iter()
            .flat_map(|h| particles.iter().map(move |p| (h, p)))
            .filter(|(h, p)| spin_count(h) == spin_count(p))
            .count()
    }

    #[test]
    fn two_by_two_pool_matches_enumeration() {
        let r = reference(2, 2);
        let pool = generate_pool(&r, 2).unwrap();
        let expect: usize = (1..=2).map(|k| brute_force_count(&r, k)).sum();
        assert_eq!(pool.len(), expect);
        // 1 alpha + 1 beta occupied and virtual: 2 Sz-conserving singles
        assert_eq!(brute_force_count(&r, 1), 2);
        assert_eq!(brute_force_count(&r, 2), 1);
    }

    #[test]
    fn h4_sized_pool_counts() {
        // 4 occupied, 4 virtual spin orbitals (2 alpha + 2 beta each)
        let r = reference(4, 4);
        assert_eq!(brute_force_count(&r, 1), 8);
        assert_eq!(brute_force_count(&r, 2), 18);
        let pool = generate_pool(&r, 2).unwrap();
        assert_eq!(pool.len(), 26);
        let singles = pool.entries.iter().filter(|e| e.rank() == 1).count();
        let doubles = pool.entries.iter().filter(|e| e.rank() == 2).count();
        assert_eq!(singles, 8);
        assert_eq!(doubles, 18);
    }

    #[test]
    fn zero_virtuals_gives_empty_pool() {
        let r = reference(2, 0);
        let pool = generate_pool(&r, 1).unwrap();
        assert!(pool.is_empty());
    }

    #[test]
    fn rank_cap_out_of_range() {
        let r = reference(2, 2);
        assert!(generate_pool(&r, 0).is_err());
        assert!(generate_pool(&r, 5).is_err());
    }

    #[test]
    fn regeneration_is_deterministic() {
        let r = reference(4, 4);
        let a = generate_pool(&r, 3).unwrap();
        let b = generate_pool(&r, 3).unwrap();
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn complement_cases() {
        let r = reference(4, 4);
        let pool = generate_pool(&r, 2).unwrap();
        assert_eq!(complement(&pool, &[]).unwrap(), pool.entries);
        assert!(complement(&pool, &pool.entries).unwrap().is_empty());
        let half = pool.len() / 2;
        let rest = complement(&pool, &pool.entries[..half]).unwrap();
        assert_eq!(rest, pool.entries[half..].to_vec());
    }

    #[test]
    fn complement_rejects_foreign_excitation() {
        let r = reference(2, 2);
        let pool = generate_pool(&r, 1).unwrap();
        let foreign = Excitation::new(vec![0, 1], vec![2, 3]);
        assert!(complement(&pool, &[foreign]).is_err());
    }
}
