use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gate::Permutation;

/// Largest `N` for which the full table fits (`2^{N!}` entries).
pub const TABLE_MAX_N: usize = 4;

/// SCS lengths of every subset of `S_N`, for small `N`.
///
/// Built from one breadth-first pass over the frontier automaton of all `N!`
/// orderings at once: a string of length `L` reaching a frontier in which the
/// orderings of `mask` are complete is a supersequence of `mask`, so the SCS
/// of a subset is the minimum over all supersets of `mask` of the shortest
/// distance at which exactly that completion set appears.
pub struct ProfileTable {
    n: usize,
    perms: Vec<Permutation>,
    best: Vec<u8>,
}

static TABLES: [OnceLock<ProfileTable>; TABLE_MAX_N + 1] =
    [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];

impl ProfileTable {
    /// Shared table for `S_n`, built on first use.
    pub fn get(n: usize) -> Result<&'static ProfileTable> {
        if n == 0 || n > TABLE_MAX_N {
            return Err(Error::LimitExceeded(format!(
                "profile tables exist for 1 ≤ N ≤ {TABLE_MAX_N}, got {n}"
            )));
        }
        Ok(TABLES[n].get_or_init(|| ProfileTable::build(n)))
    }

    fn build(n: usize) -> ProfileTable {
        let perms = Permutation::all(n);
        let m = perms.len();
        let full = n as u8;
        let complete_mask = |s: &[u8]| {
            s.iter()
                .enumerate()
                .filter(|(_, &k)| k == full)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        };

        let mut best = vec![u8::MAX; 1usize << m];
        let start = vec![0u8; m];
        let mut dist: HashMap<Vec<u8>, u8> = HashMap::from([(start.clone(), 0)]);
        best[0] = 0;
        let mut layer = vec![start];
        let mut depth = 0u8;
        while !layer.is_empty() {
            depth += 1;
            let mut next_layer = Vec::new();
            for s in &layer {
                for symbol in 0..n {
                    let next: Vec<u8> = perms
                        .iter()
                        .zip(s)
                        .map(|(t, &k)| k + u8::from(t.as_slice().get(k as usize) == Some(&symbol)))
                        .collect();
                    if dist.contains_key(&next) {
                        continue;
                    }
                    let mask = complete_mask(&next) as usize;
                    best[mask] = best[mask].min(depth);
                    dist.insert(next.clone(), depth);
                    next_layer.push(next);
                }
            }
            layer = next_layer;
        }

        // superset minimum
        for bit in 0..m {
            let b = 1usize << bit;
            for mask in 0..best.len() {
                if mask & b == 0 {
                    best[mask] = best[mask].min(best[mask | b]);
                }
            }
        }
        ProfileTable { n, perms, best }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S_N` in lexicographic order; bit `i` of a mask selects `perms()[i]`.
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// SCS length of the subset selected by `mask` (0 for the empty set).
    pub fn scs_len(&self, mask: u32) -> usize {
        self.best[mask as usize] as usize
    }

    pub fn mask_of(&self, perms: &[Permutation]) -> Result<u32> {
        perms.iter().try_fold(0u32, |acc, p| {
            let i = self
                .perms
                .binary_search(p)
                .map_err(|_| Error::InvalidPermutation(format!("{p} is not in S_{}", self.n)))?;
            Ok(acc | (1 << i))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scs::scs_exact;

    #[test]
    fn s3_matches_solver_everywhere() {
        let t = ProfileTable::get(3).unwrap();
        for mask in 1u32..64 {
            let subset: Vec<Permutation> = (0..6)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| t.perms()[i].clone())
                .collect();
            assert_eq!(t.scs_len(mask), scs_exact(&subset, 6).unwrap().length, "mask {mask:b}");
        }
    }

    #[test]
    fn full_sets() {
        assert_eq!(ProfileTable::get(1).unwrap().scs_len(1), 1);
        assert_eq!(ProfileTable::get(2).unwrap().scs_len(0b11), 3);
        assert_eq!(ProfileTable::get(3).unwrap().scs_len(0b111111), 7);
        assert!(ProfileTable::get(5).is_err());
    }
}
