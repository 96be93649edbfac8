//! Shortest common supersequences of gate orderings.
//!
//! The best known fixed-order simulation of an `(N, p)`-switch queries as many
//! gates as there are symbols in a shortest common supersequence (SCS) of its
//! `p` orderings. Strings here are in application order, first-applied first;
//! since reversing every input reverses an SCS, lengths do not depend on the
//! convention, only witnesses do.

mod census;
mod oracle;
mod solver;
mod table;

pub use census::{census, census_sweep, write_csv, CensusMode, CensusRow, SweepPolicy};
pub use oracle::scs_brute_oracle;
pub use solver::{scs_exact, scs_greedy};
pub use table::ProfileTable;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::Permutation;

/// A common supersequence and its length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScsResult {
    pub length: usize,
    /// Gate indices in application order.
    pub witness: Vec<usize>,
}

/// `t` is a (not necessarily contiguous) subsequence of `s`.
pub fn is_supersequence(s: &[usize], t: &[usize]) -> bool {
    let mut it = s.iter();
    t.iter().all(|x| it.any(|y| y == x))
}

/// Queries per gate of a fixed-order simulation.
pub fn qpg(length: usize, n: usize) -> f64 {
    length as f64 / n as f64
}

/// Common length of a non-empty set of orderings.
pub(crate) fn common_length(perms: &[Permutation]) -> Result<usize> {
    let first = perms
        .first()
        .ok_or_else(|| Error::Domain("empty permutation set".into()))?;
    let n = first.len();
    if n == 0 {
        return Err(Error::Domain("permutations must be non-empty".into()));
    }
    if let Some(p) = perms.iter().find(|p| p.len() != n) {
        return Err(Error::InvalidPermutation(format!(
            "{p} has length {}, expected {n}",
            p.len()
        )));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsequence_test() {
        assert!(is_supersequence(&[0, 1, 2], &[0, 2]));
        assert!(!is_supersequence(&[0, 1, 2], &[2, 0]));
        assert!(is_supersequence(&[0, 1, 2], &[]));
        assert!(!is_supersequence(&[], &[0]));
        assert!(is_supersequence(&[1, 0, 1], &[0, 1]));
    }

    #[test]
    fn shift_family_witness_from_the_text() {
        // U_3U_2U_1U_0U_3U_2U_1 read in application order
        let witness = [1, 2, 3, 0, 1, 2, 3];
        let shifts = crate::promise::shift_permutations(4, 4).unwrap();
        assert!(shifts.perms().iter().all(|t| is_supersequence(&witness, t.as_slice())));
    }

    #[test]
    fn mixed_lengths_rejected() {
        let perms = vec![Permutation::identity(2), Permutation::identity(3)];
        assert!(matches!(common_length(&perms), Err(Error::InvalidPermutation(_))));
        assert!(matches!(common_length(&[]), Err(Error::Domain(_))));
    }
}
