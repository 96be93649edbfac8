use std::collections::HashSet;

use super::{common_length, ScsResult};
use crate::error::{Error, Result};
use crate::gate::Permutation;

// A search state records, per ordering, how many of its symbols are already
// matched. Emitting a symbol advances every ordering whose next symbol it is.
type Frontier = Box<[u8]>;

fn advance(perms: &[&[usize]], state: &[u8], symbol: usize) -> Option<Frontier> {
    let mut moved = false;
    let next: Frontier = perms
        .iter()
        .zip(state)
        .map(|(t, &k)| {
            if t.get(k as usize) == Some(&symbol) {
                moved = true;
                k + 1
            } else {
                k
            }
        })
        .collect();
    moved.then_some(next)
}

fn dominates(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Exact SCS of a set of equal-length orderings, with a witness.
///
/// Breadth-first over frontier vectors; within a layer only Pareto-maximal
/// frontiers are kept, which is safe because a dominating frontier needs no
/// more symbols to finish than the one it dominates.
pub fn scs_exact(perms: &[Permutation], n_max: usize) -> Result<ScsResult> {
    let n = common_length(perms)?;
    if n > n_max {
        return Err(Error::LimitExceeded(format!(
            "permutation length {n} exceeds n_max = {n_max}"
        )));
    }
    if n > u8::MAX as usize {
        return Err(Error::LimitExceeded(format!("permutation length {n} is too large")));
    }
    let slices: Vec<&[usize]> = perms.iter().map(|p| p.as_slice()).collect();
    let goal: Frontier = vec![n as u8; perms.len()].into();

    // per layer: (frontier, parent index in previous layer, symbol emitted)
    let mut layers: Vec<Vec<(Frontier, usize, usize)>> =
        vec![vec![(vec![0u8; perms.len()].into(), usize::MAX, usize::MAX)]];
    let mut seen: HashSet<Frontier> = HashSet::new();
    seen.insert(layers[0][0].0.clone());

    loop {
        let current = layers.last().expect("non-empty");
        let mut candidates: Vec<(Frontier, usize, usize)> = Vec::new();
        for (idx, (state, _, _)) in current.iter().enumerate() {
            for symbol in 0..n {
                let Some(next) = advance(&slices, state, symbol) else { continue };
                if next == goal {
                    let mut witness = vec![symbol];
                    let mut at = idx;
                    for layer in layers.iter().rev() {
                        let (_, parent, sym) = &layer[at];
                        if *parent == usize::MAX {
                            break;
                        }
                        witness.push(*sym);
                        at = *parent;
                    }
                    witness.reverse();
                    return Ok(ScsResult { length: witness.len(), witness });
                }
                if seen.insert(next.clone()) {
                    candidates.push((next, idx, symbol));
                }
            }
        }
        candidates.sort_by_key(|(s, _, _)| std::cmp::Reverse(s.iter().map(|&k| k as u32).sum::<u32>()));
        let mut kept: Vec<(Frontier, usize, usize)> = Vec::with_capacity(candidates.len());
        for c in candidates {
            // candidates are distinct, so a dominator has a strictly larger sum
            if !kept.iter().any(|k| dominates(&k.0, &c.0)) {
                kept.push(c);
            }
        }
        layers.push(kept);
    }
}

/// Greedy upper bound: repeatedly emit the symbol that advances most orderings.
pub fn scs_greedy(perms: &[Permutation]) -> Result<ScsResult> {
    let n = common_length(perms)?;
    let mut pos = vec![0usize; perms.len()];
    let mut witness = Vec::new();
    while pos.iter().any(|&k| k < n) {
        let mut votes = vec![0usize; n];
        for (t, &k) in perms.iter().zip(&pos) {
            if k < n {
                votes[t.as_slice()[k]] += 1;
            }
        }
        // ties go to the lowest symbol
        let symbol = (0..n).max_by_key(|&s| (votes[s], std::cmp::Reverse(s))).expect("n > 0");
        for (t, k) in perms.iter().zip(pos.iter_mut()) {
            if *k < n && t.as_slice()[*k] == symbol {
                *k += 1;
            }
        }
        witness.push(symbol);
    }
    Ok(ScsResult { length: witness.len(), witness })
}
