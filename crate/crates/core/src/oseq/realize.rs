//! Exhaustive search for monomial generators realizing a given sequence as
//! a pure O-sequence, at desk scale.

use std::collections::HashMap;

use serde::Serialize;

use super::{monomials_of_degree, pure_o_sequence, Monomial, MonomialSet};
use crate::error::{Error, Result};
use crate::macaulay::binomial;

const MAX_DEGREE: usize = 5;
const MAX_VARS: usize = 5;
const MAX_TOP: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub witness: Option<MonomialSet>,
    /// Number of `h_k`-subsets of degree-`k` monomials in `h_1` variables.
    pub search_space: u128,
    /// Nodes of the pruned search tree that were expanded.
    pub nodes_visited: u64,
}

struct Search<'a> {
    target: &'a [usize],
    /// `divisors[g][l]`: ids of the degree-`l` divisors of candidate `g`.
    divisors: Vec<Vec<Vec<usize>>>,
    /// max number of degree-`l` divisors of any candidate
    max_new: Vec<usize>,
    counts: Vec<Vec<u32>>,
    sizes: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn add(&mut self, g: usize) {
        for (l, ids) in self.divisors[g].iter().enumerate() {
            for &id in ids {
                self.counts[l][id] += 1;
                if self.counts[l][id] == 1 {
                    self.sizes[l] += 1;
                }
            }
        }
        self.chosen.push(g);
    }

    fn remove(&mut self, g: usize) {
        for (l, ids) in self.divisors[g].iter().enumerate() {
            for &id in ids {
                self.counts[l][id] -= 1;
                if self.counts[l][id] == 0 {
                    self.sizes[l] -= 1;
                }
            }
        }
        self.chosen.pop();
    }

    fn feasible(&self, remaining: usize) -> bool {
        self.sizes.iter().zip(self.target).zip(&self.max_new).all(|((&have, &want), &per)| {
            have <= want && have + remaining * per >= want
        })
    }

    fn run(&mut self, start: usize, remaining: usize, first_ok: &[bool]) -> bool {
        self.nodes += 1;
        if remaining == 0 {
            return self.sizes == self.target;
        }
        let n = self.divisors.len();
        for g in start..n {
            if n - g < remaining {
                break;
            }
            if self.chosen.is_empty() && !first_ok[g] {
                continue;
            }
            self.add(g);
            if self.feasible(remaining - 1) && self.run(g + 1, remaining - 1, first_ok) {
                return true;
            }
            self.remove(g);
        }
        false
    }
}

/// Looks for degree-`k` monomials `m_1..m_{h_k}` in `h_1` variables whose
/// order ideal has exactly `h_l` elements in each degree `l`.
///
/// Candidates are enumerated as increasing index sequences into the
/// descending-lex list of degree-`k` monomials, with partial order ideals
/// pruned against `h` from above and below. Up to a permutation of the
/// variables, the lex-largest generator can be taken with nonincreasing
/// exponents, so only such monomials are tried first. The first witness in
/// this order is returned.
pub fn find_pure_o_realization(h: &[i64], max_vars: usize) -> Result<Realization> {
    if h.first() != Some(&1) {
        return Err(Error::SearchBounds("h_0 must be 1".into()));
    }
    if h.iter().any(|&v| v <= 0) {
        return Err(Error::SearchBounds("entries must be positive".into()));
    }
    let k = h.len() - 1;
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::SearchBounds(format!("need 1 <= k <= {MAX_DEGREE}, got {k}")));
    }
    if max_vars > MAX_VARS {
        return Err(Error::SearchBounds(format!("max_vars {max_vars} exceeds {MAX_VARS}")));
    }
    let vars = h[1] as usize;
    if vars > max_vars {
        return Err(Error::SearchBounds(format!("h_1 = {vars} exceeds max_vars {max_vars}")));
    }
    if h[k] > MAX_TOP {
        return Err(Error::SearchBounds(format!("h_k = {} exceeds {MAX_TOP}", h[k])));
    }
    let target: Vec<usize> = h.iter().map(|&v| v as usize).collect();
    let top = target[k];

    let candidates = monomials_of_degree(vars, k);
    let search_space = binomial(candidates.len() as u64, top as u32);

    let ids: Vec<HashMap<Monomial, usize>> = (0..=k)
        .map(|l| monomials_of_degree(vars, l).into_iter().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let divisors: Vec<Vec<Vec<usize>>> = candidates
        .iter()
        .map(|g| {
            g.divisors_by_degree()
                .into_iter()
                .enumerate()
                .map(|(l, ds)| ds.iter().map(|d| ids[l][d]).collect())
                .collect()
        })
        .collect();
    let max_new = (0..=k).map(|l| divisors.iter().map(|d| d[l].len()).max().unwrap_or(0)).collect();
    let first_ok: Vec<bool> = candidates.iter().map(|m| m.0.windows(2).all(|w| w[0] >= w[1])).collect();

    let mut search = Search {
        target: &target,
        divisors,
        max_new,
        counts: ids.iter().map(|m| vec![0; m.len()]).collect(),
        sizes: vec![0; k + 1],
        chosen: Vec::new(),
        nodes: 0,
    };
    let found = search.run(0, top, &first_ok);

    let witness = if found {
        let gens = search.chosen.iter().map(|&g| candidates[g].clone()).collect();
        let set = MonomialSet::new(vars, k, gens)?;
        debug_assert_eq!(pure_o_sequence(&set).h, target);
        Some(set)
    } else {
        None
    };
    Ok(Realization { witness, search_space, nodes_visited: search.nodes })
}
