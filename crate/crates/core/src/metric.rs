//! Metric dimension of trees: exact subset search and the leg-counting formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::enumerate::canonical_code;
use crate::error::{Error, Result};
use crate::graph::{distance_matrix, leaves, DistanceMatrix, Tree};

/// Largest order accepted by [`metric_dimension_bruteforce`].
pub const MAX_BRUTE_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    TreeFormula,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BruteForce => "brute",
            Method::TreeFormula => "tree",
            Method::Both => "both",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::BruteForce),
            "tree" => Ok(Method::TreeFormula),
            "both" => Ok(Method::Both),
            other => Err(Error::Report(format!("unknown eps method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvingResult {
    pub eps: usize,
    /// Sorted resolving set of size `eps`.
    pub witness: Vec<usize>,
    pub method: Method,
}

/// True iff the distance vectors to `s` separate every pair of vertices.
pub fn is_resolving(t: &Tree, s: &[usize]) -> Result<bool> {
    let n = t.order();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, order: n });
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    Ok(resolves(&distance_matrix(t), &sorted))
}

fn resolves(dist: &DistanceMatrix, s: &[usize]) -> bool {
    let n = dist.order();
    let mut vectors: Vec<Vec<u32>> = (0..n)
        .map(|v| s.iter().map(|&w| dist.get(v, w)).collect())
        .collect();
    vectors.sort_unstable();
    vectors.windows(2).all(|w| w[0] != w[1])
}

/// Exact metric dimension by ascending subset search, candidates restricted
/// to leaves (a tree always has a minimum resolving set made of leaves).
pub fn metric_dimension_bruteforce(t: &Tree) -> Result<ResolvingResult> {
    bruteforce_with(t, true)
}

/// As [`metric_dimension_bruteforce`]; `leaf_prune = false` searches all vertex subsets.
pub fn bruteforce_with(t: &Tree, leaf_prune: bool) -> Result<ResolvingResult> {
    let n = t.order();
    if n > MAX_BRUTE_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_BRUTE_ORDER,
        });
    }
    if n == 1 {
        return Ok(ResolvingResult {
            eps: 0,
            witness: Vec::new(),
            method: Method::BruteForce,
        });
    }
    let dist = distance_matrix(t);
    let candidates: Vec<usize> = if leaf_prune {
        leaves(t)
    } else {
        (0..n).collect()
    };
    for k in 1..=candidates.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        let mut subset = vec![0; k];
        loop {
            for (slot, &i) in subset.iter_mut().zip(&idx) {
                *slot = candidates[i];
            }
            if resolves(&dist, &subset) {
                return Ok(ResolvingResult {
                    eps: k,
                    witness: subset,
                    method: Method::BruteForce,
                });
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    unreachable!("the full candidate set resolves a tree")
}

/// Next k-combination of `0..m` in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Metric dimension from leg counts: `leaves - exterior major vertices`,
/// or 1 for a path. The witness keeps all but the largest leaf of each
/// exterior major vertex.
pub fn metric_dimension_tree(t: &Tree) -> ResolvingResult {
    let n = t.order();
    if n == 1 {
        return ResolvingResult {
            eps: 0,
            witness: Vec::new(),
            method: Method::TreeFormula,
        };
    }
    let leaf_list = leaves(t);
    if t.is_path() {
        return ResolvingResult {
            eps: 1,
            witness: vec![leaf_list[0]],
            method: Method::TreeFormula,
        };
    }
    let mut legs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &leaf in &leaf_list {
        let (mut prev, mut cur) = (leaf, t.neighbors(leaf)[0]);
        while t.degree(cur) == 2 {
            let next = t.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        legs.entry(cur).or_default().push(leaf);
    }
    let mut witness: Vec<usize> = legs
        .values()
        .flat_map(|ls| ls[..ls.len() - 1].iter().copied())
        .collect();
    witness.sort_unstable();
    ResolvingResult {
        eps: leaf_list.len() - legs.len(),
        witness,
        method: Method::TreeFormula,
    }
}

/// Dispatches on `method`; `Both` fails with [`Error::MethodDisagreement`]
/// when the two routes differ and otherwise returns the brute-force witness.
pub fn metric_dimension(t: &Tree, method: Method) -> Result<ResolvingResult> {
    match method {
        Method::BruteForce => metric_dimension_bruteforce(t),
        Method::TreeFormula => Ok(metric_dimension_tree(t)),
        Method::Both => {
            let brute = metric_dimension_bruteforce(t)?;
            let formula = metric_dimension_tree(t);
            if brute.eps != formula.eps {
                return Err(Error::MethodDisagreement {
                    code: canonical_code(t).to_string(),
                    brute: brute.eps,
                    formula: formula.eps,
                });
            }
            Ok(ResolvingResult {
                method: Method::Both,
                ..brute
            })
        }
    }
}
