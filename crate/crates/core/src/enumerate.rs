//! Free-tree enumeration on level sequences, canonical codes, and a
//! Prüfer-sequence oracle for cross-checking small orders.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Tree;

/// Largest order accepted by [`enumerate_codes`].
pub const MAX_ENUM_ORDER: usize = 20;

/// Largest order accepted by [`oracle_enumerate`].
pub const MAX_ORACLE_ORDER: usize = 10;

/// Level sequence of a tree rooted at its center, children ordered by
/// non-increasing subtree sequence. Equal codes iff isomorphic trees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    /// Wraps a level sequence after checking its shape (not its canonicity).
    pub fn from_levels(levels: Vec<u32>) -> Result<Self> {
        check_level_sequence(&levels)?;
        Ok(CanonicalCode(levels))
    }

    pub fn levels(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Rebuilds the tree; vertex `i` is the `i`-th entry of the sequence.
    pub fn to_tree(&self) -> Tree {
        level_sequence_to_tree(&self.0)
    }

    /// True if the sequence is the canonical code of its own tree.
    pub fn is_canonical(&self) -> bool {
        canonical_code(&self.to_tree()) == *self
    }

    /// Joins the levels with `sep` (`'-'` in CSV, `','` on the `enum` output).
    pub fn join(&self, sep: char) -> String {
        let mut s = String::with_capacity(self.0.len() * 3);
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(sep);
            }
            s.push_str(&l.to_string());
        }
        s
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.join('-'))
    }
}

/// Accepts levels separated by `-` or `,`.
impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidCode("empty".into()));
        }
        let levels = s
            .split(['-', ','])
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidCode(format!("bad level `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        CanonicalCode::from_levels(levels)
    }
}

fn check_level_sequence(levels: &[u32]) -> Result<()> {
    match levels.first() {
        None => return Err(Error::InvalidCode("empty".into())),
        Some(&0) => {}
        Some(&l) => return Err(Error::InvalidCode(format!("first level is {l}, not 0"))),
    }
    for (i, w) in levels.windows(2).enumerate() {
        if w[1] == 0 || w[1] > w[0] + 1 {
            return Err(Error::InvalidCode(format!(
                "level {} at position {} after {}",
                w[1],
                i + 1,
                w[0]
            )));
        }
    }
    Ok(())
}

/// Caller guarantees a well-formed level sequence.
fn level_sequence_to_tree(levels: &[u32]) -> Tree {
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    // last[d] = most recent vertex seen at depth d
    let mut last: Vec<usize> = Vec::new();
    for (v, &l) in levels.iter().enumerate() {
        let l = l as usize;
        if l > 0 {
            edges.push((last[l - 1], v));
        }
        last.truncate(l);
        last.push(v);
    }
    Tree::from_edges(levels.len(), &edges).expect("level sequence encodes a tree")
}

/// Centers of a tree by repeated leaf removal: one or two vertices.
pub fn centers(t: &Tree) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            deg[leaf] = 0;
            for &w in t.neighbors(leaf) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Level sequence of `t` rooted at `root` with children in non-increasing order.
fn rooted_code(t: &Tree, root: usize) -> Vec<u32> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut children: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[u]);
        kids.sort_unstable_by(|a, b| b.cmp(a));
        let mut code = Vec::with_capacity(1 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(0);
        for kid in kids {
            code.extend(kid.into_iter().map(|l| l + 1));
        }
        if u == root {
            return code;
        }
        children[parent[u]].push(code);
    }
    unreachable!("root is visited last")
}

/// Canonical code: root at the center; for two centers keep the smaller code.
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let code = centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .expect("a tree has a center");
    CanonicalCode(code)
}

fn check_order(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::OrderOutOfRange { n, min: 1, max });
    }
    Ok(())
}

/// Successor generator over canonical level sequences of free trees
/// (Wright–Richmond–Odlyzko–McKay). Yields sequences rooted at the
/// centroid, not at the center; use [`canonical_code`] to normalize.
pub struct FreeTrees {
    layout: Option<Vec<u32>>,
    // n = 1 and n = 2 each have a single tree and bypass the generator
    small: Option<Vec<u32>>,
}

/// Streams one level sequence per isomorphism class of order `n`.
pub fn free_trees(n: usize) -> Result<FreeTrees> {
    check_order(n, MAX_ENUM_ORDER)?;
    if n <= 2 {
        return Ok(FreeTrees {
            layout: None,
            small: Some((0..n as u32).collect()),
        });
    }
    // path rooted at its center
    let mut layout: Vec<u32> = (0..=(n / 2) as u32).collect();
    layout.extend(1..n.div_ceil(2) as u32);
    Ok(FreeTrees {
        layout: Some(layout),
        small: None,
    })
}

impl Iterator for FreeTrees {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if let Some(s) = self.small.take() {
            return Some(s);
        }
        let mut layout = self.layout.take()?;
        if !next_free_tree(&mut layout) {
            return None;
        }
        let out = layout.clone();
        let len = layout.len();
        let p = last_non_one(&layout);
        if next_rooted_tree(&mut layout, p) {
            debug_assert_eq!(layout.len(), len);
            self.layout = Some(layout);
        }
        Some(out)
    }
}

fn last_non_one(layout: &[u32]) -> usize {
    let mut p = layout.len() - 1;
    while layout[p] == 1 {
        p -= 1;
    }
    p
}

/// Rooted-tree successor (Beyer–Hedetniemi) from position `p`; false when exhausted.
fn next_rooted_tree(layout: &mut [u32], p: usize) -> bool {
    if p == 0 {
        return false;
    }
    let mut q = p - 1;
    while layout[q] != layout[p] - 1 {
        q -= 1;
    }
    for i in p..layout.len() {
        layout[i] = layout[i - p + q];
    }
    true
}

/// Index of the second depth-1 vertex (start of the "rest" subtree), or `len`.
fn split_point(layout: &[u32]) -> usize {
    layout
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i)
}

/// Advances `layout` to the next sequence satisfying the free-tree
/// canonicity conditions; false when exhausted.
fn next_free_tree(layout: &mut [u32]) -> bool {
    loop {
        let m = split_point(layout);
        // left: first subtree of the root, depths shifted down by one
        let left = &layout[1..m];
        let left_height = left.iter().max().map_or(0, |&h| h - 1);
        let rest_height = layout[m..].iter().copied().max().unwrap_or(0);
        let mut valid = rest_height >= left_height;
        if valid && rest_height == left_height {
            let rest_len = layout.len() - m + 1;
            if left.len() > rest_len {
                valid = false;
            } else if left.len() == rest_len {
                let left_seq = left.iter().map(|&l| l - 1);
                let rest_seq = std::iter::once(0).chain(layout[m..].iter().copied());
                if left_seq.gt(rest_seq) {
                    valid = false;
                }
            }
        }
        if valid {
            return true;
        }
        let p = left.len();
        let before = layout[p];
        if !next_rooted_tree(layout, p) {
            return false;
        }
        if before > 2 {
            let m = split_point(layout);
            let new_left_height = layout[1..m].iter().max().map_or(0, |&h| h - 1);
            let k = new_left_height as usize + 1;
            let len = layout.len();
            for (j, slot) in layout[len - k..].iter_mut().enumerate() {
                *slot = j as u32 + 1;
            }
        }
    }
}

/// Canonical codes of all free trees of order `n`, sorted lexicographically.
pub fn enumerate_codes(n: usize) -> Result<Vec<CanonicalCode>> {
    let mut codes: Vec<CanonicalCode> = free_trees(n)?
        .map(|levels| canonical_code(&level_sequence_to_tree(&levels)))
        .collect();
    codes.sort_unstable();
    Ok(codes)
}

/// One tree per isomorphism class of order `n`, in canonical-code order.
/// Each tree is labeled by its canonical level sequence.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Tree>> {
    Ok(enumerate_codes(n)?.into_iter().map(|c| c.to_tree()))
}

/// Brute-force oracle: decodes Prüfer sequences of length `n - 2`,
/// deduplicates isomorphic trees, and returns representatives in code order.
///
/// Sequences range over the symbols `0..n-2` only. Those decode to exactly
/// the labeled trees in which `n - 2` and `n - 1` are leaves, and every
/// tree with `n >= 3` has such a labeling, so every class is still reached.
/// [`oracle_enumerate_with`] with `full_alphabet = true` drops the reduction.
///
/// Deduplication uses a parenthesis encoding independent of [`canonical_code`].
pub fn oracle_enumerate(n: usize) -> Result<Vec<Tree>> {
    oracle_enumerate_with(n, false)
}

pub fn oracle_enumerate_with(n: usize, full_alphabet: bool) -> Result<Vec<Tree>> {
    check_order(n, MAX_ORACLE_ORDER)?;
    if n <= 2 {
        return Ok(vec![Tree::path(n)]);
    }
    let symbols = if full_alphabet { n } else { n - 2 };
    // keys are 2n-bit parenthesis strings
    let mut seen = vec![false; 1usize << (2 * n)];
    let mut classes: Vec<Vec<u8>> = Vec::new();
    let mut seq = vec![0u8; n - 2];
    let mut scratch = PruferScratch::new(n);
    'sequences: loop {
        scratch.decode(&seq);
        let key = scratch.parenthesis_key() as usize;
        if !seen[key] {
            seen[key] = true;
            classes.push(seq.clone());
        }
        // odometer increment
        let mut i = seq.len();
        loop {
            if i == 0 {
                break 'sequences;
            }
            i -= 1;
            seq[i] += 1;
            if (seq[i] as usize) < symbols {
                break;
            }
            seq[i] = 0;
        }
    }
    let mut trees: Vec<(CanonicalCode, Tree)> = classes
        .into_iter()
        .map(|s| {
            let t = prufer_to_tree(&s, n);
            (canonical_code(&t), t)
        })
        .collect();
    trees.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(trees.into_iter().map(|(_, t)| t).collect())
}

/// Decodes a Prüfer sequence over `0..n` into a labeled tree.
pub fn prufer_to_tree(seq: &[u8], n: usize) -> Tree {
    let mut scratch = PruferScratch::new(n);
    scratch.decode(seq);
    let edges: Vec<(usize, usize)> = scratch.edges[..n - 1]
        .iter()
        .map(|&(a, b)| (a as usize, b as usize))
        .collect();
    Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Fixed-size buffers for decoding and keying labeled trees with `n <= 10`.
struct PruferScratch {
    n: usize,
    degree: [u8; 16],
    edges: [(u8, u8); 16],
    adj: [[u8; 16]; 16],
    adj_len: [u8; 16],
}

impl PruferScratch {
    fn new(n: usize) -> Self {
        assert!((2..=16).contains(&n));
        PruferScratch {
            n,
            degree: [0; 16],
            edges: [(0, 0); 16],
            adj: [[0; 16]; 16],
            adj_len: [0; 16],
        }
    }

    /// Linear-time decoding.
    fn decode(&mut self, seq: &[u8]) {
        let n = self.n;
        self.degree[..n].fill(1);
        for &s in seq {
            self.degree[s as usize] += 1;
        }
        let mut ptr = 0;
        while self.degree[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for (k, &s) in seq.iter().enumerate() {
            let v = s as usize;
            self.edges[k] = (leaf as u8, s);
            self.degree[v] -= 1;
            if v < ptr && self.degree[v] == 1 {
                leaf = v;
            } else {
                ptr += 1;
                while self.degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        self.edges[n - 2] = (leaf as u8, (n - 1) as u8);
        self.adj_len[..n].fill(0);
        for &(a, b) in &self.edges[..n - 1] {
            let (a, b) = (a as usize, b as usize);
            self.adj[a][self.adj_len[a] as usize] = b as u8;
            self.adj_len[a] += 1;
            self.adj[b][self.adj_len[b] as usize] = a as u8;
            self.adj_len[b] += 1;
        }
    }

    /// AHU parenthesis string `1 children 0` packed into bits, rooted at
    /// the center; for two centers the smaller string. Every string starts
    /// with a 1 bit, so its width is implied and sorting children
    /// numerically is a total order on rooted classes.
    ///
    /// Keys are built during leaf peeling: when a vertex is peeled, every
    /// neighbor except its parent has been peeled already.
    fn parenthesis_key(&self) -> u64 {
        let n = self.n;
        let mut deg = [0u8; 16];
        deg[..n].copy_from_slice(&self.adj_len[..n]);
        let mut removed = [false; 16];
        let mut keys = [0u64; 16];
        let mut layer = [0u8; 16];
        let mut layer_len = 0;
        for (v, &d) in deg[..n].iter().enumerate() {
            if d == 1 {
                layer[layer_len] = v as u8;
                layer_len += 1;
            }
        }
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer_len;
            let mut next = [0u8; 16];
            let mut next_len = 0;
            for &v in &layer[..layer_len] {
                let v = v as usize;
                keys[v] = self.combine(v, &removed, &keys, None);
                removed[v] = true;
                for &w in &self.adj[v][..self.adj_len[v] as usize] {
                    let w = w as usize;
                    if !removed[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next[next_len] = w as u8;
                            next_len += 1;
                        }
                    }
                }
            }
            layer = next;
            layer_len = next_len;
        }
        if remaining == 1 {
            return self.combine(layer[0] as usize, &removed, &keys, None);
        }
        // bicentral: root at each center, the other hanging below it
        let (a, b) = (layer[0] as usize, layer[1] as usize);
        let sub_a = self.combine(a, &removed, &keys, None);
        let sub_b = self.combine(b, &removed, &keys, None);
        let root_a = self.combine(a, &removed, &keys, Some(sub_b));
        let root_b = self.combine(b, &removed, &keys, Some(sub_a));
        root_a.min(root_b)
    }

    /// Key of `v` over its peeled neighbors, plus an optional extra subtree.
    fn combine(&self, v: usize, removed: &[bool; 16], keys: &[u64; 16], extra: Option<u64>) -> u64 {
        let mut kids = [0u64; 16];
        let mut len = 0;
        let mut insert = |k: u64| {
            let mut i = len;
            while i > 0 && kids[i - 1] > k {
                kids[i] = kids[i - 1];
                i -= 1;
            }
            kids[i] = k;
            len += 1;
        };
        for &w in &self.adj[v][..self.adj_len[v] as usize] {
            if removed[w as usize] {
                insert(keys[w as usize]);
            }
        }
        if let Some(e) = extra {
            insert(e);
        }
        let mut bits = 1u64;
        for &k in &kids[..len] {
            bits = (bits << (64 - k.leading_zeros())) | k;
        }
        bits << 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(t: &Tree, perm: &[usize]) -> Tree {
        let edges: Vec<_> = t.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(t.order(), &edges).unwrap()
    }

    #[test]
    fn order_four_has_path_and_star() {
        let codes = enumerate_codes(4).unwrap();
        assert_eq!(codes.len(), 2);
        let path = canonical_code(&Tree::path(4));
        let star = canonical_code(&Tree::star(4));
        assert_ne!(path, star);
        assert!(codes.contains(&path) && codes.contains(&star));
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_codes(1).unwrap().len(), 1);
        assert_eq!(enumerate_codes(2).unwrap().len(), 1);
        assert_eq!(enumerate_codes(3).unwrap().len(), 1);
        assert!(enumerate_codes(0).is_err());
        assert!(enumerate_codes(MAX_ENUM_ORDER + 1).is_err());
    }

    #[test]
    fn codes_are_relabeling_invariant() {
        let p = Tree::path(4);
        let q = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&q));
        let spider = Tree::spider(3, 2);
        let perm = [6, 0, 5, 1, 4, 2, 3];
        assert_eq!(canonical_code(&spider), canonical_code(&relabel(&spider, &perm)));
    }

    #[test]
    fn code_shape_and_parse() {
        let c: CanonicalCode = "0-1-2-1".parse().unwrap();
        assert_eq!(c.levels(), &[0, 1, 2, 1]);
        assert_eq!("0,1,2,1".parse::<CanonicalCode>().unwrap(), c);
        assert!("1-2".parse::<CanonicalCode>().is_err());
        assert!("0-2".parse::<CanonicalCode>().is_err());
        assert!("0-1-0".parse::<CanonicalCode>().is_err());
        assert!("".parse::<CanonicalCode>().is_err());
        assert!("0-x".parse::<CanonicalCode>().is_err());
        // P_4 rooted at a center: center, other center, its leaf, own leaf
        assert!(c.is_canonical());
        assert!(!"0-1-1-2".parse::<CanonicalCode>().unwrap().is_canonical());
    }

    #[test]
    fn every_enumerated_code_is_canonical() {
        for n in 1..=10 {
            for code in enumerate_codes(n).unwrap() {
                assert_eq!(code.order(), n);
                assert!(code.is_canonical(), "{code}");
            }
        }
    }

    #[test]
    fn prufer_decoding() {
        // sequence [3,3] on 4 vertices: star centered at 3
        let t = prufer_to_tree(&[3, 3], 4);
        assert_eq!(t.degree(3), 3);
        let t = prufer_to_tree(&[1, 2], 4);
        assert!(t.is_path());
    }

    #[test]
    fn oracle_small_orders() {
        assert_eq!(oracle_enumerate(3).unwrap().len(), 1);
        assert_eq!(oracle_enumerate(4).unwrap().len(), 2);
        assert_eq!(oracle_enumerate(6).unwrap().len(), 6);
        assert!(oracle_enumerate(MAX_ORACLE_ORDER + 1).is_err());
    }

    #[test]
    fn reduced_alphabet_reaches_every_class() {
        for n in 1..=8 {
            let codes = |full| -> Vec<CanonicalCode> {
                oracle_enumerate_with(n, full)
                    .unwrap()
                    .iter()
                    .map(canonical_code)
                    .collect()
            };
            assert_eq!(codes(false), codes(true), "n={n}");
        }
    }
}
