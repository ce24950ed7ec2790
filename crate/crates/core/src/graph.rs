//! Tree representation, edge-list parsing, and distance/degree primitives.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, ParseError};

/// Largest vertex id accepted by the edge-list parser.
pub const MAX_PARSE_VERTEX: usize = 1 << 16;

/// A validated free tree on vertices `0..n`.
///
/// Adjacency lists are sorted; the structure is immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("order", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Tree {
    /// Builds a tree on `order` vertices from an edge list, checking every tree invariant.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::EmptyTree);
        }
        let mut adjacency = vec![Vec::new(); order];
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    order,
                });
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotATree("duplicate edge".into()));
            }
        }
        if edges.len() != order - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices, expected {}",
                edges.len(),
                order,
                order - 1
            )));
        }
        let tree = Tree { adjacency };
        if !tree.is_connected() {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(order: usize) -> Self {
        let edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        Tree::from_edges(order, &edges).expect("path is a tree")
    }

    /// The star with center 0 and leaves `1..n`.
    pub fn star(order: usize) -> Self {
        let edges: Vec<_> = (1..order).map(|v| (0, v)).collect();
        Tree::from_edges(order, &edges).expect("star is a tree")
    }

    /// A center vertex 0 with `legs` pendant paths of `leg_len` vertices each.
    pub fn spider(legs: usize, leg_len: usize) -> Self {
        let order = 1 + legs * leg_len;
        let mut edges = Vec::with_capacity(order.saturating_sub(1));
        for leg in 0..legs {
            let first = 1 + leg * leg_len;
            edges.push((0, first));
            for k in 1..leg_len {
                edges.push((first + k - 1, first + k));
            }
        }
        Tree::from_edges(order, &edges).expect("spider is a tree")
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.order().saturating_sub(1));
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_path(&self) -> bool {
        self.adjacency.iter().all(|l| l.len() <= 2)
    }

    fn is_connected(&self) -> bool {
        bfs_distances(&self.adjacency, 0).iter().all(|&d| d != u32::MAX)
    }

    /// Hop distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        bfs_distances(&self.adjacency, source)
    }

    /// Renders the tree in the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn bfs_distances(adjacency: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adjacency.len()];
    let mut queue = VecDeque::with_capacity(adjacency.len());
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Parses the line-oriented edge-list format: one `u v` pair per line,
/// `#` comments and blank lines ignored, vertex count = max id + 1.
pub fn parse_edge_list(text: &str) -> Result<Tree, ParseError> {
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut max_id = None::<usize>;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(ParseError::Malformed {
                line,
                reason: "expected exactly two vertex ids".into(),
            });
        };
        let parse_id = |s: &str| -> Result<usize, ParseError> {
            let id: usize = s.parse().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("`{s}` is not a non-negative integer"),
            })?;
            if id > MAX_PARSE_VERTEX {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!("vertex id {id} exceeds {MAX_PARSE_VERTEX}"),
                });
            }
            Ok(id)
        };
        let (u, v) = (parse_id(a)?, parse_id(b)?);
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let Some(max_id) = max_id else {
        return Err(ParseError::Empty);
    };
    let order = max_id + 1;
    if edges.len() != order - 1 {
        return Err(ParseError::EdgeCount {
            expected: order - 1,
            found: edges.len(),
        });
    }
    Tree::from_edges(order, &edges).map_err(|_| ParseError::Disconnected)
}

/// Vertex degrees, indexed by vertex.
pub fn degrees(t: &Tree) -> Vec<usize> {
    (0..t.order()).map(|v| t.degree(v)).collect()
}

/// All-pairs hop distances of a tree, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.entries[u * self.order + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.entries[u * self.order..(u + 1) * self.order]
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }
}

/// One BFS per vertex.
pub fn distance_matrix(t: &Tree) -> DistanceMatrix {
    let n = t.order();
    let mut entries = Vec::with_capacity(n * n);
    for s in 0..n {
        entries.extend(t.distances_from(s));
    }
    DistanceMatrix { order: n, entries }
}

pub fn diameter(t: &Tree) -> u32 {
    distance_matrix(t).max_entry()
}

/// Degree-one vertices in increasing order.
pub fn leaves(t: &Tree) -> Vec<usize> {
    (0..t.order()).filter(|&v| t.degree(v) == 1).collect()
}
