//! Simple undirected graphs with bitset adjacency rows, plus the generators
//! used to build test corpora.

use std::fmt;

use num_rational::Ratio;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::bitset::VertexSet;

/// Largest vertex count accepted anywhere in the crate (graph6 limit).
pub const MAX_VERTICES: usize = (1 << 18) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("part specification must be a nonempty list of positive sizes")]
    InvalidParts,
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(String),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
}

/// An immutable simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.set(u, v);
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        if n >= 3 {
            for u in 0..n {
                b.set(u, (u + 1) % n);
            }
        } else if n == 2 {
            b.set(0, 1);
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 1..n {
            b.set(u - 1, u);
        }
        b.build()
    }

    /// Triangle `{0,1,2}` with a pendant vertex 3 attached to 0.
    pub fn paw() -> Self {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).expect("valid")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    /// Whether every pair of distinct vertices in `s` is adjacent.
    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(k, &u)| s[k + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (c, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    b.set(a, c);
                }
            }
        }
        b.build()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    b.set(u, v);
                }
            }
        }
        b.build()
    }

    /// Graph with the edge `{u, v}` toggled.
    pub fn with_edge_toggled(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u].remove(v);
            g.adj[v].remove(u);
            g.m -= 1;
        } else {
            g.adj[u].insert(v);
            g.adj[v].insert(u);
            g.m += 1;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Checks symmetry, loop-freeness and the cached edge count.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        let mut degree_sum = 0;
        for u in 0..n {
            if self.adj[u].capacity() != n {
                return Err(GraphError::VertexOutOfRange { vertex: self.adj[u].capacity(), n });
            }
            if self.adj[u].contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            for v in &self.adj[u] {
                if !self.adj[v].contains(u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
            degree_sum += self.adj[u].len();
        }
        assert_eq!(degree_sum, 2 * self.m, "cached edge count out of sync");
        Ok(())
    }

    /// Parts of a complete multipartite graph: vertices are in the same part
    /// exactly when they are non-adjacent. Returns `None` when non-adjacency
    /// is not an equivalence relation. Parts are ordered by smallest member.
    pub fn multipartite_parts(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.n();
        let mut part_of = vec![usize::MAX; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if part_of[v] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let members: Vec<usize> = (0..n).filter(|&u| u == v || !self.has_edge(u, v)).collect();
            for &u in &members {
                if part_of[u] != usize::MAX {
                    return None;
                }
                part_of[u] = id;
            }
            parts.push(members);
        }
        // Every cross-part pair must be adjacent and every in-part pair not.
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) == (part_of[u] == part_of[v]) {
                    return None;
                }
            }
        }
        Some(parts)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable staging area; `build` freezes it into a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set(u, v);
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn build(self) -> Graph {
        let m = self.adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Graph { adj: self.adj, m }
    }
}

/// Part sizes `n_1, .., n_r` of a complete multipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartSpec(Vec<usize>);

impl PartSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self, GraphError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(GraphError::InvalidParts);
        }
        Ok(PartSpec(sizes))
    }

    /// `r` parts of size `s`.
    pub fn regular(s: usize, r: usize) -> Result<Self, GraphError> {
        Self::new(vec![s; r])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl TryFrom<Vec<usize>> for PartSpec {
    type Error = GraphError;

    fn try_from(v: Vec<usize>) -> Result<Self, GraphError> {
        PartSpec::new(v)
    }
}

impl From<PartSpec> for Vec<usize> {
    fn from(p: PartSpec) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for PartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Complete multipartite graph; part `k` occupies a consecutive block of
/// vertex indices, blocks in the order given.
pub fn generate_complete_multipartite(parts: &PartSpec) -> Graph {
    let n = parts.order();
    let mut part_of = Vec::with_capacity(n);
    for (k, &s) in parts.sizes().iter().enumerate() {
        part_of.extend(std::iter::repeat_n(k, s));
    }
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                b.set(u, v);
            }
        }
    }
    b.build()
}

/// Erdős–Rényi `G(n, p)` with a reproducible stream.
///
/// The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`).
/// Pairs are visited in lexicographic order `(0,1), (0,2), .., (0,n-1),
/// (1,2), ..`; for each pair one `next_u64()` word `w` is drawn and the edge
/// is included iff `w * den < num * 2^64` where `p = num/den`. The comparison
/// is exact, so `p = 0` never and `p = 1` always includes an edge.
pub fn generate_random(n: usize, p: Ratio<u64>, seed: u64) -> Result<Graph, GraphError> {
    if *p.denom() == 0 || p.numer() > p.denom() {
        return Err(GraphError::InvalidProbability(format!("{}/{}", p.numer(), p.denom())));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let threshold = (*p.numer() as u128) << 64;
    let den = *p.denom() as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let w = rng.next_u64() as u128;
            if w * den < threshold {
                b.set(u, v);
            }
        }
    }
    Ok(b.build())
}
