//! Exact clique counting and per-vertex clique profiles.
//!
//! Everything here works on bitset candidate sets: extending a partial clique
//! by `v` intersects the candidate set with `N(v)`. Counting uses ordered
//! expansion (each clique is generated once, in increasing vertex order);
//! per-vertex profiles come from Bron–Kerbosch with Tomita pivoting over a
//! degeneracy ordering.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("work budget of {limit} recursion nodes exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("vertex set {0:?} does not induce a clique")]
    NotAClique(Vec<usize>),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Caps the number of recursion nodes a computation may visit.
#[derive(Debug, Clone)]
pub struct WorkBudget {
    limit: Option<u64>,
    used: u64,
}

impl WorkBudget {
    pub fn unlimited() -> Self {
        WorkBudget { limit: None, used: 0 }
    }

    pub fn limited(limit: u64) -> Self {
        WorkBudget { limit: Some(limit), used: 0 }
    }

    pub fn new(limit: Option<u64>) -> Self {
        WorkBudget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), CliqueError> {
        self.used += 1;
        match self.limit {
            Some(limit) if self.used > limit => Err(CliqueError::BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Number of `t`-vertex cliques, `N(G, K_t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCount {
    pub t: usize,
    pub count: BigUint,
}

/// `c(v)` for every vertex (order of the largest clique containing `v`)
/// together with the clique number.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CliqueProfile {
    pub c: Vec<usize>,
    pub omega: usize,
}

impl CliqueProfile {
    pub fn from_orders(c: Vec<usize>) -> Self {
        let omega = c.iter().copied().max().unwrap_or(0);
        CliqueProfile { c, omega }
    }
}

/// `u64` accumulator that spills into a `BigUint` instead of wrapping.
#[derive(Default)]
struct Tally {
    small: u64,
    big: BigUint,
}

impl Tally {
    #[inline]
    fn add(&mut self, k: u64) {
        match self.small.checked_add(k) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = k;
            }
        }
    }

    fn finish(self) -> BigUint {
        self.big + self.small
    }
}

/// `N(G, K_t)`. `t = 0` counts the empty clique once.
pub fn count_cliques(g: &Graph, t: usize) -> CliqueCount {
    try_count_cliques(g, t, &mut WorkBudget::unlimited()).expect("unlimited budget")
}

pub fn try_count_cliques(
    g: &Graph,
    t: usize,
    budget: &mut WorkBudget,
) -> Result<CliqueCount, CliqueError> {
    let count = count_cliques_within(g, &g.vertices(), t, budget)?;
    Ok(CliqueCount { t, count })
}

/// Number of `t`-cliques of `G[N(v)]`.
pub fn count_cliques_in_neighborhood(g: &Graph, v: usize, t: usize) -> BigUint {
    count_cliques_within(g, g.neighbors(v), t, &mut WorkBudget::unlimited()).expect("unlimited budget")
}

/// Number of `t`-cliques of the subgraph induced on `within`.
pub fn count_cliques_within(
    g: &Graph,
    within: &VertexSet,
    t: usize,
    budget: &mut WorkBudget,
) -> Result<BigUint, CliqueError> {
    if t == 0 {
        return Ok(BigUint::from(1u8));
    }
    if within.len() < t {
        return Ok(BigUint::zero());
    }
    let mut tally = Tally::default();
    count_rec(g, within, t, &mut tally, budget)?;
    Ok(tally.finish())
}

fn count_rec(
    g: &Graph,
    cand: &VertexSet,
    remaining: usize,
    tally: &mut Tally,
    budget: &mut WorkBudget,
) -> Result<(), CliqueError> {
    budget.tick()?;
    if remaining == 1 {
        tally.add(cand.len() as u64);
        return Ok(());
    }
    if remaining == 2 {
        for v in cand {
            let mut next = cand.intersection(g.neighbors(v));
            next.retain_above(v);
            tally.add(next.len() as u64);
        }
        return Ok(());
    }
    for v in cand {
        let mut next = cand.intersection(g.neighbors(v));
        next.retain_above(v);
        if next.len() >= remaining - 1 {
            count_rec(g, &next, remaining - 1, tally, budget)?;
        }
    }
    Ok(())
}

/// Calls `f` once per `t`-clique of `G[within]`, members in increasing order.
pub fn for_each_clique<F>(
    g: &Graph,
    within: &VertexSet,
    t: usize,
    budget: &mut WorkBudget,
    mut f: F,
) -> Result<(), CliqueError>
where
    F: FnMut(&[usize]),
{
    if t == 0 {
        f(&[]);
        return Ok(());
    }
    let mut stack = Vec::with_capacity(t);
    enum_rec(g, within, t, &mut stack, budget, &mut f)
}

fn enum_rec<F: FnMut(&[usize])>(
    g: &Graph,
    cand: &VertexSet,
    remaining: usize,
    stack: &mut Vec<usize>,
    budget: &mut WorkBudget,
    f: &mut F,
) -> Result<(), CliqueError> {
    budget.tick()?;
    for v in cand {
        stack.push(v);
        if remaining == 1 {
            f(stack);
        } else {
            let mut next = cand.intersection(g.neighbors(v));
            next.retain_above(v);
            if next.len() >= remaining - 1 {
                enum_rec(g, &next, remaining - 1, stack, budget, f)?;
            }
        }
        stack.pop();
    }
    Ok(())
}

/// Collects every `t`-clique of `g`.
pub fn list_cliques(g: &Graph, t: usize, budget: &mut WorkBudget) -> Result<Vec<Vec<usize>>, CliqueError> {
    let mut out = Vec::new();
    for_each_clique(g, &g.vertices(), t, budget, |c| out.push(c.to_vec()))?;
    Ok(out)
}

/// Vertex order obtained by repeatedly removing a vertex of minimum
/// remaining degree (ties to the smallest index).
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

/// Computes `c(v)` for every vertex and `ω(G)`. Isolated vertices get 1.
pub fn vertex_clique_numbers(g: &Graph) -> CliqueProfile {
    try_vertex_clique_numbers(g, &mut WorkBudget::unlimited()).expect("unlimited budget")
}

pub fn try_vertex_clique_numbers(g: &Graph, budget: &mut WorkBudget) -> Result<CliqueProfile, CliqueError> {
    let n = g.n();
    let mut c = vec![0usize; n];
    let order = degeneracy_order(g);
    let mut earlier = VertexSet::new(n);
    let mut r = Vec::new();
    for &v in &order {
        let p = g.neighbors(v).difference(&earlier);
        let x = g.neighbors(v).intersection(&earlier);
        r.push(v);
        bron_kerbosch(g, &mut r, p, x, &mut c, budget)?;
        r.pop();
        earlier.insert(v);
    }
    Ok(CliqueProfile::from_orders(c))
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: VertexSet,
    mut x: VertexSet,
    c: &mut [usize],
    budget: &mut WorkBudget,
) -> Result<(), CliqueError> {
    budget.tick()?;
    if p.is_empty() {
        if x.is_empty() {
            let k = r.len();
            for &u in r.iter() {
                c[u] = c[u].max(k);
            }
        }
        return Ok(());
    }
    // Tomita pivot: maximize |P ∩ N(u)| over u ∈ P ∪ X.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_len(g.neighbors(u)), std::cmp::Reverse(u)))
        .expect("P nonempty");
    let branch = p.difference(g.neighbors(pivot));
    for v in &branch {
        let np = p.intersection(g.neighbors(v));
        let nx = x.intersection(g.neighbors(v));
        r.push(v);
        bron_kerbosch(g, r, np, nx, c, budget)?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// Clique number of `G[within]`.
pub fn max_clique_within(g: &Graph, within: &VertexSet, budget: &mut WorkBudget) -> Result<usize, CliqueError> {
    let mut best = 0;
    max_rec(g, within.clone(), 0, &mut best, budget)?;
    Ok(best)
}

fn max_rec(
    g: &Graph,
    mut cand: VertexSet,
    size: usize,
    best: &mut usize,
    budget: &mut WorkBudget,
) -> Result<(), CliqueError> {
    budget.tick()?;
    if cand.is_empty() {
        *best = (*best).max(size);
        return Ok(());
    }
    while let Some(v) = cand.first() {
        if size + cand.len() <= *best {
            return Ok(());
        }
        let next = cand.intersection(g.neighbors(v));
        max_rec(g, next, size + 1, best, budget)?;
        cand.remove(v);
    }
    Ok(())
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique_within(g, &g.vertices(), &mut WorkBudget::unlimited()).expect("unlimited budget")
}

/// Largest order of a clique containing every vertex of `s`
/// (`|s| + ω` of the common neighborhood of `s`).
pub fn max_clique_containing(g: &Graph, s: &[usize]) -> Result<usize, CliqueError> {
    try_max_clique_containing(g, s, &mut WorkBudget::unlimited())
}

pub fn try_max_clique_containing(
    g: &Graph,
    s: &[usize],
    budget: &mut WorkBudget,
) -> Result<usize, CliqueError> {
    if let Some(&vertex) = s.iter().find(|&&v| v >= g.n()) {
        return Err(CliqueError::VertexOutOfRange { vertex, n: g.n() });
    }
    if !g.is_clique(s) {
        return Err(CliqueError::NotAClique(s.to_vec()));
    }
    let mut common = g.vertices();
    for &u in s {
        common.intersect_with(g.neighbors(u));
    }
    Ok(s.len() + max_clique_within(g, &common, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_complete_multipartite, generate_random, PartSpec};
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn octahedron() -> Graph {
        generate_complete_multipartite(&PartSpec::new(vec![2, 2, 2]).unwrap())
    }

    fn big(k: u64) -> BigUint {
        BigUint::from(k)
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_cliques(&Graph::complete(4), 2).count, big(6));
        assert_eq!(count_cliques(&octahedron(), 3).count, big(8));
        assert_eq!(count_cliques(&Graph::cycle(5), 3).count, big(0));
        assert_eq!(count_cliques(&Graph::cycle(5), 1).count, big(5));
        assert_eq!(count_cliques(&Graph::complete(3), 5).count, big(0));
        assert_eq!(count_cliques(&Graph::empty(0), 0).count, big(1));
    }

    #[test]
    fn tally_spills_past_u64() {
        let mut t = Tally::default();
        t.add(u64::MAX);
        t.add(5);
        t.add(u64::MAX);
        assert_eq!(t.finish(), BigUint::from(u64::MAX) * 2u32 + 5u32);
    }

    #[test]
    fn profile_examples() {
        assert_eq!(vertex_clique_numbers(&Graph::cycle(5)), CliqueProfile { c: vec![2; 5], omega: 2 });
        assert_eq!(vertex_clique_numbers(&Graph::complete(4)), CliqueProfile { c: vec![4; 4], omega: 4 });
        assert_eq!(
            vertex_clique_numbers(&Graph::paw()),
            CliqueProfile { c: vec![3, 3, 3, 2], omega: 3 }
        );
        assert_eq!(vertex_clique_numbers(&Graph::empty(3)), CliqueProfile { c: vec![1; 3], omega: 1 });
        assert_eq!(vertex_clique_numbers(&Graph::empty(0)), CliqueProfile { c: vec![], omega: 0 });
    }

    #[test]
    fn containing_examples() {
        assert_eq!(max_clique_containing(&Graph::complete(4), &[0, 1]), Ok(4));
        assert_eq!(max_clique_containing(&Graph::paw(), &[3]), Ok(2));
        assert_eq!(max_clique_containing(&Graph::cycle(5), &[0, 1]), Ok(2));
        assert_eq!(max_clique_containing(&Graph::cycle(5), &[]), Ok(2));
        assert_eq!(
            max_clique_containing(&Graph::cycle(5), &[0, 2]),
            Err(CliqueError::NotAClique(vec![0, 2]))
        );
        assert_eq!(
            max_clique_containing(&Graph::cycle(5), &[7]),
            Err(CliqueError::VertexOutOfRange { vertex: 7, n: 5 })
        );
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(count_cliques_in_neighborhood(&Graph::complete(4), 0, 2), big(3));
        assert_eq!(count_cliques_in_neighborhood(&Graph::cycle(5), 0, 2), big(0));
        assert_eq!(count_cliques_in_neighborhood(&octahedron(), 0, 2), big(4));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(12);
        let mut b = WorkBudget::limited(3);
        assert_eq!(try_count_cliques(&g, 4, &mut b), Err(CliqueError::BudgetExceeded { limit: 3 }));
        let mut b = WorkBudget::limited(1);
        assert!(try_vertex_clique_numbers(&g, &mut b).is_err());
        let mut b = WorkBudget::limited(1_000_000);
        assert!(try_vertex_clique_numbers(&g, &mut b).is_ok());
        assert!(b.used() > 0);
    }

    #[test]
    fn enumeration_matches_count() {
        let g = generate_random(14, Ratio::new(3, 5), 3).unwrap();
        for t in 0..7 {
            let listed = list_cliques(&g, t, &mut WorkBudget::unlimited()).unwrap();
            assert_eq!(BigUint::from(listed.len()), count_cliques(&g, t).count);
            assert!(listed.iter().all(|c| g.is_clique(c) && c.windows(2).all(|w| w[0] < w[1])));
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..18, 0u64..=4, any::<u64>())
            .prop_map(|(n, num, seed)| generate_random(n, Ratio::new(num, 4), seed).unwrap())
    }

    proptest! {
        #[test]
        fn neighborhood_sum_identity(g in arb_graph(), t in 1usize..6) {
            let total: BigUint = (0..g.n()).map(|v| count_cliques_in_neighborhood(&g, v, t - 1)).sum();
            prop_assert_eq!(total, count_cliques(&g, t).count * t);
        }

        #[test]
        fn profile_matches_containing(g in arb_graph()) {
            let p = vertex_clique_numbers(&g);
            for v in 0..g.n() {
                prop_assert_eq!(p.c[v], max_clique_containing(&g, &[v]).unwrap());
                prop_assert!(p.c[v] >= 1 && p.c[v] <= p.omega);
                prop_assert_eq!(p.c[v] == 1, g.is_isolated(v));
            }
            prop_assert_eq!(p.omega, clique_number(&g));
        }

        #[test]
        fn edge_deletion_is_monotone(g in arb_graph(), pick: usize) {
            let edges: Vec<_> = g.edges().collect();
            prop_assume!(!edges.is_empty());
            let (u, v) = edges[pick % edges.len()];
            let h = g.with_edge_toggled(u, v).unwrap();
            let (pg, ph) = (vertex_clique_numbers(&g), vertex_clique_numbers(&h));
            prop_assert!(pg.c.iter().zip(&ph.c).all(|(a, b)| b <= a));
        }
    }
}
