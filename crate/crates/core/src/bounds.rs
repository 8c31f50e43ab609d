//! Clique-count bounds evaluated exactly, compared with true counts.
//!
//! The central quantity is the vertex-localized bound
//!
//! ```text
//! N(G, K_t) <= n^(t-1) * sum_v C(c(v), t) / c(v)^t
//! ```
//!
//! with equality (for `2 <= t <= ω`) exactly on regular complete multipartite
//! graphs. The classical Zykov and Turán bounds, the edge-localized Turán sum
//! and the Kirsch–Nir clique-weighted sum are computed alongside it for
//! comparison.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::clique::{
    for_each_clique, try_count_cliques, try_max_clique_containing, try_vertex_clique_numbers,
    CliqueError, CliqueProfile, WorkBudget,
};
use crate::graph::{Graph, PartSpec};
use crate::rational::{binomial, clique_weight, int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("clique order t = {0} is not supported here (need t >= 2)")]
    InvalidOrder(usize),
    #[error("profile has {profile} entries but the graph has {n} vertices")]
    ProfileMismatch { profile: usize, n: usize },
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error("invariant `{name}` violated: {detail}")]
    InvariantViolated { name: &'static str, detail: String },
}

fn check_order(t: usize) -> Result<(), BoundError> {
    if t < 2 {
        Err(BoundError::InvalidOrder(t))
    } else {
        Ok(())
    }
}

fn check_profile(g: &Graph, profile: &CliqueProfile) -> Result<(), BoundError> {
    if profile.c.len() != g.n() {
        Err(BoundError::ProfileMismatch { profile: profile.c.len(), n: g.n() })
    } else {
        Ok(())
    }
}

/// `n^(t-1) * Σ_v C(c(v), t) / c(v)^t`.
pub fn localized_zykov_bound(g: &Graph, t: usize, profile: &CliqueProfile) -> Result<Rational, BoundError> {
    check_order(t)?;
    check_profile(g, profile)?;
    let sum: Rational = profile.c.iter().map(|&c| clique_weight(c, t)).sum();
    Ok(sum * int(BigInt::from(g.n()).pow(t as u32 - 1)))
}

/// `C(r, t) (n / r)^t`. Zero when `r = 0` (only the null graph has ω = 0).
pub fn zykov_bound(n: usize, r: usize, t: usize) -> Rational {
    if r == 0 {
        return Rational::zero();
    }
    Rational::new(
        binomial(r, t) * BigInt::from(n).pow(t as u32),
        BigInt::from(r).pow(t as u32),
    )
}

/// `n^2 (r - 1) / (2r)`.
pub fn turan_bound(n: usize, r: usize) -> Rational {
    if r == 0 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(n * n) * (r - 1), BigInt::from(2 * r))
}

/// An edge with the order of the largest clique through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCliqueWeight {
    pub edge: (usize, usize),
    pub w: usize,
}

pub fn edge_clique_weights(g: &Graph, budget: &mut WorkBudget) -> Result<Vec<EdgeCliqueWeight>, CliqueError> {
    g.edges()
        .map(|(u, v)| {
            let w = try_max_clique_containing(g, &[u, v], budget)?;
            Ok(EdgeCliqueWeight { edge: (u, v), w })
        })
        .collect()
}

/// `Σ_e w(e) / (w(e) - 1)`; the edge-localized Turán theorem caps it by `n²/2`.
pub fn edge_localized_turan_sum(g: &Graph) -> Rational {
    try_edge_localized_turan_sum(g, &mut WorkBudget::unlimited()).expect("unlimited budget")
}

pub fn try_edge_localized_turan_sum(g: &Graph, budget: &mut WorkBudget) -> Result<Rational, CliqueError> {
    Ok(edge_clique_weights(g, budget)?
        .iter()
        .map(|e| Rational::new(BigInt::from(e.w), BigInt::from(e.w - 1)))
        .sum())
}

pub fn edge_localized_cap(n: usize) -> Rational {
    Rational::new(BigInt::from(n * n), BigInt::from(2))
}

/// `(n/2) Σ_v (c(v) - 1) / c(v)` before flooring.
pub fn vertex_localized_turan_value(g: &Graph, profile: &CliqueProfile) -> Rational {
    let sum: Rational = profile
        .c
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| Rational::new(BigInt::from(c - 1), BigInt::from(c)))
        .sum();
    sum * Rational::new(BigInt::from(g.n()), BigInt::from(2))
}

/// `⌊(n/2) Σ_v (c(v) - 1) / c(v)⌋`, an upper bound on `m`.
pub fn vertex_localized_turan_bound(g: &Graph, profile: &CliqueProfile) -> BigInt {
    vertex_localized_turan_value(g, profile).floor().to_integer()
}

/// A `t`-clique with its Kirsch–Nir weight `α^t / C(α, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KtCopyWeight {
    pub copy: Vec<usize>,
    pub alpha: usize,
    pub w: Rational,
}

/// `α^t / C(α, t)`; decreasing in `α >= t`.
pub fn kirsch_nir_weight(alpha: usize, t: usize) -> Rational {
    Rational::new(BigInt::from(alpha).pow(t as u32), binomial(alpha, t))
}

pub fn kirsch_nir_copies(g: &Graph, t: usize, budget: &mut WorkBudget) -> Result<Vec<KtCopyWeight>, BoundError> {
    check_order(t)?;
    let mut copies = Vec::new();
    for_each_clique(g, &g.vertices(), t, budget, |c| copies.push(c.to_vec()))?;
    copies
        .into_iter()
        .map(|copy| {
            let alpha = try_max_clique_containing(g, &copy, budget)?;
            Ok(KtCopyWeight { w: kirsch_nir_weight(alpha, t), copy, alpha })
        })
        .collect()
}

/// `Σ_T α(T)^t / C(α(T), t)` over all `t`-cliques `T`; at most `n^t`.
pub fn kirsch_nir_sum(g: &Graph, t: usize) -> Result<Rational, BoundError> {
    try_kirsch_nir_sum(g, t, &mut WorkBudget::unlimited())
}

pub fn try_kirsch_nir_sum(g: &Graph, t: usize, budget: &mut WorkBudget) -> Result<Rational, BoundError> {
    Ok(kirsch_nir_copies(g, t, budget)?.into_iter().map(|k| k.w).sum())
}

/// Part sizes when `g` is complete multipartite with all parts equal.
///
/// `K_n` gives `n` parts of size 1; an edgeless graph on `n >= 1` vertices
/// gives a single part. The null graph has no certificate.
pub fn is_regular_complete_multipartite(g: &Graph) -> Option<PartSpec> {
    let parts = g.multipartite_parts()?;
    let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    let spec = PartSpec::new(sizes).ok()?;
    spec.is_regular().then_some(spec)
}

/// Every bound for one `(G, t)`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub t: usize,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub true_count: BigUint,
    pub localized_zykov: Rational,
    /// Zykov's bound with `r = ω`.
    pub zykov_classical: Rational,
    /// Turán's bound with `r = ω`, reported for `t = 2` only.
    pub turan: Option<Rational>,
    pub edge_localized_sum: Rational,
    pub edge_localized_cap: Rational,
    pub vertex_localized_turan: BigInt,
    pub vertex_localized_turan_exact: Rational,
    pub kirsch_nir_sum: Rational,
    pub kirsch_nir_cap: Rational,
    /// Informational only: whether the Kirsch–Nir sum meets its cap.
    pub kirsch_nir_equal: bool,
    pub is_tight: bool,
    pub extremal_certificate: Option<PartSpec>,
}

impl BoundReport {
    /// `localized_zykov - true_count`.
    pub fn gap(&self) -> Rational {
        &self.localized_zykov - count_to_rational(&self.true_count)
    }
}

pub fn count_to_rational(c: &BigUint) -> Rational {
    int(BigInt::from(c.clone()))
}

pub fn bound_report(g: &Graph, t: usize) -> Result<BoundReport, BoundError> {
    try_bound_report(g, t, &mut WorkBudget::unlimited())
}

/// Fills every [`BoundReport`] field and cross-checks the stated
/// inequalities and the equality characterization; a failed check is an
/// [`BoundError::InvariantViolated`].
pub fn try_bound_report(g: &Graph, t: usize, budget: &mut WorkBudget) -> Result<BoundReport, BoundError> {
    let profile = try_vertex_clique_numbers(g, budget)?;
    report_with_profile(g, t, &profile, budget)
}

pub fn report_with_profile(
    g: &Graph,
    t: usize,
    profile: &CliqueProfile,
    budget: &mut WorkBudget,
) -> Result<BoundReport, BoundError> {
    check_order(t)?;
    check_profile(g, profile)?;
    let n = g.n();
    let true_count = try_count_cliques(g, t, budget)?.count;
    let localized_zykov = localized_zykov_bound(g, t, profile)?;
    let zykov_classical = zykov_bound(n, profile.omega, t);
    let turan = (t == 2).then(|| turan_bound(n, profile.omega));
    let edge_localized_sum = try_edge_localized_turan_sum(g, budget)?;
    let vertex_localized_turan_exact = vertex_localized_turan_value(g, profile);
    let kirsch_nir_sum = try_kirsch_nir_sum(g, t, budget)?;
    let kirsch_nir_cap = int(BigInt::from(n).pow(t as u32));
    let report = BoundReport {
        t,
        n,
        m: g.m(),
        omega: profile.omega,
        is_tight: count_to_rational(&true_count) == localized_zykov,
        true_count,
        localized_zykov,
        zykov_classical,
        turan,
        edge_localized_cap: edge_localized_cap(n),
        edge_localized_sum,
        vertex_localized_turan: vertex_localized_turan_exact.floor().to_integer(),
        vertex_localized_turan_exact,
        kirsch_nir_equal: kirsch_nir_sum == kirsch_nir_cap,
        kirsch_nir_sum,
        kirsch_nir_cap,
        extremal_certificate: is_regular_complete_multipartite(g),
    };
    cross_check(&report)?;
    Ok(report)
}

fn violated(name: &'static str, detail: String) -> Result<(), BoundError> {
    Err(BoundError::InvariantViolated { name, detail })
}

fn cross_check(r: &BoundReport) -> Result<(), BoundError> {
    let count = count_to_rational(&r.true_count);
    if count > r.localized_zykov {
        return violated("soundness", format!("N = {} > bound {}", r.true_count, r.localized_zykov));
    }
    if r.localized_zykov > r.zykov_classical {
        return violated(
            "dominance",
            format!("localized {} > Zykov {}", r.localized_zykov, r.zykov_classical),
        );
    }
    if r.t <= r.omega && r.is_tight != r.extremal_certificate.is_some() {
        return violated(
            "equality-characterization",
            format!("tight = {} but certificate = {:?}", r.is_tight, r.extremal_certificate),
        );
    }
    if r.vertex_localized_turan.is_negative() || BigInt::from(r.m) > r.vertex_localized_turan {
        return violated(
            "vertex-localized-turan",
            format!("m = {} > {}", r.m, r.vertex_localized_turan),
        );
    }
    if r.edge_localized_sum > r.edge_localized_cap {
        return violated(
            "edge-localized-turan",
            format!("{} > {}", r.edge_localized_sum, r.edge_localized_cap),
        );
    }
    if r.kirsch_nir_sum > r.kirsch_nir_cap {
        return violated("kirsch-nir", format!("{} > {}", r.kirsch_nir_sum, r.kirsch_nir_cap));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::vertex_clique_numbers;
    use crate::graph::generate_complete_multipartite;
    use crate::rational::ratio;

    fn octahedron() -> Graph {
        generate_complete_multipartite(&PartSpec::new(vec![2, 2, 2]).unwrap())
    }

    fn lz(g: &Graph, t: usize) -> Rational {
        localized_zykov_bound(g, t, &vertex_clique_numbers(g)).unwrap()
    }

    #[test]
    fn localized_examples() {
        assert_eq!(lz(&octahedron(), 3), int(8));
        assert_eq!(lz(&Graph::cycle(5), 2), ratio(25, 4));
        assert_eq!(lz(&Graph::complete(4), 2), int(6));
        assert_eq!(
            localized_zykov_bound(&Graph::complete(4), 1, &vertex_clique_numbers(&Graph::complete(4))),
            Err(BoundError::InvalidOrder(1))
        );
        assert!(matches!(
            localized_zykov_bound(&Graph::complete(4), 2, &CliqueProfile::from_orders(vec![4; 3])),
            Err(BoundError::ProfileMismatch { .. })
        ));
    }

    #[test]
    fn classical_examples() {
        assert_eq!(zykov_bound(6, 3, 3), int(8));
        assert_eq!(zykov_bound(4, 4, 2), int(6));
        assert_eq!(zykov_bound(9, 2, 3), int(0));
        assert_eq!(turan_bound(6, 3), int(12));
        assert_eq!(turan_bound(7, 1), int(0));
        for n in 0..12 {
            for r in 1..8 {
                assert_eq!(turan_bound(n, r), zykov_bound(n, r, 2));
            }
        }
    }

    #[test]
    fn edge_localized_examples() {
        assert_eq!(edge_localized_turan_sum(&Graph::complete(4)), int(8));
        assert_eq!(edge_localized_cap(4), int(8));
        assert_eq!(edge_localized_turan_sum(&Graph::cycle(5)), int(10));
        assert_eq!(edge_localized_turan_sum(&Graph::empty(4)), int(0));
    }

    #[test]
    fn vertex_localized_examples() {
        let c5 = Graph::cycle(5);
        let p = vertex_clique_numbers(&c5);
        assert_eq!(vertex_localized_turan_value(&c5, &p), ratio(25, 4));
        assert_eq!(vertex_localized_turan_bound(&c5, &p), BigInt::from(6));
        let k4 = Graph::complete(4);
        assert_eq!(vertex_localized_turan_bound(&k4, &vertex_clique_numbers(&k4)), BigInt::from(6));
    }

    #[test]
    fn kirsch_nir_examples() {
        assert_eq!(kirsch_nir_sum(&Graph::complete(4), 2), Ok(int(16)));
        assert_eq!(kirsch_nir_sum(&Graph::cycle(5), 2), Ok(int(20)));
        assert_eq!(kirsch_nir_sum(&Graph::petersen(), 3), Ok(int(0)));
        let copies = kirsch_nir_copies(&Graph::paw(), 2, &mut WorkBudget::unlimited()).unwrap();
        let alphas: Vec<usize> = copies.iter().map(|k| k.alpha).collect();
        assert_eq!(alphas, vec![3, 3, 2, 3]);
        for t in 2..6 {
            for a in t..20 {
                assert!(kirsch_nir_weight(a + 1, t) < kirsch_nir_weight(a, t));
            }
        }
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(is_regular_complete_multipartite(&octahedron()), Some(PartSpec::new(vec![2, 2, 2]).unwrap()));
        assert_eq!(is_regular_complete_multipartite(&Graph::cycle(5)), None);
        let star = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(is_regular_complete_multipartite(&star), None);
        assert_eq!(is_regular_complete_multipartite(&Graph::complete(3)), Some(PartSpec::regular(1, 3).unwrap()));
        assert_eq!(is_regular_complete_multipartite(&Graph::empty(4)), Some(PartSpec::regular(4, 1).unwrap()));
        assert_eq!(is_regular_complete_multipartite(&Graph::empty(0)), None);
    }

    #[test]
    fn report_examples() {
        let r = bound_report(&octahedron(), 3).unwrap();
        assert!(r.is_tight);
        assert_eq!(r.extremal_certificate, Some(PartSpec::new(vec![2, 2, 2]).unwrap()));
        assert_eq!(r.true_count, BigUint::from(8u8));
        assert_eq!(r.gap(), int(0));

        let r = bound_report(&Graph::cycle(5), 2).unwrap();
        assert!(!r.is_tight);
        assert_eq!(r.extremal_certificate, None);
        assert_eq!(r.gap(), ratio(5, 4));
        assert_eq!(r.turan, Some(ratio(25, 4)));

        let r = bound_report(&Graph::empty(3), 2).unwrap();
        assert_eq!(r.true_count, BigUint::zero());
        assert_eq!(r.localized_zykov, int(0));
        assert!(r.is_tight);

        let r = bound_report(&Graph::empty(0), 4).unwrap();
        assert!(r.is_tight);
        assert_eq!(r.localized_zykov, int(0));
        assert_eq!(r.zykov_classical, int(0));
        assert_eq!(r.kirsch_nir_cap, int(0));
    }

    #[test]
    fn report_propagates_budget() {
        let g = Graph::complete(10);
        assert!(matches!(
            try_bound_report(&g, 3, &mut WorkBudget::limited(2)),
            Err(BoundError::Clique(CliqueError::BudgetExceeded { limit: 2 }))
        ));
    }

    #[test]
    fn t_two_recovery_on_small_graphs() {
        for g in [Graph::paw(), Graph::petersen(), Graph::cycle(7), octahedron(), Graph::empty(2)] {
            let p = vertex_clique_numbers(&g);
            assert_eq!(vertex_localized_turan_value(&g, &p), localized_zykov_bound(&g, 2, &p).unwrap());
        }
    }
}
