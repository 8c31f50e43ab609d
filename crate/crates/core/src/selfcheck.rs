//! Built-in corpus and the invariant suite behind `locbound selfcheck`.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::bounds::{
    count_to_rational, edge_localized_cap, is_regular_complete_multipartite, try_edge_localized_turan_sum,
    try_kirsch_nir_sum, vertex_localized_turan_value, zykov_bound, BoundError,
};
use crate::clique::{
    for_each_clique, try_count_cliques, try_max_clique_containing, try_vertex_clique_numbers, CliqueError,
    CliqueProfile, WorkBudget,
};
use crate::graph::{generate_complete_multipartite, generate_random, Graph, PartSpec};
use crate::oracle::{brute_count_cliques, brute_kirsch_nir_alpha, brute_vertex_clique_numbers};
use crate::rational::{int, Rational};
use crate::simplex::{transfer, PointSampler, Potential, SimplexError};

/// Small named graphs exercising every edge case the bounds care about.
pub fn named_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("K1".into(), Graph::complete(1)),
        ("K2".into(), Graph::complete(2)),
        ("K3".into(), Graph::complete(3)),
        ("K4".into(), Graph::complete(4)),
        ("K5".into(), Graph::complete(5)),
        ("empty3".into(), Graph::empty(3)),
        ("P3".into(), Graph::path(3)),
        ("P5".into(), Graph::path(5)),
        ("C4".into(), Graph::cycle(4)),
        ("C5".into(), Graph::cycle(5)),
        ("C7".into(), Graph::cycle(7)),
        ("paw".into(), Graph::paw()),
        ("petersen".into(), Graph::petersen()),
        ("K2+K1".into(), Graph::from_edges(3, [(0, 1)]).expect("valid")),
        ("2K3".into(), Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).expect("valid")),
    ];
    for sizes in [vec![1, 3], vec![1, 2], vec![2, 3, 1], vec![1, 1, 2, 2]] {
        let spec = PartSpec::new(sizes).expect("valid");
        out.push((format!("K{spec}"), generate_complete_multipartite(&spec)));
    }
    out
}

/// Regular complete multipartite graphs `K_{s×r}` for `s ∈ 1..=3`,
/// `r ∈ 2..=4`, `s·r <= 12`.
pub fn regular_multipartite_family() -> Vec<(String, PartSpec, Graph)> {
    let mut out = Vec::new();
    for s in 1..=3 {
        for r in 2..=4 {
            if s * r <= 12 {
                let spec = PartSpec::regular(s, r).expect("valid");
                let g = generate_complete_multipartite(&spec);
                out.push((format!("K{spec}"), spec, g));
            }
        }
    }
    out
}

/// `count` seeded `G(n, p)` graphs: graph `k` has `n = n_min + k mod
/// (n_max - n_min + 1)`, `p = [1/4, 1/2, 3/4][k mod 3]` and seed `seed + k`.
pub fn random_corpus(count: usize, n_min: usize, n_max: usize, seed: u64) -> Vec<(String, Graph)> {
    let ps = [Ratio::new(1u64, 4), Ratio::new(1, 2), Ratio::new(3, 4)];
    (0..count)
        .map(|k| {
            let n = n_min + k % (n_max - n_min + 1);
            let p = ps[k % 3];
            let s = seed.wrapping_add(k as u64);
            let g = generate_random(n, p, s).expect("valid parameters");
            (format!("random_n{n}_p{}-{}_s{s}", p.numer(), p.denom()), g)
        })
        .collect()
}

pub type BoundFn = fn(&Graph, usize, &CliqueProfile) -> Result<Rational, BoundError>;

/// The functions under test; replaceable so the suite itself can be tested
/// against a deliberately broken implementation.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub localized_bound: BoundFn,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            localized_bound: crate::bounds::localized_zykov_bound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SelfcheckConfig {
    pub seed: u64,
    pub samples: usize,
    pub budget: Option<u64>,
    pub t_max: usize,
    pub random_graphs: usize,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig { seed: 1, samples: 50, budget: None, t_max: 5, random_graphs: 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SelfcheckError {
    #[error("{graph}: {source}")]
    Budget { graph: String, source: CliqueError },
}

struct Check {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failure: None }
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome { name: self.name, cases: self.cases, failure: self.failure }
    }
}

fn budget_err(graph: &str, e: CliqueError) -> SelfcheckError {
    SelfcheckError::Budget { graph: graph.to_string(), source: e }
}

fn lift<T>(graph: &str, r: Result<T, BoundError>) -> Result<T, SelfcheckError> {
    match r {
        Ok(v) => Ok(v),
        Err(BoundError::Clique(e)) => Err(budget_err(graph, e)),
        Err(e) => panic!("{graph}: unexpected error {e}"),
    }
}

/// Runs every check over the built-in corpus. Budget exhaustion aborts the
/// run; everything else is reported per check.
pub fn run(config: &SelfcheckConfig, hooks: &Hooks) -> Result<Vec<CheckOutcome>, SelfcheckError> {
    let mut corpus = named_corpus();
    corpus.extend(regular_multipartite_family().into_iter().map(|(name, _, g)| (name, g)));
    corpus.extend(random_corpus(config.random_graphs, 6, 12, config.seed));

    let mut oracle_count = Check::new("oracle-count");
    let mut oracle_profile = Check::new("oracle-profile");
    let mut oracle_alpha = Check::new("oracle-alpha");
    let mut soundness = Check::new("soundness");
    let mut dominance = Check::new("dominance");
    let mut characterization = Check::new("equality-characterization");
    let mut t2 = Check::new("t2-recovery");
    let mut edge_turan = Check::new("edge-localized-turan");
    let mut kirsch = Check::new("kirsch-nir");
    let mut nonneg = Check::new("phi-nonnegativity");
    let mut bridge = Check::new("phi-uniform-equality-bridge");
    let mut linear = Check::new("linear-response");
    let mut antisym = Check::new("delta-antisymmetry");
    let mut descent = Check::new("descent-contract");

    for (name, g) in &corpus {
        let mut budget = WorkBudget::new(config.budget);
        let budget = &mut budget;
        let n = g.n();
        let profile = try_vertex_clique_numbers(g, budget).map_err(|e| budget_err(name, e))?;
        let certificate = is_regular_complete_multipartite(g);

        if n <= 16 {
            let brute = brute_vertex_clique_numbers(g).expect("small graph");
            oracle_profile.expect(brute == profile, || format!("{name}: {:?} vs oracle {:?}", profile.c, brute.c));
        }

        let bound2 = lift(name, (hooks.localized_bound)(g, 2, &profile))?;
        let vlt = vertex_localized_turan_value(g, &profile);
        t2.expect(vlt == bound2 && int(g.m() as u64) <= vlt.floor(), || {
            format!("{name}: vertex-localized Turán value {vlt} vs localized bound {bound2}, m = {}", g.m())
        });

        let esum = try_edge_localized_turan_sum(g, budget).map_err(|e| budget_err(name, e))?;
        let cap = edge_localized_cap(n);
        let multi = certificate.as_ref().is_some_and(|c| c.num_parts() >= 2);
        edge_turan.expect(esum <= cap && ((esum == cap) == (multi || n == 0)), || {
            format!("{name}: edge sum {esum} vs n²/2 = {cap}, certificate {certificate:?}")
        });

        for t in 0..=config.t_max.min(n) {
            if n <= 16 {
                let fast = try_count_cliques(g, t, budget).map_err(|e| budget_err(name, e))?.count;
                let brute = brute_count_cliques(g, t).expect("small graph");
                oracle_count.expect(fast == BigUint::from(brute), || format!("{name}, t={t}: {fast} vs oracle {brute}"));
                if t >= 1 {
                    let mut copies = Vec::new();
                    for_each_clique(g, &g.vertices(), t, budget, |c| copies.push(c.to_vec()))
                        .map_err(|e| budget_err(name, e))?;
                    for copy in copies {
                        let a = try_max_clique_containing(g, &copy, budget).map_err(|e| budget_err(name, e))?;
                        let b = brute_kirsch_nir_alpha(g, &copy).expect("clique");
                        oracle_alpha.expect(a == b, || format!("{name}: α({copy:?}) = {a} vs oracle {b}"));
                    }
                }
            }
        }

        for t in 2..=config.t_max {
            let count = count_to_rational(
                &try_count_cliques(g, t, budget).map_err(|e| budget_err(name, e))?.count,
            );
            let bound = lift(name, (hooks.localized_bound)(g, t, &profile))?;
            let zykov = zykov_bound(n, profile.omega, t);
            soundness.expect(count <= bound, || format!("{name}, t={t}: N = {count} > bound {bound}"));
            dominance.expect(bound <= zykov, || format!("{name}, t={t}: bound {bound} > Zykov {zykov}"));
            let tight = count == bound;
            if t <= profile.omega {
                characterization.expect(tight == certificate.is_some(), || {
                    format!("{name}, t={t}: tight = {tight}, certificate = {certificate:?}")
                });
            }
            let ksum = lift(name, try_kirsch_nir_sum(g, t, budget))?;
            let kcap = int(num_bigint::BigInt::from(n).pow(t as u32));
            kirsch.expect(ksum <= kcap, || format!("{name}, t={t}: {ksum} > n^t = {kcap}"));

            if n == 0 {
                continue;
            }
            let pot = Potential::new(g, t, &profile).expect("valid order");
            match pot.verify_nonnegativity(config.samples.max(1), config.seed ^ t as u64) {
                Ok(r) => {
                    nonneg.expect(true, String::new);
                    bridge.expect(r.phi_uniform.is_zero() == tight, || {
                        format!("{name}, t={t}: Φ(uniform) = {}, tight = {tight}", r.phi_uniform)
                    });
                }
                Err(SimplexError::NegativePotential { phi, point }) => {
                    nonneg.expect(false, || format!("{name}, t={t}: Φ = {phi} at {point}"))
                }
                Err(e) => panic!("{name}: {e}"),
            }

            for (k, x) in PointSampler::new(n, config.seed.wrapping_add(t as u64)).take(3).enumerate() {
                let phi_x = pot.phi(&x).expect("dimension");
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        let d = pot.delta(&x, i, j).expect("valid pair");
                        if i < j {
                            let back = pot.delta(&x, j, i).expect("valid pair");
                            antisym.expect(d == -&back, || format!("{name}: δ_{i}{j} = {d}, δ_{j}{i} = {back}"));
                        }
                        if !g.has_edge(i, j) && x.get(j).is_positive() {
                            let eps = x.get(j) * Rational::new((k as i64 + 1).into(), 4.into());
                            let y = transfer(&x, i, j, &eps).expect("eps <= x_j");
                            let lhs = pot.phi(&y).expect("dimension") - &phi_x;
                            let rhs = &eps * &d;
                            linear.expect(lhs == rhs, || format!("{name}, t={t}, ({i},{j}): ΔΦ = {lhs}, εδ = {rhs}"));
                        }
                    }
                }
                let tr = pot.descend(&x).expect("valid start");
                let monotone = tr.steps.iter().all(|s| s.phi_after <= s.phi_before);
                descent.expect(
                    monotone
                        && tr.end_support_is_clique
                        && tr.steps.len() < x.support().len()
                        && !tr.phi_end.is_negative(),
                    || format!("{name}, t={t}: descent from sample {k} broke its contract"),
                );
            }
        }
    }

    Ok(vec![
        oracle_count.done(),
        oracle_profile.done(),
        oracle_alpha.done(),
        soundness.done(),
        dominance.done(),
        characterization.done(),
        t2.done(),
        edge_turan.done(),
        kirsch.done(),
        nonneg.done(),
        bridge.done(),
        linear.done(),
        antisym.done(),
        descent.done(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_matches_criterion_grid() {
        let fam = regular_multipartite_family();
        assert_eq!(fam.len(), 9);
        assert!(fam.iter().all(|(_, spec, g)| spec.order() == g.n()));
    }

    #[test]
    fn random_corpus_is_deterministic() {
        let a = random_corpus(6, 8, 14, 3);
        let b = random_corpus(6, 8, 14, 3);
        assert_eq!(a, b);
        assert_eq!(a[0].1.n(), 8);
        assert_eq!(a[5].1.n(), 13);
    }

    #[test]
    fn default_run_passes() {
        let cfg = SelfcheckConfig { samples: 10, random_graphs: 6, ..Default::default() };
        let outcomes = run(&cfg, &Hooks::default()).unwrap();
        for o in &outcomes {
            assert!(o.passed(), "{}: {:?}", o.name, o.failure);
            assert!(o.cases > 0, "{} ran no cases", o.name);
        }
    }

    fn halved_bound(g: &Graph, t: usize, p: &CliqueProfile) -> Result<Rational, BoundError> {
        Ok(crate::bounds::localized_zykov_bound(g, t, p)? / int(2u32))
    }

    #[test]
    fn broken_bound_is_caught_by_name() {
        let cfg = SelfcheckConfig { samples: 5, random_graphs: 3, ..Default::default() };
        let outcomes = run(&cfg, &Hooks { localized_bound: halved_bound }).unwrap();
        let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect();
        assert!(failed.contains(&"soundness"), "{failed:?}");
        assert!(failed.contains(&"t2-recovery"), "{failed:?}");
    }

    #[test]
    fn tiny_budget_aborts() {
        let cfg = SelfcheckConfig { budget: Some(1), ..Default::default() };
        assert!(matches!(run(&cfg, &Hooks::default()), Err(SelfcheckError::Budget { .. })));
    }
}
