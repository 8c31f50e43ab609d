//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.
//!
//! Runs without the libtest harness so the report reads top to bottom;
//! the process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use locbound::bounds::{
    edge_localized_cap, edge_localized_turan_sum, is_regular_complete_multipartite, kirsch_nir_copies,
    kirsch_nir_sum, localized_zykov_bound, report_with_profile, vertex_localized_turan_bound,
    vertex_localized_turan_value, zykov_bound,
};
use locbound::clique::{count_cliques, vertex_clique_numbers, WorkBudget};
use locbound::oracle::{brute_count_cliques, brute_kirsch_nir_alpha, brute_vertex_clique_numbers};
use locbound::rational::{int, Rational};
use locbound::selfcheck::{named_corpus, random_corpus, regular_multipartite_family};
use locbound::simplex::{transfer, PointSampler, Potential};
use locbound::{BoundReport, CliqueProfile, Graph};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

const SEED: u64 = 20_240_601;
const RANDOM_GRAPHS: usize = 200;
const SAMPLES: usize = 500;
const RESPONSE_TUPLES: usize = 1000;
const DESCENT_STARTS: usize = 50;
const ORACLE_N_MAX: usize = 16;
const T_RANGE: std::ops::RangeInclusive<usize> = 2..=5;

struct Entry {
    name: String,
    graph: Graph,
    profile: CliqueProfile,
    /// Reports for `t ∈ 2..=5`, in order.
    reports: Vec<BoundReport>,
    from_regular_generator: bool,
}

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn build_corpus() -> Vec<Entry> {
    let mut raw: Vec<(String, Graph, bool)> = Vec::new();
    raw.extend(named_corpus().into_iter().map(|(n, g)| (n, g, false)));
    raw.extend(regular_multipartite_family().into_iter().map(|(n, _, g)| (n, g, true)));
    raw.extend(random_sweep().into_iter().map(|(n, g)| (n, g, false)));
    raw.into_par_iter()
        .map(|(name, graph, from_regular_generator)| {
            let profile = vertex_clique_numbers(&graph);
            let reports = T_RANGE
                .map(|t| report_with_profile(&graph, t, &profile, &mut WorkBudget::unlimited()).expect("report"))
                .collect();
            Entry { name, graph, profile, reports, from_regular_generator }
        })
        .collect()
}

fn random_sweep() -> Vec<(String, Graph)> {
    random_corpus(RANDOM_GRAPHS, 8, 14, SEED)
}

fn first_failure<T: Send>(items: Vec<T>, f: impl Fn(T) -> Result<(), String> + Sync + Send) -> Result<(), String> {
    let mut errs: Vec<(usize, String)> = items
        .into_par_iter()
        .enumerate()
        .filter_map(|(k, it)| f(it).err().map(|e| (k, e)))
        .collect();
    errs.sort();
    match errs.into_iter().next() {
        None => Ok(()),
        Some((_, e)) => Err(e),
    }
}

/// Regular complete multipartite family: tight for every `t ≤ r`, with the
/// right certificate.
fn tight_case_reproduction() -> Verdict {
    let mut cases = 0;
    for (name, spec, g) in regular_multipartite_family() {
        let r = spec.num_parts();
        let profile = vertex_clique_numbers(&g);
        for t in 2..=r {
            let n_t = Rational::from_integer(count_cliques(&g, t).count.into());
            let bound = localized_zykov_bound(&g, t, &profile).map_err(|e| e.to_string())?;
            if n_t != bound {
                return Err(format!("{name}, t = {t}: N = {n_t} but bound = {bound}"));
            }
            cases += 1;
        }
        let cert = is_regular_complete_multipartite(&g);
        if cert.as_ref() != Some(&spec) {
            return Err(format!("{name}: certificate {cert:?}, expected {spec}"));
        }
    }
    Ok(format!("{cases} (graph, t) cases tight"))
}

fn soundness(corpus: &[Entry]) -> Verdict {
    let sweep: Vec<&Entry> = corpus.iter().filter(|e| e.name.starts_with("random_")).collect();
    let cases = sweep.len() * T_RANGE.count();
    first_failure(sweep, |e| {
        for r in &e.reports {
            let n_t = Rational::from_integer(r.true_count.clone().into());
            let zykov = zykov_bound(r.n, r.omega, r.t);
            if !(n_t <= r.localized_zykov && r.localized_zykov <= zykov) {
                return Err(format!(
                    "{}, t = {}: N = {n_t}, localized = {}, zykov = {zykov}",
                    e.name, r.t, r.localized_zykov
                ));
            }
        }
        Ok(())
    })?;
    Ok(format!("{cases} (graph, t) cases"))
}

fn strictness(corpus: &[Entry]) -> Verdict {
    let sweep: Vec<&Entry> = corpus.iter().filter(|e| e.name.starts_with("random_")).collect();
    let non_regular = sweep.iter().filter(|e| is_regular_complete_multipartite(&e.graph).is_none()).count();
    first_failure(sweep, |e| {
        let cert = is_regular_complete_multipartite(&e.graph);
        let omega = e.profile.omega;
        let in_scope = |r: &&BoundReport| r.t <= omega;
        if cert.is_none() && !e.reports.iter().filter(in_scope).any(|r| !r.is_tight) {
            return Err(format!("{}: not regular complete multipartite yet tight for every t <= ω", e.name));
        }
        for r in e.reports.iter().filter(in_scope) {
            if r.is_tight && r.extremal_certificate.is_none() {
                return Err(format!("{}, t = {}: tight without a certificate", e.name, r.t));
            }
        }
        Ok(())
    })?;
    Ok(format!("{non_regular} non-extremal graphs each strict somewhere"))
}

fn t2_recovery(corpus: &[Entry]) -> Verdict {
    first_failure(corpus.iter().collect(), |e| {
        let value = vertex_localized_turan_value(&e.graph, &e.profile);
        let localized = &e.reports[0].localized_zykov;
        if &value != localized {
            return Err(format!("{}: pre-floor value {value} != localized bound {localized}", e.name));
        }
        let floor = vertex_localized_turan_bound(&e.graph, &e.profile);
        if BigInt::from(e.graph.m()) > floor {
            return Err(format!("{}: m = {} exceeds {floor}", e.name, e.graph.m()));
        }
        Ok(())
    })?;
    Ok(format!("{} graphs", corpus.len()))
}

fn phi_nonnegativity(corpus: &[Entry]) -> Verdict {
    let jobs: Vec<(&Entry, usize)> = corpus.iter().flat_map(|e| T_RANGE.map(move |t| (e, t))).collect();
    let cases = jobs.len();
    first_failure(jobs, |(e, t)| {
        let pot = Potential::new(&e.graph, t, &e.profile).map_err(|err| err.to_string())?;
        let rep = pot
            .verify_nonnegativity(SAMPLES, SEED ^ t as u64)
            .map_err(|err| format!("{}, t = {t}: {err}", e.name))?;
        if rep.min_phi.is_negative() {
            return Err(format!("{}, t = {t}: Φ = {} at {}", e.name, rep.min_phi, rep.argmin));
        }
        let report = &e.reports[t - 2];
        if rep.phi_uniform.is_zero() != report.is_tight {
            return Err(format!(
                "{}, t = {t}: Φ(uniform) = {} but tight = {}",
                e.name, rep.phi_uniform, report.is_tight
            ));
        }
        // Zero at uniform for t <= ω only on the regular family's shape.
        if t <= e.profile.omega && rep.phi_uniform.is_zero() != report.extremal_certificate.is_some() {
            return Err(format!("{}, t = {t}: Φ(uniform) = {} disagrees with certificate", e.name, rep.phi_uniform));
        }
        if e.from_regular_generator && t <= e.profile.omega && !rep.phi_uniform.is_zero() {
            return Err(format!("{}, t = {t}: Φ(uniform) = {} on a tight case", e.name, rep.phi_uniform));
        }
        Ok(())
    })?;
    Ok(format!("{cases} (graph, t) cases, {} points each", SAMPLES + 1))
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

fn linear_response(corpus: &[Entry]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let candidates: Vec<&Entry> = corpus
        .iter()
        .filter(|e| e.graph.n() >= 2 && 2 * e.graph.m() < e.graph.n() * (e.graph.n() - 1))
        .collect();
    let mut tuples = Vec::with_capacity(RESPONSE_TUPLES);
    while tuples.len() < RESPONSE_TUPLES {
        let e = candidates[below(&mut rng, candidates.len())];
        let n = e.graph.n();
        let t = 2 + below(&mut rng, 4);
        let x = PointSampler::new(n, rng.next_u64()).next().expect("n >= 1");
        let (i, j) = (below(&mut rng, n), below(&mut rng, n));
        if i == j || e.graph.has_edge(i, j) {
            continue;
        }
        // ε on a grid over [0, x_j]; negative amounts are the transfer j <- i.
        let eps = x.get(j) * Rational::new(below(&mut rng, 1025).into(), 1024.into());
        tuples.push((e, t, x, i, j, eps));
    }
    first_failure(tuples, |(e, t, x, i, j, eps)| {
        let pot = Potential::new(&e.graph, t, &e.profile).map_err(|err| err.to_string())?;
        let y = transfer(&x, i, j, &eps).map_err(|err| err.to_string())?;
        let lhs = pot.phi(&y).map_err(|err| err.to_string())? - pot.phi(&x).map_err(|err| err.to_string())?;
        let rhs = &eps * pot.delta(&x, i, j).map_err(|err| err.to_string())?;
        if lhs != rhs {
            return Err(format!("{}, t = {t}, ({i},{j}), ε = {eps}: ΔΦ = {lhs}, ε·δ = {rhs}", e.name));
        }
        Ok(())
    })?;
    Ok(format!("{RESPONSE_TUPLES} tuples"))
}

fn descent_contract(corpus: &[Entry]) -> Verdict {
    let jobs: Vec<(&Entry, usize)> = corpus.iter().flat_map(|e| T_RANGE.map(move |t| (e, t))).collect();
    let runs = jobs.len() * DESCENT_STARTS;
    first_failure(jobs, |(e, t)| {
        let pot = Potential::new(&e.graph, t, &e.profile).map_err(|err| err.to_string())?;
        let seed = SEED.wrapping_add((t as u64) << 32).wrapping_add(e.graph.n() as u64);
        for (k, x0) in PointSampler::new(e.graph.n(), seed).take(DESCENT_STARTS).enumerate() {
            let trace = pot.descend(&x0).map_err(|err| err.to_string())?;
            let here = || format!("{}, t = {t}, start {k}", e.name);
            if trace.steps.len() + 1 > x0.support().len().max(1) {
                return Err(format!("{}: {} steps from support {}", here(), trace.steps.len(), x0.support().len()));
            }
            let mut prev = pot.phi(&x0).map_err(|err| err.to_string())?;
            for s in &trace.steps {
                if s.phi_before != prev || s.phi_after > s.phi_before {
                    return Err(format!("{}: Φ increased at step ({}, {})", here(), s.i, s.j));
                }
                prev = s.phi_after.clone();
            }
            if prev != trace.phi_end || pot.phi(&trace.end).map_err(|err| err.to_string())? != trace.phi_end {
                return Err(format!("{}: recorded end value is inconsistent", here()));
            }
            let support = trace.end.support_vec();
            if !e.graph.is_clique(&support) || !trace.end_support_is_clique {
                return Err(format!("{}: end support {support:?} is not a clique", here()));
            }
        }
        Ok(())
    })?;
    Ok(format!("{runs} descents"))
}

fn oracle_equivalence(corpus: &[Entry]) -> Verdict {
    let small: Vec<&Entry> = corpus.iter().filter(|e| e.graph.n() <= ORACLE_N_MAX).collect();
    let graphs = small.len();
    first_failure(small, |e| {
        let g = &e.graph;
        let oracle_profile = brute_vertex_clique_numbers(g).map_err(|err| err.to_string())?;
        if oracle_profile != e.profile {
            return Err(format!("{}: profile {:?} vs oracle {:?}", e.name, e.profile.c, oracle_profile.c));
        }
        for t in 1..=e.profile.omega + 1 {
            let fast = count_cliques(g, t).count;
            let slow = brute_count_cliques(g, t).map_err(|err| err.to_string())?;
            if fast != slow.into() {
                return Err(format!("{}, t = {t}: count {fast} vs oracle {slow}", e.name));
            }
        }
        for t in T_RANGE {
            let copies = kirsch_nir_copies(g, t, &mut WorkBudget::unlimited()).map_err(|err| err.to_string())?;
            for c in copies {
                let alpha = brute_kirsch_nir_alpha(g, &c.copy).map_err(|err| err.to_string())?;
                if alpha != c.alpha {
                    return Err(format!("{}: α({:?}) = {} vs oracle {alpha}", e.name, c.copy, c.alpha));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{graphs} graphs with n <= {ORACLE_N_MAX}"))
}

fn comparison_bounds(corpus: &[Entry]) -> Verdict {
    first_failure(corpus.iter().collect(), |e| {
        let n = e.graph.n();
        let sum = edge_localized_turan_sum(&e.graph);
        let cap = edge_localized_cap(n);
        if sum > cap {
            return Err(format!("{}: edge-localized sum {sum} > {cap}", e.name));
        }
        let multi_part = is_regular_complete_multipartite(&e.graph).is_some_and(|s| s.num_parts() >= 2);
        if (sum == cap) != multi_part {
            return Err(format!("{}: edge-localized equality = {} but extremal = {multi_part}", e.name, sum == cap));
        }
        if e.from_regular_generator && sum != cap {
            return Err(format!("{}: generator graph not edge-localized tight", e.name));
        }
        for t in T_RANGE {
            let kn = kirsch_nir_sum(&e.graph, t).map_err(|err| err.to_string())?;
            let kn_cap = int(BigInt::from(n).pow(t as u32));
            if kn > kn_cap {
                return Err(format!("{}, t = {t}: Kirsch–Nir sum {kn} > {kn_cap}", e.name));
            }
        }
        Ok(())
    })?;
    // Regression fixture: the localized bound can be tight while the
    // Kirsch–Nir sum stays strictly below its cap.
    let c5 = Graph::cycle(5);
    let r = report_with_profile(&c5, 3, &vertex_clique_numbers(&c5), &mut WorkBudget::unlimited())
        .map_err(|e| e.to_string())?;
    if !(r.is_tight && r.kirsch_nir_sum < r.kirsch_nir_cap) {
        return Err("C5, t = 3: expected localized tight with Kirsch–Nir strict".into());
    }
    let found = corpus
        .iter()
        .flat_map(|e| e.reports.iter().map(move |r| (e, r)))
        .filter(|(_, r)| r.is_tight && !r.kirsch_nir_equal)
        .count();
    Ok(format!("{} graphs, {found} (graph, t) cases separate the two localizations", corpus.len()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = build_corpus();
    println!(
        "acceptance: corpus of {} graphs built in {:.2?} (seed {SEED})",
        corpus.len(),
        started.elapsed()
    );

    let criteria: Vec<Criterion<'_>> = vec![
        ("tight-case reproduction", Box::new(tight_case_reproduction)),
        ("soundness sweep", Box::new(|| soundness(&corpus))),
        ("strictness direction", Box::new(|| strictness(&corpus))),
        ("t = 2 recovery", Box::new(|| t2_recovery(&corpus))),
        ("potential nonnegativity", Box::new(|| phi_nonnegativity(&corpus))),
        ("linear-response identity", Box::new(|| linear_response(&corpus))),
        ("descent contract", Box::new(|| descent_contract(&corpus))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("comparison bounds", Box::new(|| comparison_bounds(&corpus))),
    ];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let verdict = check();
        let dt = t0.elapsed();
        total += dt;
        match verdict {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{dt:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{dt:.2?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed [{total:.2?}]", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
