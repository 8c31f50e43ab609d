//! The simplex potential
//!
//! ```text
//! Φ(G, x) = A(G, x) - B(G, x),
//! A(G, x) = Σ_v x_v C(c(v), t) / c(v)^t,
//! B(G, x) = Σ_{t-cliques K} Π_{v ∈ K} x_v,
//! ```
//!
//! on the standard simplex, its exact response to moving mass between two
//! non-adjacent coordinates, and a support-shrinking descent that ends on a
//! clique. Φ is nonnegative everywhere; evaluating it at the uniform point
//! is equivalent to the localized clique-count bound, so Φ(uniform) = 0 is
//! exactly the tight case.
//!
//! All arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::bounds::BoundError;
use crate::clique::{for_each_clique, max_clique_within, CliqueProfile, WorkBudget};
use crate::graph::Graph;
use crate::rational::{clique_weight, int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("point has {found} coordinates, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a point of the simplex: {0}")]
    NotOnSimplex(String),
    #[error("the simplex over zero coordinates is empty")]
    EmptySimplex,
    #[error("vertex {vertex} out of range for dimension {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("transfer needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("transfer amount {epsilon} outside [0, {available}]")]
    InvalidEpsilon { epsilon: String, available: String },
    #[error("Φ = {phi} < 0 at {point}")]
    NegativePotential { phi: String, point: String },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// A point `x` with `x_v >= 0` and `Σ x_v = 1`, with its support cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPoint {
    x: Vec<Rational>,
    support: VertexSet,
}

impl SimplexPoint {
    pub fn new(x: Vec<Rational>) -> Result<Self, SimplexError> {
        if x.is_empty() {
            return Err(SimplexError::EmptySimplex);
        }
        if let Some((v, xv)) = x.iter().enumerate().find(|(_, xv)| xv.is_negative()) {
            return Err(SimplexError::NotOnSimplex(format!("x[{v}] = {xv} is negative")));
        }
        let total: Rational = x.iter().sum();
        if !total.is_one() {
            return Err(SimplexError::NotOnSimplex(format!("coordinates sum to {total}")));
        }
        let support = VertexSet::from_iter_with_capacity(
            x.len(),
            x.iter().enumerate().filter(|(_, xv)| xv.is_positive()).map(|(v, _)| v),
        );
        Ok(SimplexPoint { x, support })
    }

    pub fn uniform(n: usize) -> Result<Self, SimplexError> {
        if n == 0 {
            return Err(SimplexError::EmptySimplex);
        }
        Self::uniform_on(n, &(0..n).collect::<Vec<_>>())
    }

    /// Equal mass on each vertex of `on`, zero elsewhere.
    pub fn uniform_on(n: usize, on: &[usize]) -> Result<Self, SimplexError> {
        if n == 0 {
            return Err(SimplexError::EmptySimplex);
        }
        let mut x = vec![Rational::zero(); n];
        let share = Rational::new(BigInt::one(), BigInt::from(on.len().max(1)));
        for &v in on {
            if v >= n {
                return Err(SimplexError::VertexOutOfRange { vertex: v, n });
            }
            x[v] = share.clone();
        }
        Self::new(x)
    }

    /// All mass on `v`.
    pub fn vertex(n: usize, v: usize) -> Result<Self, SimplexError> {
        Self::uniform_on(n, &[v])
    }

    /// `x_v = w_v / Σ w`.
    pub fn from_weights(w: &[u64]) -> Result<Self, SimplexError> {
        let total: u128 = w.iter().map(|&k| k as u128).sum();
        if total == 0 {
            return Err(SimplexError::NotOnSimplex("all weights are zero".into()));
        }
        let total = BigInt::from(total);
        Self::new(w.iter().map(|&k| Rational::new(BigInt::from(k), total.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.x
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.x[v]
    }

    pub fn support(&self) -> &VertexSet {
        &self.support
    }

    pub fn support_vec(&self) -> Vec<usize> {
        self.support.iter().collect()
    }

    fn check_vertex(&self, v: usize) -> Result<(), SimplexError> {
        if v < self.dim() {
            Ok(())
        } else {
            Err(SimplexError::VertexOutOfRange { vertex: v, n: self.dim() })
        }
    }

    /// Coordinates as integers over a common denominator `D`: returns
    /// `(a, D)` with `x_v = a_v / D`.
    fn common_denominator(&self) -> (Vec<BigInt>, BigInt) {
        let d = self
            .x
            .iter()
            .filter(|v| v.is_positive())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let a = self
            .x
            .iter()
            .map(|v| v.numer() * (&d / v.denom()))
            .collect();
        (a, d)
    }
}

/// Moves `epsilon` of mass from coordinate `j` to coordinate `i`.
pub fn transfer(x: &SimplexPoint, i: usize, j: usize, epsilon: &Rational) -> Result<SimplexPoint, SimplexError> {
    x.check_vertex(i)?;
    x.check_vertex(j)?;
    if i == j {
        return Err(SimplexError::SameVertex(i));
    }
    if epsilon.is_negative() || epsilon > x.get(j) {
        return Err(SimplexError::InvalidEpsilon {
            epsilon: epsilon.to_string(),
            available: x.get(j).to_string(),
        });
    }
    let mut y = x.clone();
    y.x[i] += epsilon;
    y.x[j] -= epsilon;
    if y.x[i].is_positive() {
        y.support.insert(i);
    }
    if y.x[j].is_zero() {
        y.support.remove(j);
    }
    Ok(y)
}

/// `(A, B, Φ)` at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiEvaluation {
    pub a: Rational,
    pub b: Rational,
    pub phi: Rational,
}

/// Φ for a fixed graph, clique order and clique profile.
#[derive(Debug, Clone)]
pub struct Potential<'g> {
    g: &'g Graph,
    t: usize,
    weights: Vec<Rational>,
}

impl<'g> Potential<'g> {
    pub fn new(g: &'g Graph, t: usize, profile: &CliqueProfile) -> Result<Self, SimplexError> {
        if t < 2 {
            return Err(BoundError::InvalidOrder(t).into());
        }
        if profile.c.len() != g.n() {
            return Err(BoundError::ProfileMismatch { profile: profile.c.len(), n: g.n() }.into());
        }
        let weights = profile.c.iter().map(|&c| clique_weight(c, t)).collect();
        Ok(Potential { g, t, weights })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn order(&self) -> usize {
        self.t
    }

    /// `C(c(v), t) / c(v)^t`.
    pub fn vertex_weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    fn check_dim(&self, x: &SimplexPoint) -> Result<(), SimplexError> {
        if x.dim() != self.g.n() {
            Err(SimplexError::DimensionMismatch { expected: self.g.n(), found: x.dim() })
        } else {
            Ok(())
        }
    }

    /// Σ over `k`-cliques inside `within ∩ Supp(x)` of the product of their
    /// coordinates.
    fn clique_polynomial(&self, x: &SimplexPoint, within: &VertexSet, k: usize) -> Rational {
        let (a, d) = x.common_denominator();
        let region = within.intersection(x.support());
        let mut total = BigInt::zero();
        for_each_clique(self.g, &region, k, &mut WorkBudget::unlimited(), |c| {
            let mut p = a[c[0]].clone();
            for &v in &c[1..] {
                p *= &a[v];
            }
            total += p;
        })
        .expect("unlimited budget");
        Rational::new(total, d.pow(k as u32))
    }

    pub fn eval(&self, x: &SimplexPoint) -> Result<PhiEvaluation, SimplexError> {
        self.check_dim(x)?;
        let a: Rational = x
            .support()
            .iter()
            .map(|v| &self.weights[v] * x.get(v))
            .sum();
        let b = self.clique_polynomial(x, &self.g.vertices(), self.t);
        Ok(PhiEvaluation { phi: &a - &b, a, b })
    }

    pub fn phi(&self, x: &SimplexPoint) -> Result<Rational, SimplexError> {
        Ok(self.eval(x)?.phi)
    }

    /// `Σ_{(t-1)-cliques K ⊆ N(i)} Π_{v ∈ K} x_v`.
    pub fn neighborhood_sum(&self, x: &SimplexPoint, i: usize) -> Result<Rational, SimplexError> {
        self.check_dim(x)?;
        x.check_vertex(i)?;
        Ok(self.clique_polynomial(x, self.g.neighbors(i), self.t - 1))
    }

    /// `δ_ij(x)`: for non-adjacent `i, j`, the rate of change of Φ when mass
    /// moves from `j` to `i`.
    pub fn delta(&self, x: &SimplexPoint, i: usize, j: usize) -> Result<Rational, SimplexError> {
        self.check_dim(x)?;
        x.check_vertex(i)?;
        x.check_vertex(j)?;
        if i == j {
            return Err(SimplexError::SameVertex(i));
        }
        let weight_gap = &self.weights[i] - &self.weights[j];
        let clique_gap = self.neighborhood_sum(x, i)? - self.neighborhood_sum(x, j)?;
        Ok(weight_gap - clique_gap)
    }

    /// First non-adjacent pair `(a, b)`, `a < b`, of the support in
    /// lexicographic order.
    fn first_nonadjacent_pair(&self, x: &SimplexPoint) -> Option<(usize, usize)> {
        let s = x.support_vec();
        for (k, &a) in s.iter().enumerate() {
            if let Some(&b) = s[k + 1..].iter().find(|&&b| !self.g.has_edge(a, b)) {
                return Some((a, b));
            }
        }
        None
    }

    /// Repeatedly empties one coordinate of a non-adjacent support pair until
    /// the support induces a clique.
    ///
    /// The pair is the lexicographically first non-adjacent pair `(a, b)` of
    /// the support. Mass moves toward the endpoint that makes `δ <= 0`; on
    /// `δ = 0` it moves to `a`. Each step removes one support vertex and
    /// never increases Φ.
    pub fn descend(&self, x0: &SimplexPoint) -> Result<DescentTrace, SimplexError> {
        let phi_start = self.phi(x0)?;
        let mut x = x0.clone();
        let mut phi = phi_start.clone();
        let mut steps = Vec::new();
        while let Some((a, b)) = self.first_nonadjacent_pair(&x) {
            let d = self.delta(&x, a, b)?;
            let (i, j, delta_ij) = if d.is_positive() { (b, a, -d) } else { (a, b, d) };
            let epsilon = x.get(j).clone();
            let y = transfer(&x, i, j, &epsilon)?;
            let phi_after = self.phi(&y)?;
            steps.push(TransferStep {
                i,
                j,
                epsilon,
                delta_ij,
                phi_before: phi,
                phi_after: phi_after.clone(),
            });
            x = y;
            phi = phi_after;
        }
        let end_support = x.support_vec();
        let end_support_is_clique = self.g.is_clique(&end_support);
        let omega_end = max_clique_within(self.g, x.support(), &mut WorkBudget::unlimited())
            .expect("unlimited budget");
        Ok(DescentTrace {
            start: x0.clone(),
            steps,
            end: x,
            phi_start,
            phi_end: phi,
            end_support_is_clique,
            omega_end,
        })
    }
}

/// One application of the transfer map with its effect on Φ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferStep {
    /// Receiving vertex.
    pub i: usize,
    /// Donating vertex; its whole mass moves.
    pub j: usize,
    pub epsilon: Rational,
    pub delta_ij: Rational,
    pub phi_before: Rational,
    pub phi_after: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTrace {
    pub start: SimplexPoint,
    pub steps: Vec<TransferStep>,
    pub end: SimplexPoint,
    pub phi_start: Rational,
    pub phi_end: Rational,
    pub end_support_is_clique: bool,
    /// Clique number of the subgraph induced by the end support.
    pub omega_end: usize,
}

#[derive(Serialize)]
struct StepRecord {
    #[serde(rename = "type")]
    kind: &'static str,
    step: usize,
    i: usize,
    j: usize,
    epsilon: String,
    delta: String,
    phi: String,
}

impl DescentTrace {
    /// One JSON object per line: `type, step, i, j, epsilon, delta, phi`, rationals
    /// as `p/q` strings. `phi` is the value after the step.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let rec = StepRecord {
                kind: "step",
                step: k + 1,
                i: s.i,
                j: s.j,
                epsilon: s.epsilon.to_string(),
                delta: s.delta_ij.to_string(),
                phi: s.phi_after.to_string(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

/// Where a sampled point came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Uniform,
    Vertex(usize),
    Sample(usize),
}

impl std::fmt::Display for PointKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointKind::Uniform => write!(f, "uniform point"),
            PointKind::Vertex(v) => write!(f, "vertex point e_{v}"),
            PointKind::Sample(k) => write!(f, "random sample #{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegativityReport {
    pub evaluated: usize,
    pub min_phi: Rational,
    pub argmin: PointKind,
    pub phi_uniform: Rational,
}

/// Largest value drawn for a random point weight.
pub const SAMPLE_WEIGHT_MAX: u64 = 1024;

/// Pseudorandom simplex points.
///
/// Stream: `ChaCha8Rng::seed_from_u64(seed)`. For sample `k` (from 0), odd
/// `k` first picks a support by drawing one `next_u32()` per vertex and
/// keeping vertices whose low bit is 1 (an empty draw keeps vertex
/// `next_u32() % n`); even `k` uses every vertex. Each support vertex then
/// gets weight `1 + next_u32() % 1024`, and weights are normalized to sum 1.
pub struct PointSampler {
    n: usize,
    rng: ChaCha8Rng,
    k: usize,
}

impl PointSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        PointSampler { n, rng: ChaCha8Rng::seed_from_u64(seed), k: 0 }
    }
}

impl Iterator for PointSampler {
    type Item = SimplexPoint;

    fn next(&mut self) -> Option<SimplexPoint> {
        if self.n == 0 {
            return None;
        }
        let n = self.n;
        let mut keep = vec![true; n];
        if self.k % 2 == 1 {
            for kv in keep.iter_mut() {
                *kv = self.rng.next_u32() & 1 == 1;
            }
            if !keep.contains(&true) {
                keep[self.rng.next_u32() as usize % n] = true;
            }
        }
        let w: Vec<u64> = keep
            .iter()
            .map(|&on| if on { 1 + self.rng.next_u32() as u64 % SAMPLE_WEIGHT_MAX } else { 0 })
            .collect();
        self.k += 1;
        Some(SimplexPoint::from_weights(&w).expect("some weight is positive"))
    }
}

impl Potential<'_> {
    /// Minimum of Φ over the uniform point, every vertex point and `samples`
    /// pseudorandom points. A negative value is reported as an error.
    pub fn verify_nonnegativity(&self, samples: usize, seed: u64) -> Result<NonnegativityReport, SimplexError> {
        if samples == 0 {
            return Err(SimplexError::NoSamples);
        }
        let n = self.g.n();
        let phi_uniform = self.phi(&SimplexPoint::uniform(n)?)?;
        let mut best = (phi_uniform.clone(), PointKind::Uniform);
        let mut evaluated = 1;
        let mut consider = |phi: Rational, kind: PointKind| {
            evaluated += 1;
            if phi < best.0 {
                best = (phi, kind);
            }
        };
        for v in 0..n {
            consider(self.phi(&SimplexPoint::vertex(n, v)?)?, PointKind::Vertex(v));
        }
        for (k, x) in PointSampler::new(n, seed).take(samples).enumerate() {
            consider(self.phi(&x)?, PointKind::Sample(k));
        }
        let (min_phi, argmin) = best;
        if min_phi.is_negative() {
            return Err(SimplexError::NegativePotential { phi: min_phi.to_string(), point: argmin.to_string() });
        }
        Ok(NonnegativityReport { evaluated, min_phi, argmin, phi_uniform })
    }
}

/// Structure of one certified minimizer's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportStructure {
    pub support: Vec<usize>,
    /// Parts of `G[Supp]` when it is complete multipartite.
    pub parts: Option<Vec<Vec<usize>>>,
    pub omega: usize,
    pub part_masses: Vec<Rational>,
    pub masses_are_inverse_omega: bool,
}

impl SupportStructure {
    pub fn complete_multipartite(&self) -> bool {
        self.parts.is_some()
    }

    pub fn passes(&self) -> bool {
        self.complete_multipartite() && self.masses_are_inverse_omega
    }

    fn of(g: &Graph, x: &SimplexPoint) -> SupportStructure {
        let support = x.support_vec();
        let induced = g.induced(&support);
        let omega = max_clique_within(&induced, &induced.vertices(), &mut WorkBudget::unlimited())
            .expect("unlimited budget");
        let parts: Option<Vec<Vec<usize>>> = induced
            .multipartite_parts()
            .map(|ps| ps.into_iter().map(|p| p.into_iter().map(|k| support[k]).collect()).collect());
        let part_masses: Vec<Rational> = parts
            .iter()
            .flatten()
            .map(|p| p.iter().map(|&v| x.get(v)).sum())
            .collect();
        let target = Rational::new(BigInt::one(), BigInt::from(omega.max(1)));
        let masses_are_inverse_omega =
            parts.is_some() && part_masses.len() == omega && part_masses.iter().all(|m| *m == target);
        SupportStructure { support, parts, omega, part_masses, masses_are_inverse_omega }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimizerStructure {
    /// `t > ω`: Φ vanishes identically, so every point minimizes it and
    /// no structure is implied.
    Vacuous,
    /// Φ(uniform) > 0, so no point at hand is known to be a global minimizer.
    NotCertified { phi_uniform: Rational },
    /// Φ(uniform) = 0 is the global minimum; the uniform point and (when Φ
    /// vanishes there too) the descent end point are minimizers.
    Certified {
        uniform: SupportStructure,
        end: Option<SupportStructure>,
    },
}

impl MinimizerStructure {
    pub fn passes(&self) -> Option<bool> {
        match self {
            MinimizerStructure::Vacuous | MinimizerStructure::NotCertified { .. } => None,
            MinimizerStructure::Certified { uniform, end } => {
                Some(uniform.passes() && end.as_ref().is_none_or(SupportStructure::passes))
            }
        }
    }
}

/// Checks that certified minimizers have complete multipartite support with
/// every part carrying mass `1/ω` of the support.
pub fn check_minimizer_structure(pot: &Potential<'_>, trace: &DescentTrace) -> Result<MinimizerStructure, SimplexError> {
    let g = pot.graph();
    if pot.weights.iter().all(Zero::is_zero) {
        return Ok(MinimizerStructure::Vacuous);
    }
    let uniform = SimplexPoint::uniform(g.n())?;
    let phi_uniform = pot.phi(&uniform)?;
    if !phi_uniform.is_zero() {
        return Ok(MinimizerStructure::NotCertified { phi_uniform });
    }
    let end = trace.phi_end.is_zero().then(|| SupportStructure::of(g, &trace.end));
    Ok(MinimizerStructure::Certified { uniform: SupportStructure::of(g, &uniform), end })
}

/// `C(k, t) / k^t`: the largest value of `B` on a point supported on a
/// `k`-clique, attained only at the uniform point of that clique.
pub fn clique_support_cap(k: usize, t: usize) -> Rational {
    clique_weight(k, t)
}

pub fn eval_phi(
    g: &Graph,
    t: usize,
    profile: &CliqueProfile,
    x: &SimplexPoint,
) -> Result<PhiEvaluation, SimplexError> {
    Potential::new(g, t, profile)?.eval(x)
}

pub fn delta_ij(
    g: &Graph,
    t: usize,
    profile: &CliqueProfile,
    x: &SimplexPoint,
    i: usize,
    j: usize,
) -> Result<Rational, SimplexError> {
    Potential::new(g, t, profile)?.delta(x, i, j)
}

pub fn descend_to_clique_support(
    g: &Graph,
    t: usize,
    profile: &CliqueProfile,
    x0: &SimplexPoint,
) -> Result<DescentTrace, SimplexError> {
    Potential::new(g, t, profile)?.descend(x0)
}

pub fn verify_nonnegativity(
    g: &Graph,
    t: usize,
    profile: &CliqueProfile,
    samples: usize,
    seed: u64,
) -> Result<NonnegativityReport, SimplexError> {
    Potential::new(g, t, profile)?.verify_nonnegativity(samples, seed)
}

/// `Φ(uniform) = n^{-t} (n^{t-1} Σ_v C(c(v),t)/c(v)^t - N(G, K_t))`; exposed
/// so callers can compare the two routes.
pub fn phi_uniform_from_bound(n: usize, t: usize, bound: &Rational, count: &Rational) -> Rational {
    (bound - count) / int(BigInt::from(n).pow(t as u32))
}
