//! Brute-force reference implementations.
//!
//! These enumerate vertex subsets directly and test adjacency pair by pair.
//! They deliberately share nothing with [`crate::clique`] beyond
//! [`Graph::has_edge`], and refuse graphs with more than [`ORACLE_MAX_N`]
//! vertices.

use thiserror::Error;

use crate::clique::CliqueProfile;
use crate::graph::Graph;

pub const ORACLE_MAX_N: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses graphs with {0} > {ORACLE_MAX_N} vertices")]
    TooLarge(usize),
    #[error("vertex set {0:?} is not a clique")]
    NotAClique(Vec<usize>),
}

fn guard(g: &Graph) -> Result<(), OracleError> {
    if g.n() > ORACLE_MAX_N {
        Err(OracleError::TooLarge(g.n()))
    } else {
        Ok(())
    }
}

fn mask_is_clique(g: &Graph, mask: u32) -> bool {
    let members: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if !g.has_edge(members[a], members[b]) {
                return false;
            }
        }
    }
    true
}

/// `N(G, K_t)` by testing every `t`-subset.
pub fn brute_count_cliques(g: &Graph, t: usize) -> Result<u64, OracleError> {
    guard(g)?;
    let n = g.n();
    let mut count = 0;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize == t && mask_is_clique(g, mask) {
            count += 1;
        }
    }
    Ok(count)
}

/// `c(v)` by scanning every clique subset and recording member maxima.
pub fn brute_vertex_clique_numbers(g: &Graph) -> Result<CliqueProfile, OracleError> {
    guard(g)?;
    let n = g.n();
    let mut c = vec![0usize; n];
    for mask in 1u32..(1u32 << n) {
        if mask_is_clique(g, mask) {
            let k = mask.count_ones() as usize;
            for (v, cv) in c.iter_mut().enumerate() {
                if mask >> v & 1 == 1 && *cv < k {
                    *cv = k;
                }
            }
        }
    }
    let omega = c.iter().copied().max().unwrap_or(0);
    Ok(CliqueProfile { c, omega })
}

/// Largest clique containing `copy`, by scanning all supersets.
pub fn brute_kirsch_nir_alpha(g: &Graph, copy: &[usize]) -> Result<usize, OracleError> {
    guard(g)?;
    let n = g.n();
    let mut base = 0u32;
    for &v in copy {
        if v >= n {
            return Err(OracleError::NotAClique(copy.to_vec()));
        }
        base |= 1 << v;
    }
    if base.count_ones() as usize != copy.len() || !mask_is_clique(g, base) {
        return Err(OracleError::NotAClique(copy.to_vec()));
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        if mask & base == base && mask_is_clique(g, mask) {
            best = best.max(mask.count_ones() as usize);
        }
    }
    Ok(best)
}
