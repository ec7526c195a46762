//! Degree-multiset certificate separating the exchange families of
//! sigma_{2n+3}^n and K^(n).
//!
//! Exchanges never change the degree of an old (n-2)-simplex and give degree
//! 6 to new ones, so the multiset of degrees other than 6 is an invariant of
//! the family. sigma_{2n+3}^n has the single degree C(n+5, 2); K^(n) has 27
//! (through the apex) and 15.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{apply_delta_y, degree_equation_violations};
use crate::complex::{find_tetrahedra, SimplicialComplex};
use crate::constructions::{build_k, sigma_skeleton, FactorIndexing};
use crate::error::{Error, Result};

/// Largest n for which the complexes are materialized.
pub const ENUMERATION_LIMIT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMethod {
    /// Every (n-2)-simplex of both complexes was built and its degree counted.
    Enumerated,
    /// Degrees of one representative per symmetry orbit, counted against a
    /// membership predicate; multiplicities from orbit sizes.
    OrbitRepresentatives,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessCertificate {
    pub n: usize,
    pub method: DegreeMethod,
    /// degree -> number of (n-2)-simplices with that degree.
    pub sigma_degrees: BTreeMap<usize, usize>,
    pub k_degrees: BTreeMap<usize, usize>,
    pub binomial: usize,
    pub exchanges_checked: usize,
    pub degree_violations: Vec<String>,
    pub disjoint: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn degree_multiset(k: &SimplicialComplex, dim: usize) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for s in k.delta(dim)? {
        *out.entry(k.degree(s)?).or_default() += 1;
    }
    Ok(out)
}

/// Is `vs` (sorted, distinct) a simplex of K^(n)?
fn in_k(ix: &FactorIndexing, vs: &[usize]) -> bool {
    let mut used = vec![false; ix.n + 1];
    let mut apex = false;
    for &v in vs {
        match ix.factor_of(v) {
            None => apex = true,
            Some(f) if used[f] => return false,
            Some(f) => used[f] = true,
        }
    }
    !apex || used.iter().any(|u| !u)
}

/// Number of n-simplices through `tau` among vertex sets accepted by `member`.
fn implicit_degree(vertex_count: usize, tau: &[usize], member: impl Fn(&[usize]) -> bool) -> usize {
    (0..vertex_count)
        .filter(|v| !tau.contains(v))
        .combinations(2)
        .filter(|extra| {
            let mut vs: Vec<usize> = tau.iter().chain(extra).copied().collect();
            vs.sort_unstable();
            member(&vs)
        })
        .count()
}

fn orbit_multisets(n: usize) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let sigma_vertices = 2 * n + 4;
    let tau: Vec<usize> = (0..n - 1).collect();
    let sigma_deg = implicit_degree(sigma_vertices, &tau, |vs| vs.len() == n + 1);
    let sigma = BTreeMap::from([(sigma_deg, binomial(sigma_vertices, n - 1))]);

    // The factor and point permutations act transitively on (n-2)-simplices
    // with and without the apex.
    let ix = FactorIndexing::new(n);
    let count = 3 * (n + 1) + 1;
    let member = |vs: &[usize]| in_k(&ix, vs);
    let with_b: Vec<usize> = std::iter::once(ix.apex).chain((0..n - 2).map(|i| ix.point(i, 0))).collect();
    let without_b: Vec<usize> = (0..n - 1).map(|i| ix.point(i, 0)).collect();
    let mut k = BTreeMap::new();
    *k.entry(implicit_degree(count, &with_b, member)).or_default() +=
        binomial(n + 1, n - 2) * 3usize.pow(n as u32 - 2);
    *k.entry(implicit_degree(count, &without_b, member)).or_default() +=
        binomial(n + 1, n - 1) * 3usize.pow(n as u32 - 1);
    (sigma, k)
}

/// Degree multisets of the orbit method, exposed so tests can compare them
/// with enumeration.
pub fn orbit_degree_multisets(n: usize) -> Result<(BTreeMap<usize, usize>, BTreeMap<usize, usize>)> {
    if n < 2 {
        return Err(Error::InvalidArgument("degree certificates need n >= 2".into()));
    }
    Ok(orbit_multisets(n))
}

/// Runs `exchanges` random exchanges along random walks from K^(n),
/// checking the degree relation after each. A walk that runs out of
/// tetrahedra restarts from K^(n).
fn sampled_exchanges(n: usize, exchanges: usize, seed: u64) -> Result<(usize, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (start, _) = build_k(n)?;
    let mut k = start.clone();
    let mut violations = Vec::new();
    let mut done = 0;
    while done < exchanges {
        let tetras = find_tetrahedra(&k);
        let Some(t) = tetras.choose(&mut rng) else {
            k = start.clone();
            continue;
        };
        let (next, rec) = apply_delta_y(&k, t)?;
        violations.extend(
            degree_equation_violations(&k, &next, &rec)?
                .into_iter()
                .map(|v| format!("exchange {done} at {}: {v}", rec.tetra_vertices)),
        );
        k = next;
        done += 1;
    }
    Ok((done, violations))
}

/// Certificate that no exchange sequence from sigma_{2n+3}^n meets one from
/// K^(n): the non-6 degree values differ. `exchanges` random exchanges
/// from K^(n) are also replayed to check the degree relation itself.
pub fn hdpet_certificate(n: usize, exchanges: usize, seed: u64) -> Result<DisjointnessCertificate> {
    if n < 2 {
        return Err(Error::InvalidArgument("degree certificates need n >= 2".into()));
    }
    let (method, sigma_degrees, k_degrees) = if n <= ENUMERATION_LIMIT {
        let sigma = sigma_skeleton(2 * n + 3, n)?;
        let (k, _) = build_k(n)?;
        (DegreeMethod::Enumerated, degree_multiset(&sigma, n - 2)?, degree_multiset(&k, n - 2)?)
    } else {
        let (s, k) = orbit_multisets(n);
        (DegreeMethod::OrbitRepresentatives, s, k)
    };
    let (exchanges_checked, degree_violations) = sampled_exchanges(n, exchanges, seed)?;

    let binomial = binomial(n + 5, 2);
    let sigma_values: Vec<usize> = sigma_degrees.keys().copied().filter(|&d| d != 6).collect();
    let k_values: Vec<usize> = k_degrees.keys().copied().filter(|&d| d != 6).collect();
    let disjoint = sigma_values == [binomial]
        && !k_values.contains(&binomial)
        && degree_violations.is_empty()
        && exchanges_checked == exchanges;
    Ok(DisjointnessCertificate {
        n,
        method,
        sigma_degrees,
        k_degrees,
        binomial,
        exchanges_checked,
        degree_violations,
        disjoint,
    })
}
