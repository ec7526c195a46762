//! Families of disjoint sphere pairs and the parity / existence checks run
//! over them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{find_octahedra, find_tetrahedra, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{CrossingCache, Embedding, Z2};
use crate::sphere::{SphereKind, SpherePair, SphereSubcomplex};

pub use crate::sphere::is_z2_sphere;

pub const DEFAULT_CYCLE_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationMode {
    Pattern,
    Cycles,
    Transported,
}

/// A deduplicated list of unordered sphere pairs in one complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairFamily {
    pub mode: EnumerationMode,
    pairs: Vec<SpherePair>,
}

impl PairFamily {
    /// Sorts and deduplicates `pairs`.
    pub fn new(mode: EnumerationMode, pairs: impl IntoIterator<Item = SpherePair>) -> Self {
        let set: BTreeSet<SpherePair> = pairs.into_iter().collect();
        Self { mode, pairs: set.into_iter().collect() }
    }

    pub fn pairs(&self) -> &[SpherePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Both components are Z2-spheres and the components are vertex-disjoint.
    pub fn is_well_formed(&self) -> bool {
        self.pairs
            .iter()
            .all(|p| p.first().is_valid() && p.second().is_valid() && p.is_disjoint())
    }
}

fn disjoint_pairs(spheres: &[SphereSubcomplex]) -> Vec<SpherePair> {
    let vertex_sets: Vec<BTreeSet<usize>> = spheres.iter().map(SphereSubcomplex::vertices).collect();
    let mut out = Vec::new();
    for i in 0..spheres.len() {
        for j in i + 1..spheres.len() {
            if vertex_sets[i].is_disjoint(&vertex_sets[j]) {
                out.push(SpherePair::new(spheres[i].clone(), spheres[j].clone()));
            }
        }
    }
    out
}

/// All disjoint pairs among the n-tetrahedra and n-octahedra of `k`.
pub fn lambda_pattern(k: &SimplicialComplex) -> PairFamily {
    let mut spheres = find_tetrahedra(k);
    spheres.extend(find_octahedra(k));
    PairFamily::new(EnumerationMode::Pattern, disjoint_pairs(&spheres))
}

/// All simple cycles of a graph, each as its edge set.
pub fn simple_cycles(g: &SimplicialComplex, bound: usize) -> Result<Vec<SphereSubcomplex>> {
    if g.dim() != 1 {
        return Err(Error::InvalidArgument(format!("cycle enumeration needs a graph, got dimension {}", g.dim())));
    }
    let v = g.vertex_count();
    let mut adj = vec![Vec::new(); v];
    for e in g.top_simplices() {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut cycles = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; v];
    for start in 0..v {
        path.push(start);
        on_path[start] = true;
        walk(&adj, start, &mut path, &mut on_path, &mut cycles, bound)?;
        on_path[start] = false;
        path.pop();
    }
    Ok(cycles)
}

/// Extends `path` through vertices larger than its start. A cycle is kept
/// once, in the direction where the second vertex is smaller than the last.
fn walk(
    adj: &[Vec<usize>],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    cycles: &mut Vec<SphereSubcomplex>,
    bound: usize,
) -> Result<()> {
    let tail = *path.last().expect("nonempty path");
    for &next in &adj[tail] {
        if next == start && path.len() >= 3 && path[1] < tail {
            if cycles.len() >= bound {
                return Err(Error::ComplexTooLarge { bound });
            }
            let edges = path
                .iter()
                .zip(path.iter().skip(1).chain(std::iter::once(&start)))
                .map(|(&a, &b)| Simplex::new([a, b]).expect("distinct"))
                .collect();
            cycles.push(SphereSubcomplex::new(edges, SphereKind::Cycle));
        } else if next > start && !on_path[next] {
            path.push(next);
            on_path[next] = true;
            walk(adj, start, path, on_path, cycles, bound)?;
            on_path[next] = false;
            path.pop();
        }
    }
    Ok(())
}

/// All unordered pairs of vertex-disjoint simple cycles of a graph.
pub fn lambda_cycles(g: &SimplicialComplex, bound: usize) -> Result<PairFamily> {
    let cycles = simple_cycles(g, bound)?;
    Ok(PairFamily::new(EnumerationMode::Cycles, disjoint_pairs(&cycles)))
}

/// Z2 linking number of every pair, sharing one crossing cache.
pub fn linking_numbers(family: &PairFamily, e: &Embedding) -> Result<Vec<Z2>> {
    let cache = CrossingCache::new(e);
    family
        .pairs()
        .iter()
        .map(|p| crate::geometry::lk2_projection_cached(p.first(), p.second(), &cache))
        .collect()
}

/// Sum of lk2 over the family, mod 2.
pub fn parity_sum(family: &PairFamily, e: &Embedding) -> Result<Z2> {
    Ok(linking_numbers(family, e)?.into_iter().sum())
}

/// The first pair (in family order) with odd linking number, if any.
pub fn exists_linked(family: &PairFamily, e: &Embedding) -> Result<Option<SpherePair>> {
    let cache = CrossingCache::new(e);
    for p in family.pairs() {
        if crate::geometry::lk2_projection_cached(p.first(), p.second(), &cache)?.is_one() {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fold_join, sigma_skeleton};

    #[test]
    fn k6_cycle_count() {
        let k6 = sigma_skeleton(5, 1).unwrap();
        // 20 triangles, 45 squares, 72 pentagons, 60 hexagons.
        assert_eq!(simple_cycles(&k6, DEFAULT_CYCLE_BOUND).unwrap().len(), 197);
    }

    #[test]
    fn k6_pair_families() {
        let k6 = sigma_skeleton(5, 1).unwrap();
        assert_eq!(lambda_pattern(&k6).len(), 10);
        assert_eq!(lambda_cycles(&k6, DEFAULT_CYCLE_BOUND).unwrap().len(), 10);
    }

    #[test]
    fn cycle_bound_is_enforced() {
        let k44 = fold_join(4, 2).unwrap();
        assert!(matches!(lambda_cycles(&k44, 10), Err(Error::ComplexTooLarge { bound: 10 })));
    }

    #[test]
    fn cycles_need_a_graph() {
        let t = sigma_skeleton(3, 2).unwrap();
        assert!(matches!(simple_cycles(&t, 10), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn families_are_well_formed() {
        let k6 = sigma_skeleton(5, 1).unwrap();
        assert!(lambda_pattern(&k6).is_well_formed());
        assert!(lambda_cycles(&k6, DEFAULT_CYCLE_BOUND).unwrap().is_well_formed());
    }
}
