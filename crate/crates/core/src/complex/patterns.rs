//! Vertex-pattern search for n-tetrahedra (copies of the boundary of an
//! (n+1)-simplex) and n-octahedra (copies of the join of n+1 point pairs).

use std::collections::{BTreeSet, HashSet};

use super::{Simplex, SimplicialComplex};
use crate::sphere::{SphereKind, SphereSubcomplex};

/// Every vertex set of size n+2 all of whose (n+1)-subsets are n-simplices.
pub fn find_tetrahedra(k: &SimplicialComplex) -> Vec<SphereSubcomplex> {
    let n = k.dim();
    let top = k.top_simplices();
    let index: HashSet<&Simplex> = top.iter().collect();
    let mut out = Vec::new();
    for s in top {
        let last = *s.vertices().last().expect("nonempty");
        for v in last + 1..k.vertex_count() {
            let whole = s.with_vertex(v);
            // `s` itself is present; check the facets through `v`.
            let complete = s
                .vertices()
                .iter()
                .all(|&u| index.contains(&whole.without_vertex(u).expect("n + 2 vertices")));
            if complete {
                out.push(SphereSubcomplex::tetrahedron(&whole));
            }
        }
    }
    debug_assert!(n == 0 || out.iter().all(|t| t.dim() == n));
    out.sort();
    out
}

/// Every family of n+1 disjoint vertex pairs `{u_i, v_i}` such that all
/// 2^(n+1) transversal choices are n-simplices.
pub fn find_octahedra(k: &SimplicialComplex) -> Vec<SphereSubcomplex> {
    let top = k.top_simplices();
    let index: HashSet<&Simplex> = top.iter().collect();
    let mut found: BTreeSet<Vec<Simplex>> = BTreeSet::new();
    for s in top {
        // Anchor each octahedron at a simplex through its smallest vertex.
        let mut antipodes = Vec::with_capacity(s.vertices().len());
        extend_octahedron(k.vertex_count(), &index, s.vertices(), &mut antipodes, &mut found);
    }
    found.into_iter().map(|sx| SphereSubcomplex::new(sx, SphereKind::Octahedron)).collect()
}

fn extend_octahedron(
    vertex_count: usize,
    index: &HashSet<&Simplex>,
    base: &[usize],
    antipodes: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<Simplex>>,
) {
    let i = antipodes.len();
    if i == base.len() {
        found.insert(transversals(base, antipodes, base.len()));
        return;
    }
    let anchor = base[0];
    for v in anchor + 1..vertex_count {
        if base.contains(&v) || antipodes.contains(&v) {
            continue;
        }
        antipodes.push(v);
        // Choices that take the antipode at position i; earlier positions are free.
        let ok = (0..1usize << i).all(|mask| {
            let vs = (0..base.len()).map(|j| {
                if j == i || (j < i && mask >> j & 1 == 1) {
                    antipodes[j]
                } else {
                    base[j]
                }
            });
            index.contains(&Simplex::new(vs).expect("distinct vertices"))
        });
        if ok {
            extend_octahedron(vertex_count, index, base, antipodes, found);
        }
        antipodes.pop();
    }
}

fn transversals(base: &[usize], antipodes: &[usize], m: usize) -> Vec<Simplex> {
    let mut out: Vec<Simplex> = (0..1usize << m)
        .map(|mask| {
            let vs = (0..m).map(|j| if mask >> j & 1 == 1 { antipodes[j] } else { base[j] });
            Simplex::new(vs).expect("distinct vertices")
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;

    use super::*;
    use crate::complex::boundary_sphere;

    fn complete_graph(n: usize) -> SimplicialComplex {
        let m = (0..n).combinations(2).map(|e| Simplex::new(e).unwrap()).collect();
        SimplicialComplex::from_maximal(n, m).unwrap()
    }

    fn bipartite(a: usize, b: usize) -> SimplicialComplex {
        let m = (0..a).cartesian_product(a..a + b).map(|(x, y)| Simplex::new([x, y]).unwrap()).collect();
        SimplicialComplex::from_maximal(a + b, m).unwrap()
    }

    #[test]
    fn k6_has_twenty_triangles() {
        assert_eq!(find_tetrahedra(&complete_graph(6)).len(), 20);
    }

    #[test]
    fn boundary_is_its_own_tetrahedron() {
        let b = boundary_sphere(3).unwrap();
        assert_eq!(find_tetrahedra(&b).len(), 1);
        assert_eq!(find_octahedra(&b).len(), 0);
    }

    #[test]
    fn k33_has_nine_squares_and_no_triangles() {
        let k = bipartite(3, 3);
        assert_eq!(find_octahedra(&k).len(), 9);
        assert!(find_tetrahedra(&k).is_empty());
    }

    #[test]
    fn k6_four_cycles() {
        // Every 4-subset carries three 4-cycles.
        assert_eq!(find_octahedra(&complete_graph(6)).len(), 15 * 3);
    }

    #[test]
    fn found_patterns_are_spheres() {
        for t in find_tetrahedra(&complete_graph(5)).iter().chain(&find_octahedra(&complete_graph(5))) {
            assert!(t.is_valid());
        }
    }
}
