use itertools::Itertools;
use plink::complex::{find_octahedra, find_tetrahedra, is_isomorphic, Simplex, SimplicialComplex};
use plink::constructions::{build_h, build_k, fold_join, sigma_skeleton, xi_set, FactorIndexing};
use plink::deltay::build_p;
use plink::linking::{lambda_cycles, lambda_pattern, DEFAULT_CYCLE_BOUND};
use plink::sphere::SphereKind;

fn s(v: &[usize]) -> Simplex {
    Simplex::new(v.iter().copied()).unwrap()
}

/// Every (n+2)-subset whose facets are all present.
fn brute_tetrahedra(k: &SimplicialComplex) -> usize {
    let n = k.dim();
    (0..k.vertex_count())
        .combinations(n + 2)
        .filter(|vs| vs.iter().combinations(n + 1).all(|f| k.contains(&s(&f.into_iter().copied().collect::<Vec<_>>()))))
        .count()
}

/// Every set of n+1 disjoint vertex pairs with all transversals present.
fn brute_octahedra(k: &SimplicialComplex) -> usize {
    let n = k.dim();
    let mut count = 0;
    for vs in (0..k.vertex_count()).combinations(2 * n + 2) {
        for pairs in perfect_matchings(&vs) {
            let all = (0..1usize << (n + 1)).all(|mask| {
                let t: Vec<usize> = pairs.iter().enumerate().map(|(i, p)| p[(mask >> i) & 1]).collect();
                k.contains(&s(&t))
            });
            count += usize::from(all);
        }
    }
    count
}

fn perfect_matchings(vs: &[usize]) -> Vec<Vec<[usize; 2]>> {
    if vs.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 1..vs.len() {
        let rest: Vec<usize> = vs[1..].iter().enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, &v)| v).collect();
        for mut m in perfect_matchings(&rest) {
            m.push([vs[0], vs[i]]);
            out.push(m);
        }
    }
    out
}

#[test]
fn pattern_search_matches_brute_force() {
    let cases = [
        sigma_skeleton(5, 1).unwrap(),
        fold_join(3, 2).unwrap(),
        fold_join(4, 2).unwrap(),
        build_k(1).unwrap().0,
        build_k(2).unwrap().0,
        sigma_skeleton(6, 2).unwrap(),
        fold_join(2, 3).unwrap(),
        build_p(1).unwrap(),
    ];
    for k in &cases {
        assert_eq!(find_tetrahedra(k).len(), brute_tetrahedra(k), "{}", k.name());
        assert_eq!(find_octahedra(k).len(), brute_octahedra(k), "{}", k.name());
    }
}

#[test]
fn k2_octahedra_and_tetrahedra() {
    let (k, ix) = build_k(2).unwrap();
    let tetras = find_tetrahedra(&k);
    assert_eq!(tetras.len(), 27);
    assert!(tetras.iter().all(|t| t.vertices().contains(&ix.apex)));
    let octas = find_octahedra(&k);
    assert_eq!(octas.len(), 108);
    assert_eq!(octas.iter().filter(|o| !o.vertices().contains(&ix.apex)).count(), 27);
}

#[test]
fn lambda_counts() {
    for n in 1..=3 {
        let (k, ix) = build_k(n).unwrap();
        let fam = lambda_pattern(&k);
        assert_eq!(fam.len(), 3usize.pow(n as u32 + 1), "n = {n}");
        for p in fam.pairs() {
            let (a, b) = (p.first(), p.second());
            let kinds = [a.kind(), b.kind()];
            assert!(kinds.contains(&SphereKind::Tetrahedron) && kinds.contains(&SphereKind::Octahedron));
            let t = if a.kind() == SphereKind::Tetrahedron { a } else { b };
            assert!(t.vertices().contains(&ix.apex));
        }
        assert!(fam.is_well_formed());
    }
    assert_eq!(lambda_pattern(&sigma_skeleton(7, 2).unwrap()).len(), 35);
    assert_eq!(lambda_pattern(&sigma_skeleton(5, 1).unwrap()).len(), 10);
}

#[test]
fn pattern_pairs_are_cycle_pairs_for_graphs() {
    for g in [sigma_skeleton(5, 1).unwrap(), build_k(1).unwrap().0, fold_join(4, 2).unwrap(), build_p(1).unwrap()] {
        let pattern = lambda_pattern(&g);
        let cycles = lambda_cycles(&g, DEFAULT_CYCLE_BOUND).unwrap();
        assert!(pattern.pairs().iter().all(|p| cycles.pairs().contains(p)), "{}", g.name());
        assert!(cycles.is_well_formed());
    }
}

#[test]
fn vertex_degrees() {
    let sigma = sigma_skeleton(7, 2).unwrap();
    assert!((0..8).all(|v| sigma.degree(&s(&[v])).unwrap() == 21));
    let (k, ix) = build_k(2).unwrap();
    assert_eq!(k.degree(&s(&[ix.apex])).unwrap(), 27);
    assert_eq!(k.degree(&s(&[ix.point(0, 0)])).unwrap(), 15);
    for v in 1..k.vertex_count() {
        assert_eq!(k.degree(&s(&[v])).unwrap(), 15);
    }
}

#[test]
fn k_and_h_sizes() {
    for n in 1..=3 {
        let (k, _) = build_k(n).unwrap();
        let p = 3usize.pow(n as u32);
        assert_eq!(k.vertex_count(), 3 * (n + 1) + 1);
        assert_eq!(k.top_simplices().len(), 3 * p + (n + 1) * p);
        let h = build_h(n).unwrap();
        assert_eq!(h.vertex_count(), 3 * (n + 1));
        assert!(is_isomorphic(&h, &fold_join(3, n + 1).unwrap()));
        assert!(h.is_subcomplex_of(&k));
    }
}

#[test]
fn xi_is_pairwise_face_disjoint() {
    for n in 1..=4 {
        let xi = xi_set(n).unwrap();
        assert_eq!(xi.len(), 3usize.pow(n as u32));
        for (a, b) in xi.iter().tuple_combinations() {
            // No shared (n-1)-face means fewer than n common vertices.
            let common = a.vertices().iter().filter(|v| b.contains_vertex(**v)).count();
            assert!(common < n, "{a} and {b}");
        }
        let ix = FactorIndexing::new(n);
        assert!(xi.iter().all(|x| !x.contains_vertex(ix.apex)));
    }
}

fn kneser_5_2() -> SimplicialComplex {
    let pairs: Vec<Vec<usize>> = (0..5).combinations(2).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .tuple_combinations()
        .filter(|((_, a), (_, b))| a.iter().all(|v| !b.contains(v)))
        .map(|((i, _), (j, _))| s(&[i, j]))
        .collect();
    SimplicialComplex::from_maximal(10, edges).unwrap()
}

#[test]
fn p1_is_the_petersen_graph() {
    let p = build_p(1).unwrap();
    assert_eq!((p.vertex_count(), p.top_simplices().len()), (10, 15));
    assert!(is_isomorphic(&p, &kneser_5_2()));
}

#[test]
fn p_is_trivalent() {
    for n in 1..=3 {
        let p = build_p(n).unwrap();
        assert_eq!(p.vertex_count(), 3 * (n + 1) + 1 + 3usize.pow(n as u32));
        assert!(p.is_trivalent(), "n = {n}");
    }
    assert!(!build_k(2).unwrap().0.is_trivalent());
}
