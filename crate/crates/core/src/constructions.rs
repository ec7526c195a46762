//! Named complexes: skeleta of simplices, iterated joins of point sets, the
//! complexes K^(n) and H^(n), and the Xi family of Type I simplices.
//!
//! Vertex numbering in K^(n) is fixed: the apex `b` is vertex 0 and `a_j^i`
//! (the j-th point of factor i) is vertex `1 + 3i + j`.

use itertools::Itertools;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::sphere::SphereSubcomplex;

/// Vertex layout of K^(n): three points per factor plus the apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorIndexing {
    pub n: usize,
    pub factors: Vec<[usize; 3]>,
    pub apex: usize,
}

impl FactorIndexing {
    pub fn new(n: usize) -> Self {
        let factors = (0..=n).map(|i| [1 + 3 * i, 2 + 3 * i, 3 + 3 * i]).collect();
        Self { n, factors, apex: 0 }
    }

    /// Vertex id of `a_j^i`.
    pub fn point(&self, i: usize, j: usize) -> usize {
        self.factors[i][j]
    }

    /// Factor index of a non-apex vertex.
    pub fn factor_of(&self, v: usize) -> Option<usize> {
        (v != self.apex).then(|| (v - 1) / 3)
    }

    pub fn labels(&self) -> Vec<String> {
        std::iter::once("b".to_string())
            .chain((0..=self.n).flat_map(|i| (0..3).map(move |j| format!("a_{j}^{i}"))))
            .collect()
    }

    /// The Type I simplex `|a_{j_0}^0 ... a_{j_n}^n|`.
    pub fn type_one(&self, js: &[usize]) -> Simplex {
        Simplex::new(js.iter().enumerate().map(|(i, &j)| self.point(i, j))).expect("distinct")
    }
}

/// Complete n-skeleton of an m-simplex.
pub fn sigma_skeleton(m: usize, n: usize) -> Result<SimplicialComplex> {
    if n > m {
        return Err(Error::DimensionOutOfRange { requested: n, dim: m });
    }
    let maximal = (0..=m).combinations(n + 1).map(Simplex::from_sorted).collect();
    Ok(SimplicialComplex::from_maximal(m + 1, maximal)?.with_name(format!("sigma_{m}^{n}")))
}

/// The `folds`-fold join of `k` points; vertex `p_j^i` is `i * k + j`.
pub fn fold_join(k: usize, folds: usize) -> Result<SimplicialComplex> {
    if k == 0 || folds == 0 {
        return Err(Error::InvalidArgument("fold_join needs k >= 1 and folds >= 1".into()));
    }
    let labels = (0..folds).flat_map(|i| (0..k).map(move |j| format!("p_{j}^{i}"))).collect();
    let maximal = (0..folds)
        .map(|_| 0..k)
        .multi_cartesian_product()
        .map(|js| Simplex::new(js.iter().enumerate().map(|(i, &j)| i * k + j)).expect("distinct"))
        .collect();
    SimplicialComplex::new(format!("[{k}]^*{folds}"), labels, maximal)
}

/// Type I simplices: one point from every factor.
fn type_one_simplices(ix: &FactorIndexing) -> Vec<Simplex> {
    (0..=ix.n).map(|_| 0..3).multi_cartesian_product().map(|js| ix.type_one(&js)).collect()
}

/// Type II simplices: the apex plus one point from every factor but one.
fn type_two_simplices(ix: &FactorIndexing) -> Vec<Simplex> {
    let mut out = Vec::new();
    for q in 0..=ix.n {
        let others: Vec<usize> = (0..=ix.n).filter(|&i| i != q).collect();
        for js in others.iter().map(|_| 0..3).multi_cartesian_product() {
            let vs = others.iter().zip(&js).map(|(&i, &j)| ix.point(i, j));
            out.push(Simplex::new(std::iter::once(ix.apex).chain(vs)).expect("distinct"));
        }
    }
    out
}

pub fn build_k(n: usize) -> Result<(SimplicialComplex, FactorIndexing)> {
    if n == 0 {
        return Err(Error::InvalidArgument("K^(n) needs n >= 1".into()));
    }
    let ix = FactorIndexing::new(n);
    let mut maximal = type_one_simplices(&ix);
    maximal.extend(type_two_simplices(&ix));
    let k = SimplicialComplex::new(format!("K^({n})"), ix.labels(), maximal)?;
    Ok((k, ix))
}

/// H^(n): the subcomplex of K^(n) generated by the Type I simplices. The apex
/// is not a vertex of H^(n); the remaining vertices keep their K^(n) labels
/// and are renumbered `3i + j`.
pub fn build_h(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("H^(n) needs n >= 1".into()));
    }
    let ix = FactorIndexing::new(n);
    let maximal = type_one_simplices(&ix).into_iter().map(|s| s.map(|v| v - 1)).collect();
    SimplicialComplex::new(format!("H^({n})"), ix.labels()[1..].to_vec(), maximal)
}

/// Type I simplices whose indices sum to 0 mod 3.
pub fn xi_set(n: usize) -> Result<Vec<Simplex>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Xi needs n >= 1".into()));
    }
    let ix = FactorIndexing::new(n);
    let mut out: Vec<Simplex> = (0..=n)
        .map(|_| 0..3)
        .multi_cartesian_product()
        .filter(|js| js.iter().sum::<usize>() % 3 == 0)
        .map(|js| ix.type_one(&js))
        .collect();
    out.sort();
    Ok(out)
}

/// The n-tetrahedra bounding `b * xi` for xi in the Xi set.
pub fn gamma_xi_tetrahedra(n: usize) -> Result<Vec<SphereSubcomplex>> {
    let apex = FactorIndexing::new(n).apex;
    Ok(xi_set(n)?.iter().map(|xi| SphereSubcomplex::tetrahedron(&xi.with_vertex(apex))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_counts() {
        let k6 = sigma_skeleton(5, 1).unwrap();
        assert_eq!((k6.vertex_count(), k6.top_simplices().len()), (6, 15));
        assert_eq!(sigma_skeleton(7, 2).unwrap().top_simplices().len(), 56);
        assert_eq!(sigma_skeleton(4, 4).unwrap().maximal_simplices().len(), 1);
        assert!(sigma_skeleton(2, 3).is_err());
    }

    #[test]
    fn fold_join_counts() {
        let k44 = fold_join(4, 2).unwrap();
        assert_eq!((k44.vertex_count(), k44.top_simplices().len()), (8, 16));
        let j = fold_join(3, 3).unwrap();
        assert_eq!((j.vertex_count(), j.top_simplices().len(), j.dim()), (9, 27, 2));
        for folds in 1..5 {
            assert_eq!(fold_join(2, folds).unwrap().top_simplices().len(), 1 << folds);
        }
        assert!(fold_join(0, 2).is_err());
    }

    #[test]
    fn k_counts() {
        let (k1, _) = build_k(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.top_simplices().len()), (7, 15));
        let (k2, _) = build_k(2).unwrap();
        assert_eq!((k2.vertex_count(), k2.top_simplices().len()), (10, 54));
        let (k3, _) = build_k(3).unwrap();
        assert_eq!((k3.vertex_count(), k3.top_simplices().len()), (13, 189));
        assert_eq!(k2.label(0), "b");
        assert_eq!(k2.label(FactorIndexing::new(2).point(1, 2)), "a_2^1");
    }

    #[test]
    fn apex_only_in_type_two() {
        for n in 1..=3 {
            let ix = FactorIndexing::new(n);
            assert!(type_one_simplices(&ix).iter().all(|s| !s.contains_vertex(ix.apex)));
            assert!(type_two_simplices(&ix).iter().all(|s| s.contains_vertex(ix.apex)));
        }
    }

    #[test]
    fn xi_examples() {
        let ix = FactorIndexing::new(1);
        let expected: Vec<Simplex> = {
            let mut v: Vec<Simplex> =
                [[0, 0], [1, 2], [2, 1]].iter().map(|js| ix.type_one(js)).collect();
            v.sort();
            v
        };
        assert_eq!(xi_set(1).unwrap(), expected);
        assert_eq!(xi_set(2).unwrap().len(), 9);
        assert_eq!(gamma_xi_tetrahedra(1).unwrap().len(), 3);
    }
}
