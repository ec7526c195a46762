//! Abstract simplicial complexes stored by their maximal simplices.
//!
//! Vertices are dense indices `0..vertex_count()`, each carrying a unique
//! string label. The face closure is computed on first use and cached.

mod canonical;
mod patterns;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{canonicalize, is_isomorphic, CanonicalForm};
pub use patterns::{find_octahedra, find_tetrahedra};

/// A simplex given by a strictly increasing list of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Repeated vertices and the
    /// empty set are rejected.
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        if v.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex set".into()));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {v:?}")));
        }
        Ok(Self(v))
    }

    /// Wraps a vertex list that is already sorted and duplicate-free.
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True if every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// All faces of dimension `k`, in lexicographic order.
    pub fn faces(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0
            .iter()
            .copied()
            .combinations(k + 1)
            .filter(move |_| k <= self.dim())
            .map(Simplex::from_sorted)
    }

    /// The codimension-one faces, obtained by dropping one vertex at a time.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                let v = self
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect();
                Simplex::from_sorted(v)
            })
            .collect()
    }

    /// Vertex union of two simplices.
    pub fn join(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn with_vertex(&self, x: usize) -> Simplex {
        let mut v = self.0.clone();
        match v.binary_search(&x) {
            Ok(_) => {}
            Err(pos) => v.insert(pos, x),
        }
        Simplex(v)
    }

    pub fn without_vertex(&self, x: usize) -> Option<Simplex> {
        let mut v = self.0.clone();
        let pos = v.binary_search(&x).ok()?;
        v.remove(pos);
        (!v.is_empty()).then_some(Simplex(v))
    }

    pub(crate) fn map(&self, f: impl Fn(usize) -> usize) -> Simplex {
        let mut v: Vec<usize> = self.0.iter().map(|x| f(*x)).collect();
        v.sort_unstable();
        Simplex(v)
    }
}

impl TryFrom<Vec<usize>> for Simplex {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<usize> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", self.0.iter().join(" "))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug)]
struct FaceLattice {
    by_dim: Vec<Vec<Simplex>>,
    index: HashSet<Simplex>,
    top_degree: HashMap<Simplex, usize>,
}

/// A finite abstract simplicial complex.
///
/// Immutable after construction. The face closure is materialized at most
/// once, on the first query that needs it.
#[derive(Clone)]
pub struct SimplicialComplex {
    name: String,
    labels: Vec<String>,
    maximal: Vec<Simplex>,
    dim: usize,
    faces: OnceLock<std::sync::Arc<FaceLattice>>,
}

impl SimplicialComplex {
    /// Builds a complex over a labeled vertex table. Dominated simplices are
    /// pruned from `maximal`, and vertices covered by no simplex become
    /// maximal 0-simplices.
    pub fn new(name: impl Into<String>, labels: Vec<String>, maximal: Vec<Simplex>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateVertexId(l.clone()));
            }
        }
        let count = labels.len();
        for s in &maximal {
            if let Some(&v) = s.vertices().iter().find(|v| **v >= count) {
                return Err(Error::VertexOutOfRange { vertex: v, count });
            }
        }

        let mut maximal = prune_dominated(maximal);
        let mut covered = vec![false; count];
        for s in &maximal {
            for &v in s.vertices() {
                covered[v] = true;
            }
        }
        maximal.extend(
            covered
                .iter()
                .enumerate()
                .filter(|(_, c)| !**c)
                .map(|(v, _)| Simplex::from_sorted(vec![v])),
        );
        maximal.sort();
        let dim = maximal.iter().map(Simplex::dim).max().unwrap_or(0);
        Ok(Self { name: name.into(), labels, maximal, dim, faces: OnceLock::new() })
    }

    /// Builds a complex whose vertex labels are the decimal vertex indices.
    pub fn from_maximal(vertex_count: usize, maximal: Vec<Simplex>) -> Result<Self> {
        let labels = (0..vertex_count).map(|v| v.to_string()).collect();
        Self::new("", labels, maximal)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    fn lattice(&self) -> &FaceLattice {
        self.faces.get_or_init(|| std::sync::Arc::new(FaceLattice::build(&self.maximal, self.dim)))
    }

    /// All k-simplices of the face closure, sorted lexicographically.
    pub fn delta(&self, k: usize) -> Result<&[Simplex]> {
        if k > self.dim {
            return Err(Error::DimensionOutOfRange { requested: k, dim: self.dim });
        }
        Ok(&self.lattice().by_dim[k])
    }

    /// The top-dimensional simplices.
    pub fn top_simplices(&self) -> &[Simplex] {
        &self.lattice().by_dim[self.dim]
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.lattice().index.contains(s)
    }

    pub fn face_count(&self) -> usize {
        self.lattice().index.len()
    }

    /// Number of top-dimensional simplices having `s` as a face.
    pub fn degree(&self, s: &Simplex) -> Result<usize> {
        let lattice = self.lattice();
        if !lattice.index.contains(s) {
            return Err(Error::SimplexNotInComplex(s.clone()));
        }
        Ok(lattice.top_degree.get(s).copied().unwrap_or(0))
    }

    /// True iff every (n-1)-simplex lies in exactly three n-simplices.
    pub fn is_trivalent(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        let lattice = self.lattice();
        lattice.by_dim[self.dim - 1]
            .iter()
            .all(|s| lattice.top_degree.get(s).copied().unwrap_or(0) == 3)
    }

    /// Complex generated by all k-faces, keeping lower-dimensional maximal
    /// simplices untouched.
    pub fn skeleton(&self, k: usize) -> Result<SimplicialComplex> {
        if k > self.dim {
            return Err(Error::DimensionOutOfRange { requested: k, dim: self.dim });
        }
        let mut maximal: Vec<Simplex> = self.delta(k)?.to_vec();
        maximal.extend(self.maximal.iter().filter(|s| s.dim() < k).cloned());
        SimplicialComplex::new(format!("{}^({k})", self.name), self.labels.clone(), maximal)
    }

    /// Join with vertex tables disjointified: vertices of `other` are shifted
    /// past those of `self`, and labels are suffixed with the factor index.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.vertex_count();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}@0"))
            .chain(other.labels.iter().map(|l| format!("{l}@1")))
            .collect();
        let maximal = self
            .maximal
            .iter()
            .cartesian_product(&other.maximal)
            .map(|(s, t)| s.join(&t.map(|v| v + offset)))
            .collect();
        SimplicialComplex::new(format!("{} * {}", self.name, other.name), labels, maximal)
            .expect("join of valid complexes is valid")
    }

    /// True if every simplex of `self` is a simplex of `other` once vertices
    /// are matched by label.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let map: Option<Vec<usize>> =
            self.labels.iter().map(|l| other.vertex_by_label(l)).collect();
        let Some(map) = map else { return false };
        self.maximal.iter().all(|s| other.contains(&s.map(|v| map[v])))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            name: self.name.clone(),
            n: self.dim,
            vertices: self.labels.clone(),
            maximal_simplices: self.maximal.iter().map(|s| s.vertices().to_vec()).collect(),
        }
    }

    pub fn from_json(json: ComplexJson) -> Result<Self> {
        let maximal = json
            .maximal_simplices
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>>>()?;
        let k = SimplicialComplex::new(json.name, json.vertices, maximal)?;
        if k.dim != json.n {
            return Err(Error::Parse(format!(
                "declared dimension {} but maximal simplices have dimension {}",
                json.n, k.dim
            )));
        }
        Ok(k)
    }

    /// Parses the vertex labels of `spec`, a comma-separated list.
    pub fn parse_simplex(&self, spec: &str) -> Result<Simplex> {
        let vs = spec
            .split(',')
            .map(|l| {
                let l = l.trim();
                self.vertex_by_label(l).ok_or_else(|| Error::Parse(format!("unknown vertex `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(vs)
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.maximal == other.maximal
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("name", &self.name)
            .field("vertices", &self.labels.len())
            .field("dim", &self.dim)
            .field("maximal", &self.maximal.len())
            .finish()
    }
}

/// On-disk form of a complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub name: String,
    pub n: usize,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<usize>>,
}

/// Face-closed complex generated by `maximal`, with the vertex table inferred
/// from the largest vertex index.
pub fn closure(maximal: Vec<Simplex>) -> Result<SimplicialComplex> {
    let count = maximal.iter().flat_map(|s| s.vertices().last()).max().map_or(0, |v| v + 1);
    SimplicialComplex::from_maximal(count, maximal)
}

/// The boundary of an m-simplex: all (m-1)-faces of `|0 1 ... m|`.
pub fn boundary_sphere(m: usize) -> Result<SimplicialComplex> {
    if m == 0 {
        return Err(Error::InvalidArgument("boundary_sphere needs m >= 1".into()));
    }
    let maximal = (0..=m).combinations(m).map(Simplex::from_sorted).collect();
    Ok(SimplicialComplex::from_maximal(m + 1, maximal)?.with_name(format!("boundary of sigma_{m}")))
}

fn prune_dominated(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    simplices.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
    simplices.dedup();
    let top = simplices.first().map_or(0, Simplex::dim);
    if simplices.iter().all(|s| s.dim() == top) {
        return simplices;
    }
    let mut kept: Vec<Simplex> = Vec::with_capacity(simplices.len());
    let mut covered: HashSet<Simplex> = HashSet::new();
    for s in simplices {
        if covered.contains(&s) {
            continue;
        }
        for k in 0..s.dim() {
            covered.extend(s.faces(k));
        }
        kept.push(s);
    }
    kept
}

impl FaceLattice {
    fn build(maximal: &[Simplex], dim: usize) -> Self {
        let mut index = HashSet::new();
        let mut top_degree: HashMap<Simplex, usize> = HashMap::new();
        for s in maximal {
            for k in 0..=s.dim() {
                for f in s.faces(k) {
                    if s.dim() == dim {
                        *top_degree.entry(f.clone()).or_default() += 1;
                    }
                    index.insert(f);
                }
            }
        }
        let mut by_dim = vec![Vec::new(); dim + 1];
        for s in &index {
            by_dim[s.dim()].push(s.clone());
        }
        for layer in &mut by_dim {
            layer.sort();
        }
        Self { by_dim, index, top_degree }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn single_triangle_has_seven_faces() {
        let k = closure(vec![s(&[0, 1, 2])]).unwrap();
        assert_eq!(k.face_count(), 7);
        assert_eq!(k.delta(0).unwrap().len(), 3);
        assert_eq!(k.delta(1).unwrap().len(), 3);
        assert_eq!(k.delta(2).unwrap().len(), 1);
    }

    #[test]
    fn dominated_simplices_are_pruned() {
        let k = closure(vec![s(&[0, 1]), s(&[0, 1, 2])]).unwrap();
        assert_eq!(k.maximal_simplices(), &[s(&[0, 1, 2])]);
    }

    #[test]
    fn closure_is_idempotent() {
        let k = closure(vec![s(&[0, 1, 2]), s(&[2, 3]), s(&[4])]).unwrap();
        let all: Vec<Simplex> = (0..=k.dim()).flat_map(|d| k.delta(d).unwrap().to_vec()).collect();
        let again = closure(all).unwrap();
        assert_eq!(again.maximal_simplices(), k.maximal_simplices());
        assert_eq!(again.face_count(), k.face_count());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Simplex::new([1, 1]).is_err());
        assert!(Simplex::new([]).is_err());
        let dup = SimplicialComplex::new("d", vec!["a".into(), "a".into()], vec![s(&[0, 1])]);
        assert!(matches!(dup, Err(Error::DuplicateVertexId(_))));
        let oob = SimplicialComplex::new("o", vec!["a".into()], vec![s(&[0, 1])]);
        assert!(matches!(oob, Err(Error::VertexOutOfRange { vertex: 1, count: 1 })));
    }

    #[test]
    fn uncovered_vertices_become_points() {
        let k = SimplicialComplex::from_maximal(3, vec![s(&[0, 1])]).unwrap();
        assert_eq!(k.maximal_simplices(), &[s(&[0, 1]), s(&[2])]);
    }

    #[test]
    fn skeleton_of_top_dimension_is_identity() {
        let k = closure(vec![s(&[0, 1, 2]), s(&[1, 2, 3])]).unwrap();
        assert_eq!(k.skeleton(2).unwrap().maximal_simplices(), k.maximal_simplices());
        assert!(matches!(k.skeleton(3), Err(Error::DimensionOutOfRange { requested: 3, dim: 2 })));
        assert!(matches!(k.delta(5), Err(Error::DimensionOutOfRange { .. })));
    }

    #[test]
    fn skeleton_keeps_low_dimensional_maximal_simplices() {
        let k = closure(vec![s(&[0, 1, 2]), s(&[3, 4]), s(&[5])]).unwrap();
        let one = k.skeleton(1).unwrap();
        assert_eq!(one.maximal_simplices().len(), 3 + 1 + 1);
        assert!(one.contains(&s(&[5])));
    }

    #[test]
    fn join_of_point_pairs_is_square() {
        let two = SimplicialComplex::from_maximal(2, vec![]).unwrap();
        let sq = two.join(&two);
        assert_eq!(sq.dim(), 1);
        assert_eq!(sq.maximal_simplices().len(), 4);
        assert_eq!(sq.labels()[2], "0@1");
    }

    #[test]
    fn boundary_spheres() {
        assert_eq!(boundary_sphere(2).unwrap().maximal_simplices().len(), 3);
        let b3 = boundary_sphere(3).unwrap();
        assert_eq!(b3.dim(), 2);
        assert_eq!(b3.maximal_simplices().len(), 4);
        for m in 1..6 {
            assert_eq!(boundary_sphere(m).unwrap().top_simplices().len(), m + 1);
        }
        assert!(boundary_sphere(0).is_err());
    }

    #[test]
    fn degree_rejects_foreign_simplex() {
        let k = closure(vec![s(&[0, 1, 2])]).unwrap();
        assert_eq!(k.degree(&s(&[0])).unwrap(), 1);
        assert!(matches!(k.degree(&s(&[0, 3])), Err(Error::SimplexNotInComplex(_))));
    }

    #[test]
    fn json_round_trip() {
        let k = closure(vec![s(&[0, 1, 2]), s(&[2, 3])]).unwrap().with_name("demo");
        let text = serde_json::to_string(&k.to_json()).unwrap();
        let back = SimplicialComplex::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.name(), "demo");
    }

    #[test]
    fn json_rejects_wrong_dimension() {
        let json = ComplexJson {
            name: "x".into(),
            n: 1,
            vertices: vec!["a".into(), "b".into(), "c".into()],
            maximal_simplices: vec![vec![0, 1, 2]],
        };
        assert!(matches!(SimplicialComplex::from_json(json), Err(Error::Parse(_))));
    }

    #[test]
    fn facet_degree_sum_counts_each_top_simplex_n_plus_one_times() {
        let k = closure(vec![s(&[0, 1, 2]), s(&[1, 2, 3]), s(&[0, 2, 3]), s(&[3, 4, 5])]).unwrap();
        let n = k.dim();
        let sum: usize = k.delta(n - 1).unwrap().iter().map(|f| k.degree(f).unwrap()).sum();
        assert_eq!(sum, (n + 1) * k.delta(n).unwrap().len());
    }
}
