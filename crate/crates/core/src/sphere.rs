//! Sphere subcomplexes and unordered pairs of them.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::Simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereKind {
    Tetrahedron,
    Octahedron,
    Cycle,
    Transported,
}

/// A set of n-simplices forming a combinatorial n-sphere.
///
/// Equality and ordering look only at the simplex set, never at `kind`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SphereSubcomplex {
    n: usize,
    simplices: Vec<Simplex>,
    kind: SphereKind,
}

impl SphereSubcomplex {
    /// Wraps a simplex set; the caller is responsible for the sphere property
    /// (see [`is_z2_sphere`]). Simplices are sorted and deduplicated.
    pub fn new(mut simplices: Vec<Simplex>, kind: SphereKind) -> Self {
        simplices.sort();
        simplices.dedup();
        let n = simplices.first().map_or(0, Simplex::dim);
        Self { n, simplices, kind }
    }

    /// The boundary of the simplex spanned by `vertices`.
    pub fn tetrahedron(vertices: &Simplex) -> Self {
        Self::new(vertices.facets(), SphereKind::Tetrahedron)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn kind(&self) -> SphereKind {
        self.kind
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.simplices.iter().flat_map(|s| s.vertices().iter().copied()).collect()
    }

    pub fn is_vertex_disjoint(&self, other: &SphereSubcomplex) -> bool {
        let mine = self.vertices();
        other.simplices.iter().all(|s| s.vertices().iter().all(|v| !mine.contains(v)))
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.binary_search(s).is_ok()
    }

    pub fn is_valid(&self) -> bool {
        is_z2_sphere(&self.simplices)
    }
}

impl PartialEq for SphereSubcomplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SphereSubcomplex {}

impl PartialOrd for SphereSubcomplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SphereSubcomplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.simplices.cmp(&other.simplices)
    }
}

impl std::hash::Hash for SphereSubcomplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.simplices.hash(state);
    }
}

/// An unordered pair of vertex-disjoint spheres, stored with the smaller
/// component first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpherePair {
    first: SphereSubcomplex,
    second: SphereSubcomplex,
}

impl SpherePair {
    pub fn new(a: SphereSubcomplex, b: SphereSubcomplex) -> Self {
        if a <= b {
            Self { first: a, second: b }
        } else {
            Self { first: b, second: a }
        }
    }

    pub fn first(&self) -> &SphereSubcomplex {
        &self.first
    }

    pub fn second(&self) -> &SphereSubcomplex {
        &self.second
    }

    pub fn is_disjoint(&self) -> bool {
        self.first.is_vertex_disjoint(&self.second)
    }
}

/// True iff every (n-1)-face of `simplices` lies in exactly two of them and
/// the simplices are connected through shared (n-1)-faces. For n = 0 the
/// only sphere is a pair of points.
pub fn is_z2_sphere(simplices: &[Simplex]) -> bool {
    let Some(first) = simplices.first() else { return false };
    let n = first.dim();
    if simplices.iter().any(|s| s.dim() != n) {
        return false;
    }
    let distinct: BTreeSet<&Simplex> = simplices.iter().collect();
    if distinct.len() != simplices.len() {
        return false;
    }
    if n == 0 {
        return simplices.len() == 2;
    }

    let mut owners: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, s) in simplices.iter().enumerate() {
        for f in s.facets() {
            owners.entry(f).or_default().push(i);
        }
    }
    if owners.values().any(|o| o.len() != 2) {
        return false;
    }

    let mut parent: Vec<usize> = (0..simplices.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for o in owners.values() {
        let (a, b) = (find(&mut parent, o[0]), find(&mut parent, o[1]));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..simplices.len()).all(|i| find(&mut parent, i) == root)
}
