//! Relabeling-invariant canonical forms.
//!
//! Vertices are colored by their incidence profile, the coloring is refined
//! against the maximal simplices until stable, and ties are broken by
//! individualizing vertices one at a time. Every leaf of that search tree is
//! a labeling; the canonical form is the lexicographically least relabeled
//! simplex list over all leaves. Leaves that reproduce the best encoding
//! yield automorphisms, which prune sibling branches in the same orbit.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::SimplicialComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical index of input vertex `v`.
    pub labeling: Vec<usize>,
    /// Relabeled maximal simplices, each sorted, the list sorted.
    pub simplices: Vec<Vec<usize>>,
    /// Lowercase hex SHA-256 of the canonical encoding.
    pub digest: String,
}

pub fn canonicalize(k: &SimplicialComplex) -> CanonicalForm {
    let hyper = Hypergraph::new(k);
    let mut state = SearchState::default();
    let colors = hyper.refine(hyper.initial_colors());
    let mut path = Vec::new();
    hyper.search(colors, &mut path, &mut state);

    let (simplices, labeling) = state.best.unwrap_or_default();
    let digest = digest(k.vertex_count(), &simplices);
    CanonicalForm { labeling, simplices, digest }
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.maximal_simplices().len() == b.maximal_simplices().len()
        && canonicalize(a).digest == canonicalize(b).digest
}

fn digest(vertex_count: usize, simplices: &[Vec<usize>]) -> String {
    let mut h = Sha256::new();
    h.update(format!("v{vertex_count};").as_bytes());
    for s in simplices {
        for v in s {
            h.update(v.to_string().as_bytes());
            h.update(b",");
        }
        h.update(b";");
    }
    hex::encode(h.finalize())
}

struct Hypergraph {
    n: usize,
    simplices: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

type Encoding = Vec<Vec<usize>>;

#[derive(Default)]
struct SearchState {
    best: Option<(Encoding, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Hypergraph {
    fn new(k: &SimplicialComplex) -> Self {
        let n = k.vertex_count();
        let simplices: Vec<Vec<usize>> =
            k.maximal_simplices().iter().map(|s| s.vertices().to_vec()).collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, s) in simplices.iter().enumerate() {
            for &v in s {
                incidence[v].push(i);
            }
        }
        Self { n, simplices, incidence }
    }

    fn initial_colors(&self) -> Vec<usize> {
        let top = self.simplices.iter().map(Vec::len).max().unwrap_or(0);
        let profiles: Vec<Vec<usize>> = (0..self.n)
            .map(|v| {
                let mut p = vec![0; top + 1];
                for &s in &self.incidence[v] {
                    p[self.simplices[s].len()] += 1;
                }
                p
            })
            .collect();
        rank(&profiles)
    }

    /// Refines until the number of color classes stops growing. Each new
    /// signature starts with the old color, so cells only split and the
    /// relative order of cells is preserved.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_classes(&colors);
        loop {
            if classes == self.n {
                return colors;
            }
            let signatures: Vec<(usize, Vec<(usize, Vec<usize>)>)> = (0..self.n)
                .map(|v| {
                    let mut around: Vec<(usize, Vec<usize>)> = self.incidence[v]
                        .iter()
                        .map(|&s| {
                            let mut c: Vec<usize> = self.simplices[s]
                                .iter()
                                .filter(|&&u| u != v)
                                .map(|&u| colors[u])
                                .collect();
                            c.sort_unstable();
                            (self.simplices[s].len(), c)
                        })
                        .collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let next = rank(&signatures);
            let next_classes = count_classes(&next);
            if next_classes == classes {
                return next;
            }
            classes = next_classes;
            colors = next;
        }
    }

    fn individualize(&self, colors: &[usize], w: usize) -> Vec<usize> {
        let keys: Vec<(usize, bool)> = (0..self.n).map(|u| (colors[u], u != w)).collect();
        rank(&keys)
    }

    fn search(&self, colors: Vec<usize>, path: &mut Vec<usize>, state: &mut SearchState) {
        let Some(cell) = first_nontrivial_cell(&colors) else {
            self.leaf(colors, state);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(w, &explored, path, state) {
                continue;
            }
            let child = self.refine(self.individualize(&colors, w));
            path.push(w);
            self.search(child, path, state);
            path.pop();
            explored.push(w);
        }
    }

    fn equivalent_to_explored(
        &self,
        w: usize,
        explored: &[usize],
        path: &[usize],
        state: &SearchState,
    ) -> bool {
        let stabilizer: Vec<&Vec<usize>> = state
            .automorphisms
            .iter()
            .filter(|g| path.iter().all(|&p| g[p] == p))
            .collect();
        if stabilizer.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for g in stabilizer {
            for (v, &gv) in g.iter().enumerate() {
                uf.union(v, gv);
            }
        }
        let root = uf.find(w);
        explored.iter().any(|&u| uf.find(u) == root)
    }

    fn leaf(&self, labeling: Vec<usize>, state: &mut SearchState) {
        let mut enc: Encoding = self
            .simplices
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&v| labeling[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        enc.sort_unstable();
        match &state.best {
            None => state.best = Some((enc, labeling)),
            Some((best, best_labeling)) => match enc.cmp(best) {
                Ordering::Less => state.best = Some((enc, labeling)),
                Ordering::Equal => {
                    let mut inverse = vec![0; self.n];
                    for (v, &l) in best_labeling.iter().enumerate() {
                        inverse[l] = v;
                    }
                    let g: Vec<usize> = labeling.iter().map(|&l| inverse[l]).collect();
                    if g.iter().enumerate().any(|(v, &gv)| v != gv) {
                        state.automorphisms.push(g);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }
}

fn rank<T: Ord>(keys: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0; keys.len()];
    let mut r = 0;
    for i in 0..order.len() {
        if i > 0 && keys[order[i]] != keys[order[i - 1]] {
            r = i;
        }
        out[order[i]] = r;
    }
    out
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn first_nontrivial_cell(colors: &[usize]) -> Option<Vec<usize>> {
    let mut counts = vec![0usize; colors.len()];
    for &c in colors {
        counts[c] += 1;
    }
    let target = counts.iter().position(|&c| c > 1)?;
    Some((0..colors.len()).filter(|&v| colors[v] == target).collect())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::complex::Simplex;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
        let m = edges.iter().map(|&(a, b)| Simplex::new([a, b]).unwrap()).collect();
        SimplicialComplex::from_maximal(n, m).unwrap()
    }

    fn relabel(k: &SimplicialComplex, perm: &[usize]) -> SimplicialComplex {
        let m = k.maximal_simplices().iter().map(|s| s.map(|v| perm[v])).collect();
        SimplicialComplex::from_maximal(k.vertex_count(), m).unwrap()
    }

    /// Exhaustive isomorphism test over all vertex bijections.
    fn brute_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
        if a.vertex_count() != b.vertex_count() {
            return false;
        }
        let target: std::collections::BTreeSet<&Simplex> = b.maximal_simplices().iter().collect();
        (0..a.vertex_count()).permutations(a.vertex_count()).any(|p| {
            a.maximal_simplices().len() == target.len()
                && a.maximal_simplices().iter().all(|s| target.contains(&s.map(|v| p[v])))
        })
    }

    fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
        use rand::Rng;
        let count = rng.gen_range(1..=9);
        let m = (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=3);
                let mut vs: Vec<usize> = (0..n).collect();
                vs.shuffle(rng);
                Simplex::new(vs.into_iter().take(size)).unwrap()
            })
            .collect();
        SimplicialComplex::from_maximal(n, m).unwrap()
    }

    #[test]
    fn k6_digest_is_relabeling_invariant() {
        let edges: Vec<(usize, usize)> = (0..6).tuple_combinations().collect();
        let k6 = graph(6, &edges);
        let perm = [3, 5, 0, 1, 4, 2];
        assert_eq!(canonicalize(&k6).digest, canonicalize(&relabel(&k6, &perm)).digest);
        assert_eq!(canonicalize(&k6).digest.len(), 64);
    }

    #[test]
    fn cycle_versus_path_plus_edge() {
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_triangles = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_isomorphic(&c6, &two_triangles));
        assert!(!brute_isomorphic(&c6, &two_triangles));
    }

    #[test]
    fn agrees_with_bijection_search_on_small_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..300 {
            let n = 3 + round % 6;
            let a = random_complex(&mut rng, n);
            let b = if round % 3 == 0 {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                relabel(&a, &p)
            } else {
                random_complex(&mut rng, n)
            };
            assert_eq!(is_isomorphic(&a, &b), brute_isomorphic(&a, &b), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn labeling_maps_onto_canonical_simplices() {
        let k = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let form = canonicalize(&k);
        let mut mapped: Vec<Vec<usize>> = k
            .maximal_simplices()
            .iter()
            .map(|s| s.map(|v| form.labeling[v]).vertices().to_vec())
            .collect();
        mapped.sort();
        assert_eq!(mapped, form.simplices);
    }
}
