//! Breadth-first search over Delta-Y exchanges, up to isomorphism.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{apply_delta_y, ExchangeRecord};
use crate::complex::{canonicalize, find_tetrahedra, SimplicialComplex};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct FamilyNode {
    pub complex: SimplicialComplex,
    pub digest: String,
    pub parent: Option<String>,
    pub exchange: Option<ExchangeRecord>,
}

#[derive(Clone, Debug)]
pub struct FamilySearch {
    /// Distinct complexes in discovery order; the root comes first.
    pub nodes: Vec<FamilyNode>,
    /// Every (source digest, target digest) exchange seen, including those
    /// leading to already known complexes.
    pub edges: BTreeSet<(String, String)>,
    pub truncated: bool,
}

impl FamilySearch {
    pub fn digests(&self) -> BTreeSet<String> {
        self.nodes.iter().map(|n| n.digest.clone()).collect()
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            root: self.nodes.first().map(|n| n.digest.clone()).unwrap_or_default(),
            truncated: self.truncated,
            nodes: self
                .nodes
                .iter()
                .map(|n| FamilyNodeJson {
                    digest: n.digest.clone(),
                    parent: n.parent.clone(),
                    vertices: n.complex.vertex_count(),
                    simplices: n.complex.top_simplices().len(),
                    tetrahedra: find_tetrahedra(&n.complex).len(),
                    exchanged: n.exchange.as_ref().map(|r| {
                        r.tetra_vertices.vertices().iter().map(|&v| n_label(n, v)).collect()
                    }),
                })
                .collect(),
            edges: self.edges.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
        }
    }
}

fn n_label(node: &FamilyNode, v: usize) -> String {
    node.complex.label(v).to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyNodeJson {
    pub digest: String,
    pub parent: Option<String>,
    pub vertices: usize,
    pub simplices: usize,
    pub tetrahedra: usize,
    /// Labels of the tetrahedron exchanged in the parent to reach this node.
    pub exchanged: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub root: String,
    pub truncated: bool,
    pub nodes: Vec<FamilyNodeJson>,
    pub edges: Vec<[String; 2]>,
}

/// All complexes reachable from `k` by exchanges, deduplicated by canonical
/// digest, stopping once `max_nodes` distinct complexes are known.
pub fn family_search(k: &SimplicialComplex, max_nodes: usize) -> Result<FamilySearch> {
    let root = FamilyNode { complex: k.clone(), digest: canonicalize(k).digest, parent: None, exchange: None };
    let mut index: HashMap<String, usize> = HashMap::from([(root.digest.clone(), 0)]);
    let mut nodes = vec![root];
    let mut edges = BTreeSet::new();
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);

    while let Some(i) = queue.pop_front() {
        let children: Vec<(SimplicialComplex, ExchangeRecord, String)> = find_tetrahedra(&nodes[i].complex)
            .par_iter()
            .map(|t| {
                let (child, rec) = apply_delta_y(&nodes[i].complex, t)?;
                let digest = canonicalize(&child).digest;
                Ok((child, rec, digest))
            })
            .collect::<Result<_>>()?;

        let parent = nodes[i].digest.clone();
        for (child, rec, digest) in children {
            edges.insert((parent.clone(), digest.clone()));
            if index.contains_key(&digest) {
                continue;
            }
            if nodes.len() >= max_nodes {
                truncated = true;
                continue;
            }
            index.insert(digest.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(FamilyNode { complex: child, digest, parent: Some(parent.clone()), exchange: Some(rec) });
        }
    }
    Ok(FamilySearch { nodes, edges, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sigma_skeleton;

    #[test]
    fn k6_family_has_six_members() {
        // K6, P7, P8, K4,4 minus an edge, P9, P10.
        let k6 = sigma_skeleton(5, 1).unwrap();
        let f = family_search(&k6, 100).unwrap();
        assert!(!f.truncated);
        assert_eq!(f.nodes.len(), 6);
        assert!(f.nodes.iter().all(|n| n.complex.top_simplices().len() == 15));
    }

    #[test]
    fn truncation_is_flagged() {
        let k6 = sigma_skeleton(5, 1).unwrap();
        let f = family_search(&k6, 2).unwrap();
        assert!(f.truncated);
        assert_eq!(f.nodes.len(), 2);
    }
}
