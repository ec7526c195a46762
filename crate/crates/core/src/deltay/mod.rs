//! Delta-Y exchanges on simplicial n-complexes.
//!
//! An exchange removes the n+2 facets of an n-tetrahedron on the vertex set
//! S and adds a fresh vertex x coned over the (n-1)-skeleton of S. Spheres
//! of the source complex are carried across by rerouting the facets of S
//! they use through x.

mod family;
mod hdpet;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::constructions::{build_k, gamma_xi_tetrahedra};
use crate::error::{Error, Result};
use crate::linking::{lambda_pattern, EnumerationMode, PairFamily};
use crate::sphere::{SphereKind, SpherePair, SphereSubcomplex};

pub use family::{family_search, FamilyJson, FamilyNode, FamilySearch};
pub use hdpet::{hdpet_certificate, orbit_degree_multisets, DegreeMethod, DisjointnessCertificate};

/// One exchange: which facets went away and which cone simplices replaced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeRecord {
    pub source: String,
    /// Vertex set of the underlying (n+1)-simplex.
    pub tetra_vertices: Simplex,
    pub removed: Vec<Simplex>,
    pub x: usize,
    pub added: Vec<Simplex>,
}

impl ExchangeRecord {
    pub fn n(&self) -> usize {
        self.tetra_vertices.dim() - 1
    }
}

/// Result of carrying a sphere across an exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transport {
    Sphere(SphereSubcomplex),
    /// The sphere was the exchanged tetrahedron itself.
    Dropped,
}

fn tetra_vertex_set(k: &SimplicialComplex, tetra: &SphereSubcomplex) -> Result<Simplex> {
    let n = k.dim();
    let fail = |why: &str| Error::NotATetrahedron(why.to_string());
    if n == 0 {
        return Err(fail("exchanges need n >= 1"));
    }
    let vertices = Simplex::new(tetra.vertices()).map_err(|_| fail("empty simplex set"))?;
    let mut facets = vertices.facets();
    facets.sort();
    if vertices.dim() != n + 1 || tetra.simplices() != facets.as_slice() {
        return Err(fail(&format!("{vertices} does not bound an ({})-simplex", n + 1)));
    }
    if let Some(missing) = tetra.simplices().iter().find(|s| !k.contains(s) || s.dim() != n) {
        return Err(fail(&format!("{missing} is not an {n}-simplex of the complex")));
    }
    Ok(vertices)
}

fn fresh_label(k: &SimplicialComplex, x: usize) -> String {
    let mut label = format!("x{x}");
    while k.vertex_by_label(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Replaces the tetrahedron `tetra` of `k` by the cone from a new vertex over
/// the (n-1)-skeleton of its vertex set.
pub fn apply_delta_y(
    k: &SimplicialComplex,
    tetra: &SphereSubcomplex,
) -> Result<(SimplicialComplex, ExchangeRecord)> {
    let vertices = tetra_vertex_set(k, tetra)?;
    let n = k.dim();
    let x = k.vertex_count();

    let removed: Vec<Simplex> = tetra.simplices().to_vec();
    let mut added: Vec<Simplex> = vertices.faces(n - 1).map(|rho| rho.with_vertex(x)).collect();
    added.sort();

    let mut maximal: Vec<Simplex> =
        k.maximal_simplices().iter().filter(|s| removed.binary_search(s).is_err()).cloned().collect();
    maximal.extend(added.iter().cloned());
    let mut labels = k.labels().to_vec();
    labels.push(fresh_label(k, x));

    let target = SimplicialComplex::new(format!("{}+Y", k.name()), labels, maximal)?;
    let record = ExchangeRecord { source: k.name().to_string(), tetra_vertices: vertices, removed, x, added };
    Ok((target, record))
}

/// Mod-2 boundary of a set of n-simplices.
fn z2_boundary(simplices: &[Simplex]) -> Vec<Simplex> {
    let mut counts: HashMap<Simplex, usize> = HashMap::new();
    for s in simplices {
        for f in s.facets() {
            *counts.entry(f).or_default() += 1;
        }
    }
    let mut out: Vec<Simplex> = counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(f, _)| f).collect();
    out.sort();
    out
}

/// Carries a sphere of the source complex to the target: the exchanged
/// facets it uses are replaced by the cone from x over their mod-2 boundary.
pub fn transport_sphere(sphere: &SphereSubcomplex, rec: &ExchangeRecord) -> Result<Transport> {
    let used: Vec<Simplex> = sphere.simplices().iter().filter(|s| rec.removed.binary_search(s).is_ok()).cloned().collect();
    if used.is_empty() {
        return Ok(Transport::Sphere(sphere.clone()));
    }
    if used.len() == rec.removed.len() {
        if sphere.simplices().len() == used.len() {
            return Ok(Transport::Dropped);
        }
        return Err(Error::TransportBroken(format!(
            "sphere contains the whole tetrahedron {} plus other simplices",
            rec.tetra_vertices
        )));
    }

    let mut simplices: Vec<Simplex> =
        sphere.simplices().iter().filter(|s| used.binary_search(s).is_err()).cloned().collect();
    simplices.extend(z2_boundary(&used).into_iter().map(|rho| rho.with_vertex(rec.x)));
    let out = SphereSubcomplex::new(simplices, SphereKind::Transported);
    if !out.is_valid() {
        return Err(Error::TransportBroken(format!(
            "rerouting through x{} does not give a sphere",
            rec.x
        )));
    }
    Ok(Transport::Sphere(out))
}

/// Transports every pair, dropping pairs with the exchanged tetrahedron as
/// a component.
pub fn transport_family(family: &PairFamily, rec: &ExchangeRecord) -> Result<PairFamily> {
    let mut pairs = Vec::with_capacity(family.len());
    for p in family.pairs() {
        let a = transport_sphere(p.first(), rec)?;
        let b = transport_sphere(p.second(), rec)?;
        let (Transport::Sphere(a), Transport::Sphere(b)) = (a, b) else { continue };
        if !a.is_vertex_disjoint(&b) {
            return Err(Error::TransportBroken("transported components intersect".into()));
        }
        pairs.push(SpherePair::new(a, b));
    }
    Ok(PairFamily::new(EnumerationMode::Transported, pairs))
}

/// One step of an exchange chain started at K^(n).
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub complex: SimplicialComplex,
    pub record: ExchangeRecord,
    pub family: PairFamily,
}

/// Applies the Gamma-Xi exchanges of K^(n) in the given order (indices into
/// the Xi set), transporting the pattern family along the way.
pub fn xi_exchange_chain(n: usize, order: &[usize]) -> Result<(SimplicialComplex, PairFamily, Vec<ChainStep>)> {
    let (k, _) = build_k(n)?;
    let tetras = gamma_xi_tetrahedra(n)?;
    check_order(order, tetras.len())?;
    let start_family = lambda_pattern(&k);
    let mut steps: Vec<ChainStep> = Vec::with_capacity(order.len());
    for &i in order {
        let (current, family) = match steps.last() {
            Some(s) => (&s.complex, &s.family),
            None => (&k, &start_family),
        };
        let (next, record) = apply_delta_y(current, &tetras[i])?;
        let family = transport_family(family, &record)?;
        steps.push(ChainStep { complex: next, record, family });
    }
    Ok((k, start_family, steps))
}

fn check_order(order: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    for &i in order {
        if i >= len || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidArgument(format!("bad exchange order {order:?}")));
        }
    }
    Ok(())
}

/// P^(n): K^(n) with every Gamma-Xi tetrahedron exchanged.
pub fn build_p(n: usize) -> Result<SimplicialComplex> {
    let count = gamma_xi_tetrahedra(n)?.len();
    build_p_in_order(n, &(0..count).collect::<Vec<_>>())
}

/// P^(n) built with the exchanges applied in `order`, a permutation of the
/// Xi indices.
pub fn build_p_in_order(n: usize, order: &[usize]) -> Result<SimplicialComplex> {
    let tetras = gamma_xi_tetrahedra(n)?;
    if order.len() != tetras.len() {
        return Err(Error::InvalidArgument(format!("order must list all {} exchanges", tetras.len())));
    }
    check_order(order, tetras.len())?;
    let (mut k, _) = build_k(n)?;
    for &i in order {
        k = apply_delta_y(&k, &tetras[i])?.0;
    }
    Ok(k.with_name(format!("P^({n})")))
}

/// Checks the degree relation for (n-2)-simplices across one exchange:
/// simplices of the source keep their degree, those through x have degree 6.
/// Returns a description of every violation.
pub fn degree_equation_violations(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    rec: &ExchangeRecord,
) -> Result<Vec<String>> {
    let n = source.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("the degree relation concerns n >= 2".into()));
    }
    let mut bad = Vec::new();
    for s in target.delta(n - 2)? {
        let after = target.degree(s)?;
        if s.contains_vertex(rec.x) {
            if after != 6 {
                bad.push(format!("{s} through x has degree {after}, expected 6"));
            }
        } else {
            let before = source.degree(s)?;
            if before != after {
                bad.push(format!("{s} changed degree {before} -> {after}"));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sigma_skeleton;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn graph_exchange_keeps_edge_count() {
        let k6 = sigma_skeleton(5, 1).unwrap();
        let tri = SphereSubcomplex::tetrahedron(&s(&[0, 1, 2]));
        let (y, rec) = apply_delta_y(&k6, &tri).unwrap();
        assert_eq!((y.vertex_count(), y.top_simplices().len()), (7, 15));
        assert_eq!(rec.x, 6);
        assert_eq!(rec.added, vec![s(&[0, 6]), s(&[1, 6]), s(&[2, 6])]);
        assert_eq!(y.label(6), "x6");
    }

    #[test]
    fn two_dimensional_exchange_adds_two_triangles() {
        let k = sigma_skeleton(5, 2).unwrap();
        let t = SphereSubcomplex::tetrahedron(&s(&[0, 1, 2, 3]));
        let (y, rec) = apply_delta_y(&k, &t).unwrap();
        assert_eq!(y.top_simplices().len(), k.top_simplices().len() + 2);
        assert!(k.skeleton(1).unwrap().is_subcomplex_of(&y));
        assert!(degree_equation_violations(&k, &y, &rec).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_tetrahedra() {
        let k = sigma_skeleton(4, 1).unwrap();
        let square = SphereSubcomplex::new(vec![s(&[0, 1]), s(&[1, 2]), s(&[2, 3]), s(&[0, 3])], SphereKind::Cycle);
        assert!(matches!(apply_delta_y(&k, &square), Err(Error::NotATetrahedron(_))));
        let c4 = crate::constructions::fold_join(2, 2).unwrap();
        let missing = SphereSubcomplex::tetrahedron(&s(&[0, 1, 2]));
        assert!(matches!(apply_delta_y(&c4, &missing), Err(Error::NotATetrahedron(_))));
    }

    #[test]
    fn square_through_two_triangle_edges() {
        // Triangle u v w = 0 1 2, square 0-1-2-3-0 uses edges 01 and 12.
        let k = sigma_skeleton(3, 1).unwrap();
        let (_, rec) = apply_delta_y(&k, &SphereSubcomplex::tetrahedron(&s(&[0, 1, 2]))).unwrap();
        let square = SphereSubcomplex::new(vec![s(&[0, 1]), s(&[1, 2]), s(&[2, 3]), s(&[0, 3])], SphereKind::Cycle);
        let Transport::Sphere(out) = transport_sphere(&square, &rec).unwrap() else { panic!("dropped") };
        assert_eq!(out.simplices(), &[s(&[0, 3]), s(&[0, 4]), s(&[2, 3]), s(&[2, 4])]);
    }

    #[test]
    fn identity_and_drop_cases() {
        let k = sigma_skeleton(5, 1).unwrap();
        let tri = SphereSubcomplex::tetrahedron(&s(&[0, 1, 2]));
        let (_, rec) = apply_delta_y(&k, &tri).unwrap();
        let far = SphereSubcomplex::tetrahedron(&s(&[3, 4, 5]));
        assert_eq!(transport_sphere(&far, &rec).unwrap(), Transport::Sphere(far.clone()));
        assert_eq!(transport_sphere(&tri, &rec).unwrap(), Transport::Dropped);
    }

    #[test]
    fn p_vertex_counts() {
        let p1 = build_p(1).unwrap();
        assert_eq!((p1.vertex_count(), p1.top_simplices().len()), (10, 15));
        let p2 = build_p(2).unwrap();
        assert_eq!(p2.vertex_count(), 19);
        assert!(build_p_in_order(1, &[0, 0, 1]).is_err());
    }
}
