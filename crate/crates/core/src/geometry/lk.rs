//! Z2 linking numbers (two independent routes) and van Kampen-Flores
//! double-point parity.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::crossing::CrossingCache;
use super::linalg::{affine_rank, solve};
use super::{rational, Embedding, ExactPoint, Rational, Z2};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::sphere::SphereSubcomplex;

fn check_link_input(a: &SphereSubcomplex, b: &SphereSubcomplex, e: &Embedding) -> Result<usize> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::InvalidArgument("link components differ in dimension".into()));
    }
    if e.dim() != 2 * n + 1 {
        return Err(Error::InvalidArgument(format!(
            "linking of {n}-spheres needs an embedding in R^{}, got R^{}",
            2 * n + 1,
            e.dim()
        )));
    }
    if !a.is_vertex_disjoint(b) {
        return Err(Error::InvalidArgument("link components share a vertex".into()));
    }
    Ok(n)
}

/// Parity of the double points, under the projection dropping the last
/// coordinate, where the second component passes over the first.
pub fn lk2_projection(a: &SphereSubcomplex, b: &SphereSubcomplex, e: &Embedding) -> Result<Z2> {
    lk2_projection_cached(a, b, &CrossingCache::new(e))
}

pub fn lk2_projection_cached(
    a: &SphereSubcomplex,
    b: &SphereSubcomplex,
    cache: &CrossingCache<'_>,
) -> Result<Z2> {
    check_link_input(a, b, cache.embedding())?;
    let mut total = 0;
    for sigma in a.simplices() {
        for tau in b.simplices() {
            total += cache.omega(sigma, tau)?;
        }
    }
    Ok(Z2::of_count(total))
}

/// Parity of transverse intersections between the cone `apex * a` and `b`.
/// The cone is an (n+1)-chain with mod-2 boundary `a`, so this counts the
/// Z2 linking number without any projection.
pub fn lk2_cone(
    a: &SphereSubcomplex,
    b: &SphereSubcomplex,
    e: &Embedding,
    apex: &ExactPoint,
) -> Result<Z2> {
    let n = check_link_input(a, b, e)?;
    let d = 2 * n + 1;
    if apex.dim() != d {
        return Err(Error::InvalidArgument("apex dimension mismatch".into()));
    }
    let mut total = 0;
    for sigma in a.simplices() {
        for tau in b.simplices() {
            if cone_pierced(apex, sigma, tau, e)? {
                total += 1;
            }
        }
    }
    Ok(Z2::of_count(total))
}

fn cone_pierced(apex: &ExactPoint, sigma: &Simplex, tau: &Simplex, e: &Embedding) -> Result<bool> {
    let d = e.dim();
    let cone: Vec<&ExactPoint> =
        std::iter::once(apex).chain(sigma.vertices().iter().map(|&v| e.point(v))).collect();
    let (p, q) = (cone.len(), tau.vertices().len());
    let size = p + q;
    debug_assert_eq!(size, d + 2);

    let mut a = vec![vec![Rational::zero(); size]; size];
    let mut b = vec![Rational::zero(); size];
    for c in 0..d {
        for (i, pt) in cone.iter().enumerate() {
            a[c][i] = pt.0[c].clone();
        }
        for (j, &v) in tau.vertices().iter().enumerate() {
            a[c][p + j] = -e.point(v).0[c].clone();
        }
    }
    for i in 0..p {
        a[d][i] = rational(1);
    }
    for j in 0..q {
        a[d + 1][p + j] = rational(1);
    }
    b[d] = rational(1);
    b[d + 1] = rational(1);

    let Some(x) = solve(&a, &b) else {
        let all = cone.iter().map(|p| p.0.as_slice()).chain(tau.vertices().iter().map(|&v| e.point(v).0.as_slice()));
        if affine_rank(all) == d + 1 {
            return Ok(false);
        }
        return Err(Error::DegenerateApex(format!("cone over {sigma} is not transverse to {tau}")));
    };
    if x[0].is_zero() && x[p..].iter().all(Signed::is_positive) && x[1..p].iter().all(Signed::is_positive) {
        return Err(Error::DegenerateConfiguration(format!("{sigma} meets {tau}")));
    }
    if x.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateApex(format!("cone over {sigma} meets {tau} on a face")));
    }
    Ok(x.iter().all(Signed::is_positive))
}

/// [`lk2_cone`] with a seeded random apex, resampled while it is degenerate.
pub fn lk2_cone_sampled(
    a: &SphereSubcomplex,
    b: &SphereSubcomplex,
    e: &Embedding,
    seed: u64,
    max_attempts: u32,
) -> Result<Z2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let apex = ExactPoint(
            (0..e.dim())
                .map(|_| {
                    let num: i64 = rng.gen_range(-1_000_000_000..=1_000_000_000);
                    let den: i64 = rng.gen_range(1..=997);
                    Rational::new(num.into(), den.into())
                })
                .collect(),
        );
        match lk2_cone(a, b, e, &apex) {
            Err(Error::DegenerateApex(_)) => continue,
            other => return other,
        }
    }
    Err(Error::GenericityExhausted { attempts: max_attempts })
}

/// Total number of double points over unordered pairs of disjoint
/// top-dimensional simplices of `k`, for an embedding in R^2n.
pub fn vkf_crossing_count(k: &SimplicialComplex, e: &Embedding) -> Result<usize> {
    let n = k.dim();
    if e.dim() != 2 * n {
        return Err(Error::InvalidArgument(format!(
            "double points of an {n}-complex are counted in R^{}, got R^{}",
            2 * n,
            e.dim()
        )));
    }
    let top = k.top_simplices();
    let cache = CrossingCache::new(e);
    let mut total = 0;
    for (i, s) in top.iter().enumerate() {
        for t in &top[i + 1..] {
            if s.is_disjoint(t) {
                total += cache.count(s, t)?;
            }
        }
    }
    Ok(total)
}

pub fn vkf_parity(k: &SimplicialComplex, e: &Embedding) -> Result<Z2> {
    vkf_crossing_count(k, e).map(Z2::of_count)
}
