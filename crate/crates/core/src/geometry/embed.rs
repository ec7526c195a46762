use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linalg::{integer_row, rank};
use super::{rational, Embedding, ExactPoint, Provenance, Rational};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_RESAMPLE: u32 = 64;

#[derive(Clone, Copy, Debug)]
pub struct EmbedOptions {
    pub max_attempts: u32,
    /// Apply a random unimodular shear after placing points on the moment curve.
    pub shear: bool,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        Self { max_attempts: DEFAULT_MAX_RESAMPLE, shear: true }
    }
}

/// Places vertex v at `(t_v, t_v^2, ..., t_v^d)`.
pub fn moment_embedding(k: &SimplicialComplex, d: usize, params: &[i64]) -> Result<Embedding> {
    if params.len() != k.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "{} moment parameters for {} vertices",
            params.len(),
            k.vertex_count()
        )));
    }
    let mut seen = HashSet::new();
    if let Some(&dup) = params.iter().find(|t| !seen.insert(**t)) {
        return Err(Error::DuplicateParameter(dup));
    }
    let points = params.iter().map(|&t| moment_point(t, d)).collect();
    Embedding::with_provenance(k, points, Provenance { params: params.to_vec(), ..Default::default() })
}

fn moment_point(t: i64, d: usize) -> ExactPoint {
    let t = BigInt::from(t);
    let mut acc = BigInt::from(1);
    ExactPoint(
        (0..d)
            .map(|_| {
                acc *= &t;
                Rational::from_integer(acc.clone())
            })
            .collect(),
    )
}

pub fn randomized_embedding(k: &SimplicialComplex, d: usize, seed: u64) -> Result<Embedding> {
    randomized_embedding_with(k, d, seed, EmbedOptions::default())
}

/// Seeded generic embedding: distinct moment parameters drawn from
/// `[-10|V|, 10|V|]`, shuffled across vertices, then sheared by a random
/// unimodular integer matrix. Attempt `a` uses ChaCha stream `a` of `seed`.
///
/// General position is checked at order `d + 1` in R^d, and additionally at
/// order `2n + 1` after dropping the last coordinate when `d = 2n + 1`.
pub fn randomized_embedding_with(
    k: &SimplicialComplex,
    d: usize,
    seed: u64,
    opts: EmbedOptions,
) -> Result<Embedding> {
    let v = k.vertex_count();
    let n = k.dim();
    for attempt in 0..opts.max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(attempt));

        let bound = 10 * v.max(1) as i64;
        let mut params: Vec<i64> = rand::seq::index::sample(&mut rng, (2 * bound + 1) as usize, v)
            .into_iter()
            .map(|i| i as i64 - bound)
            .collect();
        params.shuffle(&mut rng);
        let shear = if opts.shear { random_unimodular(&mut rng, d) } else { identity_int(d) };

        let points: Vec<ExactPoint> = params
            .iter()
            .map(|&t| {
                let p = moment_point(t, d);
                ExactPoint(
                    shear
                        .iter()
                        .map(|row| row.iter().zip(&p.0).map(|(&a, x)| rational(a) * x).sum())
                        .collect(),
                )
            })
            .collect();

        if !validate_general_position(&points, (d + 1).min(v)) {
            continue;
        }
        if d == 2 * n + 1 {
            let flat: Vec<ExactPoint> = points.iter().map(|p| ExactPoint(p.0[..d - 1].to_vec())).collect();
            if !validate_general_position(&flat, (2 * n + 1).min(v)) {
                continue;
            }
        }
        let provenance = Provenance { seed: Some(seed), attempt, params, shear };
        return Embedding::with_provenance(k, points, provenance);
    }
    Err(Error::GenericityExhausted { attempts: opts.max_attempts })
}

fn identity_int(d: usize) -> Vec<Vec<i64>> {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

/// Product of a unit lower and a unit upper triangular matrix with small
/// random entries; determinant 1.
fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<i64>> {
    let mut lower = identity_int(d);
    let mut upper = identity_int(d);
    for i in 0..d {
        for j in 0..i {
            lower[i][j] = rng.gen_range(-2..=2);
            upper[j][i] = rng.gen_range(-2..=2);
        }
    }
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|m| lower[i][m] * upper[m][j]).sum()).collect())
        .collect()
}

/// True iff every `order`-subset of `points` is affinely independent.
pub fn validate_general_position(points: &[ExactPoint], order: usize) -> bool {
    general_position_witness(points, order).is_none()
}

/// The first `order`-subset (in lexicographic order) that is affinely
/// dependent, if any.
pub fn general_position_witness(points: &[ExactPoint], order: usize) -> Option<Vec<usize>> {
    if order == 0 || order > points.len() {
        return None;
    }
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut h = p.0.clone();
            h.push(rational(1));
            integer_row(&h)
        })
        .collect();
    let subsets: Vec<Vec<usize>> = (0..points.len()).combinations(order).collect();
    subsets
        .into_par_iter()
        .find_first(|subset| rank(subset.iter().map(|&i| rows[i].clone()).collect()) < order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_k, sigma_skeleton};

    #[test]
    fn moment_points_in_the_plane() {
        let k = sigma_skeleton(2, 1).unwrap();
        let e = moment_embedding(&k, 2, &[0, 1, 2]).unwrap();
        assert_eq!(e.point(2), &ExactPoint::from_ints(&[2, 4]));
        assert!(validate_general_position(e.points(), 3));
    }

    #[test]
    fn k6_on_the_moment_curve_is_generic() {
        let k = sigma_skeleton(5, 1).unwrap();
        let e = moment_embedding(&k, 3, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(validate_general_position(e.points(), 4));
        let shifted = moment_embedding(&k, 3, &[7, 8, 9, 10, 11, 12]).unwrap();
        assert!(validate_general_position(shifted.points(), 4));
    }

    #[test]
    fn duplicate_parameters_are_rejected() {
        let k = sigma_skeleton(2, 1).unwrap();
        assert!(matches!(moment_embedding(&k, 3, &[1, 2, 1]), Err(Error::DuplicateParameter(1))));
    }

    #[test]
    fn coplanar_points_are_caught_with_witness() {
        let pts = vec![
            ExactPoint::from_ints(&[0, 0, 0]),
            ExactPoint::from_ints(&[1, 0, 0]),
            ExactPoint::from_ints(&[0, 1, 0]),
            ExactPoint::from_ints(&[3, 5, 0]),
            ExactPoint::from_ints(&[1, 1, 1]),
        ];
        assert!(!validate_general_position(&pts, 4));
        assert_eq!(general_position_witness(&pts, 4), Some(vec![0, 1, 2, 3]));
        assert!(validate_general_position(&pts, 3) || general_position_witness(&pts, 3).is_some());
    }

    #[test]
    fn seeded_embeddings_are_reproducible() {
        let (k, _) = build_k(1).unwrap();
        let a = randomized_embedding(&k, 3, 42).unwrap();
        let b = randomized_embedding(&k, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
        assert_ne!(a, randomized_embedding(&k, 3, 43).unwrap());
    }

    #[test]
    fn unsheared_embedding_is_a_permuted_moment_curve() {
        let (k, _) = build_k(1).unwrap();
        let opts = EmbedOptions { shear: false, ..Default::default() };
        let e = randomized_embedding_with(&k, 3, 5, opts).unwrap();
        let expected = moment_embedding(&k, 3, &e.provenance().params).unwrap();
        assert_eq!(e.points(), expected.points());
    }

    #[test]
    fn random_shears_are_unimodular() {
        use crate::geometry::linalg::determinant;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 1..7 {
            let m = random_unimodular(&mut rng, d);
            let big = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            assert_eq!(determinant(big), BigInt::from(1));
        }
    }
}
