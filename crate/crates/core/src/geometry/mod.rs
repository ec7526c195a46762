//! Exact-arithmetic geometry: vertex-linear embeddings with rational
//! coordinates, general-position checks, simplex crossings, Z2 linking
//! numbers and double-point parities.

mod crossing;
mod embed;
pub mod linalg;
mod lk;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use crossing::{simplex_crossings, Crossing, CrossingCache, CrossingReport};
pub use embed::{
    general_position_witness, moment_embedding, randomized_embedding, randomized_embedding_with,
    validate_general_position, EmbedOptions, DEFAULT_MAX_RESAMPLE,
};
pub use lk::{
    lk2_cone, lk2_cone_sampled, lk2_projection, lk2_projection_cached, vkf_crossing_count, vkf_parity,
};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Element of Z/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2(bool);

impl Z2 {
    pub const ZERO: Z2 = Z2(false);
    pub const ONE: Z2 = Z2(true);

    pub fn of_count(count: usize) -> Self {
        Z2(count % 2 == 1)
    }

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn value(self) -> u8 {
        u8::from(self.0)
    }
}

impl Add for Z2 {
    type Output = Z2;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Z2) -> Z2 {
        Z2(self.0 ^ rhs.0)
    }
}

impl AddAssign for Z2 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Z2) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Z2 {
    fn sum<I: Iterator<Item = Z2>>(iter: I) -> Z2 {
        iter.fold(Z2::ZERO, Add::add)
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoint(pub Vec<Rational>);

impl ExactPoint {
    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| rational(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

/// How an embedding was produced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub attempt: u32,
    pub params: Vec<i64>,
    pub shear: Vec<Vec<i64>>,
}

/// A vertex-linear map of a complex into R^d, given by one exact point per
/// vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    dim: usize,
    labels: Vec<String>,
    points: Vec<ExactPoint>,
    provenance: Provenance,
}

impl Embedding {
    pub fn new(k: &SimplicialComplex, points: Vec<ExactPoint>) -> Result<Self> {
        Self::with_provenance(k, points, Provenance::default())
    }

    pub fn with_provenance(
        k: &SimplicialComplex,
        points: Vec<ExactPoint>,
        provenance: Provenance,
    ) -> Result<Self> {
        if points.len() != k.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "{} points for {} vertices",
                points.len(),
                k.vertex_count()
            )));
        }
        let dim = points.first().map_or(0, ExactPoint::dim);
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidArgument("points of mixed dimension".into()));
        }
        Ok(Self { dim, labels: k.labels().to_vec(), points, provenance })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, v: usize) -> &ExactPoint {
        &self.points[v]
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Drops the last coordinate of every point.
    pub fn project(&self) -> Embedding {
        let points = self
            .points
            .iter()
            .map(|p| ExactPoint(p.0[..p.0.len().saturating_sub(1)].to_vec()))
            .collect();
        Embedding {
            dim: self.dim.saturating_sub(1),
            labels: self.labels.clone(),
            points,
            provenance: self.provenance.clone(),
        }
    }

    /// Applies `x -> matrix * x + shift` to every point.
    pub fn map_affine(&self, matrix: &[Vec<Rational>], shift: &[Rational]) -> Embedding {
        let points = self
            .points
            .iter()
            .map(|p| {
                ExactPoint(
                    matrix
                        .iter()
                        .zip(shift)
                        .map(|(row, s)| row.iter().zip(&p.0).map(|(a, x)| a * x).sum::<Rational>() + s)
                        .collect(),
                )
            })
            .collect();
        Embedding {
            dim: matrix.len(),
            labels: self.labels.clone(),
            points,
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_json(&self) -> EmbeddingJson {
        EmbeddingJson {
            dim: self.dim,
            seed: self.provenance.seed.unwrap_or(0),
            points: self
                .labels
                .iter()
                .zip(&self.points)
                .map(|(l, p)| (l.clone(), p.0.iter().map(|x| x.to_string()).collect()))
                .collect(),
            params: (!self.provenance.params.is_empty()).then(|| self.provenance.params.clone()),
            shear: (!self.provenance.shear.is_empty()).then(|| self.provenance.shear.clone()),
        }
    }

    pub fn from_json(json: &EmbeddingJson, k: &SimplicialComplex) -> Result<Self> {
        let points = k
            .labels()
            .iter()
            .map(|l| {
                let coords = json
                    .points
                    .get(l)
                    .ok_or_else(|| Error::Parse(format!("no point for vertex `{l}`")))?;
                if coords.len() != json.dim {
                    return Err(Error::Parse(format!("point `{l}` is not {}-dimensional", json.dim)));
                }
                coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>().map(ExactPoint)
            })
            .collect::<Result<Vec<_>>>()?;
        if json.points.len() != k.vertex_count() {
            return Err(Error::Parse("embedding names vertices outside the complex".into()));
        }
        let provenance = Provenance {
            seed: Some(json.seed),
            attempt: 0,
            params: json.params.clone().unwrap_or_default(),
            shear: json.shear.clone().unwrap_or_default(),
        };
        let mut e = Embedding::with_provenance(k, points, provenance)?;
        e.dim = json.dim;
        Ok(e)
    }
}

/// On-disk form of an embedding: coordinates are exact `num/den` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub dim: usize,
    pub seed: u64,
    pub points: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shear: Option<Vec<Vec<i64>>>,
}

