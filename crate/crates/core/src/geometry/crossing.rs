//! Double points between images of two disjoint n-simplices under the
//! projection R^(2n+1) -> R^2n (or directly in R^2n).

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linalg::{affine_rank, solve};
use super::{rational, Embedding, Rational};
use crate::complex::Simplex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    #[serde(serialize_with = "as_strings")]
    pub alpha: Vec<Rational>,
    #[serde(serialize_with = "as_strings")]
    pub beta: Vec<Rational>,
    /// Whether `tau` lies above `sigma` at the double point; absent when the
    /// embedding lives in R^2n.
    pub over: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingReport {
    pub sigma: Simplex,
    pub tau: Simplex,
    pub crossings: Vec<Crossing>,
}

impl CrossingReport {
    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of double points where `tau` crosses over `sigma`.
    pub fn omega(&self) -> usize {
        self.crossings.iter().filter(|c| c.over == Some(true)).count()
    }
}

fn as_strings<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Solves for the unique pair of barycentric coordinates `(alpha, beta)`
/// with equal images in R^2n. The simplices cross iff all coordinates are
/// strictly positive. A vanishing coordinate, or a singular system whose
/// points do not span R^2n, is reported as degenerate.
pub fn simplex_crossings(sigma: &Simplex, tau: &Simplex, e: &Embedding) -> Result<CrossingReport> {
    let n = sigma.dim();
    if tau.dim() != n {
        return Err(Error::InvalidArgument(format!("{sigma} and {tau} differ in dimension")));
    }
    if !sigma.is_disjoint(tau) {
        return Err(Error::InvalidArgument(format!("{sigma} and {tau} share a vertex")));
    }
    let plane = 2 * n;
    let lifted = match e.dim() {
        d if d == plane + 1 => true,
        d if d == plane => false,
        d => {
            return Err(Error::InvalidArgument(format!(
                "crossings of {n}-simplices need ambient dimension {} or {}, got {d}",
                plane,
                plane + 1
            )))
        }
    };

    let m = n + 1;
    let size = 2 * m;
    let mut a = vec![vec![Rational::zero(); size]; size];
    let mut b = vec![Rational::zero(); size];
    for c in 0..plane {
        for (i, &v) in sigma.vertices().iter().enumerate() {
            a[c][i] = e.point(v).0[c].clone();
        }
        for (j, &v) in tau.vertices().iter().enumerate() {
            a[c][m + j] = -e.point(v).0[c].clone();
        }
    }
    for i in 0..m {
        a[plane][i] = rational(1);
        a[plane + 1][m + i] = rational(1);
    }
    b[plane] = rational(1);
    b[plane + 1] = rational(1);

    let degenerate = |why: &str| Error::DegenerateConfiguration(format!("{sigma} vs {tau}: {why}"));
    let mut report = CrossingReport { sigma: sigma.clone(), tau: tau.clone(), crossings: Vec::new() };
    let Some(x) = solve(&a, &b) else {
        // With the 2n+2 points affinely spanning R^2n the hulls are parallel
        // and disjoint; anything flatter is degenerate.
        let flat = sigma.vertices().iter().chain(tau.vertices()).map(|&v| &e.point(v).0[..plane]);
        if affine_rank(flat) == plane + 1 {
            return Ok(report);
        }
        return Err(degenerate("affine hulls are not transverse"));
    };
    if x.iter().any(Zero::is_zero) {
        return Err(degenerate("double point on a proper face"));
    }
    if x.iter().any(Signed::is_negative) {
        return Ok(report);
    }

    let (alpha, beta) = (x[..m].to_vec(), x[m..].to_vec());
    let over = if lifted {
        let height = |s: &Simplex, w: &[Rational]| -> Rational {
            s.vertices().iter().zip(w).map(|(&v, t)| &e.point(v).0[plane] * t).sum()
        };
        let (hs, ht) = (height(sigma, &alpha), height(tau, &beta));
        if hs == ht {
            return Err(degenerate("images meet in the ambient space"));
        }
        Some(ht > hs)
    } else {
        None
    };
    report.crossings.push(Crossing { alpha, beta, over });
    Ok(report)
}

/// Memoized crossing data for one embedding, keyed by unordered simplex pair.
pub struct CrossingCache<'a> {
    embedding: &'a Embedding,
    /// `None`: no crossing; `Some(true)`: the larger simplex is on top.
    memo: Mutex<HashMap<(Simplex, Simplex), Option<bool>>>,
}

impl<'a> CrossingCache<'a> {
    pub fn new(embedding: &'a Embedding) -> Self {
        Self { embedding, memo: Mutex::new(HashMap::new()) }
    }

    pub fn embedding(&self) -> &Embedding {
        self.embedding
    }

    fn lookup(&self, a: &Simplex, b: &Simplex) -> Result<Option<bool>> {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(hit) = self.memo.lock().expect("cache lock").get(&key) {
            return Ok(*hit);
        }
        let report = simplex_crossings(&key.0, &key.1, self.embedding)?;
        let value = report.crossings.first().map(|c| c.over.unwrap_or(false));
        self.memo.lock().expect("cache lock").insert(key, value);
        Ok(value)
    }

    /// Crossings where `tau` passes over `sigma` (0 or 1 for linear simplices).
    pub fn omega(&self, sigma: &Simplex, tau: &Simplex) -> Result<usize> {
        Ok(match self.lookup(sigma, tau)? {
            None => 0,
            Some(larger_on_top) => usize::from(larger_on_top == (tau > sigma)),
        })
    }

    /// Total number of double points between the two images.
    pub fn count(&self, sigma: &Simplex, tau: &Simplex) -> Result<usize> {
        Ok(usize::from(self.lookup(sigma, tau)?.is_some()))
    }
}
