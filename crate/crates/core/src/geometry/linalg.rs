//! Exact linear algebra over the rationals, done fraction-free over the
//! integers where possible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Scales a rational row by the lcm of its denominators. Row scaling leaves
/// rank and solution sets unchanged.
pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank of a rectangular integer matrix (fraction-free row echelon form).
pub fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Dimension of the affine span of `points`, plus one.
pub fn affine_rank<'a>(points: impl IntoIterator<Item = &'a [Rational]>) -> usize {
    rank(
        points
            .into_iter()
            .map(|p| {
                let mut h = p.to_vec();
                h.push(Rational::one());
                integer_row(&h)
            })
            .collect(),
    )
}

/// Unique solution of the square system `a x = b`, or `None` if `a` is
/// singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            integer_row(&full)
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(p, k);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn rat(x: i64, y: i64) -> Rational {
        Rational::new(x.into(), y.into())
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for size in 0..6 {
            for _ in 0..40 {
                let m: Vec<Vec<BigInt>> = (0..size)
                    .map(|_| (0..size).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect())
                    .collect();
                assert_eq!(determinant(m.clone()), cofactor_det(&m));
            }
        }
    }

    #[test]
    fn pivoting_determinant() {
        assert_eq!(determinant(ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(ints(&[&[0, 1, 2], &[0, 3, 4], &[5, 6, 7]])), BigInt::from(-10));
    }

    #[test]
    fn rank_of_rectangular_matrices() {
        assert_eq!(rank(ints(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(ints(&[&[0, 0, 1], &[0, 2, 0], &[0, 0, 0]])), 2);
        assert_eq!(rank(ints(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 3), rat(-1, 1)]];
        let b = vec![rat(3, 1), rat(-2, 3)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
        let singular = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(solve(&singular, &b).is_none());
    }
}
