//! Exact determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Pivots are chosen over the whole remaining submatrix, taking
/// the nonzero entry of least magnitude; each row or column swap flips the sign.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_negative = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                let bits = x.bits();
                if !matches!(best, Some((_, _, b)) if bits >= b) {
                    best = Some((i, j, bits));
                    if bits == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 1))) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else {
            return BigInt::zero();
        };
        if pi != k {
            a.swap(pi, k);
            sign_negative = !sign_negative;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign_negative = !sign_negative;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let t = pivot * &row[j] - &factor * &pivot_row[j];
                // exact: every intermediate is a minor of the input
                row[j] = if prev.is_one() { t } else { t / &prev };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

/// Determinant of a square rational matrix: each row is scaled to integers by
/// the lcm of its denominators, and the scale is divided back out.
pub fn rational_determinant(a: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    BigRational::new(bareiss_determinant(rows), scale)
}
