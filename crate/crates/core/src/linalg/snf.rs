//! Smith normal form of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::echelon::Echelon;
use super::IntMatrix;
use crate::ring::IntRing;

/// Invariant factors `d₁ | d₂ | …` (all nonzero diagonal entries, ones
/// included) and the rank.
pub fn snf(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    // Row-echelon first: it has at most `cols` rows and the same row lattice.
    let hnf = hermite_rows(m);
    let mut a: Vec<Vec<BigInt>> = hnf;
    let rows = a.len();
    let cols = m.cols();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &-q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &-q);
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = a[t][t].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => row_axpy(&mut a, t, i, &BigInt::one()),
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    let rank = diag.len();
    (diag, rank)
}

fn hermite_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut e = Echelon::new(IntRing, m.cols());
    for row in m.rows_iter() {
        e.insert(
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone())),
        );
    }
    e.rows()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); m.cols()];
            for (j, x) in r {
                dense[*j] = x.clone();
            }
            dense
        })
        .collect()
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let v = x.abs();
            if best.as_ref().map_or(true, |b| v < b.2) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `row[i] += q * row[src]`
fn row_axpy(a: &mut [Vec<BigInt>], i: usize, src: usize, q: &BigInt) {
    let s = a[src].clone();
    for (x, y) in a[i].iter_mut().zip(&s) {
        *x += q * y;
    }
}

/// `col[j] += q * col[src]`
fn col_axpy(a: &mut [Vec<BigInt>], j: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let v = q * &row[src];
        row[j] += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])), (f(&[1, 6]), 2));
        assert_eq!(snf(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]])), (vec![], 0));
        assert_eq!(snf(&IntMatrix::from_i64(&[&[2, 4], &[0, 0]])), (f(&[2]), 1));
        assert_eq!(snf(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), (f(&[2, 6, 12]), 3));
    }

    #[test]
    fn determinant_matches_product() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(snf(&m), (f(&[1, 2]), 2));
    }
}
