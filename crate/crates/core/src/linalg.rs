//! Dense exact linear algebra over a [`Field`].

use crate::coeffs::{Field, Ring};

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<R: Ring>(rows: usize, cols: usize) -> Matrix<R> {
    vec![vec![R::zero(); cols]; rows]
}

pub fn identity<R: Ring>(n: usize) -> Matrix<R> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = R::one();
    }
    m
}

pub fn transpose<R: Ring>(m: &Matrix<R>, cols: usize) -> Matrix<R> {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// `a * b`, where `a` is `n x k` and `b` is `k x m` (`m` given explicitly so
/// that empty shapes compose).
pub fn mat_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>, m: usize) -> Matrix<R> {
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter().zip(b.iter()).fold(R::zero(), |acc, (x, brow)| {
                        if x.is_zero() || brow[j].is_zero() {
                            acc
                        } else {
                            acc.add(&x.mul(&brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].weight()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.sub(&f.mul(p));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>, cols: usize) -> usize {
    rref(&mut m.clone(), cols).len()
}

/// Basis of `{ v : m v = 0 }`; each vector has a 1 in its free column.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][free].neg();
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        let ns = nullspace(&m, 2);
        assert_eq!(ns, vec![vec![r(-2), r(1)]]);
        assert_eq!(rank(&m, 2), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv, 2), identity(2));
        assert!(inverse(&vec![vec![r(1), r(1)], vec![r(1), r(1)]]).is_none());
    }
}
