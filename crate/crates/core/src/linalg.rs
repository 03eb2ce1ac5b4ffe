//! Exact linear algebra over the rationals.
//!
//! Small dense matrices only: weight spaces in this crate have dimension
//! `λ + 3/2`, so the systems are tiny.  Elimination is fraction-free in the
//! Bareiss style — each row is cleared of denominators up front and pivot
//! steps use exact integer cross-multiplication with exact division by the
//! previous pivot — so there is no pivot tolerance and no rounding anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::scalar::Scalar;

/// A dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }
}

/// Clear denominators row by row, appending the optional right-hand side to
/// each row first so the scaling stays consistent across the augmented row.
fn to_int_rows(m: &Matrix, extra: Option<&[Scalar]>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let mut rationals: Vec<&BigRational> =
                (0..m.cols).map(|c| m.at(r, c).ratio()).collect();
            if let Some(rhs) = extra {
                rationals.push(rhs[r].ratio());
            }
            let lcm = rationals
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rationals
                .into_iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free forward elimination (Bareiss).  Returns the rows (the first
/// `pivots.len()` of which form the echelon basis) and the pivot column of
/// each of those rows, in increasing order.
///
/// Entries of a pivot row at columns left of its pivot may hold stale values
/// from before the implicit zeroing; callers must only read a row at its
/// pivot column and to the right, which is all back-substitution needs.
fn echelon(mut rows: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    let mut divisor = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(src) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, src);
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col].clone();
            for c in (col + 1)..ncols {
                let num = &pivot * &row[c] - &factor * &pivot_row[c];
                let (quot, rem) = num.div_rem(&divisor);
                assert!(rem.is_zero(), "fraction-free division must be exact");
                row[c] = quot;
            }
            row[col] = BigInt::zero();
        }
        divisor = pivot;
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Basis of the kernel `{x : A·x = 0}`, one coordinate vector per free
/// column in column order; the free coordinate of each vector is 1.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<Scalar>> {
    if a.cols == 0 {
        return Vec::new();
    }
    let (rows, pivots) = echelon(to_int_rows(a, None));
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut x = vec![BigRational::zero(); a.cols];
        x[free] = BigRational::one();
        // Back-substitute pivot coordinates bottom-up; each echelon row is
        // read only at its pivot column and to the right.
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let row = &rows[k];
            let mut acc = BigRational::zero();
            for c in (pc + 1)..a.cols {
                if !x[c].is_zero() {
                    acc += BigRational::from_integer(row[c].clone()) * &x[c];
                }
            }
            x[pc] = -acc / BigRational::from_integer(row[pc].clone());
        }
        basis.push(x.into_iter().map(Scalar::from_ratio).collect());
    }
    basis
}

/// Solve `A·x = b` for square `A`.  Returns `None` when `A` is singular.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows, b.len());
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    if n == 0 {
        return Some(Vec::new());
    }
    let (rows, pivots) = echelon(to_int_rows(a, Some(b)));
    // Full rank forces the pivots into columns 0..n in order; anything else
    // (including a pivot in the augmented column) means no unique solution.
    if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let row = &rows[k];
        let mut acc = BigRational::from_integer(row[n].clone());
        for c in (k + 1)..n {
            acc -= BigRational::from_integer(row[c].clone()) * &x[c];
        }
        x[k] = acc / BigRational::from_integer(row[k].clone());
    }
    Some(x.into_iter().map(Scalar::from_ratio).collect())
}

/// Exact inverse of a square matrix, or `None` when singular.
pub fn invert(a: &Matrix) -> Option<Matrix> {
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    let mut out = Matrix::zero(n, n);
    // Solve n unit systems; the dimensions here are tiny.
    for k in 0..n {
        let mut unit = vec![Scalar::zero(); n];
        unit[k] = Scalar::one();
        let col = solve(a, &unit)?;
        for r in 0..n {
            *out.at_mut(r, k) = col[r].clone();
        }
    }
    Some(out)
}

/// Rank via fraction-free elimination.
pub fn rank(a: &Matrix) -> usize {
    let (_, pivots) = echelon(to_int_rows(a, None));
    pivots.len()
}
