//! Exact rational matrices: fraction-free elimination, rank, kernel basis.

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix entry at ({0},{1}) is not rational (alpha-bearing entries rejected)")]
    NonRationalEntry(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

#[derive(Debug, Clone)]
pub struct RankKernel {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub kernel_basis: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    fn rational_rows(&self) -> Result<Vec<Vec<BigRational>>, MatrixError> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                row.push(
                    self.get(r, c)
                        .as_rational()
                        .ok_or(MatrixError::NonRationalEntry(r, c))?,
                );
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Exact rank and kernel basis via integer-scaled fraction-free
    /// elimination (Bareiss), pivoting on entry magnitude. Every returned
    /// kernel vector is re-verified by multiplication.
    pub fn rank_kernel(&self) -> Result<RankKernel, MatrixError> {
        let rat = self.rational_rows()?;
        // clear denominators per row
        let mut rows: Vec<Vec<BigInt>> = rat
            .iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for e in row {
                    lcm = lcm_bigint(&lcm, e.denom());
                }
                row.iter()
                    .map(|e| e.numer() * (&lcm / e.denom()))
                    .collect()
            })
            .collect();

        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut prev = BigInt::one();
        let mut next_row = 0usize;
        for col in 0..self.cols {
            // pivot: largest |entry| among remaining rows
            let mut best: Option<(usize, BigInt)> = None;
            for r in next_row..self.rows {
                let v = rows[r][col].clone();
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                match &best {
                    Some((_, m)) if *m >= mag => {}
                    _ => best = Some((r, mag)),
                }
            }
            let Some((pr, _)) = best else { continue };
            rows.swap(next_row, pr);
            let pivot = rows[next_row][col].clone();
            for r in next_row + 1..self.rows {
                let factor = rows[r][col].clone();
                for c in 0..self.cols {
                    let num = &pivot * &rows[r][c] - &factor * &rows[next_row][c];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss divisibility");
                    rows[r][c] = num / &prev;
                }
            }
            prev = pivot;
            pivot_cols.push(col);
            pivot_rows.push(next_row);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        let rank = pivot_cols.len();

        // kernel by back-substitution on the echelon form
        let ech: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|e| BigRational::from_integer(e.clone())).collect())
            .collect();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut kernel_basis = Vec::new();
        for &f in &free_cols {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let row = &ech[pivot_rows[i]];
                let mut acc = BigRational::zero();
                for c in pc + 1..self.cols {
                    if !v[c].is_zero() {
                        acc += &row[c] * &v[c];
                    }
                }
                v[pc] = -acc / &row[pc];
            }
            // verified by multiplication
            for r in 0..self.rows {
                let mut acc = BigRational::zero();
                for c in 0..self.cols {
                    acc += &rat[r][c] * &v[c];
                }
                assert!(acc.is_zero(), "kernel vector failed verification");
            }
            kernel_basis.push(v);
        }
        Ok(RankKernel {
            rank,
            pivot_cols,
            kernel_basis,
        })
    }

    /// Whether the rational vector lies in the column space.
    pub fn column_space_contains(&self, v: &[BigRational]) -> Result<bool, MatrixError> {
        assert_eq!(v.len(), self.rows);
        let base_rank = self.rank_kernel()?.rank;
        let mut aug = RationalMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, Scalar::from_rational(v[r].clone()));
        }
        Ok(aug.rank_kernel()?.rank == base_rank)
    }
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / gcd_bigint(a, b)
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        let m = RationalMatrix::identity(3);
        let rk = m.rank_kernel().unwrap();
        assert_eq!(rk.rank, 3);
        assert!(rk.kernel_basis.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = RationalMatrix::zero(2, 3);
        let rk = m.rank_kernel().unwrap();
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel_basis.len(), 3);
    }

    #[test]
    fn rank_plus_kernel_is_cols() {
        let mut m = RationalMatrix::zero(3, 4);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, Scalar::from_int(2));
        m.set(1, 1, Scalar::ratio(1, 3));
        m.set(1, 3, Scalar::from_int(5));
        m.set(2, 0, Scalar::from_int(3));
        m.set(2, 1, Scalar::from_int(6));
        let rk = m.rank_kernel().unwrap();
        assert_eq!(rk.rank + rk.kernel_basis.len(), 4);
    }

    #[test]
    fn rejects_alpha_entries() {
        let mut m = RationalMatrix::zero(1, 1);
        m.set(0, 0, Scalar::alpha());
        assert!(m.rank_kernel().is_err());
    }
}
