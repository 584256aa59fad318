//! Truncated formal series in hbar with polynomial coefficients.
//!
//! All operations truncate at the fixed order N; coefficients above N are
//! never materialized.

use crate::poly::SparsePoly;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("cannot invert a series whose constant term is not a nonzero rational")]
    NonUnitConstantTerm,
    #[error("composition requires the inner series to vanish at order 0")]
    InnerNotNilpotent,
}

/// Series sum_{k=0..=N} hbar^k C_k with SparsePoly coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbarSeries {
    trunc: usize,
    coeffs: Vec<SparsePoly>, // length trunc + 1
}

impl HbarSeries {
    pub fn zero(nvars: usize, trunc: usize) -> Self {
        HbarSeries {
            trunc,
            coeffs: vec![SparsePoly::zero(nvars); trunc + 1],
        }
    }

    pub fn from_constant(p: SparsePoly, trunc: usize) -> Self {
        let mut s = HbarSeries::zero(p.nvars(), trunc);
        s.coeffs[0] = p;
        s
    }

    pub fn from_coeffs(coeffs: Vec<SparsePoly>, trunc: usize) -> Self {
        assert!(!coeffs.is_empty());
        let nvars = coeffs[0].nvars();
        let mut c = coeffs;
        c.truncate(trunc + 1);
        c.resize(trunc + 1, SparsePoly::zero(nvars));
        HbarSeries { trunc, coeffs: c }
    }

    pub fn one(nvars: usize, trunc: usize) -> Self {
        HbarSeries::from_constant(SparsePoly::one(nvars), trunc)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeff(&self, k: usize) -> &SparsePoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, p: SparsePoly) {
        self.coeffs[k] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &HbarSeries) -> HbarSeries {
        assert_eq!(self.trunc, other.trunc);
        HbarSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &HbarSeries) -> HbarSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HbarSeries {
        HbarSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> HbarSeries {
        HbarSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Multiplies by hbar^k, truncating.
    pub fn shift(&self, k: usize) -> HbarSeries {
        let mut out = HbarSeries::zero(self.nvars(), self.trunc);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.trunc {
                out.coeffs[i + k] = c.clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &HbarSeries) -> HbarSeries {
        assert_eq!(self.trunc, other.trunc);
        let mut out = HbarSeries::zero(self.nvars(), self.trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.trunc {
                    break;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    /// Inverse of a series whose constant coefficient is a nonzero rational
    /// constant (1 in every use here): geometric-series expansion.
    pub fn invert_unit(&self) -> Result<HbarSeries, SeriesError> {
        let c0 = &self.coeffs[0];
        if !c0.is_constant() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let c0s = c0.constant_term();
        let c0q = c0s.as_rational().ok_or(SeriesError::NonUnitConstantTerm)?;
        if num_traits::Zero::is_zero(&c0q) {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let inv_c0 = Scalar::from_rational(c0q.recip());
        // self = c0 (1 + t) with t of positive hbar order after scaling
        let scaled = self.scale(&inv_c0);
        let mut t = scaled.clone();
        t.coeffs[0] = SparsePoly::zero(self.nvars());
        let mut acc = HbarSeries::one(self.nvars(), self.trunc);
        let mut pw = HbarSeries::one(self.nvars(), self.trunc);
        for _ in 1..=self.trunc {
            pw = pw.mul(&t).neg();
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&inv_c0))
    }

    /// Composes self with an inner series that vanishes at order 0:
    /// (self o inner) = sum_k C_k * inner^k, hbar-truncated.
    pub fn compose(&self, inner: &HbarSeries) -> Result<HbarSeries, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerNotNilpotent);
        }
        let mut acc = HbarSeries::zero(self.nvars(), self.trunc);
        let mut pw = HbarSeries::one(self.nvars(), self.trunc);
        for k in 0..=self.trunc {
            acc = acc.add(&pw.scale(&self.coeffs[k].constant_term()));
            // compose-with-scalar-series: the outer coefficients are scalars
            // in every use; non-scalar outer coefficients multiply through.
            if !self.coeffs[k].is_constant() {
                let mut non_const = self.coeffs[k].clone();
                let c = non_const.constant_term();
                non_const = non_const.sub(&SparsePoly::constant(self.nvars(), c));
                acc = acc.add(&pw.mul(&HbarSeries::from_constant(non_const, self.trunc)));
            }
            if k < self.trunc {
                pw = pw.mul(inner);
            }
        }
        Ok(acc)
    }

    /// One line per hbar order: `h^k: <poly>`.
    pub fn render(&self, names: &[String], alpha_symbol: &str) -> String {
        let mut lines = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            lines.push(format!("h^{k}: {}", c.render(names, alpha_symbol)));
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_plus_h(trunc: usize) -> HbarSeries {
        let mut s = HbarSeries::one(1, trunc);
        s.set_coeff(1, SparsePoly::one(1));
        s
    }

    fn one_minus_h(trunc: usize) -> HbarSeries {
        let mut s = HbarSeries::one(1, trunc);
        s.set_coeff(1, SparsePoly::one(1).neg());
        s
    }

    #[test]
    fn mul_truncates() {
        // (1+h)(1-h) mod h^2 -> 1
        let p = one_plus_h(1).mul(&one_minus_h(1));
        assert_eq!(p, HbarSeries::one(1, 1));
        // (1+h)(1-h) mod h^3 -> 1 - h^2
        let p = one_plus_h(2).mul(&one_minus_h(2));
        let mut expect = HbarSeries::one(1, 2);
        expect.set_coeff(2, SparsePoly::one(1).neg());
        assert_eq!(p, expect);
    }

    #[test]
    fn invert_unit_geometric() {
        // (1+h)^-1 mod h^3 -> 1 - h + h^2
        let inv = one_plus_h(2).invert_unit().unwrap();
        let mut expect = HbarSeries::one(1, 2);
        expect.set_coeff(1, SparsePoly::one(1).neg());
        expect.set_coeff(2, SparsePoly::one(1));
        assert_eq!(inv, expect);
        // and a*a^-1 = 1
        assert_eq!(one_plus_h(2).mul(&inv), HbarSeries::one(1, 2));
    }

    #[test]
    fn invert_zero_constant_rejected() {
        let mut s = HbarSeries::zero(1, 2);
        s.set_coeff(1, SparsePoly::one(1));
        assert_eq!(s.invert_unit(), Err(SeriesError::NonUnitConstantTerm));
    }
}
