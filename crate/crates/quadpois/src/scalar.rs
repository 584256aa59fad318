//! Exact scalars: rationals, optionally polynomials in the distinguished
//! parameter `a` (alpha) with rational coefficients.
//!
//! A computation runs either in the rational regime (alpha absent) or in the
//! alpha-invertible regime, where alpha is adjoined as an indeterminate and
//! treated as a unit. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Which scalars count as invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Only nonzero rationals are units.
    Rational,
    /// Alpha is adjoined and treated as a unit: units are `c*alpha^k`, c != 0.
    AlphaInvertible,
}

/// Exact scalar: polynomial in alpha over Q, canonical (no zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    // alpha exponent -> nonzero rational coefficient
    terms: BTreeMap<u32, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Scalar::zero();
        if !q.is_zero() {
            s.terms.insert(0, q);
        }
        s
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn alpha() -> Self {
        Scalar::alpha_pow(1)
    }

    pub fn alpha_pow(k: u32) -> Self {
        let mut s = Scalar::zero();
        s.terms.insert(k, BigRational::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    /// All terms have alpha-degree zero.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&0) {
                return Some(q.clone());
            }
        }
        None
    }

    /// Single term `c*alpha^k`; returns (c, k).
    pub fn as_monomial(&self) -> Option<(BigRational, u32)> {
        if self.terms.len() == 1 {
            let (&k, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), k))
        } else {
            None
        }
    }

    pub fn is_invertible(&self, regime: Regime) -> bool {
        match regime {
            Regime::Rational => self.as_rational().map(|q| !q.is_zero()).unwrap_or(false),
            Regime::AlphaInvertible => self.as_monomial().is_some(),
        }
    }

    /// Exact division by an invertible rational.
    pub fn div_rational(&self, q: &BigRational) -> Scalar {
        assert!(!q.is_zero(), "division by zero");
        let mut out = Scalar::zero();
        for (&k, c) in &self.terms {
            out.terms.insert(k, c / q);
        }
        out
    }

    pub fn substitute_alpha(&self, value: &BigRational) -> Scalar {
        let mut acc = BigRational::zero();
        for (&k, c) in &self.terms {
            let mut pw = BigRational::one();
            for _ in 0..k {
                pw *= value;
            }
            acc += c * pw;
        }
        Scalar::from_rational(acc)
    }

    pub fn alpha_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn insert(&mut self, k: u32, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(c) => {
                *c += q;
                if c.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, q);
            }
        }
    }

    /// Canonical text form; alpha rendered under the given symbol.
    pub fn render(&self, alpha_symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (&k, c) in self.terms.iter().rev() {
            let coeff = render_rational(c);
            let part = match k {
                0 => coeff,
                1 => {
                    if c.is_one() {
                        alpha_symbol.to_string()
                    } else if (-c.clone()).is_one() {
                        format!("-{alpha_symbol}")
                    } else {
                        format!("{coeff}*{alpha_symbol}")
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("{alpha_symbol}^{k}")
                    } else if (-c.clone()).is_one() {
                        format!("-{alpha_symbol}^{k}")
                    } else {
                        format!("{coeff}*{alpha_symbol}^{k}")
                    }
                }
            };
            parts.push(part);
        }
        join_signed(parts)
    }
}

/// Renders a rational with parentheses when it has a denominator.
pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else if q.is_negative() {
        format!("-({}/{})", -q.numer().clone(), q.denom())
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

/// Joins rendered terms with " + " / " - " according to leading sign.
pub fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("a"))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (&k, q) in &rhs.terms {
            out.insert(k, q.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (&k, q) in &rhs.terms {
            out.insert(k, -q.clone());
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&k1, q1) in &self.terms {
            for (&k2, q2) in &rhs.terms {
                out.insert(k1 + k2, q1 * q2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = Scalar::zero();
        for (&k, q) in &self.terms {
            out.terms.insert(k, -q.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_no_zero_terms() {
        let a = Scalar::from_int(3);
        let b = Scalar::from_int(-3);
        assert!((&a + &b).is_zero());
        let c = &Scalar::alpha() * &Scalar::from_int(2);
        let d = &c - &c;
        assert!(d.is_zero());
    }

    #[test]
    fn invertibility_by_regime() {
        let half = Scalar::ratio(1, 2);
        assert!(half.is_invertible(Regime::Rational));
        assert!(half.is_invertible(Regime::AlphaInvertible));
        let al = Scalar::alpha();
        assert!(!al.is_invertible(Regime::Rational));
        assert!(al.is_invertible(Regime::AlphaInvertible));
        let mix = &al + &half;
        assert!(!mix.is_invertible(Regime::AlphaInvertible));
        assert!(!Scalar::zero().is_invertible(Regime::AlphaInvertible));
    }

    #[test]
    fn alpha_substitution() {
        // 2*a^2 - a + 1 at a = 3 -> 16
        let s = &(&(&Scalar::from_int(2) * &Scalar::alpha_pow(2)) - &Scalar::alpha())
            + &Scalar::one();
        let v = s.substitute_alpha(&BigRational::from_integer(BigInt::from(3)));
        assert_eq!(v, Scalar::from_int(16));
    }

    #[test]
    fn rendering() {
        let s = &(&Scalar::alpha() * &Scalar::from_int(2)) + &Scalar::ratio(-1, 2);
        assert_eq!(s.render("a"), "2*a - (1/2)");
        assert_eq!(Scalar::zero().render("a"), "0");
    }
}
