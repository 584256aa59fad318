//! Sparse multivariate polynomials over exact scalars.
//!
//! Monomials are exponent vectors on a fixed variable universe, ordered
//! graded-lexicographically; the order is global so printing and fixtures are
//! reproducible. Coefficients are `Scalar` (rational, or rational in alpha).

use crate::scalar::{join_signed, Scalar};
use num_rational::BigRational;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector with graded-lex ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = SparsePoly::zero(nvars);
        p.add_term(Monomial::unit(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        SparsePoly::constant(nvars, Scalar::one())
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut p = SparsePoly::zero(nvars);
        p.add_term(Monomial::var(i, nvars), Scalar::one());
        p
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = SparsePoly::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::unit(self.nvars))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "variable universe mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "variable universe mismatch");
        let mut out = SparsePoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut out = SparsePoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn partial_derive(&self, var: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut em = m.clone();
            em.0[var] -= 1;
            out.add_term(em, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Substitutes a subset of variables by polynomials over the same universe.
    pub fn substitute(&self, assignment: &BTreeMap<usize, SparsePoly>) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(self.nvars, c.clone());
            let mut residual = Monomial::unit(self.nvars);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assignment.get(&i) {
                    Some(p) => term = term.mul(&p.pow(e)),
                    None => residual.0[i] = e,
                }
            }
            out = out.add(&term.mul(&SparsePoly::monomial(residual, Scalar::one())));
        }
        out
    }

    /// Maps every variable to a polynomial over a (possibly different) universe.
    pub fn map_vars(&self, images: &[SparsePoly], target_nvars: usize) -> SparsePoly {
        assert_eq!(images.len(), self.nvars);
        let mut out = SparsePoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates at scalar values for every variable.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &values[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn substitute_alpha(&self, value: &BigRational) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.substitute_alpha(value));
        }
        out
    }

    /// Embeds into a larger universe (extra variables appended).
    pub fn extend_vars(&self, target_nvars: usize) -> SparsePoly {
        assert!(target_nvars >= self.nvars);
        let mut out = SparsePoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(target_nvars, 0);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Canonical rendering, terms descending in graded-lex order.
    pub fn render(&self, names: &[String], alpha_symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            parts.push(render_term(m, c, names, alpha_symbol));
        }
        join_signed(parts)
    }

    /// Default names x1..xn.
    pub fn render_default(&self) -> String {
        let names = default_names(self.nvars);
        self.render(&names, "a")
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn render_term(m: &Monomial, c: &Scalar, names: &[String], alpha_symbol: &str) -> String {
    let mut factors = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(names[i].clone()),
            _ => factors.push(format!("{}^{}", names[i], e)),
        }
    }
    let coeff = if let Some(q) = c.as_rational() {
        if factors.is_empty() {
            crate::scalar::render_rational(&q)
        } else if q == BigRational::from_integer(1.into()) {
            String::new()
        } else if q == BigRational::from_integer((-1).into()) {
            "-".into()
        } else {
            format!("{}*", crate::scalar::render_rational(&q))
        }
    } else if let Some((q, k)) = c.as_monomial() {
        // monomial in alpha
        let alpha_part = if k == 1 {
            alpha_symbol.to_string()
        } else {
            format!("{alpha_symbol}^{k}")
        };
        if q == BigRational::from_integer(1.into()) {
            format!("{alpha_part}{}", if factors.is_empty() { "" } else { "*" })
        } else if q == BigRational::from_integer((-1).into()) {
            format!("-{alpha_part}{}", if factors.is_empty() { "" } else { "*" })
        } else {
            format!(
                "{}*{alpha_part}{}",
                crate::scalar::render_rational(&q),
                if factors.is_empty() { "" } else { "*" }
            )
        }
    } else {
        format!(
            "({}){}",
            c.render(alpha_symbol),
            if factors.is_empty() { "" } else { "*" }
        )
    };
    if factors.is_empty() {
        coeff
    } else if coeff.is_empty() || coeff == "-" {
        format!("{coeff}{}", factors.join("*"))
    } else if coeff.ends_with('*') {
        format!("{coeff}{}", factors.join("*"))
    } else {
        format!("{coeff}*{}", factors.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, s: &str) -> SparsePoly {
        let names = default_names(nvars);
        crate::parse::parse_poly(s, &names, "a").unwrap()
    }

    #[test]
    fn graded_lex_order() {
        // x1^2 > x2*x3 > x1 in graded-lex
        let a = Monomial(vec![2, 0, 0]);
        let b = Monomial(vec![0, 1, 1]);
        let c = Monomial(vec![1, 0, 0]);
        assert!(a > b);
        assert!(b > c);
    }

    #[test]
    fn add_example() {
        let r = p(3, "x1^2").add(&p(3, "x2*x3"));
        assert_eq!(r.render_default(), "x1^2 + x2*x3");
    }

    #[test]
    fn partial_derive_example() {
        let r = p(3, "x1^2 + x2*x3").partial_derive(2);
        assert_eq!(r, p(3, "x2"));
    }

    #[test]
    fn alpha_mul_example() {
        let r = p(2, "a*x1").mul(&p(2, "x1"));
        assert_eq!(r.render_default(), "a*x1^2");
    }

    #[test]
    fn canonical_rendering() {
        let q = p(3, "x1^2 + (1/2)*x2*x3 + a*x1");
        assert_eq!(q.render_default(), "x1^2 + (1/2)*x2*x3 + a*x1");
    }

    #[test]
    fn substitution() {
        // x1 -> x2+x3 in x1^2
        let mut asg = BTreeMap::new();
        asg.insert(0, p(3, "x2 + x3"));
        let r = p(3, "x1^2").substitute(&asg);
        assert_eq!(r, p(3, "x2^2 + 2*x2*x3 + x3^2"));
    }
}
