//! Finite-dimensional Lie algebras via structure constants: gl(n), central
//! extensions, r-matrices and the operator r-tilde.

use crate::matrix::RationalMatrix;
use crate::parse::{self, ParseError};
use crate::scalar::Scalar;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("dimension must be >= 1")]
    BadDimension,
    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cocycle violation on basis triples {0:?}")]
    CocycleViolation(Vec<(usize, usize, usize)>),
    #[error("omega must be an antisymmetric {0}x{0} matrix")]
    BadCocycleShape(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Lie algebra with rational structure constants on a named basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    // c[i][j][k] flattened: [X_i, X_j] = sum_k c_{ij}^k X_k  (0-based)
    c: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn new(dim: usize, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), dim);
        LieAlgebra {
            dim,
            labels,
            c: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, (1..=dim).map(|i| format!("X{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Sets c_{ij}^k and its antisymmetric mirror.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.c[(i * self.dim + j) * self.dim + k] = v.clone();
        self.c[(j * self.dim + i) * self.dim + k] = -&v;
    }

    /// Bracket of basis elements as a coefficient vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| self.structure_constant(i, j, k).clone())
            .collect()
    }

    /// Structure-constant contraction [X, Y].
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        if x.len() != self.dim {
            return Err(LieError::LengthMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(LieError::LengthMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..self.dim {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exhaustive Jacobi check over basis triples; returns violating triples.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let e = |idx: usize| {
                        let mut v = vec![Scalar::zero(); self.dim];
                        v[idx] = Scalar::one();
                        v
                    };
                    let t1 = self.bracket(&e(i), &self.bracket(&e(j), &e(k)).unwrap()).unwrap();
                    let t2 = self.bracket(&e(j), &self.bracket(&e(k), &e(i)).unwrap()).unwrap();
                    let t3 = self.bracket(&e(k), &self.bracket(&e(i), &e(j)).unwrap()).unwrap();
                    let ok = (0..self.dim)
                        .all(|m| (&(&t1[m] + &t2[m]) + &t3[m]).is_zero());
                    if !ok {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// Text fixture: header `dim n`, lines `[I J] = c1*X1 + ...`.
    pub fn to_fixture(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let br = self.basis_bracket(i, j);
                if br.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let poly = crate::poly::SparsePoly::zero(self.dim);
                let mut poly = poly;
                for (k, c) in br.iter().enumerate() {
                    poly.add_term(crate::poly::Monomial::var(k, self.dim), c.clone());
                }
                out.push_str(&format!(
                    "[{} {}] = {}\n",
                    i + 1,
                    j + 1,
                    poly.render(&self.labels, "a")
                ));
            }
        }
        out
    }

    pub fn from_fixture(text: &str) -> Result<LieAlgebra, LieError> {
        let mut lines = text
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| {
            LieError::Parse(ParseError::Fixture("missing `dim n` header".into()))
        })?;
        let dim: usize = header
            .strip_prefix("dim ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| LieError::Parse(ParseError::Fixture(header.into())))?;
        if dim == 0 {
            return Err(LieError::BadDimension);
        }
        let mut labels: Vec<String> = (1..=dim).map(|i| format!("X{i}")).collect();
        let mut alg: Option<LieAlgebra> = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("labels ") {
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.len() != dim {
                    return Err(LieError::Parse(ParseError::Fixture(line.into())));
                }
                labels = names;
                continue;
            }
            let alg = alg.get_or_insert_with(|| LieAlgebra::new(dim, labels.clone()));
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| LieError::Parse(ParseError::Fixture(line.into())))?;
            let lhs = lhs.trim();
            let inner = lhs
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| LieError::Parse(ParseError::Fixture(line.into())))?;
            let mut it = inner.split_whitespace();
            let i: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| LieError::Parse(ParseError::Fixture(line.into())))?;
            let j: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| LieError::Parse(ParseError::Fixture(line.into())))?;
            let poly = parse::parse_poly(rhs.trim(), &alg.labels.clone(), "a")?;
            let mut coeffs = vec![Scalar::zero(); dim];
            for (mon, c) in poly.terms() {
                let mut idx = None;
                for (v, &e) in mon.0.iter().enumerate() {
                    if e == 1 && idx.is_none() && mon.total_degree() == 1 {
                        idx = Some(v);
                    }
                }
                let v = idx.ok_or_else(|| {
                    LieError::Parse(ParseError::Fixture(format!("nonlinear bracket: {line}")))
                })?;
                coeffs[v] = c.clone();
            }
            for (k, c) in coeffs.into_iter().enumerate() {
                alg.set_structure_constant(i - 1, j - 1, k, c);
            }
        }
        Ok(alg.unwrap_or_else(|| LieAlgebra::new(dim, labels)))
    }
}

/// gl(n): basis E_ij ordered lexicographically (E11, E12, ..., Enn).
/// Bracket: [E_ij, E_kl] = delta_jk E_il - delta_li E_kj.
pub fn gl_basis(n: usize) -> Result<LieAlgebra, LieError> {
    if n == 0 {
        return Err(LieError::BadDimension);
    }
    let dim = n * n;
    let labels = (0..dim)
        .map(|a| format!("E{}{}", a / n + 1, a % n + 1))
        .collect();
    let mut alg = LieAlgebra::new(dim, labels);
    let idx = |i: usize, j: usize| i * n + j; // 0-based (row, col)
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let a = idx(i, j);
                    let b = idx(k, l);
                    if a >= b {
                        continue; // antisymmetric mirror set by setter
                    }
                    let mut coeffs = vec![Scalar::zero(); dim];
                    if j == k {
                        coeffs[idx(i, l)] = &coeffs[idx(i, l)] + &Scalar::one();
                    }
                    if l == i {
                        coeffs[idx(k, j)] = &coeffs[idx(k, j)] - &Scalar::one();
                    }
                    for (m, c) in coeffs.into_iter().enumerate() {
                        if !c.is_zero() {
                            alg.set_structure_constant(a, b, m, c);
                        }
                    }
                }
            }
        }
    }
    Ok(alg)
}

/// aff(1): [X, Y] = Y.
pub fn aff1() -> LieAlgebra {
    let mut alg = LieAlgebra::new(2, vec!["X".into(), "Y".into()]);
    alg.set_structure_constant(0, 1, 1, Scalar::one());
    alg
}

/// Heisenberg: [X, Y] = T, T central.
pub fn heisenberg() -> LieAlgebra {
    let mut alg = LieAlgebra::new(3, vec!["X".into(), "Y".into(), "T".into()]);
    alg.set_structure_constant(0, 1, 2, Scalar::one());
    alg
}

/// Central extension of `base` by the 2-cocycle omega: bracket
/// [X, Y] + <omega, X wedge Y> X0, X0 central in last position.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    pub base: LieAlgebra,
    pub omega: Vec<Vec<Scalar>>,
    pub extended: LieAlgebra,
}

impl CentralExtension {
    /// The index of the distinguished central element X0.
    pub fn central_index(&self) -> usize {
        self.base.dim()
    }
}

pub fn central_extension(
    base: &LieAlgebra,
    omega: &[Vec<Scalar>],
) -> Result<CentralExtension, LieError> {
    let n = base.dim();
    if omega.len() != n || omega.iter().any(|r| r.len() != n) {
        return Err(LieError::BadCocycleShape(n));
    }
    for i in 0..n {
        for j in 0..n {
            if !(&omega[i][j] + &omega[j][i]).is_zero() {
                return Err(LieError::BadCocycleShape(n));
            }
        }
    }
    let mut labels = base.labels().to_vec();
    labels.push("X0".into());
    let mut ext = LieAlgebra::new(n + 1, labels);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = base.structure_constant(i, j, k).clone();
                if !c.is_zero() {
                    ext.set_structure_constant(i, j, k, c);
                }
            }
            // <omega, X wedge Y> pairing normalization: omega(X, Y)
            if !omega[i][j].is_zero() {
                ext.set_structure_constant(i, j, n, omega[i][j].clone());
            }
        }
    }
    // cocycle condition checked as Jacobi on the extension
    let violations = ext.jacobi_violations();
    if !violations.is_empty() {
        return Err(LieError::CocycleViolation(violations));
    }
    Ok(CentralExtension {
        base: base.clone(),
        omega: omega.to_vec(),
        extended: ext,
    })
}

/// r in g wedge g, stored on strictly increasing basis pairs I < J.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RMatrix {
    dim: usize,
    pairs: BTreeMap<(usize, usize), Scalar>,
}

impl RMatrix {
    pub fn new(dim: usize) -> Self {
        RMatrix {
            dim,
            pairs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < j && j < self.dim, "pairs must be strictly increasing");
        if v.is_zero() {
            self.pairs.remove(&(i, j));
        } else {
            self.pairs.insert((i, j), v);
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: Scalar) {
        let cur = self.coeff(i, j);
        if i < j {
            self.set(i, j, &cur + &v);
        } else if j < i {
            self.set(j, i, &self.coeff(j, i) - &v);
        }
        // i == j contributes nothing
    }

    /// Stored coefficient, extended antisymmetrically (full tensor).
    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        if i < j {
            self.pairs.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
        } else if j < i {
            -&self.pairs.get(&(j, i)).cloned().unwrap_or_else(Scalar::zero)
        } else {
            Scalar::zero()
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.pairs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The antisymmetric matrix of r-tilde: g* -> g in dual-basis coordinates.
    pub fn r_tilde_matrix(&self) -> Vec<Vec<Scalar>> {
        let mut m = vec![vec![Scalar::zero(); self.dim]; self.dim];
        for (&(i, j), c) in &self.pairs {
            m[i][j] = c.clone();
            m[j][i] = -c;
        }
        m
    }

    pub fn to_fixture(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for (&(i, j), c) in &self.pairs {
            out.push_str(&format!("r[{}][{}] = {}\n", i + 1, j + 1, c.render("a")));
        }
        out
    }

    pub fn from_fixture(text: &str) -> Result<RMatrix, LieError> {
        let mut lines = text
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| {
            LieError::Parse(ParseError::Fixture("missing `dim n` header".into()))
        })?;
        let dim: usize = header
            .strip_prefix("dim ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| LieError::Parse(ParseError::Fixture(header.into())))?;
        let mut r = RMatrix::new(dim);
        for line in lines {
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| LieError::Parse(ParseError::Fixture(line.into())))?;
            let lhs = lhs.trim();
            let idx: Vec<usize> = lhs
                .trim_start_matches('r')
                .split(['[', ']'])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| LieError::Parse(ParseError::Fixture(line.into())))?;
            if idx.len() != 2 {
                return Err(LieError::Parse(ParseError::Fixture(line.into())));
            }
            let c = parse::parse_scalar(rhs.trim())?;
            r.set(idx[0] - 1, idx[1] - 1, c);
        }
        Ok(r)
    }
}

#[derive(Debug, Clone)]
pub struct RTildeImage {
    pub matrix: Vec<Vec<Scalar>>,
    /// Basis of g0 = image of r-tilde, as exact coefficient vectors.
    pub image_basis: Vec<Vec<BigRational>>,
    /// Whether [g0, g0] is contained in g0.
    pub closed: bool,
}

/// r-tilde matrix, its image subalgebra g0 and the closure verdict.
pub fn r_tilde_and_image(alg: &LieAlgebra, r: &RMatrix) -> Result<RTildeImage, LieError> {
    assert_eq!(alg.dim(), r.dim());
    let n = alg.dim();
    let m = r.r_tilde_matrix();
    // columns of the matrix span the image
    let mut mat = RationalMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            mat.set(i, j, m[i][j].clone());
        }
    }
    let rk = mat
        .rank_kernel()
        .map_err(|_| LieError::Parse(ParseError::Fixture("alpha-bearing r-matrix".into())))?;
    let image_basis: Vec<Vec<BigRational>> = rk
        .pivot_cols
        .iter()
        .map(|&c| {
            (0..n)
                .map(|row| m[row][c].as_rational().unwrap())
                .collect()
        })
        .collect();
    // closure check: brackets of basis pairs must stay in the span
    let k = image_basis.len();
    let mut span = RationalMatrix::zero(n, k);
    for (col, v) in image_basis.iter().enumerate() {
        for row in 0..n {
            span.set(row, col, Scalar::from_rational(v[row].clone()));
        }
    }
    let mut closed = true;
    'outer: for a in 0..k {
        for b in a + 1..k {
            let x: Vec<Scalar> = image_basis[a]
                .iter()
                .map(|q| Scalar::from_rational(q.clone()))
                .collect();
            let y: Vec<Scalar> = image_basis[b]
                .iter()
                .map(|q| Scalar::from_rational(q.clone()))
                .collect();
            let br = alg.bracket(&x, &y)?;
            let brq: Vec<BigRational> = br.iter().map(|s| s.as_rational().unwrap()).collect();
            if !span
                .column_space_contains(&brq)
                .map_err(|_| LieError::BadDimension)?
            {
                closed = false;
                break 'outer;
            }
        }
    }
    Ok(RTildeImage {
        matrix: m,
        image_basis,
        closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn gl_one_is_abelian() {
        let g = gl_basis(1).unwrap();
        assert_eq!(g.dim(), 1);
        assert!(g.jacobi_violations().is_empty());
    }

    #[test]
    fn gl2_bracket_examples() {
        let g = gl_basis(2).unwrap();
        // basis order: E11=0, E12=1, E21=2, E22=3
        // [E12, E21] = E11 - E22
        let br = g.bracket(&basis_vec(4, 1), &basis_vec(4, 2)).unwrap();
        assert_eq!(br[0], Scalar::one());
        assert_eq!(br[3], Scalar::from_int(-1));
        assert!(br[1].is_zero() && br[2].is_zero());
        // [E11, E12] = E12
        let br = g.bracket(&basis_vec(4, 0), &basis_vec(4, 1)).unwrap();
        assert_eq!(br[1], Scalar::one());
        assert!(br[0].is_zero() && br[2].is_zero() && br[3].is_zero());
    }

    #[test]
    fn gl_jacobi_holds() {
        for n in 1..=4 {
            assert!(gl_basis(n).unwrap().jacobi_violations().is_empty());
        }
    }

    #[test]
    fn jacobi_failure_detected() {
        // c_12^3 = 1, c_13^1 = 1 antisymmetrized: Jacobi fails on (1,2,3)
        let mut alg = LieAlgebra::abelian(3);
        alg.set_structure_constant(0, 1, 2, Scalar::one());
        alg.set_structure_constant(0, 2, 0, Scalar::one());
        assert_eq!(alg.jacobi_violations(), vec![(0, 1, 2)]);
    }

    #[test]
    fn aff1_defining_relation() {
        let g = aff1();
        let br = g
            .bracket(&basis_vec(2, 0), &basis_vec(2, 1))
            .unwrap();
        assert_eq!(br, vec![Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn bracket_antisymmetry_random() {
        let g = gl_basis(3).unwrap();
        let x: Vec<Scalar> = (0..9).map(|i| Scalar::from_int((i * 7 % 5) as i64 - 2)).collect();
        let y: Vec<Scalar> = (0..9).map(|i| Scalar::from_int((i * 3 % 7) as i64 - 3)).collect();
        let xx = g.bracket(&x, &x).unwrap();
        assert!(xx.iter().all(|c| c.is_zero()));
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        for k in 0..9 {
            assert!((&xy[k] + &yx[k]).is_zero());
        }
    }

    #[test]
    fn heisenberg_from_extension() {
        // abelian R^2 with omega(e1, e2) = 1 -> Heisenberg
        let base = LieAlgebra::abelian(2);
        let mut omega = vec![vec![Scalar::zero(); 2]; 2];
        omega[0][1] = Scalar::one();
        omega[1][0] = Scalar::from_int(-1);
        let ext = central_extension(&base, &omega).unwrap();
        let br = ext
            .extended
            .bracket(&basis_vec(3, 0), &basis_vec(3, 1))
            .unwrap();
        assert_eq!(br, vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        // X0 central
        for i in 0..3 {
            let br = ext
                .extended
                .bracket(&basis_vec(3, 2), &basis_vec(3, i))
                .unwrap();
            assert!(br.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn trivial_extension() {
        let base = aff1();
        let omega = vec![vec![Scalar::zero(); 2]; 2];
        let ext = central_extension(&base, &omega).unwrap();
        // restriction to first 2 coordinates recovers aff(1)
        let br = ext
            .extended
            .bracket(&basis_vec(3, 0), &basis_vec(3, 1))
            .unwrap();
        assert_eq!(br[..2], *aff1().bracket(&basis_vec(2, 0), &basis_vec(2, 1)).unwrap());
        assert!(br[2].is_zero());
    }

    #[test]
    fn aff1_any_two_form_is_cocycle() {
        let base = aff1();
        let mut omega = vec![vec![Scalar::zero(); 2]; 2];
        omega[0][1] = Scalar::one();
        omega[1][0] = Scalar::from_int(-1);
        let ext = central_extension(&base, &omega).unwrap();
        assert_eq!(ext.extended.dim(), 3);
    }

    #[test]
    fn cocycle_violation_reported() {
        // on gl(2), omega(E11, E12) = 1 (others 0) is not a cocycle
        let base = gl_basis(2).unwrap();
        let mut omega = vec![vec![Scalar::zero(); 4]; 4];
        omega[0][1] = Scalar::one();
        omega[1][0] = Scalar::from_int(-1);
        match central_extension(&base, &omega) {
            Err(LieError::CocycleViolation(triples)) => assert!(!triples.is_empty()),
            other => panic!("expected cocycle violation, got {other:?}"),
        }
    }

    #[test]
    fn r_tilde_zero_and_full_rank() {
        let g = aff1();
        let r0 = RMatrix::new(2);
        let im = r_tilde_and_image(&g, &r0).unwrap();
        assert!(im.image_basis.is_empty());
        assert!(im.closed);
        let mut r = RMatrix::new(2);
        r.set(0, 1, Scalar::one()); // X wedge Y
        let im = r_tilde_and_image(&g, &r).unwrap();
        assert_eq!(im.image_basis.len(), 2);
        assert!(im.closed);
    }

    #[test]
    fn r_tilde_image_gl2() {
        // r = E11 wedge E12 -> g0 = span{E11, E12}, closed
        let g = gl_basis(2).unwrap();
        let mut r = RMatrix::new(4);
        r.set(0, 1, Scalar::one());
        let im = r_tilde_and_image(&g, &r).unwrap();
        assert_eq!(im.image_basis.len(), 2);
        assert!(im.closed);
        // antisymmetry of the matrix
        for i in 0..4 {
            for j in 0..4 {
                assert!((&im.matrix[i][j] + &im.matrix[j][i]).is_zero());
            }
        }
    }

    #[test]
    fn fixture_round_trip() {
        let g = gl_basis(2).unwrap();
        let text = g.to_fixture();
        let g2 = LieAlgebra::from_fixture(&text).unwrap();
        assert_eq!(g, g2);
        let h = heisenberg();
        assert_eq!(h, LieAlgebra::from_fixture(&h.to_fixture()).unwrap());
    }
}
