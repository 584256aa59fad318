//! Exterior algebra of a Lie algebra, the Schouten bracket, and the
//! classical Yang-Baxter equation checked through three independent routes.
//!
//! Coefficients live on strictly increasing index tuples with no factorial
//! weights. An `RMatrix` embeds in degree 2 with its stored coefficient on
//! (I, J), I < J; its full antisymmetric tensor is `RMatrix::coeff`.

use crate::liealg::{LieAlgebra, RMatrix};
use crate::poly::SparsePoly;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Homogeneous element of Lambda^k(g).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtElement {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl ExtElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExtElement {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut e = ExtElement::zero(dim, 0);
        e.terms.insert(Vec::new(), Scalar::one());
        e
    }

    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut e = ExtElement::zero(dim, 1);
        e.terms.insert(vec![idx], Scalar::one());
        e
    }

    pub fn from_vector(v: &[Scalar]) -> Self {
        let mut e = ExtElement::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            e.add_term(&[i], c.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tuple: &[usize]) -> Scalar {
        self.terms
            .get(tuple)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Adds c on an arbitrary index tuple, sorting with sign; repeated
    /// indices contribute nothing.
    pub fn add_term(&mut self, tuple: &[usize], c: Scalar) {
        if c.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(tuple) else {
            return;
        };
        debug_assert_eq!(sorted.len(), self.degree);
        let c = if sign < 0 { -&c } else { c };
        match self.terms.get_mut(&sorted) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&sorted);
                }
            }
            None => {
                self.terms.insert(sorted, c);
            }
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExtElement {
        let mut out = ExtElement::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            out.terms.insert(t.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> ExtElement {
        let mut out = ExtElement::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            let v = c * s;
            if !v.is_zero() {
                out.terms.insert(t.clone(), v);
            }
        }
        out
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (t, c) in self.terms.iter().rev() {
            let basis = t
                .iter()
                .map(|&i| labels[i].clone())
                .collect::<Vec<_>>()
                .join("^");
            let cs = c.render("a");
            let part = if basis.is_empty() {
                cs
            } else if cs == "1" {
                basis
            } else if cs == "-1" {
                format!("-{basis}")
            } else if c.as_monomial().is_some() {
                format!("{cs}*{basis}")
            } else {
                format!("({cs})*{basis}")
            };
            parts.push(part);
        }
        crate::scalar::join_signed(parts)
    }
}

/// Sorts an index tuple, returning the permutation sign; None on repeats.
pub fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = tuple.to_vec();
    let mut sign = 1i32;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// Exterior product; degrees add, k + l > dim yields the zero element.
pub fn wedge(u: &ExtElement, v: &ExtElement) -> ExtElement {
    assert_eq!(u.dim, v.dim);
    let mut out = ExtElement::zero(u.dim, u.degree + v.degree);
    if u.degree + v.degree > u.dim {
        return out;
    }
    for (tu, cu) in &u.terms {
        for (tv, cv) in &v.terms {
            let mut t = tu.clone();
            t.extend_from_slice(tv);
            out.add_term(&t, cu * cv);
        }
    }
    out
}

/// Schouten bracket on basis tuples, by recursive Leibniz expansion down to
/// the degree-(1,1) Lie bracket.
fn schouten_basis(alg: &LieAlgebra, i_tuple: &[usize], j_tuple: &[usize]) -> ExtElement {
    let dim = alg.dim();
    let k = i_tuple.len();
    let l = j_tuple.len();
    if k == 0 || l == 0 {
        return ExtElement::zero(dim, (k + l).saturating_sub(1));
    }
    if k == 1 && l == 1 {
        let br = alg.basis_bracket(i_tuple[0], j_tuple[0]);
        return ExtElement::from_vector(&br);
    }
    if k == 1 {
        // [X, Y ^ W] = [X, Y] ^ W + Y ^ [X, W]
        let y = j_tuple[0];
        let w = &j_tuple[1..];
        let mut w_ext = ExtElement::zero(dim, w.len());
        w_ext.add_term(w, Scalar::one());
        let t1 = wedge(&schouten_basis(alg, i_tuple, &[y]), &w_ext);
        let t2 = wedge(
            &ExtElement::basis(dim, y),
            &schouten_basis(alg, i_tuple, w),
        );
        return t1.add(&t2);
    }
    // [A ^ U', V] = A ^ [U', V] + (-1)^{(k-1)(l-1)} [A, V] ^ U'
    let a = i_tuple[0];
    let u_rest = &i_tuple[1..];
    let mut u_ext = ExtElement::zero(dim, u_rest.len());
    u_ext.add_term(u_rest, Scalar::one());
    let t1 = wedge(
        &ExtElement::basis(dim, a),
        &schouten_basis(alg, u_rest, j_tuple),
    );
    let t2 = wedge(&schouten_basis(alg, &[a], j_tuple), &u_ext);
    let sign = if ((k - 1) * (l - 1)) % 2 == 1 { -1 } else { 1 };
    if sign < 0 {
        t1.sub(&t2)
    } else {
        t1.add(&t2)
    }
}

/// Schouten bracket Lambda^k x Lambda^l -> Lambda^{k+l-1}.
pub fn schouten_ext(alg: &LieAlgebra, u: &ExtElement, v: &ExtElement) -> ExtElement {
    assert_eq!(u.dim, alg.dim());
    assert_eq!(v.dim, alg.dim());
    let mut out = ExtElement::zero(alg.dim(), (u.degree + v.degree).saturating_sub(1));
    for (tu, cu) in &u.terms {
        for (tv, cv) in &v.terms {
            out = out.add(&schouten_basis(alg, tu, tv).scale(&(cu * cv)));
        }
    }
    out
}

/// Embeds an r-matrix in Lambda^2(g).
pub fn rmatrix_to_ext(r: &RMatrix) -> ExtElement {
    let mut e = ExtElement::zero(r.dim(), 2);
    for (&(i, j), c) in r.pairs() {
        e.add_term(&[i, j], c.clone());
    }
    e
}

/// Closed formula for [r, r]: the quadruple sum
/// `4 * sum r^{IJ} r^{KL} [X_I, X_K] ^ X_J ^ X_L` over the full antisymmetric
/// tensor normalized so that r = sum_{I,J} r^{IJ} X_I x X_J, i.e. half the
/// stored I < J coefficients. Computed literally, independently of the
/// recursive Schouten expansion.
pub fn rr_bracket_formula(alg: &LieAlgebra, r: &RMatrix) -> ExtElement {
    let n = alg.dim();
    let half = Scalar::ratio(1, 2);
    let mut out = ExtElement::zero(n, 3);
    for i in 0..n {
        for j in 0..n {
            let rij = &r.coeff(i, j) * &half;
            if rij.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let rkl = &r.coeff(k, l) * &half;
                    if rkl.is_zero() {
                        continue;
                    }
                    let c = &(&rij * &rkl) * &Scalar::from_int(4);
                    let br = alg.basis_bracket(i, k);
                    for (m, bc) in br.iter().enumerate() {
                        if bc.is_zero() {
                            continue;
                        }
                        out.add_term(&[m, j, l], &c * bc);
                    }
                }
            }
        }
    }
    out
}

/// The three formulations of the CYBE evaluated on one r-matrix.
#[derive(Debug, Clone)]
pub struct CybeReport {
    pub ok: bool,
    /// schouten_ext(r, r), identical to the closed-formula residual.
    pub residual: ExtElement,
    /// Cyclic sums over strictly increasing dual-basis triples.
    pub cyclic_residual: Vec<((usize, usize, usize), Scalar)>,
}

/// Verifies [r, r] = 0 through (a) the recursive Schouten bracket, (b) the
/// closed quadruple-sum formula, (c) the cyclic dual-basis sum. Disagreement
/// among the three is a convention bug in this crate, never a user error.
pub fn cybe_check(alg: &LieAlgebra, r: &RMatrix) -> CybeReport {
    let ext = rmatrix_to_ext(r);
    let a = schouten_ext(alg, &ext, &ext);
    let b = rr_bracket_formula(alg, r);
    assert!(
        a == b,
        "internal fault: Schouten expansion and closed formula disagree"
    );
    let n = alg.dim();
    let m = r.r_tilde_matrix();
    // r-tilde applied to the dual basis element X^b is row b of the matrix
    let r_tilde = |b: usize| -> Vec<Scalar> { m[b].clone() };
    let mut cyclic = Vec::new();
    let mut cyclic_zero = true;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut s = Scalar::zero();
                for (a_, b_, c_) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let br = alg.bracket(&r_tilde(b_), &r_tilde(c_)).unwrap();
                    s = &s + &br[a_];
                }
                if !s.is_zero() {
                    cyclic_zero = false;
                    cyclic.push(((x, y, z), s));
                }
            }
        }
    }
    let vanish = a.is_zero();
    assert!(
        vanish == cyclic_zero,
        "internal fault: cyclic form and Schouten bracket disagree on vanishing"
    );
    CybeReport {
        ok: vanish,
        residual: a,
        cyclic_residual: cyclic,
    }
}

/// Index of the gl(n) basis element E_{i+1,j+1} (0-based i, j).
pub fn gl_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Strictly increasing pairs (I, J) of gl(n) basis indices, the unknown
/// universe for symbolic r-matrices, in lexicographic order.
pub fn gl_pairs(n: usize) -> Vec<(usize, usize)> {
    let dim = n * n;
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            out.push((i, j));
        }
    }
    out
}

/// Symbolic full-tensor entry r_{ik}^{jl} (coefficient of E_ij ^ E_kl) as a
/// polynomial in the pair unknowns.
fn symbolic_entry(n: usize, pair_index: &BTreeMap<(usize, usize), usize>, i: usize, j: usize, k: usize, l: usize) -> SparsePoly {
    let nvars = pair_index.len();
    let a = gl_index(n, i, j);
    let b = gl_index(n, k, l);
    if a == b {
        return SparsePoly::zero(nvars);
    }
    if a < b {
        SparsePoly::var(pair_index[&(a, b)], nvars)
    } else {
        SparsePoly::var(pair_index[&(b, a)], nvars).neg()
    }
}

/// The C(n^2, 3) labeled CYBE equations for a symbolic r on gl(n): for each
/// lexicographic triple (x, y, z), the six-term sum
/// `sum_d r_{ik}^{dl} r_{dm}^{jp} - r_{mk}^{dl} r_{di}^{pj} + r_{km}^{dp} r_{di}^{lj}
///  - r_{im}^{dp} r_{dk}^{jl} + r_{mi}^{dj} r_{dk}^{pl} - r_{ki}^{dj} r_{dm}^{lp}`.
/// Labels are 1-based basis triples in the A_1..A_{n^2} numbering.
pub fn gln_cybe_equations(n: usize) -> Vec<((usize, usize, usize), SparsePoly)> {
    let pairs = gl_pairs(n);
    let pair_index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(idx, &p)| (p, idx)).collect();
    let dim = n * n;
    let sym = |i, j, k, l| symbolic_entry(n, &pair_index, i, j, k, l);
    let mut out = Vec::new();
    for x in 0..dim {
        for y in x + 1..dim {
            for z in y + 1..dim {
                let (i, j) = (x / n, x % n);
                let (k, l) = (y / n, y % n);
                let (m, p) = (z / n, z % n);
                let mut eq = SparsePoly::zero(pairs.len());
                for d in 0..n {
                    eq = eq.add(&sym(i, d, k, l).mul(&sym(d, j, m, p)));
                    eq = eq.sub(&sym(m, d, k, l).mul(&sym(d, p, i, j)));
                    eq = eq.add(&sym(k, d, m, p).mul(&sym(d, l, i, j)));
                    eq = eq.sub(&sym(i, d, m, p).mul(&sym(d, j, k, l)));
                    eq = eq.add(&sym(m, d, i, j).mul(&sym(d, p, k, l)));
                    eq = eq.sub(&sym(k, d, i, j).mul(&sym(d, l, m, p)));
                }
                out.push(((x + 1, y + 1, z + 1), eq));
            }
        }
    }
    out
}

/// Evaluates the labeled equations at a concrete r-matrix.
pub fn evaluate_cybe_equations(n: usize, r: &RMatrix) -> Vec<((usize, usize, usize), Scalar)> {
    let pairs = gl_pairs(n);
    let values: Vec<Scalar> = pairs.iter().map(|&(i, j)| r.coeff(i, j)).collect();
    gln_cybe_equations(n)
        .into_iter()
        .map(|(label, eq)| (label, eq.eval(&values)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{gl_basis, LieAlgebra};

    #[test]
    fn wedge_basics() {
        let x = ExtElement::basis(3, 0);
        // X ^ X = 0
        assert!(wedge(&x, &x).is_zero());
        // X1 ^ X2 = -X2 ^ X1
        let y = ExtElement::basis(3, 1);
        let xy = wedge(&x, &y);
        let yx = wedge(&y, &x);
        assert_eq!(xy, yx.neg());
        // (X1 ^ X2) ^ X3 has coefficient 1 on (1,2,3)
        let z = ExtElement::basis(3, 2);
        let t = wedge(&xy, &z);
        assert_eq!(t.coeff(&[0, 1, 2]), Scalar::one());
    }

    #[test]
    fn wedge_degree_overflow_is_zero() {
        let x = ExtElement::basis(2, 0);
        let y = ExtElement::basis(2, 1);
        let xy = wedge(&x, &y);
        assert!(wedge(&xy, &x).is_zero());
    }

    #[test]
    fn schouten_degree_one_is_bracket() {
        let g = gl_basis(2).unwrap();
        // [E12, E21] = E11 - E22
        let b = schouten_ext(&g, &ExtElement::basis(4, 1), &ExtElement::basis(4, 2));
        assert_eq!(b.coeff(&[0]), Scalar::one());
        assert_eq!(b.coeff(&[3]), Scalar::from_int(-1));
    }

    #[test]
    fn schouten_leibniz_degree_1_2() {
        // [X, Y ^ Z] = [X,Y] ^ Z + Y ^ [X,Z] on gl(2)
        let g = gl_basis(2).unwrap();
        let x = ExtElement::basis(4, 0);
        let y = ExtElement::basis(4, 1);
        let z = ExtElement::basis(4, 2);
        let lhs = schouten_ext(&g, &x, &wedge(&y, &z));
        let rhs = wedge(&schouten_ext(&g, &x, &y), &z)
            .add(&wedge(&y, &schouten_ext(&g, &x, &z)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rr_formula_abelian_vanishes() {
        let g = LieAlgebra::abelian(4);
        let mut r = RMatrix::new(4);
        r.set(0, 1, Scalar::from_int(2));
        r.set(2, 3, Scalar::ratio(5, 3));
        assert!(rr_bracket_formula(&g, &r).is_zero());
        assert!(cybe_check(&g, &r).ok);
    }

    #[test]
    fn rr_formula_central_wedge_vanishes() {
        // gl(2): r = M ^ I with I central: [r, r] = 0
        let g = gl_basis(2).unwrap();
        // M = E12, I = E11 + E22: M ^ I = E12^E11 + E12^E22 = -E11^E12 + E12^E22
        let mut r = RMatrix::new(4);
        r.set(0, 1, Scalar::from_int(-1));
        r.set(1, 3, Scalar::one());
        let res = rr_bracket_formula(&g, &r);
        assert!(res.is_zero(), "residual: {:?}", res);
        assert!(cybe_check(&g, &r).ok);
    }

    #[test]
    fn rr_formula_nonzero_case() {
        // gl(2), r = E12 ^ E21: [r,r] = -2 (E11 - E22) ^ E21 ^ E12, nonzero,
        // equal between both routes.
        let g = gl_basis(2).unwrap();
        let mut r = RMatrix::new(4);
        r.set(1, 2, Scalar::one());
        let res = rr_bracket_formula(&g, &r);
        let sch = schouten_ext(&g, &rmatrix_to_ext(&r), &rmatrix_to_ext(&r));
        assert_eq!(res, sch);
        assert!(!res.is_zero());
        // canonical coefficients: +2 on E11^E12^E21, -2 on E12^E21^E22
        assert_eq!(res.coeff(&[0, 1, 2]), Scalar::from_int(2));
        assert_eq!(res.coeff(&[1, 2, 3]), Scalar::from_int(-2));
        let report = cybe_check(&g, &r);
        assert!(!report.ok);
        assert!(!report.cyclic_residual.is_empty());
    }

    #[test]
    fn diagonal_commuting_r_passes() {
        // gl(3), r = E11 ^ E22
        let g = gl_basis(3).unwrap();
        let mut r = RMatrix::new(9);
        r.set(0, 4, Scalar::one());
        assert!(cybe_check(&g, &r).ok);
    }

    #[test]
    fn equation_counts() {
        assert_eq!(gln_cybe_equations(2).len(), 4);
        assert_eq!(gln_cybe_equations(3).len(), 84);
    }

    #[test]
    fn equations_vanish_on_cartan_solution() {
        // Cartan r on gl(3): r = E11 ^ E22 + 2 E22 ^ E33
        let mut r = RMatrix::new(9);
        r.set(0, 4, Scalar::one());
        r.set(4, 8, Scalar::from_int(2));
        for (label, v) in evaluate_cybe_equations(3, &r) {
            assert!(v.is_zero(), "equation {label:?} nonzero: {v}");
        }
    }
}
