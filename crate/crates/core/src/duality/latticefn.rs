//! Exponential polynomials on the integer lattice.
//!
//! A lattice function is a finite sum `sum_t p_t(m) * prod_k c_{t,k}^{m_k}`
//! with pairwise distinct character vectors `c_t` and nonzero polynomial
//! parts `p_t`. Distinct characters (with polynomial weights) are linearly
//! independent as functions on Z^N over a field of characteristic zero, so
//! the canonical form decides equality to zero exactly — this is what turns
//! "the relation annihilates every basis element, for all diagonal
//! exponents" into a finite computation.
//!
//! The module also provides symbolic prefix sums `m -> sum_{s=0}^{m-1} f(s)`
//! (geometric/Faulhaber summation by exact antidifference solving), the
//! engine behind symbolic powers of group-like elements.

use std::collections::BTreeMap;

use crate::ring::Coeff;
use crate::Result;

/// Polynomial in `vars` integer variables with `F` coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct IntPoly<F: Coeff> {
    pub vars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Coeff> IntPoly<F> {
    pub fn zero(vars: usize) -> Self {
        IntPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: F) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate `m_k` (0-based slot).
    pub fn coordinate(vars: usize, k: usize, unit: &F) -> Self {
        let mut e = vec![0; vars];
        e[k] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, unit.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        IntPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[i64], unit: &F) -> F {
        let mut total = unit.zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    v = v.mul(&unit.from_int(point[k]));
                }
            }
            total = total.add(&v);
        }
        total
    }

    /// Substitute `m_k = shift_k + sum_l mat[k][l] * m'_l` (new variable
    /// count = columns of `mat`).
    pub fn affine(&self, new_vars: usize, mat: &[Vec<i64>], shift: &[i64], unit: &F) -> Self {
        // precompute the linear forms as IntPolys
        let forms: Vec<IntPoly<F>> = (0..self.vars)
            .map(|k| {
                let mut f = IntPoly::constant(new_vars, unit.from_int(shift[k]));
                for l in 0..new_vars {
                    let a = mat[k][l];
                    if a != 0 {
                        f = f.add(&IntPoly::coordinate(new_vars, l, unit).scale(&unit.from_int(a)));
                    }
                }
                f
            })
            .collect();
        let mut out = IntPoly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut term = IntPoly::constant(new_vars, c.clone());
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    term = term.mul(&forms[k]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// One character-weighted term plus the canonical-form container.
#[derive(Clone, Debug)]
pub struct LatticeFn<F: Coeff> {
    pub vars: usize,
    /// (character vector, polynomial part); characters pairwise distinct,
    /// polynomials nonzero
    terms: Vec<(Vec<F>, IntPoly<F>)>,
}

impl<F: Coeff> LatticeFn<F> {
    pub fn zero(vars: usize) -> Self {
        LatticeFn {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: usize, c: F) -> Self {
        let one = c.one();
        Self::from_term(vec![one; vars], IntPoly::constant(vars, c))
    }

    pub fn coordinate(vars: usize, k: usize, unit: &F) -> Self {
        Self::from_term(
            vec![unit.one(); vars],
            IntPoly::coordinate(vars, k, unit),
        )
    }

    /// Pure character `m -> prod c_k^{m_k}`.
    pub fn character(c: Vec<F>, unit: &F) -> Self {
        let vars = c.len();
        Self::from_term(c, IntPoly::constant(vars, unit.one()))
    }

    pub fn from_term(character: Vec<F>, poly: IntPoly<F>) -> Self {
        let vars = character.len();
        let mut out = Self::zero(vars);
        out.push_term(character, poly);
        out
    }

    fn push_term(&mut self, character: Vec<F>, poly: IntPoly<F>) {
        if poly.is_zero() {
            return;
        }
        for (c, p) in self.terms.iter_mut() {
            if *c == character {
                let sum = p.add(&poly);
                if sum.is_zero() {
                    // remove below
                    *p = sum;
                } else {
                    *p = sum;
                }
                self.terms.retain(|(_, p)| !p.is_zero());
                return;
            }
        }
        self.terms.push((character, poly));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Vec<F>, IntPoly<F>)] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (c, p) in &other.terms {
            out.push_term(c.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LatticeFn {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        LatticeFn {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(ch, p)| (ch.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Pointwise product of functions on the lattice.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (c1, p1) in &self.terms {
            for (c2, p2) in &other.terms {
                let c: Vec<F> = c1.iter().zip(c2).map(|(a, b)| a.mul(b)).collect();
                out.push_term(c, p1.mul(p2));
            }
        }
        out
    }

    /// Exact evaluation at an integer point (characters must be invertible
    /// where negative powers occur).
    pub fn eval(&self, point: &[i64], unit: &F) -> Result<F> {
        let mut total = unit.zero();
        for (c, p) in &self.terms {
            let mut v = p.eval(point, unit);
            for (k, &e) in point.iter().enumerate() {
                v = v.mul(&int_pow(&c[k], e)?);
            }
            total = total.add(&v);
        }
        Ok(total)
    }

    /// Substitute `m_k = shift_k + sum_l mat[k][l] m'_l`; characters must be
    /// invertible where negative matrix entries or shifts occur.
    pub fn affine(&self, new_vars: usize, mat: &[Vec<i64>], shift: &[i64], unit: &F) -> Result<Self> {
        let mut out = Self::zero(new_vars);
        for (c, p) in &self.terms {
            // character: new component l = prod_k c_k^{mat[k][l]}; constant
            // factor prod_k c_k^{shift_k} multiplies the polynomial
            let mut newc = Vec::with_capacity(new_vars);
            for l in 0..new_vars {
                let mut v = unit.one();
                for (k, ck) in c.iter().enumerate() {
                    v = v.mul(&int_pow(ck, mat[k][l])?);
                }
                newc.push(v);
            }
            let mut constant = unit.one();
            for (k, ck) in c.iter().enumerate() {
                constant = constant.mul(&int_pow(ck, shift[k])?);
            }
            let newp = p.affine(new_vars, mat, shift, unit).scale(&constant);
            out.push_term(newc, newp);
        }
        Ok(out)
    }

    /// Embed a function of `m_k` alone into `vars` variables at slot `k`.
    pub fn embed_single(&self, vars: usize, k: usize, unit: &F) -> Result<Self> {
        assert_eq!(self.vars, 1);
        let mat = vec![(0..vars).map(|l| i64::from(l == k)).collect::<Vec<i64>>()];
        self.affine(vars, &mat, &[0], unit)
    }

    /// Symbolic prefix sum: `F(m) = sum_{s=0}^{m-1} f(s)` for a function of a
    /// single variable, exact for every integer `m >= 0`.
    pub fn prefix_sum(&self, unit: &F) -> Result<Self> {
        assert_eq!(self.vars, 1, "prefix sums are taken in one variable");
        let mut out = Self::zero(1);
        for (c, p) in &self.terms {
            let chi = &c[0];
            for (e, coeff) in p.iter() {
                let d = e[0];
                let g = antidifference(chi, d, unit)?;
                // sum_{s<m} chi^s s^d = g(m) - g(0)
                let at_zero = g.eval(&[0], unit)?;
                let shifted = g.sub(&Self::constant(1, at_zero));
                out = out.add(&shifted.scale(coeff));
            }
        }
        Ok(out)
    }
}

impl<F: Coeff> PartialEq for LatticeFn<F> {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// `c^e` with exact inversion for negative exponents.
pub fn int_pow<F: Coeff>(c: &F, e: i64) -> Result<F> {
    if e == 0 {
        return Ok(c.one());
    }
    let base = if e < 0 { c.inv()? } else { c.clone() };
    let mut out = c.one();
    for _ in 0..e.unsigned_abs() {
        out = out.mul(&base);
    }
    Ok(out)
}

/// Solve `g(s+1) - g(s) = chi^s s^d` exactly: `g = chi^s p(s)` with
/// `deg p = d` when `chi != 1`, and `g = p(s)` with `deg p = d + 1` when
/// `chi = 1` (then `g(0) = 0` fixes the constant).
fn antidifference<F: Coeff>(chi: &F, d: u32, unit: &F) -> Result<LatticeFn<F>> {
    let one = unit.one();
    if chi.sub(&one).is_zero() {
        // polynomial case: p(s+1) - p(s) = s^d with deg p = d+1
        let deg = (d + 1) as usize;
        // unknowns p_1..p_{deg} (constant fixed to 0)
        let n = deg;
        let mut mat = vec![vec![unit.zero(); n + 1]; n];
        // coefficient of s^r in p(s+1) - p(s) = sum_e p_e (C(e,r) - [e==r]) s^r
        for r in 0..n {
            for e in 1..=deg {
                if e < r {
                    continue;
                }
                let mut v = unit.from_int(binom(e as i64, r as i64));
                if e == r {
                    v = v.sub(&one);
                }
                mat[r][e - 1] = v;
            }
            mat[r][n] = if r == d as usize { one.clone() } else { unit.zero() };
        }
        let sol = solve_linear(mat, unit)?;
        let mut poly = IntPoly::zero(1);
        for (e, c) in sol.into_iter().enumerate() {
            poly.add_term(vec![(e + 1) as u32], c);
        }
        Ok(LatticeFn::from_term(vec![one], poly))
    } else {
        // chi^s p(s): chi * p(s+1) - p(s) = s^d with deg p = d
        let n = (d + 1) as usize;
        let mut mat = vec![vec![unit.zero(); n + 1]; n];
        for r in 0..n {
            for e in r..n {
                // chi * C(e, r) - [e == r]
                let mut v = chi.mul(&unit.from_int(binom(e as i64, r as i64)));
                if e == r {
                    v = v.sub(&one);
                }
                mat[r][e] = v;
            }
            mat[r][n] = if r == d as usize { one.clone() } else { unit.zero() };
        }
        let sol = solve_linear(mat, unit)?;
        let mut poly = IntPoly::zero(1);
        for (e, c) in sol.into_iter().enumerate() {
            poly.add_term(vec![e as u32], c);
        }
        Ok(LatticeFn::from_term(vec![chi.clone()], poly))
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut v: i64 = 1;
    for t in 0..k {
        v = v * (n - t) / (t + 1);
    }
    v
}

/// Exact Gaussian elimination on an augmented matrix (rows x (cols+1)).
fn solve_linear<F: Coeff>(mut mat: Vec<Vec<F>>, unit: &F) -> Result<Vec<F>> {
    let rows = mat.len();
    let cols = mat.first().map(|r| r.len() - 1).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(sel) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, sel);
        let inv = mat[row][col].inv()?;
        for j in col..=cols {
            mat[row][j] = mat[row][j].mul(&inv);
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for j in col..=cols {
                    let sub = mat[row][j].mul(&f);
                    mat[r][j] = mat[r][j].sub(&sub);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    // consistency
    for r in row..rows {
        if !mat[r][cols].is_zero() {
            return Err(crate::error::CoreError::Unsupported(
                "inconsistent linear system in antidifference solve".into(),
            ));
        }
    }
    let mut sol = vec![unit.zero(); cols];
    for (r, c) in pivots {
        sol[c] = mat[r][cols].clone();
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ParamSpace, Ratio, Scalar};

    fn unit() -> Ratio {
        Ratio::one(ParamSpace::new(2))
    }

    #[test]
    fn geometric_prefix_sum() {
        let sp = ParamSpace::new(2);
        let a = Ratio::from_scalar(Scalar::a(sp));
        // f(s) = a^s: sum_{s<m} a^s should evaluate to the q-integer [m]
        let f = LatticeFn::character(vec![a.clone()], &unit());
        let s = f.prefix_sum(&unit()).unwrap();
        for m in 0..6i64 {
            let got = s.eval(&[m], &unit()).unwrap();
            let expect = Ratio::from_scalar(crate::ring::q_int(sp, m as u32));
            assert_eq!(got, expect, "m={m}");
        }
    }

    #[test]
    fn faulhaber_prefix_sum() {
        // f(s) = s^2: sum_{s<m} s^2 = m(m-1)(2m-1)/6
        let u = unit();
        let f = LatticeFn::from_term(
            vec![u.one()],
            IntPoly::coordinate(1, 0, &u).mul(&IntPoly::coordinate(1, 0, &u)),
        );
        let s = f.prefix_sum(&u).unwrap();
        for m in 0..8i64 {
            let got = s.eval(&[m], &u).unwrap();
            let expect = u.from_int(m * (m - 1) * (2 * m - 1) / 6);
            assert_eq!(got, expect, "m={m}");
        }
    }

    #[test]
    fn character_polynomial_mixed_sum() {
        let sp = ParamSpace::new(2);
        let u = unit();
        let a = Ratio::from_scalar(Scalar::a(sp));
        // f(s) = s * a^s; check against direct evaluation
        let f = LatticeFn::from_term(vec![a], IntPoly::coordinate(1, 0, &u));
        let s = f.prefix_sum(&u).unwrap();
        for m in 0..6i64 {
            let mut expect = u.zero();
            for t in 0..m {
                expect = expect.add(&f.eval(&[t], &u).unwrap());
            }
            assert_eq!(s.eval(&[m], &u).unwrap(), expect, "m={m}");
        }
    }

    #[test]
    fn zero_test_distinguishes_characters() {
        let sp = ParamSpace::new(2);
        let u = unit();
        let a = Ratio::from_scalar(Scalar::a(sp));
        let f = LatticeFn::character(vec![a.clone()], &u);
        let g = LatticeFn::character(vec![u.one()], &u);
        assert!(!f.sub(&g).is_zero());
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn affine_composition_matches_pointwise() {
        let sp = ParamSpace::new(2);
        let u = unit();
        let a = Ratio::from_scalar(Scalar::a(sp));
        // f(m1, m2) = m1 * a^{m2}
        let f = LatticeFn::from_term(
            vec![u.one(), a],
            IntPoly::coordinate(2, 0, &u),
        );
        // substitute m1 = 2 + m'_1 + m'_2, m2 = -1 + m'_2
        let mat = vec![vec![1, 1], vec![0, 1]];
        let shift = vec![2, -1];
        let g = f.affine(2, &mat, &shift, &u).unwrap();
        for p1 in -2..3i64 {
            for p2 in -2..3i64 {
                let direct = f.eval(&[2 + p1 + p2, -1 + p2], &u).unwrap();
                let via = g.eval(&[p1, p2], &u).unwrap();
                assert_eq!(direct, via, "({p1},{p2})");
            }
        }
    }
}
