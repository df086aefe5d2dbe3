//! Laurent polynomials over Q in the space parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CycScalar, ParamSpace};
use crate::error::CoreError;
use crate::Result;

/// A parameter assignment for exact evaluation: values for a subset of the
/// stored parameters.
pub type Assignment = BTreeMap<usize, BigRational>;

/// An exact Laurent polynomial in the space parameters.
///
/// Terms map a scaled exponent vector (one slot per stored parameter, scaled
/// by `exp_denom`) to a nonzero rational coefficient. The map is kept
/// canonical: zero coefficients are removed immediately, and the `BTreeMap`
/// order is the lexicographic order on exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    space: ParamSpace,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl Scalar {
    pub fn zero(space: ParamSpace) -> Self {
        Scalar {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: ParamSpace) -> Self {
        Self::from_rational(space, BigRational::one())
    }

    pub fn from_int(space: ParamSpace, v: i64) -> Self {
        Self::from_rational(space, BigRational::from(BigInt::from(v)))
    }

    pub fn from_rational(space: ParamSpace, v: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert(vec![0; space.num_params()], v);
        }
        Scalar { space, terms }
    }

    /// Monomial `coeff * prod params^exps` with *scaled* exponents.
    pub fn monomial(space: ParamSpace, exps: Vec<i64>, coeff: BigRational) -> Self {
        assert_eq!(exps.len(), space.num_params());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Scalar { space, terms }
    }

    /// The parameter `q^{ij}` for any `i != j` (inverse monomial when `i > j`),
    /// and `1` when `i = j`.
    pub fn q(space: ParamSpace, i: usize, j: usize) -> Self {
        Self::q_pow(space, i, j, 1)
    }

    /// `(q^{ij})^k`, resolving `q^{ii} = 1` and `q^{ji} = q_ij^{-1}`.
    pub fn q_pow(space: ParamSpace, i: usize, j: usize, k: i64) -> Self {
        if i == j || k == 0 {
            return Self::one(space);
        }
        let mut exps = vec![0i64; space.num_params()];
        if i < j {
            exps[space.q_param(i, j)] = k * space.exp_denom();
        } else {
            exps[space.q_param(j, i)] = -k * space.exp_denom();
        }
        Self::monomial(space, exps, BigRational::one())
    }

    /// The Hecke parameter `a`.
    pub fn a(space: ParamSpace) -> Self {
        Self::a_pow_frac(space, 1, 1)
    }

    /// `a^k` for integer `k`.
    pub fn a_pow(space: ParamSpace, k: i64) -> Self {
        Self::a_pow_frac(space, k, 1)
    }

    /// `a^(num/den)`; the fractional exponent must land on the lattice.
    pub fn a_pow_frac(space: ParamSpace, num: i64, den: i64) -> Self {
        Self::param_pow_frac(space, space.a_param(), num, den)
    }

    /// `param^(num/den)` on the exponent lattice.
    pub fn param_pow_frac(space: ParamSpace, param: usize, num: i64, den: i64) -> Self {
        assert!(den > 0);
        let scaled = num * space.exp_denom();
        assert!(
            scaled % den == 0,
            "exponent {num}/{den} not on the (1/{}) lattice",
            space.exp_denom()
        );
        let mut exps = vec![0i64; space.num_params()];
        exps[param] = scaled / den;
        Self::monomial(space, exps, BigRational::one())
    }

    pub fn space(&self) -> ParamSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
                .unwrap_or(false)
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    /// The constant-term coefficient (zero exponent vector).
    pub fn constant_coeff(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.space.num_params()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn insert_term(terms: &mut BTreeMap<Vec<i64>, BigRational>, exps: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        assert_eq!(self.space, other.space, "mixed parameter spaces");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Scalar {
            space: self.space,
            terms,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            space: self.space,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        assert_eq!(self.space, other.space, "mixed parameter spaces");
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut terms, exps, c1 * c2);
            }
        }
        Scalar {
            space: self.space,
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(self.space);
        }
        Scalar {
            space: self.space,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut out = Scalar::one(self.space);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Replace every parameter by its inverse (negate all exponents).
    pub fn invert_params(&self) -> Scalar {
        Scalar {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// The lexicographically greatest term, if any.
    pub fn lex_greatest(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn min_exps(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| (*a).min(*b)).collect()
        }))
    }

    /// Shift all exponents by `-shift` (divide by the monomial `shift`).
    pub fn shift_exps(&self, shift: &[i64]) -> Scalar {
        Scalar {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter().zip(shift).map(|(a, s)| a - s).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact division: `Some(q)` with `self = q * div` when it divides.
    pub fn exact_div(&self, div: &Scalar) -> Option<Scalar> {
        assert!(!div.is_zero(), "division by zero scalar");
        if self.is_zero() {
            return Some(Scalar::zero(self.space));
        }
        let (dlead_e, dlead_c) = div.lex_greatest().unwrap();
        let mut rem = self.clone();
        let mut quo = Scalar::zero(self.space);
        while !rem.is_zero() {
            let (rlead_e, rlead_c) = rem.lex_greatest().unwrap();
            let qe: Vec<i64> = rlead_e.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            let qc = rlead_c / dlead_c;
            let qterm = Scalar::monomial(self.space, qe, qc);
            rem = rem.sub(&qterm.mul(div));
            quo = quo.add(&qterm);
            if quo.num_terms() > self.num_terms() + div.num_terms() + 8 {
                return None; // runaway: not an exact divisor
            }
        }
        Some(quo)
    }

    /// Substitute monomials for selected parameters. Each substituted value
    /// must be a monomial so that fractional lattice exponents stay exact.
    pub fn subst_monomial(&self, map: &BTreeMap<usize, Scalar>) -> Scalar {
        for v in map.values() {
            assert!(v.is_monomial(), "substitution values must be monomials");
            assert_eq!(v.space, self.space);
        }
        let denom = self.space.exp_denom();
        let mut out = Scalar::zero(self.space);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            let mut coeff = c.clone();
            for (&p, v) in map {
                let power = exps[p];
                exps[p] = 0;
                if power == 0 {
                    continue;
                }
                let (ve, vc) = v.lex_greatest().unwrap();
                // value^(power/denom): the value's exponent vector scales by
                // power/denom, which must stay on the lattice.
                for (slot, x) in exps.iter_mut().zip(ve) {
                    let prod = (*x as i128) * (power as i128);
                    assert!(
                        prod % (denom as i128) == 0,
                        "substitution exponent off-lattice"
                    );
                    *slot += (prod / (denom as i128)) as i64;
                }
                if !vc.is_one() {
                    assert!(
                        power % denom == 0,
                        "non-unit monomial coefficient under fractional power"
                    );
                    coeff *= rational_powi(vc, power / denom);
                }
            }
            Self::insert_term(&mut out.terms, exps, coeff);
        }
        out
    }

    /// Exact evaluation at a (partial) rational assignment; parameters that
    /// actually occur must all be assigned.
    pub fn eval_rational(&self, assignment: &Assignment) -> Result<BigRational> {
        let denom = self.space.exp_denom();
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (p, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let val = assignment
                    .get(&p)
                    .ok_or_else(|| CoreError::UnassignedParam(self.space.param_name(p)))?;
                v *= rational_pow_frac(val, x, denom, &self.space.param_name(p))?;
            }
            total += v;
        }
        Ok(total)
    }

    /// Specialize `a` to a primitive K-th root of unity, keeping the `q`
    /// parameters symbolic. Fails if an `a`-exponent is fractional.
    pub fn specialize_root(&self, order: u32) -> Result<CycScalar> {
        let denom = self.space.exp_denom();
        let ap = self.space.a_param();
        let mut out = CycScalar::zero(self.space, order);
        for (e, c) in &self.terms {
            if e[ap] % denom != 0 {
                return Err(CoreError::InexactRoot {
                    param: "a".into(),
                    num: e[ap],
                    den: denom,
                });
            }
            let apow = e[ap] / denom;
            let mut qe = e.clone();
            qe[ap] = 0;
            let qmono = Scalar::monomial(self.space, qe, c.clone());
            out = out.add(&CycScalar::root_power(self.space, order, apow).scale_scalar(&qmono));
        }
        Ok(out)
    }

    /// True when only the `a` exponent is nonzero in every term.
    pub fn is_a_free(&self) -> bool {
        let ap = self.space.a_param();
        self.terms.keys().all(|e| e[ap] == 0)
    }

    /// Degree in `a` (scaled), as a (min, max) range over terms.
    pub fn a_exp_range(&self) -> Option<(i64, i64)> {
        let ap = self.space.a_param();
        let mut range: Option<(i64, i64)> = None;
        for e in self.terms.keys() {
            let x = e[ap];
            range = Some(match range {
                None => (x, x),
                Some((lo, hi)) => (lo.min(x), hi.max(x)),
            });
        }
        range
    }
}

/// `v^k` for integer `k` (negative allowed, `v != 0`).
pub(crate) fn rational_powi(v: &BigRational, k: i64) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let base = if k < 0 { v.recip() } else { v.clone() };
    let mut out = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        out *= &base;
    }
    out
}

/// `v^(num/denom)` exactly, or an error when the root is inexact.
fn rational_pow_frac(v: &BigRational, num: i64, denom: i64, pname: &str) -> Result<BigRational> {
    let g = num.gcd(&denom);
    let (s, t) = (num / g, denom / g);
    let base = if s >= 0 {
        rational_powi(v, s)
    } else {
        if v.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        rational_powi(v, s)
    };
    if t == 1 {
        return Ok(base);
    }
    // exact t-th root of base
    let t_u = t as u32;
    let numer = base.numer().clone();
    let denomi = base.denom().clone();
    let root_n = exact_nth_root(&numer, t_u).ok_or_else(|| CoreError::InexactRoot {
        param: pname.to_string(),
        num,
        den: denom,
    })?;
    let root_d = exact_nth_root(&denomi, t_u).ok_or_else(|| CoreError::InexactRoot {
        param: pname.to_string(),
        num,
        den: denom,
    })?;
    Ok(BigRational::new(root_n, root_d))
}

fn exact_nth_root(v: &BigInt, t: u32) -> Option<BigInt> {
    if v.is_negative() {
        if t % 2 == 0 {
            return None;
        }
        return exact_nth_root(&-v, t).map(|r| -r);
    }
    let r = v.nth_root(t);
    if num_traits::pow(r.clone(), t as usize) == *v {
        Some(r)
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let denom = self.space.exp_denom();
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            for (p, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = self.space.param_name(p);
                let g = x.gcd(&denom);
                let (s, t) = (x / g, denom / g);
                if s == 1 && t == 1 {
                    parts.push(name);
                } else if t == 1 {
                    parts.push(format!("{name}^{s}"));
                } else {
                    parts.push(format!("{name}^({s}/{t})"));
                }
            }
            if parts.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}
