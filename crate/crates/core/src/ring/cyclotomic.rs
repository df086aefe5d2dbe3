//! Arithmetic in the cyclotomic quotient Q(q-params)[a] / Phi_K(a).
//!
//! The roots-of-unity regime replaces the Hecke parameter by a primitive
//! K-th root of unity. All identities stay exact by computing in the quotient
//! ring modulo the K-th cyclotomic polynomial instead of with complex floats;
//! the `q` parameters remain symbolic. Since Phi_K is irreducible over Q and
//! the `q`s are transcendental, the quotient is a field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ParamSpace, Ratio, Scalar};
use crate::error::CoreError;
use crate::Result;

/// Dense coefficients of the K-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(k: u32) -> Vec<BigRational> {
    assert!(k >= 1);
    // (a^K - 1) divided by the product of Phi_d for proper divisors d of K.
    let mut num = vec![BigRational::zero(); k as usize + 1];
    num[0] = -BigRational::one();
    num[k as usize] = BigRational::one();
    for d in 1..k {
        if k % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = qpoly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of dense rational polynomials (panics on nonzero remainder).
fn qpoly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    let mut quo = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        quo[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let v = rem[i - dd + j].clone() - &c * dc;
            rem[i - dd + j] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quo
}

/// An element of Q(q-params)[a]/Phi_K(a): a polynomial in the root of unity
/// of degree < phi(K), with coefficients that are `a`-free [`Ratio`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct CycScalar {
    space: ParamSpace,
    order: u32,
    /// coefficient of zeta^d at position d; length = deg Phi_K
    coeffs: Vec<Ratio>,
}

impl CycScalar {
    pub fn zero(space: ParamSpace, order: u32) -> Self {
        let deg = cyclotomic_polynomial(order).len() - 1;
        CycScalar {
            space,
            order,
            coeffs: vec![Ratio::zero(space); deg],
        }
    }

    pub fn one(space: ParamSpace, order: u32) -> Self {
        let mut out = Self::zero(space, order);
        out.coeffs[0] = Ratio::one(space);
        out
    }

    pub fn from_int(space: ParamSpace, order: u32, v: i64) -> Self {
        let mut out = Self::zero(space, order);
        out.coeffs[0] = Ratio::from_int(space, v);
        out
    }

    /// Build from an `a`-free ratio.
    pub fn from_ratio(order: u32, r: &Ratio) -> Result<Self> {
        if !r.num().is_a_free() || !r.den().is_a_free() {
            return Err(CoreError::Unsupported(
                "cyclotomic coefficient must be free of the root parameter".into(),
            ));
        }
        let mut out = Self::zero(r.space(), order);
        out.coeffs[0] = r.clone();
        Ok(out)
    }

    /// `zeta^k` for any integer k (reduced via zeta^K = 1).
    pub fn root_power(space: ParamSpace, order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let deg = cyclotomic_polynomial(order).len() - 1;
        let mut dense = vec![Ratio::zero(space); k + 1];
        dense[k] = Ratio::one(space);
        let coeffs = reduce_mod_phi(space, order, dense, deg);
        CycScalar {
            space,
            order,
            coeffs,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn space(&self) -> ParamSpace {
        self.space
    }

    pub fn coeffs(&self) -> &[Ratio] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Ratio, &Ratio) -> Ratio) -> Self {
        assert_eq!(self.order, other.order, "mixed root orders");
        CycScalar {
            space: self.space,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycScalar {
            space: self.space,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "mixed root orders");
        let deg = self.coeffs.len();
        let mut dense = vec![Ratio::zero(self.space); 2 * deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[i + j] = dense[i + j].add(&a.mul(b));
            }
        }
        CycScalar {
            space: self.space,
            order: self.order,
            coeffs: reduce_mod_phi(self.space, self.order, dense, deg),
        }
    }

    /// Multiply by an `a`-free scalar monomial/polynomial.
    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        let r = Ratio::from_scalar(s.clone());
        CycScalar {
            space: self.space,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul(&r)).collect(),
        }
    }

    pub fn scale(&self, r: &Ratio) -> Self {
        CycScalar {
            space: self.space,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect(),
        }
    }

    /// Field inverse via the extended Euclidean algorithm against Phi_K.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        let space = self.space;
        let phi: Vec<Ratio> = cyclotomic_polynomial(self.order)
            .into_iter()
            .map(|c| Ratio::from_rational(space, c))
            .collect();
        let elem: Vec<Ratio> = self.coeffs.clone();
        // extended Euclid: s * elem + t * phi = gcd (a unit)
        let (g, s) = ext_euclid(space, &elem, &phi)?;
        // g is a nonzero constant
        let g0 = g
            .first()
            .cloned()
            .filter(|c| !c.is_zero())
            .ok_or(CoreError::ZeroDenominator)?;
        debug_assert!(g.iter().skip(1).all(|c| c.is_zero()));
        let ginv = g0.inv()?;
        let deg = self.coeffs.len();
        let dense: Vec<Ratio> = s.iter().map(|c| c.mul(&ginv)).collect();
        Ok(CycScalar {
            space,
            order: self.order,
            coeffs: reduce_mod_phi(space, self.order, dense, deg),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.space, self.order);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Numeric check value: evaluate the q-part at an assignment and reduce
    /// the result to rational coordinates in the power basis.
    pub fn eval_coeffs(&self, assignment: &super::Assignment) -> Result<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.eval_rational(assignment)).collect()
    }
}

/// Reduce a dense zeta-polynomial modulo Phi_K to length `deg`.
fn reduce_mod_phi(space: ParamSpace, order: u32, mut dense: Vec<Ratio>, deg: usize) -> Vec<Ratio> {
    let phi = cyclotomic_polynomial(order);
    // phi is monic of degree `deg`
    for i in (deg..dense.len()).rev() {
        let c = dense[i].clone();
        if c.is_zero() {
            continue;
        }
        dense[i] = Ratio::zero(space);
        for (j, pc) in phi.iter().enumerate().take(deg) {
            if pc.is_zero() {
                continue;
            }
            let sub = c.scale(&pc.clone());
            dense[i - deg + j] = dense[i - deg + j].sub(&sub);
        }
    }
    dense.truncate(deg);
    dense.resize(deg, Ratio::zero(space));
    dense
}

type RPoly = Vec<Ratio>;

fn rpoly_deg(p: &RPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn rpoly_divmod(space: ParamSpace, num: &RPoly, den: &RPoly) -> Result<(RPoly, RPoly)> {
    let dd = rpoly_deg(den).ok_or(CoreError::ZeroDenominator)?;
    let lead_inv = den[dd].inv()?;
    let mut rem = num.clone();
    let nd = match rpoly_deg(&rem) {
        Some(d) => d,
        None => return Ok((vec![], rem)),
    };
    if nd < dd {
        return Ok((vec![], rem));
    }
    let mut quo = vec![Ratio::zero(space); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].mul(&lead_inv);
        if c.is_zero() {
            continue;
        }
        quo[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate().take(dd + 1) {
            let s = c.mul(dc);
            rem[i - dd + j] = rem[i - dd + j].sub(&s);
        }
    }
    Ok((quo, rem))
}

fn rpoly_mul(space: ParamSpace, a: &RPoly, b: &RPoly) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Ratio::zero(space); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn rpoly_sub(space: ParamSpace, a: &RPoly, b: &RPoly) -> RPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Ratio::zero(space); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(|| Ratio::zero(space));
        let y = b.get(i).cloned().unwrap_or_else(|| Ratio::zero(space));
        *slot = x.sub(&y);
    }
    out
}

/// Returns (gcd, s) with s*a = gcd mod b.
fn ext_euclid(space: ParamSpace, a: &RPoly, b: &RPoly) -> Result<(RPoly, RPoly)> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let one: RPoly = vec![Ratio::one(space)];
    let mut s0 = one;
    let mut s1: RPoly = vec![];
    while rpoly_deg(&r1).is_some() {
        let (q, r) = rpoly_divmod(space, &r0, &r1)?;
        let s = rpoly_sub(space, &s0, &rpoly_mul(space, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    Ok((r0, s0))
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{c}")?;
            } else if d == 1 {
                write!(f, "{c}*zeta")?;
            } else {
                write!(f, "{c}*zeta^{d}")?;
            }
        }
        Ok(())
    }
}

/// Convenience: the rational `v` as a BigRational.
pub(crate) fn big(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        // Phi_1 = a - 1, Phi_2 = a + 1, Phi_3 = a^2 + a + 1,
        // Phi_4 = a^2 + 1, Phi_6 = a^2 - a + 1
        assert_eq!(cyclotomic_polynomial(1), vec![q(-1, 1), q(1, 1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![q(1, 1), q(1, 1)]);
        assert_eq!(
            cyclotomic_polynomial(3),
            vec![q(1, 1), q(1, 1), q(1, 1)]
        );
        assert_eq!(cyclotomic_polynomial(4), vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![q(1, 1), q(-1, 1), q(1, 1)]
        );
    }

    #[test]
    fn root_power_wraps_and_reduces() {
        let sp = ParamSpace::new(2);
        // K = 3: zeta^2 = -1 - zeta
        let z2 = CycScalar::root_power(sp, 3, 2);
        assert_eq!(z2.coeffs()[0], Ratio::from_int(sp, -1));
        assert_eq!(z2.coeffs()[1], Ratio::from_int(sp, -1));
        // zeta^3 = 1
        let z3 = CycScalar::root_power(sp, 3, 3);
        assert!(z3.is_one());
        let zm1 = CycScalar::root_power(sp, 3, -1);
        assert_eq!(zm1, z2);
    }

    #[test]
    fn inverse_of_one_minus_root() {
        let sp = ParamSpace::new(2);
        // 1/(1 - zeta) for K = 3 equals (2 + zeta)/3
        let one = CycScalar::one(sp, 3);
        let x = one.sub(&CycScalar::root_power(sp, 3, 1));
        let inv = x.inv().unwrap();
        assert_eq!(inv.coeffs()[0], Ratio::from_rational(sp, q(2, 3)));
        assert_eq!(inv.coeffs()[1], Ratio::from_rational(sp, q(1, 3)));
        assert!(x.mul(&inv).is_one());
    }
}
