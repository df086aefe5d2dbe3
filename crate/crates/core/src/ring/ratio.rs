//! Rational functions: quotients of two [`Scalar`]s in canonical form.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::{CycScalar, ParamSpace, Scalar};
use crate::error::CoreError;
use crate::Result;

/// A quotient `num/den` of Laurent polynomials.
///
/// Canonical form: the denominator's lexicographically greatest monomial has
/// coefficient 1 and zero monomial content (componentwise-minimal exponents
/// shifted out), and a denominator that divides the numerator exactly is
/// cancelled. Full multivariate gcd is deliberately not attempted; equality
/// testing uses cross-multiplication.
#[derive(Clone, Debug)]
pub struct Ratio {
    num: Scalar,
    den: Scalar,
}

impl Ratio {
    pub fn new(num: Scalar, den: Scalar) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Scalar, den: Scalar) -> Self {
        let space = num.space();
        if num.is_zero() {
            return Ratio {
                num,
                den: Scalar::one(space),
            };
        }
        let mut num = num;
        let mut den = den;
        // strip common monomial content
        let nmin = num.min_exps().unwrap();
        let dmin = den.min_exps().unwrap();
        let shift: Vec<i64> = nmin.iter().zip(&dmin).map(|(a, b)| (*a).min(*b)).collect();
        if shift.iter().any(|&x| x != 0) {
            num = num.shift_exps(&shift);
            den = den.shift_exps(&shift);
        }
        // cancel an exact division in either direction
        if let Some(q) = num.exact_div(&den) {
            num = q;
            den = Scalar::one(space);
        } else if let Some(q) = den.exact_div(&num) {
            den = q;
            num = Scalar::one(space);
        }
        // normalize the denominator's lex-greatest coefficient to 1
        let lead = den.lex_greatest().unwrap().1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ratio { num, den }
    }

    pub fn zero(space: ParamSpace) -> Self {
        Ratio {
            num: Scalar::zero(space),
            den: Scalar::one(space),
        }
    }

    pub fn one(space: ParamSpace) -> Self {
        Ratio {
            num: Scalar::one(space),
            den: Scalar::one(space),
        }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        let den = Scalar::one(s.space());
        Ratio { num: s, den }
    }

    pub fn from_int(space: ParamSpace, v: i64) -> Self {
        Self::from_scalar(Scalar::from_int(space, v))
    }

    pub fn from_rational(space: ParamSpace, v: BigRational) -> Self {
        Self::from_scalar(Scalar::from_rational(space, v))
    }

    pub fn space(&self) -> ParamSpace {
        self.num.space()
    }

    pub fn num(&self) -> &Scalar {
        &self.num
    }

    pub fn den(&self) -> &Scalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Ratio::one(self.space())
    }

    pub fn add(&self, other: &Ratio) -> Ratio {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::canonical(num, den)
    }

    pub fn sub(&self, other: &Ratio) -> Ratio {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Ratio {
        Ratio {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Ratio) -> Ratio {
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Ratio> {
        if self.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Ratio) -> Result<Ratio> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &BigRational) -> Ratio {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Ratio> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut out = Ratio::one(self.space());
        for _ in 0..k {
            out = out.mul(self);
        }
        Ok(out)
    }

    /// Replace every parameter by its inverse.
    pub fn invert_params(&self) -> Ratio {
        Self::canonical(self.num.invert_params(), self.den.invert_params())
    }

    /// Substitute monomials for selected parameters.
    pub fn subst_monomial(&self, map: &BTreeMap<usize, Scalar>) -> Ratio {
        Self::canonical(self.num.subst_monomial(map), self.den.subst_monomial(map))
    }

    /// Exact evaluation; errors with a pole when the denominator vanishes.
    pub fn eval_rational(&self, assignment: &super::Assignment) -> Result<BigRational> {
        let d = self.den.eval_rational(assignment)?;
        if num_traits::Zero::is_zero(&d) {
            return Err(CoreError::PoleAtAssignment {
                context: self.to_string(),
            });
        }
        Ok(self.num.eval_rational(assignment)? / d)
    }

    /// Specialize `a` to a primitive K-th root of unity. Errors with a pole
    /// when the denominator specializes to zero.
    pub fn specialize_root(&self, order: u32) -> Result<CycScalar> {
        let d = self.den.specialize_root(order)?;
        if d.is_zero() {
            return Err(CoreError::PoleAtAssignment {
                context: self.to_string(),
            });
        }
        let n = self.num.specialize_root(order)?;
        Ok(n.mul(&d.inv()?))
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplication; canonical forms make the common case cheap
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Ratio {}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
