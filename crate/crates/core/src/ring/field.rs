//! Coefficient-field abstraction.
//!
//! The rewriting engine and the dual-pairing layer run either over the generic
//! parameter field (symbolic `a`) or over its cyclotomic specialization
//! (`a` a primitive root of unity, `q`s symbolic). Both are fields; this trait
//! is the small surface they share. `zero`/`one` take `&self` because values
//! carry their parameter-space context.

use std::fmt;

use super::{CycScalar, Ratio};
use crate::Result;

pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_int(&self, v: i64) -> Self;
    /// Map a generic-field value into this field (identity for `Ratio`,
    /// root-of-unity specialization for `CycScalar`).
    fn from_ratio(&self, r: &Ratio) -> Result<Self>;
}

impl Coeff for Ratio {
    fn zero(&self) -> Self {
        Ratio::zero(self.space())
    }
    fn one(&self) -> Self {
        Ratio::one(self.space())
    }
    fn is_zero(&self) -> bool {
        Ratio::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Ratio::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        Ratio::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Ratio::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Ratio::mul(self, other)
    }
    fn neg(&self) -> Self {
        Ratio::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        Ratio::inv(self)
    }
    fn from_int(&self, v: i64) -> Self {
        Ratio::from_int(self.space(), v)
    }
    fn from_ratio(&self, r: &Ratio) -> Result<Self> {
        Ok(r.clone())
    }
}

impl Coeff for CycScalar {
    fn zero(&self) -> Self {
        CycScalar::zero(self.space(), self.order())
    }
    fn one(&self) -> Self {
        CycScalar::one(self.space(), self.order())
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        CycScalar::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        CycScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CycScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CycScalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        CycScalar::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        CycScalar::inv(self)
    }
    fn from_int(&self, v: i64) -> Self {
        CycScalar::from_int(self.space(), self.order(), v)
    }
    fn from_ratio(&self, r: &Ratio) -> Result<Self> {
        r.specialize_root(self.order())
    }
}
