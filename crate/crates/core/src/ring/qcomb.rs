//! q-integers, q-factorials, deformed exponentials, and the generalized
//! exponential scheme at roots of unity.
//!
//! Conventions: `[n] = (a^n - 1)/(a - 1) = 1 + a + ... + a^(n-1)`,
//! `[n!] = [1][2]...[n]`, and the deformed exponential `e_a^z = sum z^n/[n!]`.
//! The second flavor replaces `a` by its inverse monomial.
//!
//! At a primitive K-th root of unity `[K] = 0`, the exponential-series
//! recursion `F_k F_1 = [k+1] F_{k+1}` stops determining `F_K` and the general
//! solution acquires a second generator: `F_{mK+n} = (p'^m/m!) (p^n/[n!])`
//! with the nilpotency `p^K = 0`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::cyclotomic::big;
use super::{CycScalar, ParamSpace, Ratio, Scalar};
use crate::error::CoreError;
use crate::Result;

/// Which deformation parameter the q-series runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QFlavor {
    /// powers of `a`
    A,
    /// powers of `a^{-1}`
    AInv,
}

impl QFlavor {
    fn sign(self) -> i64 {
        match self {
            QFlavor::A => 1,
            QFlavor::AInv => -1,
        }
    }
}

/// `[n] = 1 + a + ... + a^(n-1)`; `[0] = 0`.
pub fn q_int(space: ParamSpace, n: u32) -> Scalar {
    q_int_flavor(space, n, QFlavor::A)
}

pub fn q_int_flavor(space: ParamSpace, n: u32, flavor: QFlavor) -> Scalar {
    let mut out = Scalar::zero(space);
    for k in 0..n {
        out = out.add(&Scalar::a_pow(space, flavor.sign() * k as i64));
    }
    out
}

/// `[n!] = [1][2]...[n]`; `[0!] = 1`.
pub fn q_factorial(space: ParamSpace, n: u32) -> Scalar {
    q_factorial_flavor(space, n, QFlavor::A)
}

pub fn q_factorial_flavor(space: ParamSpace, n: u32, flavor: QFlavor) -> Scalar {
    let mut out = Scalar::one(space);
    for k in 1..=n {
        out = out.mul(&q_int_flavor(space, k, flavor));
    }
    out
}

/// Coefficients `1/[n!]` of the deformed exponential for `n = 0..=max_degree`.
pub fn qexp_coeffs(space: ParamSpace, max_degree: u32, flavor: QFlavor) -> Vec<Ratio> {
    (0..=max_degree)
        .map(|n| {
            Ratio::new(
                Scalar::one(space),
                q_factorial_flavor(space, n, flavor),
            )
            .expect("q-factorial is nonzero at generic parameters")
        })
        .collect()
}

/// One term of the generalized exponential at a root of unity: degree
/// `k = m*K + n` carries `p'^m p^n` with coefficient `1/(m! [n!])`.
#[derive(Clone, Debug)]
pub struct GExpTerm {
    pub degree: u32,
    pub m: u32,
    pub n: u32,
    pub coeff: CycScalar,
}

/// Coefficient table of the generalized exponential for degrees `0..=max_degree`
/// at a primitive K-th root of unity.
pub fn gexp_scheme(space: ParamSpace, order: u32, max_degree: u32) -> Result<Vec<GExpTerm>> {
    assert!(order >= 2, "root order must be at least 2");
    let mut out = Vec::new();
    for k in 0..=max_degree {
        let m = k / order;
        let n = k % order;
        // [n!] at the root: nonzero for n < K by primitivity.
        let qfac = q_factorial(space, n).specialize_root(order)?;
        if qfac.is_zero() {
            return Err(CoreError::VanishingQInt(n));
        }
        let mfac = (1..=m as u64).fold(BigRational::one(), |acc, v| acc * big(v as i64));
        let coeff = qfac
            .inv()?
            .scale(&Ratio::from_rational(space, BigRational::one() / mfac));
        out.push(GExpTerm {
            degree: k,
            m,
            n,
            coeff,
        });
    }
    Ok(out)
}

/// Generic-parameter check of `F_k F_1 = [k+1] F_{k+1}` for `F_k = p^k/[k!]`.
/// Returns the per-degree outcomes.
pub fn verify_gexp_recursion_generic(space: ParamSpace, k_max: u32) -> Vec<(u32, bool)> {
    (0..k_max)
        .map(|k| {
            let lhs = Ratio::new(Scalar::one(space), q_factorial(space, k)).unwrap();
            let rhs = Ratio::new(
                q_int(space, k + 1),
                q_factorial(space, k + 1),
            )
            .unwrap();
            (k, lhs.sub(&rhs).is_zero())
        })
        .collect()
}

/// Classical limit check: at `a = 1` the recursion degenerates to
/// `F_k F_1 = (k+1) F_{k+1}` with `F_k = p^k/k!`.
pub fn verify_gexp_recursion_classical(space: ParamSpace, k_max: u32) -> Vec<(u32, bool)> {
    let mut assignment = super::Assignment::new();
    for p in 0..space.num_params() {
        assignment.insert(p, BigRational::one());
    }
    (0..k_max)
        .map(|k| {
            let bracket = q_int(space, k + 1).eval_rational(&assignment).unwrap();
            let kfac = (1..=k as i64).fold(BigRational::one(), |acc, v| acc * big(v));
            let k1fac = (1..=(k + 1) as i64).fold(BigRational::one(), |acc, v| acc * big(v));
            // 1/k! == [k+1]_{a=1} / (k+1)!  and  [k+1]_{a=1} == k+1
            let ok = bracket == big(k as i64 + 1) && kfac.recip() == bracket / k1fac;
            (k, ok)
        })
        .collect()
}

/// Root-of-unity check of the recursion against the generalized solution,
/// computed in the commutative quotient ring Q(q)[zeta][p, p'] / (p^K).
pub fn verify_gexp_recursion_root(
    space: ParamSpace,
    order: u32,
    k_max: u32,
) -> Result<Vec<(u32, bool)>> {
    let scheme = gexp_scheme(space, order, k_max + 1)?;
    let f = |k: u32| -> BTreeMap<(u32, u32), CycScalar> {
        let t = &scheme[k as usize];
        let mut m = BTreeMap::new();
        m.insert((t.m, t.n), t.coeff.clone());
        m
    };
    let mul = |x: &BTreeMap<(u32, u32), CycScalar>, y: &BTreeMap<(u32, u32), CycScalar>| {
        let mut out: BTreeMap<(u32, u32), CycScalar> = BTreeMap::new();
        for ((m1, n1), c1) in x {
            for ((m2, n2), c2) in y {
                if n1 + n2 >= order {
                    continue; // p^K = 0
                }
                let key = (m1 + m2, n1 + n2);
                let prod = c1.mul(c2);
                out.entry(key)
                    .and_modify(|c| *c = c.add(&prod))
                    .or_insert(prod);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut results = Vec::new();
    for k in 0..k_max {
        let lhs = mul(&f(k), &f(1));
        let bracket = q_int(space, k + 1).specialize_root(order)?;
        let mut rhs = f(k + 1);
        for c in rhs.values_mut() {
            *c = c.mul(&bracket);
        }
        rhs.retain(|_, c| !c.is_zero());
        let ok = lhs == rhs;
        results.push((k, ok));
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_int_basics() {
        let sp = ParamSpace::new(2);
        assert!(q_int(sp, 0).is_zero());
        // [4] = 1 + a + a^2 + a^3
        let expect = Scalar::one(sp)
            .add(&Scalar::a_pow(sp, 1))
            .add(&Scalar::a_pow(sp, 2))
            .add(&Scalar::a_pow(sp, 3));
        assert_eq!(q_int(sp, 4), expect);
        // [3] at a = 2 is 7
        let mut asg = super::super::Assignment::new();
        asg.insert(sp.a_param(), big(2));
        assert_eq!(q_int(sp, 3).eval_rational(&asg).unwrap(), big(7));
    }

    #[test]
    fn q_factorial_basics() {
        let sp = ParamSpace::new(2);
        assert!(q_factorial(sp, 0).is_one());
        let expect = q_int(sp, 2).mul(&q_int(sp, 3));
        assert_eq!(q_factorial(sp, 3), expect);
    }

    #[test]
    fn qexp_coefficients_invert_factorials() {
        let sp = ParamSpace::new(2);
        let coeffs = qexp_coeffs(sp, 4, QFlavor::A);
        assert!(coeffs[0].is_one());
        assert!(coeffs[1].is_one());
        // 1/[2!] = 1/(1+a)
        assert_eq!(
            coeffs[2],
            Ratio::new(Scalar::one(sp), Scalar::one(sp).add(&Scalar::a(sp))).unwrap()
        );
        for (n, c) in coeffs.iter().enumerate() {
            assert!(c
                .mul(&Ratio::from_scalar(q_factorial(sp, n as u32)))
                .is_one());
        }
    }

    #[test]
    fn gexp_examples() {
        let sp = ParamSpace::new(2);
        // K=2, k=3 -> (m,n) = (1,1) with coefficient 1
        let t = &gexp_scheme(sp, 2, 3).unwrap()[3];
        assert_eq!((t.m, t.n), (1, 1));
        assert!(t.coeff.is_one());
        // K=3, k=2 -> (0,2) with coefficient 1/[2!]
        let t = &gexp_scheme(sp, 3, 2).unwrap()[2];
        assert_eq!((t.m, t.n), (0, 2));
        let expect = q_factorial(sp, 2)
            .specialize_root(3)
            .unwrap()
            .inv()
            .unwrap();
        assert_eq!(t.coeff, expect);
        // k=0 -> (0,0) coefficient 1
        let t = &gexp_scheme(sp, 5, 0).unwrap()[0];
        assert_eq!((t.m, t.n), (0, 0));
        assert!(t.coeff.is_one());
    }

    #[test]
    fn gexp_reduces_to_qexp_below_the_root_order() {
        let sp = ParamSpace::new(2);
        let d = 4u32;
        let order = 7u32; // K > D: no p' below degree K
        let scheme = gexp_scheme(sp, order, d).unwrap();
        let qexp = qexp_coeffs(sp, d, QFlavor::A);
        for k in 0..=d {
            let t = &scheme[k as usize];
            assert_eq!(t.m, 0);
            assert_eq!(t.n, k);
            let spec = qexp[k as usize].specialize_root(order).unwrap();
            assert_eq!(t.coeff, spec);
        }
    }

    #[test]
    fn recursion_generic_and_classical_and_root() {
        let sp = ParamSpace::new(2);
        assert!(verify_gexp_recursion_generic(sp, 8)
            .iter()
            .all(|(_, ok)| *ok));
        assert!(verify_gexp_recursion_classical(sp, 8)
            .iter()
            .all(|(_, ok)| *ok));
        for order in [2u32, 3] {
            let res = verify_gexp_recursion_root(sp, order, 2 * order + 1).unwrap();
            assert!(res.iter().all(|(_, ok)| *ok), "order {order}: {res:?}");
        }
    }

    #[test]
    fn roots_kill_exactly_the_order_bracket() {
        let sp = ParamSpace::new(2);
        for order in 2..=6u32 {
            for n in 1..order {
                assert!(!q_int(sp, n).specialize_root(order).unwrap().is_zero());
            }
            assert!(q_int(sp, order).specialize_root(order).unwrap().is_zero());
        }
    }
}
