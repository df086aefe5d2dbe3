//! First-order deformation check special to gl(3).
//!
//! On top of the generic three-parameter family for N = 3 there is an exact,
//! essential first-order deformation
//!
//! ```text
//! dR = eps ( q^{13} M_1^2 (x) M_3^2  -  M_3^2 (x) M_1^2 ),   eps^2 = 0,
//! ```
//!
//! which preserves the Yang-Baxter equation at first order precisely when
//! `q^{12} = q^{23}` and `q^{13} = (q^{12})^2`. The check works over the ring
//! extended by a nilpotent: matrices are pairs (zeroth, first) truncated at
//! order eps.

use std::collections::BTreeMap;

use crate::ring::{ParamSpace, Ratio, Scalar};
use crate::tensor::Mat;
use crate::Result;

/// A matrix over the dual numbers: `zeroth + eps * first`, `eps^2 = 0`.
#[derive(Clone, Debug)]
pub struct EpsMat {
    pub zeroth: Mat,
    pub first: Mat,
}

impl EpsMat {
    pub fn mul(&self, other: &EpsMat) -> EpsMat {
        EpsMat {
            zeroth: self.zeroth.mul(&other.zeroth),
            first: self
                .zeroth
                .mul(&other.first)
                .add(&self.first.mul(&other.zeroth)),
        }
    }

    pub fn sub(&self, other: &EpsMat) -> EpsMat {
        EpsMat {
            zeroth: self.zeroth.sub(&other.zeroth),
            first: self.first.sub(&other.first),
        }
    }

    pub fn embed(&self, p: usize, q: usize, total: usize) -> Result<EpsMat> {
        Ok(EpsMat {
            zeroth: self.zeroth.embed(p, q, total)?,
            first: self.first.embed(p, q, total)?,
        })
    }
}

/// Result of the first-order Yang-Baxter check.
#[derive(Clone, Debug)]
pub struct EsotericOutcome {
    /// residual at order eps^0 (the undeformed YBE; always zero)
    pub zeroth_residual: Mat,
    /// residual at order eps^1
    pub first_residual: Mat,
}

/// Run the deformation check for gl(3). With `constrained` the parameters are
/// specialized to `q^{23} = q^{12}`, `q^{13} = (q^{12})^2` before testing;
/// otherwise they stay generic (the negative control, which must fail).
pub fn esoteric_gl3(space: ParamSpace, constrained: bool) -> Result<EsotericOutcome> {
    assert_eq!(space.n(), 3, "the esoteric deformation lives on gl(3)");
    let r0 = super::build_r(space);
    // dR = q^{13} M_1^2 (x) M_3^2 - M_3^2 (x) M_1^2
    let m12 = Mat::unit(space, 3, 1, 2);
    let m32 = Mat::unit(space, 3, 3, 2);
    let q13 = Ratio::from_scalar(Scalar::q(space, 1, 3));
    let dr = m12.kron(&m32)?.scale(&q13).sub(&m32.kron(&m12)?);

    let subst = |m: &Mat| -> Mat {
        if !constrained {
            return m.clone();
        }
        let mut map = BTreeMap::new();
        map.insert(space.q_param(2, 3), Scalar::q(space, 1, 2));
        map.insert(space.q_param(1, 3), Scalar::q(space, 1, 2).pow(2));
        m.map_entries(|e| Ok::<_, std::convert::Infallible>(e.subst_monomial(&map)))
            .unwrap()
    };
    let e = EpsMat {
        zeroth: subst(&r0),
        first: subst(&dr),
    };
    let e12 = e.embed(1, 2, 3)?;
    let e13 = e.embed(1, 3, 3)?;
    let e23 = e.embed(2, 3, 3)?;
    let res = e12
        .mul(&e13)
        .mul(&e23)
        .sub(&e23.mul(&e13).mul(&e12));
    Ok(EsotericOutcome {
        zeroth_residual: res.zeroth,
        first_residual: res.first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constrained_deformation_is_exact() {
        let sp = ParamSpace::new(3);
        let out = esoteric_gl3(sp, true).unwrap();
        assert!(out.zeroth_residual.is_zero());
        assert!(out.first_residual.is_zero());
    }

    #[test]
    fn generic_parameters_break_first_order_ybe() {
        let sp = ParamSpace::new(3);
        let out = esoteric_gl3(sp, false).unwrap();
        assert!(out.zeroth_residual.is_zero());
        assert!(!out.first_residual.is_zero());
    }
}
