//! Reduction from quantum gl(N) to quantum sl(N).
//!
//! Projecting out the central Cartan combination replaces each diagonal
//! generator by `H_i - 1/N` in the fundamental representation. The effect on
//! the R-matrix is captured by the monomials
//!
//! ```text
//! kappa_i = ( a^i prod_k q^{ki} )^{1/N},    qhat^{ij} = (kappa_i/kappa_j) q^{ij},
//! ```
//!
//! which live on the `(1/2N)` exponent lattice. The hatted parameters are
//! constrained by `(prod_i qhat^{ij}) a^j = a^{(N+1)/2}`, and when the inputs
//! already satisfy the same constraint the reduction is the identity on the
//! parameters.
//!
//! Two wrinkles, resolved computationally here. First, writing the reduced
//! matrix as a plain diagonal sum over `qhat^{ij}` drops the Hecke asymmetry
//! between the `i<j` and `i>j` diagonal families; the substitution actually
//! produces `(kappa_i/kappa_j) qtilde^{ij}` with `qtilde^{ij} = a q^{ij}` for
//! `i<j` and `q^{ij}` otherwise, which is the form built below. Second, the
//! dressed matrix is *not* itself a Yang-Baxter solution: substituting
//! `H_i -> M_i^i - 1/N` at fixed off-diagonal generators is not an algebra
//! map, and the kappa dressing it leaves behind breaks the braid identities.
//! The diagonal rescaling `M_i^j -> (kappa_i/kappa_j) M_i^j` on the first leg
//! removes the dressing and lands exactly on the generic R-matrix over the
//! hatted parameters, which satisfies everything; both facts are asserted in
//! the tests.

use std::collections::BTreeMap;

use crate::ring::{ParamSpace, Ratio, Scalar};
use crate::tensor::Mat;

use super::build_r_from;

/// Output of the sl(N) reduction.
#[derive(Clone, Debug)]
pub struct SlReduction {
    pub space: ParamSpace,
    /// `kappa_i`, 1-based at index i-1.
    pub kappa: Vec<Scalar>,
    /// `qhat^{ij}` for all i, j (1-based; diagonal entries are 1).
    pub q_hat: Vec<Vec<Scalar>>,
    /// The reduced R-matrix (with the Hecke-asymmetric diagonal described in
    /// the module docs).
    pub r_sl: Mat,
}

/// `q^{ij}` resolved through the stored parameters.
fn qm(space: ParamSpace, i: usize, j: usize) -> Scalar {
    Scalar::q(space, i, j)
}

/// `kappa_i = (a^i prod_k q^{ki})^{1/N}` as a lattice monomial.
fn kappa(space: ParamSpace, i: usize) -> Scalar {
    let n = space.n();
    let mut m = Scalar::a_pow_frac(space, i as i64, n as i64);
    for k in 1..=n {
        if k == i {
            continue;
        }
        // q^{ki} to the power 1/N
        let e = if k < i { 1 } else { -1 };
        let (lo, hi) = (k.min(i), k.max(i));
        let p = space.q_param(lo, hi);
        let scaled = e * space.exp_denom() / n as i64;
        let mut exps = vec![0i64; space.num_params()];
        exps[p] = scaled;
        m = m.mul(&Scalar::monomial(
            space,
            exps,
            num_rational::BigRational::from_integer(1.into()),
        ));
    }
    m
}

pub fn sl_reduce(space: ParamSpace) -> SlReduction {
    let n = space.n();
    assert!(
        space.exp_denom() % n as i64 == 0,
        "exponent lattice must refine 1/N"
    );
    let kappas: Vec<Scalar> = (1..=n).map(|i| kappa(space, i)).collect();
    let kratio = |i: usize, j: usize| kappas[i - 1].mul(&kappas[j - 1].invert_params());
    let mut q_hat = vec![vec![Scalar::one(space); n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                q_hat[i][j] = kratio(i, j).mul(&qm(space, i, j));
            }
        }
    }
    // diagonal coefficient (kappa_i/kappa_j) qtilde^{ij}; off-diagonal family
    // (1-a)(kappa_i/kappa_j) M_j^i (x) M_i^j
    let a = Scalar::a(space);
    let one = Scalar::one(space);
    let mut r_sl = Mat::zero(space, 2, n);
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    for i in 1..=n {
        for j in 1..=n {
            let qtilde = if i < j {
                a.mul(&qm(space, i, j))
            } else {
                qm(space, i, j)
            };
            r_sl.set(
                idx(i, j),
                idx(i, j),
                Ratio::from_scalar(kratio(i, j).mul(&qtilde)),
            );
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            r_sl.set(
                idx(j, i),
                idx(i, j),
                Ratio::from_scalar(one.sub(&a).mul(&kratio(i, j))),
            );
        }
    }
    SlReduction {
        space,
        kappa: kappas,
        q_hat,
        r_sl,
    }
}

impl SlReduction {
    /// `(prod_i qhat^{ij}) a^j = a^{(N+1)/2}` for every column j, as a
    /// monomial identity.
    pub fn constraint_residuals(&self) -> Vec<Scalar> {
        let n = self.space.n();
        let target = Scalar::a_pow_frac(self.space, n as i64 + 1, 2);
        (1..=n)
            .map(|j| {
                let mut prod = Scalar::a_pow(self.space, j as i64);
                for i in 1..=n {
                    prod = prod.mul(&self.q_hat[i][j]);
                }
                prod.sub(&target)
            })
            .collect()
    }

    /// `prod_i kappa_i = a^{(N+1)/2}`: the pairwise cancellation of the
    /// q-exponents.
    pub fn kappa_product_residual(&self) -> Scalar {
        let n = self.space.n();
        let mut prod = Scalar::one(self.space);
        for k in &self.kappa {
            prod = prod.mul(k);
        }
        prod.sub(&Scalar::a_pow_frac(self.space, n as i64 + 1, 2))
    }

    /// A substitution realizing the gl-side constraint
    /// `(prod_i q^{ij}) a^j = a^{(N+1)/2}`: the last-row parameters `q_jN`
    /// are solved in terms of the others.
    pub fn constraint_substitution(&self) -> BTreeMap<usize, Scalar> {
        let space = self.space;
        let n = space.n();
        let mut map = BTreeMap::new();
        for j in 1..n {
            // q_{jN} = a^{j - (N+1)/2} prod_{i<N} q^{ij}
            let mut v = Scalar::a_pow_frac(space, 2 * j as i64 - (n as i64 + 1), 2);
            for i in 1..n {
                if i != j {
                    v = v.mul(&qm(space, i, j));
                }
            }
            map.insert(space.q_param(j, n), v);
        }
        map
    }

    /// Residuals `qhat^{ij} - q^{ij}` after imposing the constraint; all must
    /// vanish.
    pub fn hat_equals_q_under_constraint(&self) -> Vec<Scalar> {
        let n = self.space.n();
        let sub = self.constraint_substitution();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let diff = self.q_hat[i][j].sub(&qm(self.space, i, j));
                out.push(diff.subst_monomial(&sub));
            }
        }
        out
    }

    /// Rescale the first leg by `diag(kappa)` conjugation and compare against
    /// the generic R-matrix built on the hatted parameters; returns the
    /// residual.
    pub fn rescaled_vs_hatted_residual(&self) -> Mat {
        let space = self.space;
        let n = space.n();
        let mut rescaled = self.r_sl.clone();
        for r1 in 0..n {
            for r2 in 0..n {
                for c1 in 0..n {
                    for c2 in 0..n {
                        let v = self.r_sl.get(r1 * n + r2, c1 * n + c2);
                        if v.is_zero() {
                            continue;
                        }
                        let factor = self.kappa[r1].mul(&self.kappa[c1].invert_params());
                        rescaled.set(
                            r1 * n + r2,
                            c1 * n + c2,
                            v.mul(&Ratio::from_scalar(factor)),
                        );
                    }
                }
            }
        }
        let hatted = build_r_from(space, &|i, j| self.q_hat[i][j].clone(), &Scalar::a(space));
        rescaled.sub(&hatted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{check_hecke, check_ybe, permute_rows};

    #[test]
    fn kappa_and_qhat_n2() {
        let sp = ParamSpace::new(2);
        let red = sl_reduce(sp);
        // kappa_1^2 = a q^{21}, kappa_2^2 = a^2 q^{12}
        assert_eq!(
            red.kappa[0].pow(2),
            Scalar::a(sp).mul(&Scalar::q(sp, 2, 1))
        );
        assert_eq!(
            red.kappa[1].pow(2),
            Scalar::a_pow(sp, 2).mul(&Scalar::q(sp, 1, 2))
        );
        // qhat^{12} = a^{-1/2}, qhat^{21} = a^{1/2}
        assert_eq!(red.q_hat[1][2], Scalar::a_pow_frac(sp, -1, 2));
        assert_eq!(red.q_hat[2][1], Scalar::a_pow_frac(sp, 1, 2));
    }

    #[test]
    fn constraint_and_kappa_product() {
        for n in [2u32, 3, 4] {
            let red = sl_reduce(ParamSpace::new(n));
            assert!(red
                .constraint_residuals()
                .iter()
                .all(|r| r.is_zero()));
            assert!(red.kappa_product_residual().is_zero());
        }
    }

    #[test]
    fn hat_equals_q_when_inputs_satisfy_the_constraint() {
        for n in [2u32, 3, 4] {
            let red = sl_reduce(ParamSpace::new(n));
            assert!(red
                .hat_equals_q_under_constraint()
                .iter()
                .all(|r| r.is_zero()));
        }
    }

    #[test]
    fn rescaled_matches_generic_matrix_on_hatted_parameters() {
        for n in [2u32, 3, 4] {
            let red = sl_reduce(ParamSpace::new(n));
            assert!(red.rescaled_vs_hatted_residual().is_zero(), "N={n}");
        }
    }

    #[test]
    fn rescaled_reduction_is_an_r_matrix_but_the_dressed_form_is_not() {
        for n in [2u32, 3] {
            let red = sl_reduce(ParamSpace::new(n));
            let hatted = crate::rmatrix::build_r_from(
                red.space,
                &|i, j| red.q_hat[i][j].clone(),
                &Scalar::a(red.space),
            );
            assert!(check_ybe(&hatted).unwrap().is_zero());
            assert!(check_hecke(&permute_rows(&hatted)).is_zero());
            // the kappa-dressed matrix itself fails both: removing the
            // dressing is what makes the reduction an R-matrix
            assert!(!check_ybe(&red.r_sl).unwrap().is_zero());
            assert!(!check_hecke(&permute_rows(&red.r_sl)).is_zero());
        }
    }
}
