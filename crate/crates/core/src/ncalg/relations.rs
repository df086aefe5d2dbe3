//! The defining quadratic relations of the quantum matrix pseudogroup, as
//! explicit data shared by the rewriting presets and the representation
//! checker.
//!
//! Each relation is a formal sum `sum_t c_t * z_{i_t}^{r_t} z_{j_t}^{s_t} = 0`
//! over ordered products of two generators. The four families are:
//!
//! 1. `z_i^r z_i^s = q^{rs} z_i^s z_i^r`                       (same row)
//! 2. `z_i^r z_j^r = (a q^{ij})^{-1} z_j^r z_i^r`, `i < j`      (same column)
//! 3. `z_i^r z_j^s = (a q^{rs}/q^{ij}) z_j^s z_i^r`, `i > j, r < s`
//! 4. `q^{ij} z_i^r z_j^s - q^{rs} z_j^s z_i^r = (a-1) z_j^r z_i^s`,
//!    `i > j, r > s`
//!
//! Family 1 is stated without an index condition in the source presentation;
//! the `r > s` and `r < s` readings are rearrangements of each other (the
//! coefficients satisfy `q^{rs} q^{sr} = 1`), so the list below emits each
//! relation once with `r > s`. The equivalence with the commutator definition
//! `[P, Z (x) Z] = 0` is certified by a span comparison in `rmatrix`.

use crate::ring::{ParamSpace, Ratio, Scalar};

/// A generator `z_i^j` of the pseudogroup (1-based indices).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ZGen {
    pub row: usize,
    pub col: usize,
}

/// `sum c * z_g1 z_g2 = 0`.
#[derive(Clone, Debug)]
pub struct QuadRelation {
    pub terms: Vec<(Ratio, ZGen, ZGen)>,
    /// which family of the presentation produced it (1..=4)
    pub family: u8,
}

/// All defining relations for matrix size `N`.
pub fn pseudogroup_relations(space: ParamSpace) -> Vec<QuadRelation> {
    let n = space.n();
    let one = || Ratio::one(space);
    let q = |i: usize, j: usize| Ratio::from_scalar(Scalar::q(space, i, j));
    let a = || Ratio::from_scalar(Scalar::a(space));
    let z = |row, col| ZGen { row, col };
    let mut out = Vec::new();

    // family 1: z_i^r z_i^s - q^{rs} z_i^s z_i^r, r > s
    for i in 1..=n {
        for r in 1..=n {
            for s in 1..r {
                out.push(QuadRelation {
                    terms: vec![
                        (one(), z(i, r), z(i, s)),
                        (q(r, s).neg(), z(i, s), z(i, r)),
                    ],
                    family: 1,
                });
            }
        }
    }
    // family 2: z_i^r z_j^r - (a q^{ij})^{-1} z_j^r z_i^r, i < j
    for r in 1..=n {
        for i in 1..=n {
            for j in (i + 1)..=n {
                let c = a().mul(&q(i, j)).inv().expect("monomial");
                out.push(QuadRelation {
                    terms: vec![(one(), z(i, r), z(j, r)), (c.neg(), z(j, r), z(i, r))],
                    family: 2,
                });
            }
        }
    }
    // family 3: z_i^r z_j^s - (a q^{rs}/q^{ij}) z_j^s z_i^r, i > j, r < s
    for i in 1..=n {
        for j in 1..i {
            for r in 1..=n {
                for s in (r + 1)..=n {
                    let c = a().mul(&q(r, s)).mul(&q(i, j).inv().expect("monomial"));
                    out.push(QuadRelation {
                        terms: vec![(one(), z(i, r), z(j, s)), (c.neg(), z(j, s), z(i, r))],
                        family: 3,
                    });
                }
            }
        }
    }
    // family 4: q^{ij} z_i^r z_j^s - q^{rs} z_j^s z_i^r - (a-1) z_j^r z_i^s,
    // i > j, r > s
    for i in 1..=n {
        for j in 1..i {
            for r in 1..=n {
                for s in 1..r {
                    let am1 = a().sub(&one());
                    out.push(QuadRelation {
                        terms: vec![
                            (q(i, j), z(i, r), z(j, s)),
                            (q(r, s).neg(), z(j, s), z(i, r)),
                            (am1.neg(), z(j, r), z(i, s)),
                        ],
                        family: 4,
                    });
                }
            }
        }
    }
    out
}
