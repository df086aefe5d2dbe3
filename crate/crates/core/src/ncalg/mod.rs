//! Noncommutative polynomial algebra with order-respecting rewriting.
//!
//! Hosts the quantum plane, the differential calculus, the pseudogroup of
//! quantum matrices, and its triangular factorization, each as a
//! confluence-checked rewriting system whose normal words realize the
//! ordered-monomial basis.

pub mod alphabet;
pub mod coproduct;
pub mod poly;
pub mod presets;
pub mod relations;
pub mod rewrite;

pub use alphabet::{Alphabet, Gen, Word};
pub use coproduct::Coproduct;
pub use poly::NCPoly;
pub use presets::{
    braid_equivalence_probe, calculus, exterior_dim, factored, multiset_dim, pseudogroup,
    quantum_plane, substitute_factorization, Factored,
};
pub use rewrite::{orient_relations, RewriteSystem};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::ring::{ParamSpace, Ratio, Scalar};
    use crate::rmatrix::{build_r, permute_rows, RFamily};

    fn plane_sys(n: u32) -> RewriteSystem<Ratio> {
        let sp = ParamSpace::new(n);
        let fam = RFamily::new(sp);
        quantum_plane(sp, &fam.p).unwrap()
    }

    #[test]
    fn quantum_plane_relation_normal_forms_to_zero() {
        let sp = ParamSpace::new(2);
        let sys = plane_sys(2);
        let x = |i: u8| sys.alphabet.pos(&Gen::Coord { i });
        // x1 x2 - q12 x2 x1
        let p = NCPoly::term(Word::pair(x(1), x(2)), Ratio::one(sp)).sub(&NCPoly::term(
            Word::pair(x(2), x(1)),
            Ratio::from_scalar(Scalar::q(sp, 1, 2)),
        ));
        assert!(sys.normal_form(&p).unwrap().is_zero());
        // already-normal words are fixed
        let w = NCPoly::word(Word::pair(x(1), x(2)), &Ratio::one(sp));
        assert_eq!(sys.normal_form(&w).unwrap(), w);
    }

    #[test]
    fn graded_dimensions_match_classical_counts() {
        for n in [2usize, 3] {
            let sp = ParamSpace::new(n as u32);
            let fam = RFamily::new(sp);
            let plane = quantum_plane(sp, &fam.p).unwrap();
            let coords: Vec<u16> = (1..=n)
                .map(|i| plane.alphabet.pos(&Gen::Coord { i: i as u8 }))
                .collect();
            for d in 0..=3 {
                assert_eq!(
                    plane.graded_dim(d, &coords),
                    multiset_dim(n, d),
                    "plane N={n} d={d}"
                );
            }

            let calc = calculus(sp, &fam.p, &Ratio::from_scalar(Scalar::a(sp))).unwrap();
            let thetas: Vec<u16> = (1..=n)
                .map(|i| calc.alphabet.pos(&Gen::Theta { i: i as u8 }))
                .collect();
            for d in 0..=3 {
                assert_eq!(
                    calc.graded_dim(d, &thetas),
                    exterior_dim(n, d),
                    "theta N={n} d={d}"
                );
            }

            let pg = pseudogroup(sp).unwrap();
            let zs: Vec<u16> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i as u8, j as u8)))
                .map(|(i, j)| pg.alphabet.pos(&Gen::ZMat { i, j }))
                .collect();
            for d in 0..=3 {
                assert_eq!(
                    pg.graded_dim(d, &zs),
                    multiset_dim(n * n, d),
                    "pseudogroup N={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn presets_are_locally_confluent() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let fam = RFamily::new(sp);
            assert!(quantum_plane(sp, &fam.p)
                .unwrap()
                .local_confluence(3)
                .unwrap()
                .is_empty());
            assert!(calculus(sp, &fam.p, &Ratio::from_scalar(Scalar::a(sp)))
                .unwrap()
                .local_confluence(3)
                .unwrap()
                .is_empty());
            assert!(pseudogroup(sp)
                .unwrap()
                .local_confluence(3)
                .unwrap()
                .is_empty());
            assert!(factored(sp)
                .unwrap()
                .system
                .local_confluence(3)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn corrupted_rule_breaks_confluence() {
        let sp = ParamSpace::new(2);
        let mut pg = pseudogroup(sp).unwrap();
        let z = |i: u8, j: u8| pg.alphabet.pos(&Gen::ZMat { i, j });
        // scale the rule rewriting z_1^2 z_1^1 by a stray monomial
        pg.corrupt_rule(z(1, 2), z(1, 1), &Ratio::from_scalar(Scalar::q(sp, 1, 2)));
        assert!(!pg.local_confluence(3).unwrap().is_empty());
    }

    #[test]
    fn pseudogroup_same_row_relation_reduces() {
        let sp = ParamSpace::new(2);
        let pg = pseudogroup(sp).unwrap();
        let z = |i: u8, j: u8| pg.alphabet.pos(&Gen::ZMat { i, j });
        // z_1^1 z_1^2 = q^{12} z_1^2 z_1^1
        let p = NCPoly::term(Word::pair(z(1, 1), z(1, 2)), Ratio::one(sp)).sub(&NCPoly::term(
            Word::pair(z(1, 2), z(1, 1)),
            Ratio::from_scalar(Scalar::q(sp, 1, 2)),
        ));
        assert!(pg.normal_form(&p).unwrap().is_zero());
    }

    #[test]
    fn factored_lattice_rule_matches_the_commutation_table() {
        let sp = ParamSpace::new(2);
        let f = factored(sp).unwrap();
        let rhs = f
            .system
            .rule(f.lat(1, false), f.x_pos(2, 1))
            .expect("z1 X21 rule");
        // z_1 X_2^1 -> (1/a) q^{21} X_2^1 z_1
        let expect = NCPoly::term(
            Word::pair(f.x_pos(2, 1), f.lat(1, false)),
            Ratio::from_scalar(Scalar::q(sp, 2, 1).mul(&Scalar::a_pow(sp, -1))),
        );
        assert_eq!(rhs, &expect);
        // X and Y commute
        let xy = f
            .system
            .rule(f.y_pos(1, 2), f.x_pos(2, 1))
            .expect("Y X rule");
        let expect = NCPoly::term(Word::pair(f.x_pos(2, 1), f.y_pos(1, 2)), Ratio::one(sp));
        assert_eq!(xy, &expect);
    }

    #[test]
    fn factorization_image_of_the_diagonal_entry() {
        let sp = ParamSpace::new(2);
        let f = factored(sp).unwrap();
        // z_2^2 = X_2^1 z_1 Y_1^2 + z_2
        let img = f.z_image(2, 2);
        let mut expect = NCPoly::term(
            Word(vec![f.x_pos(2, 1), f.lat(1, false), f.y_pos(1, 2)]),
            Ratio::one(sp),
        );
        expect.add_term(Word::single(f.lat(2, false)), Ratio::one(sp));
        assert_eq!(img, expect);
    }

    #[test]
    fn factorization_annihilates_all_defining_relations() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let f = factored(sp).unwrap();
            for (family, residual) in substitute_factorization(&f).unwrap() {
                assert!(residual.is_zero(), "family {family} N={n}");
            }
        }
    }

    #[test]
    fn derived_quommutation_constants_match_the_closed_forms() {
        // distant simple generators: [X_i, X_j]_{k_ij} = 0 with
        // k_ij = q^{i+1,j} q^{ji} / (q^{i+1,j+1} q^{j+1,i}); adjacent ones
        // produce the composite with coefficient (1 - 1/a).
        let sp = ParamSpace::new(4);
        let f = factored(sp).unwrap();
        let q = |i: usize, j: usize| Scalar::q(sp, i, j);
        // X_3 = X_4^3, X_1 = X_2^1: rule X_4^3 X_2^1 -> k_13 X_2^1 X_4^3
        let rhs = f.system.rule(f.x_pos(4, 3), f.x_pos(2, 1)).unwrap();
        let k13 = Ratio::from_scalar(
            q(4, 1)
                .mul(&q(1, 3))
                .mul(&q(4, 2).mul(&q(2, 3)).invert_params()),
        );
        let expect = NCPoly::term(Word::pair(f.x_pos(2, 1), f.x_pos(4, 3)), k13);
        assert_eq!(rhs, &expect, "distant quommutation constant");

        // adjacent: X_3^2 X_2^1 -> k X_2^1 X_3^2 + (1 - 1/a) c X_3^1
        let sp3 = ParamSpace::new(3);
        let f3 = factored(sp3).unwrap();
        let rhs = f3.system.rule(f3.x_pos(3, 2), f3.x_pos(2, 1)).unwrap();
        assert_eq!(rhs.num_terms(), 2);
        assert!(rhs.coeff(&Word::single(f3.x_pos(3, 1))).is_some());
        assert!(rhs
            .coeff(&Word::pair(f3.x_pos(2, 1), f3.x_pos(3, 2)))
            .is_some());
    }

    #[test]
    fn matrix_coproduct_is_a_homomorphism() {
        for n in [2usize, 3] {
            let sp = ParamSpace::new(n as u32);
            let pg = pseudogroup(sp).unwrap();
            let z = |i: usize, j: usize| {
                pg.alphabet.pos(&Gen::ZMat {
                    i: i as u8,
                    j: j as u8,
                })
            };
            let doubled = pg.alphabet.doubled();
            let mut table = BTreeMap::new();
            for i in 1..=n {
                for j in 1..=n {
                    let mut d = NCPoly::zero();
                    for k in 1..=n {
                        d.add_term(
                            Word::pair(
                                doubled.pos(&Gen::ZMat {
                                    i: i as u8,
                                    j: k as u8,
                                }),
                                doubled.primed_pos(&Gen::ZMat {
                                    i: k as u8,
                                    j: j as u8,
                                }),
                            ),
                            Ratio::one(sp),
                        );
                    }
                    table.insert(z(i, j), d);
                }
            }
            let cop = Coproduct::new(&pg, table, &Ratio::one(sp));
            if n == 2 {
                // delta(z_1^2) = z_1^1 z'_1^2 + z_1^2 z'_2^2
                let d = cop
                    .delta(&NCPoly::word(Word::single(z(1, 2)), &Ratio::one(sp)))
                    .unwrap();
                assert_eq!(d.num_terms(), 2);
                let da = cop.doubled.alphabet.clone();
                let t1 = Word::pair(
                    da.pos(&Gen::ZMat { i: 1, j: 1 }),
                    da.primed_pos(&Gen::ZMat { i: 1, j: 2 }),
                );
                let t2 = Word::pair(
                    da.pos(&Gen::ZMat { i: 1, j: 2 }),
                    da.primed_pos(&Gen::ZMat { i: 2, j: 2 }),
                );
                assert!(d.coeff(&t1).map(|c| c.is_one()).unwrap_or(false));
                assert!(d.coeff(&t2).map(|c| c.is_one()).unwrap_or(false));
            }
            for rel in relations::pseudogroup_relations(sp) {
                let mut p = NCPoly::zero();
                for (c, g1, g2) in &rel.terms {
                    p.add_term(Word::pair(z(g1.row, g1.col), z(g2.row, g2.col)), c.clone());
                }
                let res = cop.homomorphism_residual(&p).unwrap();
                assert!(res.is_zero(), "family {} N={n}", rel.family);
            }
        }
    }

    #[test]
    fn braid_probe_distinguishes_genuine_from_perturbed() {
        let sp = ParamSpace::new(2);
        let r = build_r(sp);
        let p = permute_rows(&r);
        let (genuine, perturbed) = braid_equivalence_probe(sp, &p).unwrap();
        assert_eq!(genuine, 0);
        assert!(perturbed > 0);
    }

    #[test]
    fn classical_calculus_is_consistent() {
        // a = 1, q = 1: ordinary polynomial/exterior calculus
        let sp = ParamSpace::new(2);
        let mut asg = crate::ring::Assignment::new();
        for p in 0..sp.num_params() {
            asg.insert(p, num_rational::BigRational::from_integer(1.into()));
        }
        let r = build_r(sp);
        let p = permute_rows(&r)
            .map_entries(|e| e.eval_rational(&asg).map(|v| Ratio::from_rational(sp, v)))
            .unwrap();
        let calc = calculus(sp, &p, &Ratio::one(sp)).unwrap();
        assert!(calc.local_confluence(3).unwrap().is_empty());
        let thetas: Vec<u16> = (1..=2)
            .map(|i| calc.alphabet.pos(&Gen::Theta { i: i as u8 }))
            .collect();
        assert_eq!(calc.graded_dim(2, &thetas), 1);
    }
}
