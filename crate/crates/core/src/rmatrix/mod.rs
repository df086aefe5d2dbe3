//! The twisted R-matrix for quantum gl(N) and its matrix-level identities.
//!
//! In the distinguished basis the R-matrix is
//!
//! ```text
//! R = sum_i M_i^i (x) M_i^i
//!   + sum_{i<j} ( q^{ji} M_j^j (x) M_i^i
//!               + a q^{ij} M_i^i (x) M_j^j
//!               + (1-a) M_j^i (x) M_i^j )
//! ```
//!
//! with `q^{ij} q^{ji} = 1`. The deformed permutation `P` swaps the row legs
//! of `R`, satisfies the Hecke condition `(P-1)(P+a) = 0` and the braid
//! relation, and `R` satisfies the Yang-Baxter equation. The inverse matrix
//! is the same expression with all parameters inverted.
//!
//! This module also builds the conjugation operator on End(V⊗V) (the cubic
//! minimal polynomial check), the two fundamental representations of the
//! pseudogroup, the sl(N) reduction, and the one-parameter first-order
//! deformation special to gl(3).

mod esoteric;
mod sl;

pub use esoteric::{esoteric_gl3, EpsMat, EsotericOutcome};
pub use sl::{sl_reduce, SlReduction};

use crate::ncalg::relations::{pseudogroup_relations, QuadRelation};
use crate::ring::{ParamSpace, Ratio, Scalar};
use crate::tensor::Mat;
use crate::Result;

/// The R-matrix family for one parameter space: `R`, the deformed
/// permutation `P`, and the exact inverse of `R`.
#[derive(Clone, Debug)]
pub struct RFamily {
    pub space: ParamSpace,
    pub r: Mat,
    pub p: Mat,
    pub r_inv: Mat,
}

impl RFamily {
    pub fn new(space: ParamSpace) -> Self {
        let r = build_r(space);
        let p = permute_rows(&r);
        let r_inv = r
            .map_entries(|e| Ok::<_, std::convert::Infallible>(e.invert_params()))
            .unwrap();
        RFamily { space, r, p, r_inv }
    }
}

/// Build `R` from explicit entry functions; `qf(i, j)` must supply `q^{ij}`
/// for `i != j` (with `qf(i,j) * qf(j,i) = 1`) and `hecke` the deformation
/// parameter.
pub fn build_r_from(
    space: ParamSpace,
    qf: &dyn Fn(usize, usize) -> Scalar,
    hecke: &Scalar,
) -> Mat {
    let n = space.n();
    let one = Scalar::one(space);
    let mut m = Mat::zero(space, 2, n);
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    for i in 1..=n {
        m.set(idx(i, i), idx(i, i), Ratio::from_scalar(one.clone()));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            // q^{ji} M_j^j (x) M_i^i
            m.set(idx(j, i), idx(j, i), Ratio::from_scalar(qf(j, i)));
            // a q^{ij} M_i^i (x) M_j^j
            m.set(
                idx(i, j),
                idx(i, j),
                Ratio::from_scalar(hecke.mul(&qf(i, j))),
            );
            // (1-a) M_j^i (x) M_i^j
            m.set(idx(j, i), idx(i, j), Ratio::from_scalar(one.sub(hecke)));
        }
    }
    m
}

/// The standard twisted R-matrix on the symbolic parameters.
pub fn build_r(space: ParamSpace) -> Mat {
    build_r_from(space, &|i, j| Scalar::q(space, i, j), &Scalar::a(space))
}

/// `P_{ij}^{kl} = R_{ji}^{kl}`: swap the two row legs.
pub fn permute_rows(r: &Mat) -> Mat {
    let n = r.dim_per_leg();
    let mut p = Mat::zero(r.space(), 2, n);
    for i in 0..n {
        for j in 0..n {
            for c in 0..n * n {
                let v = r.get(j * n + i, c);
                if !v.is_zero() {
                    p.set(i * n + j, c, v.clone());
                }
            }
        }
    }
    p
}

/// Hecke residual `(P - 1)(P + a)`.
pub fn check_hecke(p: &Mat) -> Mat {
    let space = p.space();
    let a = Ratio::from_scalar(Scalar::a(space));
    p.mat_poly(&[Ratio::one(space), a.neg()])
}

/// Braid residual `P12 P23 P12 - P23 P12 P23`.
pub fn check_braid(p: &Mat) -> Result<Mat> {
    let p12 = p.embed(1, 2, 3)?;
    let p23 = p.embed(2, 3, 3)?;
    Ok(p12.mul(&p23).mul(&p12).sub(&p23.mul(&p12).mul(&p23)))
}

/// Yang-Baxter residual `R12 R13 R23 - R23 R13 R12`.
pub fn check_ybe(r: &Mat) -> Result<Mat> {
    let r12 = r.embed(1, 2, 3)?;
    let r13 = r.embed(1, 3, 3)?;
    let r23 = r.embed(2, 3, 3)?;
    Ok(r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12)))
}

/// Inverse residual `R * Rinv - 1`.
pub fn check_inverse(r: &Mat, r_inv: &Mat) -> Mat {
    let id = Mat::identity(r.space(), 2, r.dim_per_leg());
    r.mul(r_inv).sub(&id)
}

/// The conjugation operator `M -> P M P^{-1}` on End(V⊗V), realized as the
/// matrix `P (x) (P^{-1})^T` acting on vectorized endomorphisms.
pub fn build_conjugation(p: &Mat) -> Result<Mat> {
    let pinv = p.inverse()?;
    p.kron(&pinv.transpose())
}

/// Cubic residual `(CP - 1)(CP + a)(CP + a^{-1})`.
pub fn check_cubic(conj: &Mat) -> Mat {
    let space = conj.space();
    let a = Ratio::from_scalar(Scalar::a(space));
    let a_inv = Ratio::from_scalar(Scalar::a_pow(space, -1));
    conj.mat_poly(&[Ratio::one(space), a.neg(), a_inv.neg()])
}

/// A bilinear form in the generators: coefficients over ordered products
/// `z_i^r z_j^s`, flattened with 0-based digits.
type BilinearForm = Vec<Ratio>;

fn bilinear_zero(space: ParamSpace) -> BilinearForm {
    let n = space.n();
    vec![Ratio::zero(space); n * n * n * n]
}

fn bilinear_slot(n: usize, i: usize, r: usize, j: usize, s: usize) -> usize {
    // 1-based inputs
    (((i - 1) * n + (r - 1)) * n + (j - 1)) * n + (s - 1)
}

/// Relations read off the commutator `[P, Z (x) Z] = 0`, one bilinear form
/// per matrix entry.
pub fn commutator_relations(space: ParamSpace, p: &Mat) -> Vec<BilinearForm> {
    let n = space.n();
    let mut out = Vec::new();
    for ik in 0..n * n {
        for jl in 0..n * n {
            let (i, k) = (ik / n + 1, ik % n + 1);
            let (j, l) = (jl / n + 1, jl % n + 1);
            let mut form = bilinear_zero(space);
            for mn in 0..n * n {
                let (m, nn) = (mn / n + 1, mn % n + 1);
                let c1 = p.get(ik, mn);
                if !c1.is_zero() {
                    let slot = bilinear_slot(n, m, j, nn, l);
                    form[slot] = form[slot].add(c1);
                }
                let c2 = p.get(mn, jl);
                if !c2.is_zero() {
                    let slot = bilinear_slot(n, i, m, k, nn);
                    form[slot] = form[slot].sub(c2);
                }
            }
            if form.iter().any(|c| !c.is_zero()) {
                out.push(form);
            }
        }
    }
    out
}

/// Relations read off `(CP - 1)` applied to the vectorized `Z (x) Z`
/// (the conjugation reading of the quantum-plane form of the definition).
pub fn conjugation_relations(space: ParamSpace, conj: &Mat) -> Vec<BilinearForm> {
    let n = space.n();
    let size = n * n * n * n;
    let mut out = Vec::new();
    for w in 0..size {
        let mut form = bilinear_zero(space);
        for c in 0..size {
            // c encodes (m, nn, g, d): vec(Z x Z)_c = z_m^g z_nn^d
            let d = c % n + 1;
            let g = (c / n) % n + 1;
            let nn = (c / (n * n)) % n + 1;
            let m = c / (n * n * n) + 1;
            let mut coeff = conj.get(w, c).clone();
            if w == c {
                coeff = coeff.sub(&Ratio::one(space));
            }
            if !coeff.is_zero() {
                let slot = bilinear_slot(n, m, g, nn, d);
                form[slot] = form[slot].add(&coeff);
            }
        }
        if form.iter().any(|c| !c.is_zero()) {
            out.push(form);
        }
    }
    out
}

/// Bilinear forms of an explicit relation list.
pub fn relation_forms(space: ParamSpace, relations: &[QuadRelation]) -> Vec<BilinearForm> {
    let n = space.n();
    relations
        .iter()
        .map(|rel| {
            let mut form = bilinear_zero(space);
            for (c, g1, g2) in &rel.terms {
                let slot = bilinear_slot(n, g1.row, g1.col, g2.row, g2.col);
                form[slot] = form[slot].add(c);
            }
            form
        })
        .collect()
}

/// Rank of a list of vectors over the fraction field, by exact elimination.
pub fn rank(mut rows: Vec<BilinearForm>) -> usize {
    let mut rank = 0;
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(sel) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, sel);
        let inv = rows[pivot_row][col].inv().expect("nonzero pivot");
        for j in col..width {
            rows[pivot_row][j] = rows[pivot_row][j].mul(&inv);
        }
        for r in 0..rows.len() {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for j in col..width {
                let sub = rows[pivot_row][j].mul(&f);
                rows[r][j] = rows[r][j].sub(&sub);
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rank
}

/// True when two relation lists span the same space of bilinear forms.
pub fn same_span(a: &[BilinearForm], b: &[BilinearForm]) -> bool {
    let ra = rank(a.to_vec());
    let rb = rank(b.to_vec());
    if ra != rb {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(both) == ra
}

/// Which of the two fundamental representations to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepKind {
    Pi,
    PiPrime,
}

/// The fundamental (pseudogroup) representation: `pi(z_i^k)_j^l = R_{ij}^{kl}`
/// or the primed variant `pi'(z_i^k)_j^l = (R^{-1})_{ji}^{lk}`. Indexed as
/// `images[i][k]` with 1-based generator indices.
pub fn rep(space: ParamSpace, fam: &RFamily, kind: RepKind) -> Vec<Vec<Mat>> {
    let n = space.n();
    let mut out = vec![vec![Mat::zero(space, 1, n); n + 1]; n + 1];
    for i in 1..=n {
        for k in 1..=n {
            let mut m = Mat::zero(space, 1, n);
            for j in 1..=n {
                for l in 1..=n {
                    let v = match kind {
                        RepKind::Pi => fam.r.get((i - 1) * n + (j - 1), (k - 1) * n + (l - 1)),
                        RepKind::PiPrime => {
                            fam.r_inv.get((j - 1) * n + (i - 1), (l - 1) * n + (k - 1))
                        }
                    };
                    m.set(j - 1, l - 1, v.clone());
                }
            }
            out[i][k] = m;
        }
    }
    out
}

/// The explicit closed form of the representations, used to cross-check the
/// indexing of [`rep`]: for the unprimed one, `pi(z_i^j) = (1-a) M_j^i` when
/// `j < i`, zero when `j > i`, and `pi(z_k^k) = diag_i(q^{ki} a^{(i>k)})`.
pub fn rep_closed_form(space: ParamSpace, kind: RepKind) -> Vec<Vec<Mat>> {
    let n = space.n();
    let one = Scalar::one(space);
    let a = Scalar::a(space);
    let mut out = vec![vec![Mat::zero(space, 1, n); n + 1]; n + 1];
    for row in 1..=n {
        for col in 1..=n {
            let m = if row == col {
                let k = row;
                let mut d = Mat::zero(space, 1, n);
                for i in 1..=n {
                    let v = match kind {
                        RepKind::Pi => {
                            let apow = i64::from(i > k);
                            Scalar::q(space, k, i).mul(&Scalar::a_pow(space, apow))
                        }
                        RepKind::PiPrime => {
                            let apow = -i64::from(i < k);
                            Scalar::q(space, k, i).mul(&Scalar::a_pow(space, apow))
                        }
                    };
                    d.set(i - 1, i - 1, Ratio::from_scalar(v));
                }
                d
            } else {
                match kind {
                    RepKind::Pi if col < row => {
                        let c = Ratio::from_scalar(one.sub(&a));
                        Mat::unit(space, n, col, row).scale(&c)
                    }
                    RepKind::PiPrime if row < col => {
                        let c = Ratio::from_scalar(one.sub(&Scalar::a_pow(space, -1)));
                        Mat::unit(space, n, col, row).scale(&c)
                    }
                    _ => Mat::zero(space, 1, n),
                }
            };
            out[row][col] = m;
        }
    }
    out
}

/// Substitute a representation into every defining relation; returns one
/// residual matrix per relation together with its family tag.
pub fn verify_rep(space: ParamSpace, images: &[Vec<Mat>]) -> Vec<(u8, Mat)> {
    let rels = pseudogroup_relations(space);
    rels.iter()
        .map(|rel| {
            let n = space.n();
            let mut acc = Mat::zero(space, 1, n);
            for (c, g1, g2) in &rel.terms {
                let prod = images[g1.row][g1.col]
                    .mul(&images[g2.row][g2.col])
                    .scale(c);
                acc = acc.add(&prod);
            }
            (rel.family, acc)
        })
        .collect()
}

/// The one-sided ideals annihilated by the representations.
pub fn rep_kills_ideal(space: ParamSpace, images: &[Vec<Mat>], kind: RepKind) -> bool {
    let n = space.n();
    for i in 1..=n {
        for j in 1..=n {
            let dead = match kind {
                RepKind::Pi => i < j,      // I_-
                RepKind::PiPrime => i > j, // I_+
            };
            if dead && !images[i][j].is_zero() {
                return false;
            }
        }
    }
    true
}

/// `P` restricted to span{e_i⊗e_j, e_j⊗e_i} for `i<j`: (trace, det).
pub fn p_block_trace_det(space: ParamSpace, p: &Mat, i: usize, j: usize) -> (Ratio, Ratio) {
    let n = space.n();
    let x = (i - 1) * n + (j - 1);
    let y = (j - 1) * n + (i - 1);
    let tr = p.get(x, x).add(p.get(y, y));
    let det = p
        .get(x, x)
        .mul(p.get(y, y))
        .sub(&p.get(x, y).mul(p.get(y, x)));
    (tr, det)
}

/// Deliberately corrupt the off-diagonal coefficient (1-a) -> (1+a); the
/// negative control for the matrix suite.
pub fn build_r_corrupted(space: ParamSpace) -> Mat {
    let n = space.n();
    let mut m = build_r(space);
    let one = Scalar::one(space);
    let a = Scalar::a(space);
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    for i in 1..=n {
        for j in (i + 1)..=n {
            m.set(idx(j, i), idx(i, j), Ratio::from_scalar(one.add(&a)));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn r_matrix_entries_n2() {
        let sp = ParamSpace::new(2);
        let r = build_r(sp);
        let q12 = Scalar::q(sp, 1, 2);
        let q21 = Scalar::q(sp, 2, 1);
        let a = Scalar::a(sp);
        let one = Scalar::one(sp);
        // nonzero entries: R_{11}^{11}=1, R_{22}^{22}=1, R_{21}^{21}=q^{21},
        // R_{12}^{12}=a q^{12}, R_{21}^{12}=1-a
        assert_eq!(r.num_nonzero(), 5);
        assert!(r.get(0, 0).is_one());
        assert!(r.get(3, 3).is_one());
        assert_eq!(r.get(2, 2), &Ratio::from_scalar(q21));
        assert_eq!(r.get(1, 1), &Ratio::from_scalar(a.mul(&q12)));
        assert_eq!(r.get(2, 1), &Ratio::from_scalar(one.sub(&a)));
    }

    #[test]
    fn r_matrix_term_count_follows_the_family_formula() {
        // one unit term per diagonal index plus three terms per pair i<j
        for n in 2..=4u32 {
            let sp = ParamSpace::new(n);
            let r = build_r(sp);
            let n = n as usize;
            assert_eq!(r.num_nonzero(), n + 3 * n * (n - 1) / 2);
        }
    }

    #[test]
    fn classical_limit_is_identity() {
        let sp = ParamSpace::new(3);
        let r = build_r(sp);
        let mut asg = crate::ring::Assignment::new();
        for p in 0..sp.num_params() {
            asg.insert(p, BigRational::one());
        }
        let vals = crate::tensor::eval_mat(&r, &asg).unwrap();
        for (i, row) in vals.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j {
                    BigRational::one()
                } else {
                    BigRational::from_integer(0.into())
                };
                assert_eq!(*v, expect);
            }
        }
    }

    #[test]
    fn matrix_identities_hold_symbolically() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let fam = RFamily::new(sp);
            assert!(check_hecke(&fam.p).is_zero(), "hecke N={n}");
            assert!(check_braid(&fam.p).unwrap().is_zero(), "braid N={n}");
            assert!(check_ybe(&fam.r).unwrap().is_zero(), "ybe N={n}");
            assert!(check_inverse(&fam.r, &fam.r_inv).is_zero(), "inverse N={n}");
        }
    }

    #[test]
    fn corrupted_r_fails_hecke() {
        let sp = ParamSpace::new(2);
        let bad = build_r_corrupted(sp);
        let p = permute_rows(&bad);
        assert!(!check_hecke(&p).is_zero());
    }

    #[test]
    fn cubic_for_conjugation_operator() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let fam = RFamily::new(sp);
            let conj = build_conjugation(&fam.p).unwrap();
            assert!(check_cubic(&conj).is_zero(), "cubic N={n}");
            // the conjugation operator does not satisfy the quadratic
            assert!(!check_hecke(&conj).is_zero());
        }
    }

    #[test]
    fn classical_conjugation_cubic_degenerates() {
        // a = 1, q = 1: P is the flip, the conjugation operator squares to 1
        let sp = ParamSpace::new(2);
        let fam = RFamily::new(sp);
        let conj = build_conjugation(&fam.p).unwrap();
        let cubic = check_cubic(&conj);
        let mut asg = crate::ring::Assignment::new();
        for p in 0..sp.num_params() {
            asg.insert(p, BigRational::one());
        }
        let vals = crate::tensor::eval_mat(&cubic, &asg).unwrap();
        assert!(vals
            .iter()
            .all(|row| row.iter().all(|v| v == &BigRational::from_integer(0.into()))));
    }

    #[test]
    fn conjugation_reading_matches_commutator_relations() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let fam = RFamily::new(sp);
            let conj = build_conjugation(&fam.p).unwrap();
            let a = conjugation_relations(sp, &conj);
            let b = commutator_relations(sp, &fam.p);
            assert!(same_span(&a, &b), "span mismatch N={n}");
        }
    }

    #[test]
    fn explicit_relation_families_match_the_commutator_definition() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let fam = RFamily::new(sp);
            let listed = relation_forms(sp, &pseudogroup_relations(sp));
            let comm = commutator_relations(sp, &fam.p);
            assert!(same_span(&listed, &comm), "relation span N={n}");
        }
    }

    #[test]
    fn representations_satisfy_all_relations() {
        for n in [2u32, 3] {
            let sp = ParamSpace::new(n);
            let fam = RFamily::new(sp);
            for kind in [RepKind::Pi, RepKind::PiPrime] {
                let images = rep(sp, &fam, kind);
                let closed = rep_closed_form(sp, kind);
                for i in 1..=sp.n() {
                    for j in 1..=sp.n() {
                        assert_eq!(images[i][j], closed[i][j], "closed form {kind:?} z_{i}^{j}");
                    }
                }
                for (fam_id, res) in verify_rep(sp, &images) {
                    assert!(res.is_zero(), "family {fam_id} residual {kind:?} N={n}");
                }
                assert!(rep_kills_ideal(sp, &images, kind));
            }
        }
    }

    #[test]
    fn pi_of_z21_is_the_offdiagonal_unit() {
        let sp = ParamSpace::new(2);
        let fam = RFamily::new(sp);
        let images = rep(sp, &fam, RepKind::Pi);
        let expect = Mat::unit(sp, 2, 1, 2)
            .scale(&Ratio::from_scalar(Scalar::one(sp).sub(&Scalar::a(sp))));
        assert_eq!(images[2][1], expect);
    }

    #[test]
    fn p_two_dim_block_has_hecke_spectrum() {
        let sp = ParamSpace::new(3);
        let fam = RFamily::new(sp);
        let one = Scalar::one(sp);
        let a = Scalar::a(sp);
        for i in 1..=3 {
            for j in (i + 1)..=3 {
                let (tr, det) = p_block_trace_det(sp, &fam.p, i, j);
                assert_eq!(tr, Ratio::from_scalar(one.sub(&a)));
                assert_eq!(det, Ratio::from_scalar(a.neg()));
            }
        }
    }
}
