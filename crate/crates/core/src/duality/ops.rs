//! The dual product and coproduct at truncation.
//!
//! The product of functionals is the transpose of the coproduct of the
//! algebra, `(FG)(L) = (F (x) G)(delta L)`, evaluated through the precomputed
//! rows; the coproduct of a functional is the transpose of the product,
//! `(delta F)(L, L') = F(nf(L L'))`, with both diagonal exponents kept
//! symbolic. Together these make the two structural identities of the dual
//! pairing definitional; the nontrivial content (bialgebra compatibility) is
//! checked in the quantum-group layer.

use std::collections::BTreeMap;

use super::functional::{Functional, SectorIdx};
use super::latticefn::LatticeFn;
use super::table::{DualCtx, MulTerm};
use crate::ncalg::alphabet::Word;
use crate::ncalg::poly::NCPoly;
use crate::ring::Coeff;
use crate::Result;

/// `(F G)(L) = (F (x) G)(delta L)` on every stored basis index.
pub fn dual_mul<F: Coeff>(
    ctx: &DualCtx<F>,
    f: &Functional<F>,
    g: &Functional<F>,
) -> Result<Functional<F>> {
    let n = ctx.n();
    let id: Vec<Vec<i64>> = (0..n)
        .map(|k| (0..n).map(|l| i64::from(k == l)).collect())
        .collect();
    let mut out = Functional::zero(n, ctx.basis_trunc);
    for idx in &ctx.basis {
        let Some(row) = ctx.row(idx) else { continue };
        let mut val = LatticeFn::zero(n);
        for term in row {
            let Some(fv) = f.value(&term.left) else {
                continue;
            };
            let Some(gv) = g.value(&term.right) else {
                continue;
            };
            let fv = fv.affine(n, &id, &term.left_off, &ctx.unit)?;
            let gv = gv.affine(n, &id, &term.right_off, &ctx.unit)?;
            val = val.add(&term.coeff.mul(&fv).mul(&gv));
        }
        if !val.is_zero() {
            out.insert(idx.clone(), val);
        }
    }
    Ok(out)
}

/// Iterated product, left to right.
pub fn dual_product<F: Coeff>(ctx: &DualCtx<F>, fs: &[&Functional<F>]) -> Result<Functional<F>> {
    let mut it = fs.iter();
    let first = (*it.next().expect("nonempty product")).clone();
    it.try_fold(first, |acc, f| dual_mul(ctx, &acc, f))
}

/// `[A, B] = AB - BA`.
pub fn commutator<F: Coeff>(
    ctx: &DualCtx<F>,
    a: &Functional<F>,
    b: &Functional<F>,
) -> Result<Functional<F>> {
    Ok(dual_mul(ctx, a, b)?.sub(&dual_mul(ctx, b, a)?))
}

/// `[A, B]_k = AB - k BA`.
pub fn quommutator<F: Coeff>(
    ctx: &DualCtx<F>,
    a: &Functional<F>,
    b: &Functional<F>,
    k: &F,
) -> Result<Functional<F>> {
    Ok(dual_mul(ctx, a, b)?.sub(&dual_mul(ctx, b, a)?.scale(k)))
}

/// A functional on pairs of basis indexes, with the two diagonal exponent
/// vectors symbolic (2N lattice variables: `m` then `m'`).
#[derive(Clone, Debug)]
pub struct BiFunctional<F: Coeff> {
    pub lattice_rank: usize,
    terms: BTreeMap<(SectorIdx, SectorIdx), LatticeFn<F>>,
}

impl<F: Coeff> BiFunctional<F> {
    pub fn zero(lattice_rank: usize) -> Self {
        BiFunctional {
            lattice_rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, key: (SectorIdx, SectorIdx), v: LatticeFn<F>) {
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn value(&self, key: &(SectorIdx, SectorIdx)) -> Option<&LatticeFn<F>> {
        self.terms.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let cur = out
                .terms
                .remove(k)
                .unwrap_or_else(|| LatticeFn::zero(2 * self.lattice_rank));
            let diff = cur.sub(v);
            if !diff.is_zero() {
                out.terms.insert(k.clone(), diff);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(SectorIdx, SectorIdx), &LatticeFn<F>)> {
        self.terms.iter()
    }
}

/// Normal form of `(X^a z^m Y^b)(X^a' z^m' Y^b')` with both lattice vectors
/// symbolic; coefficients live in 2N variables, the lattice exponent of each
/// output word is exactly `m + m'`.
pub fn comul_row<F: Coeff>(
    ctx: &DualCtx<F>,
    left: &SectorIdx,
    right: &SectorIdx,
) -> Result<Vec<MulTerm<F>>> {
    let n = ctx.n();
    let unit = &ctx.unit;
    // chi_k(alpha') from moving z_k right past the X letters; in slot k-1
    let mut chi_m = vec![unit.one(); 2 * n];
    for k in 1..=n {
        let mut c = unit.one();
        for &x in &right.0 .0 {
            let lat = ctx.fac.lat(k, false);
            let rule = ctx.sys.rule(lat, x).expect("lattice past X rule");
            let (_, rc) = rule.iter().next().expect("monomial rule");
            c = c.mul(rc);
        }
        chi_m[k - 1] = c;
    }
    // chi'_k(beta) from moving z_k left past the Y letters; in slot n+k-1
    let mut chi_mp = vec![unit.one(); 2 * n];
    for k in 1..=n {
        let mut c = unit.one();
        for &y in &left.1 .0 {
            let lat = ctx.fac.lat(k, false);
            let rule = ctx.sys.rule(y, lat).expect("Y past lattice rule");
            let (_, rc) = rule.iter().next().expect("monomial rule");
            c = c.mul(rc);
        }
        chi_mp[n + k - 1] = c;
    }
    let twist = LatticeFn::character(chi_m, unit).mul(&LatticeFn::character(chi_mp, unit));

    let xprod = ctx
        .sys
        .normal_form(&NCPoly::word(left.0.concat(&right.0), unit))?;
    let yprod = ctx
        .sys
        .normal_form(&NCPoly::word(left.1.concat(&right.1), unit))?;
    let mut out = Vec::new();
    for (u, cu) in xprod.iter() {
        for (v, cv) in yprod.iter() {
            let coeff = twist.scale(&cu.mul(cv));
            if coeff.is_zero() {
                continue;
            }
            out.push(MulTerm {
                coeff,
                idx: (u.clone(), v.clone()),
            });
        }
    }
    Ok(out)
}

/// `(delta F)(L, L') = F(nf(L L'))` over all index pairs with total root
/// degree within the basis bound.
pub fn dual_comul<F: Coeff>(ctx: &DualCtx<F>, f: &Functional<F>) -> Result<BiFunctional<F>> {
    let n = ctx.n();
    // m_k = m_k + m'_k: N x 2N matrix
    let sum_mat: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            (0..2 * n)
                .map(|l| i64::from(l == k || l == n + k))
                .collect()
        })
        .collect();
    let zero_shift = vec![0i64; n];
    let mut out = BiFunctional::zero(n);
    for l in &ctx.basis {
        let rl = ctx.idx_root(l);
        for r in &ctx.basis {
            if rl + ctx.idx_root(r) > ctx.basis_trunc {
                continue;
            }
            let mut val = LatticeFn::zero(2 * n);
            for term in comul_row(ctx, l, r)? {
                let Some(fv) = f.value(&term.idx) else {
                    continue;
                };
                let fv2 = fv.affine(2 * n, &sum_mat, &zero_shift, &ctx.unit)?;
                val = val.add(&term.coeff.mul(&fv2));
            }
            if !val.is_zero() {
                out.insert((l.clone(), r.clone()), val);
            }
        }
    }
    Ok(out)
}

/// Find the scalar `r` with `A = r * B` as functionals (unique when `B` is
/// nonzero); returns `(r, residual_is_zero)` or `None` when `B` vanishes.
pub fn solve_proportionality<F: Coeff>(
    a: &Functional<F>,
    b: &Functional<F>,
) -> Result<Option<(F, bool)>> {
    // candidate from the first nonzero value of B
    let mut candidate: Option<F> = None;
    'outer: for (idx, bv) in b.iter() {
        for (bc, bp) in bv.terms() {
            if let Some((e, coeff)) = bp.iter().next() {
                // matching coefficient in A at the same index/character/exponent
                let r = match a.value(idx) {
                    None => coeff.zero(),
                    Some(av) => {
                        let mut found = coeff.zero();
                        for (ac, ap) in av.terms() {
                            if ac == bc {
                                if let Some(c2) = ap.iter().find(|(e2, _)| *e2 == e) {
                                    found = c2.1.clone();
                                }
                            }
                        }
                        found
                    }
                };
                candidate = Some(r.mul(&coeff.inv()?));
                break 'outer;
            }
        }
    }
    let Some(r) = candidate else {
        return Ok(None);
    };
    let residual = a.sub(&b.scale(&r));
    Ok(Some((r, residual.is_zero())))
}

/// Build an empty-index functional carrying a pure character.
pub fn character_functional<F: Coeff>(ctx: &DualCtx<F>, components: Vec<F>) -> Functional<F> {
    let mut f = Functional::zero(ctx.n(), ctx.basis_trunc);
    f.insert(
        (Word::empty(), Word::empty()),
        LatticeFn::character(components, &ctx.unit),
    );
    f
}
