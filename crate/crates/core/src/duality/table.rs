//! Truncated coproduct tables for the factored algebra.
//!
//! The diagonal generators of the factored presentation are not group-like
//! for the matrix coproduct: `delta(z_k)` is a group-like leading term times
//! an infinite series of corrections of strictly positive X/Y weight on both
//! legs. Working at a fixed truncation makes everything finite:
//!
//! * the generator coproducts are solved from the matrix coproduct of the
//!   `z_i^j` through the triangular factorization, degreewise exactly;
//! * symbolic powers `delta(z^m)` for an indeterminate exponent vector `m`
//!   are assembled from iterated geometric sums, so row coefficients are
//!   exponential polynomials in `m`;
//! * the row of a basis index pair `(a, b)` lists the coproduct of
//!   `X^a z^m Y^b` as lattice-function coefficients times tensor words.
//!
//! Rows are built once per context and then read only.

use std::collections::BTreeMap;

use super::functional::{letter_root, split_sector, word_root, SectorIdx};
use super::latticefn::LatticeFn;
use crate::error::CoreError;
use crate::ncalg::alphabet::{Gen, Word};
use crate::ncalg::coproduct::doubled_system;
use crate::ncalg::poly::NCPoly;
use crate::ncalg::presets::{factored, Factored};
use crate::ncalg::rewrite::RewriteSystem;
use crate::ring::{Coeff, ParamSpace};
use crate::Result;

/// One term of a coproduct row: coefficient times
/// `(X^{a_L} z^{m + off_L} Y^{b_L}) (x) (X^{a_R} z^{m + off_R} Y^{b_R})`.
#[derive(Clone, Debug)]
pub struct RowTerm<F: Coeff> {
    pub coeff: LatticeFn<F>,
    pub left: SectorIdx,
    pub left_off: Vec<i64>,
    pub right: SectorIdx,
    pub right_off: Vec<i64>,
}

/// One term of a product row: coefficient (in the doubled variable set
/// `(m, m')`) times the basis index with lattice exponent `m + m' + 0`.
#[derive(Clone, Debug)]
pub struct MulTerm<F: Coeff> {
    pub coeff: LatticeFn<F>,
    pub idx: SectorIdx,
}

/// The read-only pairing context for one parameter field.
pub struct DualCtx<F: Coeff> {
    pub space: ParamSpace,
    pub unit: F,
    pub fac: Factored,
    pub sys: RewriteSystem<F>,
    pub dsys: RewriteSystem<F>,
    /// basis enumeration bound (X+Y root degree of index pairs)
    pub basis_trunc: usize,
    /// per-leg truncation of coproduct rows
    pub leg_trunc: usize,
    gen_cop: BTreeMap<u16, NCPoly<F>>,
    middle: Vec<(LatticeFn<F>, Word)>,
    rows: BTreeMap<SectorIdx, Vec<RowTerm<F>>>,
    pub x_monos: Vec<Word>,
    pub y_monos: Vec<Word>,
    pub basis: Vec<SectorIdx>,
}

impl<F: Coeff> DualCtx<F> {
    pub fn new(space: ParamSpace, unit: F, basis_trunc: usize, leg_trunc: usize) -> Result<Self> {
        let fac = factored(space)?;
        let sys = fac.system.map_coeffs(&|r| unit.from_ratio(r))?;
        let dsys = doubled_system(&sys, &unit);
        let mut ctx = DualCtx {
            space,
            unit,
            fac,
            sys,
            dsys,
            basis_trunc,
            leg_trunc,
            gen_cop: BTreeMap::new(),
            middle: Vec::new(),
            rows: BTreeMap::new(),
            x_monos: Vec::new(),
            y_monos: Vec::new(),
            basis: Vec::new(),
        };
        ctx.solve_generator_coproducts()?;
        ctx.build_middle()?;
        ctx.enumerate_basis();
        ctx.build_rows()?;
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    fn shift(&self) -> u16 {
        self.sys.alphabet.unprimed_len()
    }

    /// Truncated product in the doubled system: normal form, then drop terms
    /// whose left or right leg exceeds the leg truncation.
    fn tmul(&self, a: &NCPoly<F>, b: &NCPoly<F>) -> Result<NCPoly<F>> {
        let nf = self.dsys.normal_form(&a.mul(b))?;
        Ok(self.truncate(&nf))
    }

    fn truncate(&self, p: &NCPoly<F>) -> NCPoly<F> {
        let alpha = &self.dsys.alphabet;
        let shift = self.shift();
        let mut out = NCPoly::zero();
        for (w, c) in p.iter() {
            let mut left = 0usize;
            let mut right = 0usize;
            for &pos in &w.0 {
                let r = letter_root(alpha, pos);
                if pos < shift {
                    left += r;
                } else {
                    right += r;
                }
            }
            if left <= self.leg_trunc && right <= self.leg_trunc {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Embed a base-alphabet polynomial into the left or right tensor leg.
    fn embed_leg(&self, p: &NCPoly<F>, right: bool) -> NCPoly<F> {
        let shift = self.shift();
        let mut out = NCPoly::zero();
        for (w, c) in p.iter() {
            let w2 = if right {
                Word(w.0.iter().map(|&x| x + shift).collect())
            } else {
                w.clone()
            };
            out.add_term(w2, c.clone());
        }
        out
    }

    fn z_image_f(&self, i: usize, j: usize) -> Result<NCPoly<F>> {
        self.fac
            .z_image(i, j)
            .map_coeffs(&|r| self.unit.from_ratio(r))
    }

    /// The matrix coproduct of `z_i^j`, expanded through the factorization.
    fn zmat_coproduct(&self, i: usize, j: usize) -> Result<NCPoly<F>> {
        let n = self.n();
        let mut out = NCPoly::zero();
        for k in 1..=n {
            let l = self.embed_leg(&self.z_image_f(i, k)?, false);
            let r = self.embed_leg(&self.z_image_f(k, j)?, true);
            out = out.add(&self.tmul(&l, &r)?);
        }
        Ok(out)
    }

    /// Invert `E = c0 * g * (1 + W)` with `g` a pure lattice word and `W` of
    /// strictly positive weight on both legs.
    fn series_inverse(&self, e: &NCPoly<F>) -> Result<NCPoly<F>> {
        let (c0, g) = self.grouplike_part(e)?;
        let ginv = Word(
            g.0.iter()
                .rev()
                .map(|&p| self.flip_lat(p))
                .collect::<Result<Vec<u16>>>()?,
        );
        let c0_inv = c0.inv()?;
        let ginv_poly = NCPoly::term(ginv, c0_inv);
        // W = (c0 g)^{-1} (E - c0 g)
        let head = NCPoly::term(g.clone(), c0.clone());
        let tail = e.sub(&head);
        let w = self.tmul(&ginv_poly, &tail)?;
        for (word, _) in w.iter() {
            let (l, r) = self.leg_roots(word);
            if l == 0 || r == 0 {
                return Err(CoreError::Unsupported(
                    "coproduct correction of weight zero on one leg".into(),
                ));
            }
        }
        // (1 + W)^{-1} = sum (-W)^r, truncated
        let mut inv = NCPoly::one(&self.unit);
        let mut power = NCPoly::one(&self.unit);
        loop {
            power = self.tmul(&power, &w.neg())?;
            if power.is_zero() {
                break;
            }
            inv = inv.add(&power);
        }
        self.tmul(&inv, &ginv_poly)
    }

    fn leg_roots(&self, w: &Word) -> (usize, usize) {
        let alpha = &self.dsys.alphabet;
        let shift = self.shift();
        let mut l = 0;
        let mut r = 0;
        for &p in &w.0 {
            let root = letter_root(alpha, p);
            if p < shift {
                l += root;
            } else {
                r += root;
            }
        }
        (l, r)
    }

    /// The unique weight-(0,0) term of a coproduct (its group-like head).
    fn grouplike_part(&self, e: &NCPoly<F>) -> Result<(F, Word)> {
        let mut found = None;
        for (w, c) in e.iter() {
            if self.leg_roots(w) == (0, 0) {
                if found.is_some() {
                    return Err(CoreError::Unsupported(
                        "two weight-zero terms in a diagonal coproduct".into(),
                    ));
                }
                found = Some((c.clone(), w.clone()));
            }
        }
        found.ok_or_else(|| CoreError::Unsupported("missing group-like head".into()))
    }

    fn flip_lat(&self, p: u16) -> Result<u16> {
        let alpha = &self.dsys.alphabet;
        let shift = self.shift();
        let primed = p >= shift;
        let base = if primed { p - shift } else { p };
        match alpha.gen_at(base) {
            Gen::Lat { k, inv } => {
                let flipped = alpha.pos(&Gen::Lat { k: *k, inv: !inv });
                Ok(if primed { flipped + shift } else { flipped })
            }
            _ => Err(CoreError::Unsupported(
                "group-like head contains a non-lattice letter".into(),
            )),
        }
    }

    /// Solve the generator coproducts degreewise from the matrix coproduct.
    fn solve_generator_coproducts(&mut self) -> Result<()> {
        let n = self.n();
        let alpha = self.sys.alphabet.clone();
        for s in 1..=n {
            // diagonal: delta(z_s) = delta(z_s^s) - sum_{l<s} dX dz dY
            let mut dz = self.zmat_coproduct(s, s)?;
            for l in 1..s {
                let dx = self.gen_cop[&alpha.pos(&Gen::XTri {
                    i: s as u8,
                    j: l as u8,
                })]
                    .clone();
                let dzl = self.gen_cop[&alpha.pos(&Gen::Lat {
                    k: l as u8,
                    inv: false,
                })]
                    .clone();
                let dy = self.gen_cop[&alpha.pos(&Gen::YTri {
                    i: l as u8,
                    j: s as u8,
                })]
                    .clone();
                let prod = self.tmul(&self.tmul(&dx, &dzl)?, &dy)?;
                dz = dz.sub(&prod);
            }
            let dz_inv = self.series_inverse(&dz)?;
            self.gen_cop.insert(
                alpha.pos(&Gen::Lat {
                    k: s as u8,
                    inv: false,
                }),
                dz.clone(),
            );
            self.gen_cop.insert(
                alpha.pos(&Gen::Lat {
                    k: s as u8,
                    inv: true,
                }),
                dz_inv.clone(),
            );
            // X_i^s for i > s
            for i in (s + 1)..=n {
                let mut rhs = self.zmat_coproduct(i, s)?;
                for k in 1..s {
                    let dx = self.gen_cop[&alpha.pos(&Gen::XTri {
                        i: i as u8,
                        j: k as u8,
                    })]
                        .clone();
                    let dzk = self.gen_cop[&alpha.pos(&Gen::Lat {
                        k: k as u8,
                        inv: false,
                    })]
                        .clone();
                    let dy = self.gen_cop[&alpha.pos(&Gen::YTri {
                        i: k as u8,
                        j: s as u8,
                    })]
                        .clone();
                    let prod = self.tmul(&self.tmul(&dx, &dzk)?, &dy)?;
                    rhs = rhs.sub(&prod);
                }
                let dxis = self.tmul(&rhs, &dz_inv)?;
                self.gen_cop.insert(
                    alpha.pos(&Gen::XTri {
                        i: i as u8,
                        j: s as u8,
                    }),
                    dxis,
                );
            }
            // Y_s^j for j > s
            for j in (s + 1)..=n {
                let mut rhs = self.zmat_coproduct(s, j)?;
                for k in 1..s {
                    let dx = self.gen_cop[&alpha.pos(&Gen::XTri {
                        i: s as u8,
                        j: k as u8,
                    })]
                        .clone();
                    let dzk = self.gen_cop[&alpha.pos(&Gen::Lat {
                        k: k as u8,
                        inv: false,
                    })]
                        .clone();
                    let dy = self.gen_cop[&alpha.pos(&Gen::YTri {
                        i: k as u8,
                        j: j as u8,
                    })]
                        .clone();
                    let prod = self.tmul(&self.tmul(&dx, &dzk)?, &dy)?;
                    rhs = rhs.sub(&prod);
                }
                let dysj = self.tmul(&dz_inv, &rhs)?;
                self.gen_cop.insert(
                    alpha.pos(&Gen::YTri {
                        i: s as u8,
                        j: j as u8,
                    }),
                    dysj,
                );
            }
        }
        Ok(())
    }

    pub fn generator_coproduct(&self, pos: u16) -> Option<&NCPoly<F>> {
        self.gen_cop.get(&pos)
    }

    /// Conjugation character of a doubled word by the group-like
    /// `z_k (x) z'_k`: `g^{-1} w g = chi * w`.
    fn conj_char(&self, w: &Word, k: usize) -> Result<F> {
        let alpha = &self.dsys.alphabet;
        let g = Word(vec![
            alpha.pos(&Gen::Lat {
                k: k as u8,
                inv: false,
            }),
            alpha.primed_pos(&Gen::Lat {
                k: k as u8,
                inv: false,
            }),
        ]);
        let wg = self.dsys.normal_form(&NCPoly::word(w.concat(&g), &self.unit))?;
        let gw = self.dsys.normal_form(&NCPoly::word(g.concat(w), &self.unit))?;
        let (w1, beta) = single_term(&wg)?;
        let (w2, gamma) = single_term(&gw)?;
        if w1 != w2 {
            return Err(CoreError::Unsupported(
                "lattice conjugation did not preserve the word".into(),
            ));
        }
        beta.mul(&gamma.inv()?)
    }

    /// Symbolic middle `delta(z^m) = (z^m (x) z^m) * sum_t coeff_t(m) w_t`.
    fn build_middle(&mut self) -> Result<()> {
        let n = self.n();
        let alpha = self.sys.alphabet.clone();
        // accumulator over N-variable coefficients
        let mut acc: Vec<(LatticeFn<F>, Word)> = vec![(
            LatticeFn::constant(n, self.unit.one()),
            Word::empty(),
        )];
        for k in 1..=n {
            let dz = self.gen_cop[&alpha.pos(&Gen::Lat {
                k: k as u8,
                inv: false,
            })]
                .clone();
            let (c0, _g) = self.grouplike_part(&dz)?;
            // W terms relative to the head
            let head_inv = {
                let (c0b, gb) = self.grouplike_part(&dz)?;
                let ginv = Word(
                    gb.0.iter()
                        .rev()
                        .map(|&p| self.flip_lat(p))
                        .collect::<Result<Vec<u16>>>()?,
                );
                NCPoly::term(ginv, c0b.inv()?)
            };
            let (_, gb) = self.grouplike_part(&dz)?;
            let tail = dz.sub(&NCPoly::term(gb, c0.clone()));
            let w_poly = self.tmul(&head_inv, &tail)?;
            // symbolic factor E_k(s): sum over chains via prefix sums, in one
            // variable
            let mut layers: Vec<Vec<(LatticeFn<F>, Word)>> = Vec::new();
            let mut current: Vec<(LatticeFn<F>, Word)> = vec![(
                LatticeFn::constant(1, self.unit.one()),
                Word::empty(),
            )];
            loop {
                // next layer: T_{r}(m) = sum_{s<m} u_s T_{r-1}(s)
                let mut next: BTreeMap<Word, LatticeFn<F>> = BTreeMap::new();
                for (f, w_tail) in &current {
                    for (w_head, c) in w_poly.iter() {
                        let chi = self.conj_char(w_head, k)?;
                        // chi^s * c * f(s), summed over s < m
                        let summand = LatticeFn::character(vec![chi], &self.unit)
                            .mul(f)
                            .scale(c);
                        let summed = summand.prefix_sum(&self.unit)?;
                        if summed.is_zero() {
                            continue;
                        }
                        let prod = self.tmul(
                            &NCPoly::word(w_head.clone(), &self.unit),
                            &NCPoly::word(w_tail.clone(), &self.unit),
                        )?;
                        for (w_new, c_new) in prod.iter() {
                            let add = summed.scale(c_new);
                            match next.entry(w_new.clone()) {
                                std::collections::btree_map::Entry::Vacant(e) => {
                                    if !add.is_zero() {
                                        e.insert(add);
                                    }
                                }
                                std::collections::btree_map::Entry::Occupied(mut e) => {
                                    let s = e.get().add(&add);
                                    if s.is_zero() {
                                        e.remove();
                                    } else {
                                        *e.get_mut() = s;
                                    }
                                }
                            }
                        }
                    }
                }
                let next: Vec<(LatticeFn<F>, Word)> =
                    next.into_iter().map(|(w, f)| (f, w)).collect();
                if next.is_empty() {
                    break;
                }
                layers.push(next.clone());
                current = next;
            }
            // E_k = 1 + sum layers, embedded into slot k-1 of N variables,
            // with the head coefficient c0^{m_k} as an extra character
            let mut ek: Vec<(LatticeFn<F>, Word)> = vec![(
                LatticeFn::constant(1, self.unit.one()),
                Word::empty(),
            )];
            for layer in layers {
                for (f, w) in layer {
                    ek.push((f, w));
                }
            }
            let mut c0_char = vec![self.unit.one(); n];
            c0_char[k - 1] = c0.clone();
            let c0_char = LatticeFn::character(c0_char, &self.unit);
            let embedded: Vec<(LatticeFn<F>, Word)> = ek
                .into_iter()
                .map(|(f, w)| {
                    let fe = f.embed_single(n, k - 1, &self.unit)?;
                    Ok((fe.mul(&c0_char), w))
                })
                .collect::<Result<Vec<_>>>()?;
            // multiply into the accumulator: acc * (g_k^{m_k} E_k) with the
            // prefactor pulled left through the accumulated words
            let mut new_acc: BTreeMap<Word, LatticeFn<F>> = BTreeMap::new();
            for (fa, wa) in &acc {
                let chi = self.conj_char(wa, k)?;
                let mut twist_char = vec![self.unit.one(); n];
                twist_char[k - 1] = chi;
                let twist = LatticeFn::character(twist_char, &self.unit);
                for (fb, wb) in &embedded {
                    let coeff = fa.mul(&twist).mul(fb);
                    if coeff.is_zero() {
                        continue;
                    }
                    let prod = self.tmul(
                        &NCPoly::word(wa.clone(), &self.unit),
                        &NCPoly::word(wb.clone(), &self.unit),
                    )?;
                    for (w_new, c_new) in prod.iter() {
                        let add = coeff.scale(c_new);
                        match new_acc.entry(w_new.clone()) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                if !add.is_zero() {
                                    e.insert(add);
                                }
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let s = e.get().add(&add);
                                if s.is_zero() {
                                    e.remove();
                                } else {
                                    *e.get_mut() = s;
                                }
                            }
                        }
                    }
                }
            }
            acc = new_acc.into_iter().map(|(w, f)| (f, w)).collect();
        }
        self.middle = acc;
        Ok(())
    }

    /// All normal sector monomials with root degree at most the basis bound.
    fn enumerate_basis(&mut self) {
        let alpha = self.sys.alphabet.clone();
        let n = self.n();
        let mut x_letters = Vec::new();
        let mut y_letters = Vec::new();
        for j in 1..=n {
            for i in (j + 1)..=n {
                x_letters.push(alpha.pos(&Gen::XTri {
                    i: i as u8,
                    j: j as u8,
                }));
            }
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                y_letters.push(alpha.pos(&Gen::YTri {
                    i: i as u8,
                    j: j as u8,
                }));
            }
        }
        x_letters.sort_unstable();
        y_letters.sort_unstable();
        self.x_monos = sorted_words(&alpha, &x_letters, self.basis_trunc);
        self.y_monos = sorted_words(&alpha, &y_letters, self.basis_trunc);
        let mut basis = Vec::new();
        for x in &self.x_monos {
            let rx = word_root(&alpha, x);
            for y in &self.y_monos {
                if rx + word_root(&alpha, y) <= self.basis_trunc {
                    basis.push((x.clone(), y.clone()));
                }
            }
        }
        self.basis = basis;
    }

    /// Assemble the coproduct row of every basis index pair.
    fn build_rows(&mut self) -> Result<()> {
        let n = self.n();
        // leg products Delta(X^a) and Delta(Y^b), memoized by prefix
        let mut t1: BTreeMap<Word, NCPoly<F>> = BTreeMap::new();
        t1.insert(Word::empty(), NCPoly::one(&self.unit));
        let x_monos = self.x_monos.clone();
        for w in &x_monos {
            if w.is_empty() {
                continue;
            }
            let prefix = Word(w.0[..w.len() - 1].to_vec());
            let last = w.0[w.len() - 1];
            let base = t1[&prefix].clone();
            let d = self.gen_cop[&last].clone();
            t1.insert(w.clone(), self.tmul(&base, &d)?);
        }
        let mut t2: BTreeMap<Word, NCPoly<F>> = BTreeMap::new();
        t2.insert(Word::empty(), NCPoly::one(&self.unit));
        let y_monos = self.y_monos.clone();
        for w in &y_monos {
            if w.is_empty() {
                continue;
            }
            let prefix = Word(w.0[..w.len() - 1].to_vec());
            let last = w.0[w.len() - 1];
            let base = t2[&prefix].clone();
            let d = self.gen_cop[&last].clone();
            t2.insert(w.clone(), self.tmul(&base, &d)?);
        }
        let basis = self.basis.clone();
        let middle = self.middle.clone();
        for (xw, yw) in basis {
            let mut row: BTreeMap<(SectorIdx, Vec<i64>, SectorIdx, Vec<i64>), LatticeFn<F>> =
                BTreeMap::new();
            for (w1, c1) in t1[&xw].iter() {
                // pull the symbolic prefactor z^m (x) z^m left past w1
                let mut chis = Vec::with_capacity(n);
                for k in 1..=n {
                    chis.push(self.conj_char(w1, k)?);
                }
                let twist = LatticeFn::character(chis, &self.unit);
                for (cm, wm) in &middle {
                    let head = self.tmul(
                        &NCPoly::word(w1.clone(), &self.unit),
                        &NCPoly::word(wm.clone(), &self.unit),
                    )?;
                    if head.is_zero() {
                        continue;
                    }
                    for (w2, c2) in t2[&yw].iter() {
                        let full = self.tmul(&head, &NCPoly::word(w2.clone(), &self.unit))?;
                        for (u, cu) in full.iter() {
                            let coeff = twist
                                .mul(cm)
                                .scale(&c1.mul(c2).mul(cu));
                            if coeff.is_zero() {
                                continue;
                            }
                            let (lx, loff, ly) =
                                split_sector(&self.dsys.alphabet, n, u, false);
                            let (rx, roff, ry) =
                                split_sector(&self.dsys.alphabet, n, u, true);
                            let key = ((lx, ly), loff, (rx, ry), roff);
                            match row.entry(key) {
                                std::collections::btree_map::Entry::Vacant(e) => {
                                    e.insert(coeff);
                                }
                                std::collections::btree_map::Entry::Occupied(mut e) => {
                                    let s = e.get().add(&coeff);
                                    if s.is_zero() {
                                        e.remove();
                                    } else {
                                        *e.get_mut() = s;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let terms = row
                .into_iter()
                .map(|((left, left_off, right, right_off), coeff)| RowTerm {
                    coeff,
                    left,
                    left_off,
                    right,
                    right_off,
                })
                .collect();
            self.rows.insert((xw.clone(), yw.clone()), terms);
        }
        Ok(())
    }

    pub fn row(&self, idx: &SectorIdx) -> Option<&[RowTerm<F>]> {
        self.rows.get(idx).map(|v| v.as_slice())
    }

    /// Root degree of an index pair.
    pub fn idx_root(&self, idx: &SectorIdx) -> usize {
        word_root(&self.sys.alphabet, &idx.0) + word_root(&self.sys.alphabet, &idx.1)
    }
}

fn single_term<F: Coeff>(p: &NCPoly<F>) -> Result<(Word, F)> {
    if p.num_terms() != 1 {
        return Err(CoreError::Unsupported(format!(
            "expected a single term, found {}",
            p.num_terms()
        )));
    }
    let (w, c) = p.iter().next().unwrap();
    Ok((w.clone(), c.clone()))
}

/// All nondecreasing words over `letters` with root degree at most `bound`
/// (includes the empty word), in increasing word order.
fn sorted_words(alpha: &crate::ncalg::alphabet::Alphabet, letters: &[u16], bound: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            let min_letter = w.0.last().copied().unwrap_or(0);
            for &l in letters {
                if l < min_letter {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(l);
                let cand = Word(v);
                if word_root(alpha, &cand) <= bound {
                    next.push(cand);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}
