//! Coproducts with a finite generator table, computed in the doubled
//! alphabet (primed copies commute with unprimed letters).
//!
//! This covers the matrix coproduct of the pseudogroup,
//! `delta(z_i^j) = sum_k z_i^k z'_k^j`. The factored generators have
//! coproducts that are only degree-wise finite; those are handled by the
//! truncated tables in the duality layer.

use std::collections::BTreeMap;

use super::alphabet::Word;
use super::poly::NCPoly;
use super::rewrite::RewriteSystem;
use crate::error::CoreError;
use crate::ring::Coeff;
use crate::Result;

/// A coproduct on a presented algebra, given by its value on each generator.
#[derive(Clone, Debug)]
pub struct Coproduct<F: Coeff> {
    /// rewriting on the doubled alphabet (original rules, their primed
    /// copies, and the cross-commutation)
    pub doubled: RewriteSystem<F>,
    table: BTreeMap<u16, NCPoly<F>>,
}

/// Build the doubled rewriting system of `sys`; `unit` supplies the field
/// context for the cross-commutation coefficients.
pub fn doubled_system<F: Coeff>(sys: &RewriteSystem<F>, unit: &F) -> RewriteSystem<F> {
    let doubled_alpha = sys.alphabet.doubled();
    let shift = sys.alphabet.unprimed_len();
    let mut out = RewriteSystem::new(doubled_alpha);
    for (&(a, b), rhs) in sys.rules() {
        out.add_rule(a, b, rhs.clone());
        let shifted: NCPoly<F> = shift_poly(rhs, shift);
        out.add_rule(a + shift, b + shift, shifted);
    }
    // primed letters migrate past unprimed ones freely
    for p in 0..shift {
        for u in 0..shift {
            out.add_rule(
                p + shift,
                u,
                NCPoly::term(Word::pair(u, p + shift), unit.one()),
            );
        }
    }
    out
}

fn shift_poly<F: Coeff>(p: &NCPoly<F>, shift: u16) -> NCPoly<F> {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        out.add_term(Word(w.0.iter().map(|&x| x + shift).collect()), c.clone());
    }
    out
}

impl<F: Coeff> Coproduct<F> {
    /// `table` maps each unprimed generator position to its coproduct, given
    /// as a polynomial over the doubled alphabet.
    pub fn new(sys: &RewriteSystem<F>, table: BTreeMap<u16, NCPoly<F>>, unit: &F) -> Self {
        Coproduct {
            doubled: doubled_system(sys, unit),
            table,
        }
    }

    /// Apply the coproduct to a polynomial over the base alphabet and
    /// normal-form the result in the doubled system.
    pub fn delta(&self, p: &NCPoly<F>) -> Result<NCPoly<F>> {
        let mut out = NCPoly::zero();
        for (w, c) in p.iter() {
            let mut prod: Option<NCPoly<F>> = None;
            for &letter in &w.0 {
                let d = self
                    .table
                    .get(&letter)
                    .ok_or_else(|| {
                        CoreError::MissingCoproduct(
                            self.doubled
                                .alphabet
                                .display_word(&Word::single(letter)),
                        )
                    })?
                    .clone();
                prod = Some(match prod {
                    None => d,
                    Some(acc) => acc.mul(&d),
                });
            }
            let prod = match prod {
                None => NCPoly::term(Word::empty(), c.clone()),
                Some(acc) => acc.scale(c),
            };
            out = out.add(&prod);
        }
        self.doubled.normal_form(&out)
    }

    /// Residual of the homomorphism property on a defining relation: the
    /// coproduct of a relation must normal-form to zero.
    pub fn homomorphism_residual(&self, relation: &NCPoly<F>) -> Result<NCPoly<F>> {
        self.delta(relation)
    }
}
