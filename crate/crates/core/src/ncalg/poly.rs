//! Noncommutative polynomials: formal sums of words with field coefficients.

use std::collections::BTreeMap;

use super::alphabet::Word;
use crate::ring::Coeff;
use crate::Result;

/// A finite sum `sum c_w * w` with nonzero coefficients. Words are stored
/// verbatim; being in normal form is a property relative to a rewriting
/// system, not of the data structure.
#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<F: Coeff> {
    terms: BTreeMap<Word, F>,
}

impl<F: Coeff> NCPoly<F> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(unit: &F) -> Self {
        Self::term(Word::empty(), unit.one())
    }

    pub fn term(w: Word, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn word(w: Word, unit: &F) -> Self {
        Self::term(w, unit.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, F> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> Option<&F> {
        self.terms.get(w)
    }

    /// Greatest term in the (length, lex) order.
    pub fn leading(&self) -> Option<(&Word, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32, unit: &F) -> Self {
        let mut out = Self::one(unit);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Map coefficients into another field (e.g. root-of-unity
    /// specialization); fails on poles.
    pub fn map_coeffs<G: Coeff>(&self, f: &dyn Fn(&F) -> Result<G>) -> Result<NCPoly<G>> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Largest word length among the terms.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}
