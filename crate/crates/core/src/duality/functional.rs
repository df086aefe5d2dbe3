//! Dual functionals on the factored algebra.
//!
//! A functional is supported on finitely many (X-monomial, Y-monomial) index
//! pairs; its value there is a lattice function of the diagonal exponents.
//! Pairing against a basis element `X^a z^m Y^b` evaluates the lattice
//! function at `m`. The diagonal sector is a group algebra with an exactly
//! dualizable structure, so truncation counts only the X/Y weight (the sum
//! of root degrees `i - j` over the letters), never the lattice part.

use std::collections::BTreeMap;

use super::latticefn::LatticeFn;
use crate::ncalg::alphabet::{Alphabet, Gen, Word};
use crate::ring::Coeff;
use crate::Result;

/// Support index: the X-sector word and the Y-sector word (both normal).
pub type SectorIdx = (Word, Word);

/// Root degree of one letter: the height `|i - j|` for triangular
/// generators, zero for lattice letters.
pub fn letter_root(alpha: &Alphabet, pos: u16) -> usize {
    let base = if alpha.is_primed(pos) {
        pos - alpha.unprimed_len()
    } else {
        pos
    };
    match alpha.gen_at(base) {
        Gen::XTri { i, j } => (*i - *j) as usize,
        Gen::YTri { i, j } => (*j - *i) as usize,
        _ => 0,
    }
}

pub fn word_root(alpha: &Alphabet, w: &Word) -> usize {
    w.0.iter().map(|&p| letter_root(alpha, p)).sum()
}

/// A truncated dual functional.
#[derive(Clone, Debug)]
pub struct Functional<F: Coeff> {
    /// lattice rank (number of diagonal generators)
    pub lattice_rank: usize,
    /// maximum supported X+Y root degree
    pub trunc: usize,
    terms: BTreeMap<SectorIdx, LatticeFn<F>>,
}

impl<F: Coeff> Functional<F> {
    pub fn zero(lattice_rank: usize, trunc: usize) -> Self {
        Functional {
            lattice_rank,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, idx: SectorIdx, value: LatticeFn<F>) {
        if value.is_zero() {
            self.terms.remove(&idx);
        } else {
            assert_eq!(value.vars, self.lattice_rank);
            self.terms.insert(idx, value);
        }
    }

    pub fn add_to(&mut self, idx: SectorIdx, value: &LatticeFn<F>) {
        let cur = self
            .terms
            .remove(&idx)
            .unwrap_or_else(|| LatticeFn::zero(self.lattice_rank));
        let sum = cur.add(value);
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    pub fn value(&self, idx: &SectorIdx) -> Option<&LatticeFn<F>> {
        self.terms.get(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SectorIdx, &LatticeFn<F>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (idx, v) in &other.terms {
            out.add_to(idx.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Functional {
            lattice_rank: self.lattice_rank,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(i, v)| (i.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.lattice_rank, self.trunc);
        }
        Functional {
            lattice_rank: self.lattice_rank,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(i, v)| (i.clone(), v.scale(c)))
                .collect(),
        }
    }

    /// Multiply every value by a fixed lattice function (e.g. a character).
    pub fn scale_lattice(&self, f: &LatticeFn<F>) -> Self {
        let mut out = Self::zero(self.lattice_rank, self.trunc);
        for (idx, v) in &self.terms {
            out.insert(idx.clone(), v.mul(f));
        }
        out
    }

    /// Largest supported root degree.
    pub fn max_root(&self, alpha: &Alphabet) -> usize {
        self.terms
            .keys()
            .map(|(x, y)| word_root(alpha, x) + word_root(alpha, y))
            .max()
            .unwrap_or(0)
    }

    /// Map values into another coefficient field (pole-checked).
    pub fn map_coeffs<G: Coeff>(
        &self,
        trunc: usize,
        f: &dyn Fn(&LatticeFn<F>) -> Result<LatticeFn<G>>,
    ) -> Result<Functional<G>> {
        let mut out = Functional::zero(self.lattice_rank, trunc);
        for (idx, v) in &self.terms {
            let mapped = f(v)?;
            if !mapped.is_zero() {
                out.insert(idx.clone(), mapped);
            }
        }
        Ok(out)
    }

    /// Pair with a concrete basis element given as index plus lattice point.
    pub fn pair_at(&self, idx: &SectorIdx, m: &[i64], unit: &F) -> Result<F> {
        match self.terms.get(idx) {
            None => Ok(unit.zero()),
            Some(v) => v.eval(m, unit),
        }
    }
}

/// Split a normal word of the (possibly doubled) factored alphabet into its
/// X-part, lattice offset, and Y-part; `primed` selects which copy.
pub fn split_sector(
    alpha: &Alphabet,
    lattice_rank: usize,
    w: &Word,
    primed: bool,
) -> (Word, Vec<i64>, Word) {
    let shift = alpha.unprimed_len();
    let mut x = Vec::new();
    let mut off = vec![0i64; lattice_rank];
    let mut y = Vec::new();
    for &p in &w.0 {
        if alpha.is_primed(p) != primed {
            continue;
        }
        let base = if primed { p - shift } else { p };
        match alpha.gen_at(base) {
            Gen::XTri { .. } => {
                assert!(off.iter().all(|&o| o == 0) && y.is_empty(), "word not normal");
                x.push(base);
            }
            Gen::Lat { k, inv } => {
                assert!(y.is_empty(), "word not normal");
                off[*k as usize - 1] += if *inv { -1 } else { 1 };
            }
            Gen::YTri { .. } => y.push(base),
            _ => panic!("unexpected symbol in factored word"),
        }
    }
    (Word(x), off, Word(y))
}
