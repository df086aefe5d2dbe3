//! Order-respecting rewriting on noncommutative polynomials.
//!
//! Every rule replaces a two-letter left side by a polynomial that is
//! strictly smaller in the graded position-lex order, so rewriting always
//! terminates; a global budget guards against an accidentally mis-oriented
//! rule set. Normal forms are unique exactly when the system is locally
//! confluent, which [`RewriteSystem::local_confluence`] certifies by checking
//! every three-letter overlap ambiguity (all left sides have length two, so
//! these are the only ones).

use std::collections::BTreeMap;

use super::alphabet::{Alphabet, Word};
use super::poly::NCPoly;
use crate::error::CoreError;
use crate::ring::Coeff;
use crate::Result;

/// Default rule-application budget per `normal_form` call.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A confluence-checkable rewriting system with two-letter left sides.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Coeff> {
    pub alphabet: Alphabet,
    rules: BTreeMap<(u16, u16), NCPoly<F>>,
    budget: u64,
}

impl<F: Coeff> RewriteSystem<F> {
    pub fn new(alphabet: Alphabet) -> Self {
        RewriteSystem {
            alphabet,
            rules: BTreeMap::new(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Install `lhs -> rhs`; the right side must be strictly order-smaller.
    pub fn add_rule(&mut self, a: u16, b: u16, rhs: NCPoly<F>) {
        let lhs = Word::pair(a, b);
        if let Some((lead, _)) = rhs.leading() {
            assert!(
                *lead < lhs,
                "rule right side {} not smaller than left side {}",
                self.alphabet.display_word(lead),
                self.alphabet.display_word(&lhs)
            );
        }
        let prev = self.rules.insert((a, b), rhs);
        assert!(prev.is_none(), "duplicate rule for ({a},{b})");
    }

    pub fn rule(&self, a: u16, b: u16) -> Option<&NCPoly<F>> {
        self.rules.get(&(a, b))
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(u16, u16), &NCPoly<F>)> {
        self.rules.iter()
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// Multiply one rule's right side by a constant: the deliberate-damage
    /// hook used by negative controls.
    pub fn corrupt_rule(&mut self, a: u16, b: u16, factor: &F) {
        let r = self.rules.get_mut(&(a, b)).expect("no such rule");
        *r = r.scale(factor);
    }

    fn leftmost_redex(&self, w: &Word) -> Option<usize> {
        if w.len() < 2 {
            return None;
        }
        (0..w.len() - 1).find(|&i| self.rules.contains_key(&(w.0[i], w.0[i + 1])))
    }

    /// True when no rule left side occurs in `w`.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.leftmost_redex(w).is_none()
    }

    /// Reduce to normal form. The worklist pops the largest pending word
    /// first so coefficient merges happen before further expansion.
    pub fn normal_form(&self, p: &NCPoly<F>) -> Result<NCPoly<F>> {
        let mut out = NCPoly::zero();
        let mut work: BTreeMap<Word, F> = BTreeMap::new();
        for (w, c) in p.iter() {
            merge(&mut work, w.clone(), c.clone());
        }
        let mut applied: u64 = 0;
        while let Some((w, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.leftmost_redex(&w) {
                None => out.add_term(w, c),
                Some(pos) => {
                    applied += 1;
                    if applied > self.budget {
                        return Err(CoreError::BudgetExceeded {
                            applied,
                            budget: self.budget,
                        });
                    }
                    let rhs = &self.rules[&(w.0[pos], w.0[pos + 1])];
                    for (rw, rc) in rhs.iter() {
                        merge(&mut work, w.splice2(pos, rw), c.mul(rc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All overlap ambiguities `a b c` with rules on `ab` and `bc` whose two
    /// reduction paths disagree. Empty means locally confluent (and, with
    /// termination, confluent). `max_len >= 3` is accepted for interface
    /// symmetry; two-letter left sides only ever overlap in three-letter
    /// words.
    pub fn local_confluence(&self, max_len: usize) -> Result<Vec<Word>> {
        assert!(max_len >= 3, "overlap words have length 3");
        let mut failures = Vec::new();
        for (&(a, b), rhs_ab) in &self.rules {
            for (&(b2, c), rhs_bc) in &self.rules {
                if b2 != b {
                    continue;
                }
                // w = abc; path 1: rhs(ab) * c, path 2: a * rhs(bc)
                let path1 = {
                    let mut p = NCPoly::zero();
                    for (rw, rc) in rhs_ab.iter() {
                        p.add_term(rw.concat(&Word::single(c)), rc.clone());
                    }
                    self.normal_form(&p)?
                };
                let path2 = {
                    let mut p = NCPoly::zero();
                    for (rw, rc) in rhs_bc.iter() {
                        p.add_term(Word::single(a).concat(rw), rc.clone());
                    }
                    self.normal_form(&p)?
                };
                if path1 != path2 {
                    failures.push(Word(vec![a, b, c]));
                }
            }
        }
        Ok(failures)
    }

    /// Number of normal words of length `degree` over the given symbols.
    pub fn graded_dim(&self, degree: usize, symbols: &[u16]) -> u64 {
        if degree == 0 {
            return 1;
        }
        // walks in the allowed-adjacency graph
        let allowed = |a: u16, b: u16| !self.rules.contains_key(&(a, b));
        let mut counts: BTreeMap<u16, u64> = symbols.iter().map(|&s| (s, 1u64)).collect();
        for _ in 1..degree {
            let mut next: BTreeMap<u16, u64> = BTreeMap::new();
            for (&last, &cnt) in &counts {
                for &s in symbols {
                    if allowed(last, s) {
                        *next.entry(s).or_insert(0) += cnt;
                    }
                }
            }
            counts = next;
        }
        counts.values().sum()
    }

    /// Map rule coefficients into another field.
    pub fn map_coeffs<G: Coeff>(&self, f: &dyn Fn(&F) -> Result<G>) -> Result<RewriteSystem<G>> {
        let mut out = RewriteSystem::new(self.alphabet.clone()).with_budget(self.budget);
        for (&(a, b), rhs) in &self.rules {
            out.add_rule(a, b, rhs.map_coeffs(f)?);
        }
        Ok(out)
    }

    /// Render the rules as stable strings for golden-file diffing.
    pub fn dump_rules(&self) -> Vec<String>
    where
        F: std::fmt::Display,
    {
        self.rules
            .iter()
            .map(|(&(a, b), rhs)| {
                let lhs = self.alphabet.display_word(&Word::pair(a, b));
                if rhs.is_zero() {
                    return format!("{lhs} -> 0");
                }
                let terms: Vec<String> = rhs
                    .iter()
                    .map(|(w, c)| format!("{}·{}", c, self.alphabet.display_word(w)))
                    .collect();
                format!("{lhs} -> {}", terms.join(" + "))
            })
            .collect()
    }
}

fn merge<F: Coeff>(map: &mut BTreeMap<Word, F>, w: Word, c: F) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
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

/// Bring a list of homogeneous relations (each read as `poly = 0`) into
/// triangular rule form by elimination on leading words. Returns the oriented
/// rules; every relation must reduce to zero or yield a rule.
pub fn orient_relations<F: Coeff>(
    alphabet: &Alphabet,
    relations: Vec<NCPoly<F>>,
) -> Result<Vec<(Word, NCPoly<F>)>> {
    let mut pending: Vec<NCPoly<F>> = relations.into_iter().filter(|r| !r.is_zero()).collect();
    let mut rules: Vec<(Word, NCPoly<F>)> = Vec::new();
    loop {
        // reduce every pending relation by the rules found so far (linear
        // elimination on exact word matches)
        let mut changed = true;
        while changed {
            changed = false;
            for rel in pending.iter_mut() {
                for (lhs, rhs) in &rules {
                    if let Some(c) = rel.coeff(lhs).cloned() {
                        // rel -= c * (lhs - rhs)
                        let update = NCPoly::term(lhs.clone(), c.clone()).sub(&rhs.scale(&c));
                        *rel = rel.sub(&update);
                        changed = true;
                    }
                }
            }
        }
        pending.retain(|r| !r.is_zero());
        // pick the relation with the greatest leading word
        let Some(best) = pending
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.leading().unwrap().0.cmp(b.leading().unwrap().0))
            .map(|(i, _)| i)
        else {
            break;
        };
        let rel = pending.swap_remove(best);
        let (lead, lc) = rel.leading().unwrap();
        let lead = lead.clone();
        if lead.len() < 2 {
            return Err(CoreError::Unsupported(format!(
                "relation reduces to the sub-quadratic word {}",
                alphabet.display_word(&lead)
            )));
        }
        let lc_inv = lc.inv()?;
        // rhs = lead - rel/lc
        let rhs = NCPoly::term(lead.clone(), lc.one()).sub(&rel.scale(&lc_inv));
        rules.push((lead, rhs));
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::alphabet::Gen;
    use crate::ring::{ParamSpace, Ratio, Scalar};

    fn two_letter_alphabet() -> Alphabet {
        Alphabet::new(vec![Gen::Coord { i: 1 }, Gen::Coord { i: 2 }])
    }

    #[test]
    fn normal_form_is_idempotent_and_terminates() {
        let sp = ParamSpace::new(2);
        let alpha = two_letter_alphabet();
        let mut sys = RewriteSystem::new(alpha);
        let q = Ratio::from_scalar(Scalar::q(sp, 1, 2));
        // x2 x1 -> q12 x1 x2
        sys.add_rule(1, 0, NCPoly::term(Word::pair(0, 1), q));
        let p = NCPoly::word(Word(vec![1, 1, 0]), &Ratio::one(sp));
        let nf = sys.normal_form(&p).unwrap();
        assert_eq!(sys.normal_form(&nf).unwrap(), nf);
        assert!(nf.iter().all(|(w, _)| sys.is_normal_word(w)));
        // x2 x2 x1 -> q^2 x1 x2 x2
        let expect = NCPoly::term(
            Word(vec![0, 1, 1]),
            Ratio::from_scalar(Scalar::q_pow(sp, 1, 2, 2)),
        );
        assert_eq!(nf, expect);
    }

    #[test]
    fn budget_guards_against_bad_rule_sets() {
        let sp = ParamSpace::new(2);
        let alpha = two_letter_alphabet();
        let mut sys = RewriteSystem::new(alpha).with_budget(10);
        let one = Ratio::one(sp);
        sys.add_rule(1, 0, NCPoly::term(Word::pair(0, 1), one.clone()));
        // long alternating word needs more than 10 applications
        let p = NCPoly::word(Word(vec![1, 1, 1, 1, 1, 0, 0, 0, 0, 0]), &one);
        match sys.normal_form(&p) {
            Err(CoreError::BudgetExceeded { .. }) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn orientation_produces_reduced_rules() {
        let sp = ParamSpace::new(2);
        let alpha = two_letter_alphabet();
        let q = Ratio::from_scalar(Scalar::q(sp, 1, 2));
        // single relation x2x1 - q x1x2 = 0
        let rel = NCPoly::term(Word::pair(1, 0), Ratio::one(sp))
            .sub(&NCPoly::term(Word::pair(0, 1), q.clone()));
        let rules = orient_relations(&alpha, vec![rel.clone(), rel.scale(&q)]).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].0, Word::pair(1, 0));
    }
}
