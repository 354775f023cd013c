//! Ternary-relation models for the full RBL language.
//!
//! `R(a, a2, a3)` reads "a2 and a3 combine into a". Truth sets are `u64`
//! masks, so models are capped at 64 states.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kripke::{self, BplModel, KripkeError};
use crate::syntax::{Formula, SimpleSequent};

pub const MAX_STATES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TernaryError {
    #[error("state {state} is out of range for a model with {states} states")]
    InvalidState { state: usize, states: usize },
    #[error("model has {0} states; at most {MAX_STATES} are supported")]
    TooLarge(usize),
}

/// `{"states": n, "rel3": [[a,b,c],...], "val": {"p": [a,...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryModel {
    pub states: usize,
    pub rel3: BTreeSet<(usize, usize, usize)>,
    #[serde(default)]
    pub val: BTreeMap<String, BTreeSet<usize>>,
}

impl TernaryModel {
    pub fn new(states: usize) -> TernaryModel {
        TernaryModel { states, rel3: BTreeSet::new(), val: BTreeMap::new() }
    }

    pub fn with_rel(mut self, triples: &[(usize, usize, usize)]) -> TernaryModel {
        self.rel3.extend(triples.iter().copied());
        self
    }

    pub fn with_val(mut self, atom: &str, states: &[usize]) -> TernaryModel {
        self.val.entry(atom.to_string()).or_default().extend(states.iter().copied());
        self
    }

    /// Out-of-range states mentioned by `rel3` or `val`.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.states > MAX_STATES {
            out.push(format!("{} states exceed the limit of {MAX_STATES}", self.states));
        }
        for &(a, b, c) in &self.rel3 {
            if a.max(b).max(c) >= self.states {
                out.push(format!("triple ({a},{b},{c}) is out of range"));
            }
        }
        for (p, ss) in &self.val {
            for &s in ss {
                if s >= self.states {
                    out.push(format!("val({p}) mentions state {s}"));
                }
            }
        }
        out
    }

    fn all(&self) -> u64 {
        if self.states == 64 {
            u64::MAX
        } else {
            (1u64 << self.states) - 1
        }
    }

    /// Truth set of `f` as a bit mask.
    pub fn truth_set(&self, f: &Formula) -> Result<u64, TernaryError> {
        if self.states > MAX_STATES {
            return Err(TernaryError::TooLarge(self.states));
        }
        let triples: Vec<(usize, usize, usize)> =
            self.rel3.iter().copied().filter(|&(a, b, c)| a.max(b).max(c) < self.states).collect();
        Ok(self.mask(&triples, f))
    }

    fn mask(&self, triples: &[(usize, usize, usize)], f: &Formula) -> u64 {
        let bit = |s: usize| 1u64 << s;
        let all = self.all();
        match f {
            Formula::Prop(p) => self.val.get(&**p).map_or(0, |ss| ss.iter().fold(0, |m, &s| m | bit(s))) & all,
            Formula::Bot => 0,
            Formula::Top => all,
            Formula::And(a, b) => self.mask(triples, a) & self.mask(triples, b),
            Formula::Or(a, b) => self.mask(triples, a) | self.mask(triples, b),
            Formula::Prod(a, b) => {
                let (ta, tb) = (self.mask(triples, a), self.mask(triples, b));
                triples
                    .iter()
                    .filter(|&&(_, x, y)| ta & bit(x) != 0 && tb & bit(y) != 0)
                    .fold(0, |m, &(s, _, _)| m | bit(s))
            }
            Formula::RImp(a, b) => {
                let (ta, tb) = (self.mask(triples, a), self.mask(triples, b));
                let bad = triples
                    .iter()
                    .filter(|&&(z, x, _)| ta & bit(x) != 0 && tb & bit(z) == 0)
                    .fold(0, |m, &(_, _, s)| m | bit(s));
                all & !bad
            }
            Formula::LImp(a, b) => {
                let (ta, tb) = (self.mask(triples, a), self.mask(triples, b));
                let bad = triples
                    .iter()
                    .filter(|&&(z, _, y)| tb & bit(y) != 0 && ta & bit(z) == 0)
                    .fold(0, |m, &(_, s, _)| m | bit(s));
                all & !bad
            }
        }
    }
}

/// `J, a ⊨ f`. Unknown atoms are false everywhere.
pub fn eval_ternary(j: &TernaryModel, a: usize, f: &Formula) -> Result<bool, TernaryError> {
    if a >= j.states {
        return Err(TernaryError::InvalidState { state: a, states: j.states });
    }
    Ok(j.truth_set(f)? >> a & 1 == 1)
}

/// States where `lhs` holds and `rhs` fails.
pub fn sequent_failures(j: &TernaryModel, s: &SimpleSequent) -> Result<u64, TernaryError> {
    Ok(j.truth_set(&s.lhs)? & !j.truth_set(&s.rhs)?)
}

/// `A ⇒ B` is true in `j` iff every state satisfying `A` satisfies `B`.
pub fn sequent_true(j: &TernaryModel, s: &SimpleSequent) -> bool {
    sequent_failures(j, s) == Ok(0)
}

/// State index of copy `i ∈ {1, 2}` of world `a`.
pub fn copy_of(a: usize, i: usize) -> usize {
    debug_assert!(i == 1 || i == 2);
    2 * a + (i - 1)
}

/// Human-readable name of a lifted state, e.g. `3₂`.
pub fn state_name(s: usize) -> String {
    format!("{}{}", s / 2, if s.is_multiple_of(2) { "₁" } else { "₂" })
}

/// The lifted model: two copies per world and four triples per edge `aRb`.
pub fn lift_bpl(m: &BplModel) -> TernaryModel {
    lift_with(m, &m.rel)
}

fn lift_with(m: &BplModel, rel: &BTreeSet<(usize, usize)>) -> TernaryModel {
    let mut j = TernaryModel::new(2 * m.worlds);
    for &(a, b) in rel {
        let (a1, a2, b1, b2) = (copy_of(a, 1), copy_of(a, 2), copy_of(b, 1), copy_of(b, 2));
        j.rel3.extend([(b1, b2, a1), (b2, b1, a1), (b1, b2, a2), (b2, b1, a2)]);
    }
    for (p, ws) in &m.val {
        let ss = ws.iter().flat_map(|&w| [copy_of(w, 1), copy_of(w, 2)]).collect();
        j.val.insert(p.clone(), ss);
    }
    j
}

/// Compares `m` against an arbitrary ternary model `j` claimed to be its
/// lift: every BPL formula must agree at every world and both copies.
pub fn check_truth_lemma_against(m: &BplModel, j: &TernaryModel, fs: &[Formula]) -> Result<bool, KripkeError> {
    for f in fs {
        let bpl = kripke::truth_set(m, f)?;
        let ter = j.truth_set(f).map_err(|_| KripkeError::TooLarge(j.states))?;
        for a in 0..m.worlds {
            let expected = bpl >> a & 1;
            if (ter >> copy_of(a, 1) & 1) != expected || (ter >> copy_of(a, 2) & 1) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `M, a ⊨ f` iff `J^M, a_i ⊨ f` for every `f` in `fs`, every world and both copies.
pub fn check_truth_lemma(m: &BplModel, fs: &[Formula]) -> Result<bool, KripkeError> {
    if m.worlds * 2 > MAX_STATES {
        return Err(KripkeError::TooLarge(m.worlds));
    }
    check_truth_lemma_against(m, &lift_bpl(m), fs)
}

/// Every sequent holds in the lift of `m`.
pub fn check_srbl_soundness(m: &BplModel, derivable: &[SimpleSequent]) -> bool {
    let j = lift_bpl(m);
    derivable.iter().all(|s| sequent_true(&j, s))
}

/// The lift of `m` with the triple at position `drop` (in sorted order)
/// removed, for mutation tests.
pub fn lift_without(m: &BplModel, drop: usize) -> TernaryModel {
    let mut j = lift_bpl(m);
    if let Some(t) = j.rel3.iter().nth(drop).copied() {
        j.rel3.remove(&t);
    }
    j
}

/// The lift of `m` without the two triples that edge `aRb` contributes at
/// copy `i` of `a`. A single dropped triple is always masked by its twin
/// with the copies of `b` swapped, so this is the smallest effective mutation.
pub fn lift_without_edge(m: &BplModel, a: usize, b: usize, i: usize) -> TernaryModel {
    let mut j = lift_bpl(m);
    let (ai, b1, b2) = (copy_of(a, i), copy_of(b, 1), copy_of(b, 2));
    j.rel3.remove(&(b1, b2, ai));
    j.rel3.remove(&(b2, b1, ai));
    j
}
