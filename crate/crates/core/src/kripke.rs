//! Finite BPL Kripke models.
//!
//! A model is a transitive relation over worlds `0..n` with a persistent
//! valuation. Implication quantifies over strict successors only, so the
//! relation need not be reflexive. Truth sets are computed as `u64` bit
//! masks, which caps models at 64 worlds.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Formula;

pub const MAX_WORLDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("formula `{0}` is outside the BPL language (uses `*` or `<-`)")]
    Language(Formula),
    #[error("world {world} is out of range for a model with {worlds} worlds")]
    InvalidWorld { world: usize, worlds: usize },
    #[error("model has {0} worlds; at most {MAX_WORLDS} are supported")]
    TooLarge(usize),
}

/// `(W, R, V)` in the JSON interchange format
/// `{"worlds": n, "rel": [[i,j],...], "val": {"p": [i,...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BplModel {
    pub worlds: usize,
    pub rel: BTreeSet<(usize, usize)>,
    #[serde(default)]
    pub val: BTreeMap<String, BTreeSet<usize>>,
}

/// A violated model condition with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    EmptyModel,
    TooLarge {
        worlds: usize,
    },
    OutOfRange {
        what: String,
        world: usize,
    },
    /// `(x,y), (y,z) ∈ R` but `(x,z) ∉ R`.
    NotTransitive {
        x: usize,
        y: usize,
        z: usize,
    },
    /// `from ∈ V(atom)`, `from R to`, `to ∉ V(atom)`.
    NotPersistent {
        atom: String,
        from: usize,
        to: usize,
    },
}

impl BplModel {
    pub fn new(worlds: usize) -> BplModel {
        BplModel { worlds, rel: BTreeSet::new(), val: BTreeMap::new() }
    }

    pub fn with_rel(mut self, pairs: &[(usize, usize)]) -> BplModel {
        self.rel.extend(pairs.iter().copied());
        self
    }

    pub fn with_val(mut self, atom: &str, worlds: &[usize]) -> BplModel {
        self.val.entry(atom.to_string()).or_default().extend(worlds.iter().copied());
        self
    }

    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.rel.range((w, 0)..=(w, usize::MAX)).map(|&(_, v)| v)
    }

    fn succ_masks(&self) -> Vec<u64> {
        let mut succ = vec![0u64; self.worlds];
        for &(a, b) in &self.rel {
            succ[a] |= 1 << b;
        }
        succ
    }

    fn val_mask(&self, atom: &str) -> u64 {
        self.val.get(atom).map_or(0, |ws| ws.iter().fold(0, |m, &w| m | (1u64 << w)))
    }

    fn ensure_size(&self) -> Result<(), KripkeError> {
        if self.worlds > MAX_WORLDS {
            return Err(KripkeError::TooLarge(self.worlds));
        }
        Ok(())
    }
}

/// Lists every violation of transitivity and persistency.
pub fn check_bpl_model(m: &BplModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if m.worlds == 0 {
        out.push(Diagnostic::EmptyModel);
    }
    if m.worlds > MAX_WORLDS {
        out.push(Diagnostic::TooLarge { worlds: m.worlds });
        return out;
    }
    for &(a, b) in &m.rel {
        for w in [a, b] {
            if w >= m.worlds {
                out.push(Diagnostic::OutOfRange { what: "rel".into(), world: w });
            }
        }
    }
    for (atom, ws) in &m.val {
        for &w in ws {
            if w >= m.worlds {
                out.push(Diagnostic::OutOfRange { what: format!("val({atom})"), world: w });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for &(x, y) in &m.rel {
        for z in m.successors(y) {
            if !m.rel.contains(&(x, z)) {
                out.push(Diagnostic::NotTransitive { x, y, z });
            }
        }
    }
    for (atom, ws) in &m.val {
        for &from in ws {
            for to in m.successors(from) {
                if !ws.contains(&to) {
                    out.push(Diagnostic::NotPersistent { atom: atom.clone(), from, to });
                }
            }
        }
    }
    out
}

/// Truth set of a BPL formula over a model given as successor masks.
fn truth_mask(n: usize, succ: &[u64], val: &dyn Fn(&str) -> u64, f: &Formula) -> Result<u64, KripkeError> {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(match f {
        Formula::Prop(p) => val(p) & all,
        Formula::Bot => 0,
        Formula::Top => all,
        Formula::And(a, b) => truth_mask(n, succ, val, a)? & truth_mask(n, succ, val, b)?,
        Formula::Or(a, b) => truth_mask(n, succ, val, a)? | truth_mask(n, succ, val, b)?,
        Formula::RImp(a, b) => {
            let ok = !truth_mask(n, succ, val, a)? | truth_mask(n, succ, val, b)?;
            imp_mask(n, succ, ok)
        }
        Formula::Prod(..) | Formula::LImp(..) => return Err(KripkeError::Language(f.clone())),
    })
}

/// Worlds all of whose successors lie in `ok`.
fn imp_mask(n: usize, succ: &[u64], ok: u64) -> u64 {
    let mut out = 0;
    for (w, &s) in succ.iter().enumerate().take(n) {
        if s & !ok == 0 {
            out |= 1 << w;
        }
    }
    out
}

/// The set of worlds satisfying `f`, as a bit mask.
pub fn truth_set(m: &BplModel, f: &Formula) -> Result<u64, KripkeError> {
    m.ensure_size()?;
    let succ = m.succ_masks();
    truth_mask(m.worlds, &succ, &|p| m.val_mask(p), f)
}

/// `M, w ⊨ f`. Atoms absent from the valuation are false everywhere.
pub fn eval_bpl(m: &BplModel, w: usize, f: &Formula) -> Result<bool, KripkeError> {
    if w >= m.worlds {
        return Err(KripkeError::InvalidWorld { world: w, worlds: m.worlds });
    }
    Ok(truth_set(m, f)? >> w & 1 == 1)
}

/// Outcome of bounded validity search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BplVerdict {
    Countermodel { model: BplModel, world: usize },
    ValidUpTo { size: usize },
}

impl BplVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, BplVerdict::ValidUpTo { .. })
    }
}

/// Transitive relations on `n` labeled worlds, as successor masks, in
/// ascending order of the `n²`-bit relation encoding.
pub fn transitive_relations(n: usize) -> Vec<Vec<u64>> {
    assert!(n <= 5, "relation enumeration is exhaustive; keep n <= 5");
    let bits = n * n;
    let mut out = Vec::new();
    for code in 0u64..(1u64 << bits) {
        let succ: Vec<u64> = (0..n).map(|i| (code >> (i * n)) & ((1 << n) - 1)).collect();
        let transitive = (0..n).all(|x| (0..n).filter(|&y| succ[x] >> y & 1 == 1).all(|y| succ[y] & !succ[x] == 0));
        if transitive {
            out.push(succ);
        }
    }
    out
}

/// Subsets closed under successors (the persistent truth sets).
pub fn up_sets(n: usize, succ: &[u64]) -> Vec<u64> {
    (0u64..(1 << n)).filter(|&s| (0..n).filter(|&w| s >> w & 1 == 1).all(|w| succ[w] & !s == 0)).collect()
}

/// Compact model used by the enumerators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompactModel {
    pub worlds: usize,
    pub succ: Vec<u64>,
    /// One mask per atom, in the order of the atom list it was built for.
    pub val: Vec<u64>,
}

impl CompactModel {
    pub fn to_model(&self, atoms: &[Arc<str>]) -> BplModel {
        let mut m = BplModel::new(self.worlds);
        for (x, &s) in self.succ.iter().enumerate() {
            for y in 0..self.worlds {
                if s >> y & 1 == 1 {
                    m.rel.insert((x, y));
                }
            }
        }
        for (atom, &mask) in atoms.iter().zip(&self.val) {
            let ws: BTreeSet<usize> = (0..self.worlds).filter(|&w| mask >> w & 1 == 1).collect();
            m.val.insert(atom.to_string(), ws);
        }
        m
    }

    pub fn truth(&self, atoms: &[Arc<str>], f: &Formula) -> Result<u64, KripkeError> {
        let val = |p: &str| atoms.iter().position(|a| &**a == p).map_or(0, |i| self.val[i]);
        truth_mask(self.worlds, &self.succ, &val, f)
    }

    /// The same model with worlds renamed by `perm` (old index → new index).
    fn permuted(&self, perm: &[usize]) -> CompactModel {
        let map = |m: u64| (0..self.worlds).filter(|&w| m >> w & 1 == 1).fold(0u64, |acc, w| acc | 1 << perm[w]);
        let mut succ = vec![0; self.worlds];
        for (w, &s) in self.succ.iter().enumerate() {
            succ[perm[w]] = map(s);
        }
        CompactModel { worlds: self.worlds, succ, val: self.val.iter().map(|&v| map(v)).collect() }
    }
}

/// All models with exactly `n` worlds over `atoms`: relations by ascending
/// bitmask, then valuations by ascending up-set index per atom.
pub fn models_of_size(n: usize, atoms: usize) -> impl Iterator<Item = CompactModel> {
    transitive_relations(n).into_iter().flat_map(move |succ| {
        let ups = up_sets(n, &succ);
        let total = ups.len().pow(atoms as u32);
        (0..total).map(move |mut code| {
            let mut val = Vec::with_capacity(atoms);
            for _ in 0..atoms {
                val.push(ups[code % ups.len()]);
                code /= ups.len();
            }
            CompactModel { worlds: n, succ: succ.clone(), val }
        })
    })
}

/// Searches every model with at most `n` worlds (sizes ascending) for one
/// that falsifies `f` at some world.
pub fn bpl_valid_upto(f: &Formula, n: usize) -> Result<BplVerdict, KripkeError> {
    if !f.is_bpl() {
        return Err(KripkeError::Language(f.clone()));
    }
    let atoms: Vec<Arc<str>> = f.atoms().into_iter().collect();
    for size in 1..=n {
        let all = (1u64 << size) - 1;
        for cm in models_of_size(size, atoms.len()) {
            let t = cm.truth(&atoms, f)?;
            if t != all {
                let world = (!t & all).trailing_zeros() as usize;
                return Ok(BplVerdict::Countermodel { model: cm.to_model(&atoms), world });
            }
        }
    }
    Ok(BplVerdict::ValidUpTo { size: n })
}

/// Adds a fresh world `x'` below `x`: `x' R x`, `x' R y` for every `x R y`,
/// and `x'` gets exactly the atoms true at `x`.
pub fn point_extension(m: &BplModel, x: usize) -> Result<(BplModel, usize), KripkeError> {
    if x >= m.worlds {
        return Err(KripkeError::InvalidWorld { world: x, worlds: m.worlds });
    }
    let fresh = m.worlds;
    let mut out = m.clone();
    out.worlds += 1;
    out.rel.insert((fresh, x));
    let succ: Vec<usize> = m.successors(x).collect();
    for y in succ {
        out.rel.insert((fresh, y));
    }
    for ws in out.val.values_mut() {
        if ws.contains(&x) {
            ws.insert(fresh);
        }
    }
    Ok((out, fresh))
}

/// Every model up to `max_worlds` worlds over a fixed atom list, deduplicated
/// up to isomorphism, with memoized truth sets. Batch counterpart of
/// [`bpl_valid_upto`] for large formula corpora.
pub struct ModelBank {
    atoms: Vec<Arc<str>>,
    models: Vec<CompactModel>,
    memo: HashMap<Formula, Vec<u64>>,
}

impl ModelBank {
    pub fn new(atoms: &[&str], max_worlds: usize) -> ModelBank {
        let atoms: Vec<Arc<str>> = atoms.iter().map(|a| Arc::from(*a)).collect();
        let mut models = Vec::new();
        for n in 1..=max_worlds {
            let perms = permutations(n);
            let mut seen = std::collections::HashSet::new();
            for cm in models_of_size(n, atoms.len()) {
                let canon = perms.iter().map(|p| cm.permuted(p)).map(|c| (c.succ, c.val)).min().unwrap();
                if seen.insert(canon) {
                    models.push(cm);
                }
            }
        }
        ModelBank { atoms, models, memo: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn atoms(&self) -> &[Arc<str>] {
        &self.atoms
    }

    fn truths(&mut self, f: &Formula) -> Result<Vec<u64>, KripkeError> {
        if let Some(t) = self.memo.get(f) {
            return Ok(t.clone());
        }
        let t: Vec<u64> = match f {
            Formula::Prop(p) => {
                let idx = self.atoms.iter().position(|a| a == p);
                self.models.iter().map(|m| idx.map_or(0, |i| m.val[i])).collect()
            }
            Formula::Bot => vec![0; self.models.len()],
            Formula::Top => self.models.iter().map(|m| (1u64 << m.worlds) - 1).collect(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::RImp(a, b) => {
                let ta = self.truths(a)?;
                let tb = self.truths(b)?;
                let mut out = Vec::with_capacity(ta.len());
                for (i, m) in self.models.iter().enumerate() {
                    out.push(match f {
                        Formula::And(..) => ta[i] & tb[i],
                        Formula::Or(..) => ta[i] | tb[i],
                        _ => imp_mask(m.worlds, &m.succ, !ta[i] | tb[i]),
                    });
                }
                out
            }
            Formula::Prod(..) | Formula::LImp(..) => return Err(KripkeError::Language(f.clone())),
        };
        self.memo.insert(f.clone(), t.clone());
        Ok(t)
    }

    /// First model in the bank falsifying `f`, as `(model, world)`.
    pub fn countermodel(&mut self, f: &Formula) -> Result<Option<(BplModel, usize)>, KripkeError> {
        let t = self.truths(f)?;
        for (m, &mask) in self.models.iter().zip(&t) {
            let all = (1u64 << m.worlds) - 1;
            if mask != all {
                let w = (!mask & all).trailing_zeros() as usize;
                return Ok(Some((m.to_model(&self.atoms), w)));
            }
        }
        Ok(None)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn diagnostics() {
        let ok = BplModel::new(2).with_rel(&[(0, 1)]).with_val("p", &[0, 1]);
        assert!(check_bpl_model(&ok).is_empty());
        let chain = BplModel::new(3).with_rel(&[(0, 1), (1, 2)]);
        assert_eq!(check_bpl_model(&chain), vec![Diagnostic::NotTransitive { x: 0, y: 1, z: 2 }]);
        let bad = BplModel::new(2).with_rel(&[(0, 1)]).with_val("p", &[0]);
        assert_eq!(check_bpl_model(&bad), vec![Diagnostic::NotPersistent { atom: "p".into(), from: 0, to: 1 }]);
        let oob = BplModel::new(1).with_rel(&[(0, 3)]);
        assert!(matches!(check_bpl_model(&oob)[0], Diagnostic::OutOfRange { world: 3, .. }));
    }

    #[test]
    fn eval_examples() {
        let one = BplModel::new(1).with_val("p", &[0]);
        assert!(eval_bpl(&one, 0, &f("p -> q")).unwrap());
        // the sequent form of p & (p -> q) => q fails at an endpoint
        assert!(eval_bpl(&one, 0, &f("p & (p -> q)")).unwrap());
        assert!(!eval_bpl(&one, 0, &f("q")).unwrap());
        assert!(eval_bpl(&one, 0, &f("p & (p -> q) -> q")).unwrap());
        let chain = BplModel::new(2).with_rel(&[(0, 1)]).with_val("p", &[0, 1]).with_val("q", &[1]);
        assert!(eval_bpl(&chain, 0, &f("p -> q")).unwrap());
        assert!(!eval_bpl(&chain, 0, &f("q")).unwrap());
    }

    #[test]
    fn eval_errors() {
        let one = BplModel::new(1);
        assert!(matches!(eval_bpl(&one, 0, &f("p * q")), Err(KripkeError::Language(_))));
        assert!(matches!(eval_bpl(&one, 0, &f("p <- q")), Err(KripkeError::Language(_))));
        assert!(matches!(eval_bpl(&one, 1, &f("p")), Err(KripkeError::InvalidWorld { .. })));
        assert!(!eval_bpl(&one, 0, &f("unknown")).unwrap());
    }

    #[test]
    fn relation_counts() {
        // transitive relations on n labeled points: 1, 2, 13, 171, 3994
        let counts: Vec<usize> = (0..=4).map(|n| transitive_relations(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 13, 171, 3994]);
    }

    #[test]
    fn validity_search() {
        assert_eq!(bpl_valid_upto(&f("p -> q -> p"), 3).unwrap(), BplVerdict::ValidUpTo { size: 3 });
        assert_eq!(bpl_valid_upto(&f("p & (p -> q) -> top -> q"), 4).unwrap(), BplVerdict::ValidUpTo { size: 4 });
        match bpl_valid_upto(&f("p & (p -> q) -> q"), 3).unwrap() {
            BplVerdict::Countermodel { model, world } => {
                assert!(check_bpl_model(&model).is_empty());
                assert!(!eval_bpl(&model, world, &f("p & (p -> q) -> q")).unwrap());
                assert_eq!(model.worlds, 2);
            }
            v => panic!("expected a countermodel, got {v:?}"),
        }
        assert!(bpl_valid_upto(&f("p * q"), 2).is_err());
    }

    #[test]
    fn point_extension_examples() {
        let one = BplModel::new(1);
        let (m, x) = point_extension(&one, 0).unwrap();
        assert_eq!((m.worlds, x), (2, 1));
        assert_eq!(m.rel, [(1, 0)].into_iter().collect());
        let chain = BplModel::new(2).with_rel(&[(0, 1)]).with_val("p", &[0, 1]);
        let (m, x) = point_extension(&chain, 0).unwrap();
        assert_eq!(m.rel, [(0, 1), (2, 0), (2, 1)].into_iter().collect());
        assert!(m.val["p"].contains(&x));
        assert!(check_bpl_model(&m).is_empty());
        assert!(point_extension(&chain, 5).is_err());
    }

    #[test]
    fn bank_agrees_with_enumeration() {
        let mut bank = ModelBank::new(&["p", "q"], 3);
        for s in ["p -> q -> p", "p & (p -> q) -> q", "(p -> q) | (q -> p)", "top -> p -> p"] {
            let g = f(s);
            let direct = bpl_valid_upto(&g, 3).unwrap().is_valid();
            assert_eq!(bank.countermodel(&g).unwrap().is_none(), direct, "{s}");
        }
    }
}
