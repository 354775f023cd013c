//! Finite residuated basic algebras (RBAs).
//!
//! Elements are `0..n`. Lattices produced by [`distributive_lattices`] use
//! a natural labeling: `0` is bottom, `n-1` is top, and `a ≤ b` implies
//! `a ≤ b` as integers.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Formula;

pub const MAX_ENUM_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("`{op}` is not residuated at ({a}, {b})")]
    NotResiduated { op: &'static str, a: usize, b: usize },
    #[error("enumeration is limited to size {MAX_ENUM_SIZE}, got {0}")]
    SizeLimit(usize),
    #[error("no value assigned to atom `{0}`")]
    MissingAtom(String),
    #[error("malformed algebra: {0}")]
    Malformed(String),
}

/// A finite bounded distributive lattice with a product; `rimp` and `limp`
/// are always recomputed from `prod` as the joins of the residuation sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRba {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub prod: Vec<Vec<usize>>,
    pub bot: usize,
    pub top: usize,
    #[serde(default)]
    pub rimp: Vec<Vec<usize>>,
    #[serde(default)]
    pub limp: Vec<Vec<usize>>,
}

/// Bounded lattice skeleton without a product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bot: usize,
    pub top: usize,
}

impl Lattice {
    /// The lattice of a partial order, if it is one.
    pub fn from_order(leq: Vec<Vec<bool>>) -> Option<Lattice> {
        let n = leq.len();
        let le = |a: usize, b: usize| leq[a][b];
        let bound = |upper: bool, a: usize, b: usize| -> Option<usize> {
            let cands: Vec<usize> =
                (0..n).filter(|&x| if upper { le(a, x) && le(b, x) } else { le(x, a) && le(x, b) }).collect();
            cands.iter().copied().find(|&x| cands.iter().all(|&y| if upper { le(x, y) } else { le(y, x) }))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(false, a, b)?;
                join[a][b] = bound(true, a, b)?;
            }
        }
        let bot = (0..n).find(|&x| (0..n).all(|y| le(x, y)))?;
        let top = (0..n).find(|&x| (0..n).all(|y| le(y, x)))?;
        Some(Lattice { size: n, leq, meet, join, bot, top })
    }

    pub fn chain(n: usize) -> Lattice {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Lattice::from_order(leq).expect("chains are lattices")
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet[a][self.join[b][c]] == self.join[self.meet[a][b]][self.meet[a][c]]))
        })
    }

    pub fn with_prod(&self, prod: Vec<Vec<usize>>) -> FiniteRba {
        let mut alg = FiniteRba {
            size: self.size,
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            prod,
            bot: self.bot,
            top: self.top,
            rimp: vec![],
            limp: vec![],
        };
        alg.recompute_residuals();
        alg
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

/// Bounded distributive lattices of exactly `n` elements, one per
/// isomorphism class. Enumerates the naturally labeled partial orders, keeps
/// the distributive lattices, and drops isomorphic copies.
pub fn distributive_lattices(n: usize) -> Vec<Lattice> {
    if n == 0 {
        return vec![];
    }
    // free pairs (i, j), 0 < i < j < n-1; everything else is fixed
    let free: Vec<(usize, usize)> =
        (1..n.saturating_sub(1)).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 0u32..(1 << free.len()) {
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            leq[a][a] = true;
            leq[0][a] = true;
            leq[a][n - 1] = true;
        }
        for (k, &(i, j)) in free.iter().enumerate() {
            leq[i][j] = code >> k & 1 == 1;
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if !transitive {
            continue;
        }
        let Some(lat) = Lattice::from_order(leq) else { continue };
        if !lat.is_distributive() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = vec![vec![false; n]; n];
                for a in 0..n {
                    for b in 0..n {
                        m[p[a]][p[b]] = lat.leq[a][b];
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(lat);
        }
    }
    out
}

/// A violated algebra condition with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgDiagnostic {
    pub condition: String,
    pub witness: Vec<usize>,
}

fn diag(condition: &str, witness: &[usize]) -> AlgDiagnostic {
    AlgDiagnostic { condition: condition.to_string(), witness: witness.to_vec() }
}

impl FiniteRba {
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn lattice(&self) -> Lattice {
        Lattice {
            size: self.size,
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            bot: self.bot,
            top: self.top,
        }
    }

    fn big_join(&self, xs: impl Iterator<Item = usize>) -> usize {
        xs.fold(self.bot, |acc, x| self.join[acc][x])
    }

    /// Recomputes `rimp`/`limp` as plain joins, without checking residuation.
    pub fn recompute_residuals(&mut self) {
        let n = self.size;
        self.rimp = (0..n)
            .map(|a| (0..n).map(|c| self.big_join((0..n).filter(|&x| self.le(self.prod[a][x], c)))).collect())
            .collect();
        self.limp = (0..n)
            .map(|c| (0..n).map(|b| self.big_join((0..n).filter(|&x| self.le(self.prod[x][b], c)))).collect())
            .collect();
    }

    /// Checks table shapes and element ranges; run on untrusted input.
    pub fn validate_shape(&self) -> Result<(), AlgebraError> {
        let n = self.size;
        let sq = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
        if n == 0 {
            return Err(AlgebraError::Malformed("empty carrier".into()));
        }
        if self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Malformed("leq must be n×n".into()));
        }
        if !sq(&self.meet) || !sq(&self.join) || !sq(&self.prod) {
            return Err(AlgebraError::Malformed("meet/join/prod must be n×n over 0..n".into()));
        }
        if self.bot >= n || self.top >= n {
            return Err(AlgebraError::Malformed("bot/top out of range".into()));
        }
        Ok(())
    }
}

/// `a → c`: the join of `{x : a·x ≤ c}`, provided it belongs to the set.
pub fn residual_right(alg: &FiniteRba, a: usize, c: usize) -> Result<usize, AlgebraError> {
    let j = alg.big_join(alg.elements().filter(|&x| alg.le(alg.prod[a][x], c)));
    if alg.le(alg.prod[a][j], c) {
        Ok(j)
    } else {
        Err(AlgebraError::NotResiduated { op: "->", a, b: c })
    }
}

/// `c ← b`: the join of `{x : x·b ≤ c}`, provided it belongs to the set.
pub fn residual_left(alg: &FiniteRba, c: usize, b: usize) -> Result<usize, AlgebraError> {
    let j = alg.big_join(alg.elements().filter(|&x| alg.le(alg.prod[x][b], c)));
    if alg.le(alg.prod[j][b], c) {
        Ok(j)
    } else {
        Err(AlgebraError::NotResiduated { op: "<-", a: c, b })
    }
}

/// Every violated RBA condition, with witnesses. Empty iff `alg` is an RBA.
pub fn check_rba_axioms(alg: &FiniteRba) -> Vec<AlgDiagnostic> {
    let mut out = Vec::new();
    if let Err(e) = alg.validate_shape() {
        out.push(diag(&e.to_string(), &[]));
        return out;
    }
    let n = alg.size;
    let le = |a: usize, b: usize| alg.le(a, b);
    for a in 0..n {
        if !le(a, a) {
            out.push(diag("leq reflexive", &[a]));
        }
        if !le(alg.bot, a) {
            out.push(diag("bot least", &[a]));
        }
        if !le(a, alg.top) {
            out.push(diag("top greatest", &[a]));
        }
        for b in 0..n {
            if a != b && le(a, b) && le(b, a) {
                out.push(diag("leq antisymmetric", &[a, b]));
            }
            let (m, j) = (alg.meet[a][b], alg.join[a][b]);
            let glb = le(m, a) && le(m, b) && (0..n).all(|x| !(le(x, a) && le(x, b)) || le(x, m));
            let lub = le(a, j) && le(b, j) && (0..n).all(|x| !(le(a, x) && le(b, x)) || le(j, x));
            if !glb {
                out.push(diag("meet is glb", &[a, b]));
            }
            if !lub {
                out.push(diag("join is lub", &[a, b]));
            }
            for c in 0..n {
                if le(a, b) && le(b, c) && !le(a, c) {
                    out.push(diag("leq transitive", &[a, b, c]));
                }
                if alg.meet[a][alg.join[b][c]] != alg.join[alg.meet[a][b]][alg.meet[a][c]] {
                    out.push(diag("distributive", &[a, b, c]));
                }
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut res = alg.clone();
    res.recompute_residuals();
    for a in 0..n {
        for b in 0..n {
            let ab = alg.prod[a][b];
            for c in 0..n {
                let l = le(ab, c);
                if l != le(b, res.rimp[a][c]) {
                    out.push(diag("RES a·b ≤ c iff b ≤ a→c", &[a, b, c]));
                }
                if l != le(a, res.limp[c][b]) {
                    out.push(diag("RES a·b ≤ c iff a ≤ c←b", &[a, b, c]));
                }
            }
            if !le(ab, alg.prod[ab][b]) {
                out.push(diag("c_r a·b ≤ (a·b)·b", &[a, b]));
            }
        }
        if !le(alg.prod[a][alg.top], a) {
            out.push(diag("w1 a·⊤ ≤ a", &[a]));
        }
        if !le(alg.prod[alg.top][a], a) {
            out.push(diag("w2 ⊤·a ≤ a", &[a]));
        }
    }
    out
}

/// Brute-force RBA count over every `n^(n²)` product table on `lat`.
pub fn brute_force_rbas(lat: &Lattice) -> Vec<FiniteRba> {
    let n = lat.size;
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut prod = vec![vec![0; n]; n];
        for k in 0..cells {
            prod[k / n][k % n] = (code % n as u64) as usize;
            code /= n as u64;
        }
        let alg = lat.with_prod(prod);
        if check_rba_axioms(&alg).is_empty() {
            out.push(alg);
        }
    }
    out
}

/// Every RBA on `lat`: backtracking over product cells in row-major order.
/// Candidates for `a·b` are restricted to `x ≤ a∧b` (which w₁, w₂ and
/// monotonicity force); bottom rows and columns are bottom; join
/// preservation and c_r are checked as soon as their cells are filled.
/// Products are not deduplicated under lattice automorphisms.
pub fn rbas_on(lat: &Lattice) -> Vec<FiniteRba> {
    let n = lat.size;
    let mut prod = vec![vec![usize::MAX; n]; n];
    let mut out = Vec::new();
    fill(lat, 0, &mut prod, &mut out);
    out
}

fn fill(lat: &Lattice, k: usize, prod: &mut Vec<Vec<usize>>, out: &mut Vec<FiniteRba>) {
    let n = lat.size;
    if k == n * n {
        let alg = lat.with_prod(prod.clone());
        debug_assert!(check_rba_axioms(&alg).is_empty());
        out.push(alg);
        return;
    }
    let (a, b) = (k / n, k % n);
    let cands: Vec<usize> = if a == lat.bot || b == lat.bot {
        vec![lat.bot]
    } else {
        (0..n).filter(|&x| lat.leq[x][lat.meet[a][b]]).collect()
    };
    for x in cands {
        prod[a][b] = x;
        if consistent(lat, prod) {
            fill(lat, k + 1, prod, out);
        }
    }
    prod[a][b] = usize::MAX;
}

/// Checks every constraint whose cells are all filled.
fn consistent(lat: &Lattice, prod: &[Vec<usize>]) -> bool {
    let n = lat.size;
    let get = |x: usize, y: usize| prod[x][y];
    let set = |v: usize| v != usize::MAX;
    for x in 0..n {
        for y in 0..n {
            // x·(y∨z) = x·y ∨ x·z and (y∨z)·x = y·x ∨ z·x
            for z in 0..n {
                let (yz, xy, xz) = (get(x, lat.join[y][z]), get(x, y), get(x, z));
                if set(yz) && set(xy) && set(xz) && yz != lat.join[xy][xz] {
                    return false;
                }
                let (yzx, yx, zx) = (get(lat.join[y][z], x), get(y, x), get(z, x));
                if set(yzx) && set(yx) && set(zx) && yzx != lat.join[yx][zx] {
                    return false;
                }
            }
            let xy = get(x, y);
            if set(xy) {
                let again = get(xy, y);
                if set(again) && !lat.leq[xy][again] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every RBA on every bounded distributive lattice with at most `n` elements.
pub fn enumerate_rbas(n: usize) -> Result<Vec<FiniteRba>, AlgebraError> {
    if n > MAX_ENUM_SIZE {
        return Err(AlgebraError::SizeLimit(n));
    }
    Ok((1..=n).flat_map(distributive_lattices).flat_map(|l| rbas_on(&l)).collect())
}

/// Homomorphic evaluation under `assign`.
pub fn eval_in_algebra(alg: &FiniteRba, assign: &BTreeMap<String, usize>, f: &Formula) -> Result<usize, AlgebraError> {
    let atoms: Vec<Arc<str>> = f.atoms().into_iter().collect();
    let mut vals = Vec::with_capacity(atoms.len());
    for p in &atoms {
        vals.push(*assign.get(&**p).ok_or_else(|| AlgebraError::MissingAtom(p.to_string()))?);
    }
    Ok(eval_with(alg, &atoms, &vals, f))
}

/// Evaluation with the assignment given positionally against `atoms`;
/// atoms not listed evaluate to bottom.
pub fn eval_with(alg: &FiniteRba, atoms: &[Arc<str>], vals: &[usize], f: &Formula) -> usize {
    let ev = |g: &Formula| eval_with(alg, atoms, vals, g);
    match f {
        Formula::Prop(p) => atoms.iter().position(|a| a == p).map_or(alg.bot, |i| vals[i]),
        Formula::Bot => alg.bot,
        Formula::Top => alg.top,
        Formula::And(a, b) => alg.meet[ev(a)][ev(b)],
        Formula::Or(a, b) => alg.join[ev(a)][ev(b)],
        Formula::Prod(a, b) => alg.prod[ev(a)][ev(b)],
        Formula::RImp(a, b) => alg.rimp[ev(a)][ev(b)],
        Formula::LImp(a, b) => alg.limp[ev(a)][ev(b)],
    }
}

/// All assignments of `atoms` into `alg`, as value vectors.
pub fn assignments(size: usize, atoms: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = size.pow(atoms as u32);
    (0..total).map(move |mut code| {
        (0..atoms)
            .map(|_| {
                let v = code % size;
                code /= size;
                v
            })
            .collect()
    })
}

/// First assignment under which `lhs ≤ rhs` fails.
pub fn sequent_counterexample(alg: &FiniteRba, lhs: &Formula, rhs: &Formula) -> Option<BTreeMap<String, usize>> {
    let mut atoms = lhs.atoms();
    atoms.extend(rhs.atoms());
    let atoms: Vec<Arc<str>> = atoms.into_iter().collect();
    assignments(alg.size, atoms.len())
        .find(|vals| !alg.le(eval_with(alg, &atoms, vals, lhs), eval_with(alg, &atoms, vals, rhs)))
        .map(|vals| atoms.iter().map(|a| a.to_string()).zip(vals).collect())
}

/// `f` evaluates to top under every assignment.
pub fn algebra_valid(alg: &FiniteRba, f: &Formula) -> bool {
    sequent_counterexample(alg, &Formula::Top, f).is_none()
}

/// The five basic-algebra conditions on the `→`-reduct, plus the
/// monotonicity facts that follow from them.
pub fn check_basic_reduct(alg: &FiniteRba) -> Vec<AlgDiagnostic> {
    let mut out = Vec::new();
    let (m, j, i, le) = (&alg.meet, &alg.join, &alg.rimp, |a, b| alg.le(a, b));
    for a in alg.elements() {
        if i[a][a] != alg.top {
            out.push(diag("(3) a→a = ⊤", &[a]));
        }
        if !le(a, i[alg.top][a]) {
            out.push(diag("(4) a ≤ ⊤→a", &[a]));
        }
        for b in alg.elements() {
            if le(m[a][b], b) && !le(a, i[b][b]) {
                out.push(diag("fact (2) a∧b ≤ c ⇒ a ≤ b→c", &[a, b]));
            }
            for c in alg.elements() {
                if i[a][m[b][c]] != m[i[a][b]][i[a][c]] {
                    out.push(diag("(1) a→(b∧c) = (a→b)∧(a→c)", &[a, b, c]));
                }
                if i[j[b][c]][a] != m[i[b][a]][i[c][a]] {
                    out.push(diag("(2) (b∨c)→a = (b→a)∧(c→a)", &[a, b, c]));
                }
                if !le(m[i[a][b]][i[b][c]], i[a][c]) {
                    out.push(diag("(5) (a→b)∧(b→c) ≤ a→c", &[a, b, c]));
                }
                if le(a, b) && !(le(i[c][a], i[c][b]) && le(i[b][c], i[a][c]) && i[a][b] == alg.top) {
                    out.push(diag("fact (1) monotonicity", &[a, b, c]));
                }
                if le(m[a][b], c) && !le(a, i[b][c]) {
                    out.push(diag("fact (2) a∧b ≤ c ⇒ a ≤ b→c", &[a, b, c]));
                }
            }
        }
    }
    out
}

/// Which clause of the product/residual proposition is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropClause {
    /// `(b∨c)·a ≤ b·a ∨ c·a`
    I,
    /// `a·(b·c) ≤ (a·b)·c`
    II,
    /// `a ≤ b ⇒ c·a ≤ c·b and a·c ≤ b·c`
    III,
    /// `a ≤ b ⇒ c→a ≤ c→b and b→c ≤ a→c`
    IV,
    /// `a ≤ b ⇒ a←c ≤ b←a and c←b ≤ c←a`; the first half is trivial (`b←a = ⊤`)
    VAsStated,
    /// `a ≤ b ⇒ a←c ≤ b←c and c←b ≤ c←a`, the usual monotonicity
    VStandard,
}

impl PropClause {
    pub const ALL: [PropClause; 6] =
        [PropClause::I, PropClause::II, PropClause::III, PropClause::IV, PropClause::VAsStated, PropClause::VStandard];
}

/// Witnesses `(a, b, c)` violating a clause; empty means it holds.
pub fn check_prop_clause(alg: &FiniteRba, clause: PropClause) -> Vec<[usize; 3]> {
    let (p, r, l, j) = (&alg.prod, &alg.rimp, &alg.limp, &alg.join);
    let le = |x, y| alg.le(x, y);
    let mut out = Vec::new();
    for a in alg.elements() {
        for b in alg.elements() {
            for c in alg.elements() {
                let ok = match clause {
                    PropClause::I => le(p[j[b][c]][a], j[p[b][a]][p[c][a]]),
                    PropClause::II => le(p[a][p[b][c]], p[p[a][b]][c]),
                    PropClause::III => !le(a, b) || (le(p[c][a], p[c][b]) && le(p[a][c], p[b][c])),
                    PropClause::IV => !le(a, b) || (le(r[c][a], r[c][b]) && le(r[b][c], r[a][c])),
                    PropClause::VAsStated => !le(a, b) || (le(l[a][c], l[b][a]) && le(l[c][b], l[c][a])),
                    PropClause::VStandard => !le(a, b) || (le(l[a][c], l[b][c]) && le(l[c][b], l[c][a])),
                };
                if !ok {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Elements `e` with `e·a = a·e = a` for all `a`.
pub fn units(alg: &FiniteRba) -> Vec<usize> {
    alg.elements().filter(|&e| alg.elements().all(|a| alg.prod[e][a] == a && alg.prod[a][e] == a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn chain2(prod: [[usize; 2]; 2]) -> FiniteRba {
        Lattice::chain(2).with_prod(prod.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| distributive_lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn residual_examples() {
        let alg = chain2([[0, 0], [0, 1]]);
        assert_eq!(residual_right(&alg, 0, 0), Ok(1));
        assert_eq!(residual_right(&alg, 1, 0), Ok(0));
        assert!((0..2).all(|a| residual_right(&alg, a, 1) == Ok(1)));
        // a·⊥ = ⊤ does not preserve the empty join
        let bad = chain2([[1, 1], [1, 1]]);
        assert!(residual_right(&bad, 0, 1).is_ok());
        assert!(residual_right(&bad, 0, 0).is_err());
        assert!(residual_left(&bad, 0, 1).is_err());
    }

    #[test]
    fn axiom_examples() {
        let one = Lattice::chain(1).with_prod(vec![vec![0]]);
        assert!(check_rba_axioms(&one).is_empty());
        assert!(check_rba_axioms(&chain2([[0, 0], [0, 1]])).is_empty());
        let diags = check_rba_axioms(&chain2([[1, 1], [1, 1]]));
        assert!(diags.iter().any(|d| d.condition.starts_with("w1") && d.witness == vec![0]));
    }

    #[test]
    fn eval_examples() {
        let alg = chain2([[0, 0], [0, 1]]);
        let a = |pairs: &[(&str, usize)]| pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        assert_eq!(eval_in_algebra(&alg, &a(&[]), &Formula::Top), Ok(1));
        assert_eq!(eval_in_algebra(&alg, &a(&[("p", 0)]), &parse_formula("p -> p").unwrap()), Ok(1));
        assert_eq!(eval_in_algebra(&alg, &a(&[("p", 1), ("q", 0)]), &parse_formula("p * q").unwrap()), Ok(0));
        assert_eq!(
            eval_in_algebra(&alg, &a(&[]), &parse_formula("p").unwrap()),
            Err(AlgebraError::MissingAtom("p".into()))
        );
        assert!(algebra_valid(&alg, &Formula::Top));
        assert!(algebra_valid(&alg, &parse_formula("p -> q -> p").unwrap()));
    }

    #[test]
    fn size_limit() {
        assert_eq!(enumerate_rbas(6).unwrap_err(), AlgebraError::SizeLimit(6));
        assert_eq!(enumerate_rbas(1).unwrap().len(), 1);
    }
}
