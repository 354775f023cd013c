//! Bounded backward proof search in the cut-free calculus.
//!
//! Invertible rules (`→R`, `←R`, `∧R`, `·L`, `∧L`, `∨L`) are applied eagerly
//! and do not count against the depth bound. Weakening is lazy: a branch
//! closes as soon as some leaf matches an axiom, and the `W` steps that
//! isolate that leaf are emitted afterwards. The non-invertible moves, in
//! the order they are tried:
//!
//! 1. `∨R1`, `∨R2`;
//! 2. `·R` at every `⊙` node, preorder (the rest is weakened away);
//! 3. `→L` / `←L` in cumulative form: for a `⊙` node `N` whose right (left)
//!    part contains the implication, `⊘C` copies `N`, the copy is weakened
//!    down to `Δ ⊙ (A→B)` and the rule fires, so `N` itself stays available;
//! 4. `⊙C` at every `⊙` node (metered);
//! 5. LJ profile only: `⊙C*` (metered), `⊙E`, `⊙A²`;
//! 6. top-imp profile only: a cut on `⊤→C` against the axiom `⊤→C ⇒ C`
//!    (metered).

use std::collections::HashMap;

use super::{
    at, check_proof, put, refute, with_succ, Profile, ProofTree, RuleId, SearchConfig, SearchReport, Star, Verdict,
};
use crate::syntax::{Formula, Path, Sequent, Side, Structure};

/// Search first, then look for a countermodel. A cheap refutation pass over
/// very small models runs before the search.
pub fn prove(s: &Sequent, cfg: &SearchConfig) -> Verdict {
    let quick = SearchConfig {
        countermodel_size: cfg.countermodel_size.min(4),
        algebra_size: cfg.algebra_size.min(3),
        ..cfg.clone()
    };
    if let Some(cm) = refute::refute(s, &quick) {
        return Verdict::Refuted(cm);
    }
    let (found, report) = search_only(s, cfg);
    if let Some(t) = found {
        return Verdict::Proved(t);
    }
    if let Some(cm) = refute::refute(s, cfg) {
        return Verdict::Refuted(cm);
    }
    Verdict::Unknown(report)
}

/// The search alone, with iterative deepening up to `cfg.depth_bound`.
/// Returned trees have been re-checked.
pub fn search_only(s: &Sequent, cfg: &SearchConfig) -> (Option<ProofTree>, SearchReport) {
    let mut sr = Searcher { cfg, failed: HashMap::new(), nodes: 0, limit_hit: false };
    let mut found = None;
    for depth in 0..=cfg.depth_bound {
        let mut stack = Vec::new();
        if let Some(t) = sr.search(s, depth, cfg.contraction_budget, &mut stack) {
            found = Some(t);
            break;
        }
        if sr.limit_hit {
            break;
        }
    }
    let found = found.filter(|t| check_proof(t, cfg.profile).is_ok());
    let report = SearchReport {
        depth_bound: cfg.depth_bound,
        contraction_budget: cfg.contraction_budget,
        countermodel_size: cfg.countermodel_size,
        nodes: sr.nodes,
        node_limit_hit: sr.limit_hit,
    };
    (found, report)
}

struct Searcher<'a> {
    cfg: &'a SearchConfig,
    /// (canonical sequent, budget) -> largest depth known to fail.
    failed: HashMap<(String, usize), usize>,
    nodes: usize,
    limit_hit: bool,
}

impl Searcher<'_> {
    fn search(&mut self, s: &Sequent, depth: usize, budget: usize, stack: &mut Vec<String>) -> Option<ProofTree> {
        self.nodes += 1;
        if self.nodes > self.cfg.node_limit {
            self.limit_hit = true;
            return None;
        }
        if let Some(t) = close(s, self.cfg.profile) {
            return Some(t);
        }
        if let Some((rule, path, prems)) = invertible(s) {
            let mut proofs = Vec::with_capacity(prems.len());
            for p in &prems {
                proofs.push(self.search(p, depth, budget, stack)?);
            }
            return Some(ProofTree::new(s.clone(), rule, path, proofs));
        }
        if depth == 0 {
            return None;
        }
        let key = canonical(s);
        if stack.contains(&key) {
            return None;
        }
        if self.failed.get(&(key.clone(), budget)).is_some_and(|&d| d >= depth) {
            return None;
        }
        stack.push(key.clone());
        let res = self.expand(s, depth - 1, budget, stack);
        stack.pop();
        if res.is_none() && !self.limit_hit {
            let e = self.failed.entry((key, budget)).or_insert(0);
            *e = (*e).max(depth);
        }
        res
    }

    fn all(
        &mut self,
        goals: &[Sequent],
        depth: usize,
        budget: usize,
        stack: &mut Vec<String>,
    ) -> Option<Vec<ProofTree>> {
        let mut out = Vec::with_capacity(goals.len());
        for g in goals {
            out.push(self.search(g, depth, budget, stack)?);
        }
        Some(out)
    }

    fn expand(&mut self, s: &Sequent, depth: usize, budget: usize, stack: &mut Vec<String>) -> Option<ProofTree> {
        let gamma = &s.antecedent;
        // 1. ∨R
        if let Formula::Or(a, b) = &s.succedent {
            for (rule, side) in [(RuleId::OrR1, a), (RuleId::OrR2, b)] {
                let g = with_succ(s, (**side).clone());
                if let Some(ps) = self.all(&[g], depth, budget, stack) {
                    return Some(ProofTree::new(s.clone(), rule, Path::root(), ps));
                }
            }
        }
        let prod_nodes: Vec<Path> =
            gamma.nodes().into_iter().filter(|(_, n)| matches!(n, Structure::OProd(..))).map(|(p, _)| p).collect();
        // 2. ·R
        if let Formula::Prod(a, b) = &s.succedent {
            for n in &prod_nodes {
                let node = gamma.at(n).unwrap();
                let (x, y) = node.children().unwrap();
                let goals = [Sequent::new(x.clone(), (**a).clone()), Sequent::new(y.clone(), (**b).clone())];
                if let Some(ps) = self.all(&goals, depth, budget, stack) {
                    let inner = ProofTree::new(
                        Sequent::new(node.clone(), s.succedent.clone()),
                        RuleId::ProdR,
                        Path::root(),
                        ps,
                    );
                    return Some(weaken(s, &Path::root(), n, inner));
                }
            }
        }
        // 3. →L and ←L, cumulative
        for n in &prod_nodes {
            let node = gamma.at(n).unwrap();
            let (x, y) = node.children().unwrap();
            for (r, f) in y.leaves() {
                let Formula::RImp(a, b) = f else { continue };
                let goals = [
                    Sequent::new(x.clone(), (**a).clone()),
                    put(s, n, Structure::omeet(Structure::Leaf((**b).clone()), node.clone())).unwrap(),
                ];
                if let Some(ps) = self.all(&goals, depth, budget, stack) {
                    return Some(cumulative(s, n, Side::R, &r, RuleId::RImpL, ps));
                }
            }
            for (r, f) in x.leaves() {
                let Formula::LImp(a, b) = f else { continue };
                let goals = [
                    put(s, n, Structure::omeet(Structure::Leaf((**a).clone()), node.clone())).unwrap(),
                    Sequent::new(y.clone(), (**b).clone()),
                ];
                if let Some(ps) = self.all(&goals, depth, budget, stack) {
                    return Some(cumulative(s, n, Side::L, &r, RuleId::LImpL, ps));
                }
            }
        }
        if budget == 0 {
            return self.lj_permutations(s, &prod_nodes, depth, budget, stack);
        }
        // 4. ⊙C
        for n in &prod_nodes {
            let node = gamma.at(n).unwrap();
            let (_, d) = node.children().unwrap();
            let g = put(s, n, Structure::oprod(node.clone(), d.clone())).unwrap();
            if let Some(ps) = self.all(&[g], depth, budget - 1, stack) {
                return Some(ProofTree::new(s.clone(), RuleId::OProdC, n.clone(), ps));
            }
        }
        // 5. LJ extras
        if self.cfg.profile == Profile::Lj {
            for (n, node) in gamma.nodes() {
                let g = put(s, &n, Structure::oprod(node.clone(), node.clone())).unwrap();
                if let Some(ps) = self.all(&[g], depth, budget - 1, stack) {
                    return Some(ProofTree::new(s.clone(), RuleId::OProdCStar, n, ps));
                }
            }
        }
        if let Some(t) = self.lj_permutations(s, &prod_nodes, depth, budget, stack) {
            return Some(t);
        }
        // 6. analytic cut on ⊤→C
        if self.cfg.profile == Profile::TopImp && s.succedent != Formula::Top {
            let tc = Formula::rimp(Formula::Top, s.succedent.clone());
            let g = with_succ(s, tc.clone());
            if let Some(mut ps) = self.all(&[g], depth, budget - 1, stack) {
                let ax = ProofTree::axiom(Sequent::new(Structure::Leaf(tc), s.succedent.clone()), RuleId::TopImpAxiom);
                ps.push(ax);
                return Some(ProofTree::new(s.clone(), RuleId::Cut, Path::root(), ps));
            }
        }
        None
    }

    fn lj_permutations(
        &mut self,
        s: &Sequent,
        prod_nodes: &[Path],
        depth: usize,
        budget: usize,
        stack: &mut Vec<String>,
    ) -> Option<ProofTree> {
        if self.cfg.profile != Profile::Lj {
            return None;
        }
        for n in prod_nodes {
            let node = s.antecedent.at(n).unwrap();
            let (x, y) = node.children().unwrap();
            let g = put(s, n, Structure::oprod(y.clone(), x.clone())).unwrap();
            if let Some(ps) = self.all(&[g], depth, budget, stack) {
                return Some(ProofTree::new(s.clone(), RuleId::OProdE, n.clone(), ps));
            }
            if let Structure::OProd(d1, d2) = x {
                let g =
                    put(s, n, Structure::oprod((**d1).clone(), Structure::oprod((**d2).clone(), y.clone()))).unwrap();
                if let Some(ps) = self.all(&[g], depth, budget, stack) {
                    return Some(ProofTree::new(s.clone(), RuleId::OProdA2, n.clone(), ps));
                }
            }
        }
        None
    }
}

/// Assembles a cumulative `→L` (`side = R`) or `←L` (`side = L`) at the
/// `⊙` node `n`, whose `side` child holds the implication at relative path
/// `r`. `ps` prove the two premises of the logical rule.
fn cumulative(s: &Sequent, n: &Path, side: Side, r: &Path, rule: RuleId, ps: Vec<ProofTree>) -> ProofTree {
    let node = at(s, n).unwrap().clone();
    let (x, y) = node.children().unwrap();
    let imp = node.child(side).unwrap().at(r).unwrap().clone();
    let copy = n.child(Side::L);
    let narrowed = match side {
        Side::R => Structure::oprod(x.clone(), imp),
        Side::L => Structure::oprod(imp, y.clone()),
    };
    let contracted = put(s, n, Structure::omeet(node.clone(), node.clone())).unwrap();
    let fired = put(s, n, Structure::omeet(narrowed, node.clone())).unwrap();
    let logical = ProofTree::new(fired, rule, copy.clone(), ps);
    let weakened = weaken(&contracted, &copy.child(side), r, logical);
    ProofTree::new(s.clone(), RuleId::OMeetC, n.clone(), vec![weakened])
}

/// Given `sub` proving the goal with the sub-structure at `at` cut down to
/// its part at relative path `keep`, derives the goal itself by a chain of
/// `W1`/`W2` steps at `at`.
pub(super) fn weaken(goal: &Sequent, at: &Path, keep: &Path, sub: ProofTree) -> ProofTree {
    let Some((&first, rest)) = keep.0.split_first() else {
        return sub;
    };
    let node = goal.antecedent.at(at).expect("weakening path inside the antecedent");
    let star = match node {
        Structure::OProd(..) => Star::Prod,
        Structure::OMeet(..) => Star::Meet,
        Structure::Leaf(_) => panic!("weakening path runs past a leaf"),
    };
    let rule = match first {
        Side::L => RuleId::W2(star),
        Side::R => RuleId::W1(star),
    };
    let next = put(goal, at, node.child(first).unwrap().clone()).unwrap();
    let above = weaken(&next, at, &Path(rest.to_vec()), sub);
    ProofTree::new(goal.clone(), rule, at.clone(), vec![above])
}

/// An axiom closing `s` after weakening down to one leaf, if any applies.
pub(super) fn close(s: &Sequent, profile: Profile) -> Option<ProofTree> {
    let leaves = s.antecedent.leaves();
    let c = &s.succedent;
    let pick = |p: &Path, f: &Formula, rule: RuleId| {
        let ax = ProofTree::axiom(Sequent::new(Structure::Leaf(f.clone()), c.clone()), rule);
        Some(weaken(s, &Path::root(), p, ax))
    };
    if let Some((p, f)) = leaves.iter().find(|(_, f)| *f == c) {
        return pick(p, f, RuleId::Id);
    }
    if let Some((p, f)) = leaves.iter().find(|(_, f)| **f == Formula::Bot) {
        return pick(p, f, RuleId::Bot);
    }
    if *c == Formula::Top {
        let (p, f) = &leaves[0];
        return pick(p, f, RuleId::Top);
    }
    if profile == Profile::TopImp {
        let want = Formula::rimp(Formula::Top, c.clone());
        if let Some((p, f)) = leaves.iter().find(|(_, f)| **f == want) {
            return pick(p, f, RuleId::TopImpAxiom);
        }
    }
    None
}

/// The first invertible rule that applies, with its premises.
fn invertible(s: &Sequent) -> Option<(RuleId, Path, Vec<Sequent>)> {
    let g = &s.antecedent;
    match &s.succedent {
        Formula::RImp(a, b) => {
            let prem = Sequent::new(Structure::oprod(Structure::Leaf((**a).clone()), g.clone()), (**b).clone());
            return Some((RuleId::RImpR, Path::root(), vec![prem]));
        }
        Formula::LImp(a, b) => {
            let prem = Sequent::new(Structure::oprod(g.clone(), Structure::Leaf((**b).clone())), (**a).clone());
            return Some((RuleId::LImpR, Path::root(), vec![prem]));
        }
        Formula::And(a, b) => {
            let prems = vec![with_succ(s, (**a).clone()), with_succ(s, (**b).clone())];
            return Some((RuleId::AndR, Path::root(), prems));
        }
        _ => {}
    }
    for (p, f) in g.leaves() {
        let lf = |x: &Formula| Structure::Leaf(x.clone());
        match f {
            Formula::Prod(a, b) => {
                return Some((RuleId::ProdL, p.clone(), vec![put(s, &p, Structure::oprod(lf(a), lf(b)))?]));
            }
            Formula::And(a, b) => {
                return Some((RuleId::AndL, p.clone(), vec![put(s, &p, Structure::omeet(lf(a), lf(b)))?]));
            }
            Formula::Or(a, b) => {
                return Some((RuleId::OrL, p.clone(), vec![put(s, &p, lf(a))?, put(s, &p, lf(b))?]));
            }
            _ => {}
        }
    }
    None
}

/// Loop-check key: `⊘`-aggregates flattened to sorted sets (licensed by
/// `⊘E`, `⊘A1`, `⊘A2`, `⊘C` and weakening), `⊙` kept as an ordered tree.
pub(super) fn canonical(s: &Sequent) -> String {
    let mut out = String::new();
    canon(&s.antecedent, &mut out);
    out.push_str(" |- ");
    out.push_str(&s.succedent.to_string());
    out
}

fn canon(s: &Structure, out: &mut String) {
    match s {
        Structure::Leaf(f) => {
            out.push('<');
            out.push_str(&f.to_string());
            out.push('>');
        }
        Structure::OProd(a, b) => {
            out.push('(');
            canon(a, out);
            out.push(',');
            canon(b, out);
            out.push(')');
        }
        Structure::OMeet(..) => {
            let mut parts = Vec::new();
            meet_parts(s, &mut parts);
            let mut keys: Vec<String> = parts
                .into_iter()
                .map(|p| {
                    let mut k = String::new();
                    canon(p, &mut k);
                    k
                })
                .collect();
            keys.sort();
            keys.dedup();
            if keys.len() == 1 {
                out.push_str(&keys[0]);
            } else {
                out.push('[');
                out.push_str(&keys.join(";"));
                out.push(']');
            }
        }
    }
}

fn meet_parts<'a>(s: &'a Structure, out: &mut Vec<&'a Structure>) {
    match s {
        Structure::OMeet(a, b) => {
            meet_parts(a, out);
            meet_parts(b, out);
        }
        _ => out.push(s),
    }
}
