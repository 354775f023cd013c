//! Corpora and helpers shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbl_core::algebra::{check_rba_axioms, enumerate_rbas};
use rbl_core::kripke::{models_of_size, BplModel};
use rbl_core::lrbl::{search_only, ProofTree, RuleId, SearchConfig};
use rbl_core::simple_calc::{antitone, build::*, equivalence_witnesses, SimpleDerivation, SystemId};
use rbl_core::{parse_formula, parse_sequent, Formula, Path, Sequent, SimpleSequent};

pub fn f(text: &str) -> Formula {
    parse_formula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn top_seq(a: Formula) -> Sequent {
    Sequent::new(Formula::Top.into(), a)
}

/// BPL formulas of depth ≤ 3 over `p`, `q`, `⊥`, `⊤`. `∧` and `∨` are
/// generated for unordered pairs only; at depth 3 one child has depth 2.
pub fn bpl_corpus() -> Vec<Formula> {
    let leaves = vec![Formula::prop("p"), Formula::prop("q"), Formula::Bot, Formula::Top];
    let grow = |xs: &[Formula], keep: &dyn Fn(&Formula, &Formula) -> bool| {
        let mut out = Vec::new();
        for (i, a) in xs.iter().enumerate() {
            for (j, b) in xs.iter().enumerate() {
                if !keep(a, b) {
                    continue;
                }
                out.push(Formula::rimp(a.clone(), b.clone()));
                if i <= j {
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b.clone()));
                }
            }
        }
        out
    };
    let mut d2 = leaves.clone();
    d2.extend(grow(&leaves, &|_, _| true));
    let mut all = d2.clone();
    all.extend(grow(&d2, &|a, b| a.depth() == 2 || b.depth() == 2));
    all
}

/// Every BPL formula of depth ≤ 3 over `p`, `q`, `⊥`, `⊤`, ordered pairs included.
pub fn all_bpl_formulas() -> Vec<Formula> {
    let leaves = vec![Formula::prop("p"), Formula::prop("q"), Formula::Bot, Formula::Top];
    let grow = |xs: &[Formula], keep: &dyn Fn(&Formula, &Formula) -> bool| {
        let mut out = Vec::new();
        for a in xs {
            for b in xs.iter().filter(|b| keep(a, b)) {
                out.push(Formula::rimp(a.clone(), b.clone()));
                out.push(Formula::and(a.clone(), b.clone()));
                out.push(Formula::or(a.clone(), b.clone()));
            }
        }
        out
    };
    let mut d2 = leaves.clone();
    d2.extend(grow(&leaves, &|_, _| true));
    let mut all = d2.clone();
    all.extend(grow(&d2, &|a, b| a.depth() == 2 || b.depth() == 2));
    all
}

/// Every transitive persistent model with at most `n` worlds over `p`, `q`.
pub fn small_models(n: usize) -> Vec<BplModel> {
    let atoms = ["p".into(), "q".into()];
    (1..=n).flat_map(|k| models_of_size(k, 2)).map(|cm| cm.to_model(&atoms)).collect()
}

fn subst_formula(x: &Formula, s: &BTreeMap<&str, Formula>) -> Formula {
    let go = |y: &Formula| subst_formula(y, s);
    match x {
        Formula::Prop(p) => s.get(&**p).cloned().unwrap_or_else(|| x.clone()),
        Formula::Bot | Formula::Top => x.clone(),
        Formula::And(a, b) => Formula::and(go(a), go(b)),
        Formula::Or(a, b) => Formula::or(go(a), go(b)),
        Formula::Prod(a, b) => Formula::prod(go(a), go(b)),
        Formula::RImp(a, b) => Formula::rimp(go(a), go(b)),
        Formula::LImp(a, b) => Formula::limp(go(a), go(b)),
    }
}

/// Rules are schematic, so substituting into every node keeps a derivation valid.
pub fn subst_derivation(d: &SimpleDerivation, s: &BTreeMap<&str, Formula>) -> SimpleDerivation {
    let c = SimpleSequent::new(subst_formula(&d.conclusion.lhs, s), subst_formula(&d.conclusion.rhs, s));
    SimpleDerivation::node(d.rule, c, d.premises.iter().map(|p| subst_derivation(p, s)).collect())
}

/// `A ⇒ B` gives `A·C ⇒ B·C`.
fn mono_left(d: SimpleDerivation, c: Formula) -> SimpleDerivation {
    let bc = Formula::prod(d.rhs().clone(), c);
    r4(cut(d, r3(id(bc))))
}

/// `A ⇒ B` gives `C·A ⇒ C·B`.
fn mono_right(c: Formula, d: SimpleDerivation) -> SimpleDerivation {
    let cb = Formula::prod(c, d.rhs().clone());
    r2(cut(d, r1(id(cb))))
}

/// `A ⇒ B` gives `C→A ⇒ C→B`.
fn mono_imp(c: Formula, d: SimpleDerivation) -> SimpleDerivation {
    let ca = Formula::rimp(c, d.lhs().clone());
    r1(cut(r2(id(ca)), d))
}

/// Named derivations with the system they check in. The six equivalence
/// witnesses come first, raw and at two substitutions into `p`, `q`.
/// Every conclusion is `←`-free; intermediate steps may use `←`.
pub fn sstar_corpus() -> Vec<(String, SystemId, SimpleDerivation)> {
    let mut out = Vec::new();
    let substs: [BTreeMap<&str, Formula>; 2] = [
        [("a", f("p")), ("b", f("q")), ("c", f("p"))].into_iter().collect(),
        [("a", f("q & p")), ("b", f("p -> q")), ("c", f("p | q"))].into_iter().collect(),
    ];
    for (i, (sys, d)) in equivalence_witnesses().into_iter().enumerate() {
        for (k, s) in substs.iter().enumerate() {
            out.push((format!("witness{i}/subst{k}"), sys, subst_derivation(&d, s)));
        }
        out.push((format!("witness{i}"), sys, d));
    }

    let (p, q) = (f("p"), f("q"));
    let pq = f("p -> q");
    let hand: Vec<(&str, SimpleDerivation)> = vec![
        ("top1", top1(p.clone())),
        ("top2", top2(pq.clone())),
        ("tr", tr(p.clone(), q.clone(), p.clone())),
        ("unit right", r2(top1(p.clone()))),
        ("unit left", r2(top2(q.clone()))),
        ("modus ponens", r2(id(pq.clone()))),
        ("pairing", r1(id(f("p * q")))),
        ("left residual round trip", r4(r3(id(f("p * q"))))),
        ("distribution", d(p.clone(), q.clone(), f("p & q"))),
        ("meet commutes", and_r(and_l2(p.clone(), id(q.clone())), and_l1(id(p.clone()), q.clone()))),
        ("join commutes", or_l(or_r2(q.clone(), id(p.clone())), or_r1(id(q.clone()), p.clone()))),
        ("bottom", bot(pq.clone())),
        ("top", top(f("p * q"))),
        ("antitone", antitone(and_l1(id(p.clone()), q.clone()), q.clone())),
        ("top1 or", or_r1(top1(p.clone()), q.clone())),
        ("tr through implication", tr(q.clone(), pq.clone(), q.clone())),
        ("tr bot", tr(p.clone(), q.clone(), Formula::Bot)),
        ("product monotone left", mono_left(and_l1(id(p.clone()), q.clone()), q.clone())),
        ("product monotone right", mono_right(p.clone(), and_l2(p.clone(), id(q.clone())))),
        ("implication monotone", mono_imp(p.clone(), or_r1(id(q.clone()), p.clone()))),
        ("top1 on implication", top1(pq.clone())),
        ("top1 twice", and_r(top1(p.clone()), top1(q.clone()))),
        ("top product of identity", r2(top2(f("p -> p")))),
        ("weakening implication", r1(cut(mono_left(top(q.clone()), p.clone()), r2(top2(p.clone()))))),
        ("product drops right", cut(mono_right(p.clone(), top(q.clone())), r2(top1(p.clone())))),
        ("meet with top1", and_l1(top1(p.clone()), q.clone())),
        (
            "distribute then join",
            cut(
                d(p.clone(), q.clone(), Formula::Bot),
                or_l(and_l2(p.clone(), id(q.clone())), and_l2(p.clone(), bot(q.clone()))),
            ),
        ),
        ("tr on products", tr(f("p * q"), p.clone(), f("q | p"))),
        ("top2 on meet", top2(f("p & q"))),
        ("modus ponens in context", mono_left(r2(id(pq.clone())), p.clone())),
    ];
    out.extend(hand.into_iter().map(|(n, d)| (n.to_string(), SystemId::SStarRBL, d)));
    out
}

fn proof(text: &str) -> ProofTree {
    let s = parse_sequent(text).unwrap();
    search_only(&s, &SearchConfig::default()).0.unwrap_or_else(|| panic!("no proof of {text}"))
}

fn path(text: &str) -> Path {
    Path::parse(text).unwrap()
}

/// A mix of `l` into `r` at the given leaf occurrences (`Cut` for one).
pub fn mix_node(l: ProofTree, r: ProofTree, occs: &[&str]) -> ProofTree {
    let mut g = r.conclusion.antecedent.clone();
    for o in occs {
        g = g.replace(&path(o), l.conclusion.antecedent.clone()).expect("occurrence");
    }
    let c = Sequent::new(g, r.conclusion.succedent.clone());
    match occs {
        [o] => ProofTree::new(c, RuleId::Cut, path(o), vec![l, r]),
        _ => ProofTree::new(c, RuleId::Mix, Path::root(), vec![l, r]),
    }
}

/// Proofs with `Cut`/`Mix` nodes. The first five have the mix formula
/// principal on both sides, for `·`, `→`, `←`, `∧` and `∨`.
pub fn mix_corpus() -> Vec<(String, ProofTree)> {
    let c = |l: &str, r: &str, at: &str| mix_node(proof(l), proof(r), &[at]);
    let mut out = vec![
        ("principal product", c("q , p |- q * p", "(q * p) ; s |- q * top", "l")),
        ("principal right residual", c("s |- q -> s", "q , (q -> s) |- s", "r")),
        ("principal left residual", c("s |- s <- q", "(s <- q) , q |- s", "l")),
        ("principal meet", c("p ; q |- q & p", "(q & p) , top |- p", "l")),
        ("principal join", c("p |- q | p", "q | p |- p | q", ".")),
        ("principal join left", c("p |- p | q", "p | q |- q | p", ".")),
        ("principal meet right", c("p ; q |- p & q", "p & q |- q", ".")),
        ("principal product in context", c("p , q |- p * q", "r , (p * q) |- r * (p * q)", "r")),
        ("principal residual with product", c("r |- p -> (p * r)", "p , (p -> (p * r)) |- p * r", "r")),
        ("principal residual weakened", c("s ; t |- q -> s", "q , (q -> s) |- s", "r")),
        ("left residual deep", c("s |- s <- q", "((s <- q) , q) ; r |- s", "ll")),
        ("top mix", c("p |- top", "top , q |- q", "l")),
        ("top into top", c("p |- top", "top |- top", ".")),
        ("bot mix", c("bot , p |- bot", "bot |- r", ".")),
        ("atom from meet", c("p & q |- p", "p , (p -> q) |- q", "l")),
        ("atom into residual premise", c("p & r |- p", "p , (p -> q) |- q", "l")),
        ("atom non-principal", c("p ; q |- p", "p , r |- p * r", "l")),
        ("identity left", c("p * q |- p * q", "(p * q) , r |- r", "l")),
    ]
    .into_iter()
    .map(|(n, t)| (n.to_string(), t))
    .collect::<Vec<_>>();

    let twice = |l: &str, r: &str, occs: &[&str]| mix_node(proof(l), proof(r), occs);
    out.push(("mix twice meet".into(), twice("q ; q |- q & q", "(q & q) , (q & q) |- q", &["l", "r"])));
    out.push(("mix twice join".into(), twice("p |- p | q", "(p | q) ; (p | q) |- p | q", &["l", "r"])));

    // a cut whose left premise is itself a cut
    let inner = c("p ; q |- p & q", "p & q |- q", ".");
    out.push(("nested left".into(), mix_node(inner, proof("q , (q -> s) |- s"), &["l"])));
    // and one whose right premise is a cut
    let inner = c("s |- q -> s", "q , (q -> s) |- s", "r");
    out.push(("nested right".into(), mix_node(proof("s ; t |- s"), inner, &["r"])));
    out
}

/// Corrupts one product entry per trial; the corrupted table must fail an
/// axiom unless it happens to be a valid RBA again.
pub fn mutation_trial(seed: u64, trials: usize) -> (usize, usize) {
    let algs: Vec<_> = enumerate_rbas(4).unwrap().into_iter().filter(|a| a.size > 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut caught, mut still_valid) = (0, 0);
    for _ in 0..trials {
        let alg = &algs[rng.gen_range(0..algs.len())];
        let (a, b) = (rng.gen_range(0..alg.size), rng.gen_range(0..alg.size));
        let old = alg.prod[a][b];
        let new = (old + rng.gen_range(1..alg.size)) % alg.size;
        let mut prod = alg.prod.clone();
        prod[a][b] = new;
        let mutant = alg.lattice().with_prod(prod);
        if check_rba_axioms(&mutant).is_empty() {
            still_valid += 1;
        } else {
            caught += 1;
        }
    }
    (caught, still_valid)
}
