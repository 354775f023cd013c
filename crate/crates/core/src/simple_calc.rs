//! The algebraic systems `S_RBL` and `S*_RBL` over simple sequents `A ⇒ B`.
//!
//! `S*_RBL` replaces the axioms Wl, Wr and RC by Top1 (`⊤ ⇒ A→A`),
//! Top2 (`A ⇒ ⊤→A`) and Tr (`(A→B)∧(B→C) ⇒ A→C`). `Top` is the axiom
//! `A ⇒ ⊤`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::sexpr::{parse_sexpr, Sexpr};
use crate::syntax::{parse_simple_sequent, Formula, SimpleSequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SimpleRule {
    Id,
    Bot,
    Top,
    Cut,
    D,
    Wl,
    Wr,
    RC,
    R1,
    R2,
    R3,
    R4,
    AndL1,
    AndL2,
    AndR,
    OrL,
    OrR1,
    OrR2,
    Top1,
    Top2,
    Tr,
}

impl SimpleRule {
    pub const ALL: [SimpleRule; 21] = [
        SimpleRule::Id,
        SimpleRule::Bot,
        SimpleRule::Top,
        SimpleRule::Cut,
        SimpleRule::D,
        SimpleRule::Wl,
        SimpleRule::Wr,
        SimpleRule::RC,
        SimpleRule::R1,
        SimpleRule::R2,
        SimpleRule::R3,
        SimpleRule::R4,
        SimpleRule::AndL1,
        SimpleRule::AndL2,
        SimpleRule::AndR,
        SimpleRule::OrL,
        SimpleRule::OrR1,
        SimpleRule::OrR2,
        SimpleRule::Top1,
        SimpleRule::Top2,
        SimpleRule::Tr,
    ];

    pub fn arity(self) -> usize {
        use SimpleRule::*;
        match self {
            Id | Bot | Top | D | Wl | Wr | RC | Top1 | Top2 | Tr => 0,
            R1 | R2 | R3 | R4 | AndL1 | AndL2 | OrR1 | OrR2 => 1,
            Cut | AndR | OrL => 2,
        }
    }

    pub fn name(self) -> &'static str {
        use SimpleRule::*;
        match self {
            Id => "Id",
            Bot => "Bot",
            Top => "Top",
            Cut => "Cut",
            D => "D",
            Wl => "Wl",
            Wr => "Wr",
            RC => "RC",
            R1 => "R1",
            R2 => "R2",
            R3 => "R3",
            R4 => "R4",
            AndL1 => "AndL1",
            AndL2 => "AndL2",
            AndR => "AndR",
            OrL => "OrL",
            OrR1 => "OrR1",
            OrR2 => "OrR2",
            Top1 => "Top1",
            Top2 => "Top2",
            Tr => "Tr",
        }
    }
}

impl fmt::Display for SimpleRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimpleRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SimpleRule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SystemId {
    SRBL,
    SStarRBL,
}

impl SystemId {
    pub fn admits(self, rule: SimpleRule) -> bool {
        use SimpleRule::*;
        match rule {
            Wl | Wr | RC => self == SystemId::SRBL,
            Top1 | Top2 | Tr => self == SystemId::SStarRBL,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleDerivation {
    pub conclusion: SimpleSequent,
    pub rule: SimpleRule,
    pub premises: Vec<SimpleDerivation>,
}

/// A failing node, addressed by premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at node {path:?} ({rule}): {reason}")]
pub struct SimpleCheckError {
    pub path: Vec<usize>,
    pub rule: SimpleRule,
    pub reason: String,
}

fn seq(lhs: Formula, rhs: Formula) -> SimpleSequent {
    SimpleSequent::new(lhs, rhs)
}

/// Checks one inference; `Err` carries the expected schema.
fn check_node(rule: SimpleRule, c: &SimpleSequent, ps: &[&SimpleSequent]) -> Result<(), String> {
    use Formula as F;
    use SimpleRule::*;
    let (l, r) = (&c.lhs, &c.rhs);
    let ok = match rule {
        Id => l == r,
        Bot => *l == F::Bot,
        Top => *r == F::Top,
        D => match (l, r) {
            (F::And(a, bc), F::Or(ab, ac)) => match &**bc {
                F::Or(b, cc) => {
                    **ab == F::and((**a).clone(), (**b).clone()) && **ac == F::and((**a).clone(), (**cc).clone())
                }
                _ => false,
            },
            _ => false,
        },
        Wl => matches!(l, F::Prod(a, t) if **t == F::Top && **a == *r),
        Wr => matches!(l, F::Prod(t, a) if **t == F::Top && **a == *r),
        RC => matches!(r, F::Prod(ab, b) if **ab == *l && matches!(l, F::Prod(_, b2) if b2 == b)),
        Top1 => *l == F::Top && matches!(r, F::RImp(a, b) if a == b),
        Top2 => matches!(r, F::RImp(t, a) if **t == F::Top && **a == *l),
        Tr => match (l, r) {
            (F::And(ab, bc), F::RImp(a2, c2)) => match (&**ab, &**bc) {
                (F::RImp(a, b), F::RImp(b2, c)) => b == b2 && a == a2 && c == c2,
                _ => false,
            },
            _ => false,
        },
        Cut => ps[0].lhs == *l && ps[1].rhs == *r && ps[0].rhs == ps[1].lhs,
        // A·B ⇒ C / B ⇒ A→C
        R1 => matches!((&ps[0].lhs, r), (F::Prod(a, b), F::RImp(a2, c)) if a == a2 && **b == *l && **c == ps[0].rhs),
        // B ⇒ A→C / A·B ⇒ C
        R2 => matches!((l, &ps[0].rhs), (F::Prod(a, b), F::RImp(a2, c)) if a == a2 && **b == ps[0].lhs && **c == *r),
        // A·B ⇒ C / A ⇒ C←B
        R3 => matches!((&ps[0].lhs, r), (F::Prod(a, b), F::LImp(c, b2)) if b == b2 && **a == *l && **c == ps[0].rhs),
        // A ⇒ C←B / A·B ⇒ C
        R4 => matches!((l, &ps[0].rhs), (F::Prod(a, b), F::LImp(c, b2)) if b == b2 && **a == ps[0].lhs && **c == *r),
        AndL1 => matches!(l, F::And(a, _) if **a == ps[0].lhs) && *r == ps[0].rhs,
        AndL2 => matches!(l, F::And(_, a) if **a == ps[0].lhs) && *r == ps[0].rhs,
        AndR => matches!(r, F::And(a, b) if **a == ps[0].rhs && **b == ps[1].rhs) && *l == ps[0].lhs && *l == ps[1].lhs,
        OrL => matches!(l, F::Or(a, b) if **a == ps[0].lhs && **b == ps[1].lhs) && *r == ps[0].rhs && *r == ps[1].rhs,
        OrR1 => matches!(r, F::Or(a, _) if **a == ps[0].rhs) && *l == ps[0].lhs,
        OrR2 => matches!(r, F::Or(_, a) if **a == ps[0].rhs) && *l == ps[0].lhs,
    };
    if ok {
        return Ok(());
    }
    let schema = match rule {
        Id => "A ⇒ A",
        Bot => "⊥ ⇒ A",
        Top => "A ⇒ ⊤",
        D => "A∧(B∨C) ⇒ (A∧B)∨(A∧C)",
        Wl => "A·⊤ ⇒ A",
        Wr => "⊤·A ⇒ A",
        RC => "A·B ⇒ (A·B)·B",
        Top1 => "⊤ ⇒ A→A",
        Top2 => "A ⇒ ⊤→A",
        Tr => "(A→B)∧(B→C) ⇒ A→C",
        Cut => "A ⇒ B, B ⇒ C / A ⇒ C",
        R1 => "A·B ⇒ C / B ⇒ A→C",
        R2 => "B ⇒ A→C / A·B ⇒ C",
        R3 => "A·B ⇒ C / A ⇒ C←B",
        R4 => "A ⇒ C←B / A·B ⇒ C",
        AndL1 => "A1 ⇒ B / A1∧A2 ⇒ B",
        AndL2 => "A2 ⇒ B / A1∧A2 ⇒ B",
        AndR => "C ⇒ A, C ⇒ B / C ⇒ A∧B",
        OrL => "A ⇒ C, B ⇒ C / A∨B ⇒ C",
        OrR1 => "C ⇒ A1 / C ⇒ A1∨A2",
        OrR2 => "C ⇒ A2 / C ⇒ A1∨A2",
    };
    let found: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    Err(format!("expected {schema}; found premises [{}] and conclusion {c}", found.join("; ")))
}

fn check_at(d: &SimpleDerivation, sys: SystemId, path: &mut Vec<usize>) -> Result<(), SimpleCheckError> {
    let fail = |reason: String, path: &Vec<usize>| Err(SimpleCheckError { path: path.clone(), rule: d.rule, reason });
    if !sys.admits(d.rule) {
        return fail(format!("rule {} is not part of {sys:?}", d.rule), path);
    }
    if d.premises.len() != d.rule.arity() {
        return fail(format!("{} premises given, {} expected", d.premises.len(), d.rule.arity()), path);
    }
    let ps: Vec<&SimpleSequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    if let Err(reason) = check_node(d.rule, &d.conclusion, &ps) {
        return fail(reason, path);
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_at(p, sys, path)?;
        path.pop();
    }
    Ok(())
}

/// Checks every node against the rules of `sys`.
pub fn check_simple(d: &SimpleDerivation, sys: SystemId) -> Result<(), SimpleCheckError> {
    check_at(d, sys, &mut Vec::new())
}

impl SimpleDerivation {
    pub fn node(rule: SimpleRule, conclusion: SimpleSequent, premises: Vec<SimpleDerivation>) -> SimpleDerivation {
        SimpleDerivation { conclusion, rule, premises }
    }

    fn axiom(rule: SimpleRule, lhs: Formula, rhs: Formula) -> SimpleDerivation {
        SimpleDerivation::node(rule, seq(lhs, rhs), vec![])
    }

    pub fn lhs(&self) -> &Formula {
        &self.conclusion.lhs
    }

    pub fn rhs(&self) -> &Formula {
        &self.conclusion.rhs
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    /// Every rule used anywhere in the tree.
    pub fn rules(&self) -> Vec<SimpleRule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }

    pub fn to_sexpr(&self) -> Sexpr {
        let mut xs = vec![Sexpr::Atom(self.rule.name().into()), Sexpr::Str(self.conclusion.to_string())];
        xs.extend(self.premises.iter().map(|p| p.to_sexpr()));
        Sexpr::List(xs)
    }

    pub fn from_sexpr(x: &Sexpr) -> Result<SimpleDerivation, String> {
        let xs = x.as_list().ok_or("expected `(rule \"conclusion\" premise...)`")?;
        let rule: SimpleRule = xs.first().and_then(|r| r.as_atom()).ok_or("missing rule name")?.parse()?;
        let text = xs.get(1).and_then(|c| c.as_str()).ok_or("missing quoted conclusion")?;
        let conclusion = parse_simple_sequent(text).map_err(|e| format!("in `{text}`: {e}"))?;
        let premises = xs[2..].iter().map(SimpleDerivation::from_sexpr).collect::<Result<_, _>>()?;
        Ok(SimpleDerivation { conclusion, rule, premises })
    }

    pub fn parse(text: &str) -> Result<SimpleDerivation, String> {
        SimpleDerivation::from_sexpr(&parse_sexpr(text).map_err(|e| e.to_string())?)
    }
}

/// Builders that compute conclusions from premises. They do not check;
/// run [`check_simple`] on the result.
pub mod build {
    use super::*;
    use SimpleRule::*;

    pub fn id(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Id, a.clone(), a)
    }
    pub fn bot(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Bot, Formula::Bot, a)
    }
    pub fn top(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Top, a, Formula::Top)
    }
    pub fn d(a: Formula, b: Formula, c: Formula) -> SimpleDerivation {
        let lhs = Formula::and(a.clone(), Formula::or(b.clone(), c.clone()));
        SimpleDerivation::axiom(D, lhs, Formula::or(Formula::and(a.clone(), b), Formula::and(a, c)))
    }
    pub fn wl(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Wl, Formula::prod(a.clone(), Formula::Top), a)
    }
    pub fn wr(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Wr, Formula::prod(Formula::Top, a.clone()), a)
    }
    pub fn rc(a: Formula, b: Formula) -> SimpleDerivation {
        let ab = Formula::prod(a, b.clone());
        SimpleDerivation::axiom(RC, ab.clone(), Formula::prod(ab, b))
    }
    pub fn top1(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Top1, Formula::Top, Formula::rimp(a.clone(), a))
    }
    pub fn top2(a: Formula) -> SimpleDerivation {
        SimpleDerivation::axiom(Top2, a.clone(), Formula::rimp(Formula::Top, a))
    }
    pub fn tr(a: Formula, b: Formula, c: Formula) -> SimpleDerivation {
        let lhs = Formula::and(Formula::rimp(a.clone(), b.clone()), Formula::rimp(b, c.clone()));
        SimpleDerivation::axiom(Tr, lhs, Formula::rimp(a, c))
    }
    pub fn cut(p: SimpleDerivation, q: SimpleDerivation) -> SimpleDerivation {
        let c = seq(p.lhs().clone(), q.rhs().clone());
        SimpleDerivation::node(Cut, c, vec![p, q])
    }
    fn split(f: &Formula) -> (Formula, Formula) {
        f.children().map(|(a, b)| (a.clone(), b.clone())).unwrap_or((Formula::Bot, Formula::Bot))
    }
    /// `A·B ⇒ C / B ⇒ A→C`
    pub fn r1(p: SimpleDerivation) -> SimpleDerivation {
        let (a, b) = split(p.lhs());
        let c = seq(b, Formula::rimp(a, p.rhs().clone()));
        SimpleDerivation::node(R1, c, vec![p])
    }
    /// `B ⇒ A→C / A·B ⇒ C`
    pub fn r2(p: SimpleDerivation) -> SimpleDerivation {
        let (a, c) = split(p.rhs());
        let concl = seq(Formula::prod(a, p.lhs().clone()), c);
        SimpleDerivation::node(R2, concl, vec![p])
    }
    /// `A·B ⇒ C / A ⇒ C←B`
    pub fn r3(p: SimpleDerivation) -> SimpleDerivation {
        let (a, b) = split(p.lhs());
        let c = seq(a, Formula::limp(p.rhs().clone(), b));
        SimpleDerivation::node(R3, c, vec![p])
    }
    /// `A ⇒ C←B / A·B ⇒ C`
    pub fn r4(p: SimpleDerivation) -> SimpleDerivation {
        let (c, b) = split(p.rhs());
        let concl = seq(Formula::prod(p.lhs().clone(), b), c);
        SimpleDerivation::node(R4, concl, vec![p])
    }
    pub fn and_l1(p: SimpleDerivation, other: Formula) -> SimpleDerivation {
        let c = seq(Formula::and(p.lhs().clone(), other), p.rhs().clone());
        SimpleDerivation::node(AndL1, c, vec![p])
    }
    pub fn and_l2(other: Formula, p: SimpleDerivation) -> SimpleDerivation {
        let c = seq(Formula::and(other, p.lhs().clone()), p.rhs().clone());
        SimpleDerivation::node(AndL2, c, vec![p])
    }
    pub fn and_r(p: SimpleDerivation, q: SimpleDerivation) -> SimpleDerivation {
        let c = seq(p.lhs().clone(), Formula::and(p.rhs().clone(), q.rhs().clone()));
        SimpleDerivation::node(AndR, c, vec![p, q])
    }
    pub fn or_l(p: SimpleDerivation, q: SimpleDerivation) -> SimpleDerivation {
        let c = seq(Formula::or(p.lhs().clone(), q.lhs().clone()), p.rhs().clone());
        SimpleDerivation::node(OrL, c, vec![p, q])
    }
    pub fn or_r1(p: SimpleDerivation, other: Formula) -> SimpleDerivation {
        let c = seq(p.lhs().clone(), Formula::or(p.rhs().clone(), other));
        SimpleDerivation::node(OrR1, c, vec![p])
    }
    pub fn or_r2(other: Formula, p: SimpleDerivation) -> SimpleDerivation {
        let c = seq(p.lhs().clone(), Formula::or(other, p.rhs().clone()));
        SimpleDerivation::node(OrR2, c, vec![p])
    }
}

/// From a derivation of `D ⇒ B`, derives `B→C ⇒ D→C` (antitonicity of `→`
/// in its first argument) using residuation and cut only.
pub fn antitone(d_to_b: SimpleDerivation, c: Formula) -> SimpleDerivation {
    use build::*;
    let b = d_to_b.rhs().clone();
    let bc = Formula::rimp(b, c);
    // B·(B→C) ⇒ C, then B ⇒ C←(B→C)
    let b_le = r3(r2(id(bc)));
    r1(r4(cut(d_to_b, b_le)))
}

/// The six constructions showing `S_RBL` and `S*_RBL` equivalent, at the
/// atoms `a`, `b`, `c`. The first three are `S_RBL` derivations of Top1,
/// Top2 and Tr; the last three are `S*_RBL` derivations of Wl, Wr and RC.
pub fn equivalence_witnesses() -> Vec<(SystemId, SimpleDerivation)> {
    use build::*;
    let (a, b, c) = (Formula::prop("a"), Formula::prop("b"), Formula::prop("c"));
    let ab_imp = Formula::rimp(a.clone(), b.clone());
    let bc_imp = Formula::rimp(b.clone(), c.clone());
    let x = Formula::and(ab_imp.clone(), bc_imp.clone());

    let top1_from_wl = r1(wl(a.clone()));
    let top2_from_wr = r1(wr(a.clone()));

    // X = (a→b)∧(b→c) and D = a·X; RC gives D ⇒ D·X, and D·X ⇒ c
    let d_to_b = r2(and_l1(id(ab_imp.clone()), bc_imp.clone()));
    let x_to_dc = cut(and_l2(ab_imp, id(bc_imp)), antitone(d_to_b, c.clone()));
    let dx_to_c = r2(x_to_dc);
    let tr_from_rc = r1(cut(rc(a.clone(), x.clone()), dx_to_c));

    let wl_from_top1 = r2(top1(a.clone()));
    let wr_from_top2 = r2(top2(a.clone()));

    let ab = Formula::prod(a.clone(), b.clone());
    let abb = Formula::prod(ab.clone(), b.clone());
    let both = and_r(r1(id(ab.clone())), r1(id(abb.clone())));
    let rc_from_tr = r2(cut(both, tr(a.clone(), ab, abb)));

    vec![
        (SystemId::SRBL, top1_from_wl),
        (SystemId::SRBL, top2_from_wr),
        (SystemId::SRBL, tr_from_rc),
        (SystemId::SStarRBL, wl_from_top1),
        (SystemId::SStarRBL, wr_from_top2),
        (SystemId::SStarRBL, rc_from_tr),
    ]
}
