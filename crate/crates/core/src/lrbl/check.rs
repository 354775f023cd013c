//! Schema matching for every rule at its recorded hole address.

use thiserror::Error;

use super::{at, put, with_succ, Profile, ProofTree, RuleId, Star};
use crate::syntax::{Formula, Path, Sequent, Side, Structure};

/// The first node (in preorder) that does not match its rule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {location:?} ({rule} at {path}, concluding `{conclusion}`): {reason}")]
pub struct CheckError {
    /// Premise indices from the root to the failing node.
    pub location: Vec<usize>,
    pub rule: RuleId,
    pub path: Path,
    pub conclusion: String,
    pub reason: String,
}

pub fn check_proof(t: &ProofTree, profile: Profile) -> Result<(), CheckError> {
    let mut loc = Vec::new();
    check_at(t, profile, &mut loc)
}

fn check_at(t: &ProofTree, profile: Profile, loc: &mut Vec<usize>) -> Result<(), CheckError> {
    let fail = |reason: String| CheckError {
        location: loc.clone(),
        rule: t.rule,
        path: t.path.clone(),
        conclusion: t.conclusion.to_string(),
        reason,
    };
    if !profile.allows(t.rule) {
        return Err(fail(format!("rule not in the {} profile", profile.name())));
    }
    if t.premises.len() != t.rule.arity() {
        return Err(fail(format!("expected {} premises, found {}", t.rule.arity(), t.premises.len())));
    }
    node(t).map_err(fail)?;
    for (i, p) in t.premises.iter().enumerate() {
        loc.push(i);
        check_at(p, profile, loc)?;
        loc.pop();
    }
    Ok(())
}

fn expect(found: &Sequent, want: Option<Sequent>, which: &str) -> Result<(), String> {
    match want {
        Some(w) if &w == found => Ok(()),
        Some(w) => Err(format!("{which}: expected `{w}`, found `{found}`")),
        None => Err(format!("{which}: hole address does not fit")),
    }
}

fn leaf(f: &Formula) -> Structure {
    Structure::Leaf(f.clone())
}

fn pair(star: Star, a: Structure, b: Structure) -> Structure {
    match star {
        Star::Prod => Structure::oprod(a, b),
        Star::Meet => Structure::omeet(a, b),
    }
}

fn split(s: &Structure, star: Star) -> Option<(&Structure, &Structure)> {
    match (s, star) {
        (Structure::OProd(a, b), Star::Prod) | (Structure::OMeet(a, b), Star::Meet) => Some((a, b)),
        _ => None,
    }
}

fn node(t: &ProofTree) -> Result<(), String> {
    let c = &t.conclusion;
    let p = &t.path;
    let prem = |i: usize| &t.premises[i].conclusion;
    let active = || at(c, p).ok_or_else(|| format!("no sub-structure at {p}"));
    let root_only = || {
        if p.is_root() {
            Ok(())
        } else {
            Err(format!("{} is applied at the root, not at {p}", t.rule))
        }
    };
    let leaf_formula = || match active()? {
        Structure::Leaf(f) => Ok(f),
        s => Err(format!("expected a formula at {p}, found `{s}`")),
    };
    match t.rule {
        RuleId::Id => {
            root_only()?;
            if c.antecedent == leaf(&c.succedent) {
                Ok(())
            } else {
                Err("antecedent and succedent differ".into())
            }
        }
        RuleId::Top => {
            root_only()?;
            match (&c.antecedent, &c.succedent) {
                (Structure::Leaf(_), Formula::Top) => Ok(()),
                (Structure::Leaf(_), _) => Err("succedent is not ⊤".into()),
                _ => Err("antecedent must be a single formula".into()),
            }
        }
        RuleId::Bot => {
            root_only()?;
            if c.antecedent == Structure::Leaf(Formula::Bot) {
                Ok(())
            } else {
                Err("antecedent is not ⊥".into())
            }
        }
        RuleId::TopImpAxiom => {
            root_only()?;
            let want = Formula::rimp(Formula::Top, c.succedent.clone());
            if c.antecedent == leaf(&want) {
                Ok(())
            } else {
                Err(format!("expected antecedent `{want}`"))
            }
        }
        RuleId::RImpL => {
            let (d, f) = split(active()?, Star::Prod).ok_or("expected `Δ , (A -> B)` at the hole")?;
            let Structure::Leaf(Formula::RImp(a, b)) = f else {
                return Err(format!("expected an implication right of `,`, found `{f}`"));
            };
            expect(prem(0), Some(Sequent::new(d.clone(), (**a).clone())), "premise 1")?;
            expect(prem(1), put(c, p, leaf(b)), "premise 2")
        }
        RuleId::LImpL => {
            let (f, d) = split(active()?, Star::Prod).ok_or("expected `(A <- B) , Δ` at the hole")?;
            let Structure::Leaf(Formula::LImp(a, b)) = f else {
                return Err(format!("expected a left implication left of `,`, found `{f}`"));
            };
            expect(prem(0), put(c, p, leaf(a)), "premise 1")?;
            expect(prem(1), Some(Sequent::new(d.clone(), (**b).clone())), "premise 2")
        }
        RuleId::RImpR => {
            root_only()?;
            let Formula::RImp(a, b) = &c.succedent else {
                return Err("succedent is not `A -> B`".into());
            };
            let want = Sequent::new(Structure::oprod(leaf(a), c.antecedent.clone()), (**b).clone());
            expect(prem(0), Some(want), "premise")
        }
        RuleId::LImpR => {
            root_only()?;
            let Formula::LImp(a, b) = &c.succedent else {
                return Err("succedent is not `A <- B`".into());
            };
            let want = Sequent::new(Structure::oprod(c.antecedent.clone(), leaf(b)), (**a).clone());
            expect(prem(0), Some(want), "premise")
        }
        RuleId::ProdL => {
            let Formula::Prod(a, b) = leaf_formula()? else {
                return Err("active formula is not a product".into());
            };
            expect(prem(0), put(c, p, Structure::oprod(leaf(a), leaf(b))), "premise")
        }
        RuleId::AndL => {
            let Formula::And(a, b) = leaf_formula()? else {
                return Err("active formula is not a conjunction".into());
            };
            expect(prem(0), put(c, p, Structure::omeet(leaf(a), leaf(b))), "premise")
        }
        RuleId::OrL => {
            let Formula::Or(a, b) = leaf_formula()? else {
                return Err("active formula is not a disjunction".into());
            };
            expect(prem(0), put(c, p, leaf(a)), "premise 1")?;
            expect(prem(1), put(c, p, leaf(b)), "premise 2")
        }
        RuleId::ProdR => {
            root_only()?;
            let Formula::Prod(a, b) = &c.succedent else {
                return Err("succedent is not a product".into());
            };
            let (g, d) = split(&c.antecedent, Star::Prod).ok_or("antecedent is not `Γ , Δ`")?;
            expect(prem(0), Some(Sequent::new(g.clone(), (**a).clone())), "premise 1")?;
            expect(prem(1), Some(Sequent::new(d.clone(), (**b).clone())), "premise 2")
        }
        RuleId::AndR => {
            root_only()?;
            let Formula::And(a, b) = &c.succedent else {
                return Err("succedent is not a conjunction".into());
            };
            expect(prem(0), Some(with_succ(c, (**a).clone())), "premise 1")?;
            expect(prem(1), Some(with_succ(c, (**b).clone())), "premise 2")
        }
        RuleId::OrR1 | RuleId::OrR2 => {
            root_only()?;
            let Formula::Or(a, b) = &c.succedent else {
                return Err("succedent is not a disjunction".into());
            };
            let chosen = if t.rule == RuleId::OrR1 { a } else { b };
            expect(prem(0), Some(with_succ(c, (**chosen).clone())), "premise")
        }
        RuleId::OMeetC => {
            let d = active()?.clone();
            expect(prem(0), put(c, p, Structure::omeet(d.clone(), d)), "premise")
        }
        RuleId::OProdCStar => {
            let d = active()?.clone();
            expect(prem(0), put(c, p, Structure::oprod(d.clone(), d)), "premise")
        }
        RuleId::OProdC => {
            let s = active()?;
            let (_, d) = split(s, Star::Prod).ok_or("expected `Λ , Δ` at the hole")?;
            expect(prem(0), put(c, p, Structure::oprod(s.clone(), d.clone())), "premise")
        }
        RuleId::OMeetE | RuleId::OProdE => {
            let star = if t.rule == RuleId::OMeetE { Star::Meet } else { Star::Prod };
            let (l, d) = split(active()?, star).ok_or("hole has the wrong connective")?;
            expect(prem(0), put(c, p, pair(star, d.clone(), l.clone())), "premise")
        }
        RuleId::W1(star) | RuleId::W2(star) => {
            let (l, r) = split(active()?, star).ok_or("hole has the wrong connective")?;
            let kept = if matches!(t.rule, RuleId::W1(_)) { r } else { l };
            expect(prem(0), put(c, p, kept.clone()), "premise")
        }
        RuleId::OMeetA1 => {
            // conclusion Δ1⊘(Δ2⊘Δ3), premise (Δ1⊘Δ2)⊘Δ3
            let (d1, rest) = split(active()?, Star::Meet).ok_or("expected `Δ1 ; (Δ2 ; Δ3)`")?;
            let (d2, d3) = split(rest, Star::Meet).ok_or("expected `Δ1 ; (Δ2 ; Δ3)`")?;
            let want = Structure::omeet(Structure::omeet(d1.clone(), d2.clone()), d3.clone());
            expect(prem(0), put(c, p, want), "premise")
        }
        RuleId::OMeetA2 => {
            let (rest, d3) = split(active()?, Star::Meet).ok_or("expected `(Δ1 ; Δ2) ; Δ3`")?;
            let (d1, d2) = split(rest, Star::Meet).ok_or("expected `(Δ1 ; Δ2) ; Δ3`")?;
            let want = Structure::omeet(d1.clone(), Structure::omeet(d2.clone(), d3.clone()));
            expect(prem(0), put(c, p, want), "premise")
        }
        RuleId::OProdA2 => {
            let (rest, d3) = split(active()?, Star::Prod).ok_or("expected `(Δ1 , Δ2) , Δ3`")?;
            let (d1, d2) = split(rest, Star::Prod).ok_or("expected `(Δ1 , Δ2) , Δ3`")?;
            let want = Structure::oprod(d1.clone(), Structure::oprod(d2.clone(), d3.clone()));
            expect(prem(0), put(c, p, want), "premise")
        }
        RuleId::Cut => {
            let (left, right) = (prem(0), prem(1));
            if right.succedent != c.succedent {
                return Err("right premise has a different succedent".into());
            }
            match right.antecedent.at(p) {
                Some(Structure::Leaf(f)) if *f == left.succedent => {}
                _ => return Err(format!("right premise has no `{}` at {p}", left.succedent)),
            }
            expect(c, put(right, p, left.antecedent.clone()), "conclusion")
        }
        RuleId::Mix => {
            root_only()?;
            let (left, right) = (prem(0), prem(1));
            if right.succedent != c.succedent {
                return Err("right premise has a different succedent".into());
            }
            match mix_occurrences(&right.antecedent, &c.antecedent, &left.antecedent, &left.succedent) {
                Some(occ) if !occ.is_empty() => Ok(()),
                _ => Err(format!(
                    "conclusion is not the right premise with occurrences of `{}` replaced by `{}`",
                    left.succedent, left.antecedent
                )),
            }
        }
    }
}

/// The occurrences of `a` in `before` that were replaced by `delta` to
/// give `after`; `None` if `after` is not of that shape.
pub fn mix_occurrences(before: &Structure, after: &Structure, delta: &Structure, a: &Formula) -> Option<Vec<Path>> {
    let mut out = Vec::new();
    diff(before, after, delta, a, &mut Path::root(), &mut out).then_some(out)
}

fn diff(
    before: &Structure,
    after: &Structure,
    delta: &Structure,
    a: &Formula,
    here: &mut Path,
    out: &mut Vec<Path>,
) -> bool {
    match before {
        Structure::Leaf(f) if f == a && after == delta => {
            out.push(here.clone());
            true
        }
        Structure::Leaf(_) => before == after,
        Structure::OProd(x, y) | Structure::OMeet(x, y) => {
            let same_kind = std::mem::discriminant(before) == std::mem::discriminant(after);
            let Some((u, v)) = after.children() else { return false };
            if !same_kind {
                return false;
            }
            here.0.push(Side::L);
            let ok = diff(x, u, delta, a, here, out);
            here.0.pop();
            if !ok {
                return false;
            }
            here.0.push(Side::R);
            let ok = diff(y, v, delta, a, here, out);
            here.0.pop();
            ok
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn t(c: &str, rule: RuleId, path: &str, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree::new(seq(c), rule, Path::parse(path).unwrap(), premises)
    }

    #[test]
    fn axiom_one() {
        let id = t("p |- p", RuleId::Id, ".", vec![]);
        assert!(check_proof(&id, Profile::Core).is_ok());
        let w = t("p , top |- p", RuleId::W2(Star::Prod), ".", vec![id]);
        let r = t("top |- p -> p", RuleId::RImpR, ".", vec![w]);
        assert!(check_proof(&r, Profile::Core).is_ok());
    }

    #[test]
    fn errors_locate_the_node() {
        let id = t("p |- q", RuleId::Id, ".", vec![]);
        let w = t("p , top |- q", RuleId::W2(Star::Prod), ".", vec![id]);
        let e = check_proof(&w, Profile::Core).unwrap_err();
        assert_eq!(e.location, vec![0]);
        assert_eq!(e.rule, RuleId::Id);
        // wrong side of the weakening
        let id = t("p |- p", RuleId::Id, ".", vec![]);
        let w = t("p , top |- p", RuleId::W1(Star::Prod), ".", vec![id]);
        let e = check_proof(&w, Profile::Core).unwrap_err();
        assert!(e.reason.contains("expected `top |- p`"), "{}", e.reason);
    }

    #[test]
    fn premise_without_antecedent_is_unrepresentable() {
        // an empty antecedent does not parse, so RImpR over `p |- p` cannot
        // claim the conclusion `|- p -> p`
        assert!(parse_sequent("|- p -> p").is_err());
        let id = t("p |- p", RuleId::Id, ".", vec![]);
        let bogus = t("p |- p -> p", RuleId::RImpR, ".", vec![id]);
        assert!(check_proof(&bogus, Profile::Core).is_err());
    }

    #[test]
    fn profile_membership() {
        let ax = t("top -> p |- p", RuleId::TopImpAxiom, ".", vec![]);
        assert!(check_proof(&ax, Profile::Core).is_err());
        assert!(check_proof(&ax, Profile::TopImp).is_ok());
        let prem = ProofTree::axiom(seq("q , p |- q"), RuleId::Id);
        let e = t("p , q |- q", RuleId::OProdE, ".", vec![prem]);
        assert!(check_proof(&e, Profile::Core).is_err());
        assert_eq!(check_proof(&e, Profile::Lj).unwrap_err().location, vec![0]);
    }

    #[test]
    fn contraction_and_hole_addresses() {
        // Γ[Λ⊙Δ] from Γ[(Λ⊙Δ)⊙Δ] inside a ⊘ context
        let prem = ProofTree::axiom(seq("r ; ((p , q) , q) |- r"), RuleId::Id);
        let c = t("r ; (p , q) |- r", RuleId::OProdC, "r", vec![prem]);
        let e = check_proof(&c, Profile::Core).unwrap_err();
        assert_eq!(e.location, vec![0]);
        let c = t("r ; (p , q) |- r", RuleId::OProdC, "l", vec![c.premises[0].clone()]);
        assert!(check_proof(&c, Profile::Core).unwrap_err().location.is_empty());
    }

    #[test]
    fn mix_occurrence_diff() {
        let before = crate::syntax::parse_structure("a , (b ; a)").unwrap();
        let after = crate::syntax::parse_structure("(p , q) , (b ; a)").unwrap();
        let delta = crate::syntax::parse_structure("p , q").unwrap();
        let occ = mix_occurrences(&before, &after, &delta, &Formula::prop("a")).unwrap();
        assert_eq!(occ, vec![Path::parse("l").unwrap()]);
        let wrong = crate::syntax::parse_structure("(p , q) ; (b ; a)").unwrap();
        assert!(mix_occurrences(&before, &wrong, &delta, &Formula::prop("a")).is_none());
    }
}
