//! Mix elimination.
//!
//! Cuts and mixes are removed innermost first. A single elimination step
//! `mix(L, R, occs)` takes cut-free proofs `L` of `Δ ⇒ A` and `R` of
//! `Γ ⇒ B` and a set of leaf occurrences of `A` in `Γ`, and returns a
//! cut-free proof of `Γ` with those occurrences replaced by `Δ`.
//!
//! * If no occurrence is principal in the last rule of `R`, the mix moves
//!   into the premises of `R` along the ancestors of each occurrence and the
//!   rule is re-applied.
//! * Otherwise the other occurrences are moved up first, and then the
//!   principal one is reduced: into the premises of `L` when `L` ends in a
//!   left or structural rule, or by the principal reductions (two smaller
//!   mixes, plus `⊘C` for `∧`) when `L` ends in the matching right rule.
//!
//! The measure is (complexity of `A`, height of `L` + height of `R`). The
//! output contains no `Cut` or `Mix` nodes at all, including `⊤`/`⊥` ones.

use thiserror::Error;

use super::search::close;
use super::{check_proof, mix_occurrences, CheckError, Profile, ProofTree, RuleId};
use crate::syntax::{Path, Sequent, Side, Structure};

#[derive(Debug, Clone, Error)]
pub enum MixError {
    #[error("malformed proof: {0}")]
    MalformedProof(CheckError),
    #[error("mix elimination does not handle the {0} rule")]
    Unsupported(RuleId),
    #[error("internal error: {0}")]
    Internal(String),
}

pub fn eliminate_mix(t: &ProofTree) -> Result<ProofTree, MixError> {
    let mut profile = Profile::Core;
    let mut unsupported = None;
    t.visit(&mut |n| match n.rule {
        RuleId::OProdCStar | RuleId::OProdA2 | RuleId::OProdE => profile = Profile::Lj,
        RuleId::TopImpAxiom => unsupported = Some(n.rule),
        _ => {}
    });
    if let Some(r) = unsupported {
        return Err(MixError::Unsupported(r));
    }
    check_proof(t, profile).map_err(MixError::MalformedProof)?;
    let out = elim(t)?;
    if out.conclusion != t.conclusion {
        return Err(MixError::Internal("conclusion changed".into()));
    }
    check_proof(&out, profile).map_err(|e| MixError::Internal(e.to_string()))?;
    Ok(out)
}

fn elim(t: &ProofTree) -> Result<ProofTree, MixError> {
    let prems = t.premises.iter().map(elim).collect::<Result<Vec<_>, _>>()?;
    match t.rule {
        RuleId::Cut => mix(&prems[0], &prems[1], std::slice::from_ref(&t.path)),
        RuleId::Mix => {
            let (l, r) = (&prems[0].conclusion, &prems[1].conclusion);
            let occs = mix_occurrences(&r.antecedent, &t.conclusion.antecedent, &l.antecedent, &l.succedent)
                .ok_or_else(|| MixError::Internal("mix occurrences".into()))?;
            mix(&prems[0], &prems[1], &occs)
        }
        _ => Ok(ProofTree::new(t.conclusion.clone(), t.rule, t.path.clone(), prems)),
    }
}

fn internal<T>(msg: &str) -> Result<T, MixError> {
    Err(MixError::Internal(msg.to_string()))
}

fn subst(s: &Sequent, occs: &[Path], delta: &Structure) -> Sequent {
    let mut g = s.antecedent.clone();
    for o in occs {
        g = g.replace(o, delta.clone()).expect("occurrence inside the antecedent");
    }
    Sequent::new(g, s.succedent.clone())
}

fn closing(target: &Sequent) -> Result<ProofTree, MixError> {
    close(target, Profile::Core).ok_or_else(|| MixError::Internal(format!("cannot close `{target}`")))
}

fn mix(l: &ProofTree, r: &ProofTree, occs: &[Path]) -> Result<ProofTree, MixError> {
    let delta = &l.conclusion.antecedent;
    let a = &l.conclusion.succedent;
    if occs.is_empty() {
        return Ok(r.clone());
    }
    for o in occs {
        if r.conclusion.antecedent.at(o) != Some(&Structure::Leaf(a.clone())) {
            return internal("occurrence is not the mix formula");
        }
    }
    let target = subst(&r.conclusion, occs, delta);
    match r.rule {
        // Δ ⇒ A itself
        RuleId::Id => return Ok(l.clone()),
        // Δ ⇒ ⊤ by weakening and (⊤)
        RuleId::Top => return closing(&target),
        RuleId::TopImpAxiom => return Err(MixError::Unsupported(r.rule)),
        RuleId::Cut | RuleId::Mix => return internal("right premise is not cut-free"),
        _ => {}
    }
    match principal(r).filter(|p| occs.contains(p)) {
        None => push_right(l, r, occs, target),
        Some(o) => {
            let rest: Vec<Path> = occs.iter().filter(|p| **p != o).cloned().collect();
            let r_star = if rest.is_empty() {
                r.clone()
            } else {
                let t = subst(&r.conclusion, &rest, delta);
                push_right(l, r, &rest, t)?
            };
            reduce(l, &r_star, &o)
        }
    }
}

/// The antecedent leaf that the last rule of `r` acts on, if any.
fn principal(r: &ProofTree) -> Option<Path> {
    match r.rule {
        RuleId::Bot => Some(Path::root()),
        RuleId::ProdL | RuleId::AndL | RuleId::OrL => Some(r.path.clone()),
        RuleId::RImpL => Some(r.path.child(Side::R)),
        RuleId::LImpL => Some(r.path.child(Side::L)),
        _ => None,
    }
}

/// Moves the mix into the premises of `r`, none of `occs` being principal.
fn push_right(l: &ProofTree, r: &ProofTree, occs: &[Path], target: Sequent) -> Result<ProofTree, MixError> {
    let mut prems = Vec::with_capacity(r.premises.len());
    for (k, p) in r.premises.iter().enumerate() {
        let mut anc = Vec::new();
        for o in occs {
            anc.extend(ancestors(r, k, o)?);
        }
        prems.push(if anc.is_empty() { p.clone() } else { mix(l, p, &anc)? });
    }
    Ok(ProofTree::new(target, r.rule, r.path.clone(), prems))
}

fn steps(p: &Path, tail: &[Side], rest: &[Side]) -> Path {
    p.extend(tail).extend(rest)
}

/// Positions in premise `k` of `r` that the occurrence `o` of its
/// conclusion descends from.
fn ancestors(r: &ProofTree, k: usize, o: &Path) -> Result<Vec<Path>, MixError> {
    use Side::{L, R};
    let p = &r.path;
    let rel = p.strip_prefix_of(o);
    let q: Option<&[Side]> = rel.as_ref().map(|x| x.0.as_slice());
    let same = || Ok(vec![o.clone()]);
    let none = || Ok(Vec::new());
    match r.rule {
        RuleId::RImpR => Ok(vec![Path(vec![R]).join(o)]),
        RuleId::LImpR => Ok(vec![Path(vec![L]).join(o)]),
        RuleId::ProdR => match (o.0.split_first(), k) {
            (Some((&L, rest)), 0) | (Some((&R, rest)), 1) => Ok(vec![Path(rest.to_vec())]),
            _ => none(),
        },
        RuleId::AndR | RuleId::OrR1 | RuleId::OrR2 | RuleId::ProdL | RuleId::AndL | RuleId::OrL => same(),
        RuleId::RImpL => match (q, k) {
            (Some([L, rest @ ..]), 0) => Ok(vec![Path(rest.to_vec())]),
            (Some([L, ..]), _) | (None, 0) => none(),
            (None, _) => same(),
            (Some(_), _) => internal("principal occurrence traced"),
        },
        RuleId::LImpL => match (q, k) {
            (Some([R, rest @ ..]), 1) => Ok(vec![Path(rest.to_vec())]),
            (Some([R, ..]), _) | (None, 1) => none(),
            (None, _) => same(),
            (Some(_), _) => internal("principal occurrence traced"),
        },
        _ if q.is_none() => same(),
        RuleId::OMeetC | RuleId::OProdCStar => {
            let q = q.unwrap();
            Ok(vec![steps(p, &[L], q), steps(p, &[R], q)])
        }
        RuleId::OProdC => match q.unwrap() {
            [L, rest @ ..] => Ok(vec![steps(p, &[L, L], rest)]),
            [R, rest @ ..] => Ok(vec![steps(p, &[L, R], rest), steps(p, &[R], rest)]),
            [] => internal("contraction node is a leaf"),
        },
        RuleId::OMeetE | RuleId::OProdE => match q.unwrap() {
            [L, rest @ ..] => Ok(vec![steps(p, &[R], rest)]),
            [R, rest @ ..] => Ok(vec![steps(p, &[L], rest)]),
            [] => internal("exchange node is a leaf"),
        },
        RuleId::W1(_) => match q.unwrap() {
            [R, rest @ ..] => Ok(vec![steps(p, &[], rest)]),
            _ => none(),
        },
        RuleId::W2(_) => match q.unwrap() {
            [L, rest @ ..] => Ok(vec![steps(p, &[], rest)]),
            _ => none(),
        },
        RuleId::OMeetA1 => match q.unwrap() {
            [L, rest @ ..] => Ok(vec![steps(p, &[L, L], rest)]),
            [R, L, rest @ ..] => Ok(vec![steps(p, &[L, R], rest)]),
            [R, R, rest @ ..] => Ok(vec![steps(p, &[R], rest)]),
            _ => internal("association node shape"),
        },
        RuleId::OMeetA2 | RuleId::OProdA2 => match q.unwrap() {
            [L, L, rest @ ..] => Ok(vec![steps(p, &[L], rest)]),
            [L, R, rest @ ..] => Ok(vec![steps(p, &[R, L], rest)]),
            [R, rest @ ..] => Ok(vec![steps(p, &[R, R], rest)]),
            _ => internal("association node shape"),
        },
        _ => internal("unexpected rule above a mix"),
    }
}

/// `r` is principal at `o`; eliminates that single occurrence.
fn reduce(l: &ProofTree, r: &ProofTree, o: &Path) -> Result<ProofTree, MixError> {
    let delta = &l.conclusion.antecedent;
    let target = subst(&r.conclusion, std::slice::from_ref(o), delta);
    match l.rule {
        RuleId::Id => Ok(r.clone()),
        RuleId::Bot => closing(&target),
        RuleId::TopImpAxiom => Err(MixError::Unsupported(l.rule)),
        RuleId::Top | RuleId::Cut | RuleId::Mix => internal("left premise cannot meet a principal occurrence"),
        rule if rule.is_right() => principal_case(l, r, o, target),
        rule => {
            // left or structural rule on the left: move into its major premises
            let mut prems = Vec::with_capacity(l.premises.len());
            for (k, lp) in l.premises.iter().enumerate() {
                let major = match rule {
                    RuleId::RImpL => k == 1,
                    RuleId::LImpL => k == 0,
                    _ => true,
                };
                prems.push(if major { mix(lp, r, std::slice::from_ref(o))? } else { lp.clone() });
            }
            Ok(ProofTree::new(target, rule, o.join(&l.path), prems))
        }
    }
}

fn principal_case(l: &ProofTree, r: &ProofTree, o: &Path, target: Sequent) -> Result<ProofTree, MixError> {
    let (lp, rp) = (&l.premises, &r.premises);
    match (l.rule, r.rule) {
        (RuleId::ProdR, RuleId::ProdL) => {
            let y = mix(&lp[1], &rp[0], &[o.child(Side::R)])?;
            mix(&lp[0], &y, &[o.child(Side::L)])
        }
        (RuleId::RImpR, RuleId::RImpL) => {
            // Δ' ⇒ A1 and A1 ⊙ Δ ⇒ A2 give Δ' ⊙ Δ ⇒ A2
            let x = mix(&rp[0], &lp[0], &[Path(vec![Side::L])])?;
            mix(&x, &rp[1], std::slice::from_ref(&r.path))
        }
        (RuleId::LImpR, RuleId::LImpL) => {
            // Δ ⊙ A2 ⇒ A1 and Δ' ⇒ A2 give Δ ⊙ Δ' ⇒ A1
            let x = mix(&rp[1], &lp[0], &[Path(vec![Side::R])])?;
            mix(&x, &rp[0], std::slice::from_ref(&r.path))
        }
        (RuleId::AndR, RuleId::AndL) => {
            let y = mix(&lp[1], &rp[0], &[o.child(Side::R)])?;
            let z = mix(&lp[0], &y, &[o.child(Side::L)])?;
            Ok(ProofTree::new(target, RuleId::OMeetC, o.clone(), vec![z]))
        }
        (RuleId::OrR1, RuleId::OrL) => mix(&lp[0], &rp[0], std::slice::from_ref(o)),
        (RuleId::OrR2, RuleId::OrL) => mix(&lp[0], &rp[1], std::slice::from_ref(o)),
        (a, b) => Err(MixError::Internal(format!("{a} against {b} on `{}`", principal_formula(r, o)))),
    }
}

fn principal_formula(r: &ProofTree, o: &Path) -> String {
    match r.conclusion.antecedent.at(o) {
        Some(Structure::Leaf(f)) => f.to_string(),
        _ => "?".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrbl::{search_only, SearchConfig};
    use crate::syntax::parse_sequent;

    fn proof(text: &str) -> ProofTree {
        search_only(&parse_sequent(text).unwrap(), &SearchConfig::default()).0.unwrap()
    }

    fn cut(l: ProofTree, r: ProofTree, path: &str) -> ProofTree {
        let p = Path::parse(path).unwrap();
        let c = subst(&r.conclusion, std::slice::from_ref(&p), &l.conclusion.antecedent);
        ProofTree::new(c, RuleId::Cut, p, vec![l, r])
    }

    fn eliminates(t: &ProofTree) -> ProofTree {
        check_proof(t, Profile::Core).unwrap();
        let out = eliminate_mix(t).unwrap();
        assert!(out.is_cut_free());
        assert_eq!(out.conclusion, t.conclusion);
        out
    }

    #[test]
    fn identity_on_the_left_returns_the_right_premise() {
        let r = proof("(p * q) , r |- r");
        let id = ProofTree::axiom(parse_sequent("p * q |- p * q").unwrap(), RuleId::Id);
        assert_eq!(eliminates(&cut(id, r.clone(), "l")), r);
    }

    #[test]
    fn principal_cases() {
        // ·
        eliminates(&cut(proof("q , p |- q * p"), proof("(q * p) ; s |- q * top"), "l"));
        // →
        eliminates(&cut(proof("s |- q -> s"), proof("q , (q -> s) |- s"), "r"));
        // ←
        eliminates(&cut(proof("s |- s <- q"), proof("(s <- q) , q |- s"), "l"));
        // ∧
        eliminates(&cut(proof("p ; q |- q & p"), proof("(q & p) , top |- p"), "l"));
        // ∨
        eliminates(&cut(proof("p |- q | p"), proof("q | p |- p | q"), "."));
    }

    #[test]
    fn units_as_mix_formulas() {
        eliminates(&cut(proof("p |- top"), proof("top , q |- q"), "l"));
        eliminates(&cut(proof("bot , p |- bot"), proof("bot |- r"), "."));
    }

    #[test]
    fn multi_occurrence_mix() {
        let l = proof("q ; q |- q & q");
        let r = proof("(q & q) , (q & q) |- q");
        let delta = l.conclusion.antecedent.clone();
        let occs = [Path::parse("l").unwrap(), Path::parse("r").unwrap()];
        let c = subst(&r.conclusion, &occs, &delta);
        let t = ProofTree::new(c, RuleId::Mix, Path::root(), vec![l, r]);
        eliminates(&t);
    }

    #[test]
    fn top_imp_axiom_is_reported() {
        let ax = ProofTree::axiom(parse_sequent("top -> p |- p").unwrap(), RuleId::TopImpAxiom);
        assert!(matches!(eliminate_mix(&ax), Err(MixError::Unsupported(RuleId::TopImpAxiom))));
    }

    #[test]
    fn malformed_input_is_rejected() {
        let bad = ProofTree::axiom(parse_sequent("p |- q").unwrap(), RuleId::Id);
        assert!(matches!(eliminate_mix(&bad), Err(MixError::MalformedProof(_))));
    }
}
