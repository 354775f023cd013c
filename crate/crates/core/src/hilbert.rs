//! The Hilbert-style system for BPL: twelve axiom schemas and modus ponens.
//!
//! Proofs are certificates to be checked, never searched for.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{parse_formula, Formula};

/// Axiom schemas over the metavariables `A`, `B`, `C`, indexed 1..=12.
pub const AXIOMS: [&str; 12] = [
    "A -> A",
    "A -> B -> A",
    "(A -> B) & (B -> C) -> A -> C",
    "(A -> C) & (B -> C) -> A | B -> C",
    "A & B -> A",
    "A & B -> B",
    "A -> A | B",
    "B -> A | B",
    "A -> B -> A & B",
    "(A -> B) & (A -> C) -> A -> B & C",
    "A & (B | C) -> A & B | A & C",
    "bot -> A",
];

const METAVARS: [&str; 3] = ["A", "B", "C"];

pub type Subst = BTreeMap<String, Formula>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("axiom {0} does not exist (ids are 1..=12)")]
    UnknownAxiom(usize),
    #[error("substitution has no value for metavariable {0}")]
    MissingMetaVar(String),
}

pub fn axiom_schema(id: usize) -> Result<Formula, HilbertError> {
    let text = AXIOMS.get(id.wrapping_sub(1)).ok_or(HilbertError::UnknownAxiom(id))?;
    Ok(parse_formula(text).expect("axiom schemas parse"))
}

fn substitute(schema: &Formula, subst: &Subst) -> Result<Formula, HilbertError> {
    Ok(match schema {
        Formula::Prop(p) => subst.get(&**p).cloned().ok_or_else(|| HilbertError::MissingMetaVar(p.to_string()))?,
        Formula::Bot | Formula::Top => schema.clone(),
        Formula::And(a, b) => Formula::and(substitute(a, subst)?, substitute(b, subst)?),
        Formula::Or(a, b) => Formula::or(substitute(a, subst)?, substitute(b, subst)?),
        Formula::Prod(a, b) => Formula::prod(substitute(a, subst)?, substitute(b, subst)?),
        Formula::RImp(a, b) => Formula::rimp(substitute(a, subst)?, substitute(b, subst)?),
        Formula::LImp(a, b) => Formula::limp(substitute(a, subst)?, substitute(b, subst)?),
    })
}

/// Instance of axiom `id` under `subst`. Every metavariable the schema uses
/// must be bound.
pub fn axiom_instance(id: usize, subst: &Subst) -> Result<Formula, HilbertError> {
    substitute(&axiom_schema(id)?, subst)
}

/// First-order matching of `schema` (metavariables as atoms) against `f`.
fn match_schema(schema: &Formula, f: &Formula, subst: &mut Subst) -> bool {
    match (schema, f) {
        (Formula::Prop(p), _) if METAVARS.contains(&&**p) => match subst.get(&**p) {
            Some(bound) => bound == f,
            None => {
                subst.insert(p.to_string(), f.clone());
                true
            }
        },
        (Formula::Bot, Formula::Bot) | (Formula::Top, Formula::Top) => true,
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Prod(a, b), Formula::Prod(c, d))
        | (Formula::RImp(a, b), Formula::RImp(c, d))
        | (Formula::LImp(a, b), Formula::LImp(c, d)) => match_schema(a, c, subst) && match_schema(b, d, subst),
        _ => false,
    }
}

/// The substitution making `f` an instance of axiom `id`, if any.
pub fn match_axiom(id: usize, f: &Formula) -> Option<Subst> {
    let schema = axiom_schema(id).ok()?;
    let mut subst = Subst::new();
    match_schema(&schema, f, &mut subst).then_some(subst)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// An axiom instance; without a substitution the step is matched.
    Axiom { id: usize, subst: Option<Subst> },
    /// From step `i` (`A`) and step `j` (`A → B`), 1-indexed, infer `B`.
    Mp { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertStep {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertProof {
    pub steps: Vec<HilbertStep>,
}

impl HilbertProof {
    pub fn push_axiom(mut self, id: usize, formula: Formula) -> HilbertProof {
        self.steps.push(HilbertStep { formula, justification: Justification::Axiom { id, subst: None } });
        self
    }

    pub fn push_mp(mut self, i: usize, j: usize, formula: Formula) -> HilbertProof {
        self.steps.push(HilbertStep { formula, justification: Justification::Mp { i, j } });
        self
    }
}

/// The first bad step (1-indexed; 0 for problems with the proof as a whole).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct StepError {
    pub step: usize,
    pub reason: String,
}

/// Checks every step and that the last step is `goal`.
pub fn check_hilbert_proof(p: &HilbertProof, goal: &Formula) -> Result<(), StepError> {
    let fail = |step, reason: String| Err(StepError { step, reason });
    for (k, step) in p.steps.iter().enumerate() {
        let n = k + 1;
        match &step.justification {
            Justification::Axiom { id, subst: Some(subst) } => match axiom_instance(*id, subst) {
                Ok(f) if f == step.formula => {}
                Ok(f) => return fail(n, format!("axiom {id} under the substitution gives `{f}`")),
                Err(e) => return fail(n, e.to_string()),
            },
            Justification::Axiom { id, subst: None } => {
                if !(1..=12).contains(id) {
                    return fail(n, HilbertError::UnknownAxiom(*id).to_string());
                }
                if match_axiom(*id, &step.formula).is_none() {
                    return fail(
                        n,
                        format!("`{}` is not an instance of axiom {id} `{}`", step.formula, AXIOMS[id - 1]),
                    );
                }
            }
            Justification::Mp { i, j } => {
                if *i == 0 || *j == 0 || *i >= n || *j >= n {
                    return fail(n, format!("mp {i} {j} must cite earlier steps"));
                }
                let expected = Formula::rimp(p.steps[i - 1].formula.clone(), step.formula.clone());
                if p.steps[j - 1].formula != expected {
                    return fail(n, format!("step {j} should be `{expected}`"));
                }
            }
        }
    }
    match p.steps.last() {
        None => fail(0, "empty proof".into()),
        Some(last) if &last.formula != goal => {
            fail(p.steps.len(), format!("last step `{}` is not the goal `{goal}`", last.formula))
        }
        Some(_) => Ok(()),
    }
}

/// Parses the line format `n. <formula> ; ax <id>` / `n. <formula> ; mp <i> <j>`.
/// Blank lines and `#` comments are skipped; step numbers must run 1, 2, ...
pub fn parse_hilbert_proof(text: &str) -> Result<HilbertProof, StepError> {
    let mut proof = HilbertProof::default();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let n = proof.steps.len() + 1;
        let bad = |reason: String| StepError { step: n, reason };
        let (num, rest) = line.split_once('.').ok_or_else(|| bad("expected `n.`".into()))?;
        if num.trim().parse::<usize>().ok() != Some(n) {
            return Err(bad(format!("expected step number {n}, found `{}`", num.trim())));
        }
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| bad("expected `; ax` or `; mp`".into()))?;
        let formula = parse_formula(formula.trim()).map_err(|e| bad(e.to_string()))?;
        let words: Vec<&str> = just.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("`{s}` is not a number")));
        let justification = match words.as_slice() {
            ["ax", id] => Justification::Axiom { id: num(id)?, subst: None },
            ["mp", i, j] => Justification::Mp { i: num(i)?, j: num(j)? },
            _ => return Err(bad(format!("cannot read justification `{}`", just.trim()))),
        };
        proof.steps.push(HilbertStep { formula, justification });
    }
    Ok(proof)
}

impl fmt::Display for HilbertProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, step) in self.steps.iter().enumerate() {
            match &step.justification {
                Justification::Axiom { id, .. } => writeln!(f, "{}. {} ; ax {id}", k + 1, step.formula)?,
                Justification::Mp { i, j } => writeln!(f, "{}. {} ; mp {i} {j}", k + 1, step.formula)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KikuchiId {
    I,
    K,
    BStar,
}

/// `Γ → x`, right-nested: `[] → x = x`, `(b, Γ) → x = b → (Γ → x)`.
pub fn nest(gamma: &[Formula], x: Formula) -> Formula {
    gamma.iter().rev().fold(x, |acc, g| Formula::rimp(g.clone(), acc))
}

/// Instances of the implicational schemas I, K and B*. `gamma` only affects B*.
pub fn kikuchi_schema(id: KikuchiId, gamma: &[Formula], subst: &Subst) -> Result<Formula, HilbertError> {
    let get = |v: &str| subst.get(v).cloned().ok_or_else(|| HilbertError::MissingMetaVar(v.to_string()));
    Ok(match id {
        KikuchiId::I => {
            let a = get("A")?;
            Formula::rimp(a.clone(), a)
        }
        KikuchiId::K => {
            let (a, b) = (get("A")?, get("B")?);
            Formula::rimp(a.clone(), Formula::rimp(b, a))
        }
        KikuchiId::BStar => {
            let (a, b, c) = (get("A")?, get("B")?, get("C")?);
            let bc = nest(gamma, Formula::rimp(b.clone(), c.clone()));
            let ab = nest(gamma, Formula::rimp(a.clone(), b));
            let ac = nest(gamma, Formula::rimp(a, c));
            Formula::rimp(bc, Formula::rimp(ab, ac))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn subst(pairs: &[(&str, &str)]) -> Subst {
        pairs.iter().map(|(k, v)| (k.to_string(), f(v))).collect()
    }

    #[test]
    fn instances() {
        assert_eq!(axiom_instance(1, &subst(&[("A", "p")])), Ok(f("p -> p")));
        assert_eq!(axiom_instance(12, &subst(&[("A", "q")])), Ok(f("bot -> q")));
        assert_eq!(
            axiom_instance(11, &subst(&[("A", "p"), ("B", "q"), ("C", "r")])),
            Ok(f("p & (q | r) -> (p & q) | (p & r)"))
        );
        assert_eq!(axiom_instance(2, &subst(&[("A", "p")])), Err(HilbertError::MissingMetaVar("B".into())));
        assert_eq!(axiom_instance(13, &Subst::new()), Err(HilbertError::UnknownAxiom(13)));
    }

    #[test]
    fn checking() {
        let one = HilbertProof::default().push_axiom(1, f("p -> p"));
        assert_eq!(check_hilbert_proof(&one, &f("p -> p")), Ok(()));
        let bad = HilbertProof::default().push_axiom(2, f("p -> q -> p")).push_axiom(1, f("p"));
        assert_eq!(check_hilbert_proof(&bad, &f("p")).unwrap_err().step, 2);
        let mp = HilbertProof::default()
            .push_axiom(7, f("(p -> p) -> (p -> p) | q"))
            .push_axiom(1, f("p -> p"))
            .push_mp(2, 1, f("(p -> p) | q"));
        assert_eq!(check_hilbert_proof(&mp, &f("(p -> p) | q")), Ok(()));
        let swapped = HilbertProof { steps: mp.steps[..2].to_vec() }.push_mp(1, 2, f("(p -> p) | q"));
        assert_eq!(check_hilbert_proof(&swapped, &f("(p -> p) | q")).unwrap_err().step, 3);
        assert_eq!(check_hilbert_proof(&mp, &f("q")).unwrap_err().step, 3);
    }

    #[test]
    fn file_format_round_trip() {
        let text = "1. (p -> p) -> (p -> p) | q ; ax 7\n# comment\n2. p -> p ; ax 1\n3. (p -> p) | q ; mp 2 1\n";
        let proof = parse_hilbert_proof(text).unwrap();
        assert_eq!(check_hilbert_proof(&proof, &f("(p -> p) | q")), Ok(()));
        assert_eq!(parse_hilbert_proof(&proof.to_string()).unwrap(), proof);
        assert!(parse_hilbert_proof("2. p ; ax 1").is_err());
        assert!(parse_hilbert_proof("1. p ; foo").is_err());
    }

    #[test]
    fn kikuchi() {
        let s = subst(&[("A", "A"), ("B", "B"), ("C", "C")]);
        assert_eq!(kikuchi_schema(KikuchiId::BStar, &[], &s), Ok(f("(B -> C) -> (A -> B) -> A -> C")));
        assert_eq!(
            kikuchi_schema(KikuchiId::BStar, &[f("d")], &s),
            Ok(f("(d -> B -> C) -> (d -> A -> B) -> d -> A -> C"))
        );
        assert_eq!(kikuchi_schema(KikuchiId::K, &[f("d")], &s), Ok(f("A -> B -> A")));
        assert_eq!(kikuchi_schema(KikuchiId::I, &[], &s), Ok(f("A -> A")));
    }
}
