//! Semi-associativity as a derived rule, and the disjunction-property probe.

use thiserror::Error;

use super::{prove, ProofTree, RuleId, SearchConfig, Star, Verdict};
use crate::syntax::{Formula, Path, Sequent, Side, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiAssocError {
    #[error("no sub-structure of the form `(Δ1 , Δ2) , Δ3` at {0}")]
    Shape(Path),
}

/// From a proof of `Γ[(Δ1⊙Δ2)⊙Δ3] ⇒ A` (the triple sitting at `hole`),
/// a core-profile proof of `Γ[Δ1⊙(Δ2⊙Δ3)] ⇒ A`:
/// `W2⊙` grows `Δ2` to `Δ2⊙Δ3`, `W1⊙` grows `Δ3` to `Δ2⊙Δ3`, and `⊙C`
/// with `Λ = Δ1` contracts the copy.
pub fn semi_assoc_admissible(proof: &ProofTree, hole: &Path) -> Result<ProofTree, SemiAssocError> {
    let given = &proof.conclusion;
    let shape = || SemiAssocError::Shape(hole.clone());
    let Some(Structure::OProd(left, d3)) = given.antecedent.at(hole) else {
        return Err(shape());
    };
    let Structure::OProd(d1, d2) = &**left else {
        return Err(shape());
    };
    let (d1, d2, d3) = ((**d1).clone(), (**d2).clone(), (**d3).clone());
    let tail = Structure::oprod(d2, d3.clone());
    let assoc = Structure::oprod(d1, tail.clone());
    let with = |s: Structure| Sequent::new(given.antecedent.replace(hole, s).unwrap(), given.succedent.clone());
    let widened_left = with(Structure::oprod(assoc.clone(), d3));
    let widened = with(Structure::oprod(assoc.clone(), tail));
    let w2 =
        ProofTree::new(widened_left, RuleId::W2(Star::Prod), hole.extend(&[Side::L, Side::R]), vec![proof.clone()]);
    let w1 = ProofTree::new(widened, RuleId::W1(Star::Prod), hole.child(Side::R), vec![w2]);
    Ok(ProofTree::new(with(assoc), RuleId::OProdC, hole.clone(), vec![w1]))
}

/// Outcome of probing `⊤ ⇒ A∨B` and its two disjuncts.
#[derive(Debug, Clone)]
pub struct DisjunctionReport {
    pub disjunction: Verdict,
    pub left: Verdict,
    pub right: Verdict,
}

impl DisjunctionReport {
    /// `None` unless the disjunction was proved; then whether some
    /// disjunct was proved too.
    pub fn holds(&self) -> Option<bool> {
        self.disjunction.is_proved().then(|| self.left.is_proved() || self.right.is_proved())
    }

    /// The first provable disjunct, if any.
    pub fn witness(&self) -> Option<Side> {
        if self.left.is_proved() {
            Some(Side::L)
        } else if self.right.is_proved() {
            Some(Side::R)
        } else {
            None
        }
    }
}

pub fn disjunction_property_probe(a: &Formula, b: &Formula, cfg: &SearchConfig) -> DisjunctionReport {
    let top = |f: Formula| Sequent::new(Structure::Leaf(Formula::Top), f);
    DisjunctionReport {
        disjunction: prove(&top(Formula::or(a.clone(), b.clone())), cfg),
        left: prove(&top(a.clone()), cfg),
        right: prove(&top(b.clone()), cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrbl::{check_proof, search_only, Profile};
    use crate::syntax::{parse_formula, parse_sequent};

    fn proof(text: &str) -> ProofTree {
        search_only(&parse_sequent(text).unwrap(), &SearchConfig::default()).0.unwrap()
    }

    #[test]
    fn semi_assoc_at_the_root_and_in_context() {
        let t = proof("(p , q) , r |- (p * q) * r");
        let out = semi_assoc_admissible(&t, &Path::root()).unwrap();
        assert_eq!(out.conclusion, parse_sequent("p , (q , r) |- (p * q) * r").unwrap());
        check_proof(&out, Profile::Core).unwrap();

        let t = proof("s , ((p , q) , q) |- s * ((p * q) * q)");
        let out = semi_assoc_admissible(&t, &Path::parse("r").unwrap()).unwrap();
        assert_eq!(out.conclusion, parse_sequent("s , (p , (q , q)) |- s * ((p * q) * q)").unwrap());
        check_proof(&out, Profile::Core).unwrap();

        assert!(semi_assoc_admissible(&t, &Path::parse("l").unwrap()).is_err());
    }

    #[test]
    fn disjunction_probe() {
        let cfg = SearchConfig::default();
        let f = |s: &str| parse_formula(s).unwrap();
        let r = disjunction_property_probe(&f("p -> p"), &f("q"), &cfg);
        assert_eq!(r.holds(), Some(true));
        assert_eq!(r.witness(), Some(Side::L));
        let r = disjunction_property_probe(&f("bot"), &f("top"), &cfg);
        assert_eq!(r.witness(), Some(Side::R));
        let r = disjunction_property_probe(&f("p"), &f("p -> bot"), &cfg);
        assert_eq!(r.holds(), None);
    }
}
