//! Proof files: nested S-expressions `(rule path "conclusion" premise...)`.

use std::fmt;

use thiserror::Error;

use super::{ProofTree, RuleId};
use crate::sexpr::{parse_sexpr, Sexpr, SexprError};
use crate::syntax::{parse_sequent, ParseError, Path};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProofParseError {
    #[error(transparent)]
    Sexpr(#[from] SexprError),
    #[error("bad proof node: {0}")]
    Shape(String),
    #[error("bad conclusion `{text}`: {error}")]
    Sequent { text: String, error: ParseError },
}

impl ProofTree {
    pub fn to_sexpr(&self) -> Sexpr {
        let mut xs = vec![
            Sexpr::Atom(self.rule.name().to_string()),
            Sexpr::Atom(self.path.to_string()),
            Sexpr::Str(self.conclusion.to_string()),
        ];
        xs.extend(self.premises.iter().map(ProofTree::to_sexpr));
        Sexpr::List(xs)
    }

    pub fn from_sexpr(x: &Sexpr) -> Result<ProofTree, ProofParseError> {
        let shape = |m: &str| ProofParseError::Shape(format!("{m} in `{x}`"));
        let xs = x.as_list().ok_or_else(|| shape("expected a list"))?;
        let [rule, path, concl, prems @ ..] = xs else {
            return Err(shape("expected (rule path \"conclusion\" premise...)"));
        };
        let rule: RuleId =
            rule.as_atom().ok_or_else(|| shape("rule must be an atom"))?.parse().map_err(|e: String| shape(&e))?;
        let path = path.as_atom().and_then(Path::parse).ok_or_else(|| shape("path must be `.` or a string of l/r"))?;
        let text = concl.as_str().ok_or_else(|| shape("conclusion must be a string"))?;
        let conclusion =
            parse_sequent(text).map_err(|error| ProofParseError::Sequent { text: text.to_string(), error })?;
        let premises = prems.iter().map(ProofTree::from_sexpr).collect::<Result<_, _>>()?;
        Ok(ProofTree::new(conclusion, rule, path, premises))
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr().pretty())
    }
}

pub fn parse_proof(text: &str) -> Result<ProofTree, ProofParseError> {
    ProofTree::from_sexpr(&parse_sexpr(text)?)
}
