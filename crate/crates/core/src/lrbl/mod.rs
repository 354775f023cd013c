//! The structured sequent calculus `L_RBL`.
//!
//! Proofs are explicit trees whose nodes record the hole address of the
//! active sub-structure, so a tree re-checks against the literal rule
//! schemas. Search runs backward in the cut-free system; refutation looks
//! for a lifted ternary model or a finite algebra falsifying `μ(Γ) ⇒ A`.

mod check;
mod mix;
mod probe;
mod refute;
mod search;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::FiniteRba;
use crate::syntax::{Formula, Path, Sequent, Structure};
use crate::ternary::TernaryModel;

pub use check::{check_proof, mix_occurrences, CheckError};
pub use mix::{eliminate_mix, MixError};
pub use probe::{disjunction_property_probe, semi_assoc_admissible, DisjunctionReport, SemiAssocError};
pub use refute::{refute, verify_countermodel};
pub use search::{prove, search_only};
pub use text::{parse_proof, ProofParseError};

/// Which structural connective a weakening inserts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Star {
    /// `⊙`
    Prod,
    /// `⊘`
    Meet,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RuleId {
    Id,
    Top,
    Bot,
    RImpL,
    RImpR,
    LImpL,
    LImpR,
    ProdL,
    ProdR,
    AndL,
    AndR,
    OrL,
    OrR1,
    OrR2,
    OMeetC,
    OProdC,
    OMeetE,
    Cut,
    Mix,
    /// `Γ[Δ] / Γ[Δ' * Δ]`
    W1(Star),
    /// `Γ[Δ] / Γ[Δ * Δ']`
    W2(Star),
    /// `Γ[(Δ1⊘Δ2)⊘Δ3] / Γ[Δ1⊘(Δ2⊘Δ3)]`
    OMeetA1,
    /// `Γ[Δ1⊘(Δ2⊘Δ3)] / Γ[(Δ1⊘Δ2)⊘Δ3]`
    OMeetA2,
    /// `Γ[Δ⊙Δ] / Γ[Δ]` (LJ profile)
    OProdCStar,
    /// `Γ[Δ1⊙(Δ2⊙Δ3)] / Γ[(Δ1⊙Δ2)⊙Δ3]` (LJ profile)
    OProdA2,
    /// `Γ[Δ⊙Λ] / Γ[Λ⊙Δ]` (LJ profile)
    OProdE,
    /// The axiom `⊤→A ⇒ A` (top-imp profile)
    TopImpAxiom,
}

impl RuleId {
    pub const ALL: [RuleId; 29] = [
        RuleId::Id,
        RuleId::Top,
        RuleId::Bot,
        RuleId::RImpL,
        RuleId::RImpR,
        RuleId::LImpL,
        RuleId::LImpR,
        RuleId::ProdL,
        RuleId::ProdR,
        RuleId::AndL,
        RuleId::AndR,
        RuleId::OrL,
        RuleId::OrR1,
        RuleId::OrR2,
        RuleId::OMeetC,
        RuleId::OProdC,
        RuleId::OMeetE,
        RuleId::Cut,
        RuleId::Mix,
        RuleId::W1(Star::Prod),
        RuleId::W1(Star::Meet),
        RuleId::W2(Star::Prod),
        RuleId::W2(Star::Meet),
        RuleId::OMeetA1,
        RuleId::OMeetA2,
        RuleId::OProdCStar,
        RuleId::OProdA2,
        RuleId::OProdE,
        RuleId::TopImpAxiom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Id => "Id",
            RuleId::Top => "Top",
            RuleId::Bot => "Bot",
            RuleId::RImpL => "RImpL",
            RuleId::RImpR => "RImpR",
            RuleId::LImpL => "LImpL",
            RuleId::LImpR => "LImpR",
            RuleId::ProdL => "ProdL",
            RuleId::ProdR => "ProdR",
            RuleId::AndL => "AndL",
            RuleId::AndR => "AndR",
            RuleId::OrL => "OrL",
            RuleId::OrR1 => "OrR1",
            RuleId::OrR2 => "OrR2",
            RuleId::OMeetC => "OMeetC",
            RuleId::OProdC => "OProdC",
            RuleId::OMeetE => "OMeetE",
            RuleId::Cut => "Cut",
            RuleId::Mix => "Mix",
            RuleId::W1(Star::Prod) => "W1prod",
            RuleId::W1(Star::Meet) => "W1meet",
            RuleId::W2(Star::Prod) => "W2prod",
            RuleId::W2(Star::Meet) => "W2meet",
            RuleId::OMeetA1 => "OMeetA1",
            RuleId::OMeetA2 => "OMeetA2",
            RuleId::OProdCStar => "OProdCStar",
            RuleId::OProdA2 => "OProdA2",
            RuleId::OProdE => "OProdE",
            RuleId::TopImpAxiom => "TopImpAxiom",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RuleId::Id | RuleId::Top | RuleId::Bot | RuleId::TopImpAxiom => 0,
            RuleId::RImpL | RuleId::LImpL | RuleId::ProdR | RuleId::AndR | RuleId::OrL => 2,
            RuleId::Cut | RuleId::Mix => 2,
            _ => 1,
        }
    }

    /// Left logical rules: the active formula is a leaf of the antecedent.
    pub fn is_left(self) -> bool {
        matches!(self, RuleId::RImpL | RuleId::LImpL | RuleId::ProdL | RuleId::AndL | RuleId::OrL)
    }

    pub fn is_right(self) -> bool {
        matches!(self, RuleId::RImpR | RuleId::LImpR | RuleId::ProdR | RuleId::AndR | RuleId::OrR1 | RuleId::OrR2)
    }

    pub fn is_axiom(self) -> bool {
        self.arity() == 0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.iter().copied().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Rule sets: the core calculus, the LJ extension and the `⊤→A ⇒ A` extension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    #[default]
    Core,
    Lj,
    TopImp,
}

impl Profile {
    pub fn allows(self, rule: RuleId) -> bool {
        match rule {
            RuleId::OProdCStar | RuleId::OProdA2 | RuleId::OProdE => self == Profile::Lj,
            RuleId::TopImpAxiom => self == Profile::TopImp,
            _ => true,
        }
    }

    pub fn rules(self) -> Vec<RuleId> {
        RuleId::ALL.iter().copied().filter(|&r| self.allows(r)).collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Core => "core",
            Profile::Lj => "lj",
            Profile::TopImp => "top-imp",
        }
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(Profile::Core),
            "lj" => Ok(Profile::Lj),
            "top-imp" => Ok(Profile::TopImp),
            _ => Err(format!("unknown profile `{s}` (expected core, lj or top-imp)")),
        }
    }
}

/// A derivation tree. `path` is the hole address of the active
/// sub-structure in the conclusion's antecedent (the root for right rules,
/// axioms, `Mix` and `Cut` on the whole antecedent).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub path: Path,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(conclusion: Sequent, rule: RuleId, path: Path, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree { conclusion, rule, path, premises }
    }

    pub fn axiom(conclusion: Sequent, rule: RuleId) -> ProofTree {
        ProofTree::new(conclusion, rule, Path::root(), Vec::new())
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    /// Leaves have height 1.
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn count_rule(&self, rule: RuleId) -> usize {
        (self.rule == rule) as usize + self.premises.iter().map(|p| p.count_rule(rule)).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.count_rule(RuleId::Cut) + self.count_rule(RuleId::Mix) == 0
    }

    /// Formulas eliminated by the `Cut` and `Mix` nodes of the tree.
    pub fn cut_formulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if matches!(t.rule, RuleId::Cut | RuleId::Mix) {
                if let Some(p) = t.premises.first() {
                    out.push(p.conclusion.succedent.clone());
                }
            }
        });
        out
    }

    pub fn visit(&self, f: &mut dyn FnMut(&ProofTree)) {
        f(self);
        for p in &self.premises {
            p.visit(f);
        }
    }
}

/// Search parameters.
#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub profile: Profile,
    /// Maximum number of non-invertible steps on a branch.
    pub depth_bound: usize,
    /// Per-branch budget of `⊙C` / `⊙C*` applications.
    pub contraction_budget: usize,
    /// Maximum number of ternary states in a relational countermodel.
    pub countermodel_size: usize,
    /// Maximum algebra size for algebraic countermodels (at most 5).
    pub algebra_size: usize,
    /// Hard cap on expanded search nodes, to bound wall-clock time.
    pub node_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            profile: Profile::Core,
            depth_bound: 14,
            contraction_budget: 2,
            countermodel_size: 8,
            algebra_size: 4,
            node_limit: 200_000,
        }
    }
}

impl SearchConfig {
    pub fn with_profile(profile: Profile) -> SearchConfig {
        SearchConfig { profile, ..SearchConfig::default() }
    }
}

/// A finite structure falsifying `μ(Γ) ⇒ A`.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Countermodel {
    /// A lifted ternary model and a state where the sequent fails.
    Relational { model: TernaryModel, state: usize },
    /// A finite residuated basic algebra and an assignment with
    /// `μ(Γ) ≰ A`.
    Algebraic { algebra: FiniteRba, assignment: BTreeMap<String, usize> },
}

impl Countermodel {
    pub fn states(&self) -> usize {
        match self {
            Countermodel::Relational { model, .. } => model.states,
            Countermodel::Algebraic { algebra, .. } => algebra.size,
        }
    }
}

/// What the bounded search explored before giving up.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub depth_bound: usize,
    pub contraction_budget: usize,
    pub countermodel_size: usize,
    pub nodes: usize,
    pub node_limit_hit: bool,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Proved(ProofTree),
    Refuted(Countermodel),
    Unknown(SearchReport),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Proved(_) => "proved",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

// Helpers shared by the submodules.

fn at<'a>(s: &'a Sequent, p: &Path) -> Option<&'a Structure> {
    s.antecedent.at(p)
}

fn put(s: &Sequent, p: &Path, with: Structure) -> Option<Sequent> {
    Some(Sequent::new(s.antecedent.replace(p, with)?, s.succedent.clone()))
}

fn with_succ(s: &Sequent, c: Formula) -> Sequent {
    Sequent::new(s.antecedent.clone(), c)
}
