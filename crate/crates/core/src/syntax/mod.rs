//! Formulas, formula structures and sequents.
//!
//! A single AST serves every calculus and semantics in the crate. Formulas
//! are immutable and cheap to clone (children sit behind `Arc`).

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{parse_formula, parse_sequent, parse_simple_sequent, parse_structure, ParseError};

/// A formula over `{p, ⊥, ⊤, ∧, ∨, ·, →, ←}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(Arc<str>),
    Bot,
    Top,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    /// Product `A · B` (printed `*`).
    Prod(Arc<Formula>, Arc<Formula>),
    /// Right residual `A → B`.
    RImp(Arc<Formula>, Arc<Formula>),
    /// Left residual `A ← B`.
    LImp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(Arc::from(name))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn prod(a: Formula, b: Formula) -> Formula {
        Formula::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn rimp(a: Formula, b: Formula) -> Formula {
        Formula::RImp(Arc::new(a), Arc::new(b))
    }

    pub fn limp(a: Formula, b: Formula) -> Formula {
        Formula::LImp(Arc::new(a), Arc::new(b))
    }

    /// `¬A := A → ⊥`.
    pub fn neg(a: Formula) -> Formula {
        Formula::rimp(a, Formula::Bot)
    }

    /// `A ↔ B := (A → B) ∧ (B → A)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::rimp(a.clone(), b.clone()), Formula::rimp(b, a))
    }

    /// Children of a binary connective, `None` for atoms and constants.
    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Prod(a, b)
            | Formula::RImp(a, b)
            | Formula::LImp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// True when the formula lies in the BPL language (no `·`, no `←`).
    pub fn is_bpl(&self) -> bool {
        match self {
            Formula::Prod(..) | Formula::LImp(..) => false,
            _ => self.children().is_none_or(|(a, b)| a.is_bpl() && b.is_bpl()),
        }
    }

    /// True when `←` occurs somewhere in the formula.
    pub fn has_limp(&self) -> bool {
        match self {
            Formula::LImp(..) => true,
            _ => self.children().is_some_and(|(a, b)| a.has_limp() || b.has_limp()),
        }
    }

    /// Height of the syntax tree; atoms and constants have depth 1.
    pub fn depth(&self) -> usize {
        self.children().map_or(1, |(a, b)| 1 + a.depth().max(b.depth()))
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        self.children().map_or(1, |(a, b)| 1 + a.size() + b.size())
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            _ => {
                if let Some((a, b)) = self.children() {
                    a.collect_atoms(out);
                    b.collect_atoms(out);
                }
            }
        }
    }
}

/// The reflexive-transitive subterm closure of `f`.
pub fn subformulas(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        if out.insert(g.clone()) {
            if let Some((a, b)) = g.children() {
                stack.push(a);
                stack.push(b);
            }
        }
    }
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

pub use print::print_formula;

/// One step into a binary structure node.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    L,
    R,
}

/// Address of a sub-structure: the sequence of steps from the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path(pub Vec<Side>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, side: Side) -> Path {
        let mut v = self.0.clone();
        v.push(side);
        Path(v)
    }

    pub fn join(&self, rest: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&rest.0);
        Path(v)
    }

    pub fn extend(&self, steps: &[Side]) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(steps);
        Path(v)
    }

    /// If `self` is a prefix of `other`, the remaining steps.
    pub fn strip_prefix_of(&self, other: &Path) -> Option<Path> {
        other.0.strip_prefix(self.0.as_slice()).map(|r| Path(r.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses the textual form produced by `Display` (`.` for the root).
    pub fn parse(text: &str) -> Option<Path> {
        if text == "." {
            return Some(Path::root());
        }
        text.chars()
            .map(|c| match c {
                'l' => Some(Side::L),
                'r' => Some(Side::R),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .map(Path)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for s in &self.0 {
            f.write_str(match s {
                Side::L => "l",
                Side::R => "r",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({})", self)
    }
}

/// A formula structure: a binary tree over `⊙` and `⊘` with formula leaves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Leaf(Formula),
    /// `Γ ⊙ Δ`, read as `·` by [`mu`]; written `,` in text.
    OProd(Arc<Structure>, Arc<Structure>),
    /// `Γ ⊘ Δ`, read as `∧` by [`mu`]; written `;` in text.
    OMeet(Arc<Structure>, Arc<Structure>),
}

impl Structure {
    pub fn leaf(f: Formula) -> Structure {
        Structure::Leaf(f)
    }

    pub fn oprod(a: Structure, b: Structure) -> Structure {
        Structure::OProd(Arc::new(a), Arc::new(b))
    }

    pub fn omeet(a: Structure, b: Structure) -> Structure {
        Structure::OMeet(Arc::new(a), Arc::new(b))
    }

    pub fn as_leaf(&self) -> Option<&Formula> {
        match self {
            Structure::Leaf(f) => Some(f),
            _ => None,
        }
    }

    pub fn children(&self) -> Option<(&Structure, &Structure)> {
        match self {
            Structure::Leaf(_) => None,
            Structure::OProd(a, b) | Structure::OMeet(a, b) => Some((a, b)),
        }
    }

    pub fn child(&self, side: Side) -> Option<&Structure> {
        self.children().map(|(a, b)| match side {
            Side::L => a,
            Side::R => b,
        })
    }

    /// The sub-structure at `path`.
    pub fn at(&self, path: &Path) -> Option<&Structure> {
        let mut cur = self;
        for &s in &path.0 {
            cur = cur.child(s)?;
        }
        Some(cur)
    }

    /// A copy with the sub-structure at `path` replaced by `with`.
    pub fn replace(&self, path: &Path, with: Structure) -> Option<Structure> {
        self.replace_from(&path.0, with)
    }

    fn replace_from(&self, steps: &[Side], with: Structure) -> Option<Structure> {
        let Some((&first, rest)) = steps.split_first() else {
            return Some(with);
        };
        let (a, b) = self.children()?;
        let (a, b) = match first {
            Side::L => (a.replace_from(rest, with)?, b.clone()),
            Side::R => (a.clone(), b.replace_from(rest, with)?),
        };
        Some(match self {
            Structure::OProd(..) => Structure::oprod(a, b),
            Structure::OMeet(..) => Structure::omeet(a, b),
            Structure::Leaf(_) => unreachable!(),
        })
    }

    /// Every leaf with its address, left to right.
    pub fn leaves(&self) -> Vec<(Path, &Formula)> {
        let mut out = Vec::new();
        self.walk(&mut Path::root(), &mut |p, s| {
            if let Structure::Leaf(f) = s {
                out.push((p.clone(), f));
            }
        });
        out
    }

    /// Every node with its address, in preorder.
    pub fn nodes(&self) -> Vec<(Path, &Structure)> {
        let mut out = Vec::new();
        self.walk(&mut Path::root(), &mut |p, s| out.push((p.clone(), s)));
        out
    }

    fn walk<'a>(&'a self, path: &mut Path, visit: &mut dyn FnMut(&Path, &'a Structure)) {
        visit(path, self);
        if let Some((a, b)) = self.children() {
            path.0.push(Side::L);
            a.walk(path, visit);
            path.0.pop();
            path.0.push(Side::R);
            b.walk(path, visit);
            path.0.pop();
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.children().map_or(1, |(a, b)| a.leaf_count() + b.leaf_count())
    }

    /// Formulas occurring as leaves.
    pub fn formulas(&self) -> Vec<&Formula> {
        self.leaves().into_iter().map(|(_, f)| f).collect()
    }
}

impl From<Formula> for Structure {
    fn from(f: Formula) -> Self {
        Structure::Leaf(f)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_structure(self))
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

/// The formula associated with a structure: `⊙ ↦ ·`, `⊘ ↦ ∧`.
pub fn mu(s: &Structure) -> Formula {
    match s {
        Structure::Leaf(f) => f.clone(),
        Structure::OProd(a, b) => Formula::prod(mu(a), mu(b)),
        Structure::OMeet(a, b) => Formula::and(mu(a), mu(b)),
    }
}

/// `Γ ⇒ A`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Structure,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Structure, succedent: Formula) -> Sequent {
        Sequent { antecedent, succedent }
    }

    /// The simple sequent `μ(Γ) ⇒ A`.
    pub fn to_simple(&self) -> SimpleSequent {
        SimpleSequent::new(mu(&self.antecedent), self.succedent.clone())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.antecedent, self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

/// `A ⇒ B` with single formulas on both sides.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSequent {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl SimpleSequent {
    pub fn new(lhs: Formula, rhs: Formula) -> SimpleSequent {
        SimpleSequent { lhs, rhs }
    }
}

impl fmt::Display for SimpleSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for SimpleSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}
