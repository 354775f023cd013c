//! A workbench for residuated basic logic (RBL) and Visser's basic
//! propositional logic (BPL).
//!
//! * [`syntax`]: formulas, structures, sequents, parser and printer.
//! * [`kripke`]: finite BPL Kripke models and bounded validity search.
//! * [`ternary`]: ternary-relation models and the lifting of BPL models.
//! * [`hilbert`]: the Hilbert-style BPL proof checker.
//! * [`simple_calc`]: the algebraic systems `S_RBL` / `S*_RBL`.
//! * [`algebra`]: finite residuated basic algebras.
//! * [`lrbl`]: the sequent calculus `L_RBL` with proof search and mix elimination.

pub mod algebra;
pub mod hilbert;
pub mod kripke;
pub mod lrbl;
pub mod sexpr;
pub mod simple_calc;
pub mod syntax;
pub mod ternary;

pub use syntax::{mu, parse_formula, parse_sequent, parse_simple_sequent, parse_structure, subformulas};
pub use syntax::{Formula, ParseError, Path, Sequent, Side, SimpleSequent, Structure};
