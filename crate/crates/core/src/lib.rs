//! Satisfiability for short-circuit logics.
//!
//! Formulas are evaluated left to right with short-circuiting, and atoms may
//! have side-effects. This crate builds short-circuit evaluation trees,
//! decides path-satisfiability under the free, repetition-proof and
//! memorizing disciplines, turns witness paths into finite valuation
//! algebras, and checks the axiom systems of the five logics against
//! finite models.

pub mod algebra;
pub mod axioms;
pub mod enumerate;
pub mod formula;
pub mod logic;
pub mod normal_form;
pub mod parse;
pub mod path;
pub mod solver;
pub mod tree;
pub mod verify;

pub use algebra::{FiniteAlgebra, ValuationAlgebra};
pub use enumerate::{enumerate_formulas, random_formula};
pub use formula::{Atom, AtomError, Formula};
pub use logic::{Logic, PathDiscipline};
pub use normal_form::{classify_nf, normalize, NfClass};
pub use parse::{parse, ParseError};
pub use path::{check_path, Norm, ValuationPath};
pub use tree::{se, EvalTree, LeafProfile};
pub use solver::{falsify, is_witness, solve, SatOutcome, Strategy, Verdict};
pub use axioms::{axiom_table, check_system, AxiomReport, AxiomScheme, AxiomSystem, SuiteConfig};
pub use verify::{verify, witness_algebra, VerifyReport};
