//! Short-circuit formulas over named atoms.
//!
//! `Const(false)` and `Dis` are first-class constructors. The underlying
//! theory only has `T`, atoms, negation and conjunction;
//! [`Formula::expand_abbreviations`] rewrites `F` to `!T` and `x || y` to
//! `!(!x && !y)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A named atom. Atoms are case-sensitive identifiers; `T` and `F` are
/// reserved for the constants.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Atom(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("`{0}` is not a valid atom identifier")]
    InvalidIdentifier(String),
    #[error("`{0}` is reserved for a truth constant and cannot name an atom")]
    Reserved(String),
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Atom {
    pub fn new(name: &str) -> Result<Atom, AtomError> {
        if !is_identifier(name) {
            return Err(AtomError::InvalidIdentifier(name.to_string()));
        }
        if name == "T" || name == "F" {
            return Err(AtomError::Reserved(name.to_string()));
        }
        Ok(Atom(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl FromStr for Atom {
    type Err = AtomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::new(s)
    }
}

impl TryFrom<String> for Atom {
    type Error = AtomError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        Atom::new(&s)
    }
}

impl From<Atom> for String {
    fn from(a: Atom) -> String {
        a.0.to_string()
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Lit(Atom),
    Neg(Box<Formula>),
    Con(Box<Formula>, Box<Formula>),
    Dis(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub const TRUE: Formula = Formula::Const(true);
    pub const FALSE: Formula = Formula::Const(false);

    pub fn lit(atom: Atom) -> Formula {
        Formula::Lit(atom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::Neg(Box::new(inner))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::Con(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Dis(Box::new(left), Box::new(right))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Lit(_) => 1,
            Formula::Neg(x) => 1 + x.size(),
            Formula::Con(x, y) | Formula::Dis(x, y) => 1 + x.size() + y.size(),
        }
    }

    /// Number of atom occurrences (not distinct atoms).
    pub fn atom_occurrences(&self) -> usize {
        match self {
            Formula::Const(_) => 0,
            Formula::Lit(_) => 1,
            Formula::Neg(x) => x.atom_occurrences(),
            Formula::Con(x, y) | Formula::Dis(x, y) => {
                x.atom_occurrences() + y.atom_occurrences()
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Const(_) => {}
            Formula::Lit(a) => {
                out.insert(a.clone());
            }
            Formula::Neg(x) => x.collect_atoms(out),
            Formula::Con(x, y) | Formula::Dis(x, y) => {
                x.collect_atoms(out);
                y.collect_atoms(out);
            }
        }
    }

    /// The complexity measure `cx`, computed on the abbreviation-free form.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Const(true) | Formula::Lit(_) => 0,
            // F abbreviates !T
            Formula::Const(false) => 1,
            Formula::Neg(x) => 1 + x.complexity(),
            Formula::Con(x, y) => 1 + x.complexity().max(y.complexity()),
            // x || y abbreviates !(!x && !y)
            Formula::Dis(x, y) => 2 + (1 + x.complexity()).max(1 + y.complexity()),
        }
    }

    pub fn is_constant_free(&self) -> bool {
        match self {
            Formula::Const(_) => false,
            Formula::Lit(_) => true,
            Formula::Neg(x) => x.is_constant_free(),
            Formula::Con(x, y) | Formula::Dis(x, y) => {
                x.is_constant_free() && y.is_constant_free()
            }
        }
    }

    /// Rewrites every `F` to `!T` and every `x || y` to `!(!x && !y)`.
    pub fn expand_abbreviations(&self) -> Formula {
        match self {
            Formula::Const(true) => Formula::TRUE,
            Formula::Const(false) => Formula::not(Formula::TRUE),
            Formula::Lit(a) => Formula::Lit(a.clone()),
            Formula::Neg(x) => Formula::not(x.expand_abbreviations()),
            Formula::Con(x, y) => Formula::and(x.expand_abbreviations(), y.expand_abbreviations()),
            Formula::Dis(x, y) => Formula::not(Formula::and(
                Formula::not(x.expand_abbreviations()),
                Formula::not(y.expand_abbreviations()),
            )),
        }
    }

    /// Renders with the minimal parentheses needed under `!` > `&&` > `||`
    /// and left associativity.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, Prec::Or, false);
        out
    }

    fn render_into(&self, out: &mut String, ctx: Prec, right_operand: bool) {
        let own = match self {
            Formula::Dis(..) => Prec::Or,
            Formula::Con(..) => Prec::And,
            _ => Prec::Unary,
        };
        let paren = own < ctx || (own == ctx && right_operand && own != Prec::Unary);
        if paren {
            out.push('(');
        }
        match self {
            Formula::Const(true) => out.push('T'),
            Formula::Const(false) => out.push('F'),
            Formula::Lit(a) => out.push_str(a.name()),
            Formula::Neg(x) => {
                out.push('!');
                x.render_into(out, Prec::Unary, false);
            }
            Formula::Con(x, y) => {
                x.render_into(out, Prec::And, false);
                out.push_str(" && ");
                y.render_into(out, Prec::And, true);
            }
            Formula::Dis(x, y) => {
                x.render_into(out, Prec::Or, false);
                out.push_str(" || ");
                y.render_into(out, Prec::Or, true);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Or,
    And,
    Unary,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self.render())
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Formula {
        Formula::Lit(a)
    }
}
