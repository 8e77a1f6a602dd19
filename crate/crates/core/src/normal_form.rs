//! The normal-form grammar and a normalizer into it.
//!
//! ```text
//! P   ::= P^T | P^F | P^T && P*
//! P^T ::= T | (a && P^T) || P^T
//! P^F ::= F | (a || P^F) && P^F
//! P*  ::= P^c | P^d
//! P^l ::= (a && P^T) || P^F | (!a && P^T) || P^F
//! P^c ::= P^l | P* && P^d
//! P^d ::= P^l | P* || P^c
//! ```
//!
//! T-terms have trees closed by `T`, F-terms trees closed by `F`, and
//! T*-terms open trees.

use std::fmt;

use serde::Serialize;

use crate::formula::{Atom, Formula};
use crate::tree::EvalTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NfClass {
    TTerm,
    FTerm,
    TStarTerm,
    /// A bare `P^l` term: part of the grammar, but not itself a normal form.
    LTerm,
    NotNormalForm,
}

impl NfClass {
    pub fn is_normal_form(self) -> bool {
        matches!(self, NfClass::TTerm | NfClass::FTerm | NfClass::TStarTerm)
    }
}

impl fmt::Display for NfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NfClass::TTerm => "T-term",
            NfClass::FTerm => "F-term",
            NfClass::TStarTerm => "T*-term",
            NfClass::LTerm => "l-term",
            NfClass::NotNormalForm => "not in normal form",
        })
    }
}

pub fn classify_nf(f: &Formula) -> NfClass {
    if is_t(f) {
        NfClass::TTerm
    } else if is_f(f) {
        NfClass::FTerm
    } else if is_tstar(f) {
        NfClass::TStarTerm
    } else if is_l(f) {
        NfClass::LTerm
    } else {
        NfClass::NotNormalForm
    }
}

fn is_t(f: &Formula) -> bool {
    match f {
        Formula::Const(true) => true,
        Formula::Dis(l, r) => match &**l {
            Formula::Con(a, x) => matches!(**a, Formula::Lit(_)) && is_t(x) && is_t(r),
            _ => false,
        },
        _ => false,
    }
}

fn is_f(f: &Formula) -> bool {
    match f {
        Formula::Const(false) => true,
        Formula::Con(l, r) => match &**l {
            Formula::Dis(a, x) => matches!(**a, Formula::Lit(_)) && is_f(x) && is_f(r),
            _ => false,
        },
        _ => false,
    }
}

fn is_l(f: &Formula) -> bool {
    let Formula::Dis(l, r) = f else {
        return false;
    };
    let Formula::Con(a, t) = &**l else {
        return false;
    };
    let literal = match &**a {
        Formula::Lit(_) => true,
        Formula::Neg(inner) => matches!(**inner, Formula::Lit(_)),
        _ => false,
    };
    literal && is_t(t) && is_f(r)
}

fn is_c(f: &Formula) -> bool {
    match f {
        Formula::Con(x, y) => is_star(x) && is_d(y),
        _ => is_l(f),
    }
}

fn is_d(f: &Formula) -> bool {
    if is_l(f) {
        return true;
    }
    match f {
        Formula::Dis(x, y) => is_star(x) && is_c(y),
        _ => false,
    }
}

fn is_star(f: &Formula) -> bool {
    is_c(f) || is_d(f)
}

fn is_tstar(f: &Formula) -> bool {
    match f {
        Formula::Con(x, y) => is_t(x) && is_star(y),
        _ => false,
    }
}

/// Rewrites `f` into normal form with the same evaluation tree.
/// The output may be exponentially larger than the input.
pub fn normalize(f: &Formula) -> Formula {
    match nf(f) {
        Nf::T(t) => t,
        Nf::F(t) => t,
        Nf::Star(prefix, s) => Formula::and(prefix, s.to_formula()),
    }
}

enum Nf {
    T(Formula),
    F(Formula),
    Star(Formula, Star),
}

/// `P*` terms. `And` never has an `And` as its right operand and `Or`
/// never an `Or`.
#[derive(Clone)]
enum Star {
    Lit {
        positive: bool,
        atom: Atom,
        on_true: Formula,
        on_false: Formula,
    },
    And(Box<Star>, Box<Star>),
    Or(Box<Star>, Box<Star>),
}

impl Star {
    fn to_formula(&self) -> Formula {
        match self {
            Star::Lit {
                positive,
                atom,
                on_true,
                on_false,
            } => {
                let lit = Formula::Lit(atom.clone());
                let lit = if *positive { lit } else { Formula::not(lit) };
                Formula::or(Formula::and(lit, on_true.clone()), on_false.clone())
            }
            Star::And(x, y) => Formula::and(x.to_formula(), y.to_formula()),
            Star::Or(x, y) => Formula::or(x.to_formula(), y.to_formula()),
        }
    }

    fn tree(&self) -> EvalTree {
        crate::tree::se(&self.to_formula())
    }
}

fn star_and(x: Star, y: Star) -> Star {
    match y {
        Star::And(y1, y2) => star_and(star_and(x, *y1), *y2),
        y => Star::And(Box::new(x), Box::new(y)),
    }
}

fn star_neg(s: Star) -> Star {
    match s {
        // !(t < a > f) is !t < a > !f, which only fits the other polarity
        Star::Lit {
            positive,
            atom,
            on_true,
            on_false,
        } => Star::Lit {
            positive: !positive,
            atom,
            on_true: dual(&on_false),
            on_false: dual(&on_true),
        },
        Star::And(x, y) => Star::Or(Box::new(star_neg(*x)), Box::new(star_neg(*y))),
        Star::Or(x, y) => Star::And(Box::new(star_neg(*x)), Box::new(star_neg(*y))),
    }
}

/// Replaces the `T` leaves of the term's tree by `b`'s tree, keeping the
/// `F` leaves.
fn star_then(s: Star, b: &Formula) -> Star {
    match s {
        Star::Lit {
            positive,
            atom,
            on_true,
            on_false,
        } => Star::Lit {
            positive,
            atom,
            on_true: tterm_then(&on_true, b),
            on_false,
        },
        Star::And(x, y) => Star::And(x, Box::new(star_then(*y, b))),
        Star::Or(x, y) => Star::Or(Box::new(star_then(*x, b)), Box::new(star_then(*y, b))),
    }
}

/// Swaps T-terms and F-terms, negating the tree.
fn dual(f: &Formula) -> Formula {
    match f {
        Formula::Const(b) => Formula::Const(!b),
        // (a && x) || y  <->  (a || dual y) && dual x
        Formula::Dis(l, y) => match &**l {
            Formula::Con(a, x) => Formula::and(Formula::or((**a).clone(), dual(y)), dual(x)),
            _ => unreachable!("not a T-term"),
        },
        Formula::Con(l, y) => match &**l {
            Formula::Dis(a, x) => Formula::or(Formula::and((**a).clone(), dual(y)), dual(x)),
            _ => unreachable!("not an F-term"),
        },
        _ => unreachable!("not a T-term or F-term"),
    }
}

/// T-term whose `T` leaves are replaced by `b`.
fn tterm_then(a: &Formula, b: &Formula) -> Formula {
    match a {
        Formula::Const(true) => b.clone(),
        Formula::Dis(l, y) => match &**l {
            Formula::Con(atom, x) => {
                Formula::or(Formula::and((**atom).clone(), tterm_then(x, b)), tterm_then(y, b))
            }
            _ => unreachable!("not a T-term"),
        },
        _ => unreachable!("not a T-term"),
    }
}

fn fterm_from_tree(t: &EvalTree) -> Formula {
    match t {
        EvalTree::Leaf(_) => Formula::FALSE,
        EvalTree::Branch(l, a, r) => Formula::and(
            Formula::or(Formula::Lit(a.clone()), fterm_from_tree(r)),
            fterm_from_tree(l),
        ),
    }
}

fn nf(f: &Formula) -> Nf {
    match f {
        Formula::Const(true) => Nf::T(Formula::TRUE),
        Formula::Const(false) => Nf::F(Formula::FALSE),
        Formula::Lit(a) => Nf::Star(
            Formula::TRUE,
            Star::Lit {
                positive: true,
                atom: a.clone(),
                on_true: Formula::TRUE,
                on_false: Formula::FALSE,
            },
        ),
        Formula::Neg(x) => nf_neg(nf(x)),
        Formula::Con(x, y) => nf_and(nf(x), nf(y)),
        Formula::Dis(x, y) => nf_neg(nf_and(nf_neg(nf(x)), nf_neg(nf(y)))),
    }
}

fn nf_neg(x: Nf) -> Nf {
    match x {
        Nf::T(t) => Nf::F(dual(&t)),
        Nf::F(t) => Nf::T(dual(&t)),
        Nf::Star(prefix, s) => Nf::Star(prefix, star_neg(s)),
    }
}

fn nf_and(x: Nf, y: Nf) -> Nf {
    match (x, y) {
        (Nf::F(a), _) => Nf::F(a),
        (Nf::T(a), Nf::T(b)) => Nf::T(tterm_then(&a, &b)),
        (Nf::T(a), Nf::F(b)) => {
            let tree = crate::tree::se(&a).substitute(&crate::tree::se(&b), &EvalTree::FALSE);
            Nf::F(fterm_from_tree(&tree))
        }
        (Nf::T(a), Nf::Star(b, s)) => Nf::Star(tterm_then(&a, &b), s),
        (Nf::Star(a, s), Nf::T(b)) => Nf::Star(a, star_then(s, &b)),
        (Nf::Star(a, s), Nf::F(b)) => {
            let inner = s.tree().substitute(&crate::tree::se(&b), &EvalTree::FALSE);
            let tree = crate::tree::se(&a).substitute(&inner, &EvalTree::FALSE);
            Nf::F(fterm_from_tree(&tree))
        }
        (Nf::Star(a, s), Nf::Star(b, s2)) => Nf::Star(a, star_and(star_then(s, &b), s2)),
    }
}
