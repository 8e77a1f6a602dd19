//! Valuation algebras: a set of states with, per atom, an evaluation
//! `a/H` (the atom's truth at state `H`) and a derivative `a.H` (the state
//! after evaluating it).

mod construct;
mod finite;
mod fixtures;
mod random;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::path::ValuationPath;

pub use construct::{build_cva, build_sva, build_va, project_static};
pub use finite::{class_check, AlgebraClass, ClassTarget, FiniteAlgebra};
pub use fixtures::{collatz_example, counter_example, fixture_algebras, trivial_example, WindowedAlgebra};
pub use random::{random_algebra, MAX_ATTEMPTS};

pub type State = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("atom `{0}` is not in the algebra's alphabet")]
    UnknownAtom(Atom),
    #[error("state {state} is outside the algebra's states {min}..={max}")]
    StateOutOfRange { state: State, min: State, max: State },
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("the algebra is not static")]
    NotStatic,
    #[error("no {target} algebra found after {attempts} attempts")]
    GenerationExhausted { target: ClassTarget, attempts: usize },
}

pub trait ValuationAlgebra {
    fn alphabet(&self) -> &[Atom];
    fn atom_eval(&self, atom: &Atom, state: State) -> Result<bool, AlgebraError>;
    fn atom_deriv(&self, atom: &Atom, state: State) -> Result<State, AlgebraError>;

    fn contains_atom(&self, atom: &Atom) -> bool {
        self.alphabet().contains(atom)
    }
}

fn check_atoms<V: ValuationAlgebra + ?Sized>(v: &V, f: &Formula) -> Result<(), AlgebraError> {
    let atoms: BTreeSet<Atom> = f.atoms();
    match atoms.into_iter().find(|a| !v.contains_atom(a)) {
        Some(a) => Err(AlgebraError::UnknownAtom(a)),
        None => Ok(()),
    }
}

/// `(x/H, x.H)` in one pass.
pub fn evaluate<V: ValuationAlgebra + ?Sized>(
    v: &V,
    f: &Formula,
    h: State,
) -> Result<(bool, State), AlgebraError> {
    check_atoms(v, f)?;
    eval_rec(v, f, h, &mut None)
}

pub fn eval_formula<V: ValuationAlgebra + ?Sized>(v: &V, f: &Formula, h: State) -> Result<bool, AlgebraError> {
    evaluate(v, f, h).map(|(b, _)| b)
}

pub fn deriv_formula<V: ValuationAlgebra + ?Sized>(v: &V, f: &Formula, h: State) -> Result<State, AlgebraError> {
    evaluate(v, f, h).map(|(_, s)| s)
}

/// The evaluation path `x <> H`: the atoms evaluated, in order, with the
/// values they returned.
pub fn evaluation_path<V: ValuationAlgebra + ?Sized>(
    v: &V,
    f: &Formula,
    h: State,
) -> Result<ValuationPath, AlgebraError> {
    check_atoms(v, f)?;
    let mut path = Some(ValuationPath::empty());
    eval_rec(v, f, h, &mut path)?;
    Ok(path.unwrap_or_default())
}

fn eval_rec<V: ValuationAlgebra + ?Sized>(
    v: &V,
    f: &Formula,
    h: State,
    trace: &mut Option<ValuationPath>,
) -> Result<(bool, State), AlgebraError> {
    Ok(match f {
        Formula::Const(b) => (*b, h),
        Formula::Lit(a) => {
            let b = v.atom_eval(a, h)?;
            if let Some(p) = trace {
                p.push(a.clone(), b);
            }
            (b, v.atom_deriv(a, h)?)
        }
        Formula::Neg(x) => {
            let (b, s) = eval_rec(v, x, h, trace)?;
            (!b, s)
        }
        Formula::Con(x, y) => match eval_rec(v, x, h, trace)? {
            (true, s) => eval_rec(v, y, s, trace)?,
            (false, s) => (false, s),
        },
        Formula::Dis(x, y) => match eval_rec(v, x, h, trace)? {
            (true, s) => (true, s),
            (false, s) => eval_rec(v, y, s, trace)?,
        },
    })
}

/// `x` and `y` agree on value and derivative at every state.
pub fn congruent(v: &FiniteAlgebra, x: &Formula, y: &Formula) -> Result<bool, AlgebraError> {
    check_atoms(v, x)?;
    check_atoms(v, y)?;
    for h in v.state_range() {
        if eval_rec(v, x, h, &mut None)? != eval_rec(v, y, h, &mut None)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Groups the states that no formula can tell apart: states with equal
/// atom values whose successors under every atom are again in one group.
/// Returns a group id per state, indexed from state 1.
pub fn observation_classes(v: &FiniteAlgebra) -> Vec<usize> {
    let atoms = v.alphabet();
    let states: Vec<State> = v.state_range().collect();
    let row = |h: State| -> Vec<bool> { atoms.iter().map(|a| v.atom_eval(a, h).expect("in range")).collect() };
    let mut class = relabel(states.iter().map(|&h| row(h)).collect());
    loop {
        let keys: Vec<(usize, Vec<usize>)> = states
            .iter()
            .map(|&h| {
                let succ = atoms
                    .iter()
                    .map(|a| class[(v.atom_deriv(a, h).expect("in range") - 1) as usize])
                    .collect();
                (class[(h - 1) as usize], succ)
            })
            .collect();
        let next = relabel(keys);
        if next.iter().max() == class.iter().max() {
            return next;
        }
        class = next;
    }
}

fn relabel<K: Ord>(keys: Vec<K>) -> Vec<usize> {
    let mut ids = std::collections::BTreeMap::new();
    keys.into_iter()
        .map(|k| {
            let n = ids.len();
            *ids.entry(k).or_insert(n)
        })
        .collect()
}

/// Like [`congruent`], but the states reached only have to be
/// indistinguishable rather than equal.
pub fn observationally_congruent(v: &FiniteAlgebra, x: &Formula, y: &Formula) -> Result<bool, AlgebraError> {
    check_atoms(v, x)?;
    check_atoms(v, y)?;
    let class = observation_classes(v);
    for h in v.state_range() {
        let (bx, sx) = eval_rec(v, x, h, &mut None)?;
        let (by, sy) = eval_rec(v, y, h, &mut None)?;
        if bx != by || class[(sx - 1) as usize] != class[(sy - 1) as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}
