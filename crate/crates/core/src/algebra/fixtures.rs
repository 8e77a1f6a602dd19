//! Small example algebras over the atoms `a` and `b`. The ones over the
//! natural numbers are cut down to a window of states.

use std::collections::BTreeMap;
use std::fmt;

use super::{AlgebraError, FiniteAlgebra, State, ValuationAlgebra};
use crate::formula::Atom;

/// A function-backed algebra on the states `min..=max`. Evaluating at, or
/// deriving into, a state outside the window is an error.
#[derive(Clone)]
pub struct WindowedAlgebra {
    name: &'static str,
    alphabet: Vec<Atom>,
    min: State,
    max: State,
    // indexed like `alphabet`
    eval: fn(usize, State) -> bool,
    deriv: fn(usize, State) -> State,
}

impl WindowedAlgebra {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn window(&self) -> (State, State) {
        (self.min, self.max)
    }

    fn check(&self, state: State) -> Result<State, AlgebraError> {
        if (self.min..=self.max).contains(&state) {
            Ok(state)
        } else {
            Err(AlgebraError::StateOutOfRange {
                state,
                min: self.min,
                max: self.max,
            })
        }
    }

    fn index(&self, atom: &Atom) -> Result<usize, AlgebraError> {
        self.alphabet
            .iter()
            .position(|a| a == atom)
            .ok_or_else(|| AlgebraError::UnknownAtom(atom.clone()))
    }
}

impl fmt::Debug for WindowedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WindowedAlgebra({}, {}..={})", self.name, self.min, self.max)
    }
}

impl ValuationAlgebra for WindowedAlgebra {
    fn alphabet(&self) -> &[Atom] {
        &self.alphabet
    }

    fn atom_eval(&self, atom: &Atom, state: State) -> Result<bool, AlgebraError> {
        let i = self.index(atom)?;
        Ok((self.eval)(i, self.check(state)?))
    }

    fn atom_deriv(&self, atom: &Atom, state: State) -> Result<State, AlgebraError> {
        let i = self.index(atom)?;
        self.check((self.deriv)(i, self.check(state)?))
    }
}

fn ab() -> Vec<Atom> {
    vec![Atom::new("a").unwrap(), Atom::new("b").unwrap()]
}

/// One state; `a/1 = T`, `b/1 = F`, no effects.
pub fn trivial_example() -> FiniteAlgebra {
    let [a, b]: [Atom; 2] = ab().try_into().unwrap();
    let rows = BTreeMap::from([(a, (vec![true], vec![1])), (b, (vec![false], vec![1]))]);
    FiniteAlgebra::new(1, rows).unwrap()
}

/// States `0..=max`; `a` is always true and increments the state, `b` is
/// true on odd states and has no effect.
pub fn counter_example(max: State) -> WindowedAlgebra {
    WindowedAlgebra {
        name: "counter",
        alphabet: ab(),
        min: 0,
        max,
        eval: |i, n| if i == 0 { true } else { n % 2 == 1 },
        deriv: |i, n| if i == 0 { n + 1 } else { n },
    }
}

/// States `0..=max`; `a` is true above 1 and takes a Collatz step, `b` is
/// true on multiples of 4 and has no effect.
pub fn collatz_example(max: State) -> WindowedAlgebra {
    WindowedAlgebra {
        name: "collatz",
        alphabet: ab(),
        min: 0,
        max,
        eval: |i, n| if i == 0 { n > 1 } else { n % 4 == 0 },
        deriv: |i, n| match (i, n) {
            (0, n) if n % 2 == 0 => n / 2,
            (0, 1) => 1,
            (0, n) => 3 * n + 1,
            (_, n) => n,
        },
    }
}

/// The three example algebras, with the unbounded ones windowed to
/// `0..=10_000`.
pub fn fixture_algebras() -> Vec<(&'static str, Box<dyn ValuationAlgebra + Send + Sync>)> {
    let trivial = trivial_example();
    vec![
        ("trivial", Box::new(trivial)),
        ("counter", Box::new(counter_example(10_000))),
        ("collatz", Box::new(collatz_example(10_000))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{class_check, evaluate};
    use crate::parse::parse;

    fn atom(s: &str) -> Atom {
        Atom::new(s).unwrap()
    }

    #[test]
    fn trivial_tables() {
        let v = trivial_example();
        assert!(v.atom_eval(&atom("a"), 1).unwrap());
        assert!(!v.atom_eval(&atom("b"), 1).unwrap());
        assert_eq!(v.atom_deriv(&atom("b"), 1).unwrap(), 1);
        assert!(class_check(&v).static_);
    }

    #[test]
    fn counter_tables() {
        let v = counter_example(50);
        for n in 0..50 {
            assert!(v.atom_eval(&atom("a"), n).unwrap());
            assert_eq!(v.atom_deriv(&atom("a"), n).unwrap(), n + 1);
            assert_eq!(v.atom_eval(&atom("b"), n).unwrap(), n % 2 == 1);
            assert_eq!(v.atom_deriv(&atom("b"), n).unwrap(), n);
        }
        assert!(matches!(
            v.atom_deriv(&atom("a"), 50),
            Err(AlgebraError::StateOutOfRange { state: 51, .. })
        ));
        assert!(v.atom_eval(&atom("a"), 51).is_err());
    }

    #[test]
    fn collatz_tables() {
        let v = collatz_example(100);
        let a = atom("a");
        assert_eq!(v.atom_deriv(&a, 6).unwrap(), 3);
        assert_eq!(v.atom_deriv(&a, 3).unwrap(), 10);
        assert_eq!(v.atom_deriv(&a, 1).unwrap(), 1);
        assert!(!v.atom_eval(&a, 1).unwrap());
        assert!(v.atom_eval(&atom("b"), 8).unwrap());
        assert!(!v.atom_eval(&atom("b"), 6).unwrap());
        assert!(v.atom_deriv(&a, 99).is_err());
        // 6 -> 3 -> 10 -> 5 -> 16: a/6, a/3, a/10, a/5 all true, then b/16
        let f = parse("a && a && a && a && b").unwrap();
        assert_eq!(evaluate(&v, &f, 6).unwrap(), (true, 16));
    }

    #[test]
    fn fixtures_are_named() {
        let names: Vec<&str> = fixture_algebras().iter().map(|(n, _)| *n).collect();
        assert_eq!(names, ["trivial", "counter", "collatz"]);
    }
}
