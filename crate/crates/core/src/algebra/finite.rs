use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, State, ValuationAlgebra};
use crate::formula::Atom;
use crate::logic::Logic;

/// A table-backed valuation algebra over states `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraJson", into = "AlgebraJson")]
pub struct FiniteAlgebra {
    states: usize,
    // sorted, no duplicates
    alphabet: Vec<Atom>,
    // eval[i][h - 1] for alphabet[i]
    eval: Vec<Vec<bool>>,
    deriv: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    states: usize,
    alphabet: Vec<Atom>,
    eval: BTreeMap<Atom, Vec<bool>>,
    deriv: BTreeMap<Atom, Vec<usize>>,
}

impl TryFrom<AlgebraJson> for FiniteAlgebra {
    type Error = AlgebraError;

    fn try_from(json: AlgebraJson) -> Result<Self, Self::Error> {
        let mut eval = json.eval;
        let mut deriv = json.deriv;
        let mut rows = BTreeMap::new();
        for a in json.alphabet {
            let e = eval
                .remove(&a)
                .ok_or_else(|| AlgebraError::Invalid(format!("no evaluation row for `{a}`")))?;
            let d = deriv
                .remove(&a)
                .ok_or_else(|| AlgebraError::Invalid(format!("no derivative row for `{a}`")))?;
            if rows.insert(a.clone(), (e, d)).is_some() {
                return Err(AlgebraError::Invalid(format!("`{a}` listed twice")));
            }
        }
        if let Some(a) = eval.keys().chain(deriv.keys()).next() {
            return Err(AlgebraError::Invalid(format!("`{a}` has a row but is not in the alphabet")));
        }
        FiniteAlgebra::new(json.states, rows)
    }
}

impl From<FiniteAlgebra> for AlgebraJson {
    fn from(v: FiniteAlgebra) -> Self {
        AlgebraJson {
            states: v.states,
            eval: v.alphabet.iter().cloned().zip(v.eval).collect(),
            deriv: v.alphabet.iter().cloned().zip(v.deriv).collect(),
            alphabet: v.alphabet,
        }
    }
}

impl FiniteAlgebra {
    /// `rows` maps each atom to its evaluation and derivative over states
    /// `1..=states`, in that order.
    pub fn new(
        states: usize,
        rows: BTreeMap<Atom, (Vec<bool>, Vec<usize>)>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        if states == 0 {
            return Err(AlgebraError::Invalid("an algebra needs at least one state".into()));
        }
        let mut v = FiniteAlgebra {
            states,
            alphabet: Vec::with_capacity(rows.len()),
            eval: Vec::with_capacity(rows.len()),
            deriv: Vec::with_capacity(rows.len()),
        };
        for (a, (e, d)) in rows {
            if e.len() != states || d.len() != states {
                return Err(AlgebraError::Invalid(format!("rows for `{a}` must have {states} entries")));
            }
            if let Some(bad) = d.iter().find(|&&s| s == 0 || s > states) {
                return Err(AlgebraError::Invalid(format!("derivative of `{a}` leads to missing state {bad}")));
            }
            v.alphabet.push(a);
            v.eval.push(e);
            v.deriv.push(d);
        }
        Ok(v)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn state_range(&self) -> RangeInclusive<State> {
        1..=self.states as State
    }

    fn index(&self, atom: &Atom) -> Result<usize, AlgebraError> {
        self.alphabet
            .binary_search(atom)
            .map_err(|_| AlgebraError::UnknownAtom(atom.clone()))
    }

    fn slot(&self, state: State) -> Result<usize, AlgebraError> {
        if state == 0 || state > self.states as State {
            return Err(AlgebraError::StateOutOfRange {
                state,
                min: 1,
                max: self.states as State,
            });
        }
        Ok(state as usize - 1)
    }

    /// Adds every missing atom with value `F` and the identity derivative
    /// at every state.
    pub fn with_atoms<I: IntoIterator<Item = Atom>>(mut self, atoms: I) -> FiniteAlgebra {
        for a in atoms {
            if let Err(i) = self.alphabet.binary_search(&a) {
                self.alphabet.insert(i, a);
                self.eval.insert(i, vec![false; self.states]);
                self.deriv.insert(i, (1..=self.states).collect());
            }
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serializes")
    }

    pub fn from_json(text: &str) -> Result<FiniteAlgebra, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Invalid(e.to_string()))
    }

    fn e(&self, a: usize, h: usize) -> bool {
        self.eval[a][h - 1]
    }

    fn d(&self, a: usize, h: usize) -> usize {
        self.deriv[a][h - 1]
    }
}

impl ValuationAlgebra for FiniteAlgebra {
    fn alphabet(&self) -> &[Atom] {
        &self.alphabet
    }

    fn atom_eval(&self, atom: &Atom, state: State) -> Result<bool, AlgebraError> {
        let i = self.index(atom)?;
        Ok(self.eval[i][self.slot(state)?])
    }

    fn atom_deriv(&self, atom: &Atom, state: State) -> Result<State, AlgebraError> {
        let i = self.index(atom)?;
        Ok(self.deriv[i][self.slot(state)?] as State)
    }

    fn contains_atom(&self, atom: &Atom) -> bool {
        self.alphabet.binary_search(atom).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AlgebraClass {
    pub repetition_proof: bool,
    pub contractive: bool,
    pub memorizing: bool,
    pub static_: bool,
}

impl AlgebraClass {
    pub fn satisfies(self, target: ClassTarget) -> bool {
        match target {
            ClassTarget::Free => true,
            ClassTarget::RepetitionProof => self.repetition_proof,
            ClassTarget::Contractive => self.contractive,
            ClassTarget::Memorizing => self.memorizing,
            ClassTarget::Static => self.static_,
        }
    }

    /// The most restrictive class the flags reach.
    pub fn strongest(self) -> ClassTarget {
        if self.static_ {
            ClassTarget::Static
        } else if self.memorizing {
            ClassTarget::Memorizing
        } else if self.contractive {
            ClassTarget::Contractive
        } else if self.repetition_proof {
            ClassTarget::RepetitionProof
        } else {
            ClassTarget::Free
        }
    }
}

/// A class of valuation algebras, from least to most restrictive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassTarget {
    Free,
    RepetitionProof,
    Contractive,
    Memorizing,
    Static,
}

impl ClassTarget {
    pub const ALL: [ClassTarget; 5] = [
        ClassTarget::Free,
        ClassTarget::RepetitionProof,
        ClassTarget::Contractive,
        ClassTarget::Memorizing,
        ClassTarget::Static,
    ];

    /// The algebras whose congruences validate the logic's axioms.
    pub fn for_logic(logic: Logic) -> ClassTarget {
        match logic {
            Logic::Fscl => ClassTarget::Free,
            Logic::Rpscl => ClassTarget::RepetitionProof,
            Logic::Cscl => ClassTarget::Contractive,
            Logic::Mscl => ClassTarget::Memorizing,
            Logic::Sscl => ClassTarget::Static,
        }
    }
}

impl fmt::Display for ClassTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTarget::Free => "free",
            ClassTarget::RepetitionProof => "repetition-proof",
            ClassTarget::Contractive => "contractive",
            ClassTarget::Memorizing => "memorizing",
            ClassTarget::Static => "static",
        })
    }
}

/// Decides each class by quantifying over every atom (pair) and state.
pub fn class_check(v: &FiniteAlgebra) -> AlgebraClass {
    let atoms = 0..v.alphabet.len();
    let states = 1..=v.states;
    let pairs = || atoms.clone().flat_map(|a| atoms.clone().map(move |b| (a, b)));

    let repetition_proof = atoms
        .clone()
        .all(|a| states.clone().all(|h| v.e(a, v.d(a, h)) == v.e(a, h)));
    let contractive = repetition_proof
        && atoms
            .clone()
            .all(|a| states.clone().all(|h| v.d(a, v.d(a, h)) == v.d(a, h)));
    let memorizing = contractive
        && pairs().all(|(a, b)| {
            states.clone().all(|h| {
                let bah = v.d(b, v.d(a, h));
                v.e(a, bah) == v.e(a, h) && v.d(a, bah) == bah
            })
        });
    let static_ = memorizing && pairs().all(|(a, b)| states.clone().all(|h| v.e(a, v.d(b, h)) == v.e(a, h)));
    AlgebraClass {
        repetition_proof,
        contractive,
        memorizing,
        static_,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Atom {
        Atom::new(s).unwrap()
    }

    fn algebra(states: usize, rows: &[(&str, &[bool], &[usize])]) -> FiniteAlgebra {
        let rows = rows
            .iter()
            .map(|(a, e, d)| (atom(a), (e.to_vec(), d.to_vec())))
            .collect();
        FiniteAlgebra::new(states, rows).unwrap()
    }

    #[test]
    fn one_state_algebras_are_static() {
        let v = algebra(1, &[("a", &[true], &[1]), ("b", &[false], &[1])]);
        let c = class_check(&v);
        assert!(c.repetition_proof && c.contractive && c.memorizing && c.static_);
    }

    #[test]
    fn class_hierarchy_examples() {
        // a flips its own value: not repetition-proof
        let v = algebra(2, &[("a", &[true, false], &[2, 2])]);
        assert_eq!(class_check(&v), AlgebraClass::default());
        // a moves 1 -> 2 -> 3 keeping its value: repetition-proof, not contractive
        let v = algebra(3, &[("a", &[true, true, true], &[2, 3, 3])]);
        let c = class_check(&v);
        assert!(c.repetition_proof && !c.contractive);
        // a changes b's value, but only while b has not been evaluated yet
        let v = algebra(
            4,
            &[
                ("a", &[true, true, true, true], &[2, 2, 4, 4]),
                ("b", &[false, true, false, false], &[3, 2, 3, 4]),
            ],
        );
        let c = class_check(&v);
        assert!(c.memorizing && !c.static_);
        assert_eq!(c.strongest(), ClassTarget::Memorizing);
    }

    #[test]
    fn memorizing_needs_persistence() {
        // b undoes a's effect: a.b.a.1 = 2 but b.a.1 = 1
        let v = algebra(2, &[("a", &[true, true], &[2, 2]), ("b", &[true, true], &[1, 1])]);
        let c = class_check(&v);
        assert!(c.contractive && !c.memorizing);
    }

    #[test]
    fn validation() {
        let rows = [(atom("a"), (vec![true], vec![2]))].into_iter().collect();
        assert!(FiniteAlgebra::new(1, rows).is_err());
        assert!(FiniteAlgebra::new(0, BTreeMap::new()).is_err());
        let rows = [(atom("a"), (vec![true, false], vec![1]))].into_iter().collect();
        assert!(FiniteAlgebra::new(2, rows).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = algebra(2, &[("b", &[false, true], &[1, 2]), ("a", &[true, true], &[2, 2])]);
        let json = v.to_json();
        assert_eq!(
            json,
            r#"{"states":2,"alphabet":["a","b"],"eval":{"a":[true,true],"b":[false,true]},"deriv":{"a":[2,2],"b":[1,2]}}"#
        );
        assert_eq!(FiniteAlgebra::from_json(&json).unwrap(), v);
        assert!(FiniteAlgebra::from_json(r#"{"states":1,"alphabet":["a"],"eval":{},"deriv":{}}"#).is_err());
        assert!(FiniteAlgebra::from_json(
            r#"{"states":1,"alphabet":[],"eval":{"a":[true]},"deriv":{"a":[1]}}"#
        )
        .is_err());
    }

    #[test]
    fn adding_atoms() {
        let v = algebra(2, &[("b", &[false, true], &[1, 2])]).with_atoms([atom("a"), atom("b")]);
        assert_eq!(v.alphabet(), &[atom("a"), atom("b")]);
        assert!(!v.atom_eval(&atom("a"), 2).unwrap());
        assert_eq!(v.atom_deriv(&atom("a"), 2).unwrap(), 2);
        assert!(v.atom_eval(&atom("b"), 2).unwrap());
    }
}
