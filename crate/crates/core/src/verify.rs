//! Checking a claimed witness: its result on the evaluation tree, the
//! logic's path discipline, and the evaluation of the formula in the
//! algebras built from the path.

use serde::Serialize;

use crate::algebra::{build_cva, build_sva, build_va, class_check, eval_formula, ClassTarget, FiniteAlgebra};
use crate::formula::Formula;
use crate::logic::Logic;
use crate::path::{check_path, ValuationPath};

/// One constructed algebra and the value of the formula in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub constructor: &'static str,
    /// The formula's value at state 1.
    pub value: bool,
    /// The strongest class the algebra belongs to.
    pub class: ClassTarget,
    /// The value equals the path result and the class is the one the
    /// constructor promises.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub logic: Logic,
    /// `None` when the path ends before reaching a leaf, or leaves the
    /// tree's branch structure.
    pub result: Option<bool>,
    pub discipline_ok: bool,
    /// Empty when the result is undefined.
    pub round_trips: Vec<RoundTrip>,
}

impl VerifyReport {
    /// The path is a witness for the formula in the logic.
    pub fn accepted(&self) -> bool {
        self.result == Some(true) && self.discipline_ok && self.round_trips.iter().all(|r| r.agrees)
    }

    /// 0 accepted, 1 false result, 3 undefined result, 4 discipline
    /// violation, 70 a round trip that disagrees.
    pub fn exit_code(&self) -> i32 {
        match self.result {
            None => 3,
            Some(false) => 1,
            Some(true) if !self.discipline_ok => 4,
            Some(true) if self.round_trips.iter().any(|r| !r.agrees) => 70,
            Some(true) => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// The constructor for the strongest class the path's shape allows:
/// `sva` for memorizing paths, `cva` for repetition-proof ones, `va`
/// otherwise.
pub fn witness_algebra(p: &ValuationPath) -> (&'static str, FiniteAlgebra) {
    if p.is_memorizing() {
        ("sva", build_sva(p))
    } else if p.is_repetition_proof() {
        ("cva", build_cva(p))
    } else {
        ("va", build_va(p))
    }
}

/// Evaluates `f` at state 1 of each constructor applicable to `p`. Only
/// meaningful when `p` has a defined result on `f`.
pub fn round_trips(f: &Formula, p: &ValuationPath, expected: bool) -> Vec<RoundTrip> {
    let mut builds = vec![("va", build_va(p), ClassTarget::Free)];
    if p.is_repetition_proof() {
        builds.push(("cva", build_cva(p), ClassTarget::Contractive));
    }
    if p.is_memorizing() {
        builds.push(("sva", build_sva(p), ClassTarget::Static));
    }
    builds
        .into_iter()
        .map(|(constructor, v, promised)| {
            let v = v.with_atoms(f.atoms());
            let value = eval_formula(&v, f, 1).expect("alphabet covers the formula");
            let class = class_check(&v);
            RoundTrip {
                constructor,
                value,
                class: class.strongest(),
                agrees: value == expected && class.satisfies(promised),
            }
        })
        .collect()
}

pub fn verify(logic: Logic, f: &Formula, p: &ValuationPath) -> VerifyReport {
    let result = p.result_on_formula(f);
    VerifyReport {
        logic,
        result,
        discipline_ok: check_path(logic, p),
        round_trips: result.map(|r| round_trips(f, p, r)).unwrap_or_default(),
    }
}
