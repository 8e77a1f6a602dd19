//! The equational axiom systems of the five logics, as data, with checks
//! of their soundness: instances of an axiom must have equal evaluation
//! trees (free logic) or be congruent in every algebra of the matching
//! class.
//!
//! In the schemes, `x`, `y`, `z` and `u` stand for arbitrary formulas and
//! `a` for an atom.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    congruent, observationally_congruent, random_algebra, AlgebraError, ClassTarget, FiniteAlgebra,
};
use crate::enumerate::random_formula;
use crate::formula::{Atom, Formula};
use crate::logic::Logic;
use crate::parse::parse;
use crate::tree::se;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AxiomSystem {
    EqFscl,
    EqRpscl,
    EqCscl,
    EqMscl,
    EqSscl,
}

impl AxiomSystem {
    pub const ALL: [AxiomSystem; 5] = [
        AxiomSystem::EqFscl,
        AxiomSystem::EqRpscl,
        AxiomSystem::EqCscl,
        AxiomSystem::EqMscl,
        AxiomSystem::EqSscl,
    ];

    pub fn logic(self) -> Logic {
        match self {
            AxiomSystem::EqFscl => Logic::Fscl,
            AxiomSystem::EqRpscl => Logic::Rpscl,
            AxiomSystem::EqCscl => Logic::Cscl,
            AxiomSystem::EqMscl => Logic::Mscl,
            AxiomSystem::EqSscl => Logic::Sscl,
        }
    }

    pub fn for_logic(logic: Logic) -> AxiomSystem {
        match logic {
            Logic::Fscl => AxiomSystem::EqFscl,
            Logic::Rpscl => AxiomSystem::EqRpscl,
            Logic::Cscl => AxiomSystem::EqCscl,
            Logic::Mscl => AxiomSystem::EqMscl,
            Logic::Sscl => AxiomSystem::EqSscl,
        }
    }

    /// The algebras in which the system's equations must hold.
    pub fn class(self) -> ClassTarget {
        ClassTarget::for_logic(self.logic())
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Eq{}", self.logic())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom system `{0}` (expected EqFSCL, EqRPSCL, EqCSCL, EqMSCL or EqSSCL)")]
pub struct UnknownSystem(pub String);

impl FromStr for AxiomSystem {
    type Err = UnknownSystem;

    /// Accepts `EqFSCL` as well as the bare logic name, in any case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let bare = lower.strip_prefix("eq").unwrap_or(&lower);
        bare.parse::<Logic>()
            .map(AxiomSystem::for_logic)
            .map_err(|_| UnknownSystem(s.to_string()))
    }
}

const FORMULA_VARS: [&str; 4] = ["x", "y", "z", "u"];
const ATOM_VARS: [&str; 1] = ["a"];

/// One axiom or axiom scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomScheme {
    /// `1` to `10` for the free-logic axioms, otherwise a system prefix and
    /// number such as `RP3`.
    pub name: &'static str,
    /// The system that introduces it.
    pub system: AxiomSystem,
    pub lhs: Formula,
    pub rhs: Formula,
    /// `F = !T` and the definition of `||` define abbreviations rather
    /// than state properties.
    pub defining: bool,
}

impl AxiomScheme {
    fn new(name: &'static str, system: AxiomSystem, lhs: &str, rhs: &str) -> AxiomScheme {
        AxiomScheme {
            name,
            system,
            lhs: parse(lhs).expect("axiom text parses"),
            rhs: parse(rhs).expect("axiom text parses"),
            defining: false,
        }
    }

    /// Metavariables used on either side, formula ones first.
    pub fn metavariables(&self) -> (Vec<&'static str>, Vec<&'static str>) {
        let mut atoms = self.lhs.atoms();
        atoms.extend(self.rhs.atoms());
        let has = |v: &str| atoms.iter().any(|a| a.name() == v);
        (
            FORMULA_VARS.into_iter().filter(|v| has(v)).collect(),
            ATOM_VARS.into_iter().filter(|v| has(v)).collect(),
        )
    }
}

impl fmt::Display for AxiomScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {} = {}", self.name, self.lhs, self.rhs)
    }
}

fn fscl_axioms() -> Vec<AxiomScheme> {
    use AxiomSystem::EqFscl as S;
    let mut axioms = vec![
        AxiomScheme::new("1", S, "F", "!T"),
        AxiomScheme::new("2", S, "x || y", "!(!x && !y)"),
        AxiomScheme::new("3", S, "!!x", "x"),
        AxiomScheme::new("4", S, "T && x", "x"),
        AxiomScheme::new("5", S, "x && T", "x"),
        AxiomScheme::new("6", S, "F && x", "F"),
        AxiomScheme::new("7", S, "(x && y) && z", "x && (y && z)"),
        AxiomScheme::new("8", S, "x && F", "!x && F"),
        AxiomScheme::new("9", S, "(x && F) || y", "(x || T) && y"),
        AxiomScheme::new(
            "10",
            S,
            "(x && y) || (z && F)",
            "(x || (z && F)) && (y || (z && F))",
        ),
    ];
    axioms[0].defining = true;
    axioms[1].defining = true;
    axioms
}

/// The axioms of `system`, including the ones it inherits.
pub fn axiom_table(system: AxiomSystem) -> Vec<AxiomScheme> {
    let mut table = fscl_axioms();
    match system {
        AxiomSystem::EqFscl => {}
        AxiomSystem::EqRpscl => {
            use AxiomSystem::EqRpscl as S;
            table.extend([
                AxiomScheme::new("RP1", S, "a && (a || x)", "a && a"),
                // dual of RP1; `a && a` on the right fails whenever a is
                // false and the second evaluation has a side-effect
                AxiomScheme::new("RP2", S, "a || (a && x)", "a || a"),
                AxiomScheme::new("RP3", S, "(a || !a) && x", "(!a && a) || x"),
                AxiomScheme::new("RP4", S, "(!a || a) && x", "(a && !a) || x"),
                AxiomScheme::new("RP5", S, "(a && !a) && x", "a && !a"),
                AxiomScheme::new("RP6", S, "(!a && a) && x", "!a && a"),
                AxiomScheme::new(
                    "RP7",
                    S,
                    "(x && y) || (a && !a)",
                    "(x || (a && !a)) && (y || (a && !a))",
                ),
                AxiomScheme::new(
                    "RP8",
                    S,
                    "(x && y) || (!a && a)",
                    "(x || (!a && a)) && (y || (!a && a))",
                ),
            ]);
        }
        AxiomSystem::EqCscl => {
            use AxiomSystem::EqCscl as S;
            table.extend([
                AxiomScheme::new("C1", S, "a && (a || x)", "a"),
                AxiomScheme::new("C2", S, "a || (a && x)", "a"),
                AxiomScheme::new("C3", S, "a || !a", "a || T"),
                AxiomScheme::new("C4", S, "a && !a", "a && F"),
            ]);
        }
        AxiomSystem::EqMscl | AxiomSystem::EqSscl => {
            table.retain(|ax| ax.name != "9" && ax.name != "10");
            use AxiomSystem::EqMscl as S;
            table.extend([
                AxiomScheme::new("M1", S, "x && (x || y)", "x"),
                AxiomScheme::new("M2", S, "x && (y || z)", "(x && y) || (x && z)"),
                AxiomScheme::new("M3", S, "(x && y) || (!x && z)", "(x || z) && (!x || y)"),
                AxiomScheme::new("M4", S, "(x && y) || (!x && z)", "(!x && z) || (x && y)"),
                AxiomScheme::new(
                    "M5",
                    S,
                    "((x && y) || (!x && z)) && u",
                    "(x && (y && u)) || (!x && (z && u))",
                ),
            ]);
            if system == AxiomSystem::EqSscl {
                table.push(AxiomScheme::new("S1", AxiomSystem::EqSscl, "x && F", "F"));
            }
        }
    }
    table
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no binding for metavariable `{0}`")]
pub struct MissingBinding(pub String);

/// Replaces the metavariables on both sides simultaneously.
pub fn instantiate(
    scheme: &AxiomScheme,
    subst: &BTreeMap<String, Formula>,
    atom_subst: &BTreeMap<String, Atom>,
) -> Result<(Formula, Formula), MissingBinding> {
    let side = |f: &Formula| substitute(f, subst, atom_subst);
    Ok((side(&scheme.lhs)?, side(&scheme.rhs)?))
}

fn substitute(
    f: &Formula,
    subst: &BTreeMap<String, Formula>,
    atom_subst: &BTreeMap<String, Atom>,
) -> Result<Formula, MissingBinding> {
    Ok(match f {
        Formula::Const(b) => Formula::Const(*b),
        Formula::Lit(v) => {
            let name = v.name();
            if ATOM_VARS.contains(&name) {
                Formula::Lit(atom_subst.get(name).ok_or_else(|| MissingBinding(name.into()))?.clone())
            } else {
                subst.get(name).ok_or_else(|| MissingBinding(name.into()))?.clone()
            }
        }
        Formula::Neg(x) => Formula::not(substitute(x, subst, atom_subst)?),
        Formula::Con(x, y) => Formula::and(substitute(x, subst, atom_subst)?, substitute(y, subst, atom_subst)?),
        Formula::Dis(x, y) => Formula::or(substitute(x, subst, atom_subst)?, substitute(y, subst, atom_subst)?),
    })
}

/// A random instance: formula metavariables get random formulas over
/// `alphabet` with at most `max_nodes` nodes, atom metavariables random
/// atoms of `alphabet`.
pub fn random_instance<R: Rng + ?Sized>(
    scheme: &AxiomScheme,
    rng: &mut R,
    alphabet: &[Atom],
    max_nodes: usize,
) -> (Formula, Formula) {
    let (vars, atom_vars) = scheme.metavariables();
    let subst = vars
        .into_iter()
        .map(|v| (v.to_string(), random_formula(rng, alphabet, max_nodes)))
        .collect();
    let atom_subst = atom_vars
        .into_iter()
        .map(|v| (v.to_string(), alphabet[rng.random_range(0..alphabet.len())].clone()))
        .collect();
    instantiate(scheme, &subst, &atom_subst).expect("every metavariable is bound")
}

/// Equal evaluation trees: the free-logic identification.
pub fn check_fscl_soundness(lhs: &Formula, rhs: &Formula) -> bool {
    se(lhs) == se(rhs)
}

/// Valuation congruence in `v`.
pub fn check_model_soundness(v: &FiniteAlgebra, lhs: &Formula, rhs: &Formula) -> Result<bool, AlgebraError> {
    congruent(v, lhs, rhs)
}

/// Congruence up to indistinguishable end states. A static algebra may
/// still move between states that agree on every atom, so `x && F` and `F`
/// end in different but indistinguishable states there.
pub fn check_observational_soundness(v: &FiniteAlgebra, lhs: &Formula, rhs: &Formula) -> Result<bool, AlgebraError> {
    observationally_congruent(v, lhs, rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub name: &'static str,
    pub equation: String,
    pub passed: usize,
    pub failed: usize,
    /// The first failing instance, if any.
    pub counterexample: Option<(String, String)>,
}

/// Settings for [`check_system`].
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instances per axiom and algebra.
    pub instances: usize,
    /// Random algebras per axiom; unused for the free logic, whose
    /// axioms are checked on evaluation trees.
    pub algebras: usize,
    pub max_states: usize,
    pub max_nodes: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            instances: 200,
            algebras: 50,
            max_states: 5,
            max_nodes: 9,
        }
    }
}

/// Checks every axiom of `system` on random instances over the atoms
/// `p`, `q`, `r`. `EqFSCL` is checked by tree equality, the others by
/// congruence in random algebras of the system's class (for `EqSSCL`, up
/// to indistinguishable end states); there each algebra gets
/// `instances / algebras` instances, at least one.
pub fn check_system(system: AxiomSystem, config: SuiteConfig) -> Result<Vec<AxiomReport>, AlgebraError> {
    let alphabet: Vec<Atom> = ["p", "q", "r"].iter().map(|n| Atom::new(n).unwrap()).collect();
    let mut reports = Vec::new();
    for (k, scheme) in axiom_table(system).into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (k as u64) << 32);
        let mut report = AxiomReport {
            name: scheme.name,
            equation: format!("{} = {}", scheme.lhs, scheme.rhs),
            passed: 0,
            failed: 0,
            counterexample: None,
        };
        let mut record = |ok: bool, lhs: &Formula, rhs: &Formula| {
            if ok {
                report.passed += 1;
            } else {
                report.failed += 1;
                report.counterexample.get_or_insert_with(|| (lhs.to_string(), rhs.to_string()));
            }
        };
        if system == AxiomSystem::EqFscl {
            for _ in 0..config.instances {
                let (lhs, rhs) = random_instance(&scheme, &mut rng, &alphabet, config.max_nodes);
                record(check_fscl_soundness(&lhs, &rhs), &lhs, &rhs);
            }
        } else {
            let per_algebra = (config.instances / config.algebras.max(1)).max(1);
            for _ in 0..config.algebras {
                let v = random_algebra(system.class(), config.max_states, &alphabet, rng.random())?;
                for _ in 0..per_algebra {
                    let (lhs, rhs) = random_instance(&scheme, &mut rng, &alphabet, config.max_nodes);
                    let ok = if system == AxiomSystem::EqSscl {
                        check_observational_soundness(&v, &lhs, &rhs)?
                    } else {
                        check_model_soundness(&v, &lhs, &rhs)?
                    };
                    record(ok, &lhs, &rhs);
                }
            }
        }
        reports.push(report);
    }
    Ok(reports)
}
