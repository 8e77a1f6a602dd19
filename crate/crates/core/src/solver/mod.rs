//! Satisfiability testers.
//!
//! Each tester decides path-satisfiability for a logic: whether some path
//! of the logic's discipline leads to a `T` leaf of the formula's
//! evaluation tree. Every `Yes` carries a witness path that is checked
//! before it is returned.

mod boolean;
mod brute;
mod direct;
mod open;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;
use crate::logic::Logic;
use crate::path::{check_path, ValuationPath};

pub use boolean::sat_boolean;
pub use brute::{sat_brute_control, sat_brute_force};
pub use direct::sat_direct;
pub use open::sat_open;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Auto,
    BruteControl,
    BruteForce,
    Direct,
    Open,
    Boolean,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Auto,
        Strategy::BruteControl,
        Strategy::BruteForce,
        Strategy::Direct,
        Strategy::Open,
        Strategy::Boolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::BruteControl => "brute-control",
            Strategy::BruteForce => "brute-force",
            Strategy::Direct => "direct",
            Strategy::Open => "open",
            Strategy::Boolean => "boolean",
        }
    }

    /// The solver `auto` tries first for a logic.
    pub fn preferred(logic: Logic) -> Strategy {
        match logic {
            Logic::Fscl => Strategy::Direct,
            Logic::Rpscl | Logic::Cscl => Strategy::Open,
            Logic::Mscl | Logic::Sscl => Strategy::Boolean,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy `{0}` (expected auto, brute-control, brute-force, direct, open or boolean)")]
pub struct UnknownStrategy(pub String);

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownStrategy(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(ValuationPath),
    No,
    Unknown,
}

impl Verdict {
    pub fn answer(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&ValuationPath> {
        match self {
            Verdict::Yes(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Unknown)
    }

    /// `Some(true)` for yes, `Some(false)` for no.
    pub fn decision(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }
}

/// A verdict plus how it was reached. `node_visits` counts formula or tree
/// nodes visited; `leaves_explored` counts evaluation-tree leaves reached by
/// the brute searches and dead ends plus models for the DPLL search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatOutcome {
    pub verdict: Verdict,
    pub logic: Logic,
    pub solver: Strategy,
    pub node_visits: u64,
    pub leaves_explored: u64,
}

#[derive(Serialize, Deserialize)]
struct OutcomeJson {
    answer: String,
    witness: Option<ValuationPath>,
    logic: Logic,
    solver: Strategy,
    node_visits: u64,
    leaves_explored: u64,
}

impl SatOutcome {
    pub(crate) fn new(logic: Logic, solver: Strategy) -> SatOutcome {
        SatOutcome {
            verdict: Verdict::Unknown,
            logic,
            solver,
            node_visits: 0,
            leaves_explored: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&OutcomeJson {
            answer: self.verdict.answer().to_string(),
            witness: self.verdict.witness().cloned(),
            logic: self.logic,
            solver: self.solver,
            node_visits: self.node_visits,
            leaves_explored: self.leaves_explored,
        })
        .expect("outcome serializes")
    }

    pub fn from_json(text: &str) -> Result<SatOutcome, serde_json::Error> {
        use serde::de::Error as _;
        let json: OutcomeJson = serde_json::from_str(text)?;
        let verdict = match (json.answer.as_str(), json.witness) {
            ("yes", Some(p)) => Verdict::Yes(p),
            ("no", None) => Verdict::No,
            ("unknown", None) => Verdict::Unknown,
            (answer, _) => return Err(serde_json::Error::custom(format!("inconsistent answer `{answer}`"))),
        };
        Ok(SatOutcome {
            verdict,
            logic: json.logic,
            solver: json.solver,
            node_visits: json.node_visits,
            leaves_explored: json.leaves_explored,
        })
    }
}

/// `p` leads to `T` on `se(f)` and fits the logic's discipline.
pub fn is_witness(logic: Logic, f: &Formula, p: &ValuationPath) -> bool {
    p.result_on_formula(f) == Some(true) && check_path(logic, p)
}

fn checked(f: &Formula, outcome: SatOutcome) -> SatOutcome {
    if let Verdict::Yes(p) = &outcome.verdict {
        assert!(
            is_witness(outcome.logic, f, p),
            "{} returned an invalid {} witness {p} for {f}",
            outcome.solver,
            outcome.logic
        );
    }
    outcome
}

fn run(logic: Logic, f: &Formula, solver: Strategy) -> SatOutcome {
    match solver {
        Strategy::BruteControl => sat_brute_control(logic, f),
        Strategy::BruteForce => sat_brute_force(logic, f),
        Strategy::Direct => sat_direct(logic, f),
        Strategy::Open => sat_open(logic, f),
        Strategy::Boolean => sat_boolean(logic, f),
        Strategy::Auto => unreachable!("auto is dispatched by solve"),
    }
}

/// Decides satisfiability of `f` in `logic`. `Auto` picks the linear or
/// DPLL solver suited to the logic and falls back to the brute search if
/// that solver cannot decide, so it never answers `Unknown`.
pub fn solve(logic: Logic, f: &Formula, strategy: Strategy) -> SatOutcome {
    match strategy {
        Strategy::Auto => {
            let first = checked(f, run(logic, f, Strategy::preferred(logic)));
            if first.verdict.is_definite() {
                return first;
            }
            let mut second = checked(f, run(logic, f, Strategy::BruteControl));
            second.node_visits += first.node_visits;
            second.leaves_explored += first.leaves_explored;
            second
        }
        solver => checked(f, run(logic, f, solver)),
    }
}

/// Satisfiability of `!f`: a witness leads to `F` on `se(f)`.
pub fn falsify(logic: Logic, f: &Formula, strategy: Strategy) -> SatOutcome {
    solve(logic, &Formula::not(f.clone()), strategy)
}
