//! Propositional solver for the memorizing logics.
//!
//! Without side-effects a formula is an ordinary propositional formula
//! over its atoms. It is Tseitin-encoded to CNF and handed to a DPLL search
//! (unit propagation, first unassigned variable, true before false, no
//! restarts). A model is turned into a witness by evaluating the formula
//! under it and recording every atom evaluation, which yields a memorizing
//! path since each atom always gets its model value.

use std::collections::BTreeMap;

use super::{SatOutcome, Strategy, Verdict};
use crate::formula::{Atom, Formula};
use crate::logic::{Logic, PathDiscipline};
use crate::path::ValuationPath;

/// Variable `v` as `2v` (positive) or `2v + 1` (negative).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    fn pos(var: u32) -> Lit {
        Lit(2 * var)
    }

    fn var(self) -> usize {
        (self.0 / 2) as usize
    }

    fn negative(self) -> bool {
        self.0 & 1 == 1
    }

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

struct Cnf {
    vars: u32,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    fn fresh(&mut self) -> Lit {
        self.vars += 1;
        Lit::pos(self.vars - 1)
    }
}

enum Frame<'a> {
    Enter(&'a Formula),
    Exit(&'a Formula),
}

/// Tseitin encoding; atoms get variables `0..atoms.len()` in order.
fn encode(f: &Formula, atoms: &BTreeMap<Atom, u32>, visits: &mut u64) -> Cnf {
    let mut cnf = Cnf {
        vars: atoms.len() as u32,
        clauses: Vec::new(),
    };
    let mut frames = vec![Frame::Enter(f)];
    let mut lits: Vec<Lit> = Vec::new();
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Enter(g) => {
                *visits += 1;
                match g {
                    Formula::Const(b) => {
                        let t = cnf.fresh();
                        cnf.clauses.push(vec![if *b { t } else { t.not() }]);
                        lits.push(t);
                    }
                    Formula::Lit(a) => lits.push(Lit::pos(atoms[a])),
                    Formula::Neg(x) => {
                        frames.push(Frame::Exit(g));
                        frames.push(Frame::Enter(x));
                    }
                    Formula::Con(x, y) | Formula::Dis(x, y) => {
                        frames.push(Frame::Exit(g));
                        frames.push(Frame::Enter(y));
                        frames.push(Frame::Enter(x));
                    }
                }
            }
            Frame::Exit(g) => match g {
                Formula::Neg(_) => {
                    let x = lits.pop().expect("operand");
                    lits.push(x.not());
                }
                Formula::Con(..) | Formula::Dis(..) => {
                    let y = lits.pop().expect("right operand");
                    let x = lits.pop().expect("left operand");
                    let t = cnf.fresh();
                    if matches!(g, Formula::Con(..)) {
                        // t <-> x & y
                        cnf.clauses.push(vec![t.not(), x]);
                        cnf.clauses.push(vec![t.not(), y]);
                        cnf.clauses.push(vec![t, x.not(), y.not()]);
                    } else {
                        // t <-> x | y
                        cnf.clauses.push(vec![t.not(), x, y]);
                        cnf.clauses.push(vec![t, x.not()]);
                        cnf.clauses.push(vec![t, y.not()]);
                    }
                    lits.push(t);
                }
                _ => unreachable!("leaves have no exit frame"),
            },
        }
    }
    let root = lits.pop().expect("root literal");
    cnf.clauses.push(vec![root]);
    cnf
}

/// DPLL with two watched literals and chronological backtracking.
struct Dpll {
    clauses: Vec<Vec<Lit>>,
    // clause indices watching each literal code
    watches: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<Lit>,
    head: usize,
    // (trail length before the decision, decided literal, already flipped)
    decisions: Vec<(usize, Lit, bool)>,
    dead_ends: u64,
}

impl Dpll {
    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.value[l.var()].map(|v| v != l.negative())
    }

    fn assign(&mut self, l: Lit) {
        self.value[l.var()] = Some(!l.negative());
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head].not();
            self.head += 1;
            let watching = std::mem::take(&mut self.watches[falsified.0 as usize]);
            let mut keep = Vec::with_capacity(watching.len());
            let mut conflict = false;
            for (k, &c) in watching.iter().enumerate() {
                if conflict {
                    keep.extend_from_slice(&watching[k..]);
                    break;
                }
                let clause = &mut self.clauses[c];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                if self.value[other.var()].map(|v| v != other.negative()) == Some(true) {
                    keep.push(c);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&i| {
                    let l = clause[i];
                    self.value[l.var()].map(|v| v != l.negative()) != Some(false)
                });
                match replacement {
                    Some(i) => {
                        clause.swap(1, i);
                        let w = clause[1];
                        self.watches[w.0 as usize].push(c);
                    }
                    None => {
                        keep.push(c);
                        match self.lit_value(other) {
                            Some(false) => conflict = true,
                            _ => self.assign(other),
                        }
                    }
                }
            }
            self.watches[falsified.0 as usize] = keep;
            if conflict {
                return false;
            }
        }
        true
    }

    fn backtrack(&mut self) -> bool {
        while let Some((len, lit, flipped)) = self.decisions.pop() {
            for l in self.trail.drain(len..) {
                self.value[l.var()] = None;
            }
            self.head = len;
            if !flipped {
                self.decisions.push((len, lit.not(), true));
                self.assign(lit.not());
                return true;
            }
        }
        false
    }

    fn solve(cnf: Cnf) -> (Option<Vec<bool>>, u64) {
        let n = cnf.vars as usize;
        let mut s = Dpll {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            value: vec![None; n],
            trail: Vec::new(),
            head: 0,
            decisions: Vec::new(),
            dead_ends: 0,
        };
        let mut units = Vec::new();
        for clause in cnf.clauses {
            match clause.len() {
                0 => return (None, 0),
                1 => units.push(clause[0]),
                _ => {
                    let c = s.clauses.len();
                    s.watches[clause[0].0 as usize].push(c);
                    s.watches[clause[1].0 as usize].push(c);
                    s.clauses.push(clause);
                }
            }
        }
        for u in units {
            match s.lit_value(u) {
                Some(true) => {}
                Some(false) => return (None, 1),
                None => s.assign(u),
            }
        }
        let mut next_var = 0;
        loop {
            if !s.propagate() {
                s.dead_ends += 1;
                if !s.backtrack() {
                    return (None, s.dead_ends);
                }
                next_var = 0;
                continue;
            }
            while next_var < n && s.value[next_var].is_some() {
                next_var += 1;
            }
            if next_var == n {
                let model = s.value.iter().map(|v| v.unwrap_or(false)).collect();
                return (Some(model), s.dead_ends + 1);
            }
            let l = Lit::pos(next_var as u32);
            s.decisions.push((s.trail.len(), l, false));
            s.assign(l);
        }
    }
}

/// Evaluates `f` under a fixed assignment, recording each atom it reads.
fn make_path(f: &Formula, model: &BTreeMap<Atom, bool>) -> (bool, ValuationPath) {
    enum Step<'a> {
        Eval(&'a Formula),
        Negate,
        ThenIf(bool, &'a Formula),
    }
    let mut path = ValuationPath::empty();
    let mut steps = vec![Step::Eval(f)];
    let mut value = false;
    while let Some(step) = steps.pop() {
        match step {
            Step::Eval(g) => match g {
                Formula::Const(b) => value = *b,
                Formula::Lit(a) => {
                    value = model[a];
                    path.push(a.clone(), value);
                }
                Formula::Neg(x) => {
                    steps.push(Step::Negate);
                    steps.push(Step::Eval(x));
                }
                // the right operand runs only if the left one did not
                // already decide the result
                Formula::Con(x, y) => {
                    steps.push(Step::ThenIf(true, y));
                    steps.push(Step::Eval(x));
                }
                Formula::Dis(x, y) => {
                    steps.push(Step::ThenIf(false, y));
                    steps.push(Step::Eval(x));
                }
            },
            Step::Negate => value = !value,
            Step::ThenIf(when, y) => {
                if value == when {
                    steps.push(Step::Eval(y));
                }
            }
        }
    }
    (value, path)
}

/// Definitive for the memorizing logics. A model's path also witnesses the
/// weaker logics; without a model they are `Unknown`.
pub fn sat_boolean(logic: Logic, f: &Formula) -> SatOutcome {
    let mut out = SatOutcome::new(logic, Strategy::Boolean);
    let atoms: BTreeMap<Atom, u32> = f.atoms().into_iter().zip(0..).collect();
    let cnf = encode(f, &atoms, &mut out.node_visits);
    let (model, explored) = Dpll::solve(cnf);
    out.leaves_explored = explored;
    out.verdict = match model {
        Some(model) => {
            let model: BTreeMap<Atom, bool> = atoms.iter().map(|(a, &v)| (a.clone(), model[v as usize])).collect();
            let (value, path) = make_path(f, &model);
            debug_assert!(value, "model does not satisfy the formula");
            Verdict::Yes(path)
        }
        None => match logic.discipline() {
            PathDiscipline::Memorizing => Verdict::No,
            _ => Verdict::Unknown,
        },
    };
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_formulas;
    use crate::parse::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(sat_boolean(Logic::Sscl, &p("a && !a")).verdict, Verdict::No);
        assert_eq!(
            sat_boolean(Logic::Mscl, &p("(a || b) && !a")).verdict,
            Verdict::Yes("[(a,F),(b,T),(a,F)]".parse().unwrap())
        );
        assert_eq!(
            sat_boolean(Logic::Sscl, &Formula::TRUE).verdict,
            Verdict::Yes(ValuationPath::empty())
        );
        assert_eq!(sat_boolean(Logic::Fscl, &p("a && !a")).verdict, Verdict::Unknown);
    }

    /// Satisfiable iff some assignment of the atoms makes the formula true.
    fn truth_table_sat(f: &Formula) -> bool {
        let atoms: Vec<Atom> = f.atoms().into_iter().collect();
        (0..1u32 << atoms.len()).any(|bits| {
            let model = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), bits >> i & 1 == 1))
                .collect();
            make_path(f, &model).0
        })
    }

    #[test]
    fn agrees_with_truth_tables() {
        let alphabet: Vec<Atom> = ["a", "b", "c"].iter().map(|n| Atom::new(n).unwrap()).collect();
        for f in enumerate_formulas(&alphabet, 5) {
            let o = sat_boolean(Logic::Mscl, &f);
            assert_eq!(o.verdict.decision(), Some(truth_table_sat(&f)), "{f}");
            if let Verdict::Yes(w) = o.verdict {
                assert!(w.is_memorizing());
                assert_eq!(w.result_on_formula(&f), Some(true), "{f}");
            }
        }
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // three pigeons, two holes
        let v = |i: usize, j: usize| format!("p{i}{j}");
        let mut parts = Vec::new();
        for i in 0..3 {
            parts.push(format!("({} || {})", v(i, 0), v(i, 1)));
        }
        for j in 0..2 {
            for i in 0..3 {
                for k in i + 1..3 {
                    parts.push(format!("!({} && {})", v(i, j), v(k, j)));
                }
            }
        }
        let f = p(&parts.join(" && "));
        let o = sat_boolean(Logic::Sscl, &f);
        assert_eq!(o.verdict, Verdict::No);
        assert!(o.leaves_explored > 1);
    }
}
