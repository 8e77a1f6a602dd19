//! Exhaustive depth-first searches of the evaluation tree, true branch
//! first. Exponential; they serve as the reference the other solvers are
//! tested against.

use super::{SatOutcome, Strategy, Verdict};
use crate::formula::{Atom, Formula};
use crate::logic::{Logic, PathDiscipline};
use crate::path::{check_path, ValuationPath};
use crate::tree::{se, EvalTree};

/// Tries every root-to-`T`-leaf path in order and returns the first one
/// that passes the logic's path check.
pub fn sat_brute_control(logic: Logic, f: &Formula) -> SatOutcome {
    let mut out = SatOutcome::new(logic, Strategy::BruteControl);
    let mut search = Search {
        logic,
        prune: false,
        path: Vec::new(),
        out: &mut out,
    };
    let verdict = match search.dfs(&se(f), None) {
        Some(p) => Verdict::Yes(p),
        None => Verdict::No,
    };
    out.verdict = verdict;
    out
}

/// Like [`sat_brute_control`], but avoids checking whole paths: the free
/// logic takes the first `T` leaf, and the repetition-proof logics never
/// descend into a branch that contradicts the atom just evaluated. The
/// memorizing logics search exactly as the control does.
pub fn sat_brute_force(logic: Logic, f: &Formula) -> SatOutcome {
    let mut out = SatOutcome::new(logic, Strategy::BruteForce);
    let prune = logic.discipline() != PathDiscipline::Memorizing;
    let mut search = Search {
        logic,
        prune,
        path: Vec::new(),
        out: &mut out,
    };
    let verdict = match search.dfs(&se(f), None) {
        Some(p) => Verdict::Yes(p),
        None => Verdict::No,
    };
    out.verdict = verdict;
    out
}

struct Search<'a> {
    logic: Logic,
    // skip the leaf check, relying on branch pruning instead
    prune: bool,
    path: Vec<(Atom, bool)>,
    out: &'a mut SatOutcome,
}

impl Search<'_> {
    fn dfs(&mut self, t: &EvalTree, last: Option<(&Atom, bool)>) -> Option<ValuationPath> {
        self.out.node_visits += 1;
        match t {
            EvalTree::Leaf(value) => {
                self.out.leaves_explored += 1;
                if !value {
                    return None;
                }
                let p = ValuationPath::from(self.path.clone());
                (self.prune || check_path(self.logic, &p)).then_some(p)
            }
            EvalTree::Branch(l, a, r) => {
                for (value, child) in [(true, l), (false, r)] {
                    if self.prune {
                        if let Some((u, b)) = last {
                            if u == a && b != value && self.logic.discipline() == PathDiscipline::RepetitionProof {
                                continue;
                            }
                        }
                    }
                    self.path.push((a.clone(), value));
                    let found = self.dfs(child, Some((a, value)));
                    self.path.pop();
                    if found.is_some() {
                        return found;
                    }
                }
                None
            }
        }
    }
}
