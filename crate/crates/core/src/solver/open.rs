//! Single-pass solver for the repetition-proof logics.
//!
//! The formula is processed from right to left. The continuation after any
//! point of the evaluation starts with a fixed atom (or ends), so it can be
//! summarised by a guard: that atom and the best repetition-proof
//! continuation starting with it being true, and being false. A literal
//! `a` in front of a guard on atom `u` may use either continuation when
//! `u != a`, but only the one that repeats its own value when `u == a`.

use super::trace::Trace;
use super::{SatOutcome, Strategy, Verdict};
use crate::formula::{Atom, Formula};
use crate::logic::{Logic, PathDiscipline};

#[derive(Clone)]
enum Guard {
    /// Evaluation has reached its goal.
    Done,
    Next {
        atom: Atom,
        when_true: Option<Trace>,
        when_false: Option<Trace>,
    },
}

/// `None` means the goal is unreachable from this point.
type Reach = Option<Guard>;

fn extend(atom: &Atom, value: bool, guard: &Reach) -> Option<Trace> {
    let rest = match guard.as_ref()? {
        Guard::Done => Trace::empty(),
        Guard::Next {
            atom: u,
            when_true,
            when_false,
        } => {
            let rest = if u != atom {
                when_true.as_ref().or(when_false.as_ref())
            } else if value {
                when_true.as_ref()
            } else {
                when_false.as_ref()
            };
            rest?.clone()
        }
    };
    Some(Trace::entry(atom.clone(), value).then(&rest))
}

enum Frame<'a> {
    /// Solve the formula given the guards after its `T` and `F` exits.
    Enter(&'a Formula, Reach, Reach),
    /// The right operand of `x && y` is done; its guard is `x`'s `T` exit.
    ConLeft(&'a Formula, Reach),
    /// The right operand of `x || y` is done; its guard is `x`'s `F` exit.
    DisLeft(&'a Formula, Reach),
}

fn guard_at_start(f: &Formula, visits: &mut u64) -> Reach {
    let mut frames = vec![Frame::Enter(f, Some(Guard::Done), None)];
    let mut ret: Reach = None;
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Enter(g, on_true, on_false) => {
                *visits += 1;
                match g {
                    Formula::Const(true) => ret = on_true,
                    Formula::Const(false) => ret = on_false,
                    Formula::Lit(a) => {
                        let when_true = extend(a, true, &on_true);
                        let when_false = extend(a, false, &on_false);
                        ret = (when_true.is_some() || when_false.is_some()).then(|| Guard::Next {
                            atom: a.clone(),
                            when_true,
                            when_false,
                        });
                    }
                    Formula::Neg(x) => frames.push(Frame::Enter(x, on_false, on_true)),
                    Formula::Con(x, y) => {
                        frames.push(Frame::ConLeft(x, on_false.clone()));
                        frames.push(Frame::Enter(y, on_true, on_false));
                    }
                    Formula::Dis(x, y) => {
                        frames.push(Frame::DisLeft(x, on_true.clone()));
                        frames.push(Frame::Enter(y, on_true, on_false));
                    }
                }
            }
            Frame::ConLeft(x, on_false) => frames.push(Frame::Enter(x, ret.take(), on_false)),
            Frame::DisLeft(x, on_true) => frames.push(Frame::Enter(x, on_true, ret.take())),
        }
    }
    ret
}

/// Definitive for the repetition-proof logics. A witness is also accepted
/// for the free logic, and for the memorizing logics when it happens to be
/// memorizing; `No` carries over to the memorizing logics.
pub fn sat_open(logic: Logic, f: &Formula) -> SatOutcome {
    let mut out = SatOutcome::new(logic, Strategy::Open);
    let found = match guard_at_start(f, &mut out.node_visits) {
        None => None,
        Some(Guard::Done) => Some(Trace::empty()),
        Some(Guard::Next {
            when_true, when_false, ..
        }) => when_true.or(when_false),
    };
    out.verdict = match found.map(|t| t.to_path()) {
        None => match logic.discipline() {
            PathDiscipline::Free => Verdict::Unknown,
            _ => Verdict::No,
        },
        Some(p) => match logic.discipline() {
            PathDiscipline::Memorizing if !p.is_memorizing() => Verdict::Unknown,
            _ => Verdict::Yes(p),
        },
    };
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            sat_open(Logic::Rpscl, &p("(a || b) && !a")).verdict,
            Verdict::Yes("[(a,F),(b,T),(a,F)]".parse().unwrap())
        );
        assert_eq!(sat_open(Logic::Rpscl, &p("a && !a")).verdict, Verdict::No);
        assert_eq!(
            sat_open(Logic::Cscl, &p("a")).verdict,
            Verdict::Yes("[(a,T)]".parse().unwrap())
        );
    }

    #[test]
    fn other_logics() {
        // the only free witness repeats a with another value
        assert_eq!(sat_open(Logic::Fscl, &p("a && !a")).verdict, Verdict::Unknown);
        assert_eq!(sat_open(Logic::Mscl, &p("a && !a")).verdict, Verdict::No);
        // rp witness (a,F),(b,T),(a,F) is also memorizing
        assert!(matches!(sat_open(Logic::Mscl, &p("(a || b) && !a")).verdict, Verdict::Yes(_)));
        // (a,T),(b,T),(a,F) is the only route: rp but not memorizing
        assert_eq!(sat_open(Logic::Sscl, &p("a && b && !a")).verdict, Verdict::Unknown);
    }

    #[test]
    fn non_adjacent_repetition_needs_the_right_branch() {
        // a && a forces a = T twice in a row; the T exit continues with !a
        // only through b
        let f = p("a && (a && b || !a)");
        assert_eq!(
            sat_open(Logic::Rpscl, &f).verdict,
            Verdict::Yes("[(a,T),(a,T),(b,T)]".parse().unwrap())
        );
    }

    #[test]
    fn visits_each_node_once() {
        let f = p("(a || b) && !(c && T) || F && a");
        assert_eq!(sat_open(Logic::Rpscl, &f).node_visits, f.size() as u64);
    }
}
