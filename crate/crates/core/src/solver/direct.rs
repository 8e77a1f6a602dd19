//! Single-pass solver for the free logic.
//!
//! For every subformula it computes one path to a `T` leaf and one to an
//! `F` leaf, if they exist:
//!
//! ```text
//! sat(x && y) = sat(x) . sat(y)     fal(x && y) = fal(x) or else sat(x) . fal(y)
//! sat(x || y) = sat(x) or else fal(x) . sat(y)     fal(x || y) = fal(x) . fal(y)
//! sat(!x) = fal(x)                  fal(!x) = sat(x)
//! ```

use super::trace::Trace;
use super::{SatOutcome, Strategy, Verdict};
use crate::formula::Formula;
use crate::logic::Logic;
use crate::path::check_path;

type Pair = (Option<Trace>, Option<Trace>);

fn seq(x: &Option<Trace>, y: &Option<Trace>) -> Option<Trace> {
    Some(x.as_ref()?.then(y.as_ref()?))
}

/// Definitive for the free logic. For the other logics the free witness is
/// returned if it happens to fit the discipline; otherwise the answer is
/// `Unknown`, except that no free witness means no witness at all.
pub fn sat_direct(logic: Logic, f: &Formula) -> SatOutcome {
    let mut out = SatOutcome::new(logic, Strategy::Direct);
    let (sat, _) = pairs(f, &mut out.node_visits);
    out.verdict = match sat {
        None => Verdict::No,
        Some(t) => {
            let p = t.to_path();
            if check_path(logic, &p) {
                Verdict::Yes(p)
            } else {
                Verdict::Unknown
            }
        }
    };
    out
}

enum Frame<'a> {
    Enter(&'a Formula),
    Exit(&'a Formula),
}

/// Post-order traversal with an explicit stack, visiting each node once.
fn pairs(f: &Formula, visits: &mut u64) -> Pair {
    let mut frames = vec![Frame::Enter(f)];
    let mut results: Vec<Pair> = Vec::new();
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Enter(g) => {
                *visits += 1;
                match g {
                    Formula::Const(true) => results.push((Some(Trace::empty()), None)),
                    Formula::Const(false) => results.push((None, Some(Trace::empty()))),
                    Formula::Lit(a) => results.push((
                        Some(Trace::entry(a.clone(), true)),
                        Some(Trace::entry(a.clone(), false)),
                    )),
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
            Frame::Exit(g) => {
                let pair = match g {
                    Formula::Neg(_) => {
                        let (sat, fal) = results.pop().expect("operand");
                        (fal, sat)
                    }
                    Formula::Con(..) => {
                        let (sy, fy) = results.pop().expect("right operand");
                        let (sx, fx) = results.pop().expect("left operand");
                        let fal = fx.or_else(|| seq(&sx, &fy));
                        (seq(&sx, &sy), fal)
                    }
                    Formula::Dis(..) => {
                        let (sy, fy) = results.pop().expect("right operand");
                        let (sx, fx) = results.pop().expect("left operand");
                        let sat = sx.or_else(|| seq(&fx, &sy));
                        (sat, seq(&fx, &fy))
                    }
                    _ => unreachable!("leaves have no exit frame"),
                };
                results.push(pair);
            }
        }
    }
    results.pop().expect("result")
}
