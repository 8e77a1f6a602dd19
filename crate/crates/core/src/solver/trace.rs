//! Persistent path fragments with O(1) concatenation, so that the linear
//! solvers never copy partial witnesses.

use std::rc::Rc;

use crate::formula::Atom;
use crate::path::ValuationPath;

#[derive(Clone, Default)]
pub(crate) struct Trace(Option<Rc<Node>>);

enum Node {
    Entry(Atom, bool),
    Concat(Trace, Trace),
}

impl Trace {
    pub(crate) fn empty() -> Trace {
        Trace(None)
    }

    pub(crate) fn entry(atom: Atom, value: bool) -> Trace {
        Trace(Some(Rc::new(Node::Entry(atom, value))))
    }

    pub(crate) fn then(&self, next: &Trace) -> Trace {
        match (&self.0, &next.0) {
            (None, _) => next.clone(),
            (_, None) => self.clone(),
            _ => Trace(Some(Rc::new(Node::Concat(self.clone(), next.clone())))),
        }
    }

    pub(crate) fn to_path(&self) -> ValuationPath {
        let mut out = ValuationPath::empty();
        let mut stack: Vec<&Trace> = vec![self];
        while let Some(t) = stack.pop() {
            match t.0.as_deref() {
                None => {}
                Some(Node::Entry(a, b)) => out.push(a.clone(), *b),
                Some(Node::Concat(l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }
}

impl Drop for Trace {
    // Long chains of concatenations would otherwise drop recursively.
    fn drop(&mut self) {
        let mut pending: Vec<Rc<Node>> = Vec::new();
        if let Some(rc) = self.0.take() {
            pending.push(rc);
        }
        while let Some(rc) = pending.pop() {
            if let Ok(Node::Concat(mut l, mut r)) = Rc::try_unwrap(rc) {
                pending.extend(l.0.take());
                pending.extend(r.0.take());
            }
        }
    }
}
