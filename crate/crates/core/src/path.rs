//! Valuation paths: finite sequences of `(atom, value)` pairs, and their
//! result on evaluation trees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{is_identifier, Atom, Formula};
use crate::logic::{Logic, PathDiscipline};
use crate::tree::EvalTree;

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValuationPath(Vec<(Atom, bool)>);

impl ValuationPath {
    pub fn empty() -> ValuationPath {
        ValuationPath(Vec::new())
    }

    pub fn entries(&self) -> &[(Atom, bool)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(Atom, bool)> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, atom: Atom, value: bool) {
        self.0.push((atom, value));
    }

    pub fn concat(&self, other: &ValuationPath) -> ValuationPath {
        let mut entries = Vec::with_capacity(self.len() + other.len());
        entries.extend_from_slice(&self.0);
        entries.extend_from_slice(&other.0);
        ValuationPath(entries)
    }

    /// `P : X`; `None` when the path does not end exactly on a leaf.
    pub fn result(&self, tree: &EvalTree) -> Option<bool> {
        let mut node = tree;
        for (u, b) in &self.0 {
            match node {
                EvalTree::Branch(l, a, r) if a == u => node = if *b { l } else { r },
                _ => return None,
            }
        }
        match node {
            EvalTree::Leaf(v) => Some(*v),
            EvalTree::Branch(..) => None,
        }
    }

    /// `P : se(f)` computed on the formula directly, without building the
    /// tree. Linear in `|f| + |P|`.
    pub fn result_on_formula(&self, f: &Formula) -> Option<bool> {
        match run_formula(f, &self.0, 0)? {
            (value, end) if end == self.0.len() => Some(value),
            _ => None,
        }
    }

    /// Splits a path defined on `x[T -> y, F -> y']` into a prefix defined
    /// on `x` and the remainder, returning the prefix's result on `x` too.
    pub fn split_on(&self, x: &EvalTree) -> Option<(ValuationPath, ValuationPath, bool)> {
        let mut node = x;
        let mut k = 0;
        loop {
            match node {
                EvalTree::Leaf(v) => {
                    return Some((
                        ValuationPath(self.0[..k].to_vec()),
                        ValuationPath(self.0[k..].to_vec()),
                        *v,
                    ))
                }
                EvalTree::Branch(l, a, r) => {
                    let (u, b) = self.0.get(k)?;
                    if u != a {
                        return None;
                    }
                    node = if *b { l } else { r };
                    k += 1;
                }
            }
        }
    }

    /// Adjacent entries with equal atoms carry equal values.
    pub fn is_repetition_proof(&self) -> bool {
        self.0
            .windows(2)
            .all(|w| w[0].0 != w[1].0 || w[0].1 == w[1].1)
    }

    /// Every occurrence of an atom carries the same value.
    pub fn is_memorizing(&self) -> bool {
        let mut seen: std::collections::HashMap<&Atom, bool> = std::collections::HashMap::new();
        self.0
            .iter()
            .all(|(a, b)| *seen.entry(a).or_insert(*b) == *b)
    }

    pub fn satisfies(&self, discipline: PathDiscipline) -> bool {
        match discipline {
            PathDiscipline::Free => true,
            PathDiscipline::RepetitionProof => self.is_repetition_proof(),
            PathDiscipline::Memorizing => self.is_memorizing(),
        }
    }

    /// Collapses every run of adjacent entries sharing an atom to the run's
    /// first entry.
    pub fn contract(&self) -> ValuationPath {
        let mut out: Vec<(Atom, bool)> = Vec::with_capacity(self.len());
        for (a, b) in &self.0 {
            if out.last().map(|(u, _)| u) != Some(a) {
                out.push((a.clone(), *b));
            }
        }
        ValuationPath(out)
    }

    pub fn norm(&self, kind: Norm) -> usize {
        match kind {
            Norm::Length => self.len(),
            Norm::Contraction => self.contract().len(),
            Norm::Trivial => 0,
        }
    }

    pub fn atoms(&self) -> std::collections::BTreeSet<Atom> {
        self.0.iter().map(|(a, _)| a.clone()).collect()
    }
}

fn run_formula(f: &Formula, entries: &[(Atom, bool)], pos: usize) -> Option<(bool, usize)> {
    match f {
        Formula::Const(b) => Some((*b, pos)),
        Formula::Lit(a) => match entries.get(pos) {
            Some((u, b)) if u == a => Some((*b, pos + 1)),
            _ => None,
        },
        Formula::Neg(x) => run_formula(x, entries, pos).map(|(b, p)| (!b, p)),
        Formula::Con(x, y) => match run_formula(x, entries, pos)? {
            (true, p) => run_formula(y, entries, p),
            (false, p) => Some((false, p)),
        },
        Formula::Dis(x, y) => match run_formula(x, entries, pos)? {
            (true, p) => Some((true, p)),
            (false, p) => run_formula(y, entries, p),
        },
    }
}

pub fn check_path(logic: Logic, path: &ValuationPath) -> bool {
    path.satisfies(logic.discipline())
}

/// Path norms: `||e|| = 0` and `||P.Q|| <= ||P|| + ||Q||`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    Length,
    Contraction,
    Trivial,
}

impl From<Vec<(Atom, bool)>> for ValuationPath {
    fn from(entries: Vec<(Atom, bool)>) -> Self {
        ValuationPath(entries)
    }
}

impl FromIterator<(Atom, bool)> for ValuationPath {
    fn from_iter<I: IntoIterator<Item = (Atom, bool)>>(iter: I) -> Self {
        ValuationPath(iter.into_iter().collect())
    }
}

/// Canonical text form `[(a,T),(b,F)]`.
impl fmt::Display for ValuationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", a, if *b { 'T' } else { 'F' })?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ValuationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed path at position {pos}: {message}")]
pub struct PathParseError {
    pub pos: usize,
    pub message: String,
}

impl FromStr for ValuationPath {
    type Err = PathParseError;

    /// Accepts the canonical form with optional whitespace between tokens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pos = 0usize;
        let bytes = s.as_bytes();
        let err = |pos: usize, message: &str| PathParseError {
            pos,
            message: message.to_string(),
        };
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let expect = |pos: &mut usize, c: u8| -> Result<(), PathParseError> {
            skip(pos);
            if bytes.get(*pos) == Some(&c) {
                *pos += 1;
                Ok(())
            } else {
                Err(err(*pos, &format!("expected `{}`", c as char)))
            }
        };

        expect(&mut pos, b'[')?;
        let mut entries = Vec::new();
        skip(&mut pos);
        if bytes.get(pos) == Some(&b']') {
            pos += 1;
        } else {
            loop {
                expect(&mut pos, b'(')?;
                skip(&mut pos);
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let name = &s[start..pos];
                if !is_identifier(name) {
                    return Err(err(start, "expected an atom"));
                }
                let atom = Atom::new(name).map_err(|e| err(start, &e.to_string()))?;
                expect(&mut pos, b',')?;
                skip(&mut pos);
                let value = match bytes.get(pos) {
                    Some(b'T') => true,
                    Some(b'F') => false,
                    _ => return Err(err(pos, "expected `T` or `F`")),
                };
                pos += 1;
                expect(&mut pos, b')')?;
                entries.push((atom, value));
                skip(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b']') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(err(pos, "expected `,` or `]`")),
                }
            }
        }
        skip(&mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "trailing input"));
        }
        Ok(ValuationPath(entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::tree::se;

    fn path(text: &str) -> ValuationPath {
        text.parse().unwrap()
    }

    #[test]
    fn concatenation() {
        let p = path("[(a,T),(b,F)]");
        assert_eq!(ValuationPath::empty().concat(&p), p);
        assert_eq!(p.concat(&ValuationPath::empty()), p);
        assert_eq!(path("[(a,T)]").concat(&path("[(b,F)]")), p);
    }

    #[test]
    fn results_on_figure_tree() {
        let t = se(&parse("a && !b").unwrap());
        assert_eq!(path("[(a,T),(b,F)]").result(&t), Some(true));
        assert_eq!(path("[(a,T),(a,F)]").result(&t), None);
        assert_eq!(path("[(a,T)]").result(&t), None);
        assert_eq!(path("[(a,T),(b,F),(a,F)]").result(&t), None);
        assert_eq!(ValuationPath::empty().result(&EvalTree::TRUE), Some(true));
    }

    #[test]
    fn formula_route_agrees_on_examples() {
        let f = parse("a && !b").unwrap();
        for text in ["[(a,T),(b,F)]", "[(a,T),(a,F)]", "[(a,T)]", "[(a,T),(b,F),(a,F)]", "[(a,F)]"] {
            let p = path(text);
            assert_eq!(p.result_on_formula(&f), p.result(&se(&f)), "{text}");
        }
    }

    #[test]
    fn repetition_proof_examples() {
        assert!(path("[(a,T),(a,T),(b,F)]").is_repetition_proof());
        assert!(!path("[(a,T),(a,F)]").is_repetition_proof());
        assert!(path("[(a,F),(b,T),(a,F)]").is_repetition_proof());
    }

    #[test]
    fn memorizing_examples() {
        assert!(path("[(a,F),(b,T),(a,F)]").is_memorizing());
        assert!(!path("[(a,T),(b,T),(a,F)]").is_memorizing());
        assert!(ValuationPath::empty().is_memorizing());
    }

    #[test]
    fn check_path_by_logic() {
        assert!(check_path(Logic::Fscl, &path("[(a,T),(a,F)]")));
        assert!(!check_path(Logic::Rpscl, &path("[(a,T),(a,F)]")));
        assert!(check_path(Logic::Sscl, &path("[(a,F),(b,T),(a,F)]")));
        assert!(!check_path(Logic::Mscl, &path("[(a,T),(b,T),(a,F)]")));
        assert!(check_path(Logic::Cscl, &path("[(a,T),(b,T),(a,F)]")));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(path("[(a,T),(a,F),(b,T)]").contract(), path("[(a,T),(b,T)]"));
        assert_eq!(ValuationPath::empty().contract(), ValuationPath::empty());
        assert_eq!(
            path("[(a,T),(b,F),(b,F),(b,T),(a,F),(a,F)]").contract(),
            path("[(a,T),(b,F),(a,F)]")
        );
        let p = path("[(a,T),(a,F),(b,T)]");
        let q = path("[(b,T)]");
        assert_eq!(p.concat(&q).contract(), p.contract());
    }

    #[test]
    fn norms() {
        assert_eq!(path("[(a,T),(b,F)]").norm(Norm::Length), 2);
        assert_eq!(path("[(a,T),(a,F),(b,T)]").norm(Norm::Contraction), 2);
        assert_eq!(path("[(a,T),(a,F),(b,T)]").norm(Norm::Trivial), 0);
    }

    #[test]
    fn text_form() {
        let p = path("[ (a , T) ,(b,F) ]");
        assert_eq!(p.to_string(), "[(a,T),(b,F)]");
        assert_eq!(ValuationPath::empty().to_string(), "[]");
        assert_eq!(path("[]"), ValuationPath::empty());
        assert!("[(a,X)]".parse::<ValuationPath>().is_err());
        assert!("[(T,T)]".parse::<ValuationPath>().is_err());
        assert!("[(a,T)".parse::<ValuationPath>().is_err());
        assert!("[(a,T)] x".parse::<ValuationPath>().is_err());
    }

    #[test]
    fn json_form() {
        let p = path("[(a,T),(b,F)]");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[["a",true],["b",false]]"#);
        assert_eq!(serde_json::from_str::<ValuationPath>(&json).unwrap(), p);
    }

    #[test]
    fn split_on_substituted_tree() {
        let x = se(&parse("a || b").unwrap());
        let y = se(&parse("c").unwrap());
        let z = x.substitute(&y, &EvalTree::FALSE);
        let p = path("[(a,F),(b,T),(c,T)]");
        assert_eq!(p.result(&z), Some(true));
        let (r, q, v) = p.split_on(&x).unwrap();
        assert_eq!((r, q.clone(), v), (path("[(a,F),(b,T)]"), path("[(c,T)]"), true));
        assert_eq!(q.result(&y), Some(true));
    }
}
