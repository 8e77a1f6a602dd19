//! Short-circuit evaluation trees.
//!
//! A tree is either a truth-value leaf or a branch `left < a > right`, where
//! `left` is followed when `a` evaluates to true. [`se`] maps a formula to
//! the tree describing its left-sequential short-circuit evaluation.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{is_identifier, Atom, Formula};
use crate::path::ValuationPath;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum EvalTree {
    Leaf(bool),
    Branch(Box<EvalTree>, Atom, Box<EvalTree>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafProfile {
    pub has_true: bool,
    pub has_false: bool,
    pub leaf_count: usize,
}

impl LeafProfile {
    pub fn is_open(&self) -> bool {
        self.has_true && self.has_false
    }

    pub fn closed_by(&self) -> Option<bool> {
        match (self.has_true, self.has_false) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }
}

impl EvalTree {
    pub const TRUE: EvalTree = EvalTree::Leaf(true);
    pub const FALSE: EvalTree = EvalTree::Leaf(false);

    pub fn branch(left: EvalTree, atom: Atom, right: EvalTree) -> EvalTree {
        EvalTree::Branch(Box::new(left), atom, Box::new(right))
    }

    /// `self[T -> on_true, F -> on_false]`.
    pub fn substitute(&self, on_true: &EvalTree, on_false: &EvalTree) -> EvalTree {
        match self {
            EvalTree::Leaf(true) => on_true.clone(),
            EvalTree::Leaf(false) => on_false.clone(),
            EvalTree::Branch(l, a, r) => EvalTree::branch(
                l.substitute(on_true, on_false),
                a.clone(),
                r.substitute(on_true, on_false),
            ),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            EvalTree::Leaf(_) => 0,
            EvalTree::Branch(l, _, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn leaf_profile(&self) -> LeafProfile {
        let mut profile = LeafProfile {
            has_true: false,
            has_false: false,
            leaf_count: 0,
        };
        self.accumulate_profile(&mut profile);
        profile
    }

    fn accumulate_profile(&self, p: &mut LeafProfile) {
        match self {
            EvalTree::Leaf(b) => {
                p.leaf_count += 1;
                if *b {
                    p.has_true = true;
                } else {
                    p.has_false = true;
                }
            }
            EvalTree::Branch(l, _, r) => {
                l.accumulate_profile(p);
                r.accumulate_profile(p);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            EvalTree::Leaf(_) => 1,
            EvalTree::Branch(l, _, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Every root-to-leaf trace with the leaf it reaches, true branches first.
    pub fn traces(&self) -> Vec<(ValuationPath, bool)> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.collect_traces(&mut prefix, &mut out);
        out
    }

    fn collect_traces(&self, prefix: &mut Vec<(Atom, bool)>, out: &mut Vec<(ValuationPath, bool)>) {
        match self {
            EvalTree::Leaf(b) => out.push((ValuationPath::from(prefix.clone()), *b)),
            EvalTree::Branch(l, a, r) => {
                prefix.push((a.clone(), true));
                l.collect_traces(prefix, out);
                prefix.pop();
                prefix.push((a.clone(), false));
                r.collect_traces(prefix, out);
                prefix.pop();
            }
        }
    }

    /// Infix text using `T`, `F`, `<` and `>`; branch operands are
    /// parenthesised.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, false);
        out
    }

    fn render_into(&self, out: &mut String, nested: bool) {
        match self {
            EvalTree::Leaf(true) => out.push('T'),
            EvalTree::Leaf(false) => out.push('F'),
            EvalTree::Branch(l, a, r) => {
                if nested {
                    out.push('(');
                }
                l.render_into(out, true);
                out.push_str(" < ");
                out.push_str(a.name());
                out.push_str(" > ");
                r.render_into(out, true);
                if nested {
                    out.push(')');
                }
            }
        }
    }

    /// Graphviz rendering: atoms as ellipses, leaves as boxes, edges
    /// labelled by the atom's value.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph se {\n");
        let mut next = 0usize;
        self.dot_node(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_node(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        match self {
            EvalTree::Leaf(b) => {
                let label = if *b { "T" } else { "F" };
                let _ = writeln!(out, "  n{id} [shape=box, label=\"{label}\"];");
            }
            EvalTree::Branch(l, a, r) => {
                let _ = writeln!(out, "  n{id} [shape=ellipse, label=\"{a}\"];");
                let left = l.dot_node(out, next);
                let _ = writeln!(out, "  n{id} -> n{left} [label=\"T\"];");
                let right = r.dot_node(out, next);
                let _ = writeln!(out, "  n{id} -> n{right} [label=\"F\"];");
            }
        }
        id
    }
}

/// The short-circuit evaluation tree of `f`.
pub fn se(f: &Formula) -> EvalTree {
    match f {
        Formula::Const(b) => EvalTree::Leaf(*b),
        Formula::Lit(a) => EvalTree::branch(EvalTree::TRUE, a.clone(), EvalTree::FALSE),
        Formula::Neg(x) => se(x).substitute(&EvalTree::FALSE, &EvalTree::TRUE),
        Formula::Con(x, y) => se(x).substitute(&se(y), &EvalTree::FALSE),
        Formula::Dis(x, y) => se(x).substitute(&EvalTree::TRUE, &se(y)),
    }
}

impl fmt::Display for EvalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for EvalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvalTree({})", self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed tree at position {pos}: {message}")]
pub struct TreeParseError {
    pub pos: usize,
    pub message: String,
}

/// Parses the text produced by [`EvalTree::render`]. Whitespace is ignored.
pub fn parse_tree(input: &str) -> Result<EvalTree, TreeParseError> {
    let mut p = TreeParser { input, pos: 0 };
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct TreeParser<'a> {
    input: &'a str,
    pos: usize,
}

impl TreeParser<'_> {
    fn error(&self, message: &str) -> TreeParseError {
        TreeParseError {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.input[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<&str> {
        self.skip_ws();
        let rest = &self.input[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 || !is_identifier(&rest[..len]) {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn tree(&mut self) -> Result<EvalTree, TreeParseError> {
        let left = self.operand()?;
        if !self.eat('<') {
            return Ok(left);
        }
        let start = self.pos;
        let atom = match self.word() {
            Some(w) => Atom::new(w).map_err(|e| TreeParseError {
                pos: start,
                message: e.to_string(),
            })?,
            None => return Err(self.error("expected an atom")),
        };
        if !self.eat('>') {
            return Err(self.error("expected `>`"));
        }
        let right = self.operand()?;
        Ok(EvalTree::branch(left, atom, right))
    }

    fn operand(&mut self) -> Result<EvalTree, TreeParseError> {
        if self.eat('(') {
            let t = self.tree()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(t);
        }
        match self.word() {
            Some("T") => Ok(EvalTree::TRUE),
            Some("F") => Ok(EvalTree::FALSE),
            _ => Err(self.error("expected `T`, `F` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn atom(name: &str) -> Atom {
        Atom::new(name).unwrap()
    }

    fn leaf_a() -> EvalTree {
        EvalTree::branch(EvalTree::TRUE, atom("a"), EvalTree::FALSE)
    }

    #[test]
    fn identity_and_swap_substitutions() {
        let x = se(&parse("a && !b || c").unwrap());
        assert_eq!(x.substitute(&EvalTree::TRUE, &EvalTree::FALSE), x);
        let swapped = x.substitute(&EvalTree::FALSE, &EvalTree::TRUE);
        assert_eq!(swapped, se(&parse("!(a && !b || c)").unwrap()));
    }

    #[test]
    fn substitution_builds_figure_tree() {
        let inner = EvalTree::branch(EvalTree::FALSE, atom("b"), EvalTree::TRUE);
        let got = leaf_a().substitute(&inner, &EvalTree::FALSE);
        assert_eq!(got, EvalTree::branch(inner.clone(), atom("a"), EvalTree::FALSE));
    }

    #[test]
    fn se_examples() {
        let t = se(&parse("a && !b").unwrap());
        assert_eq!(t.render(), "(F < b > T) < a > F");
        assert_eq!(se(&parse("T || a").unwrap()), EvalTree::TRUE);
        assert_eq!(se(&Formula::FALSE), EvalTree::FALSE);
    }

    #[test]
    fn depth_examples() {
        assert_eq!(EvalTree::TRUE.depth(), 0);
        assert_eq!(se(&parse("a && !b").unwrap()).depth(), 2);
        assert_eq!(leaf_a().depth(), 1);
    }

    #[test]
    fn leaf_profiles() {
        let p = se(&parse("a && !b").unwrap()).leaf_profile();
        assert_eq!(
            p,
            LeafProfile {
                has_true: true,
                has_false: true,
                leaf_count: 3
            }
        );
        assert!(p.is_open());
        let t = EvalTree::TRUE.leaf_profile();
        assert_eq!((t.has_true, t.has_false, t.leaf_count), (true, false, 1));
        assert_eq!(t.closed_by(), Some(true));
    }

    #[test]
    fn render_examples() {
        assert_eq!(EvalTree::FALSE.render(), "F");
        assert_eq!(leaf_a().render(), "T < a > F");
    }

    #[test]
    fn tree_text_round_trip() {
        for text in ["a && !b", "(a || b) && !a", "T", "F || !c && (a || T)"] {
            let t = se(&parse(text).unwrap());
            assert_eq!(parse_tree(&t.render()).unwrap(), t);
        }
        assert!(parse_tree("T < a").is_err());
        assert!(parse_tree("T < T > F").is_err());
        assert!(parse_tree("(T < a > F").is_err());
    }

    #[test]
    fn dot_export() {
        let dot = EvalTree::TRUE.to_dot();
        assert_eq!(dot.matches("shape=").count(), 1);
        let dot = se(&parse("a").unwrap()).to_dot();
        assert_eq!(dot.matches("shape=").count(), 3);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("[label=\"T\"]") && dot.contains("[label=\"F\"]"));
        let dot = se(&parse("a && !b").unwrap()).to_dot();
        assert_eq!(dot.matches("shape=").count(), 5);
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn traces_left_first() {
        let traces = se(&parse("a && !b").unwrap()).traces();
        let rendered: Vec<(String, bool)> = traces.iter().map(|(p, b)| (p.to_string(), *b)).collect();
        assert_eq!(
            rendered,
            [
                ("[(a,T),(b,T)]".to_string(), false),
                ("[(a,T),(b,F)]".to_string(), true),
                ("[(a,F)]".to_string(), false),
            ]
        );
    }
}
