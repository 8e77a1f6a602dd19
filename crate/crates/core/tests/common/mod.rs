#![allow(dead_code)]

use proptest::prelude::*;
use scl_core::{enumerate_formulas, Atom, EvalTree, Formula, ValuationPath};

pub fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

pub fn p(text: &str) -> Formula {
    scl_core::parse(text).unwrap()
}

/// All formulas over `{a, b}` with at most `max_nodes` nodes.
pub fn small_formulas(max_nodes: usize) -> Vec<Formula> {
    enumerate_formulas(&atoms(&["a", "b"]), max_nodes).collect()
}

pub fn atom() -> impl Strategy<Value = Atom> {
    prop::sample::select(atoms(&["a", "b", "c"]))
}

pub fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Formula::Const),
        4 => atom().prop_map(Formula::Lit),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            1 => inner.clone().prop_map(Formula::not),
            2 => (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::and(x, y)),
            2 => (inner.clone(), inner).prop_map(|(x, y)| Formula::or(x, y)),
        ]
    })
}

pub fn constant_free_formula() -> impl Strategy<Value = Formula> {
    atom().prop_map(Formula::Lit).prop_recursive(5, 16, 2, |inner| {
        prop_oneof![
            1 => inner.clone().prop_map(Formula::not),
            2 => (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::and(x, y)),
            2 => (inner.clone(), inner).prop_map(|(x, y)| Formula::or(x, y)),
        ]
    })
}

/// Arbitrary trees, including ones no formula produces.
pub fn tree() -> impl Strategy<Value = EvalTree> {
    any::<bool>()
        .prop_map(EvalTree::Leaf)
        .prop_recursive(5, 32, 2, |inner| {
            (inner.clone(), atom(), inner).prop_map(|(l, a, r)| EvalTree::branch(l, a, r))
        })
}

pub fn path() -> impl Strategy<Value = ValuationPath> {
    prop::collection::vec((atom(), any::<bool>()), 0..8).prop_map(ValuationPath::from)
}
