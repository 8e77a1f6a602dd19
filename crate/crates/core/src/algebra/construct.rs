//! Witness algebras built from valuation paths, and the one-state
//! projection of a static algebra.

use std::collections::BTreeMap;

use super::{class_check, AlgebraError, FiniteAlgebra, State, ValuationAlgebra};
use crate::formula::Atom;
use crate::path::ValuationPath;

/// `va(P)` for `P = <(u_1,b_1), ..., (u_n,b_n)>`: states `1..=n+1`, where
/// state `i` means "the first `i - 1` entries have been consumed".
/// `a/i = b_j` for the largest `j <= min(i, n)` with `u_j = a`, or `F` if
/// there is none; `a.i = i + 1` if `i <= n` and `u_i = a`, else `i`.
pub fn build_va(p: &ValuationPath) -> FiniteAlgebra {
    let entries = p.entries();
    let n = entries.len();
    let mut rows = BTreeMap::new();
    for a in p.atoms() {
        let mut eval = Vec::with_capacity(n + 1);
        let mut deriv = Vec::with_capacity(n + 1);
        let mut last = false;
        for i in 1..=n + 1 {
            if let Some((u, b)) = entries.get(i - 1) {
                if *u == a {
                    last = *b;
                }
            }
            eval.push(last);
            deriv.push(match entries.get(i - 1) {
                Some((u, _)) if *u == a => i + 1,
                _ => i,
            });
        }
        rows.insert(a, (eval, deriv));
    }
    FiniteAlgebra::new(n + 1, rows).expect("va tables are well-formed")
}

/// `cva(P) = va(cn(P))`.
pub fn build_cva(p: &ValuationPath) -> FiniteAlgebra {
    build_va(&p.contract())
}

/// `sva(P)`: one state, `a/1 = T` iff `(a, T)` occurs in `P`.
pub fn build_sva(p: &ValuationPath) -> FiniteAlgebra {
    let mut rows: BTreeMap<Atom, (Vec<bool>, Vec<usize>)> = BTreeMap::new();
    for (a, b) in p.entries() {
        let row = rows.entry(a.clone()).or_insert_with(|| (vec![false], vec![1]));
        row.0[0] |= *b;
    }
    FiniteAlgebra::new(1, rows).expect("sva tables are well-formed")
}

/// The one-state algebra that copies `v`'s evaluations at `h`. Every
/// formula then evaluates as it does at `h` in `v`.
pub fn project_static(v: &FiniteAlgebra, h: State) -> Result<FiniteAlgebra, AlgebraError> {
    if !class_check(v).static_ {
        return Err(AlgebraError::NotStatic);
    }
    let mut rows = BTreeMap::new();
    for a in v.alphabet() {
        rows.insert(a.clone(), (vec![v.atom_eval(a, h)?], vec![1]));
    }
    FiniteAlgebra::new(1, rows)
}
