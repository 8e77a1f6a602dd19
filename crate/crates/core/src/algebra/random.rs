//! Seeded generation of finite algebras in a requested class.
//!
//! Each attempt draws a candidate from one of several families and keeps it
//! only if [`class_check`] confirms the class, so a family that sometimes
//! misses is harmless.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_cva, build_va, class_check, AlgebraError, ClassTarget, FiniteAlgebra};
use crate::formula::Atom;
use crate::path::ValuationPath;

pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy)]
enum Family {
    /// Uniformly random tables.
    Tables,
    /// Random derivatives, values constant along each atom's own moves.
    Orbits { idempotent: bool },
    /// `va` of a random repetition-proof path.
    PathVa,
    /// `cva` of a random path.
    PathCva,
    /// States remember which atoms have been evaluated; an atom's first
    /// evaluation may flip atoms not yet evaluated.
    Marking { flips: bool },
    /// One state.
    Trivial,
}

fn families(target: ClassTarget) -> &'static [Family] {
    match target {
        ClassTarget::Free => &[Family::Tables],
        ClassTarget::RepetitionProof => &[Family::Tables, Family::Orbits { idempotent: false }, Family::PathVa],
        ClassTarget::Contractive => &[Family::Tables, Family::Orbits { idempotent: true }, Family::PathCva],
        ClassTarget::Memorizing => &[
            Family::Tables,
            Family::Orbits { idempotent: true },
            Family::Marking { flips: true },
        ],
        ClassTarget::Static => &[Family::Tables, Family::Marking { flips: false }, Family::Trivial],
    }
}

/// An algebra over `alphabet` with at most `max_states` states that
/// `class_check` places in `target`. Deterministic in `seed`.
pub fn random_algebra(
    target: ClassTarget,
    max_states: usize,
    alphabet: &[Atom],
    seed: u64,
) -> Result<FiniteAlgebra, AlgebraError> {
    if max_states == 0 {
        return Err(AlgebraError::Invalid("max_states must be at least 1".into()));
    }
    let mut alphabet = alphabet.to_vec();
    alphabet.sort();
    alphabet.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let family = *families(target).choose(&mut rng).expect("non-empty");
        let Some(v) = draw(family, max_states, &alphabet, &mut rng) else {
            continue;
        };
        if class_check(&v).satisfies(target) {
            return Ok(v);
        }
    }
    Err(AlgebraError::GenerationExhausted {
        target,
        attempts: MAX_ATTEMPTS,
    })
}

fn draw(family: Family, max_states: usize, alphabet: &[Atom], rng: &mut ChaCha8Rng) -> Option<FiniteAlgebra> {
    let n = rng.random_range(1..=max_states);
    match family {
        Family::Tables => {
            let rows = alphabet
                .iter()
                .map(|a| {
                    let eval = (0..n).map(|_| rng.random_bool(0.5)).collect();
                    let deriv = (0..n).map(|_| rng.random_range(1..=n)).collect();
                    (a.clone(), (eval, deriv))
                })
                .collect();
            FiniteAlgebra::new(n, rows).ok()
        }
        Family::Orbits { idempotent } => {
            let rows = alphabet
                .iter()
                .map(|a| {
                    let deriv = if idempotent {
                        idempotent_map(n, rng)
                    } else {
                        (0..n).map(|_| rng.random_range(1..=n)).collect()
                    };
                    let eval = orbit_constant_values(&deriv, rng);
                    (a.clone(), (eval, deriv))
                })
                .collect();
            FiniteAlgebra::new(n, rows).ok()
        }
        Family::PathVa => {
            let p = random_path(alphabet, n - 1, true, rng)?;
            Some(build_va(&p).with_atoms(alphabet.iter().cloned()))
        }
        Family::PathCva => {
            let p = random_path(alphabet, 2 * (n - 1), false, rng)?;
            let mut entries = p.contract().into_entries();
            entries.truncate(n - 1);
            Some(build_cva(&ValuationPath::from(entries)).with_atoms(alphabet.iter().cloned()))
        }
        Family::Marking { flips } => marking(alphabet, max_states, flips, rng),
        Family::Trivial => {
            let rows = alphabet
                .iter()
                .map(|a| (a.clone(), (vec![rng.random_bool(0.5)], vec![1])))
                .collect();
            FiniteAlgebra::new(1, rows).ok()
        }
    }
}

/// A map on `1..=n` whose image consists of fixed points.
fn idempotent_map(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut fixed: Vec<usize> = (1..=n).filter(|_| rng.random_bool(0.5)).collect();
    if fixed.is_empty() {
        fixed.push(rng.random_range(1..=n));
    }
    (1..=n)
        .map(|h| {
            if fixed.contains(&h) {
                h
            } else {
                *fixed.choose(rng).expect("non-empty")
            }
        })
        .collect()
}

/// Random values that are constant on each connected component of the
/// graph `h -- deriv(h)`.
fn orbit_constant_values(deriv: &[usize], rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = deriv.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (h, &d) in deriv.iter().enumerate() {
        let (x, y) = (find(&mut parent, h), find(&mut parent, d - 1));
        parent[x] = y;
    }
    let colours: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    (0..n).map(|h| colours[find(&mut parent, h)]).collect()
}

fn random_path(alphabet: &[Atom], len: usize, repetition_proof: bool, rng: &mut ChaCha8Rng) -> Option<ValuationPath> {
    if alphabet.is_empty() {
        return (len == 0).then(ValuationPath::empty);
    }
    let mut p = ValuationPath::empty();
    for _ in 0..len {
        let a = alphabet.choose(rng).expect("non-empty").clone();
        let value = match p.entries().last() {
            Some((u, b)) if repetition_proof && *u == a => *b,
            _ => rng.random_bool(0.5),
        };
        p.push(a, value);
    }
    Some(p)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct MarkState {
    values: Vec<bool>,
    marked: Vec<bool>,
}

fn marking(alphabet: &[Atom], max_states: usize, flips: bool, rng: &mut ChaCha8Rng) -> Option<FiniteAlgebra> {
    let k = alphabet.len();
    // at most two atoms with effects keeps the reachable part small
    let mut effectful: Vec<usize> = (0..k).collect();
    effectful.sort_by_key(|_| rng.random::<u32>());
    effectful.truncate(rng.random_range(0..=k.min(2)));
    let flip: Vec<Vec<bool>> = (0..k)
        .map(|_| (0..k).map(|_| flips && rng.random_bool(0.5)).collect())
        .collect();

    let step = |s: &MarkState, a: usize| -> MarkState {
        if !effectful.contains(&a) || s.marked[a] {
            return s.clone();
        }
        let mut t = s.clone();
        t.marked[a] = true;
        for &e in &effectful {
            if e != a && !t.marked[e] && flip[a][e] {
                t.values[e] = !t.values[e];
            }
        }
        t
    };

    let mut index: BTreeMap<MarkState, usize> = BTreeMap::new();
    let mut order: Vec<MarkState> = Vec::new();
    let roots = rng.random_range(1..=max_states);
    for _ in 0..roots {
        let root = MarkState {
            values: (0..k).map(|_| rng.random_bool(0.5)).collect(),
            marked: vec![false; k],
        };
        let mut added = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            if index.contains_key(&s) || added.contains(&s) {
                continue;
            }
            for a in 0..k {
                queue.push_back(step(&s, a));
            }
            added.push(s);
        }
        if order.len() + added.len() > max_states {
            break;
        }
        for s in added {
            index.insert(s.clone(), order.len() + 1);
            order.push(s);
        }
    }
    if order.is_empty() {
        return None;
    }
    let rows = alphabet
        .iter()
        .enumerate()
        .map(|(a, atom)| {
            let eval = order.iter().map(|s| s.values[a]).collect();
            let deriv = order.iter().map(|s| index[&step(s, a)]).collect();
            (atom.clone(), (eval, deriv))
        })
        .collect();
    FiniteAlgebra::new(order.len(), rows).ok()
}
