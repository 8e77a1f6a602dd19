//! Exhaustive enumeration of small formulas.

use rand::Rng;

use crate::formula::{Atom, Formula};

/// Yields every formula over `alphabet` with at most `max_nodes` AST nodes,
/// exactly once, ordered by size. Within one size the order is: constants
/// and atoms, negations, conjunctions, disjunctions; binary nodes iterate
/// over the left operand's size, then the left operand, then the right.
pub fn enumerate_formulas(alphabet: &[Atom], max_nodes: usize) -> FormulaEnumerator {
    FormulaEnumerator {
        alphabet: alphabet.to_vec(),
        max_nodes,
        levels: vec![Vec::new()],
        size: 1,
        stage: Stage::Leaf(0),
        current: Vec::new(),
    }
}

#[derive(Debug, Clone, Copy)]
enum Stage {
    Leaf(usize),
    Neg(usize),
    Binary {
        disjunction: bool,
        left_size: usize,
        left: usize,
        right: usize,
    },
}

pub struct FormulaEnumerator {
    alphabet: Vec<Atom>,
    max_nodes: usize,
    // levels[k] holds every formula of exactly k nodes, for completed k < size
    levels: Vec<Vec<Formula>>,
    size: usize,
    stage: Stage,
    current: Vec<Formula>,
}

impl FormulaEnumerator {
    fn first_binary(disjunction: bool) -> Stage {
        Stage::Binary {
            disjunction,
            left_size: 1,
            left: 0,
            right: 0,
        }
    }

    fn advance_size(&mut self) {
        let done = std::mem::take(&mut self.current);
        self.levels.push(done);
        self.size += 1;
        self.stage = Stage::Neg(0);
    }

    fn step(&mut self) -> Option<Option<Formula>> {
        if self.size > self.max_nodes {
            return None;
        }
        let n = self.size;
        match self.stage {
            Stage::Leaf(i) => {
                self.stage = Stage::Leaf(i + 1);
                match i {
                    0 => Some(Some(Formula::TRUE)),
                    1 => Some(Some(Formula::FALSE)),
                    _ => match self.alphabet.get(i - 2) {
                        Some(a) => Some(Some(Formula::Lit(a.clone()))),
                        None => {
                            self.advance_size();
                            Some(None)
                        }
                    },
                }
            }
            Stage::Neg(i) => match self.levels[n - 1].get(i) {
                Some(inner) => {
                    self.stage = Stage::Neg(i + 1);
                    Some(Some(Formula::not(inner.clone())))
                }
                None => {
                    self.stage = Self::first_binary(false);
                    Some(None)
                }
            },
            Stage::Binary {
                disjunction,
                left_size,
                left,
                right,
            } => {
                // left_size ranges over 1..=n-2, the right operand gets the rest
                if n < 3 || left_size > n - 2 {
                    if disjunction {
                        self.advance_size();
                    } else {
                        self.stage = Self::first_binary(true);
                    }
                    return Some(None);
                }
                let right_size = n - 1 - left_size;
                let lefts = &self.levels[left_size];
                let rights = &self.levels[right_size];
                if left >= lefts.len() {
                    self.stage = Stage::Binary {
                        disjunction,
                        left_size: left_size + 1,
                        left: 0,
                        right: 0,
                    };
                    return Some(None);
                }
                if right >= rights.len() {
                    self.stage = Stage::Binary {
                        disjunction,
                        left_size,
                        left: left + 1,
                        right: 0,
                    };
                    return Some(None);
                }
                let (l, r) = (lefts[left].clone(), rights[right].clone());
                self.stage = Stage::Binary {
                    disjunction,
                    left_size,
                    left,
                    right: right + 1,
                };
                Some(Some(if disjunction {
                    Formula::or(l, r)
                } else {
                    Formula::and(l, r)
                }))
            }
        }
    }
}

impl Iterator for FormulaEnumerator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            match self.step()? {
                Some(f) => {
                    if self.size < self.max_nodes {
                        self.current.push(f.clone());
                    }
                    return Some(f);
                }
                None => continue,
            }
        }
    }
}

/// A random formula over `alphabet` with between 1 and `max_nodes` nodes.
/// Constants make up a third of the leaves; an empty alphabet yields only
/// constants.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, alphabet: &[Atom], max_nodes: usize) -> Formula {
    let size = rng.random_range(1..=max_nodes.max(1));
    random_of_size(rng, alphabet, size)
}

fn random_of_size<R: Rng + ?Sized>(rng: &mut R, alphabet: &[Atom], size: usize) -> Formula {
    match size {
        0 | 1 => {
            if alphabet.is_empty() || rng.random_ratio(1, 3) {
                Formula::Const(rng.random_bool(0.5))
            } else {
                Formula::Lit(alphabet[rng.random_range(0..alphabet.len())].clone())
            }
        }
        2 => Formula::not(random_of_size(rng, alphabet, 1)),
        _ => match rng.random_range(0..5) {
            0 => Formula::not(random_of_size(rng, alphabet, size - 1)),
            k => {
                let left = rng.random_range(1..=size - 2);
                let l = random_of_size(rng, alphabet, left);
                let r = random_of_size(rng, alphabet, size - 1 - left);
                if k <= 2 {
                    Formula::and(l, r)
                } else {
                    Formula::or(l, r)
                }
            }
        },
    }
}
