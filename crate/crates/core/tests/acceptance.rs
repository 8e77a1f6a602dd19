//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scl_core::algebra::{
    build_cva, build_sva, build_va, class_check, deriv_formula, eval_formula, evaluation_path, project_static,
    random_algebra, AlgebraClass, ClassTarget, State, ValuationAlgebra,
};
use scl_core::solver::{sat_brute_control, sat_brute_force, sat_direct, sat_open};
use scl_core::{
    check_system, enumerate_formulas, is_witness, parse, random_formula, se, solve, verify, Atom, AxiomSystem,
    Formula, Logic, Strategy, SuiteConfig, ValuationPath, Verdict,
};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: usize, detail: impl Into<String>) -> Outcome {
        Outcome {
            ok: failures == 0,
            detail: detail.into(),
        }
    }
}

fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

/// Formulas over {a, b} with at most 7 nodes, then over {a} with at most 9.
fn enumeration_suite() -> Vec<Formula> {
    let mut all: Vec<Formula> = enumerate_formulas(&atoms(&["a", "b"]), 7).collect();
    all.extend(enumerate_formulas(&atoms(&["a"]), 9));
    all
}

/// Answers per formula and logic from every solver, kept for the later
/// criteria.
struct SolverRuns {
    auto: Vec<[Option<bool>; 5]>,
    witnesses: BTreeSet<(usize, Logic, ValuationPath)>,
}

fn criterion_1(suite: &[Formula]) -> (Outcome, SolverRuns) {
    let mut disagreements = 0;
    let mut unknown_auto = 0;
    let mut runs = SolverRuns {
        auto: Vec::with_capacity(suite.len()),
        witnesses: BTreeSet::new(),
    };
    for (i, f) in suite.iter().enumerate() {
        let mut row = [None; 5];
        for (k, logic) in Logic::ALL.into_iter().enumerate() {
            let control = sat_brute_control(logic, f);
            let force = sat_brute_force(logic, f);
            let reference = control.verdict.decision();
            if force.verdict.decision() != reference {
                disagreements += 1;
            }
            let preferred = solve(logic, f, Strategy::preferred(logic));
            let auto = solve(logic, f, Strategy::Auto);
            for o in [&preferred, &auto] {
                if o.verdict.is_definite() && o.verdict.decision() != reference {
                    disagreements += 1;
                }
            }
            if !auto.verdict.is_definite() {
                unknown_auto += 1;
            }
            row[k] = auto.verdict.decision();
            for o in [control, force, preferred, auto] {
                if let Verdict::Yes(w) = o.verdict {
                    runs.witnesses.insert((i, logic, w));
                }
            }
        }
        runs.auto.push(row);
    }
    let outcome = Outcome::new(
        disagreements + unknown_auto,
        format!(
            "{} formulas x 5 logics, {disagreements} disagreements, {unknown_auto} unknown from auto",
            suite.len()
        ),
    );
    (outcome, runs)
}

fn criterion_2(runs: &SolverRuns) -> Outcome {
    let counterexamples = runs
        .auto
        .iter()
        .filter(|[_, rp, cn, mem, st]| rp != cn || mem != st)
        .count();
    Outcome::new(counterexamples, format!("{counterexamples} counterexamples"))
}

fn criterion_3(suite: &[Formula], runs: &SolverRuns) -> Outcome {
    let failures = runs
        .witnesses
        .iter()
        .filter(|(i, logic, w)| verify(*logic, &suite[*i], w).exit_code() != 0)
        .count();
    Outcome::new(failures, format!("{} distinct witnesses, {failures} rejected", runs.witnesses.len()))
}

fn criterion_4(suite: &[Formula]) -> Outcome {
    // constructions depend only on the path, so they are shared between
    // formulas; the formula's atoms are added as inert rows
    let mut classes: HashMap<ValuationPath, [Option<AlgebraClass>; 3]> = HashMap::new();
    let mut failures = 0;
    let mut checked = 0usize;
    for f in suite {
        let atoms = f.atoms();
        for (path, value) in se(f).traces() {
            checked += 1;
            let rp = path.is_repetition_proof();
            let mem = path.is_memorizing();
            let builds = [
                Some(build_va(&path)),
                rp.then(|| build_cva(&path)),
                mem.then(|| build_sva(&path)),
            ];
            let cached = classes
                .entry(path.clone())
                .or_insert_with(|| builds.clone().map(|v| v.map(|v| class_check(&v))));
            for (k, v) in builds.into_iter().enumerate() {
                let Some(v) = v else { continue };
                let v = v.with_atoms(atoms.iter().cloned());
                if eval_formula(&v, f, 1) != Ok(value) {
                    failures += 1;
                }
                let promised = [ClassTarget::Free, ClassTarget::Contractive, ClassTarget::Static][k];
                if !cached[k].is_some_and(|c| c.satisfies(promised)) {
                    failures += 1;
                }
            }
        }
    }
    Outcome::new(failures, format!("{checked} defined paths, {failures} failures"))
}

fn criterion_5() -> Outcome {
    let contradiction = parse("a && !a").unwrap();
    let f = parse("(a || b) && !a").unwrap();
    let witness: ValuationPath = "[(a,F),(b,T),(a,F)]".parse().unwrap();
    let mut failures = 0;
    for (logic, expected) in Logic::ALL.into_iter().zip([true, false, false, false, false]) {
        for strategy in [Strategy::Auto, Strategy::BruteControl] {
            if solve(logic, &contradiction, strategy).verdict.decision() != Some(expected) {
                failures += 1;
            }
            if solve(logic, &f, strategy).verdict.decision() != Some(true) {
                failures += 1;
            }
        }
        if verify(logic, &f, &witness).exit_code() != 0 {
            failures += 1;
        }
    }
    Outcome::new(failures, format!("{failures} failures"))
}

fn axiom_criterion(systems: &[AxiomSystem], config: SuiteConfig, limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut schemes = 0;
    let mut instances = 0;
    for &system in systems {
        match check_system(system, config) {
            Ok(reports) => {
                for r in reports {
                    schemes += 1;
                    instances += r.passed + r.failed;
                    if r.failed > 0 {
                        failures += r.failed;
                        println!("    {system} ({}) failed: {:?}", r.name, r.counterexample);
                    }
                }
            }
            Err(e) => {
                failures += 1;
                println!("    {system}: {e}");
            }
        }
    }
    let elapsed = start.elapsed();
    let slow = usize::from(elapsed > limit);
    Outcome::new(
        failures + slow,
        format!("{schemes} schemes, {instances} instances, {failures} failures, {elapsed:.2?} (limit {limit:?})"),
    )
}

fn criterion_8() -> Outcome {
    let alphabet = atoms(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    for i in 0..500u64 {
        let target = ClassTarget::ALL[(i % 5) as usize];
        let v = random_algebra(target, 5, &alphabet, i).unwrap();
        let x = random_formula(&mut rng, &alphabet, 12);
        let h: State = rng.random_range(v.state_range());
        let diamond = evaluation_path(&v, &x, h).unwrap();
        if diamond.result(&se(&x)) != Some(eval_formula(&v, &x, h).unwrap()) {
            failures += 1;
        }
        let class = class_check(&v);
        if (class.repetition_proof && !diamond.is_repetition_proof()) || (class.memorizing && !diamond.is_memorizing()) {
            failures += 1;
        }
        let mut state = h;
        for (a, b) in diamond.entries() {
            if v.atom_eval(a, state).unwrap() != *b {
                failures += 1;
            }
            state = v.atom_deriv(a, state).unwrap();
        }
    }
    Outcome::new(failures, format!("500 triples, {failures} failures"))
}

fn criterion_9() -> Outcome {
    let alphabet = atoms(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = 0;
    for i in 0..200u64 {
        let v = random_algebra(ClassTarget::Memorizing, 5, &alphabet, i).unwrap();
        let x = random_formula(&mut rng, &alphabet, 10);
        let y = random_formula(&mut rng, &alphabet, 10);
        let h: State = rng.random_range(v.state_range());
        let xh = deriv_formula(&v, &x, h).unwrap();
        let yxh = deriv_formula(&v, &y, xh).unwrap();
        if eval_formula(&v, &x, yxh).unwrap() != eval_formula(&v, &x, h).unwrap()
            || deriv_formula(&v, &x, yxh).unwrap() != yxh
        {
            failures += 1;
        }
    }
    for i in 0..200u64 {
        let v = random_algebra(ClassTarget::Static, 5, &alphabet, 1000 + i).unwrap();
        let x = random_formula(&mut rng, &alphabet, 10);
        let y = random_formula(&mut rng, &alphabet, 10);
        let h: State = rng.random_range(v.state_range());
        let yh = deriv_formula(&v, &y, h).unwrap();
        if eval_formula(&v, &x, yh).unwrap() != eval_formula(&v, &x, h).unwrap() {
            failures += 1;
        }
    }
    Outcome::new(failures, format!("200 memorizing + 200 static cases, {failures} failures"))
}

/// A right-nested chain over 50 atoms with at least `min_size` nodes,
/// mixing conjunction, disjunction and negation.
fn chain(min_size: usize) -> Formula {
    let names: Vec<Atom> = (0..50).map(|i| Atom::new(&format!("x{i}")).unwrap()).collect();
    let mut f = Formula::lit(names[0].clone());
    let mut i = 1;
    while f.size() < min_size {
        let a = Formula::lit(names[i % names.len()].clone());
        let lit = if i % 4 == 1 { Formula::not(a) } else { a };
        f = if i % 3 == 0 { Formula::or(lit, f) } else { Formula::and(lit, f) };
        i += 1;
    }
    f
}

fn criterion_10(suite: &[Formula]) -> Outcome {
    let mut failures = 0;
    for f in suite {
        let bound = 2 * f.size() as u64;
        for logic in Logic::ALL {
            if sat_direct(logic, f).node_visits > bound || sat_open(logic, f).node_visits > bound {
                failures += 1;
            }
        }
    }
    let f = chain(10_000);
    let bound = 2 * f.size() as u64;
    let mut timings = Vec::new();
    for (name, run) in [
        ("direct", sat_direct as fn(Logic, &Formula) -> scl_core::SatOutcome),
        ("open", sat_open),
    ] {
        let logic = if name == "direct" { Logic::Fscl } else { Logic::Rpscl };
        let start = Instant::now();
        let o = run(logic, &f);
        let elapsed = start.elapsed();
        let witness_ok = o.verdict.witness().is_some_and(|w| is_witness(logic, &f, w));
        if o.node_visits > bound || elapsed > Duration::from_secs(1) || !witness_ok {
            failures += 1;
        }
        timings.push(format!("{name} {} visits in {elapsed:.2?}", o.node_visits));
    }
    Outcome::new(
        failures,
        format!("chain of {} nodes: {}; {failures} failures", f.size(), timings.join(", ")),
    )
}

fn constant_free<R: Rng>(rng: &mut R, alphabet: &[Atom], occurrences: usize) -> Formula {
    if occurrences == 1 {
        let a = Formula::lit(alphabet[rng.random_range(0..alphabet.len())].clone());
        return if rng.random_bool(0.3) { Formula::not(a) } else { a };
    }
    let left = rng.random_range(1..occurrences);
    let x = constant_free(rng, alphabet, left);
    let y = constant_free(rng, alphabet, occurrences - left);
    let f = if rng.random_bool(0.5) { Formula::and(x, y) } else { Formula::or(x, y) };
    if rng.random_bool(0.2) {
        Formula::not(f)
    } else {
        f
    }
}

fn criterion_11() -> Outcome {
    let alphabet = atoms(&["a", "b", "c", "d"]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = 0;
    let mut checked = 0;
    let mut largest = 0;
    for n in 1..=16 {
        for _ in 0..10 {
            let f = constant_free(&mut rng, &alphabet, n);
            let leaves = se(&f).leaf_profile().leaf_count;
            largest = largest.max(leaves);
            checked += 1;
            if leaves > 1 << f.atom_occurrences() {
                failures += 1;
            }
        }
    }
    // a1 || (a2 || ...) for comparison: linear, far below the bound
    let names: Vec<Atom> = (1..=16).map(|i| Atom::new(&format!("a{i}")).unwrap()).collect();
    let disjunction = names.iter().rev().skip(1).fold(Formula::lit(names[15].clone()), |acc, a| {
        Formula::or(Formula::lit(a.clone()), acc)
    });
    if se(&disjunction).leaf_profile().leaf_count > 1 << 16 {
        failures += 1;
    }
    Outcome::new(failures, format!("{checked} formulas, largest tree {largest} leaves, {failures} failures"))
}

fn criterion_12() -> Outcome {
    let alphabet = atoms(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut failures = 0;
    for i in 0..100u64 {
        let v = random_algebra(ClassTarget::Static, 5, &alphabet, 2000 + i).unwrap();
        let h: State = rng.random_range(v.state_range());
        let x = random_formula(&mut rng, &alphabet, 12);
        match project_static(&v, h) {
            Ok(trivial) if eval_formula(&trivial, &x, 1) == eval_formula(&v, &x, h) => {}
            _ => failures += 1,
        }
    }
    Outcome::new(failures, format!("100 triples, {failures} failures"))
}

fn run() -> bool {
    let mut all_ok = true;
    let mut report = |n: usize, title: &str, start: Instant, outcome: Outcome| {
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        all_ok &= outcome.ok;
        println!("{status} {n:>2} {title}: {} [{:.2?}]", outcome.detail, start.elapsed());
    };

    let suite = enumeration_suite();

    let start = Instant::now();
    let (mut outcome, runs) = criterion_1(&suite);
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        outcome.ok = false;
    }
    report(1, "oracle equivalence", start, outcome);
    let t = Instant::now();
    report(2, "satisfiability collapse", t, criterion_2(&runs));
    let t = Instant::now();
    report(3, "witness soundness", t, criterion_3(&suite, &runs));
    let t = Instant::now();
    report(4, "constructor round trip", t, criterion_4(&suite));
    let t = Instant::now();
    report(5, "known instances", t, criterion_5());
    let t = Instant::now();
    let fscl = SuiteConfig {
        seed: 6,
        instances: 200,
        max_nodes: 9,
        ..SuiteConfig::default()
    };
    report(6, "EqFSCL soundness", t, axiom_criterion(&[AxiomSystem::EqFscl], fscl, Duration::from_secs(10)));
    let t = Instant::now();
    let models = SuiteConfig {
        seed: 7,
        instances: 200,
        algebras: 50,
        max_states: 5,
        max_nodes: 9,
    };
    let systems = [AxiomSystem::EqRpscl, AxiomSystem::EqCscl, AxiomSystem::EqMscl, AxiomSystem::EqSscl];
    report(7, "class-model soundness", t, axiom_criterion(&systems, models, Duration::from_secs(60)));
    let t = Instant::now();
    report(8, "evaluation path properties", t, criterion_8());
    let t = Instant::now();
    report(9, "memorizing and static lifts", t, criterion_9());
    let t = Instant::now();
    report(10, "linear solvers", t, criterion_10(&suite));
    let t = Instant::now();
    report(11, "tree growth bound", t, criterion_11());
    let t = Instant::now();
    report(12, "static projection", t, criterion_12());
    all_ok
}

fn main() {
    // tree construction and formula drops recurse on the 10,000-node chain
    let ok = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(run)
        .expect("spawn")
        .join()
        .expect("acceptance run panicked");
    if !ok {
        std::process::exit(1);
    }
}
