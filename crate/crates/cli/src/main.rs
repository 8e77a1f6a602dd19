//! `sclsat`: satisfiability, evaluation trees, normal forms and axiom
//! checks for short-circuit logics.

use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scl_core::{
    axioms::check_system, classify_nf, falsify, is_witness, normalize, parse, random_formula, se, solve, verify,
    witness_algebra, Atom, AxiomSystem, Formula, Logic, SatOutcome, Strategy, SuiteConfig, ValuationPath, Verdict,
};
use serde_json::json;

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "sclsat", version, about = "Satisfiability for short-circuit logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// FSCL, RPSCL, CSCL, MSCL or SSCL (any case)
    #[arg(long, default_value = "fscl")]
    logic: Logic,
    /// auto, brute-control, brute-force, direct, open or boolean
    #[arg(long, default_value = "auto")]
    strategy: Strategy,
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
    /// Shorthand for `--output json`
    #[arg(long)]
    json: bool,
}

impl Common {
    fn json(&self) -> bool {
        self.json || self.output == Output::Json
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability; exit 0 yes, 1 no, 2 unknown
    Sat {
        /// Formula text, or `-` for stdin
        formula: String,
        #[command(flatten)]
        common: Common,
        /// Also print the algebra built from the witness
        #[arg(long)]
        witness_algebra: bool,
    },
    /// Decide whether the formula can evaluate to F
    Falsify {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the evaluation tree
    Tree {
        formula: String,
        /// Graphviz output
        #[arg(long)]
        dot: bool,
    },
    /// Check a witness path such as `[(a,T),(b,F)]`; exit 0 accepted,
    /// 1 false result, 3 undefined result, 4 discipline violation
    Verify {
        formula: String,
        path: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the normal form and its class
    Normalize { formula: String },
    /// Parse and print the formula in canonical form
    Parse { formula: String },
    /// List an axiom system, or check it on random instances
    Axioms {
        /// EqFSCL, EqRPSCL, EqCSCL, EqMSCL or EqSSCL
        #[arg(long, default_value = "EqFSCL")]
        system: AxiomSystem,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per axiom
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Random algebras per axiom
        #[arg(long, default_value_t = 50)]
        algebras: usize,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Compare every solver with the brute-force reference on random
    /// formulas; exit 0 when nothing disagrees
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_nodes: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    // parsing, tree building and dropping deep formulas recurse
    let worker = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(move || run(cli.command))
        .expect("spawn worker");
    match worker.join() {
        Ok(code) => ExitCode::from(code),
        Err(_) => ExitCode::from(70),
    }
}

fn read_formula(text: &str) -> Result<Formula, u8> {
    let source = if text == "-" {
        let mut buf = String::new();
        if let Err(e) = io::stdin().read_to_string(&mut buf) {
            eprintln!("error: reading stdin: {e}");
            return Err(EXIT_IO);
        }
        buf
    } else {
        text.to_string()
    };
    parse(&source).map_err(|e| {
        eprintln!("parse error: {e}");
        EXIT_DATA
    })
}

fn run(command: Command) -> u8 {
    match dispatch(command) {
        Ok(code) | Err(code) => code,
    }
}

fn dispatch(command: Command) -> Result<u8, u8> {
    match command {
        Command::Sat {
            formula,
            common,
            witness_algebra,
        } => {
            let f = read_formula(&formula)?;
            let outcome = solve(common.logic, &f, common.strategy);
            Ok(report_outcome(&outcome, &common, witness_algebra))
        }
        Command::Falsify { formula, common } => {
            let f = read_formula(&formula)?;
            let outcome = falsify(common.logic, &f, common.strategy);
            Ok(report_outcome(&outcome, &common, false))
        }
        Command::Tree { formula, dot } => {
            let t = se(&read_formula(&formula)?);
            if dot {
                print!("{}", t.to_dot());
            } else {
                println!("{}", t.render());
            }
            Ok(0)
        }
        Command::Verify { formula, path, common } => {
            let f = read_formula(&formula)?;
            let p: ValuationPath = path.parse().map_err(|e| {
                eprintln!("path parse error: {e}");
                EXIT_DATA
            })?;
            let report = verify(common.logic, &f, &p);
            if common.json() {
                println!("{}", report.to_json());
            } else {
                let result = match report.result {
                    Some(true) => "T",
                    Some(false) => "F",
                    None => "undefined",
                };
                println!("result: {result}");
                let discipline = if report.discipline_ok { "ok" } else { "violated" };
                println!("{} path discipline: {discipline}", report.logic);
                for r in &report.round_trips {
                    let value = if r.value { "T" } else { "F" };
                    let verdict = if r.agrees { "agrees" } else { "DISAGREES" };
                    println!("{}: formula evaluates to {value} in a {} algebra, {verdict}", r.constructor, r.class);
                }
                println!("{}", if report.accepted() { "accepted" } else { "rejected" });
            }
            Ok(report.exit_code() as u8)
        }
        Command::Normalize { formula } => {
            let n = normalize(&read_formula(&formula)?);
            println!("{n}");
            println!("class: {}", classify_nf(&n));
            Ok(0)
        }
        Command::Parse { formula } => {
            println!("{}", read_formula(&formula)?);
            Ok(0)
        }
        Command::Axioms {
            system,
            check,
            seed,
            instances,
            algebras,
            output,
        } => Ok(cmd_axioms(system, check, seed, instances, algebras, output)),
        Command::Suite { seed, count, max_nodes } => Ok(cmd_suite(seed, count, max_nodes)),
    }
}

fn report_outcome(outcome: &SatOutcome, common: &Common, with_algebra: bool) -> u8 {
    let algebra = with_algebra
        .then(|| outcome.verdict.witness().map(witness_algebra))
        .flatten();
    if common.json() {
        let mut value: serde_json::Value = serde_json::from_str(&outcome.to_json()).expect("outcome json");
        if with_algebra {
            value["witness_algebra"] = match &algebra {
                Some((name, v)) => json!({ "constructor": name, "algebra": v }),
                None => serde_json::Value::Null,
            };
        }
        println!("{value}");
    } else {
        println!("answer: {}", outcome.verdict.answer());
        if let Some(w) = outcome.verdict.witness() {
            println!("witness: {w}");
        }
        println!("logic: {}", outcome.logic);
        println!("solver: {}", outcome.solver);
        println!("node_visits: {}", outcome.node_visits);
        println!("leaves_explored: {}", outcome.leaves_explored);
        if let Some((name, v)) = &algebra {
            println!("witness_algebra ({name}): {}", v.to_json());
        }
    }
    match outcome.verdict {
        Verdict::Yes(_) => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

fn cmd_axioms(system: AxiomSystem, check: bool, seed: u64, instances: usize, algebras: usize, output: Output) -> u8 {
    if !check {
        for scheme in scl_core::axiom_table(system) {
            let note = if scheme.defining { "  (defining equation)" } else { "" };
            println!("{scheme}{note}");
        }
        return 0;
    }
    let config = SuiteConfig {
        seed,
        instances,
        algebras,
        ..SuiteConfig::default()
    };
    let reports = match check_system(system, config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 70;
        }
    };
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    if output == Output::Json {
        println!("{}", json!({ "system": system.to_string(), "axioms": reports }));
    } else {
        for r in &reports {
            print!("({}) {}: {} passed, {} failed", r.name, r.equation, r.passed, r.failed);
            match &r.counterexample {
                Some((lhs, rhs)) => println!("; counterexample {lhs} = {rhs}"),
                None => println!(),
            }
        }
        println!("{system}: {} axioms, {failed} failures", reports.len());
    }
    u8::from(failed > 0)
}

fn cmd_suite(seed: u64, count: usize, max_nodes: usize) -> u8 {
    let alphabet: Vec<Atom> = ["a", "b", "c"].iter().map(|n| Atom::new(n).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = 0usize;
    let mut checks = 0usize;
    for _ in 0..count {
        let f = random_formula(&mut rng, &alphabet, max_nodes);
        for logic in Logic::ALL {
            let reference = solve(logic, &f, Strategy::BruteControl).verdict.decision();
            for strategy in Strategy::ALL {
                let outcome = solve(logic, &f, strategy);
                checks += 1;
                let decision = outcome.verdict.decision();
                let witness_ok = outcome.verdict.witness().is_none_or(|w| is_witness(logic, &f, w));
                if (decision.is_some() && decision != reference) || !witness_ok {
                    disagreements += 1;
                    println!("DISAGREE {logic} {strategy}: {f} gave {}", outcome.verdict.answer());
                }
                if strategy == Strategy::Auto && decision.is_none() {
                    disagreements += 1;
                    println!("UNKNOWN {logic} auto: {f}");
                }
            }
        }
    }
    println!("{count} formulas, {checks} solver runs, {disagreements} disagreements");
    u8::from(disagreements > 0)
}
