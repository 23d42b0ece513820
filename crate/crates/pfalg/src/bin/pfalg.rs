//! Command-line front end: axiom checking, representation construction,
//! equation decision, counterexample minimization, term evaluation,
//! range-free shrinking, and the propositional-validity reduction.
//!
//! Exit codes: 0 success/valid, 1 counterexample/violation/defect,
//! 2 budget exceeded, 64 usage, 65 bad input data, 70 internal
//! inconsistency (evidence against representability, or a bug).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use pfalg::decide::{
    decide_equation, minimize_counterexample, Counterexample, Mode, SearchOptions, Verdict,
};
use pfalg::fnalg::FunctionAlgebra;
use pfalg::laws::{axiom_suite_for, check_quasiequation, CheckOutcome, LawKind};
use pfalg::lift::lift_antidomain;
use pfalg::parse::{parse_equation, parse_term};
use pfalg::report;
use pfalg::represent::{verify_representation, RepresentError, Representation};
use pfalg::satred::{parse_formula, sat_to_equation};
use pfalg::schein::build_quotient_representation;
use pfalg::shrink::{shrink_range_free, ShrinkError};
use pfalg::sig::{Op, Signature};
use pfalg::table::FiniteAlgebra;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

const DEFAULT_CLASS_CAP: usize = 200_000;

#[derive(Parser)]
#[command(name = "pfalg", version, about = "algebras of unary partial functions")]
struct Cli {
    /// Worker threads for search and verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axiom suite selected by an algebra's signature.
    CheckAxioms {
        #[arg(long)]
        algebra: PathBuf,
        /// Override the signature whose suite is checked.
        #[arg(long)]
        signature: Option<String>,
    },
    /// Construct and verify a functional representation of a finite algebra.
    Represent {
        #[arg(long)]
        algebra: PathBuf,
        /// Signature to represent (defaults to the algebra's own).
        #[arg(long)]
        signature: Option<String>,
        /// Write the machine-readable image dump to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Cap on the number of base classes.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        class_cap: usize,
    },
    /// Decide an equation over all function algebras of a signature.
    CheckEquation {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        eq: String,
        #[arg(long, value_enum, default_value_t = CliMode::Exhaustive)]
        mode: CliMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
        /// Cap the searched base sizes below the theorem bound.
        #[arg(long)]
        max_base: Option<usize>,
        /// Deterministic step budget for the trace engine.
        #[arg(long, default_value_t = 20_000_000)]
        steps: u64,
        /// Samples drawn in random mode.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
    },
    /// Shrink a refuting model to the witness sets of the equation's sides.
    Minimize {
        /// Function fixture whose names are the equation's variables.
        #[arg(long)]
        counterexample: PathBuf,
        #[arg(long)]
        eq: String,
    },
    /// Evaluate a term against a function fixture.
    Eval {
        #[arg(long)]
        functions: PathBuf,
        #[arg(long)]
        term: String,
        /// Report only the value at this point.
        #[arg(long)]
        at: Option<usize>,
    },
    /// Close a range-free function family and restrict it to a small base.
    Shrink {
        #[arg(long)]
        functions: PathBuf,
        /// Cap on the closure size.
        #[arg(long, default_value_t = 5_000)]
        max_elements: usize,
    },
    /// Translate a propositional formula into an equation.
    ReduceSat {
        #[arg(long)]
        formula: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let is_help = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return ExitCode::from(if is_help { EXIT_OK } else { EXIT_USAGE });
        }
    };
    ExitCode::from(run(cli))
}

fn read_file(path: &PathBuf) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {}", path.display(), e);
        EXIT_DATA
    })
}

fn load_algebra(path: &PathBuf) -> Result<(FiniteAlgebra, String), u8> {
    let text = read_file(path)?;
    match FiniteAlgebra::parse_text(&text) {
        Ok(a) => Ok((a, text)),
        Err(e) => {
            eprintln!("error: {}", e);
            Err(EXIT_DATA)
        }
    }
}

fn load_fixture(path: &PathBuf, sig: Signature) -> Result<(FunctionAlgebra, String), u8> {
    let text = read_file(path)?;
    match FunctionAlgebra::parse_fixture(&text, sig) {
        Ok(a) => Ok((a, text)),
        Err(e) => {
            eprintln!("error: {}", e);
            Err(EXIT_DATA)
        }
    }
}

fn parse_signature(s: &str) -> Result<Signature, u8> {
    Signature::parse(s).map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_DATA
    })
}

fn run(cli: Cli) -> u8 {
    let result = match cli.cmd {
        Cmd::CheckAxioms { algebra, signature } => cmd_check_axioms(&algebra, signature.as_deref()),
        Cmd::Represent {
            algebra,
            signature,
            dump,
            class_cap,
        } => cmd_represent(
            &algebra,
            signature.as_deref(),
            dump.as_ref(),
            class_cap,
            cli.jobs,
        ),
        Cmd::CheckEquation {
            signature,
            eq,
            mode,
            seed,
            budget,
            max_base,
            steps,
            samples,
        } => cmd_check_equation(
            &signature, &eq, mode, seed, budget, max_base, steps, samples, cli.jobs,
        ),
        Cmd::Minimize { counterexample, eq } => cmd_minimize(&counterexample, &eq),
        Cmd::Eval {
            functions,
            term,
            at,
        } => cmd_eval(&functions, &term, at),
        Cmd::Shrink {
            functions,
            max_elements,
        } => cmd_shrink(&functions, max_elements),
        Cmd::ReduceSat { formula } => cmd_reduce_sat(&formula),
    };
    match result {
        Ok(code) | Err(code) => code,
    }
}

fn cmd_check_axioms(path: &PathBuf, signature: Option<&str>) -> Result<u8, u8> {
    let (alg, text) = load_algebra(path)?;
    let sig = match signature {
        Some(s) => parse_signature(s)?,
        None => alg.signature(),
    };
    print!("{}", report::header(text.as_bytes()));
    println!("elements: {}", alg.len());
    println!("signature: {}", sig);
    let suite = axiom_suite_for(sig);
    if let Some(warning) = &suite.warning {
        println!("warning: {}", warning);
    }
    let mut violated = 0usize;
    for law in &suite.laws {
        let kind = match law.kind {
            LawKind::Membership => "",
            LawKind::Consequence => " (consequence)",
        };
        match check_quasiequation(&law.q, &alg) {
            Ok(CheckOutcome::Holds) => {
                println!("law {:<7} {}{}: holds", law.label, law.q, kind);
            }
            Ok(CheckOutcome::Witness(w)) => {
                violated += 1;
                let binds: Vec<String> = w
                    .iter()
                    .map(|(v, e)| format!("{}={}", v, alg.name(*e)))
                    .collect();
                println!(
                    "law {:<7} {}{}: FAILS at {}",
                    law.label,
                    law.q,
                    kind,
                    binds.join(", ")
                );
            }
            Err(e) => {
                println!("law {:<7} {}: not checkable ({})", law.label, law.q, e);
            }
        }
    }
    if violated == 0 {
        println!("verdict: all checkable laws hold");
        Ok(EXIT_OK)
    } else {
        println!("verdict: {} law(s) violated", violated);
        Ok(EXIT_FAIL)
    }
}

fn cmd_represent(
    path: &PathBuf,
    signature: Option<&str>,
    dump: Option<&PathBuf>,
    class_cap: usize,
    jobs: usize,
) -> Result<u8, u8> {
    let (alg, text) = load_algebra(path)?;
    let sig = match signature {
        Some(s) => parse_signature(s)?,
        None => alg.signature(),
    };
    print!("{}", report::header(text.as_bytes()));
    let built: Result<Representation, RepresentError> = if sig.contains(Op::AntiDom) {
        lift_antidomain(&alg, sig, class_cap).map(|l| l.rep)
    } else {
        build_quotient_representation(&alg, sig, class_cap)
    };
    let rep = match built {
        Ok(rep) => rep,
        Err(e @ RepresentError::UnsupportedSignature(_)) | Err(e @ RepresentError::Eval(_)) => {
            eprintln!("error: {}", e);
            return Err(EXIT_DATA);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            return Err(EXIT_INTERNAL);
        }
    };
    print!("{}", rep.report(&alg));
    let defects = match verify_representation(&rep, &alg, sig, jobs.max(1)) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}", e);
            return Err(EXIT_DATA);
        }
    };
    if let Some(dump_path) = dump {
        if let Err(e) = std::fs::write(dump_path, rep.to_fixture(&alg)) {
            eprintln!("error: cannot write {}: {}", dump_path.display(), e);
            return Err(EXIT_DATA);
        }
    }
    if defects.is_empty() {
        println!("verifier: faithful representation for {{{}}}", sig);
        Ok(EXIT_OK)
    } else {
        for d in &defects {
            match d.point {
                Some(p) => println!("defect: {} (at class {})", d.description, p),
                None => println!("defect: {}", d.description),
            }
        }
        println!("verifier: {} defect(s)", defects.len());
        Ok(EXIT_FAIL)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_check_equation(
    signature: &str,
    eq_src: &str,
    mode: CliMode,
    seed: u64,
    budget: Option<u64>,
    max_base: Option<usize>,
    steps: u64,
    samples: u64,
    jobs: usize,
) -> Result<u8, u8> {
    let sig = parse_signature(signature)?;
    let eq = parse_equation(eq_src).map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_DATA
    })?;
    let opts = SearchOptions {
        mode: match mode {
            CliMode::Exhaustive => Mode::Exhaustive,
            CliMode::Random => Mode::Random,
        },
        seed,
        max_base,
        step_budget: steps,
        random_samples: samples,
        jobs: jobs.max(1),
        deadline: budget.map(|secs| Instant::now() + Duration::from_secs(secs)),
        ..Default::default()
    };
    print!("{}", report::header(eq_src.as_bytes()));
    println!("equation: {}", eq);
    println!("signature: {}", sig);
    if mode == CliMode::Random {
        println!("seed: {}", seed);
    }
    let decision = match decide_equation(&eq, sig, &opts) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}", e);
            return Err(EXIT_DATA);
        }
    };
    println!("base bound: {}", decision.theorem_bound);
    println!("engine: {}", decision.engine);
    match decision.verdict {
        Verdict::Valid => {
            println!("verdict: valid");
            Ok(EXIT_OK)
        }
        Verdict::Counterexample(ce) => {
            println!("verdict: counterexample");
            print_counterexample(&ce);
            Ok(EXIT_FAIL)
        }
        Verdict::BudgetExceeded {
            largest_base_exhausted,
        } => {
            println!(
                "verdict: budget exceeded (bases up to {} exhausted)",
                largest_base_exhausted
            );
            Ok(EXIT_BUDGET)
        }
    }
}

fn print_counterexample(ce: &Counterexample) {
    println!("base: {}", ce.base);
    for (name, f) in ce.assignment.iter() {
        println!("{}: {}", name, f.to_text());
    }
    println!(
        "witness: point {} (lhs {}, rhs {})",
        ce.witness,
        fmt_value(ce.lhs_value),
        fmt_value(ce.rhs_value)
    );
    if let Some(seed) = ce.seed {
        println!("seed: {}", seed);
    }
}

fn fmt_value(v: Option<usize>) -> String {
    match v {
        Some(p) => p.to_string(),
        None => "undefined".to_string(),
    }
}

fn cmd_minimize(fixture: &PathBuf, eq_src: &str) -> Result<u8, u8> {
    let eq = parse_equation(eq_src).map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_DATA
    })?;
    let (alg, text) = load_fixture(fixture, Signature::full())?;
    print!("{}", report::header(text.as_bytes()));
    let ce = Counterexample {
        base: alg.base(),
        assignment: alg.as_assignment(),
        witness: 0,
        lhs_value: None,
        rhs_value: None,
        seed: None,
    };
    match minimize_counterexample(&ce, &eq) {
        Ok(min) => {
            println!("equation: {}", eq);
            print_counterexample(&min);
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            Err(EXIT_DATA)
        }
    }
}

fn cmd_eval(fixture: &PathBuf, term_src: &str, at: Option<usize>) -> Result<u8, u8> {
    let (alg, text) = load_fixture(fixture, Signature::full())?;
    let term = parse_term(term_src).map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_DATA
    })?;
    print!("{}", report::header(text.as_bytes()));
    match alg.evaluate(&term) {
        Ok(value) => {
            println!("term: {}", term);
            match at {
                Some(x) => {
                    if x >= alg.base() {
                        eprintln!("error: point {} outside base {}", x, alg.base());
                        return Err(EXIT_DATA);
                    }
                    println!("value at {}: {}", x, fmt_value(value.get(x)));
                }
                None => println!("value: {}", value.to_text()),
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            Err(EXIT_DATA)
        }
    }
}

fn cmd_shrink(fixture: &PathBuf, max_elements: usize) -> Result<u8, u8> {
    let (loaded, text) = load_fixture(fixture, Signature::full())?;
    // fixtures default to the full signature; shrinking applies to its
    // range-free part
    let sig = Signature::new(Signature::full().iter().filter(|&op| op != Op::Range))
        .expect("compose retained");
    let gens: Vec<(String, _)> = loaded
        .generators()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    let alg = FunctionAlgebra::new(loaded.base(), sig, gens).expect("same base");
    print!("{}", report::header(text.as_bytes()));
    match shrink_range_free(&alg, max_elements) {
        Ok(out) => {
            println!("elements: {}", out.elements.len());
            println!("base before: {}", alg.base());
            println!("base after: {}", out.kept_points.len());
            println!(
                "kept points: [{}]",
                out.kept_points
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            print!("{}", out.restricted_algebra().to_fixture());
            println!("verifier: faithful restriction");
            Ok(EXIT_OK)
        }
        Err(e @ ShrinkError::RangePresent) | Err(e @ ShrinkError::Closure(_)) => {
            eprintln!("error: {}", e);
            Err(EXIT_DATA)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            Err(EXIT_INTERNAL)
        }
    }
}

fn cmd_reduce_sat(formula_src: &str) -> Result<u8, u8> {
    let phi = parse_formula(formula_src).map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_DATA
    })?;
    print!("{}", report::header(formula_src.as_bytes()));
    println!("formula: {}", phi);
    let eq = sat_to_equation(&phi);
    println!("equation: {}", eq);
    println!("signature: ; a d 1'");
    Ok(EXIT_OK)
}
