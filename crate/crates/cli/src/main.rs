//! `topcube`: command-line front end for the workbench.

mod input;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use topcube::families::{
    classify_family, enumerate_classify, is_ad_family, EndoMap, MapProperty,
};
use topcube::functions::{FnSpace, GraphItem, GraphPoint, PartialFn};
use topcube::logic::{certify_exclusion, check_collection, defined_class, holds, Structure};
use topcube::suite::{criterion, run_criterion, CRITERIA};
use topcube::witnesses::{self, Direction, DEFAULT_PARTS, MAX_T1_BOUND};
use topcube::{Error, Result, Universe, UpSet};

use render::{Outcome, Report};

#[derive(Parser)]
#[command(name = "topcube", version, about = "Exact computation over families of sets")]
struct Cli {
    /// Print the full JSON report instead of the rendered payload.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an operation on ultimately periodic sets.
    UpsetEval {
        op: SetOp,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        /// Element for `contains` and `rank`, index for `nth`.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
    },
    /// Lattice, topology and T1 flags for a family; a.d. status over ℕ.
    FamilyClassify {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "omega")]
        lambda: String,
    },
    /// Separation certificates and density witnesses.
    Witness {
        #[command(subcommand)]
        kind: WitnessCmd,
    },
    /// Sentences about a Boolean algebra with a predicate.
    Logic {
        #[command(subcommand)]
        cmd: LogicCmd,
    },
    /// Count lattices, topologies and T1 topologies on an n-point set.
    Enumerate {
        #[arg(long)]
        n: u8,
    },
    /// Run a seeded test suite.
    Suite {
        #[command(subcommand)]
        suite: SuiteCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetOp {
    Union,
    Intersect,
    Difference,
    Complement,
    Classify,
    Contains,
    Nth,
    Rank,
    IndexFilter,
    Subset,
    Disjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Up,
    Down,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Continuous,
    Open,
    Closed,
}

#[derive(Subcommand)]
enum WitnessCmd {
    Lattice {
        #[arg(long)]
        family: String,
    },
    Latb {
        #[arg(long)]
        family: String,
    },
    Updown {
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        family: String,
        /// A listed family, or `cofinite`.
        #[arg(long)]
        reference: String,
    },
    T1 {
        /// A listed family over ℕ, or `cofinite`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = MAX_T1_BOUND)]
        bound: u64,
    },
    Map {
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Images of 0..n-1, as a JSON list.
        #[arg(long)]
        map: String,
        #[arg(long)]
        topology: String,
    },
    Function {
        #[arg(long)]
        point: String,
        #[arg(long)]
        space: String,
    },
    Ad {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "omega")]
        lambda: String,
    },
    Density {
        #[arg(long)]
        nbhd: String,
    },
    FiniteFn {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        nbhd: String,
    },
    ExtendFn {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        nbhd: String,
        #[arg(long)]
        space: String,
    },
    Onto {
        #[arg(long)]
        nbhd: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Nontopology {
        #[arg(long)]
        nbhd: String,
        #[arg(long, default_value_t = DEFAULT_PARTS)]
        m: u32,
    },
    ExtendAd {
        #[arg(long)]
        family: String,
    },
}

#[derive(Subcommand)]
enum LogicCmd {
    /// Truth of a sentence in a finite family.
    Eval {
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        family: String,
    },
    /// A neighborhood of the family missing the class a universal sentence defines.
    Certify {
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        family: String,
    },
    /// Every family on an n-point set satisfying the sentence.
    Class {
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        n: u8,
    },
    /// Check a family against a list of sentences: `corpus`, a file, or text.
    Check {
        #[arg(long)]
        sentences: String,
        #[arg(long)]
        family: String,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// The acceptance criteria, as a pass/fail table.
    Acceptance {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

enum Run {
    Ok(Value),
    Failed(Value),
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let command = argv[1..].to_vec();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if argv.iter().any(|a| a == "--json") {
                let report = Report {
                    command,
                    outcome: Outcome::Error {
                        code: "usage",
                        message: e.kind().to_string(),
                    },
                    payload: Value::Null,
                    elapsed_ms: None,
                };
                println!("{}", report.to_json());
            }
            let _ = e.print();
            return ExitCode::from(2);
        }
    };

    let start = Instant::now();
    let result = dispatch(&cli);
    let elapsed_ms = cli.timing.then(|| start.elapsed().as_millis() as u64);
    let (outcome, payload, usage) = match result {
        Ok(Run::Ok(p)) => (Outcome::Ok, p, false),
        Ok(Run::Failed(p)) => (Outcome::Failed, p, false),
        Err(e) => (Outcome::error(&e), Value::Null, e.is_usage()),
    };
    let code = outcome.exit_code(usage);
    let report = Report {
        command,
        outcome,
        payload,
        elapsed_ms,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    } else if code == 0 || matches!(report.outcome, Outcome::Failed) {
        print!("{}", report.human());
    } else {
        eprint!("{}", report.human());
    }
    ExitCode::from(code as u8)
}

fn dispatch(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::UpsetEval { op, a, b, n, q, r } => {
            upset_eval(*op, a, b.as_deref(), *n, *q, *r).map(Run::Ok)
        }
        Command::FamilyClassify { family, lambda } => {
            let f = input::family(family)?;
            let mut out = json!({"family": f.to_json(), "class": classify_family(&f)?.to_json()});
            if f.universe() == Universe::Nat {
                out["ad"] = is_ad_family(&f, input::ad_bound(lambda)?)?.to_json();
            }
            Ok(Run::Ok(out))
        }
        Command::Witness { kind } => witness(kind).map(Run::Ok),
        Command::Logic { cmd } => logic(cmd).map(Run::Ok),
        Command::Enumerate { n } => {
            let counts = enumerate_classify(*n)?;
            Ok(Run::Ok(json!({"n": n, "counts": counts})))
        }
        Command::Suite {
            suite: SuiteCmd::Acceptance { criterion: id },
        } => acceptance(*id, cli.seed, cli.timing),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Validation(format!("this operation needs --{flag}")))
}

fn upset_eval(
    op: SetOp,
    a: &str,
    b: Option<&str>,
    n: Option<u64>,
    q: Option<u64>,
    r: Option<u64>,
) -> Result<Value> {
    let a: UpSet = input::parse(a)?;
    let b = || -> Result<UpSet> { input::parse(need(b, "b")?) };
    let set = |s: UpSet| json!({"set": s, "cardinality": s.classify()});
    Ok(match op {
        SetOp::Union => set(a.union(&b()?)?),
        SetOp::Intersect => set(a.intersect(&b()?)?),
        SetOp::Difference => set(a.difference(&b()?)?),
        SetOp::Complement => set(a.complement()),
        SetOp::Classify => set(a),
        SetOp::Contains => json!({"contains": a.contains(need(n, "n")?)}),
        SetOp::Nth => json!({"nth": a.nth(need(n, "n")?)?}),
        SetOp::Rank => json!({"rank": a.rank(need(n, "n")?)}),
        SetOp::IndexFilter => set(a.index_filter(need(q, "q")?, need(r, "r")?)?),
        SetOp::Subset => json!({"subset": a.is_subset(&b()?)}),
        SetOp::Disjoint => json!({"disjoint": a.is_disjoint(&b()?)}),
    })
}

fn witness(kind: &WitnessCmd) -> Result<Value> {
    Ok(match kind {
        WitnessCmd::Lattice { family } => {
            witnesses::separate_lattice(&input::family(family)?)?.to_json()
        }
        WitnessCmd::Latb { family } => witnesses::separate_lat_b(&input::family(family)?)?.to_json(),
        WitnessCmd::Updown {
            direction,
            family,
            reference,
        } => {
            let direction = match direction {
                DirectionArg::Up => Direction::Up,
                DirectionArg::Down => Direction::Down,
            };
            witnesses::separate_updown(direction, &input::oracle(reference)?, &input::family(family)?)?
                .to_json()
        }
        WitnessCmd::T1 { family, bound } => {
            witnesses::separate_t1(&input::oracle(family)?, *bound)?.to_json()
        }
        WitnessCmd::Map {
            property,
            map,
            topology,
        } => {
            let property = match property {
                PropertyArg::Continuous => MapProperty::Continuous,
                PropertyArg::Open => MapProperty::Open,
                PropertyArg::Closed => MapProperty::Closed,
            };
            let f: EndoMap = input::parse(map)?;
            witnesses::separate_map(property, &f, &input::family(topology)?)?.to_json()
        }
        WitnessCmd::Function { point, space } => {
            let p = GraphPoint::from_json(&input::json(point)?)?;
            let space: FnSpace = input::parse(space)?;
            witnesses::separate_function(&p, &space)?.to_json()
        }
        WitnessCmd::Ad { family, lambda } => {
            witnesses::separate_ad(&input::family(family)?, input::ad_bound(lambda)?)?.to_json()
        }
        WitnessCmd::Density { nbhd } => {
            let t = witnesses::density_topology(&input::clopen(nbhd)?)?;
            json!({"topology": t.to_json()})
        }
        WitnessCmd::FiniteFn { function, nbhd } => {
            let f = function_arg(function)?;
            let g = witnesses::density_finite_fn(&f, &input::nbhd::<GraphItem>(nbhd)?)?;
            json!({"function": g.to_json()})
        }
        WitnessCmd::ExtendFn {
            function,
            nbhd,
            space,
        } => {
            let f = function_arg(function)?;
            let space: FnSpace = input::parse(space)?;
            let g = witnesses::extend_infinite_fn(&f, &input::nbhd::<GraphItem>(nbhd)?, &space)?;
            json!({"function": g.to_json()})
        }
        WitnessCmd::Onto { nbhd, a, b } => {
            let a: UpSet = input::parse(a)?;
            let b: UpSet = input::parse(b)?;
            let g = witnesses::density_onto(&input::nbhd::<GraphItem>(nbhd)?, &a, &b)?;
            json!({"function": g.to_json()})
        }
        WitnessCmd::Nontopology { nbhd, m } => {
            witnesses::nontopology_lattice(&input::nbhd(nbhd)?, *m)?.to_json()
        }
        WitnessCmd::ExtendAd { family } => witnesses::extend_ad(&input::family(family)?)?.to_json(),
    })
}

fn function_arg(arg: &str) -> Result<PartialFn> {
    PartialFn::from_json(&input::json(arg)?)
}

fn structure(family: &str) -> Result<Structure> {
    Structure::new(&input::family(family)?)
}

fn logic(cmd: &LogicCmd) -> Result<Value> {
    Ok(match cmd {
        LogicCmd::Eval { sentence, family } => {
            let f = input::sentence(sentence)?;
            json!({"sentence": f.to_string(), "holds": holds(&structure(family)?, &f)?})
        }
        LogicCmd::Certify { sentence, family } => {
            certify_exclusion(&input::sentence(sentence)?, &structure(family)?)?.to_json()
        }
        LogicCmd::Class { sentence, n } => {
            let f = input::sentence(sentence)?;
            let class = defined_class(&f, *n)?;
            json!({
                "sentence": f.to_string(),
                "n": n,
                "count": class.len(),
                "families": class.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            })
        }
        LogicCmd::Check { sentences, family } => {
            let entries = input::sentences(sentences)?;
            let formulas: Vec<_> = entries.into_iter().map(|e| e.formula).collect();
            check_collection(&formulas, &structure(family)?)?.to_json()
        }
    })
}

fn acceptance(id: Option<u8>, seed: u64, timing: bool) -> Result<Run> {
    let selected = match id {
        Some(k) => vec![criterion(k)
            .ok_or_else(|| Error::Validation(format!("no criterion {k}; ids run from 1 to 8")))?],
        None => CRITERIA.to_vec(),
    };
    let results: Vec<_> = selected.into_iter().map(|c| run_criterion(c, seed)).collect();
    let passed = results.iter().filter(|r| r.pass).count();
    let payload = json!({
        "seed": seed,
        "table": results.iter().map(|r| r.line()).collect::<Vec<_>>(),
        "passed": passed,
        "total": results.len(),
        "criteria": results.iter().map(|r| r.to_json(timing)).collect::<Vec<_>>(),
    });
    Ok(if passed == results.len() {
        Run::Ok(payload)
    } else {
        Run::Failed(payload)
    })
}
