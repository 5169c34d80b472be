//! `reachsat`: solve, encode, verify and benchmark grid puzzles and DIMACS
//! files.
//!
//! Exit status: 0 solved and verified (or accepted), 1 solution rejected,
//! 2 malformed input or usage error, 10 unknown (budget exhausted), 20
//! proven infeasible.

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use reachsat::cnf::{parse_dimacs, Cnf, Lit, Var};
use reachsat::puzzles::{solve_instance, PuzzleInstance, PuzzleOutcome, PuzzleRegistry};
use reachsat::sat::{BackendOptions, BackendRegistry, SatBackend, SolveOutcome, SOLVER_ENV};
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_REJECTED: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_UNKNOWN: u8 = 10;
pub const EXIT_INFEASIBLE: u8 = 20;

#[derive(Parser)]
#[command(name = "reachsat", version, about = "Grid puzzles through SAT-encoded reachability constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance, verify the answer and print it.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputMode::Ascii)]
        output: OutputMode,
    },
    /// Write the CNF encoding and a variable-name sidecar.
    Encode {
        #[command(flatten)]
        input: InputArgs,
        /// DIMACS destination; defaults to the input path with `.cnf`. The
        /// sidecar goes next to it with `.map`.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a JSON solution against an instance.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        solution: PathBuf,
    },
    /// Solve every instance in a directory and print a CSV table.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Instances solved concurrently.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Puzzle kind for every file; otherwise taken from extensions.
        #[arg(long)]
        puzzle: Option<String>,
    },
}

#[derive(Args, Clone)]
struct InputArgs {
    path: PathBuf,
    /// Puzzle kind (roadrunner, masyu, shingoki, tapa, or cnf); inferred from
    /// the file extension when absent.
    #[arg(long)]
    puzzle: Option<String>,
}

#[derive(Args, Clone)]
pub struct SolverArgs {
    /// internal, splr, kissat, cadical, or external:<command line>
    #[arg(long, env = SOLVER_ENV, default_value = "internal")]
    solver: String,
    /// Time budget per SAT call, in seconds.
    #[arg(long, value_parser = parse_timeout)]
    timeout: Option<Duration>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    pub fn backend(&self) -> Result<Box<dyn SatBackend>> {
        let opts = BackendOptions {
            time_limit: self.timeout,
            seed: self.seed,
        };
        Ok(BackendRegistry::default().create(&self.solver, &opts)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Ascii,
    Json,
    /// Competition-style `s`/`v` lines.
    Dimacs,
}

fn parse_timeout(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|_| format!("`{s}` is not a number of seconds"))?;
    if !(secs > 0.0 && secs.is_finite()) {
        return Err("the time budget must be positive".into());
    }
    Ok(Duration::from_secs_f64(secs))
}

pub enum Input {
    Puzzle(Box<dyn PuzzleInstance>),
    Cnf(Cnf),
}

const CNF_KINDS: [&str; 2] = ["cnf", "dimacs"];

pub fn load(path: &Path, kind: Option<&str>) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let kind = kind.unwrap_or(ext);
    if CNF_KINDS.contains(&kind) {
        let cnf = parse_dimacs(&text).with_context(|| format!("{}", path.display()))?;
        return Ok(Input::Cnf(cnf));
    }
    let registry = PuzzleRegistry::default();
    let puzzle = if kind.is_empty() {
        registry.for_path(path)?
    } else {
        registry.get(kind)?
    };
    let inst = puzzle.parse(&text).with_context(|| format!("{}", path.display()))?;
    Ok(Input::Puzzle(inst))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_MALFORMED)
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Solve { input, solver, output } => {
            let backend = solver.backend()?;
            match load(&input.path, input.puzzle.as_deref())? {
                Input::Puzzle(inst) => solve_puzzle(inst.as_ref(), backend.as_ref(), output),
                Input::Cnf(cnf) => solve_cnf(&cnf, backend.as_ref(), output),
            }
        }
        Command::Encode { input, out } => {
            let Input::Puzzle(inst) = load(&input.path, input.puzzle.as_deref())? else {
                bail!("{} is already DIMACS", input.path.display());
            };
            let out = out.unwrap_or_else(|| input.path.with_extension("cnf"));
            let map = out.with_extension("map");
            let enc = inst.encode();
            let mut text = Vec::new();
            enc.builder.cnf().write_dimacs(&mut text)?;
            fs::write(&out, text).with_context(|| format!("cannot write {}", out.display()))?;
            let mut names = Vec::new();
            enc.builder.write_var_map(&mut names)?;
            fs::write(&map, names).with_context(|| format!("cannot write {}", map.display()))?;
            eprintln!(
                "{}: {} variables, {} clauses; names in {}",
                out.display(),
                enc.builder.num_vars(),
                enc.builder.num_clauses(),
                map.display()
            );
            Ok(EXIT_OK)
        }
        Command::Verify { input, solution } => {
            let Input::Puzzle(inst) = load(&input.path, input.puzzle.as_deref())? else {
                bail!("verify needs a puzzle instance");
            };
            let text = fs::read_to_string(&solution).with_context(|| format!("cannot read {}", solution.display()))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).with_context(|| format!("{} is not JSON", solution.display()))?;
            let sol = inst.solution_from_json(&value)?;
            match inst.verify(&sol) {
                Ok(()) => {
                    println!("ACCEPTED");
                    Ok(EXIT_OK)
                }
                Err(rej) => {
                    println!("REJECTED {rej}");
                    Ok(EXIT_REJECTED)
                }
            }
        }
        Command::Bench {
            dir,
            solver,
            jobs,
            puzzle,
        } => bench::run(&dir, &solver, jobs as usize, puzzle.as_deref()),
    }
}

fn solve_puzzle(inst: &dyn PuzzleInstance, backend: &dyn SatBackend, output: OutputMode) -> Result<u8> {
    match solve_instance(inst, backend)? {
        PuzzleOutcome::Solved { solution, .. } => {
            if let Err(rej) = inst.verify(&solution) {
                eprintln!("REJECTED {rej}");
                return Ok(EXIT_REJECTED);
            }
            match output {
                OutputMode::Json => println!("{}", inst.solution_json(&solution)),
                OutputMode::Ascii => {
                    print!("{}", inst.render(&solution));
                    println!("VERIFIED");
                }
                OutputMode::Dimacs => println!("s SATISFIABLE"),
            }
            Ok(EXIT_OK)
        }
        PuzzleOutcome::Infeasible => {
            match output {
                OutputMode::Json => println!("{}", json!({"kind": inst.kind(), "result": "infeasible"})),
                OutputMode::Ascii => println!("INFEASIBLE"),
                OutputMode::Dimacs => println!("s UNSATISFIABLE"),
            }
            Ok(EXIT_INFEASIBLE)
        }
        PuzzleOutcome::Unknown(reason) => {
            match output {
                OutputMode::Json => println!("{}", json!({"kind": inst.kind(), "result": "unknown", "reason": reason})),
                OutputMode::Ascii => println!("UNKNOWN: {reason}"),
                OutputMode::Dimacs => println!("s UNKNOWN"),
            }
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn solve_cnf(cnf: &Cnf, backend: &dyn SatBackend, output: OutputMode) -> Result<u8> {
    match backend.solve(cnf)? {
        SolveOutcome::Sat(model) => {
            let mut all: Vec<i32> = (1..=cnf.num_vars())
                .filter_map(Var::new)
                .map(|v| Lit::new(v, model.var_value(v) == Some(true)).to_dimacs())
                .collect();
            if output == OutputMode::Json {
                println!("{}", json!({"result": "sat", "model": all}));
            } else {
                all.push(0);
                let v: Vec<String> = all.iter().map(i32::to_string).collect();
                println!("s SATISFIABLE\nv {}", v.join(" "));
            }
            Ok(EXIT_OK)
        }
        SolveOutcome::Unsat => {
            if output == OutputMode::Json {
                println!("{}", json!({"result": "unsat"}));
            } else {
                println!("s UNSATISFIABLE");
            }
            Ok(EXIT_INFEASIBLE)
        }
        SolveOutcome::Unknown(reason) => {
            if output == OutputMode::Json {
                println!("{}", json!({"result": "unknown", "reason": reason}));
            } else {
                println!("s UNKNOWN");
                eprintln!("{reason}");
            }
            Ok(EXIT_UNKNOWN)
        }
    }
}
