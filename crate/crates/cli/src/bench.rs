//! The `bench` subcommand: one CSV row per instance plus a totals row.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use anyhow::{Context, Result};
use reachsat::puzzles::{solve_encoding, PuzzleOutcome, PuzzleRegistry};
use reachsat::sat::SolveOutcome;

use crate::{load, Input, SolverArgs, EXIT_OK, EXIT_REJECTED};

pub const HEADER: [&str; 5] = ["instance", "vars", "clauses", "seconds", "result"];

struct Row {
    name: String,
    vars: u64,
    clauses: u64,
    millis: u64,
    result: &'static str,
}

pub fn run(dir: &Path, solver: &SolverArgs, jobs: usize, kind: Option<&str>) -> Result<u8> {
    let registry = PuzzleRegistry::default();
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            kind.is_some()
                || registry.for_path(p).is_ok()
                || matches!(p.extension().and_then(|e| e.to_str()), Some("cnf" | "dimacs"))
        })
        .collect();
    files.sort();
    // fail early on a bad solver spec rather than once per row
    solver.backend()?;

    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<Row>>> = Mutex::new((0..files.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..jobs.min(files.len()).max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let row = bench_one(path, solver, kind);
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let rows: Vec<Row> = rows.into_inner().unwrap().into_iter().flatten().collect();

    let mut out = csv::Writer::from_writer(io::stdout().lock());
    out.write_record(HEADER)?;
    for r in &rows {
        out.write_record([
            r.name.clone(),
            r.vars.to_string(),
            r.clauses.to_string(),
            seconds(r.millis),
            r.result.to_string(),
        ])?;
    }
    out.write_record([
        "TOTAL".to_string(),
        rows.iter().map(|r| r.vars).sum::<u64>().to_string(),
        rows.iter().map(|r| r.clauses).sum::<u64>().to_string(),
        seconds(rows.iter().map(|r| r.millis).sum()),
        format!("{} instances", rows.len()),
    ])?;
    out.flush()?;
    Ok(if rows.iter().any(|r| r.result == "rejected") {
        EXIT_REJECTED
    } else {
        EXIT_OK
    })
}

fn seconds(millis: u64) -> String {
    format!("{}.{:03}", millis / 1000, millis % 1000)
}

fn bench_one(path: &Path, solver: &SolverArgs, kind: Option<&str>) -> Row {
    let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let mut row = Row {
        name,
        vars: 0,
        clauses: 0,
        millis: 0,
        result: "error",
    };
    if let Err(err) = measure(path, solver, kind, &mut row) {
        eprintln!("{}: {err:#}", path.display());
        row.result = "error";
    }
    row
}

fn measure(path: &Path, solver: &SolverArgs, kind: Option<&str>, row: &mut Row) -> Result<()> {
    let backend = solver.backend()?;
    match load(path, kind)? {
        Input::Puzzle(inst) => {
            let enc = inst.encode();
            row.vars = enc.builder.num_vars().into();
            row.clauses = enc.builder.num_clauses() as u64;
            let start = Instant::now();
            let outcome = solve_encoding(&enc, backend.as_ref());
            row.millis = start.elapsed().as_millis() as u64;
            row.result = match outcome? {
                PuzzleOutcome::Solved { solution, .. } => match inst.verify(&solution) {
                    Ok(()) => "verified",
                    Err(rej) => {
                        eprintln!("{}: {rej}", path.display());
                        "rejected"
                    }
                },
                PuzzleOutcome::Infeasible => "infeasible",
                PuzzleOutcome::Unknown(_) => "unknown",
            };
        }
        Input::Cnf(cnf) => {
            row.vars = cnf.num_vars().into();
            row.clauses = cnf.num_clauses() as u64;
            let start = Instant::now();
            let outcome = backend.solve(&cnf);
            row.millis = start.elapsed().as_millis() as u64;
            row.result = match outcome? {
                SolveOutcome::Sat(_) => "sat",
                SolveOutcome::Unsat => "unsat",
                SolveOutcome::Unknown(_) => "unknown",
            };
        }
    }
    Ok(())
}
