//! Subprocess driver for solvers that follow the SAT-competition output
//! conventions (`s SATISFIABLE` / `s UNSATISFIABLE` status, `v` value lines).

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::cnf::{Cnf, Lit};

use super::model::{check_model, Model};
use super::{SatBackend, SatError, SolveOutcome};

/// An external solver invoked as `<program> <args...> <cnf-file>`.
#[derive(Clone, Debug)]
pub struct ExternalSolver {
    pub program: String,
    pub args: Vec<String>,
    pub time_limit: Option<Duration>,
    /// Where temporary DIMACS files go; the system temp dir if unset.
    pub tmpdir: Option<PathBuf>,
}

/// What a solver printed, before model verification.
#[derive(Debug, PartialEq, Eq)]
pub enum SolverReport {
    Sat(Vec<Lit>),
    Unsat,
    NoStatus,
}

impl ExternalSolver {
    /// Splits a command line on whitespace: the first word is the program.
    pub fn from_command_line(cmd: &str) -> Result<ExternalSolver, SatError> {
        let mut words = cmd.split_whitespace().map(str::to_string);
        let program = words
            .next()
            .ok_or_else(|| SatError::Config("empty solver command".into()))?;
        Ok(ExternalSolver {
            program,
            args: words.collect(),
            time_limit: None,
            tmpdir: None,
        })
    }

    pub fn command_line(&self) -> String {
        std::iter::once(self.program.as_str())
            .chain(self.args.iter().map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn solve_cnf(&self, cnf: &Cnf) -> Result<SolveOutcome, SatError> {
        let mut builder = tempfile::Builder::new();
        builder.prefix("reachsat-").suffix(".cnf");
        let mut file = match &self.tmpdir {
            Some(dir) => builder.tempfile_in(dir),
            None => builder.tempfile(),
        }
        .map_err(SatError::io)?;
        cnf.write_dimacs(&mut file).map_err(SatError::io)?;
        file.flush().map_err(SatError::io)?;

        let result = self.run(file.path().to_path_buf(), cnf);
        match &result {
            Ok(SolveOutcome::Sat(_)) | Ok(SolveOutcome::Unsat) => {}
            // Keep the formula around for debugging.
            _ => {
                let _ = file.keep();
            }
        }
        result
    }

    fn run(&self, path: PathBuf, cnf: &Cnf) -> Result<SolveOutcome, SatError> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .arg(&path)
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| SatError::Io(format!("cannot start `{}`: {e}", self.program)))?;

        let mut stdout = child.stdout.take().expect("stdout is piped");
        let reader = thread::spawn(move || {
            let mut buf = String::new();
            let _ = stdout.read_to_string(&mut buf);
            buf
        });

        let deadline = self.time_limit.map(|t| Instant::now() + t);
        let status = loop {
            if let Some(status) = child.try_wait().map_err(SatError::io)? {
                break Some(status);
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                break None;
            }
            thread::sleep(Duration::from_millis(5));
        };
        let output = reader.join().unwrap_or_default();
        let Some(status) = status else {
            return Ok(SolveOutcome::Unknown(format!(
                "time limit reached after {:?}",
                self.time_limit.unwrap_or_default()
            )));
        };

        match parse_solver_output(&output)? {
            SolverReport::Unsat => Ok(SolveOutcome::Unsat),
            SolverReport::NoStatus => Ok(SolveOutcome::Unknown(format!(
                "protocol: no status line (exit status {status})"
            ))),
            SolverReport::Sat(lits) => {
                let mut model = Model::new(cnf.num_vars());
                for lit in lits {
                    if lit.var().index() <= cnf.num_vars() {
                        model.set(lit.var(), lit.is_positive());
                    }
                }
                if !check_model(cnf, &model)? {
                    return Err(SatError::BadModel(self.command_line()));
                }
                Ok(SolveOutcome::Sat(model))
            }
        }
    }
}

impl SatBackend for ExternalSolver {
    fn name(&self) -> String {
        self.command_line()
    }

    fn solve(&self, cnf: &Cnf) -> Result<SolveOutcome, SatError> {
        self.solve_cnf(cnf)
    }
}

/// Parses solver stdout. Status lines may carry a trailing annotation
/// (`s SATISFIABLE: file.cnf`); value lines may repeat `v`.
pub fn parse_solver_output(text: &str) -> Result<SolverReport, SatError> {
    let mut status: Option<bool> = None;
    let mut lits = Vec::new();
    for raw in text.lines() {
        let line = strip_ansi(raw);
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            let word = rest.trim_start();
            if word.starts_with("UNSATISFIABLE") {
                status = Some(false);
            } else if word.starts_with("SATISFIABLE") {
                status = Some(true);
            }
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let value: i32 = tok
                    .parse()
                    .map_err(|_| SatError::Protocol(format!("bad value token `{tok}`")))?;
                if let Some(lit) = Lit::from_dimacs(value) {
                    lits.push(lit);
                }
            }
        }
    }
    Ok(match status {
        Some(true) => SolverReport::Sat(lits),
        Some(false) => SolverReport::Unsat,
        None => SolverReport::NoStatus,
    })
}

fn strip_ansi(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\u{1b}' {
            if chars.peek() == Some(&'[') {
                chars.next();
                for d in chars.by_ref() {
                    if d.is_ascii_alphabetic() {
                        break;
                    }
                }
            }
            continue;
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_competition_output() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        let lits: Vec<Lit> = [1, -2, 3]
            .iter()
            .map(|&x| Lit::from_dimacs(x).unwrap())
            .collect();
        assert_eq!(parse_solver_output(out).unwrap(), SolverReport::Sat(lits));
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n").unwrap(),
            SolverReport::Unsat
        );
        assert_eq!(
            parse_solver_output("c nothing\n").unwrap(),
            SolverReport::NoStatus
        );
    }

    #[test]
    fn tolerates_annotations_and_color() {
        let out = "\u{1b}[1G\u{1b}[Ks UNSATISFIABLE: u.cnf\n";
        assert_eq!(parse_solver_output(out).unwrap(), SolverReport::Unsat);
        let out = "s SATISFIABLE: t.cnf\ns SATISFIABLE\nv -1 2 0\n";
        assert!(matches!(parse_solver_output(out).unwrap(), SolverReport::Sat(l) if l.len() == 2));
    }

    #[test]
    fn command_line_split() {
        let s = ExternalSolver::from_command_line("splr -q -C -r -").unwrap();
        assert_eq!(s.program, "splr");
        assert_eq!(s.args, vec!["-q", "-C", "-r", "-"]);
        assert!(ExternalSolver::from_command_line("  ").is_err());
    }

    #[test]
    fn missing_program_is_an_error() {
        let s = ExternalSolver::from_command_line("/nonexistent/solver-binary").unwrap();
        let mut cnf = Cnf::new(1);
        cnf.add_clause(&[Lit::from_dimacs(1).unwrap()]);
        assert!(matches!(s.solve(&cnf), Err(SatError::Io(_))));
    }

    #[test]
    fn no_status_is_unknown() {
        // `true` exits 0 and prints nothing
        let s = ExternalSolver::from_command_line("true").unwrap();
        let mut cnf = Cnf::new(1);
        cnf.add_clause(&[Lit::from_dimacs(1).unwrap()]);
        assert!(matches!(s.solve(&cnf).unwrap(), SolveOutcome::Unknown(_)));
    }

    #[test]
    fn lying_solver_is_caught() {
        let dir = tempfile::tempdir().unwrap();
        let script = dir.path().join("liar.sh");
        std::fs::write(&script, "#!/bin/sh\necho 's SATISFIABLE'\necho 'v -1 0'\n").unwrap();
        let s = ExternalSolver::from_command_line(&format!("sh {}", script.display())).unwrap();
        let mut cnf = Cnf::new(1);
        cnf.add_clause(&[Lit::from_dimacs(1).unwrap()]);
        assert!(matches!(s.solve(&cnf), Err(SatError::BadModel(_))));
    }
}
