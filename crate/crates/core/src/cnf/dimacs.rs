//! DIMACS CNF reader. The writer lives on [`Cnf::write_dimacs`].

use thiserror::Error;

use super::formula::Cnf;
use super::lit::Lit;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
}

fn syntax(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parses DIMACS CNF text. Comment lines (`c ...`) may appear anywhere;
/// clauses may span lines. A final clause without its terminating `0` is
/// accepted.
pub fn parse_dimacs(text: &str) -> Result<Cnf, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut cnf = Cnf::new(0);
    let mut pending: Vec<Lit> = Vec::new();
    let mut seen_clauses = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(syntax(lineno, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(syntax(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = parts[2]
                .parse::<u32>()
                .map_err(|_| syntax(lineno, "bad variable count"))?;
            let clauses = parts[3]
                .parse::<usize>()
                .map_err(|_| syntax(lineno, "bad clause count"))?;
            header = Some((vars, clauses));
            cnf.ensure_vars(vars);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(DimacsError::MissingHeader);
        };
        for tok in line.split_whitespace() {
            let value: i32 = tok
                .parse()
                .map_err(|_| syntax(lineno, format!("bad literal `{tok}`")))?;
            match Lit::from_dimacs(value) {
                None if value == 0 => {
                    cnf.add_clause(&pending);
                    pending.clear();
                    seen_clauses += 1;
                }
                None => return Err(syntax(lineno, format!("bad literal `{tok}`"))),
                Some(lit) => {
                    if lit.var().index() > vars {
                        return Err(syntax(
                            lineno,
                            format!("literal {value} exceeds declared {vars} variables"),
                        ));
                    }
                    pending.push(lit);
                }
            }
        }
    }
    let Some((_, declared)) = header else {
        return Err(DimacsError::MissingHeader);
    };
    if !pending.is_empty() {
        cnf.add_clause(&pending);
        seen_clauses += 1;
    }
    if seen_clauses != declared {
        return Err(syntax(
            0,
            format!("header declares {declared} clauses, found {seen_clauses}"),
        ));
    }
    Ok(cnf)
}
