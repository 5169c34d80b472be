//! Grid puzzles modelled with the graph constraints.
//!
//! Each puzzle kind implements [`Puzzle`] (parsing) and produces a
//! [`PuzzleInstance`] (encoding, verification, rendering, JSON). Kinds are
//! looked up by name or file extension through a [`PuzzleRegistry`].
//!
//! Verifiers re-check the rules on the decoded solution directly and never
//! look at the CNF.

mod geom;
mod masyu;
mod paths;
mod roadrunner;
mod shingoki;
mod tapa;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cnf::{CnfBuilder, UnaryCount, Valuation};
use crate::graph::{Cell, EdgeSpec, GridVars};
use crate::optimize::{maximize_with, Certificate, OptimizeError, OptimizeOutcome, Probe};
use crate::sat::{Model, SatBackend, SatError, SolveOutcome};

pub use masyu::{Masyu, MasyuCell, MasyuInstance};
pub use roadrunner::{attacked_positions, Roadrunner, RoadrunnerInstance};
pub use shingoki::{Shingoki, ShingokiCell, ShingokiInstance};
pub use tapa::{findall_layouts, neighbor_ring, Tapa, TapaInstance};

#[derive(Debug, Error)]
pub enum PuzzleError {
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("bad solution: {0}")]
    Solution(String),
    #[error("model does not decode: {0}")]
    Decode(String),
    #[error("unknown puzzle kind `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error(transparent)]
    Sat(#[from] SatError),
}

pub(crate) fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> PuzzleError {
    PuzzleError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// A rule violation found by a verifier. `code` is stable and
/// machine-readable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub code: &'static str,
    pub detail: String,
}

impl Rejection {
    pub fn new(code: &'static str, detail: impl Into<String>) -> Rejection {
        Rejection {
            code,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

/// A closed walk of 1-based `(row, col)` cells; the last cell links back to
/// the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSolution {
    pub cycle: Vec<Cell>,
}

impl LoopSolution {
    pub fn in_cells(&self) -> HashSet<Cell> {
        self.cycle.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoadrunnerSolution {
    /// Indexed `[row][col]`, 0-based.
    pub laser: Vec<Vec<bool>>,
    pub road: Vec<Vec<bool>>,
    pub cycle: Vec<Cell>,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSolution {
    /// Indexed `[row][col]`, 0-based.
    pub black: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Loop(LoopSolution),
    Roadrunner(RoadrunnerSolution),
    Coloring(ColoringSolution),
}

/// What to maximize, if anything.
#[derive(Clone, Debug)]
pub struct Objective {
    pub count: UnaryCount,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug)]
enum Decoder {
    Loop {
        grid: GridVars,
        edges: Vec<EdgeSpec<Cell>>,
    },
    Roadrunner {
        laser: GridVars,
        road: GridVars,
        edges: Vec<EdgeSpec<Cell>>,
    },
    Coloring {
        grid: GridVars,
    },
}

/// A built formula plus what is needed to read a solution back out of a
/// model.
#[derive(Clone, Debug)]
pub struct Encoding {
    pub builder: CnfBuilder,
    pub objective: Option<Objective>,
    decoder: Decoder,
}

impl Encoding {
    pub fn decode(&self, model: &Model) -> Result<Solution, PuzzleError> {
        match &self.decoder {
            Decoder::Loop { grid, edges } => Ok(Solution::Loop(decode_loop(model, grid, edges)?)),
            Decoder::Roadrunner { laser, road, edges } => {
                let lp = decode_loop(model, road, edges)?;
                let k = lp.cycle.len();
                Ok(Solution::Roadrunner(RoadrunnerSolution {
                    laser: laser.values(model),
                    road: road.values(model),
                    cycle: lp.cycle,
                    k,
                }))
            }
            Decoder::Coloring { grid } => Ok(Solution::Coloring(ColoringSolution {
                black: grid.values(model),
            })),
        }
    }
}

/// Follows active edges from the lexicographically first in-cell until the
/// walk closes. Fails if the walk branches, stalls, revisits a cell or misses
/// an in-cell.
pub fn decode_loop<V: Valuation + ?Sized>(
    val: &V,
    grid: &GridVars,
    edges: &[EdgeSpec<Cell>],
) -> Result<LoopSolution, PuzzleError> {
    let ins: Vec<Cell> = grid
        .cells()
        .filter(|&(r, c)| val.value(grid.get(r, c)))
        .collect();
    let Some(&start) = ins.first() else {
        return Err(PuzzleError::Decode("no cell is on the loop".into()));
    };
    let mut succ: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
    for e in edges.iter().filter(|e| val.value(e.lit)) {
        succ.entry(e.from).or_default().push(e.to);
    }
    if ins.len() == 1 {
        if !succ.is_empty() {
            return Err(PuzzleError::Decode(
                "single-cell loop with active edges".into(),
            ));
        }
        return Ok(LoopSolution { cycle: vec![start] });
    }
    let mut cycle = vec![start];
    let mut seen: HashSet<Cell> = HashSet::from([start]);
    let mut cur = start;
    loop {
        let next = match succ.get(&cur).map(Vec::as_slice) {
            Some([next]) => *next,
            _ => {
                return Err(PuzzleError::Decode(format!(
                    "cell {cur:?} needs exactly one successor"
                )))
            }
        };
        if next == start {
            break;
        }
        if !seen.insert(next) {
            return Err(PuzzleError::Decode(format!("cell {next:?} visited twice")));
        }
        cycle.push(next);
        cur = next;
    }
    if cycle.len() != ins.len() {
        return Err(PuzzleError::Decode(format!(
            "loop covers {} of {} in-cells",
            cycle.len(),
            ins.len()
        )));
    }
    Ok(LoopSolution { cycle })
}

/// A puzzle kind: a name, a file extension and a parser.
pub trait Puzzle: Send + Sync {
    fn name(&self) -> &'static str;
    fn extension(&self) -> &'static str;
    fn parse(&self, text: &str) -> Result<Box<dyn PuzzleInstance>, PuzzleError>;
}

/// A parsed board.
pub trait PuzzleInstance: Send + Sync + fmt::Debug {
    fn kind(&self) -> &'static str;
    /// Rows and columns of the board.
    fn dims(&self) -> (usize, usize);
    fn encode(&self) -> Encoding;
    fn verify(&self, sol: &Solution) -> Result<(), Rejection>;
    fn render(&self, sol: &Solution) -> String;
    fn solution_json(&self, sol: &Solution) -> Value;
    /// Reads a solution written by [`PuzzleInstance::solution_json`], checking
    /// its shape against this board.
    fn solution_from_json(&self, v: &Value) -> Result<Solution, PuzzleError>;
}

pub struct PuzzleRegistry {
    kinds: BTreeMap<&'static str, Box<dyn Puzzle>>,
}

impl Default for PuzzleRegistry {
    fn default() -> Self {
        let mut r = PuzzleRegistry {
            kinds: BTreeMap::new(),
        };
        r.register(Box::new(Roadrunner));
        r.register(Box::new(Masyu));
        r.register(Box::new(Shingoki));
        r.register(Box::new(Tapa));
        r
    }
}

impl PuzzleRegistry {
    pub fn register(&mut self, kind: Box<dyn Puzzle>) {
        self.kinds.insert(kind.name(), kind);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.kinds.keys().copied()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Puzzle, PuzzleError> {
        self.kinds
            .get(name)
            .map(|k| k.as_ref())
            .ok_or_else(|| PuzzleError::UnknownKind(name.to_string()))
    }

    /// The kind whose extension matches `path`.
    pub fn for_path(&self, path: &Path) -> Result<&dyn Puzzle, PuzzleError> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        self.kinds
            .values()
            .find(|k| k.extension() == ext)
            .map(|k| k.as_ref())
            .ok_or_else(|| PuzzleError::UnknownKind(format!("extension `{ext}`")))
    }
}

#[derive(Clone, Debug)]
pub enum PuzzleOutcome {
    Solved {
        solution: Solution,
        /// The proven optimum, for optimization puzzles.
        optimum: Option<usize>,
        certificate: Option<Certificate>,
        probes: Vec<Probe>,
    },
    Infeasible,
    Unknown(String),
}

/// Encodes, solves (maximizing if the encoding carries an objective) and
/// decodes. The solution is not verified here.
pub fn solve_instance(
    inst: &dyn PuzzleInstance,
    backend: &dyn SatBackend,
) -> Result<PuzzleOutcome, PuzzleError> {
    let enc = inst.encode();
    solve_encoding(&enc, backend)
}

pub fn solve_encoding(
    enc: &Encoding,
    backend: &dyn SatBackend,
) -> Result<PuzzleOutcome, PuzzleError> {
    let cnf = enc.builder.cnf();
    let Some(obj) = &enc.objective else {
        return match backend.solve(cnf)? {
            SolveOutcome::Sat(m) => Ok(PuzzleOutcome::Solved {
                solution: enc.decode(&m)?,
                optimum: None,
                certificate: None,
                probes: Vec::new(),
            }),
            SolveOutcome::Unsat => Ok(PuzzleOutcome::Infeasible),
            SolveOutcome::Unknown(reason) => Ok(PuzzleOutcome::Unknown(reason)),
        };
    };
    // an empty range still gets one probe at lo, which fails
    let hi = obj.hi.max(obj.lo).min(obj.count.len());
    match maximize_with(cnf, &obj.count, backend, obj.lo, hi)? {
        OptimizeOutcome::Optimal(r) => Ok(PuzzleOutcome::Solved {
            solution: enc.decode(&r.best_model)?,
            optimum: Some(r.best_value),
            certificate: Some(r.certificate),
            probes: r.probes,
        }),
        OptimizeOutcome::Infeasible { .. } => Ok(PuzzleOutcome::Infeasible),
        OptimizeOutcome::Unknown { reason, .. } => Ok(PuzzleOutcome::Unknown(reason)),
    }
}

fn bool_rows(grid: &[Vec<bool>]) -> Value {
    json!(grid
        .iter()
        .map(|row| row.iter().map(|&b| u8::from(b)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn cells_json(cells: &[Cell]) -> Value {
    json!(cells.iter().map(|&(r, c)| [r, c]).collect::<Vec<_>>())
}

fn json_field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, PuzzleError> {
    v.get(key)
        .ok_or_else(|| PuzzleError::Solution(format!("missing field `{key}`")))
}

fn json_usize(v: &Value, key: &str) -> Result<usize, PuzzleError> {
    json_field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| PuzzleError::Solution(format!("`{key}` must be a non-negative integer")))
}

fn json_kind(v: &Value, want: &str) -> Result<(), PuzzleError> {
    match json_field(v, "kind")?.as_str() {
        Some(k) if k == want => Ok(()),
        other => Err(PuzzleError::Solution(format!(
            "kind {other:?}, expected `{want}`"
        ))),
    }
}

fn json_bool_grid(
    v: &Value,
    key: &str,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<bool>>, PuzzleError> {
    let bad = || PuzzleError::Solution(format!("`{key}` must be {rows} rows of {cols} 0/1 values"));
    let outer = json_field(v, key)?.as_array().ok_or_else(bad)?;
    if outer.len() != rows {
        return Err(bad());
    }
    outer
        .iter()
        .map(|row| {
            let row = row.as_array().filter(|r| r.len() == cols).ok_or_else(bad)?;
            row.iter()
                .map(|x| match x.as_u64() {
                    Some(0) => Ok(false),
                    Some(1) => Ok(true),
                    _ => Err(bad()),
                })
                .collect()
        })
        .collect()
}

fn json_cells(v: &Value, key: &str, rows: usize, cols: usize) -> Result<Vec<Cell>, PuzzleError> {
    let bad = || {
        PuzzleError::Solution(format!(
            "`{key}` must be a list of [row, col] pairs inside {rows}x{cols}"
        ))
    };
    json_field(v, key)?
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|p| {
            let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let r = pair[0].as_u64().ok_or_else(bad)? as usize;
            let c = pair[1].as_u64().ok_or_else(bad)? as usize;
            if (1..=rows).contains(&r) && (1..=cols).contains(&c) {
                Ok((r, c))
            } else {
                Err(bad())
            }
        })
        .collect()
}

/// Draws a loop: cells on odd columns of the text, links between them.
fn render_loop(
    rows: usize,
    cols: usize,
    cycle: &[Cell],
    mark: impl Fn(Cell) -> Option<char>,
) -> String {
    let on: HashSet<Cell> = cycle.iter().copied().collect();
    let mut links: HashSet<(Cell, Cell)> = HashSet::new();
    if cycle.len() > 1 {
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            links.insert((a.min(b), a.max(b)));
        }
    }
    let mut out = String::new();
    for r in 1..=rows {
        let mut line = String::new();
        let mut below = String::new();
        for c in 1..=cols {
            let ch = mark((r, c)).unwrap_or(if on.contains(&(r, c)) { '+' } else { '.' });
            line.push(ch);
            if c < cols {
                line.push(if links.contains(&((r, c), (r, c + 1))) {
                    '-'
                } else {
                    ' '
                });
            }
            below.push(if links.contains(&((r, c), (r + 1, c))) {
                '|'
            } else {
                ' '
            });
            if c < cols {
                below.push(' ');
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if r < rows {
            out.push_str(below.trim_end());
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::hcp_grid;
    use crate::sat::InternalSolver;

    #[test]
    fn decode_square() {
        let mut b = CnfBuilder::new();
        let grid = GridVars::new(&mut b, 2, 2, "cell");
        let (edges, _) = hcp_grid(&mut b, &grid);
        for (r, c) in grid.cells() {
            b.add_unit(grid.get(r, c));
        }
        let SolveOutcome::Sat(m) = InternalSolver::new().solve_cnf(b.cnf()).unwrap() else {
            panic!()
        };
        let lp = decode_loop(&m, &grid, &edges).unwrap();
        assert_eq!(lp.cycle.len(), 4);
        assert_eq!(lp.cycle[0], (1, 1));
    }

    #[test]
    fn decode_singleton() {
        let mut b = CnfBuilder::new();
        let grid = GridVars::new(&mut b, 2, 2, "cell");
        let (edges, _) = hcp_grid(&mut b, &grid);
        b.add_unit(grid.get(2, 1));
        for cell in [(1, 1), (1, 2), (2, 2)] {
            b.add_unit(!grid.get(cell.0, cell.1));
        }
        let SolveOutcome::Sat(m) = InternalSolver::new().solve_cnf(b.cnf()).unwrap() else {
            panic!()
        };
        assert_eq!(decode_loop(&m, &grid, &edges).unwrap().cycle, vec![(2, 1)]);
    }

    #[test]
    fn registry_lookup() {
        let r = PuzzleRegistry::default();
        assert_eq!(
            r.names().collect::<Vec<_>>(),
            ["masyu", "roadrunner", "shingoki", "tapa"]
        );
        assert_eq!(r.for_path(Path::new("a/b.tapa")).unwrap().name(), "tapa");
        assert!(r.for_path(Path::new("x.txt")).is_err());
        assert!(r.get("sudoku").is_err());
    }

    #[test]
    fn loop_drawing() {
        let s = render_loop(2, 3, &[(1, 1), (1, 2), (2, 2), (2, 1)], |_| None);
        assert_eq!(s, "+-+ .\n| |\n+-+ .\n");
    }
}
