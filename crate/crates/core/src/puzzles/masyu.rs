//! Masyu: one loop through every circle. White circles are passed straight
//! with a turn just before or after; black circles are turned on with two
//! straight cells on both sides.

use serde_json::{json, Value};

use super::geom::{check_cycle, Links};
use super::paths::{constrain_paths, EdgeMap};
use super::{
    cells_json, json_cells, json_kind, json_usize, parse_error, render_loop, Decoder, Encoding,
    LoopSolution, Puzzle, PuzzleError, PuzzleInstance, Rejection, Solution,
};
use crate::cnf::CnfBuilder;
use crate::graph::{hcp_grid_upto, Cell, GridVars};

/// Shortest closed loop on a grid.
pub(crate) const MIN_LOOP: usize = 4;

pub struct Masyu;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasyuCell {
    Empty,
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasyuInstance {
    pub n: usize,
    /// Indexed `[row - 1][col - 1]`.
    pub board: Vec<Vec<MasyuCell>>,
}

impl MasyuInstance {
    pub fn at(&self, (r, c): Cell) -> MasyuCell {
        self.board[r - 1][c - 1]
    }
}

impl Puzzle for Masyu {
    fn name(&self) -> &'static str {
        "masyu"
    }

    fn extension(&self) -> &'static str {
        "masyu"
    }

    fn parse(&self, text: &str) -> Result<Box<dyn PuzzleInstance>, PuzzleError> {
        Ok(Box::new(parse(text)?))
    }
}

/// Reads `n` followed by `n` rows of `n` characters, `.`/`w`/`b`.
pub(crate) fn parse(text: &str) -> Result<MasyuInstance, PuzzleError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_error(hl + 1, 1, "expected the grid size"))?;
    if n == 0 {
        return Err(parse_error(hl + 1, 1, "the grid must be at least 1x1"));
    }
    let mut board = Vec::with_capacity(n);
    for r in 1..=n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(hl + 2, 1, format!("expected {n} rows, found {}", r - 1)))?;
        let chars: Vec<char> = line.trim_end().chars().collect();
        if chars.len() != n {
            return Err(parse_error(
                ln + 1,
                1,
                format!("row has {} cells, expected {n}", chars.len()),
            ));
        }
        let row = chars
            .iter()
            .enumerate()
            .map(|(i, &ch)| match ch {
                '.' => Ok(MasyuCell::Empty),
                'w' => Ok(MasyuCell::White),
                'b' => Ok(MasyuCell::Black),
                _ => Err(parse_error(ln + 1, i + 1, format!("unexpected `{ch}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        board.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_error(ln + 1, 1, "trailing data after the grid"));
    }
    Ok(MasyuInstance { n, board })
}

fn white_shapes(r: i64, c: i64) -> Vec<Vec<(i64, i64)>> {
    vec![
        vec![(r, c - 1), (r, c), (r, c + 1), (r - 1, c + 1)],
        vec![(r, c - 1), (r, c), (r, c + 1), (r + 1, c + 1)],
        vec![(r - 1, c - 1), (r, c - 1), (r, c), (r, c + 1)],
        vec![(r + 1, c - 1), (r, c - 1), (r, c), (r, c + 1)],
        vec![(r - 1, c - 1), (r - 1, c), (r, c), (r + 1, c)],
        vec![(r - 1, c + 1), (r - 1, c), (r, c), (r + 1, c)],
        vec![(r - 1, c), (r, c), (r + 1, c), (r + 1, c - 1)],
        vec![(r - 1, c), (r, c), (r + 1, c), (r + 1, c + 1)],
    ]
}

fn black_shapes(r: i64, c: i64) -> Vec<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    for dc in [-1, 1] {
        for dr in [-1, 1] {
            out.push(vec![
                (r, c + 2 * dc),
                (r, c + dc),
                (r, c),
                (r + dr, c),
                (r + 2 * dr, c),
            ]);
        }
    }
    out
}

/// Loop-puzzle skeleton: cell literals (forced where `must`), the grid
/// cycle of at least [`MIN_LOOP`] cells and its edge map.
pub(crate) fn loop_skeleton(
    n: usize,
    must: impl Fn(Cell) -> bool,
) -> (
    CnfBuilder,
    GridVars,
    Vec<crate::graph::EdgeSpec<Cell>>,
    EdgeMap,
) {
    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, n, n, "cell");
    for cell in grid.cells() {
        if must(cell) {
            b.add_unit(grid.get(cell.0, cell.1));
        }
    }
    let (edges, vars) = hcp_grid_upto(&mut b, &grid, MIN_LOOP + 3);
    if b.bound_ge(&vars.count, MIN_LOOP).is_err() {
        b.add_clause(&[]);
    }
    let emap = EdgeMap::new(&mut b, &grid, &edges);
    // a ring around a 2x2, 2x3 or 3x2 block is a complete loop, so it can
    // only be present when the loop is exactly that short
    for (h, w) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let len = 2 * (h + w) - 4;
        if len >= vars.count.inputs() {
            continue;
        }
        for r in 1..=n + 1 - h {
            for c in 1..=n + 1 - w {
                let mut ring: Vec<Cell> = (0..w).map(|k| (r, c + k)).collect();
                ring.extend((1..h).map(|k| (r + k, c + w - 1)));
                ring.extend((0..w - 1).rev().map(|k| (r + h - 1, c + k)));
                ring.extend((1..h - 1).rev().map(|k| (r + k, c)));
                let mut clause: Vec<_> = (0..ring.len())
                    .map(|i| !emap.link(ring[i], ring[(i + 1) % ring.len()]))
                    .collect();
                clause.push(!vars.count.at_least(len + 1));
                b.add_clause(&clause);
            }
        }
    }
    (b, grid, edges, emap)
}

impl MasyuInstance {
    pub fn parse(text: &str) -> Result<MasyuInstance, PuzzleError> {
        parse(text)
    }
}

impl PuzzleInstance for MasyuInstance {
    fn kind(&self) -> &'static str {
        "masyu"
    }

    fn dims(&self) -> (usize, usize) {
        (self.n, self.n)
    }

    fn encode(&self) -> Encoding {
        let (mut b, grid, edges, emap) =
            loop_skeleton(self.n, |cell| self.at(cell) != MasyuCell::Empty);
        for (r, c) in grid.cells() {
            let (ri, ci) = (r as i64, c as i64);
            match self.at((r, c)) {
                MasyuCell::White => constrain_paths(&mut b, &emap, self.n, &white_shapes(ri, ci)),
                MasyuCell::Black => constrain_paths(&mut b, &emap, self.n, &black_shapes(ri, ci)),
                MasyuCell::Empty => {}
            }
        }
        Encoding {
            builder: b,
            objective: None,
            decoder: Decoder::Loop { grid, edges },
        }
    }

    fn verify(&self, sol: &Solution) -> Result<(), Rejection> {
        let Solution::Loop(s) = sol else {
            return Err(Rejection::new("wrong-kind", "expected a loop solution"));
        };
        check_cycle(self.n, self.n, &s.cycle, MIN_LOOP)?;
        let links = Links::new(&s.cycle);
        for r in 1..=self.n {
            for c in 1..=self.n {
                let cell = (r, c);
                let kind = self.at(cell);
                if kind == MasyuCell::Empty {
                    continue;
                }
                let Some([p, q]) = links.get(cell) else {
                    return Err(Rejection::new(
                        "circle-missed",
                        format!("the loop skips circle {cell:?}"),
                    ));
                };
                match kind {
                    MasyuCell::White => {
                        if !links.goes_straight(cell) {
                            return Err(Rejection::new(
                                "white-not-straight",
                                format!("loop turns on {cell:?}"),
                            ));
                        }
                        if links.goes_straight(p) && links.goes_straight(q) {
                            return Err(Rejection::new(
                                "white-no-turn",
                                format!("no turn next to white {cell:?}"),
                            ));
                        }
                    }
                    MasyuCell::Black => {
                        if links.goes_straight(cell) {
                            return Err(Rejection::new(
                                "black-not-turned",
                                format!("loop goes straight on {cell:?}"),
                            ));
                        }
                        if !links.goes_straight(p) || !links.goes_straight(q) {
                            return Err(Rejection::new(
                                "black-arm-bends",
                                format!("loop bends next to black {cell:?}"),
                            ));
                        }
                    }
                    MasyuCell::Empty => unreachable!(),
                }
            }
        }
        Ok(())
    }

    fn render(&self, sol: &Solution) -> String {
        let Solution::Loop(s) = sol else {
            return String::new();
        };
        render_loop(self.n, self.n, &s.cycle, |cell| match self.at(cell) {
            MasyuCell::White => Some('W'),
            MasyuCell::Black => Some('B'),
            MasyuCell::Empty => None,
        })
    }

    fn solution_json(&self, sol: &Solution) -> Value {
        let Solution::Loop(s) = sol else {
            return Value::Null;
        };
        json!({"kind": "masyu", "n": self.n, "cycle": cells_json(&s.cycle), "k": s.cycle.len()})
    }

    fn solution_from_json(&self, v: &Value) -> Result<Solution, PuzzleError> {
        json_kind(v, "masyu")?;
        loop_from_json(v, self.n)
    }
}

pub(crate) fn loop_from_json(v: &Value, n: usize) -> Result<Solution, PuzzleError> {
    if json_usize(v, "n")? != n {
        return Err(PuzzleError::Solution(format!(
            "grid size differs from the instance ({n})"
        )));
    }
    let cycle = json_cells(v, "cycle", n, n)?;
    if v.get("k").is_some() && json_usize(v, "k")? != cycle.len() {
        return Err(PuzzleError::Solution(
            "`k` differs from the cycle length".into(),
        ));
    }
    Ok(Solution::Loop(LoopSolution { cycle }))
}
