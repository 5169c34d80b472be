//! Shingoki: a Masyu-like loop where each circle carries the total length of
//! the two straight lines meeting at it.

use serde_json::{json, Value};

use super::geom::{check_cycle, Links};
use super::masyu::{loop_from_json, loop_skeleton, MIN_LOOP};
use super::paths::constrain_paths;
use super::{
    cells_json, json_kind, parse_error, render_loop, Decoder, Encoding, Puzzle, PuzzleError,
    PuzzleInstance, Rejection, Solution,
};
use crate::graph::Cell;

pub struct Shingoki;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShingokiCell {
    Empty,
    White(usize),
    Black(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShingokiInstance {
    pub n: usize,
    /// Indexed `[row - 1][col - 1]`.
    pub board: Vec<Vec<ShingokiCell>>,
}

impl ShingokiInstance {
    pub fn at(&self, (r, c): Cell) -> ShingokiCell {
        self.board[r - 1][c - 1]
    }
}

impl Puzzle for Shingoki {
    fn name(&self) -> &'static str {
        "shingoki"
    }

    fn extension(&self) -> &'static str {
        "shingoki"
    }

    fn parse(&self, text: &str) -> Result<Box<dyn PuzzleInstance>, PuzzleError> {
        Ok(Box::new(parse(text)?))
    }
}

/// Reads `n` followed by `n` rows of `n` tokens: `.`, `w<clue>` or `b<clue>`.
pub(crate) fn parse(text: &str) -> Result<ShingokiInstance, PuzzleError> {
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
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            let err = |msg: String| parse_error(ln + 1, col, msg);
            let head = tok.chars().next().map_or(0, char::len_utf8);
            let cell = match tok.split_at(head) {
                (".", "") => ShingokiCell::Empty,
                (kind @ ("w" | "b"), digits) => {
                    let clue: usize = digits
                        .parse()
                        .map_err(|_| err(format!("bad clue in `{tok}`")))?;
                    if clue < 2 {
                        return Err(err(format!("clue {clue} is below 2")));
                    }
                    if kind == "w" {
                        ShingokiCell::White(clue)
                    } else {
                        ShingokiCell::Black(clue)
                    }
                }
                _ => return Err(err(format!("unexpected `{tok}`"))),
            };
            row.push(cell);
        }
        if row.len() != n {
            return Err(parse_error(
                ln + 1,
                1,
                format!("row has {} cells, expected {n}", row.len()),
            ));
        }
        board.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_error(ln + 1, 1, "trailing data after the grid"));
    }
    Ok(ShingokiInstance { n, board })
}

/// Whitespace-separated tokens with their 1-based column.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.char_indices()
        .filter(|&(i, ch)| {
            !ch.is_whitespace() && (i == 0 || line[..i].ends_with(char::is_whitespace))
        })
        .map(move |(i, _)| {
            let rest = &line[i..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            (i + 1, &rest[..end])
        })
}

fn white_shapes(r: i64, c: i64, clue: i64) -> Vec<Vec<(i64, i64)>> {
    let mut ps = Vec::new();
    for d1 in 1..clue {
        let d2 = clue - d1;
        let v: Vec<_> = (r - d1..=r + d2).map(|r1| (r1, c)).collect();
        let h: Vec<_> = (c - d1..=c + d2).map(|c1| (r, c1)).collect();
        for (a, z) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
            let mut p = vec![(r - d1, c + a)];
            p.extend(&v);
            p.push((r + d2, c + z));
            ps.push(p);
        }
        for (a, z) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
            let mut p = vec![(r + a, c - d1)];
            p.extend(&h);
            p.push((r + z, c + d2));
            ps.push(p);
        }
    }
    ps
}

/// Horizontal arm of `d1` steps and vertical arm of `d2` steps meeting at
/// `(r, c)`, each ending in a turn.
fn black_shapes(r: i64, c: i64, clue: i64) -> Vec<Vec<(i64, i64)>> {
    let mut ps = Vec::new();
    for d1 in 1..clue {
        let d2 = clue - d1;
        for h in [-1, 1] {
            for v in [-1, 1] {
                for wh in [-1, 1] {
                    for wv in [-1, 1] {
                        let mut p = vec![(r + wh, c + h * d1)];
                        p.extend((0..=d1).rev().map(|k| (r, c + h * k)));
                        p.extend((1..=d2).map(|k| (r + v * k, c)));
                        p.push((r + v * d2, c + wv));
                        ps.push(p);
                    }
                }
            }
        }
    }
    ps
}

impl ShingokiInstance {
    pub fn parse(text: &str) -> Result<ShingokiInstance, PuzzleError> {
        parse(text)
    }
}

impl PuzzleInstance for ShingokiInstance {
    fn kind(&self) -> &'static str {
        "shingoki"
    }

    fn dims(&self) -> (usize, usize) {
        (self.n, self.n)
    }

    fn encode(&self) -> Encoding {
        let (mut b, grid, edges, emap) =
            loop_skeleton(self.n, |cell| self.at(cell) != ShingokiCell::Empty);
        for (r, c) in grid.cells() {
            let (ri, ci) = (r as i64, c as i64);
            match self.at((r, c)) {
                ShingokiCell::White(k) => {
                    constrain_paths(&mut b, &emap, self.n, &white_shapes(ri, ci, k as i64))
                }
                ShingokiCell::Black(k) => {
                    constrain_paths(&mut b, &emap, self.n, &black_shapes(ri, ci, k as i64))
                }
                ShingokiCell::Empty => {}
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
                let (clue, white) = match self.at(cell) {
                    ShingokiCell::Empty => continue,
                    ShingokiCell::White(k) => (k, true),
                    ShingokiCell::Black(k) => (k, false),
                };
                let Some([d1, d2]) = links.dirs(cell) else {
                    return Err(Rejection::new(
                        "circle-missed",
                        format!("the loop skips circle {cell:?}"),
                    ));
                };
                if white != links.goes_straight(cell) {
                    let (code, what) = if white {
                        ("white-not-straight", "turns on")
                    } else {
                        ("black-not-turned", "goes straight through")
                    };
                    return Err(Rejection::new(code, format!("the loop {what} {cell:?}")));
                }
                let len = links.run_length(cell, d1) + links.run_length(cell, d2);
                if len != clue {
                    return Err(Rejection::new(
                        if white {
                            "white-length"
                        } else {
                            "black-length"
                        },
                        format!("lines at {cell:?} total {len}, clue is {clue}"),
                    ));
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
            ShingokiCell::White(_) => Some('W'),
            ShingokiCell::Black(_) => Some('B'),
            ShingokiCell::Empty => None,
        })
    }

    fn solution_json(&self, sol: &Solution) -> Value {
        let Solution::Loop(s) = sol else {
            return Value::Null;
        };
        json!({"kind": "shingoki", "n": self.n, "cycle": cells_json(&s.cycle), "k": s.cycle.len()})
    }

    fn solution_from_json(&self, v: &Value) -> Result<Solution, PuzzleError> {
        json_kind(v, "shingoki")?;
        loop_from_json(v, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_path(p: &[(i64, i64)]) -> bool {
        p.windows(2)
            .all(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() == 1)
    }

    #[test]
    fn shape_counts() {
        // clue 2: one split, 8 white shapes and 16 black ones
        assert_eq!(white_shapes(4, 4, 2).len(), 8);
        assert_eq!(black_shapes(4, 4, 2).len(), 16);
        assert_eq!(black_shapes(4, 4, 4).len(), 48);
        for p in white_shapes(4, 4, 3).iter().chain(&black_shapes(4, 4, 3)) {
            assert!(is_path(p), "{p:?}");
            assert_eq!(p.len(), 3 + 3);
        }
    }

    #[test]
    fn black_arms_three_and_one() {
        let shapes = black_shapes(5, 5, 4);
        // left arm of 3, down arm of 1
        assert!(shapes.contains(&vec![
            (4, 2),
            (5, 2),
            (5, 3),
            (5, 4),
            (5, 5),
            (6, 5),
            (6, 6)
        ]));
    }

    #[test]
    fn parse_tokens() {
        let inst = parse("2\nw2  .\n. b13\n").unwrap();
        assert_eq!(inst.at((1, 1)), ShingokiCell::White(2));
        assert_eq!(inst.at((2, 2)), ShingokiCell::Black(13));
        assert!(matches!(
            parse("2\nw1 .\n. .\n"),
            Err(PuzzleError::Parse {
                line: 2,
                col: 1,
                ..
            })
        ));
        assert!(matches!(
            parse("2\n. x2\n. .\n"),
            Err(PuzzleError::Parse {
                line: 2,
                col: 3,
                ..
            })
        ));
        assert!(parse("2\n. .\n.\n").is_err());
    }
}
