//! Tapa: shade cells so the shaded ones form one orthogonally connected
//! region without 2x2 blocks, and each clue lists the block sizes in its
//! eight-cell ring.

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};

use super::shingoki::tokens;
use super::{
    bool_rows, json_bool_grid, json_kind, json_usize, parse_error, ColoringSolution, Decoder,
    Encoding, Puzzle, PuzzleError, PuzzleInstance, Rejection, Solution,
};
use crate::cnf::CnfBuilder;
use crate::graph::{scc_grid, Cell, GridVars};

pub struct Tapa;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapaInstance {
    pub n: usize,
    /// Indexed `[row - 1][col - 1]`; `Some` on clue cells.
    pub clues: Vec<Vec<Option<Vec<u8>>>>,
}

impl TapaInstance {
    pub fn clue(&self, (r, c): Cell) -> Option<&[u8]> {
        self.clues[r - 1][c - 1].as_deref()
    }
}

impl Puzzle for Tapa {
    fn name(&self) -> &'static str {
        "tapa"
    }

    fn extension(&self) -> &'static str {
        "tapa"
    }

    fn parse(&self, text: &str) -> Result<Box<dyn PuzzleInstance>, PuzzleError> {
        Ok(Box::new(parse(text)?))
    }
}

/// Reads `n` followed by `n` rows of `n` tokens: `.` or a string of clue
/// digits.
pub(crate) fn parse(text: &str) -> Result<TapaInstance, PuzzleError> {
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
    let mut clues = Vec::with_capacity(n);
    for r in 1..=n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(hl + 2, 1, format!("expected {n} rows, found {}", r - 1)))?;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            let err = |msg: String| parse_error(ln + 1, col, msg);
            if tok == "." {
                row.push(None);
                continue;
            }
            let digits: Vec<u8> = tok
                .chars()
                .map(|ch| match ch {
                    '0'..='8' => Ok(ch as u8 - b'0'),
                    _ => Err(err(format!("unexpected `{ch}` in clue `{tok}`"))),
                })
                .collect::<Result<_, _>>()?;
            if digits.len() > 4 {
                return Err(err(format!("clue `{tok}` has more than 4 numbers")));
            }
            if digits.len() > 1 && digits.contains(&0) {
                return Err(err(format!("0 must be the only number in `{tok}`")));
            }
            row.push(Some(digits));
        }
        if row.len() != n {
            return Err(parse_error(
                ln + 1,
                1,
                format!("row has {} cells, expected {n}", row.len()),
            ));
        }
        clues.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_error(ln + 1, 1, "trailing data after the grid"));
    }
    Ok(TapaInstance { n, clues })
}

const RING: [(i64, i64); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
];

/// The neighbours of `(r, c)` on an `n x n` board, clockwise from the upper
/// left, and whether the ring is complete (and so circular). A truncated ring
/// starts just after the off-board stretch, so it reads as one contiguous arc.
pub fn neighbor_ring(n: usize, r: usize, c: usize) -> (Vec<Cell>, bool) {
    let on: Vec<Option<Cell>> = RING
        .iter()
        .map(|&(dr, dc)| {
            let (r1, c1) = (r as i64 + dr, c as i64 + dc);
            let inside = (1..=n as i64).contains(&r1) && (1..=n as i64).contains(&c1);
            inside.then_some((r1 as usize, c1 as usize))
        })
        .collect();
    if on.iter().all(Option::is_some) {
        return (on.into_iter().flatten().collect(), true);
    }
    let first = (0..8)
        .find(|&i| on[i].is_some() && on[(i + 7) % 8].is_none())
        .unwrap_or(0);
    ((0..8).filter_map(|k| on[(first + k) % 8]).collect(), false)
}

/// Every 0/1 pattern of length `len` whose runs of ones have exactly the
/// sizes in `clues` (in any order), separated by at least one zero. With
/// `circular`, the last and first positions are adjacent. `[0]` means no
/// ones at all.
pub fn findall_layouts(clues: &[u8], len: usize, circular: bool) -> Vec<Vec<u8>> {
    if clues.iter().all(|&x| x == 0) {
        return vec![vec![0; len]];
    }
    let mut orders = BTreeSet::new();
    permutations(clues.to_vec(), 0, &mut orders);
    let mut out = BTreeSet::new();
    for order in orders {
        let mut layout = vec![0u8; len];
        place(&order, 0, 0, circular, &mut layout, &mut out);
    }
    out.into_iter().collect()
}

fn permutations(mut v: Vec<u8>, k: usize, out: &mut BTreeSet<Vec<u8>>) {
    if k == v.len() {
        out.insert(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v.clone(), k + 1, out);
        v.swap(k, i);
    }
}

fn place(
    blocks: &[u8],
    i: usize,
    from: usize,
    circular: bool,
    layout: &mut Vec<u8>,
    out: &mut BTreeSet<Vec<u8>>,
) {
    let len = layout.len();
    if i == blocks.len() {
        if circular {
            // the pattern was built with its first block at 0; emit all rotations
            for s in 0..len {
                let mut rot = vec![0u8; len];
                for (j, &x) in layout.iter().enumerate() {
                    rot[(j + s) % len] = x;
                }
                out.insert(rot);
            }
        } else {
            out.insert(layout.clone());
        }
        return;
    }
    let size = blocks[i] as usize;
    // circular patterns keep a zero at the end to separate the last block
    // from the first
    let end = if circular && blocks.len() > 1 {
        len - 1
    } else {
        len
    };
    let starts: Vec<usize> = if circular && i == 0 {
        vec![0]
    } else {
        (from..=end.saturating_sub(size)).collect()
    };
    for p in starts {
        if p + size > end {
            continue;
        }
        layout[p..p + size].fill(1);
        place(blocks, i + 1, p + size + 1, circular, layout, out);
        layout[p..p + size].fill(0);
    }
}

impl TapaInstance {
    pub fn parse(text: &str) -> Result<TapaInstance, PuzzleError> {
        parse(text)
    }
}

impl PuzzleInstance for TapaInstance {
    fn kind(&self) -> &'static str {
        "tapa"
    }

    fn dims(&self) -> (usize, usize) {
        (self.n, self.n)
    }

    fn encode(&self) -> Encoding {
        let mut b = CnfBuilder::new();
        let grid = GridVars::new(&mut b, self.n, self.n, "black");
        scc_grid(&mut b, &grid);
        for r in 1..self.n {
            for c in 1..self.n {
                b.add_clause(&[
                    !grid.get(r, c),
                    !grid.get(r, c + 1),
                    !grid.get(r + 1, c),
                    !grid.get(r + 1, c + 1),
                ]);
            }
        }
        for (r, c) in grid.cells() {
            let Some(clues) = self.clue((r, c)) else {
                continue;
            };
            b.add_unit(!grid.get(r, c));
            let (ring, circular) = neighbor_ring(self.n, r, c);
            let mut options = Vec::new();
            for layout in findall_layouts(clues, ring.len(), circular) {
                let lits: Vec<_> = ring
                    .iter()
                    .zip(&layout)
                    .map(|(&(r1, c1), &x)| {
                        if x == 1 {
                            grid.get(r1, c1)
                        } else {
                            !grid.get(r1, c1)
                        }
                    })
                    .collect();
                options.push(b.gate_and(&lits));
            }
            b.add_clause(&options);
        }
        Encoding {
            builder: b,
            objective: None,
            decoder: Decoder::Coloring { grid },
        }
    }

    fn verify(&self, sol: &Solution) -> Result<(), Rejection> {
        let Solution::Coloring(s) = sol else {
            return Err(Rejection::new("wrong-kind", "expected a coloring solution"));
        };
        verify(self, s)
    }

    fn render(&self, sol: &Solution) -> String {
        let Solution::Coloring(s) = sol else {
            return String::new();
        };
        let cells: Vec<Vec<String>> = (1..=self.n)
            .map(|r| {
                (1..=self.n)
                    .map(|c| match self.clue((r, c)) {
                        Some(cl) => cl.iter().map(|d| d.to_string()).collect(),
                        None if s.black[r - 1][c - 1] => "#".to_string(),
                        None => ".".to_string(),
                    })
                    .collect()
            })
            .collect();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().map(|t| format!("{t:>w$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    fn solution_json(&self, sol: &Solution) -> Value {
        let Solution::Coloring(s) = sol else {
            return Value::Null;
        };
        json!({"kind": "tapa", "n": self.n, "black": bool_rows(&s.black)})
    }

    fn solution_from_json(&self, v: &Value) -> Result<Solution, PuzzleError> {
        json_kind(v, "tapa")?;
        if json_usize(v, "n")? != self.n {
            return Err(PuzzleError::Solution(format!(
                "grid size differs from the instance ({})",
                self.n
            )));
        }
        Ok(Solution::Coloring(ColoringSolution {
            black: json_bool_grid(v, "black", self.n, self.n)?,
        }))
    }
}

fn verify(inst: &TapaInstance, s: &ColoringSolution) -> Result<(), Rejection> {
    let n = inst.n;
    if s.black.len() != n || s.black.iter().any(|row| row.len() != n) {
        return Err(Rejection::new(
            "wrong-size",
            format!("grid must be {n}x{n}"),
        ));
    }
    let black = |r: i64, c: i64| {
        r >= 1
            && c >= 1
            && r <= n as i64
            && c <= n as i64
            && s.black[r as usize - 1][c as usize - 1]
    };

    for r in 1..n as i64 {
        for c in 1..n as i64 {
            if black(r, c) && black(r, c + 1) && black(r + 1, c) && black(r + 1, c + 1) {
                return Err(Rejection::new(
                    "black-2x2",
                    format!("2x2 block at row {r}, column {c}"),
                ));
            }
        }
    }

    let shaded: Vec<Cell> = (1..=n)
        .flat_map(|r| (1..=n).map(move |c| (r, c)))
        .filter(|&(r, c)| s.black[r - 1][c - 1])
        .collect();
    if let Some(&first) = shaded.first() {
        let mut seen = vec![vec![false; n + 2]; n + 2];
        let mut queue = VecDeque::from([first]);
        seen[first.0][first.1] = true;
        let mut reached = 1;
        while let Some((r, c)) = queue.pop_front() {
            for (r1, c1) in [(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)] {
                if black(r1 as i64, c1 as i64) && !seen[r1][c1] {
                    seen[r1][c1] = true;
                    reached += 1;
                    queue.push_back((r1, c1));
                }
            }
        }
        if reached != shaded.len() {
            return Err(Rejection::new(
                "black-disconnected",
                format!(
                    "{} of {} shaded cells reachable from {first:?}",
                    reached,
                    shaded.len()
                ),
            ));
        }
    }

    for r in 1..=n {
        for c in 1..=n {
            let Some(clues) = inst.clue((r, c)) else {
                continue;
            };
            if s.black[r - 1][c - 1] {
                return Err(Rejection::new(
                    "clue-cell-black",
                    format!("clue cell ({r},{c}) is shaded"),
                ));
            }
            // off-board cells count as unshaded, so the ring is always circular
            let ring: Vec<bool> = RING
                .iter()
                .map(|&(dr, dc)| black(r as i64 + dr, c as i64 + dc))
                .collect();
            let mut runs = circular_runs(&ring);
            runs.sort_unstable();
            let mut want: Vec<usize> = clues
                .iter()
                .map(|&x| x as usize)
                .filter(|&x| x > 0)
                .collect();
            want.sort_unstable();
            if runs != want {
                return Err(Rejection::new(
                    "clue-mismatch",
                    format!("clue {clues:?} at ({r},{c}) but blocks {runs:?}"),
                ));
            }
        }
    }
    Ok(())
}

fn circular_runs(ring: &[bool]) -> Vec<usize> {
    let n = ring.len();
    let Some(gap) = ring.iter().position(|&b| !b) else {
        return vec![n];
    };
    let mut runs = Vec::new();
    let mut cur = 0;
    for k in 1..=n {
        if ring[(gap + k) % n] {
            cur += 1;
        } else if cur > 0 {
            runs.push(cur);
            cur = 0;
        }
    }
    runs
}
