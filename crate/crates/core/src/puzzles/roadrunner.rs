//! Smarty Road Runner: place lasers so that the unlit white cells form the
//! longest possible single circuit.
//!
//! Positions are `(x, y)` = (column, row), 1-based, as in the instance file.

use serde_json::{json, Value};

use super::geom::{check_cycle, step, DIRS};
use super::{
    bool_rows, cells_json, json_bool_grid, json_cells, json_kind, json_usize, parse_error,
    render_loop, Decoder, Encoding, Objective, Puzzle, PuzzleError, PuzzleInstance, Rejection,
    RoadrunnerSolution, Solution,
};
use crate::cnf::CnfBuilder;
use crate::graph::{hcp_grid, GridVars};

pub struct Roadrunner;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoadrunnerInstance {
    pub max_x: usize,
    pub max_y: usize,
    /// Indexed `[y - 1][x - 1]`.
    pub hill: Vec<Vec<bool>>,
    /// `(x, y, num)`: `num` lasers on the orthogonal neighbours of hill `(x, y)`.
    pub clues: Vec<(usize, usize, u8)>,
}

impl RoadrunnerInstance {
    pub fn is_hill(&self, x: usize, y: usize) -> bool {
        self.hill[y - 1][x - 1]
    }

    fn white_cells(&self) -> usize {
        self.hill.iter().flatten().filter(|&&h| !h).count()
    }

    fn clue_at(&self, x: usize, y: usize) -> Option<u8> {
        self.clues
            .iter()
            .find(|&&(cx, cy, _)| (cx, cy) == (x, y))
            .map(|c| c.2)
    }
}

/// Positions hit by a laser at white cell `(x, y)`: the rays to the left,
/// right, up and down, in that order, each stopping before a hill.
pub fn attacked_positions(inst: &RoadrunnerInstance, x: usize, y: usize) -> Vec<(usize, usize)> {
    assert!(!inst.is_hill(x, y), "({x},{y}) is a hill");
    let mut ps = Vec::new();
    ps.extend(
        (1..x)
            .rev()
            .map(|x1| (x1, y))
            .take_while(|&(x1, y1)| !inst.is_hill(x1, y1)),
    );
    ps.extend(
        (x + 1..=inst.max_x)
            .map(|x1| (x1, y))
            .take_while(|&(x1, y1)| !inst.is_hill(x1, y1)),
    );
    ps.extend(
        (1..y)
            .rev()
            .map(|y1| (x, y1))
            .take_while(|&(x1, y1)| !inst.is_hill(x1, y1)),
    );
    ps.extend(
        (y + 1..=inst.max_y)
            .map(|y1| (x, y1))
            .take_while(|&(x1, y1)| !inst.is_hill(x1, y1)),
    );
    ps
}

impl Puzzle for Roadrunner {
    fn name(&self) -> &'static str {
        "roadrunner"
    }

    fn extension(&self) -> &'static str {
        "roadrunner"
    }

    fn parse(&self, text: &str) -> Result<Box<dyn PuzzleInstance>, PuzzleError> {
        Ok(Box::new(parse(text)?))
    }
}

pub(crate) fn parse(text: &str) -> Result<RoadrunnerInstance, PuzzleError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [mx, my] = dims.as_slice() else {
        return Err(parse_error(hl + 1, 1, "expected `maxX maxY`"));
    };
    let max_x: usize = mx
        .parse()
        .map_err(|_| parse_error(hl + 1, 1, "maxX is not a number"))?;
    let max_y: usize = my
        .parse()
        .map_err(|_| parse_error(hl + 1, 1, "maxY is not a number"))?;
    if max_x == 0 || max_y == 0 {
        return Err(parse_error(hl + 1, 1, "the grid must be at least 1x1"));
    }
    let mut hill = Vec::with_capacity(max_y);
    let mut clues = Vec::new();
    for y in 1..=max_y {
        let (ln, line) = lines.next().ok_or_else(|| {
            parse_error(hl + 2, 1, format!("expected {max_y} rows, found {}", y - 1))
        })?;
        let row: Vec<char> = line.trim_end().chars().collect();
        if row.len() != max_x {
            return Err(parse_error(
                ln + 1,
                1,
                format!("row has {} cells, expected {max_x}", row.len()),
            ));
        }
        let mut hrow = Vec::with_capacity(max_x);
        for (i, &ch) in row.iter().enumerate() {
            match ch {
                '.' => hrow.push(false),
                '#' => hrow.push(true),
                '0'..='4' => {
                    hrow.push(true);
                    clues.push((i + 1, y, ch as u8 - b'0'));
                }
                _ => return Err(parse_error(ln + 1, i + 1, format!("unexpected `{ch}`"))),
            }
        }
        hill.push(hrow);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_error(ln + 1, 1, "trailing data after the grid"));
    }
    Ok(RoadrunnerInstance {
        max_x,
        max_y,
        hill,
        clues,
    })
}

impl RoadrunnerInstance {
    pub fn parse(text: &str) -> Result<RoadrunnerInstance, PuzzleError> {
        parse(text)
    }
}

impl PuzzleInstance for RoadrunnerInstance {
    fn kind(&self) -> &'static str {
        "roadrunner"
    }

    fn dims(&self) -> (usize, usize) {
        (self.max_y, self.max_x)
    }

    fn encode(&self) -> Encoding {
        let mut b = CnfBuilder::new();
        // GridVars is (row, col) = (y, x)
        let laser = GridVars::new(&mut b, self.max_y, self.max_x, "laser");
        let road = GridVars::new(&mut b, self.max_y, self.max_x, "road");
        let l = |x: usize, y: usize| laser.get(y, x);
        let rd = |x: usize, y: usize| road.get(y, x);

        for &(x, y, num) in &self.clues {
            let around: Vec<_> = [(0i64, -1i64), (0, 1), (-1, 0), (1, 0)]
                .iter()
                .filter_map(|&(dx, dy)| {
                    let (x1, y1) = (x as i64 + dx, y as i64 + dy);
                    (x1 >= 1 && y1 >= 1 && x1 as usize <= self.max_x && y1 as usize <= self.max_y)
                        .then(|| l(x1 as usize, y1 as usize))
                })
                .collect();
            if (num as usize) > around.len() {
                b.add_clause(&[]);
            } else if around.is_empty() {
                // num == 0 with no neighbours
            } else {
                let count = b.unary_count(&around);
                b.fix_count(&count, num as usize)
                    .expect("num checked against neighbour count");
            }
        }

        for y in 1..=self.max_y {
            for x in 1..=self.max_x {
                if self.is_hill(x, y) {
                    b.add_unit(!l(x, y));
                    b.add_unit(!rd(x, y));
                    continue;
                }
                let ps = attacked_positions(self, x, y);
                for &(x1, y1) in &ps {
                    b.add_clause(&[!l(x, y), !l(x1, y1)]);
                    b.add_clause(&[!l(x, y), !rd(x1, y1)]);
                }
                // road(x,y) <=> no laser on (x,y) or any attacked position
                let mut covered = vec![rd(x, y), l(x, y)];
                b.add_clause(&[!rd(x, y), !l(x, y)]);
                for &(x1, y1) in &ps {
                    covered.push(l(x1, y1));
                    b.add_clause(&[!rd(x, y), !l(x1, y1)]);
                }
                b.add_clause(&covered);
            }
        }

        let (edges, vars) = hcp_grid(&mut b, &road);
        Encoding {
            builder: b,
            objective: Some(Objective {
                count: vars.count,
                lo: 1,
                hi: self.white_cells(),
            }),
            decoder: Decoder::Roadrunner { laser, road, edges },
        }
    }

    fn verify(&self, sol: &Solution) -> Result<(), Rejection> {
        let Solution::Roadrunner(s) = sol else {
            return Err(Rejection::new(
                "wrong-kind",
                "expected a roadrunner solution",
            ));
        };
        verify(self, s)
    }

    fn render(&self, sol: &Solution) -> String {
        let Solution::Roadrunner(s) = sol else {
            return String::new();
        };
        let mut out = format!("safecircuitlen({}).\n", s.k);
        for y in 1..=self.max_y {
            for x in 1..=self.max_x {
                let ch = if self.is_hill(x, y) {
                    self.clue_at(x, y).map_or('#', |n| (b'0' + n) as char)
                } else if s.laser[y - 1][x - 1] {
                    'L'
                } else if s.road[y - 1][x - 1] {
                    'o'
                } else {
                    '.'
                };
                out.push(ch);
            }
            out.push('\n');
        }
        out.push('\n');
        out.push_str(&render_loop(self.max_y, self.max_x, &s.cycle, |_| None));
        out
    }

    fn solution_json(&self, sol: &Solution) -> Value {
        let Solution::Roadrunner(s) = sol else {
            return Value::Null;
        };
        json!({
            "kind": "roadrunner",
            "maxX": self.max_x,
            "maxY": self.max_y,
            "laser": bool_rows(&s.laser),
            "road": bool_rows(&s.road),
            "cycle": cells_json(&s.cycle),
            "k": s.k,
        })
    }

    fn solution_from_json(&self, v: &Value) -> Result<Solution, PuzzleError> {
        json_kind(v, "roadrunner")?;
        if json_usize(v, "maxX")? != self.max_x || json_usize(v, "maxY")? != self.max_y {
            return Err(PuzzleError::Solution(format!(
                "grid size differs from the instance ({}x{})",
                self.max_x, self.max_y
            )));
        }
        Ok(Solution::Roadrunner(RoadrunnerSolution {
            laser: json_bool_grid(v, "laser", self.max_y, self.max_x)?,
            road: json_bool_grid(v, "road", self.max_y, self.max_x)?,
            cycle: json_cells(v, "cycle", self.max_y, self.max_x)?,
            k: json_usize(v, "k")?,
        }))
    }
}

fn verify(inst: &RoadrunnerInstance, s: &RoadrunnerSolution) -> Result<(), Rejection> {
    let (rows, cols) = (inst.max_y, inst.max_x);
    let shape_ok = |g: &Vec<Vec<bool>>| g.len() == rows && g.iter().all(|r| r.len() == cols);
    if !shape_ok(&s.laser) || !shape_ok(&s.road) {
        return Err(Rejection::new(
            "wrong-size",
            format!("grids must be {rows}x{cols}"),
        ));
    }
    let hill = |r: usize, c: usize| inst.hill[r - 1][c - 1];
    let laser = |r: usize, c: usize| s.laser[r - 1][c - 1];

    let mut lit = vec![vec![false; cols]; rows];
    for r in 1..=rows {
        for c in 1..=cols {
            if hill(r, c) && laser(r, c) {
                return Err(Rejection::new(
                    "laser-on-hill",
                    format!("laser at row {r}, column {c}"),
                ));
            }
            if hill(r, c) && s.road[r - 1][c - 1] {
                return Err(Rejection::new(
                    "road-on-hill",
                    format!("road at row {r}, column {c}"),
                ));
            }
            if !laser(r, c) {
                continue;
            }
            lit[r - 1][c - 1] = true;
            for d in DIRS {
                let mut cur = (r, c);
                while let Some(next) =
                    step(cur, d).filter(|&(r1, c1)| r1 <= rows && c1 <= cols && !hill(r1, c1))
                {
                    if laser(next.0, next.1) {
                        return Err(Rejection::new(
                            "lasers-see-each-other",
                            format!("lasers at {:?} and {next:?} share a clear line", (r, c)),
                        ));
                    }
                    lit[next.0 - 1][next.1 - 1] = true;
                    cur = next;
                }
            }
        }
    }

    for &(x, y, num) in &inst.clues {
        let n = DIRS
            .iter()
            .filter_map(|&d| step((y, x), d))
            .filter(|&(r, c)| r <= rows && c <= cols && laser(r, c))
            .count();
        if n != num as usize {
            return Err(Rejection::new(
                "clue-count",
                format!("hill ({x},{y}) wants {num} lasers around it, found {n}"),
            ));
        }
    }

    for r in 1..=rows {
        for c in 1..=cols {
            let safe = !hill(r, c) && !lit[r - 1][c - 1];
            if safe != s.road[r - 1][c - 1] {
                return Err(Rejection::new(
                    "road-not-safe-set",
                    format!(
                        "row {r}, column {c}: safe={safe}, road={}",
                        s.road[r - 1][c - 1]
                    ),
                ));
            }
        }
    }
    let k = s.road.iter().flatten().filter(|&&b| b).count();
    if k == 0 {
        return Err(Rejection::new(
            "no-safe-cell",
            "the runner needs at least one safe cell",
        ));
    }
    if s.k != k {
        return Err(Rejection::new(
            "wrong-k",
            format!("k = {} but {k} road cells", s.k),
        ));
    }
    check_cycle(rows, cols, &s.cycle, 1)?;
    if s.cycle.len() != k || s.cycle.iter().any(|&(r, c)| !s.road[r - 1][c - 1]) {
        return Err(Rejection::new(
            "cycle-mismatch",
            "the circuit must visit exactly the road cells",
        ));
    }
    Ok(())
}
