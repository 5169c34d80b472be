//! Board geometry used by the verifiers.

use std::collections::{HashMap, HashSet};

use super::Rejection;
use crate::graph::Cell;

pub(crate) type Dir = (i64, i64);

pub(crate) const DIRS: [Dir; 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

pub(crate) fn step((r, c): Cell, (dr, dc): Dir) -> Option<Cell> {
    let r = r as i64 + dr;
    let c = c as i64 + dc;
    (r >= 1 && c >= 1).then_some((r as usize, c as usize))
}

pub(crate) fn adjacent(a: Cell, b: Cell) -> bool {
    a.0.abs_diff(b.0) + a.1.abs_diff(b.1) == 1
}

/// Checks that `cycle` is a closed walk of distinct, orthogonally adjacent
/// cells on the board with at least `min_len` cells.
pub(crate) fn check_cycle(
    rows: usize,
    cols: usize,
    cycle: &[Cell],
    min_len: usize,
) -> Result<(), Rejection> {
    if cycle.is_empty() {
        return Err(Rejection::new("empty-loop", "the loop has no cells"));
    }
    if cycle.len() < min_len {
        return Err(Rejection::new(
            "loop-too-short",
            format!("{} cells, at least {min_len} needed", cycle.len()),
        ));
    }
    let mut seen = HashSet::new();
    for &cell in cycle {
        if !(1..=rows).contains(&cell.0) || !(1..=cols).contains(&cell.1) {
            return Err(Rejection::new(
                "off-board",
                format!("{cell:?} is outside the board"),
            ));
        }
        if !seen.insert(cell) {
            return Err(Rejection::new(
                "repeated-cell",
                format!("{cell:?} is visited twice"),
            ));
        }
    }
    if cycle.len() > 1 {
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            if !adjacent(a, b) {
                return Err(Rejection::new(
                    "not-adjacent",
                    format!("{a:?} -> {b:?} is not a unit step"),
                ));
            }
        }
    }
    Ok(())
}

/// The two loop neighbours of every cell on a checked cycle of length >= 3.
pub(crate) struct Links(HashMap<Cell, [Cell; 2]>);

impl Links {
    pub(crate) fn new(cycle: &[Cell]) -> Links {
        let n = cycle.len();
        Links(
            (0..n)
                .map(|i| (cycle[i], [cycle[(i + n - 1) % n], cycle[(i + 1) % n]]))
                .collect(),
        )
    }

    pub(crate) fn get(&self, cell: Cell) -> Option<[Cell; 2]> {
        self.0.get(&cell).copied()
    }

    pub(crate) fn linked(&self, a: Cell, b: Cell) -> bool {
        self.get(a).is_some_and(|l| l.contains(&b))
    }

    /// Directions in which the loop leaves `cell`.
    pub(crate) fn dirs(&self, cell: Cell) -> Option<[Dir; 2]> {
        let [p, q] = self.get(cell)?;
        Some([dir(cell, p), dir(cell, q)])
    }

    pub(crate) fn goes_straight(&self, cell: Cell) -> bool {
        self.dirs(cell)
            .is_some_and(|[a, b]| a.0 == -b.0 && a.1 == -b.1)
    }

    /// Number of unit steps the loop travels from `cell` in direction `d`
    /// before it turns.
    pub(crate) fn run_length(&self, cell: Cell, d: Dir) -> usize {
        let mut len = 0;
        let mut cur = cell;
        while let Some(next) = step(cur, d).filter(|&n| self.linked(cur, n)) {
            len += 1;
            cur = next;
            if !self.goes_straight(cur) {
                break;
            }
        }
        len
    }
}

pub(crate) fn dir(from: Cell, to: Cell) -> Dir {
    (to.0 as i64 - from.0 as i64, to.1 as i64 - from.1 as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_checks() {
        let sq = [(1, 1), (1, 2), (2, 2), (2, 1)];
        assert!(check_cycle(2, 2, &sq, 4).is_ok());
        assert_eq!(
            check_cycle(2, 2, &sq[..3], 1).unwrap_err().code,
            "not-adjacent"
        );
        assert_eq!(check_cycle(1, 2, &sq, 1).unwrap_err().code, "off-board");
        assert_eq!(check_cycle(2, 2, &[], 1).unwrap_err().code, "empty-loop");
        assert_eq!(
            check_cycle(2, 2, &[(1, 1), (1, 2)], 4).unwrap_err().code,
            "loop-too-short"
        );
    }

    #[test]
    fn runs_on_a_rectangle() {
        // 2x4 ring
        let cyc = [
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 4),
            (2, 3),
            (2, 2),
            (2, 1),
        ];
        let links = Links::new(&cyc);
        assert!(links.goes_straight((1, 2)));
        assert!(!links.goes_straight((1, 1)));
        assert_eq!(links.run_length((1, 2), (0, 1)), 2);
        assert_eq!(links.run_length((1, 2), (0, -1)), 1);
        assert_eq!(links.run_length((1, 1), (1, 0)), 1);
        assert_eq!(links.run_length((1, 1), (-1, 0)), 0);
    }
}
