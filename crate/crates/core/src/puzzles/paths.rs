//! Path-shape constraints shared by the loop puzzles.

use std::collections::HashMap;

use crate::cnf::{CnfBuilder, Lit};
use crate::graph::{Cell, EdgeSpec, GridVars};

/// Undirected links between adjacent cells, each the disjunction of the two
/// directed edge literals, keyed by the ordered cell pair.
pub(crate) struct EdgeMap(HashMap<(Cell, Cell), Lit>);

impl EdgeMap {
    /// Builds the links of a loop of at least three cells: the two directions
    /// of a link exclude each other and every cell on the loop has exactly
    /// two links. Both facts follow from the cycle constraint but are stated
    /// directly so that local reasoning does not depend on orientation.
    pub(crate) fn new(b: &mut CnfBuilder, grid: &GridVars, edges: &[EdgeSpec<Cell>]) -> EdgeMap {
        let directed: HashMap<(Cell, Cell), Lit> =
            edges.iter().map(|e| ((e.from, e.to), e.lit)).collect();
        let mut links = HashMap::new();
        for e in edges {
            if e.from < e.to {
                let back = directed[&(e.to, e.from)];
                b.add_clause(&[!e.lit, !back]);
                links.insert((e.from, e.to), b.gate_or(&[e.lit, back]));
            }
        }
        let map = EdgeMap(links);
        for cell in grid.cells() {
            let inside = grid.get(cell.0, cell.1);
            let around: Vec<Lit> = grid
                .neighbors(cell)
                .into_iter()
                .map(|nb| map.get(cell, nb).unwrap())
                .collect();
            for (i, &l) in around.iter().enumerate() {
                let mut at_least_two = vec![!inside];
                at_least_two.extend(
                    around
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &o)| o),
                );
                b.add_clause(&at_least_two);
                for (j, &m) in around.iter().enumerate().skip(i + 1) {
                    for &o in &around[j + 1..] {
                        b.add_clause(&[!l, !m, !o]);
                    }
                }
            }
        }
        map
    }

    pub(crate) fn link(&self, a: Cell, b: Cell) -> Lit {
        self.get(a, b).expect("cells are adjacent")
    }

    fn get(&self, a: Cell, b: Cell) -> Option<Lit> {
        self.0.get(&(a.min(b), a.max(b))).copied()
    }
}

fn on_board(n: usize, (r, c): (i64, i64)) -> Option<Cell> {
    let n = n as i64;
    ((1..=n).contains(&r) && (1..=n).contains(&c)).then_some((r as usize, c as usize))
}

/// At least one of `shapes` occurs in the loop, in either direction. Shapes leaving the `n x n` board are skipped; if none is left
/// the empty clause is posted.
pub(crate) fn constrain_paths(
    b: &mut CnfBuilder,
    emap: &EdgeMap,
    n: usize,
    shapes: &[Vec<(i64, i64)>],
) {
    let mut options = Vec::new();
    for shape in shapes {
        let Some(cells) = shape
            .iter()
            .map(|&p| on_board(n, p))
            .collect::<Option<Vec<Cell>>>()
        else {
            continue;
        };
        let lits: Option<Vec<Lit>> = cells.windows(2).map(|w| emap.get(w[0], w[1])).collect();
        let lits = lits.expect("consecutive shape cells are adjacent");
        options.push(b.gate_and(&lits));
    }
    b.add_clause(&options);
}
