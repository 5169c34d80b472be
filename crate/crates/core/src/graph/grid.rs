use crate::cnf::{CnfBuilder, Lit, Valuation};

use super::{hcp, hcp_k, hcp_upto, scc, scc_k, EdgeSpec, GraphError, HcpVars, SccVars, VertexSpec};

/// A 1-based `(row, col)` grid position.
pub type Cell = (usize, usize);

/// One literal per cell of a `rows x cols` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridVars {
    rows: usize,
    cols: usize,
    cells: Vec<Lit>,
}

impl GridVars {
    /// Fresh variables named `<prefix>(r,c)`.
    pub fn new(b: &mut CnfBuilder, rows: usize, cols: usize, prefix: &str) -> GridVars {
        Self::from_fn(rows, cols, |r, c| {
            b.new_named_var(format!("{prefix}({r},{c})"))
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Lit) -> GridVars {
        assert!(rows >= 1 && cols >= 1, "grid must be at least 1x1");
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 1..=rows {
            for c in 1..=cols {
                cells.push(f(r, c));
            }
        }
        GridVars { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Lit {
        assert!((1..=self.rows).contains(&r) && (1..=self.cols).contains(&c));
        self.cells[(r - 1) * self.cols + (c - 1)]
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.rows).flat_map(move |r| (1..=self.cols).map(move |c| (r, c)))
    }

    /// Orthogonal neighbors in up, down, left, right order.
    pub fn neighbors(&self, (r, c): Cell) -> Vec<Cell> {
        let mut out = Vec::with_capacity(4);
        if r > 1 {
            out.push((r - 1, c));
        }
        if r < self.rows {
            out.push((r + 1, c));
        }
        if c > 1 {
            out.push((r, c - 1));
        }
        if c < self.cols {
            out.push((r, c + 1));
        }
        out
    }

    pub fn vertices(&self) -> Vec<VertexSpec<Cell>> {
        self.cells()
            .map(|cell| VertexSpec::new(cell, self.get(cell.0, cell.1)))
            .collect()
    }

    /// Cell values under an assignment, row by row.
    pub fn values<V: Valuation + ?Sized>(&self, val: &V) -> Vec<Vec<bool>> {
        (1..=self.rows)
            .map(|r| (1..=self.cols).map(|c| val.value(self.get(r, c))).collect())
            .collect()
    }
}

fn grid_edges(b: &mut CnfBuilder, grid: &GridVars) -> Vec<EdgeSpec<Cell>> {
    let mut edges = Vec::new();
    for cell in grid.cells() {
        for next in grid.neighbors(cell) {
            let lit = b.new_named_var(format!(
                "edge({},{}->{},{})",
                cell.0, cell.1, next.0, next.1
            ));
            edges.push(EdgeSpec::new(cell, next, lit));
        }
    }
    edges
}

fn checked<T>(r: Result<T, GraphError>) -> T {
    r.expect("grid graphs have unique vertices and valid edges")
}

/// Hamiltonian cycle over the cells whose literal is true. Returns one
/// directed edge per ordered pair of adjacent cells, row-major, each cell's
/// targets in up, down, left, right order.
pub fn hcp_grid(b: &mut CnfBuilder, grid: &GridVars) -> (Vec<EdgeSpec<Cell>>, HcpVars) {
    let edges = grid_edges(b, grid);
    let vars = checked(hcp(b, &grid.vertices(), &edges));
    (edges, vars)
}

/// [`hcp_grid`] with the cell counter truncated at `cap`.
pub fn hcp_grid_upto(
    b: &mut CnfBuilder,
    grid: &GridVars,
    cap: usize,
) -> (Vec<EdgeSpec<Cell>>, HcpVars) {
    let edges = grid_edges(b, grid);
    let vars = checked(hcp_upto(b, &grid.vertices(), &edges, cap));
    (edges, vars)
}

/// [`hcp_grid`] with exactly `k` cells on the cycle.
pub fn hcp_grid_k(
    b: &mut CnfBuilder,
    grid: &GridVars,
    k: usize,
) -> Result<(Vec<EdgeSpec<Cell>>, HcpVars), GraphError> {
    let edges = grid_edges(b, grid);
    let vars = hcp_k(b, &grid.vertices(), &edges, k)?;
    Ok((edges, vars))
}

fn adjacency_edges(b: &mut CnfBuilder, grid: &GridVars) -> Vec<EdgeSpec<Cell>> {
    let mut edges = Vec::new();
    for cell in grid.cells() {
        for next in grid.neighbors(cell) {
            if next > cell {
                let a = grid.get(cell.0, cell.1);
                let c = grid.get(next.0, next.1);
                let g = b.gate_and(&[a, c]);
                edges.push(EdgeSpec::new(cell, next, g));
            }
        }
    }
    edges
}

/// The true cells form one orthogonally connected region (or none).
pub fn scc_grid(b: &mut CnfBuilder, grid: &GridVars) -> SccVars {
    let edges = adjacency_edges(b, grid);
    checked(scc(b, &grid.vertices(), &edges))
}

/// [`scc_grid`] with exactly `k` true cells.
pub fn scc_grid_k(b: &mut CnfBuilder, grid: &GridVars, k: usize) -> Result<SccVars, GraphError> {
    let edges = adjacency_edges(b, grid);
    scc_k(b, &grid.vertices(), &edges, k)
}
