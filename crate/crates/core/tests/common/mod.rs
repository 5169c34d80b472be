#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use reachsat::cnf::{Cnf, Lit, Valuation};
use reachsat::sat::{InternalSolver, Model, SatBackend, SolveOutcome};

pub fn solve(cnf: &Cnf) -> Option<Model> {
    match InternalSolver::new().solve(cnf).expect("internal solver") {
        SolveOutcome::Sat(m) => Some(m),
        SolveOutcome::Unsat => None,
        SolveOutcome::Unknown(r) => panic!("unknown: {r}"),
    }
}

pub fn solve_with(cnf: &Cnf, units: &[Lit]) -> Option<Model> {
    let mut f = cnf.clone();
    for &u in units {
        f.add_clause(&[u]);
    }
    solve(&f)
}

/// All distinct projections of the models of `cnf` onto `lits`, found by
/// blocking each projection in turn.
pub fn projections(cnf: &Cnf, lits: &[Lit]) -> BTreeSet<Vec<bool>> {
    let mut f = cnf.clone();
    let mut out = BTreeSet::new();
    while let Some(m) = solve(&f) {
        let proj: Vec<bool> = lits.iter().map(|&l| m.value(l)).collect();
        let block: Vec<Lit> = lits
            .iter()
            .zip(&proj)
            .map(|(&l, &v)| if v { !l } else { l })
            .collect();
        assert!(
            out.insert(proj),
            "blocking clause failed to exclude a projection"
        );
        if block.is_empty() {
            break;
        }
        f.add_clause(&block);
    }
    out
}

/// Units fixing `lits` to the bits of `mask`.
pub fn fix(lits: &[Lit], mask: u64) -> Vec<Lit> {
    lits.iter()
        .enumerate()
        .map(|(i, &l)| if mask >> i & 1 == 1 { l } else { !l })
        .collect()
}

/// Brute-force Hamiltonian cycle search over the vertex set `subset` in a
/// digraph. A single vertex is a cycle; two vertices need both directions.
pub fn has_ham_cycle(edges: &HashSet<(usize, usize)>, subset: &[usize]) -> bool {
    match subset.len() {
        0 => false,
        1 => true,
        _ => {
            let start = subset[0];
            let rest: Vec<usize> = subset[1..].to_vec();
            let mut used = vec![false; rest.len()];
            fn dfs(
                cur: usize,
                start: usize,
                rest: &[usize],
                used: &mut [bool],
                depth: usize,
                edges: &HashSet<(usize, usize)>,
            ) -> bool {
                if depth == rest.len() {
                    return edges.contains(&(cur, start));
                }
                for i in 0..rest.len() {
                    if !used[i] && edges.contains(&(cur, rest[i])) {
                        used[i] = true;
                        if dfs(rest[i], start, rest, used, depth + 1, edges) {
                            return true;
                        }
                        used[i] = false;
                    }
                }
                false
            }
            dfs(start, start, &rest, &mut used, 0, edges)
        }
    }
}

/// Union-find connectivity of `subset` using only undirected edges with both
/// endpoints inside it. The empty set counts as connected.
pub fn connected(n: usize, edges: &[(usize, usize)], subset: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let inside: HashSet<usize> = subset.iter().copied().collect();
    for &(a, b) in edges {
        if inside.contains(&a) && inside.contains(&b) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let roots: HashSet<usize> = subset.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len() <= 1
}

/// Orthogonal flood fill on a rows x cols grid given as a bit mask (bit
/// `r * cols + c`, 0-based).
pub fn grid_connected(rows: usize, cols: usize, mask: u64) -> bool {
    let cells: Vec<usize> = (0..rows * cols).filter(|&i| mask >> i & 1 == 1).collect();
    let Some(&first) = cells.first() else {
        return true;
    };
    let mut seen = HashSet::from([first]);
    let mut stack = vec![first];
    while let Some(i) = stack.pop() {
        let (r, c) = (i / cols, i % cols);
        let mut next = Vec::new();
        if r > 0 {
            next.push(i - cols);
        }
        if r + 1 < rows {
            next.push(i + cols);
        }
        if c > 0 {
            next.push(i - 1);
        }
        if c + 1 < cols {
            next.push(i + 1);
        }
        for j in next {
            if mask >> j & 1 == 1 && seen.insert(j) {
                stack.push(j);
            }
        }
    }
    seen.len() == cells.len()
}

/// Directed grid adjacency for brute-force Hamiltonicity (0-based indexes).
pub fn grid_digraph(rows: usize, cols: usize) -> HashSet<(usize, usize)> {
    let mut edges = HashSet::new();
    for r in 0..rows {
        for c in 0..cols {
            let i = r * cols + c;
            if r + 1 < rows {
                edges.insert((i, i + cols));
                edges.insert((i + cols, i));
            }
            if c + 1 < cols {
                edges.insert((i, i + 1));
                edges.insert((i + 1, i));
            }
        }
    }
    edges
}

/// Every simple cycle of length >= 4 in the rows x cols grid graph, as
/// 1-based cells starting at the smallest cell, one direction per cycle.
pub fn grid_cycles(rows: usize, cols: usize) -> Vec<Vec<(usize, usize)>> {
    let nbrs = |(r, c): (usize, usize)| {
        let mut v = Vec::new();
        if r > 1 {
            v.push((r - 1, c));
        }
        if r < rows {
            v.push((r + 1, c));
        }
        if c > 1 {
            v.push((r, c - 1));
        }
        if c < cols {
            v.push((r, c + 1));
        }
        v
    };
    let mut out = Vec::new();
    for r in 1..=rows {
        for c in 1..=cols {
            let start = (r, c);
            let mut path = vec![start];
            let mut on = HashSet::from([start]);
            fn dfs(
                start: (usize, usize),
                path: &mut Vec<(usize, usize)>,
                on: &mut HashSet<(usize, usize)>,
                nbrs: &dyn Fn((usize, usize)) -> Vec<(usize, usize)>,
                out: &mut Vec<Vec<(usize, usize)>>,
            ) {
                let cur = *path.last().unwrap();
                for next in nbrs(cur) {
                    if next == start && path.len() >= 4 && path[1] < cur {
                        out.push(path.clone());
                    }
                    if next > start && !on.contains(&next) {
                        on.insert(next);
                        path.push(next);
                        dfs(start, path, on, nbrs, out);
                        path.pop();
                        on.remove(&next);
                    }
                }
            }
            dfs(start, &mut path, &mut on, &nbrs, &mut out);
        }
    }
    out
}

/// Exhaustive Roadrunner optimum: tries every laser placement on the white
/// cells and keeps the largest safe set that forms one circuit. `hill` is
/// indexed `[row][col]`; clues are `(x, y, num)` with x the column.
pub fn roadrunner_brute_optimum(hill: &[Vec<bool>], clues: &[(usize, usize, u8)]) -> Option<usize> {
    let rows = hill.len();
    let cols = hill[0].len();
    let whites: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter(|&(r, c)| !hill[r][c])
        .collect();
    assert!(
        whites.len() <= 20,
        "too many white cells for exhaustive search"
    );
    let arcs = grid_digraph(rows, cols);
    let mut best = None;
    for mask in 0u64..1 << whites.len() {
        let mut laser = vec![vec![false; cols]; rows];
        for (i, &(r, c)) in whites.iter().enumerate() {
            laser[r][c] = mask >> i & 1 == 1;
        }
        let mut lit = laser.clone();
        let mut ok = true;
        'beams: for &(r, c) in &whites {
            if !laser[r][c] {
                continue;
            }
            for (dr, dc) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)] {
                let (mut rr, mut cc) = (r as i64 + dr, c as i64 + dc);
                while rr >= 0
                    && cc >= 0
                    && (rr as usize) < rows
                    && (cc as usize) < cols
                    && !hill[rr as usize][cc as usize]
                {
                    if laser[rr as usize][cc as usize] {
                        ok = false;
                        break 'beams;
                    }
                    lit[rr as usize][cc as usize] = true;
                    rr += dr;
                    cc += dc;
                }
            }
        }
        if !ok {
            continue;
        }
        let clue_ok = clues.iter().all(|&(x, y, num)| {
            let (r, c) = (y as i64 - 1, x as i64 - 1);
            let n = [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)]
                .iter()
                .filter(|&&(dr, dc)| {
                    let (rr, cc) = (r + dr, c + dc);
                    rr >= 0
                        && cc >= 0
                        && (rr as usize) < rows
                        && (cc as usize) < cols
                        && laser[rr as usize][cc as usize]
                })
                .count();
            n == num as usize
        });
        if !clue_ok {
            continue;
        }
        let safe: Vec<usize> = whites
            .iter()
            .filter(|&&(r, c)| !lit[r][c])
            .map(|&(r, c)| r * cols + c)
            .collect();
        if best.is_some_and(|b| b >= safe.len()) {
            continue;
        }
        if has_ham_cycle(&arcs, &safe) {
            best = Some(safe.len());
        }
    }
    best
}
