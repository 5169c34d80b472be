//! hcp / scc encodings against brute-force Hamiltonicity and connectivity.

mod common;

use std::collections::HashSet;

use common::{
    connected, fix, grid_connected, grid_digraph, has_ham_cycle, projections, solve, solve_with,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reachsat::cnf::{CnfBuilder, Lit, Valuation};
use reachsat::graph::{
    circuit, hcp, hcp_grid, hcp_grid_k, hcp_k, scc, scc_grid, subcircuit, EdgeSpec, GraphError,
    GridVars, HcpVars, SccVars, VertexSpec,
};
use reachsat::sat::Model;

struct Digraph {
    b: CnfBuilder,
    ins: Vec<Lit>,
    edges: Vec<EdgeSpec<usize>>,
}

fn digraph(n: usize, arcs: &[(usize, usize)]) -> (Digraph, HcpVars) {
    let mut b = CnfBuilder::new();
    let ins = b.new_vars(n);
    let vs: Vec<_> = (0..n).map(|i| VertexSpec::new(i, ins[i])).collect();
    let edges: Vec<_> = arcs
        .iter()
        .map(|&(a, c)| EdgeSpec::new(a, c, b.new_var()))
        .collect();
    let vars = hcp(&mut b, &vs, &edges).unwrap();
    (Digraph { b, ins, edges }, vars)
}

/// Follows active edges from the start vertex; checks the walk closes after
/// exactly K steps and that distances along it are 0..K-1.
fn check_hcp_model(g: &Digraph, vars: &HcpVars, m: &Model) {
    let ins: Vec<usize> = (0..g.ins.len()).filter(|&i| m.value(g.ins[i])).collect();
    let k = ins.len();
    assert_eq!(vars.count.value(m), k);
    for e in &g.edges {
        if m.value(e.lit) {
            assert!(
                m.value(g.ins[e.from]) && m.value(g.ins[e.to]),
                "edge without endpoints"
            );
        }
    }
    let start = ins[0];
    assert!(m.value(vars.start[start]));
    if k == 1 {
        assert!(g.edges.iter().all(|e| !m.value(e.lit)));
        return;
    }
    let mut cur = start;
    let mut visited = vec![];
    loop {
        visited.push(cur);
        assert_eq!(vars.dist[cur].value(m) as usize, visited.len() - 1);
        let outs: Vec<usize> = g
            .edges
            .iter()
            .filter(|e| e.from == cur && m.value(e.lit))
            .map(|e| e.to)
            .collect();
        assert_eq!(outs.len(), 1);
        cur = outs[0];
        if cur == start {
            break;
        }
        assert!(visited.len() <= k);
    }
    visited.sort();
    assert_eq!(visited, ins);
}

fn all_arcs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (0..n).filter(move |&c| c != a).map(move |c| (a, c)))
        .collect()
}

fn check_hcp_against_oracle(n: usize, arcs: &[(usize, usize)]) {
    let (g, vars) = digraph(n, arcs);
    let arcset: HashSet<(usize, usize)> = arcs.iter().copied().collect();
    for mask in 0..1u64 << n {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let want = has_ham_cycle(&arcset, &subset);
        let got = solve_with(g.b.cnf(), &fix(&g.ins, mask));
        assert_eq!(got.is_some(), want, "n={n} arcs={arcs:?} subset={subset:?}");
        if let Some(m) = got {
            check_hcp_model(&g, &vars, &m);
        }
    }
}

#[test]
fn hcp_all_digraphs_up_to_three_vertices() {
    for n in 1..=3 {
        let arcs = all_arcs(n);
        for sel in 0..1u64 << arcs.len() {
            let chosen: Vec<_> = arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| sel >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            check_hcp_against_oracle(n, &chosen);
        }
    }
}

#[test]
fn hcp_random_digraphs_four_and_five_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 4..=5 {
        for _ in 0..20 {
            let density = rng.gen_range(0.3..0.9);
            let arcs: Vec<_> = all_arcs(n)
                .into_iter()
                .filter(|_| rng.gen_bool(density))
                .collect();
            check_hcp_against_oracle(n, &arcs);
        }
    }
}

#[test]
fn hcp_examples() {
    let (g, _) = digraph(3, &all_arcs(3));
    let m = solve_with(g.b.cnf(), &g.ins).expect("complete digraph on 3 is Hamiltonian");
    assert_eq!(g.edges.iter().filter(|e| m.value(e.lit)).count(), 3);

    let (g, _) = digraph(2, &[(0, 1)]);
    assert!(solve_with(g.b.cnf(), &g.ins).is_none());

    let (g, _) = digraph(1, &[]);
    assert!(solve_with(g.b.cnf(), &g.ins).is_some());

    // nothing in: rejected
    let (g, _) = digraph(3, &all_arcs(3));
    assert!(solve_with(g.b.cnf(), &fix(&g.ins, 0)).is_none());
}

#[test]
fn hcp_k_examples() {
    let build = |arcs: &[(usize, usize)], n: usize, k: usize| {
        let mut b = CnfBuilder::new();
        let ins = b.new_vars(n);
        let vs: Vec<_> = (0..n).map(|i| VertexSpec::new(i, ins[i])).collect();
        let es: Vec<_> = arcs
            .iter()
            .map(|&(a, c)| EdgeSpec::new(a, c, b.new_var()))
            .collect();
        hcp_k(&mut b, &vs, &es, k).unwrap();
        solve(b.cnf()).is_some()
    };
    assert!(build(&all_arcs(3), 3, 2));
    assert!(!build(&all_arcs(3), 3, 0));
    // a 4-vertex digraph: cycle 0->1->2->3 without the closing arc 3->0
    let arcs = [(0, 1), (1, 2), (2, 3), (1, 0), (2, 1)];
    let set: HashSet<_> = arcs.iter().copied().collect();
    assert!(!has_ham_cycle(&set, &[0, 1, 2, 3]));
    assert!(!build(&arcs, 4, 4));
    assert!(build(&arcs, 4, 2));
}

#[test]
fn graph_errors() {
    let mut b = CnfBuilder::new();
    let x = b.new_var();
    let vs = vec![VertexSpec::new(1, x), VertexSpec::new(2, x)];
    let unknown = vec![EdgeSpec::new(1, 3, x)];
    assert!(matches!(
        hcp(&mut b, &vs, &unknown),
        Err(GraphError::UnknownEndpoint(_))
    ));
    let dup = vec![EdgeSpec::new(1, 2, x), EdgeSpec::new(1, 2, x)];
    assert!(matches!(
        hcp(&mut b, &vs, &dup),
        Err(GraphError::DuplicateEdge(..))
    ));
    let self_loop = vec![EdgeSpec::new(1, 1, x)];
    assert!(matches!(
        scc(&mut b, &vs, &self_loop),
        Err(GraphError::SelfLoop(_))
    ));
    let twice = vec![VertexSpec::new(1, x), VertexSpec::new(1, x)];
    assert!(matches!(
        scc(&mut b, &twice, &[]),
        Err(GraphError::DuplicateVertex(_))
    ));
}

fn grid_hcp_matches_oracle(rows: usize, cols: usize) {
    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, rows, cols, "cell");
    let (edges, _) = hcp_grid(&mut b, &grid);
    let cells: Vec<Lit> = grid.cells().map(|(r, c)| grid.get(r, c)).collect();
    let arcs = grid_digraph(rows, cols);
    for mask in 0..1u64 << (rows * cols) {
        let subset: Vec<usize> = (0..rows * cols).filter(|&i| mask >> i & 1 == 1).collect();
        let want = has_ham_cycle(&arcs, &subset);
        let got = solve_with(b.cnf(), &fix(&cells, mask));
        assert_eq!(got.is_some(), want, "{rows}x{cols} mask={mask:b}");
        if let Some(m) = got {
            // degree check on the decoded cycle
            for cell in grid.cells() {
                let on = m.value(grid.get(cell.0, cell.1));
                let outs = edges
                    .iter()
                    .filter(|e| e.from == cell && m.value(e.lit))
                    .count();
                let ins = edges
                    .iter()
                    .filter(|e| e.to == cell && m.value(e.lit))
                    .count();
                let expect = usize::from(on && subset.len() > 1);
                assert_eq!((outs, ins), (expect, expect));
            }
        }
    }
}

#[test]
fn hcp_grid_small_grids_match_oracle() {
    for (r, c) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (1, 4)] {
        grid_hcp_matches_oracle(r, c);
    }
}

#[test]
fn hcp_grid_examples() {
    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, 2, 2, "cell");
    let (edges, _) = hcp_grid(&mut b, &grid);
    let cells: Vec<Lit> = grid.cells().map(|(r, c)| grid.get(r, c)).collect();
    let m = solve_with(b.cnf(), &cells).unwrap();
    assert_eq!(edges.iter().filter(|e| m.value(e.lit)).count(), 4);

    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, 3, 3, "cell");
    hcp_grid(&mut b, &grid);
    let cells: Vec<Lit> = grid.cells().map(|(r, c)| grid.get(r, c)).collect();
    assert!(solve_with(b.cnf(), &cells).is_none());

    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, 1, 3, "cell");
    hcp_grid(&mut b, &grid);
    let cells: Vec<Lit> = grid.cells().map(|(r, c)| grid.get(r, c)).collect();
    assert!(solve_with(b.cnf(), &cells).is_none());

    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, 3, 3, "cell");
    hcp_grid_k(&mut b, &grid, 8).unwrap();
    assert!(
        solve(b.cnf()).is_some(),
        "the 8-cell ring around the centre"
    );
}

fn check_scc_model(n: usize, ins: &[Lit], vars: &SccVars, m: &Model) {
    let inside: Vec<usize> = (0..n).filter(|&i| m.value(ins[i])).collect();
    let roots: Vec<usize> = (0..n).filter(|&i| m.value(vars.root[i])).collect();
    if inside.is_empty() {
        assert!(roots.is_empty());
        return;
    }
    assert_eq!(roots, vec![inside[0]]);
    for &i in &inside {
        let chosen: Vec<usize> = vars.parents[i]
            .iter()
            .filter(|(_, p)| m.value(*p))
            .map(|&(j, _)| j)
            .collect();
        if i == inside[0] {
            assert!(chosen.is_empty());
            assert_eq!(vars.dist[i].value(m), 0);
        } else {
            assert_eq!(chosen.len(), 1, "one parent per non-root vertex");
            assert_eq!(vars.dist[i].value(m), vars.dist[chosen[0]].value(m) + 1);
        }
    }
}

#[test]
fn scc_random_graphs_match_union_find() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=5 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |c| (a, c)))
            .collect();
        for _ in 0..20 {
            let density = rng.gen_range(0.2..0.9);
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(density))
                .collect();
            // orient each edge randomly: scc treats them as undirected
            let mut b = CnfBuilder::new();
            let ins = b.new_vars(n);
            let vs: Vec<_> = (0..n).map(|i| VertexSpec::new(i, ins[i])).collect();
            let es: Vec<_> = chosen
                .iter()
                .map(|&(a, c)| {
                    let lit = b.new_var();
                    if rng.gen() {
                        EdgeSpec::new(a, c, lit)
                    } else {
                        EdgeSpec::new(c, a, lit)
                    }
                })
                .collect();
            let vars = scc(&mut b, &vs, &es).unwrap();
            let edge_lits: Vec<Lit> = es.iter().map(|e| e.lit).collect();
            for mask in 0..1u64 << n {
                let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                // free edges
                let want = connected(n, &chosen, &subset);
                let got = solve_with(b.cnf(), &fix(&ins, mask));
                assert_eq!(
                    got.is_some(),
                    want,
                    "n={n} edges={chosen:?} subset={subset:?}"
                );
                if let Some(m) = &got {
                    check_scc_model(n, &ins, &vars, m);
                }
                // all edges forced active: needs every endpoint inside too
                let mut units = fix(&ins, mask);
                units.extend(edge_lits.iter().copied());
                let closed = chosen
                    .iter()
                    .all(|&(a, c)| mask >> a & 1 == 1 && mask >> c & 1 == 1);
                assert_eq!(solve_with(b.cnf(), &units).is_some(), closed && want);
            }
        }
    }
}

#[test]
fn scc_examples() {
    let mut b = CnfBuilder::new();
    let ins = b.new_vars(2);
    let e = b.new_var();
    let vs = vec![VertexSpec::new("a", ins[0]), VertexSpec::new("b", ins[1])];
    scc(&mut b, &vs, &[EdgeSpec::new("a", "b", e)]).unwrap();
    assert!(solve_with(b.cnf(), &[ins[0], ins[1], e]).is_some());

    let mut b = CnfBuilder::new();
    let ins = b.new_vars(2);
    let vs = vec![VertexSpec::new("a", ins[0]), VertexSpec::new("b", ins[1])];
    scc(&mut b, &vs, &[]).unwrap();
    assert!(solve_with(b.cnf(), &ins).is_none());
}

fn grid_scc_matches_oracle(rows: usize, cols: usize) {
    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, rows, cols, "cell");
    let vars = scc_grid(&mut b, &grid);
    let cells: Vec<Lit> = grid.cells().map(|(r, c)| grid.get(r, c)).collect();
    for mask in 0..1u64 << (rows * cols) {
        let got = solve_with(b.cnf(), &fix(&cells, mask));
        assert_eq!(
            got.is_some(),
            grid_connected(rows, cols, mask),
            "{rows}x{cols} mask={mask:b}"
        );
        if let Some(m) = got {
            check_scc_model(rows * cols, &cells, &vars, &m);
        }
    }
}

#[test]
fn scc_grid_small_grids_match_flood_fill() {
    for (r, c) in [(1, 1), (1, 4), (2, 2), (2, 3), (3, 2)] {
        grid_scc_matches_oracle(r, c);
    }
}

#[test]
fn scc_grid_examples() {
    let mut b = CnfBuilder::new();
    let grid = GridVars::new(&mut b, 2, 2, "cell");
    scc_grid(&mut b, &grid);
    let diag = [
        grid.get(1, 1),
        !grid.get(1, 2),
        !grid.get(2, 1),
        grid.get(2, 2),
    ];
    assert!(solve_with(b.cnf(), &diag).is_none());
    let single = [
        grid.get(1, 2),
        !grid.get(1, 1),
        !grid.get(2, 1),
        !grid.get(2, 2),
    ];
    assert!(solve_with(b.cnf(), &single).is_some());
}

/// Directed Hamiltonian cycles through all `n` vertices, as successor arrays.
fn count_cycles(n: usize) -> usize {
    let arcs: HashSet<(usize, usize)> = all_arcs(n).into_iter().collect();
    // count permutations that are a single n-cycle
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n)
        .into_iter()
        .filter(|succ| {
            if succ
                .iter()
                .enumerate()
                .any(|(i, &j)| i == j || !arcs.contains(&(i, j)))
            {
                return false;
            }
            let mut cur = 0;
            for step in 1..=n {
                cur = succ[cur];
                if cur == 0 {
                    return step == n;
                }
            }
            false
        })
        .count()
}

#[test]
fn circuit_models() {
    let mut b = CnfBuilder::new();
    let succ = circuit(&mut b, &[vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
    let sel: Vec<Lit> = succ
        .iter()
        .flat_map(|s| s.options.iter().map(|&(_, l)| l))
        .collect();
    assert_eq!(projections(b.cnf(), &sel).len(), count_cycles(3));
    assert_eq!(count_cycles(3), 2);

    let mut b = CnfBuilder::new();
    let succ = circuit(&mut b, &[vec![1], vec![0]]).unwrap();
    let sel: Vec<Lit> = succ
        .iter()
        .flat_map(|s| s.options.iter().map(|&(_, l)| l))
        .collect();
    let models = projections(b.cnf(), &sel);
    assert_eq!(models.len(), 1);

    // 0 and 1 can only point at each other, so 2 is never reached
    let mut b = CnfBuilder::new();
    circuit(&mut b, &[vec![1], vec![0], vec![0, 1]]).unwrap();
    assert!(solve(b.cnf()).is_none());

    let mut b = CnfBuilder::new();
    circuit(&mut b, &[vec![1], vec![]]).unwrap();
    assert!(solve(b.cnf()).is_none(), "empty domain");

    let mut b = CnfBuilder::new();
    assert!(circuit(&mut b, &[vec![0]]).is_err());
}

#[test]
fn circuit_four_vertices_counts_cycles() {
    let mut b = CnfBuilder::new();
    let doms: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).filter(|&j| j != i).collect())
        .collect();
    let succ = circuit(&mut b, &doms).unwrap();
    let sel: Vec<Lit> = succ
        .iter()
        .flat_map(|s| s.options.iter().map(|&(_, l)| l))
        .collect();
    let models = projections(b.cnf(), &sel);
    assert_eq!(models.len(), 6);
    for proj in models {
        let mut f = b.cnf().clone();
        for (&l, &v) in sel.iter().zip(&proj) {
            f.add_clause(&[if v { l } else { !l }]);
        }
        let m = solve(&f).unwrap();
        let chosen: Vec<usize> = succ.iter().map(|s| s.value(&m).unwrap()).collect();
        let mut cur = 0;
        let mut seen = vec![false; 4];
        for _ in 0..4 {
            assert!(!seen[cur]);
            seen[cur] = true;
            cur = chosen[cur];
        }
        assert_eq!(cur, 0);
    }
}

#[test]
fn subcircuit_models() {
    // n = 3 with full domains: all-stay, three 2-cycles, two 3-cycles
    let mut b = CnfBuilder::new();
    let succ = subcircuit(&mut b, &[vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
    let sel: Vec<Lit> = succ
        .iter()
        .flat_map(|s| s.options.iter().map(|&(_, l)| l))
        .collect();
    assert_eq!(projections(b.cnf(), &sel).len(), 6);

    // all stay
    let stays: Vec<Lit> = succ
        .iter()
        .map(|s| {
            s.lit_for(succ.iter().position(|t| t == s).unwrap())
                .unwrap()
        })
        .collect();
    assert!(solve_with(b.cnf(), &stays).is_some());

    // exactly one vertex moves: impossible
    assert!(solve_with(b.cnf(), &[!stays[0], stays[1], stays[2]]).is_none());

    // 4 vertices: 3-cycle among {0,1,2}, vertex 3 stays
    let mut b = CnfBuilder::new();
    let doms: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).filter(|&j| j != i).collect())
        .collect();
    let succ = subcircuit(&mut b, &doms).unwrap();
    let units = [
        succ[0].lit_for(1).unwrap(),
        succ[1].lit_for(2).unwrap(),
        succ[2].lit_for(0).unwrap(),
        succ[3].lit_for(3).unwrap(),
    ];
    assert!(solve_with(b.cnf(), &units).is_some());
}
