use std::fmt::Debug;
use std::hash::Hash;

use crate::cnf::{distance_width, BitVec, CnfBuilder, Lit, UnaryCount};

use super::{index_graph, lowest_index_anchor, EdgeSpec, GraphError, VertexSpec};

/// Auxiliary literals of an [`hcp`] encoding, indexed like the vertex list.
#[derive(Clone, Debug)]
pub struct HcpVars {
    /// Number of in-vertices.
    pub count: UnaryCount,
    /// The start vertex: the in-vertex with the lowest declaration index.
    pub start: Vec<Lit>,
    pub dist: Vec<BitVec>,
    /// True iff exactly one vertex is in; then no edge is active.
    pub single: Lit,
}

/// Hamiltonian cycle over the in-vertices. At least one vertex must be in; a
/// single in-vertex forms a cycle by itself with no active edges.
pub fn hcp<T>(
    b: &mut CnfBuilder,
    vs: &[VertexSpec<T>],
    es: &[EdgeSpec<T>],
) -> Result<HcpVars, GraphError>
where
    T: Eq + Hash + Debug,
{
    hcp_upto(b, vs, es, vs.len())
}

/// [`hcp`] whose in-vertex counter is truncated at `cap` (at least 2). Use
/// it on large graphs when only small bounds on the cycle length matter.
pub fn hcp_upto<T>(
    b: &mut CnfBuilder,
    vs: &[VertexSpec<T>],
    es: &[EdgeSpec<T>],
    cap: usize,
) -> Result<HcpVars, GraphError>
where
    T: Eq + Hash + Debug,
{
    let g = index_graph(vs, es)?;
    let n = g.ins.len();

    for &(from, to, e) in &g.edges {
        b.add_clause(&[!e, g.ins[from]]);
        b.add_clause(&[!e, g.ins[to]]);
    }

    let count = b.unary_count_upto(&g.ins, cap.max(2));
    b.at_least_one(&g.ins);
    let single = if n >= 2 {
        b.gate_and(&[count.at_least(1), !count.at_least(2)])
    } else {
        count.at_least(1)
    };

    let mut outgoing: Vec<Vec<Lit>> = vec![Vec::new(); n];
    let mut incoming: Vec<Vec<Lit>> = vec![Vec::new(); n];
    for &(from, to, e) in &g.edges {
        outgoing[from].push(e);
        incoming[to].push(e);
        b.add_clause(&[!single, !e]);
    }
    for i in 0..n {
        for adj in [&outgoing[i], &incoming[i]] {
            b.at_most_one(adj);
            let mut clause = vec![!g.ins[i], single];
            clause.extend_from_slice(adj);
            b.add_clause(&clause);
        }
    }

    let start = lowest_index_anchor(b, &g.ins);
    let width = distance_width(n);
    let mut dist = Vec::with_capacity(n);
    for name in &g.names {
        let d = b.new_bitvec(width);
        for (k, bit) in d.bits().iter().enumerate() {
            b.set_name(bit.var(), format!("dist[{name}].{k}"));
        }
        dist.push(d);
    }
    for i in 0..n {
        b.bitvec_eq_const(&dist[i], 0, start[i])?;
        if (1usize << width) > n {
            b.bitvec_le_const(&dist[i], n as u64 - 1);
        }
    }
    let mut increments = vec![None; n];
    for &(from, to, e) in &g.edges {
        let inc = increments[from]
            .get_or_insert_with(|| b.bitvec_increment(&dist[from]))
            .clone();
        let guard = b.gate_and(&[e, !start[to]]);
        b.bitvec_successor_of(&inc, &dist[to], guard)?;
    }

    Ok(HcpVars {
        count,
        start,
        dist,
        single,
    })
}

/// [`hcp`] with exactly `k` in-vertices.
pub fn hcp_k<T>(
    b: &mut CnfBuilder,
    vs: &[VertexSpec<T>],
    es: &[EdgeSpec<T>],
    k: usize,
) -> Result<HcpVars, GraphError>
where
    T: Eq + Hash + Debug,
{
    let vars = hcp(b, vs, es)?;
    b.fix_count(&vars.count, k)?;
    Ok(vars)
}
