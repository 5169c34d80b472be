use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::cnf::{distance_width, BitVec, CnfBuilder, Lit, UnaryCount};

use super::{index_graph, lowest_index_anchor, EdgeSpec, GraphError, VertexSpec};

/// Auxiliary literals of an [`scc`] encoding, indexed like the vertex list.
#[derive(Clone, Debug)]
pub struct SccVars {
    pub count: UnaryCount,
    pub root: Vec<Lit>,
    /// Depth in the spanning tree.
    pub dist: Vec<BitVec>,
    /// `parents[i]` lists `(j, p)` where `p` means "j is the parent of i".
    pub parents: Vec<Vec<(usize, Lit)>>,
}

/// Connectivity of the in-vertices over undirected active edges. An edge
/// given in one orientation also serves the other; if both orientations are
/// given, either one links the pair. The empty subgraph is accepted.
pub fn scc<T>(
    b: &mut CnfBuilder,
    vs: &[VertexSpec<T>],
    es: &[EdgeSpec<T>],
) -> Result<SccVars, GraphError>
where
    T: Eq + Hash + Debug,
{
    let g = index_graph(vs, es)?;
    let n = g.ins.len();

    let mut pairs: BTreeMap<(usize, usize), Vec<Lit>> = BTreeMap::new();
    for &(from, to, e) in &g.edges {
        b.add_clause(&[!e, g.ins[from]]);
        b.add_clause(&[!e, g.ins[to]]);
        pairs
            .entry((from.min(to), from.max(to)))
            .or_default()
            .push(e);
    }
    let mut adjacent: Vec<Vec<(usize, Lit)>> = vec![Vec::new(); n];
    for ((a, c), lits) in pairs {
        let link = b.gate_or(&lits);
        adjacent[a].push((c, link));
        adjacent[c].push((a, link));
    }

    let count = b.unary_count(&g.ins);
    let root = lowest_index_anchor(b, &g.ins);
    let width = distance_width(n);
    let mut dist = Vec::with_capacity(n);
    for name in &g.names {
        let d = b.new_bitvec(width);
        for (k, bit) in d.bits().iter().enumerate() {
            b.set_name(bit.var(), format!("depth[{name}].{k}"));
        }
        dist.push(d);
    }
    let mut increments = vec![None; n];
    let mut parents = Vec::with_capacity(n);
    for i in 0..n {
        b.bitvec_eq_const(&dist[i], 0, root[i])?;
        if (1usize << width) > n {
            b.bitvec_le_const(&dist[i], n as u64 - 1);
        }
        let mut options = Vec::with_capacity(adjacent[i].len());
        for &(j, link) in &adjacent[i] {
            let p = b.new_var();
            b.add_clause(&[!p, link]);
            b.add_clause(&[!p, g.ins[i]]);
            b.add_clause(&[!p, g.ins[j]]);
            b.add_clause(&[!p, !root[i]]);
            let inc = increments[j]
                .get_or_insert_with(|| b.bitvec_increment(&dist[j]))
                .clone();
            b.bitvec_successor_of(&inc, &dist[i], p)?;
            options.push((j, p));
        }
        let lits: Vec<Lit> = options.iter().map(|&(_, p)| p).collect();
        b.at_most_one(&lits);
        let mut clause = vec![!g.ins[i], root[i]];
        clause.extend(lits);
        b.add_clause(&clause);
        parents.push(options);
    }

    Ok(SccVars {
        count,
        root,
        dist,
        parents,
    })
}

/// [`scc`] with exactly `k` in-vertices.
pub fn scc_k<T>(
    b: &mut CnfBuilder,
    vs: &[VertexSpec<T>],
    es: &[EdgeSpec<T>],
    k: usize,
) -> Result<SccVars, GraphError>
where
    T: Eq + Hash + Debug,
{
    let vars = scc(b, vs, es)?;
    b.fix_count(&vars.count, k)?;
    Ok(vars)
}
