//! Graph reachability constraints compiled into a [`CnfBuilder`].
//!
//! * [`hcp`]: the active edges form one directed cycle through exactly the
//!   in-vertices (distance encoding: a start vertex at distance 0, every other
//!   in-vertex one more than its predecessor).
//! * [`scc`]: the in-vertices are connected through active undirected edges
//!   (tree encoding: a root at depth 0, every other in-vertex one deeper than
//!   its chosen parent).
//!
//! Vertices are identified by caller-chosen terms. The grid variants use
//! 1-based `(row, col)` cells.

mod circuit;
mod grid;
mod hcp;
mod scc;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::cnf::{CnfBuilder, CnfError, Lit};

pub use circuit::{circuit, subcircuit, Successor};
pub use grid::{hcp_grid, hcp_grid_k, hcp_grid_upto, scc_grid, scc_grid_k, Cell, GridVars};
pub use hcp::{hcp, hcp_k, hcp_upto, HcpVars};
pub use scc::{scc, scc_k, SccVars};

/// `{V, B}`: vertex `term` is in the graph iff `lit` is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec<T> {
    pub term: T,
    pub lit: Lit,
}

/// `{V1, V2, B}`: the edge `from -> to` is in the graph iff `lit` is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec<T> {
    pub from: T,
    pub to: T,
    pub lit: Lit,
}

impl<T> VertexSpec<T> {
    pub fn new(term: T, lit: Lit) -> Self {
        VertexSpec { term, lit }
    }
}

impl<T> EdgeSpec<T> {
    pub fn new(from: T, to: T, lit: Lit) -> Self {
        EdgeSpec { from, to, lit }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("edge {0} -> {1} declared twice")]
    DuplicateEdge(String, String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// Edges resolved to vertex indexes.
pub(crate) struct Indexed {
    pub ins: Vec<Lit>,
    pub edges: Vec<(usize, usize, Lit)>,
    pub names: Vec<String>,
}

pub(crate) fn index_graph<T>(
    vs: &[VertexSpec<T>],
    es: &[EdgeSpec<T>],
) -> Result<Indexed, GraphError>
where
    T: Eq + Hash + Debug,
{
    let mut index: HashMap<&T, usize> = HashMap::with_capacity(vs.len());
    for (i, v) in vs.iter().enumerate() {
        if index.insert(&v.term, i).is_some() {
            return Err(GraphError::DuplicateVertex(format!("{:?}", v.term)));
        }
    }
    let lookup = |t: &T| {
        index
            .get(t)
            .copied()
            .ok_or_else(|| GraphError::UnknownEndpoint(format!("{t:?}")))
    };
    let mut seen = std::collections::HashSet::with_capacity(es.len());
    let mut edges = Vec::with_capacity(es.len());
    for e in es {
        let (a, b) = (lookup(&e.from)?, lookup(&e.to)?);
        if a == b {
            return Err(GraphError::SelfLoop(format!("{:?}", e.from)));
        }
        if !seen.insert((a, b)) {
            return Err(GraphError::DuplicateEdge(
                format!("{:?}", e.from),
                format!("{:?}", e.to),
            ));
        }
        edges.push((a, b, e.lit));
    }
    Ok(Indexed {
        ins: vs.iter().map(|v| v.lit).collect(),
        edges,
        names: vs.iter().map(|v| format!("{:?}", v.term)).collect(),
    })
}

/// `anchor[i] <=> in[i] & no earlier in-vertex`, through a prefix-occupancy
/// chain. Exactly one anchor holds whenever some vertex is in.
pub(crate) fn lowest_index_anchor(b: &mut CnfBuilder, ins: &[Lit]) -> Vec<Lit> {
    let mut anchors = Vec::with_capacity(ins.len());
    let mut prefix: Option<Lit> = None;
    for &inl in ins {
        match prefix {
            None => {
                anchors.push(inl);
                prefix = Some(inl);
            }
            Some(p) => {
                anchors.push(b.gate_and(&[inl, !p]));
                prefix = Some(b.gate_or(&[p, inl]));
            }
        }
    }
    anchors
}
