//! The classical `circuit` and `subcircuit` constraints, reduced to [`hcp`]
//! over one-hot successor variables.

use crate::cnf::{CnfBuilder, Lit, Valuation};

use super::{hcp, EdgeSpec, GraphError, VertexSpec};

/// A one-hot successor variable: exactly one option's literal is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Successor {
    pub options: Vec<(usize, Lit)>,
}

impl Successor {
    /// The chosen successor, if the assignment picks exactly one.
    pub fn value<V: Valuation + ?Sized>(&self, val: &V) -> Option<usize> {
        let mut chosen = self.options.iter().filter(|(_, l)| val.value(*l));
        match (chosen.next(), chosen.next()) {
            (Some(&(j, _)), None) => Some(j),
            _ => None,
        }
    }

    pub fn lit_for(&self, j: usize) -> Option<Lit> {
        self.options.iter().find(|(k, _)| *k == j).map(|&(_, l)| l)
    }
}

fn successors(
    b: &mut CnfBuilder,
    domains: &[Vec<usize>],
    with_stay: bool,
) -> Result<Vec<Successor>, GraphError> {
    let n = domains.len();
    let mut out = Vec::with_capacity(n);
    for (i, dom) in domains.iter().enumerate() {
        let mut options = Vec::with_capacity(dom.len() + 1);
        if with_stay {
            options.push((i, b.new_named_var(format!("succ[{i}]={i}"))));
        }
        for &j in dom {
            if j == i {
                return Err(GraphError::SelfLoop(i.to_string()));
            }
            if j >= n {
                return Err(GraphError::UnknownEndpoint(j.to_string()));
            }
            options.push((j, b.new_named_var(format!("succ[{i}]={j}"))));
        }
        let lits: Vec<Lit> = options.iter().map(|&(_, l)| l).collect();
        b.exactly_one(&lits);
        out.push(Successor { options });
    }
    Ok(out)
}

fn edges_of(succ: &[Successor]) -> Vec<EdgeSpec<usize>> {
    succ.iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.options
                .iter()
                .filter(move |(j, _)| *j != i)
                .map(move |&(j, l)| EdgeSpec::new(i, j, l))
        })
        .collect()
}

/// Every vertex is in and the successor choices form one Hamiltonian cycle.
/// `domains[i]` lists the allowed successors of vertex `i`; an empty domain
/// makes the formula unsatisfiable.
pub fn circuit(b: &mut CnfBuilder, domains: &[Vec<usize>]) -> Result<Vec<Successor>, GraphError> {
    let succ = successors(b, domains, false)?;
    let top = b.true_lit();
    let vs: Vec<VertexSpec<usize>> = (0..domains.len())
        .map(|i| VertexSpec::new(i, top))
        .collect();
    hcp(b, &vs, &edges_of(&succ))?;
    Ok(succ)
}

/// Each vertex may also choose itself ("stay"), meaning it is not in. The
/// vertices that move form one cycle. All-stay is accepted; a single moving
/// vertex is not representable and is unsatisfiable.
pub fn subcircuit(
    b: &mut CnfBuilder,
    domains: &[Vec<usize>],
) -> Result<Vec<Successor>, GraphError> {
    let succ = successors(b, domains, true)?;
    let mut vs: Vec<VertexSpec<usize>> = succ
        .iter()
        .enumerate()
        .map(|(i, s)| VertexSpec::new(i, !s.options[0].1))
        .collect();
    // hcp needs a nonempty vertex set. A phantom vertex without edges is in
    // exactly when every real vertex stays and then forms the cycle alone.
    let ins: Vec<Lit> = vs.iter().map(|v| v.lit).collect();
    let any_in = b.gate_or(&ins);
    vs.push(VertexSpec::new(domains.len(), !any_in));
    hcp(b, &vs, &edges_of(&succ))?;
    Ok(succ)
}
