//! Graph-reachability constraints compiled to CNF.
//!
//! The crate is organized bottom-up:
//!
//! * [`cnf`]: variables, clauses, Tseitin gates, cardinality counters,
//!   bit vectors and DIMACS I/O.
//! * [`graph`]: Hamiltonian-cycle (`hcp`) and connectivity (`scc`)
//!   encodings, their grid variants, and `circuit`/`subcircuit`.
//! * [`sat`]: the [`sat::SatBackend`] trait with an internal CDCL solver and an
//!   external-process driver, selectable by name.
//! * [`optimize`]: maximization of a Boolean sum by binary search over
//!   counter bounds, re-solving from scratch each step.
//! * [`puzzles`]: Roadrunner, Masyu, Shingoki and Tapa models with
//!   independent verifiers, registered by name.

pub mod cnf;
pub mod graph;
pub mod optimize;
pub mod puzzles;
pub mod sat;
