//! CNF construction: literals, the clause builder, Tseitin gates,
//! cardinality constraints, bit-vector arithmetic and DIMACS I/O.

mod bitvec;
mod card;
mod dimacs;
mod formula;
mod gates;
mod lit;

use thiserror::Error;

pub use bitvec::{distance_width, BitVec, Increment};
pub use card::UnaryCount;
pub use dimacs::{parse_dimacs, DimacsError};
pub use formula::{Clause, Cnf, CnfBuilder};
pub use lit::{Lit, Valuation, Var};

/// Precondition violations raised while building constraints.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("{what} {value} out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("bit-vector widths differ: {0} vs {1}")]
    WidthMismatch(usize, usize),
}
