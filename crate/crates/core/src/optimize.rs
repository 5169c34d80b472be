//! Branch-and-bound maximization of a Boolean sum.
//!
//! The objective is a [`UnaryCount`], so every bound `sum >= k` is one unit
//! clause. Each probe solves the base formula plus that clause from scratch.
//! The first probe is at the lower bound; later probes bisect the remaining
//! range, and a satisfying model moves the lower bound past the value the
//! model actually achieves.

use thiserror::Error;

use crate::cnf::{Cnf, UnaryCount};
use crate::sat::{Model, SatBackend, SatError, SolveOutcome};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OptimizeError {
    #[error("bounds {lo}..={hi} invalid for an objective over {size} literals")]
    Bounds { lo: usize, hi: usize, size: usize },
    #[error(transparent)]
    Sat(#[from] SatError),
}

/// Why no value above the optimum exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A probe at this bound (optimum + 1) was unsatisfiable.
    UnsatAt(usize),
    /// The optimum equals the upper bound of the search.
    UpperBound,
}

/// One solver call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    Sat { bound: usize, achieved: usize },
    Unsat { bound: usize },
    Unknown { bound: usize },
}

#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub best_model: Model,
    pub best_value: usize,
    pub solve_calls: usize,
    pub certificate: Certificate,
    pub probes: Vec<Probe>,
}

#[derive(Clone, Debug)]
pub enum OptimizeOutcome {
    Optimal(OptimizeResult),
    /// No model reaches the initial lower bound.
    Infeasible {
        probes: Vec<Probe>,
    },
    /// The solver gave up; the best model found so far, if any, is kept.
    Unknown {
        best: Option<(Model, usize)>,
        reason: String,
        probes: Vec<Probe>,
    },
}

impl OptimizeOutcome {
    pub fn probes(&self) -> &[Probe] {
        match self {
            OptimizeOutcome::Optimal(r) => &r.probes,
            OptimizeOutcome::Infeasible { probes } | OptimizeOutcome::Unknown { probes, .. } => {
                probes
            }
        }
    }
}

/// Maximizes `objective` over models of `base` within `lo..=hi`.
pub fn maximize<F>(
    base: &Cnf,
    objective: &UnaryCount,
    mut solve: F,
    lo: usize,
    hi: usize,
) -> Result<OptimizeOutcome, OptimizeError>
where
    F: FnMut(&Cnf) -> Result<SolveOutcome, SatError>,
{
    if lo > hi || hi > objective.len() {
        return Err(OptimizeError::Bounds {
            lo,
            hi,
            size: objective.len(),
        });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut probes = Vec::new();
    let mut best: Option<(Model, usize)> = None;
    let mut certificate = Certificate::UpperBound;
    let mut bound = lo;

    loop {
        let outcome = solve(&base.with_unit(objective.at_least(bound)))?;
        match outcome {
            SolveOutcome::Sat(model) => {
                let achieved = objective.value(&model);
                debug_assert!(achieved >= bound);
                probes.push(Probe::Sat { bound, achieved });
                lo = achieved + 1;
                best = Some((model, achieved));
            }
            SolveOutcome::Unsat => {
                probes.push(Probe::Unsat { bound });
                if best.is_none() {
                    return Ok(OptimizeOutcome::Infeasible { probes });
                }
                hi = bound - 1;
                certificate = Certificate::UnsatAt(bound);
            }
            SolveOutcome::Unknown(reason) => {
                probes.push(Probe::Unknown { bound });
                return Ok(OptimizeOutcome::Unknown {
                    best,
                    reason,
                    probes,
                });
            }
        }
        if lo > hi {
            break;
        }
        bound = lo + (hi - lo + 1) / 2;
    }

    let (best_model, best_value) = best.expect("loop exits only after a satisfying probe");
    if best_value >= hi && certificate != Certificate::UnsatAt(best_value + 1) {
        certificate = Certificate::UpperBound;
    }
    Ok(OptimizeOutcome::Optimal(OptimizeResult {
        best_model,
        best_value,
        solve_calls: probes.len(),
        certificate,
        probes,
    }))
}

/// [`maximize`] with a [`SatBackend`].
pub fn maximize_with(
    base: &Cnf,
    objective: &UnaryCount,
    backend: &dyn SatBackend,
    lo: usize,
    hi: usize,
) -> Result<OptimizeOutcome, OptimizeError> {
    maximize(base, objective, |cnf| backend.solve(cnf), lo, hi)
}
