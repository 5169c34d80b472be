//! Solving CNF formulas: the [`SatBackend`] trait, a built-in CDCL solver, a
//! subprocess driver for external solvers and a name-keyed registry.

mod cdcl;
mod external;
mod model;

use std::collections::BTreeMap;
use std::time::Duration;

use thiserror::Error;

use crate::cnf::Cnf;

pub use cdcl::InternalSolver;
pub use external::{parse_solver_output, ExternalSolver, SolverReport};
pub use model::{check_model, Model};

/// Environment variable naming the default solver (a registry name or a
/// command line).
pub const SOLVER_ENV: &str = "REACHSAT_SOLVER";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("model does not assign variable {0}")]
    MissingAssignment(u32),
    #[error("solver `{0}` returned a model that violates the formula")]
    BadModel(String),
    #[error("solver protocol error: {0}")]
    Protocol(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("solver configuration: {0}")]
    Config(String),
}

impl SatError {
    fn io(e: std::io::Error) -> SatError {
        SatError::Io(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Carries a model that has been checked against the formula.
    Sat(Model),
    Unsat,
    Unknown(String),
}

/// A complete SAT procedure.
pub trait SatBackend: Send + Sync {
    fn name(&self) -> String;
    fn solve(&self, cnf: &Cnf) -> Result<SolveOutcome, SatError>;
}

/// Options forwarded to whichever backend gets created.
#[derive(Clone, Debug, Default)]
pub struct BackendOptions {
    pub time_limit: Option<Duration>,
    pub seed: u64,
}

pub type BackendFactory = fn(&BackendOptions) -> Box<dyn SatBackend>;

/// Backends by name. Names that are not registered are treated as external
/// command lines.
pub struct BackendRegistry {
    factories: BTreeMap<&'static str, BackendFactory>,
}

impl Default for BackendRegistry {
    fn default() -> Self {
        let mut r = BackendRegistry {
            factories: BTreeMap::new(),
        };
        r.register("internal", |opts| {
            Box::new(InternalSolver {
                conflict_budget: None,
                time_limit: opts.time_limit,
                seed: opts.seed,
            })
        });
        r.register("splr", |opts| external("splr -q -C -r -", opts));
        r.register("kissat", |opts| external("kissat -q", opts));
        r.register("cadical", |opts| external("cadical -q", opts));
        r
    }
}

fn external(cmd: &str, opts: &BackendOptions) -> Box<dyn SatBackend> {
    let mut s =
        ExternalSolver::from_command_line(cmd).expect("built-in command lines are nonempty");
    s.time_limit = opts.time_limit;
    Box::new(s)
}

impl BackendRegistry {
    pub fn register(&mut self, name: &'static str, factory: BackendFactory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    /// Resolves `spec`: a registered name, `external:<cmd>`, or any command
    /// line containing whitespace or a path separator.
    pub fn create(
        &self,
        spec: &str,
        opts: &BackendOptions,
    ) -> Result<Box<dyn SatBackend>, SatError> {
        let spec = spec.trim();
        if let Some(factory) = self.factories.get(spec) {
            return Ok(factory(opts));
        }
        let cmd = spec.strip_prefix("external:").unwrap_or(spec);
        if cmd.len() != spec.len() || cmd.contains(char::is_whitespace) || cmd.contains('/') {
            let mut s = ExternalSolver::from_command_line(cmd)?;
            s.time_limit = opts.time_limit;
            return Ok(Box::new(s));
        }
        Err(SatError::Config(format!(
            "unknown solver `{spec}` (known: {})",
            self.names().collect::<Vec<_>>().join(", ")
        )))
    }

    /// The backend named by `$REACHSAT_SOLVER`, or the internal solver.
    pub fn default_backend(&self, opts: &BackendOptions) -> Result<Box<dyn SatBackend>, SatError> {
        let spec = std::env::var(SOLVER_ENV).unwrap_or_else(|_| "internal".to_string());
        self.create(&spec, opts)
    }
}
