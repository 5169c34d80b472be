//! A small conflict-driven clause-learning solver: two watched literals,
//! first-UIP learning, non-chronological backjumping and Luby restarts.
//!
//! Decisions always pick the lowest-index unassigned variable, so runs are
//! reproducible. The phase is positive unless a nonzero seed is given.

use std::time::{Duration, Instant};

use crate::cnf::Cnf;

use super::model::{check_model, Model};
use super::{SatBackend, SatError, SolveOutcome};

const NO_REASON: u32 = u32::MAX;

/// Configuration for the built-in solver.
#[derive(Clone, Debug, Default)]
pub struct InternalSolver {
    /// Give up with `Unknown` after this many conflicts.
    pub conflict_budget: Option<u64>,
    /// Give up with `Unknown` after this much wall time.
    pub time_limit: Option<Duration>,
    /// Zero keeps the positive-first phase; other values pick a fixed
    /// pseudo-random phase per variable.
    pub seed: u64,
}

impl InternalSolver {
    pub fn new() -> InternalSolver {
        InternalSolver::default()
    }

    pub fn solve_cnf(&self, cnf: &Cnf) -> Result<SolveOutcome, SatError> {
        if cnf.is_trivially_unsat() {
            return Ok(SolveOutcome::Unsat);
        }
        let mut search = Search::new(cnf, self.seed);
        let deadline = self.time_limit.map(|d| Instant::now() + d);
        match search.run(self.conflict_budget, deadline) {
            Status::Sat => {
                let model = search.model();
                if !check_model(cnf, &model)? {
                    return Err(SatError::BadModel("internal".into()));
                }
                Ok(SolveOutcome::Sat(model))
            }
            Status::Unsat => Ok(SolveOutcome::Unsat),
            Status::Budget(reason) => Ok(SolveOutcome::Unknown(reason)),
        }
    }
}

impl SatBackend for InternalSolver {
    fn name(&self) -> String {
        "internal".to_string()
    }

    fn solve(&self, cnf: &Cnf) -> Result<SolveOutcome, SatError> {
        self.solve_cnf(cnf)
    }
}

enum Status {
    Sat,
    Unsat,
    Budget(String),
}

// Literal codes: 2 * var for positive, 2 * var + 1 for negative.
#[inline]
fn code(dimacs: i32) -> u32 {
    let v = dimacs.unsigned_abs();
    2 * v + u32::from(dimacs < 0)
}

#[inline]
fn var_of(lit: u32) -> usize {
    (lit >> 1) as usize
}

struct Search {
    num_vars: usize,
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<u32>>,
    // per literal code: 1 true, -1 false, 0 unassigned
    values: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    next_decision: usize,
    phase: Vec<bool>,
    root_conflict: bool,
    conflicts: u64,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn luby(mut i: u64) -> u64 {
    // 1-based Luby sequence
    loop {
        let mut k = 1u32;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

impl Search {
    fn new(cnf: &Cnf, seed: u64) -> Search {
        let n = cnf.num_vars() as usize;
        let phase = (0..=n)
            .map(|v| seed == 0 || splitmix(seed ^ v as u64) & 1 == 1)
            .collect();
        let mut s = Search {
            num_vars: n,
            clauses: Vec::with_capacity(cnf.num_clauses()),
            watches: vec![Vec::new(); 2 * n + 2],
            values: vec![0; 2 * n + 2],
            level: vec![0; n + 1],
            reason: vec![NO_REASON; n + 1],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; n + 1],
            next_decision: 1,
            phase,
            root_conflict: false,
            conflicts: 0,
        };
        for clause in cnf.clauses() {
            let lits: Vec<u32> = clause.lits().iter().map(|l| code(l.to_dimacs())).collect();
            s.add_input_clause(lits);
        }
        s
    }

    fn add_input_clause(&mut self, lits: Vec<u32>) {
        if self.root_conflict {
            return;
        }
        if lits.len() == 1 {
            match self.value(lits[0]) {
                1 => {}
                -1 => self.root_conflict = true,
                _ => self.assign(lits[0], NO_REASON),
            }
            return;
        }
        self.attach(lits);
    }

    fn attach(&mut self, lits: Vec<u32>) -> u32 {
        let ci = self.clauses.len() as u32;
        self.watches[lits[0] as usize].push(ci);
        self.watches[lits[1] as usize].push(ci);
        self.clauses.push(lits);
        ci
    }

    #[inline]
    fn value(&self, lit: u32) -> i8 {
        self.values[lit as usize]
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn assign(&mut self, lit: u32, reason: u32) {
        let v = var_of(lit);
        self.values[lit as usize] = 1;
        self.values[(lit ^ 1) as usize] = -1;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    /// Returns the index of a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let clause = &mut self.clauses[ci as usize];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.values[first as usize] == 1 {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    if self.values[clause[k] as usize] != -1 {
                        clause.swap(1, k);
                        self.watches[clause[1] as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if self.values[first as usize] == -1 {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.assign(first, ci);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<u32>, u32) {
        let current = self.decision_level();
        let mut learnt = vec![0u32];
        let mut pending = 0usize;
        let mut idx = self.trail.len();
        let mut skip_first = false;
        let uip = loop {
            let clause = &self.clauses[confl as usize];
            let start = usize::from(skip_first);
            for &q in &clause[start..] {
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[var_of(p)] = false;
            pending -= 1;
            if pending == 0 {
                break p;
            }
            confl = self.reason[var_of(p)];
            skip_first = true;
        };
        learnt[0] = uip ^ 1;
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var_of(learnt[k])] > self.level[var_of(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[var_of(learnt[1])];
        }
        (learnt, back)
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let lit = self.trail[k];
            let v = var_of(lit);
            self.values[lit as usize] = 0;
            self.values[(lit ^ 1) as usize] = 0;
            self.reason[v] = NO_REASON;
            if v < self.next_decision {
                self.next_decision = v;
            }
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<u32> {
        while self.next_decision <= self.num_vars {
            let v = self.next_decision;
            if self.values[2 * v] == 0 {
                let lit = if self.phase[v] { 2 * v } else { 2 * v + 1 };
                return Some(lit as u32);
            }
            self.next_decision += 1;
        }
        None
    }

    fn run(&mut self, budget: Option<u64>, deadline: Option<Instant>) -> Status {
        if self.root_conflict {
            return Status::Unsat;
        }
        let mut restart_count = 1u64;
        let mut until_restart = 100 * luby(restart_count);
        loop {
            if let Some(ci) = self.propagate() {
                self.conflicts += 1;
                if self.decision_level() == 0 {
                    return Status::Unsat;
                }
                let (learnt, back) = self.analyze(ci);
                self.cancel_until(back);
                if learnt.len() == 1 {
                    self.assign(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let ci = self.attach(learnt);
                    self.assign(first, ci);
                }
                if budget.is_some_and(|b| self.conflicts >= b) {
                    return Status::Budget(format!(
                        "conflict budget of {} exhausted",
                        self.conflicts
                    ));
                }
                if self.conflicts % 256 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                    return Status::Budget("time limit reached".to_string());
                }
                until_restart -= 1;
                if until_restart == 0 {
                    restart_count += 1;
                    until_restart = 100 * luby(restart_count);
                    self.cancel_until(0);
                }
            } else {
                match self.pick_branch() {
                    None => return Status::Sat,
                    Some(lit) => {
                        self.trail_lim.push(self.trail.len());
                        self.assign(lit, NO_REASON);
                    }
                }
            }
        }
    }

    fn model(&self) -> Model {
        let values: Vec<bool> = (1..=self.num_vars)
            .map(|v| self.values[2 * v] == 1)
            .collect();
        Model::from_values(&values)
    }
}
