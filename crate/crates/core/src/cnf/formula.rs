use std::collections::BTreeMap;
use std::io::{self, Write};

use super::lit::{Lit, Var};

/// A normalized clause: sorted by variable, no duplicate literals, never a
/// tautology, never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// Normalizes `lits`. Returns `Ok(None)` for a tautology and `Err(())` for
    /// an empty clause.
    fn normalize(lits: &[Lit]) -> Result<Option<Clause>, ()> {
        if lits.is_empty() {
            return Err(());
        }
        let mut sorted = lits.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.windows(2).any(|w| w[0].var() == w[1].var()) {
            return Ok(None);
        }
        Ok(Some(Clause(sorted)))
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A CNF formula. Clauses are normalized on insertion; an empty clause is
/// recorded as a flag rather than stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Clause>,
    unsat: bool,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Cnf {
        Cnf {
            num_vars,
            ..Cnf::default()
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// True once an empty clause has been added.
    pub fn is_trivially_unsat(&self) -> bool {
        self.unsat
    }

    /// Adds a clause, growing `num_vars` to cover its variables.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        match Clause::normalize(lits) {
            Err(()) => self.unsat = true,
            Ok(None) => {}
            Ok(Some(clause)) => {
                let top = clause.0.iter().map(|l| l.var().index()).max().unwrap_or(0);
                self.num_vars = self.num_vars.max(top);
                self.clauses.push(clause);
            }
        }
    }

    pub fn ensure_vars(&mut self, num_vars: u32) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    /// A copy of this formula with one extra unit clause.
    pub fn with_unit(&self, lit: Lit) -> Cnf {
        let mut cnf = self.clone();
        cnf.add_clause(&[lit]);
        cnf
    }

    /// Writes the formula in DIMACS CNF. A trivially unsatisfiable formula is
    /// written as the canonical two-clause contradiction over variable 1.
    pub fn write_dimacs<W: Write>(&self, out: &mut W) -> io::Result<()> {
        if self.unsat {
            return out.write_all(b"p cnf 1 2\n1 0\n-1 0\n");
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        let mut line = String::new();
        for clause in &self.clauses {
            line.clear();
            for lit in clause.lits() {
                line.push_str(&lit.to_dimacs().to_string());
                line.push(' ');
            }
            line.push_str("0\n");
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_dimacs_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("DIMACS output is ASCII")
    }
}

/// Incrementally builds a [`Cnf`], allocating fresh variables. Variable 1 is
/// reserved as a constant and asserted true by a unit clause.
#[derive(Clone, Debug)]
pub struct CnfBuilder {
    cnf: Cnf,
    top: Lit,
    names: BTreeMap<u32, String>,
}

impl Default for CnfBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl CnfBuilder {
    pub fn new() -> CnfBuilder {
        let mut cnf = Cnf::new(1);
        let top = Var::new(1).unwrap().pos();
        cnf.add_clause(&[top]);
        let mut names = BTreeMap::new();
        names.insert(1, "true".to_string());
        CnfBuilder { cnf, top, names }
    }

    pub fn new_var(&mut self) -> Lit {
        let index = self.cnf.num_vars + 1;
        self.cnf.num_vars = index;
        Var::new(index).expect("variable space exhausted").pos()
    }

    pub fn new_named_var(&mut self, name: impl Into<String>) -> Lit {
        let lit = self.new_var();
        self.names.insert(lit.var().index(), name.into());
        lit
    }

    pub fn new_vars(&mut self, count: usize) -> Vec<Lit> {
        (0..count).map(|_| self.new_var()).collect()
    }

    pub fn set_name(&mut self, var: Var, name: impl Into<String>) {
        self.names.insert(var.index(), name.into());
    }

    pub fn name(&self, var: Var) -> Option<&str> {
        self.names.get(&var.index()).map(String::as_str)
    }

    pub fn names(&self) -> impl Iterator<Item = (u32, &str)> {
        self.names.iter().map(|(k, v)| (*k, v.as_str()))
    }

    /// The literal that is always true.
    pub fn true_lit(&self) -> Lit {
        self.top
    }

    pub fn false_lit(&self) -> Lit {
        !self.top
    }

    /// Adds a clause. Tautologies are dropped, duplicate literals merged, and
    /// an empty clause marks the formula trivially unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        debug_assert!(lits.iter().all(|l| l.var().index() <= self.cnf.num_vars));
        self.cnf.add_clause(lits);
    }

    pub fn add_unit(&mut self, lit: Lit) {
        self.add_clause(&[lit]);
    }

    pub fn num_vars(&self) -> u32 {
        self.cnf.num_vars()
    }

    pub fn num_clauses(&self) -> usize {
        self.cnf.num_clauses()
    }

    pub fn is_trivially_unsat(&self) -> bool {
        self.cnf.is_trivially_unsat()
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn into_cnf(self) -> Cnf {
        self.cnf
    }

    /// Writes the variable map sidecar: one `<index> <name>` line per named
    /// variable.
    pub fn write_var_map<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for (index, name) in &self.names {
            writeln!(out, "{index} {name}")?;
        }
        Ok(())
    }
}
