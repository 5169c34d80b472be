use crate::cnf::{Cnf, Lit, Valuation, Var};

use super::SatError;

/// A total assignment to variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    // index 0 unused
    values: Vec<bool>,
}

impl Model {
    pub fn new(num_vars: u32) -> Model {
        Model {
            values: vec![false; num_vars as usize + 1],
        }
    }

    pub fn from_values(values: &[bool]) -> Model {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(false);
        v.extend_from_slice(values);
        Model { values: v }
    }

    pub fn num_vars(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn set(&mut self, var: Var, value: bool) {
        let i = var.index() as usize;
        if i >= self.values.len() {
            self.values.resize(i + 1, false);
        }
        self.values[i] = value;
    }

    pub fn var_value(&self, var: Var) -> Option<bool> {
        self.values.get(var.index() as usize).copied()
    }

    /// Literals true under this model, in variable order.
    pub fn true_lits(&self) -> impl Iterator<Item = Lit> + '_ {
        (1..self.values.len()).map(|i| {
            let var = Var::new(i as u32).unwrap();
            Lit::new(var, self.values[i])
        })
    }
}

impl Valuation for Model {
    fn value(&self, lit: Lit) -> bool {
        let v = self.values[lit.var().index() as usize];
        v == lit.is_positive()
    }
}

/// True iff every clause has a satisfied literal. Fails if the model does not
/// cover a variable used by the formula.
pub fn check_model(cnf: &Cnf, model: &Model) -> Result<bool, SatError> {
    if cnf.is_trivially_unsat() {
        return Ok(false);
    }
    for clause in cnf.clauses() {
        let mut sat = false;
        for &lit in clause.lits() {
            match model.var_value(lit.var()) {
                None => return Err(SatError::MissingAssignment(lit.var().index())),
                Some(v) if v == lit.is_positive() => {
                    sat = true;
                    break;
                }
                Some(_) => {}
            }
        }
        if !sat {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_formula_is_satisfied() {
        assert!(check_model(&Cnf::new(0), &Model::new(0)).unwrap());
    }

    #[test]
    fn falsified_unit() {
        let mut cnf = Cnf::new(1);
        cnf.add_clause(&[Lit::from_dimacs(1).unwrap()]);
        assert!(!check_model(&cnf, &Model::from_values(&[false])).unwrap());
        assert!(check_model(&cnf, &Model::from_values(&[true])).unwrap());
    }

    #[test]
    fn missing_variable() {
        let mut cnf = Cnf::new(3);
        cnf.add_clause(&[Lit::from_dimacs(-3).unwrap()]);
        assert_eq!(
            check_model(&cnf, &Model::from_values(&[true])),
            Err(SatError::MissingAssignment(3))
        );
    }
}
