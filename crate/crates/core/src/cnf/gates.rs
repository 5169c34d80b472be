//! Tseitin definitions of the Boolean connectives.

use super::formula::CnfBuilder;
use super::lit::Lit;

impl CnfBuilder {
    /// Returns `g` with `g <=> (l1 & l2 & ...)`. A single input is returned
    /// unchanged and an empty conjunction is the true literal.
    pub fn gate_and(&mut self, lits: &[Lit]) -> Lit {
        match lits {
            [] => self.true_lit(),
            [one] => *one,
            _ => {
                let g = self.new_var();
                for &l in lits {
                    self.add_clause(&[!g, l]);
                }
                let mut big: Vec<Lit> = lits.iter().map(|&l| !l).collect();
                big.push(g);
                self.add_clause(&big);
                g
            }
        }
    }

    /// Returns `g` with `g <=> (l1 | l2 | ...)`.
    pub fn gate_or(&mut self, lits: &[Lit]) -> Lit {
        let negated: Vec<Lit> = lits.iter().map(|&l| !l).collect();
        !self.gate_and(&negated)
    }

    pub fn gate_implies(&mut self, a: Lit, b: Lit) -> Lit {
        self.gate_or(&[!a, b])
    }

    /// Returns `g` with `g <=> (a <=> b)`.
    pub fn gate_iff(&mut self, a: Lit, b: Lit) -> Lit {
        !self.gate_xor(a, b)
    }

    /// Returns `g` with `g <=> (a ^ b)`.
    pub fn gate_xor(&mut self, a: Lit, b: Lit) -> Lit {
        if a == b {
            return self.false_lit();
        }
        if a == !b {
            return self.true_lit();
        }
        let g = self.new_var();
        self.add_clause(&[!g, a, b]);
        self.add_clause(&[!g, !a, !b]);
        self.add_clause(&[g, !a, b]);
        self.add_clause(&[g, a, !b]);
        g
    }
}
