//! Little-endian bit vectors of literals and the ripple-carry increment used
//! by the distance encodings.

use super::formula::CnfBuilder;
use super::lit::{Lit, Valuation};
use super::CnfError;

/// An unsigned integer held in literals, least significant bit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    bits: Vec<Lit>,
}

impl BitVec {
    pub fn from_bits(bits: Vec<Lit>) -> BitVec {
        assert!(!bits.is_empty(), "a bit vector needs at least one bit");
        BitVec { bits }
    }

    pub fn bits(&self) -> &[Lit] {
        &self.bits
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn value<V: Valuation + ?Sized>(&self, val: &V) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| val.value(b))
            .map(|(i, _)| 1u64 << i)
            .sum()
    }

    fn max_value(&self) -> u64 {
        if self.bits.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.bits.len()) - 1
        }
    }
}

/// `x + 1` as defined literals, plus the carry out of the top bit.
#[derive(Clone, Debug)]
pub struct Increment {
    pub sum: BitVec,
    pub overflow: Lit,
}

/// Smallest width that can hold `0..n`: `max(1, ceil(log2 n))`.
pub fn distance_width(n: usize) -> usize {
    let mut width = 1;
    while (1usize << width) < n {
        width += 1;
    }
    width
}

impl CnfBuilder {
    pub fn new_bitvec(&mut self, width: usize) -> BitVec {
        BitVec::from_bits(self.new_vars(width))
    }

    /// Defines `x + 1` with a ripple of carry gates.
    pub fn bitvec_increment(&mut self, x: &BitVec) -> Increment {
        let mut sum = Vec::with_capacity(x.width());
        sum.push(!x.bits[0]);
        let mut carry = x.bits[0];
        for &bit in &x.bits[1..] {
            sum.push(self.gate_xor(bit, carry));
            carry = self.gate_and(&[bit, carry]);
        }
        Increment {
            sum: BitVec::from_bits(sum),
            overflow: carry,
        }
    }

    /// `guard -> (x == y)`, two clauses per bit.
    pub fn bitvec_eq(&mut self, x: &BitVec, y: &BitVec, guard: Lit) -> Result<(), CnfError> {
        if x.width() != y.width() {
            return Err(CnfError::WidthMismatch(x.width(), y.width()));
        }
        for (&a, &b) in x.bits.iter().zip(&y.bits) {
            self.add_clause(&[!guard, !a, b]);
            self.add_clause(&[!guard, a, !b]);
        }
        Ok(())
    }

    /// `guard -> (y == x + 1)` with overflow of `x` excluded.
    pub fn bitvec_successor(&mut self, x: &BitVec, y: &BitVec, guard: Lit) -> Result<(), CnfError> {
        if x.width() != y.width() {
            return Err(CnfError::WidthMismatch(x.width(), y.width()));
        }
        let inc = self.bitvec_increment(x);
        self.bitvec_successor_of(&inc, y, guard)
    }

    /// Like [`CnfBuilder::bitvec_successor`] but reuses an increment already
    /// built for `x`.
    pub fn bitvec_successor_of(
        &mut self,
        inc: &Increment,
        y: &BitVec,
        guard: Lit,
    ) -> Result<(), CnfError> {
        self.bitvec_eq(&inc.sum, y, guard)?;
        self.add_clause(&[!guard, !inc.overflow]);
        Ok(())
    }

    /// `guard -> (x == c)`, one clause per bit.
    pub fn bitvec_eq_const(&mut self, x: &BitVec, c: u64, guard: Lit) -> Result<(), CnfError> {
        if c > x.max_value() {
            return Err(CnfError::OutOfRange {
                what: "bit-vector constant",
                value: c,
                max: x.max_value(),
            });
        }
        for (i, &bit) in x.bits.iter().enumerate() {
            let lit = if c >> i & 1 == 1 { bit } else { !bit };
            self.add_clause(&[!guard, lit]);
        }
        Ok(())
    }

    /// Unconditionally `x <= m`. No clauses when `m` covers the full range.
    pub fn bitvec_le_const(&mut self, x: &BitVec, m: u64) {
        if m >= x.max_value() {
            return;
        }
        // x > m iff at some bit m has 0, x has 1, and all higher bits agree
        // with the 1-bits of m. Forbid each such prefix.
        for i in 0..x.width() {
            if m >> i & 1 == 1 {
                continue;
            }
            let mut clause = vec![!x.bits[i]];
            for j in i + 1..x.width() {
                if m >> j & 1 == 1 {
                    clause.push(!x.bits[j]);
                }
            }
            self.add_clause(&clause);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(distance_width(1), 1);
        assert_eq!(distance_width(2), 1);
        assert_eq!(distance_width(3), 2);
        assert_eq!(distance_width(4), 2);
        assert_eq!(distance_width(5), 3);
        assert_eq!(distance_width(9), 4);
        assert_eq!(distance_width(16), 4);
        assert_eq!(distance_width(17), 5);
    }

    #[test]
    fn eq_const_range() {
        let mut b = CnfBuilder::new();
        let x = b.new_bitvec(3);
        let t = b.true_lit();
        assert!(b.bitvec_eq_const(&x, 8, t).is_err());
        let before = b.num_clauses();
        b.bitvec_eq_const(&x, 5, t).unwrap();
        let added: Vec<_> = b.cnf().clauses()[before..]
            .iter()
            .map(|c| c.lits().to_vec())
            .collect();
        let bits = x.bits();
        assert_eq!(
            added,
            vec![vec![!t, bits[0]], vec![!t, !bits[1]], vec![!t, bits[2]]]
        );
    }

    #[test]
    fn width_mismatch() {
        let mut b = CnfBuilder::new();
        let x = b.new_bitvec(3);
        let y = b.new_bitvec(2);
        let t = b.true_lit();
        assert_eq!(
            b.bitvec_successor(&x, &y, t),
            Err(CnfError::WidthMismatch(3, 2))
        );
    }
}
