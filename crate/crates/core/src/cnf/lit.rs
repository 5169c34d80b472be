use std::fmt;
use std::num::NonZeroU32;
use std::ops::Not;

/// A propositional variable. Indexes start at 1 and are dense per builder.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(NonZeroU32);

impl Var {
    /// Returns `None` for index 0 or for indexes that do not fit a DIMACS literal.
    pub fn new(index: u32) -> Option<Var> {
        if index > i32::MAX as u32 {
            return None;
        }
        NonZeroU32::new(index).map(Var)
    }

    pub fn index(self) -> u32 {
        self.0.get()
    }

    pub fn pos(self) -> Lit {
        Lit(self.index() as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.index() as i32))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal, stored in its signed DIMACS form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        if positive {
            var.pos()
        } else {
            var.neg()
        }
    }

    pub fn from_dimacs(value: i32) -> Option<Lit> {
        if value == 0 || value == i32::MIN {
            None
        } else {
            Some(Lit(value))
        }
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(NonZeroU32::new(self.0.unsigned_abs()).expect("literal is never zero"))
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

// Order by variable first so sorted clauses read like DIMACS output.
impl Ord for Lit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.unsigned_abs(), self.0 < 0).cmp(&(other.0.unsigned_abs(), other.0 < 0))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Anything that can report the truth value of a literal.
pub trait Valuation {
    fn value(&self, lit: Lit) -> bool;
}

impl<F: Fn(Lit) -> bool> Valuation for F {
    fn value(&self, lit: Lit) -> bool {
        self(lit)
    }
}
