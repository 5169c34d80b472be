//! Cardinality constraints: at-most/at-least/exactly-one and a totalizer
//! counter exposing threshold literals.

use super::formula::CnfBuilder;
use super::lit::{Lit, Valuation};
use super::CnfError;

/// Above this many literals at-most-one switches from pairwise to a ladder.
const PAIRWISE_LIMIT: usize = 6;

/// Unary representation of a Boolean sum: `outputs[i]` holds iff at least
/// `i + 1` inputs are true. Outputs are monotone. A capped counter stops at
/// `cap` outputs, the last one meaning "at least cap".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryCount {
    outputs: Vec<Lit>,
    inputs: usize,
    top: Lit,
}

impl UnaryCount {
    pub fn outputs(&self) -> &[Lit] {
        &self.outputs
    }

    /// Largest value the counter distinguishes: the number of inputs unless
    /// capped.
    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    /// Number of inputs counted.
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn is_capped(&self) -> bool {
        self.outputs.len() < self.inputs
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    /// Literal equivalent to `sum >= k`; constant for `k == 0` or `k` above
    /// the input count.
    ///
    /// # Panics
    /// On a capped counter when `cap < k <= inputs`.
    pub fn at_least(&self, k: usize) -> Lit {
        self.threshold(k)
            .expect("threshold above the counter's cap")
    }

    fn threshold(&self, k: usize) -> Result<Lit, CnfError> {
        if k == 0 {
            Ok(self.top)
        } else if k > self.inputs {
            Ok(!self.top)
        } else if k > self.outputs.len() {
            Err(CnfError::OutOfRange {
                what: "threshold of a capped count",
                value: k as u64,
                max: self.outputs.len() as u64,
            })
        } else {
            Ok(self.outputs[k - 1])
        }
    }

    /// The sum under an assignment, read off the outputs (saturating at the
    /// cap).
    pub fn value<V: Valuation + ?Sized>(&self, val: &V) -> usize {
        self.outputs.iter().take_while(|&&o| val.value(o)).count()
    }

    fn check(&self, k: usize) -> Result<(), CnfError> {
        if k > self.inputs {
            Err(CnfError::OutOfRange {
                what: "count bound",
                value: k as u64,
                max: self.inputs as u64,
            })
        } else {
            Ok(())
        }
    }
}

impl CnfBuilder {
    pub fn at_least_one(&mut self, lits: &[Lit]) {
        self.add_clause(lits);
    }

    pub fn at_most_one(&mut self, lits: &[Lit]) {
        if lits.len() <= PAIRWISE_LIMIT {
            for (i, &a) in lits.iter().enumerate() {
                for &b in &lits[i + 1..] {
                    self.add_clause(&[!a, !b]);
                }
            }
            return;
        }
        // Sequential counter: s[i] means "some of lits[..=i] is true".
        let n = lits.len();
        let s = self.new_vars(n - 1);
        self.add_clause(&[!lits[0], s[0]]);
        for i in 1..n - 1 {
            self.add_clause(&[!lits[i], s[i]]);
            self.add_clause(&[!s[i - 1], s[i]]);
            self.add_clause(&[!lits[i], !s[i - 1]]);
        }
        self.add_clause(&[!lits[n - 1], !s[n - 2]]);
    }

    pub fn exactly_one(&mut self, lits: &[Lit]) {
        self.at_least_one(lits);
        self.at_most_one(lits);
    }

    /// Builds a totalizer over `lits`. Outputs are fully defined in both
    /// directions, so any bound is a single unit clause.
    pub fn unary_count(&mut self, lits: &[Lit]) -> UnaryCount {
        self.unary_count_upto(lits, lits.len())
    }

    /// A totalizer truncated to `cap` outputs: thresholds above `cap` are not
    /// available, and the clause count drops from quadratic in the inputs to
    /// `O(n * cap)`.
    pub fn unary_count_upto(&mut self, lits: &[Lit], cap: usize) -> UnaryCount {
        let cap = cap.min(lits.len());
        let outputs = if cap == 0 {
            Vec::new()
        } else {
            self.totalize(lits, cap)
        };
        UnaryCount {
            outputs,
            inputs: lits.len(),
            top: self.true_lit(),
        }
    }

    fn totalize(&mut self, lits: &[Lit], cap: usize) -> Vec<Lit> {
        if lits.len() == 1 {
            return vec![lits[0]];
        }
        let (left, right) = lits.split_at(lits.len() / 2);
        let a = self.totalize(left, cap);
        let b = self.totalize(right, cap);
        let out = self.new_vars((a.len() + b.len()).min(cap));
        for i in 0..=a.len() {
            for j in 0..=b.len() {
                // a >= i && b >= j  =>  out >= i + j
                if i + j > 0 && i + j <= out.len() {
                    let mut c = vec![out[i + j - 1]];
                    if i > 0 {
                        c.push(!a[i - 1]);
                    }
                    if j > 0 {
                        c.push(!b[j - 1]);
                    }
                    self.add_clause(&c);
                }
                // a <= i && b <= j  =>  out <= i + j
                if i + j < out.len() {
                    let mut c = vec![!out[i + j]];
                    if i < a.len() {
                        c.push(a[i]);
                    }
                    if j < b.len() {
                        c.push(b[j]);
                    }
                    self.add_clause(&c);
                }
            }
        }
        for k in 1..out.len() {
            self.add_clause(&[!out[k], out[k - 1]]);
        }
        out
    }

    /// Asserts `sum == k`.
    pub fn fix_count(&mut self, count: &UnaryCount, k: usize) -> Result<(), CnfError> {
        count.check(k)?;
        self.bound_ge(count, k)?;
        self.bound_le(count, k)
    }

    /// Asserts `sum >= k`.
    pub fn bound_ge(&mut self, count: &UnaryCount, k: usize) -> Result<(), CnfError> {
        count.check(k)?;
        if k > 0 {
            let t = count.threshold(k)?;
            self.add_unit(t);
        }
        Ok(())
    }

    /// Asserts `sum <= k`.
    pub fn bound_le(&mut self, count: &UnaryCount, k: usize) -> Result<(), CnfError> {
        count.check(k)?;
        if k < count.inputs() {
            let t = count.threshold(k + 1)?;
            self.add_unit(!t);
        }
        Ok(())
    }
}
