//! The sequence `N(a,b)` of all values `a·m + b·n` (`m, n ≥ 0`) in
//! nondecreasing order with multiplicity.
//!
//! Entries are produced by a k-way merge of the arithmetic progressions
//! `{a·m + b·n}_m`, one per row `n`. A row is opened only once the first
//! entry of the previous row has been emitted, so the frontier never holds
//! more than one cell per open row.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;

use crate::arith::PerturbedValue;
use crate::error::{EchError, Result};

/// Lattice point `(m, n)` realizing a staircase value `a·m + b·n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub m: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseEntry {
    pub value: PerturbedValue,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct Staircase {
    a: PerturbedValue,
    b: PerturbedValue,
    entries: Vec<StaircaseEntry>,
    frontier: BinaryHeap<Reverse<(PerturbedValue, Witness)>>,
}

impl Staircase {
    pub fn new(a: PerturbedValue, b: PerturbedValue) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(EchError::RejectedInput(format!(
                "staircase generators must be positive, got a = {a}, b = {b}"
            )));
        }
        let mut frontier = BinaryHeap::new();
        frontier.push(Reverse((PerturbedValue::zero(), Witness { m: 0, n: 0 })));
        Ok(Staircase {
            a,
            b,
            entries: Vec::new(),
            frontier,
        })
    }

    /// Builds a staircase holding its first `count` entries.
    pub fn generate(a: PerturbedValue, b: PerturbedValue, count: usize) -> Result<Self> {
        let mut s = Self::new(a, b)?;
        s.extend_to(count);
        Ok(s)
    }

    pub fn a(&self) -> &PerturbedValue {
        &self.a
    }

    pub fn b(&self) -> &PerturbedValue {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[StaircaseEntry] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = &PerturbedValue> {
        self.entries.iter().map(|e| &e.value)
    }

    fn value_at(&self, w: Witness) -> PerturbedValue {
        &(&self.a * w.m) + &(&self.b * w.n)
    }

    /// Generates entries until at least `count` are held.
    pub fn extend_to(&mut self, count: usize) {
        while self.entries.len() < count {
            let Reverse((value, w)) = self.frontier.pop().expect("frontier is never empty");
            let right = Witness { m: w.m + 1, n: w.n };
            self.frontier.push(Reverse((self.value_at(right), right)));
            if w.m == 0 {
                let up = Witness { m: 0, n: w.n + 1 };
                self.frontier.push(Reverse((self.value_at(up), up)));
            }
            self.entries.push(StaircaseEntry { value, witness: w });
        }
    }

    /// Generates entries until every value `≤ bound` is held.
    pub fn extend_through(&mut self, bound: &PerturbedValue) {
        while self
            .frontier
            .peek()
            .is_some_and(|Reverse((v, _))| v <= bound)
        {
            let n = self.entries.len() + 1;
            self.extend_to(n);
        }
    }

    pub fn get(&self, k: usize) -> Result<&StaircaseEntry> {
        self.entries.get(k).ok_or(EchError::OutOfRange {
            index: k,
            len: self.entries.len(),
        })
    }

    /// `#{ j ≤ k : N_j = N_k }`.
    pub fn repeat_count(&self, k: usize) -> Result<usize> {
        let target = &self.get(k)?.value;
        Ok(self.entries[..=k]
            .iter()
            .rev()
            .take_while(|e| &e.value == target)
            .count())
    }
}

/// First `count` entries of `N(a,b)`; equal values are ordered
/// lexicographically by witness `(m, n)`.
pub fn staircase_sequence(
    a: PerturbedValue,
    b: PerturbedValue,
    count: usize,
) -> Result<Vec<StaircaseEntry>> {
    Ok(Staircase::generate(a, b, count)?.entries)
}

/// `N_k(a, b)` for integer generators, the case the T(2,q) spectrum uses.
pub fn integer_staircase(a: i64, b: i64, count: usize) -> Result<Vec<BigInt>> {
    let s = Staircase::generate(PerturbedValue::from_int(a), PerturbedValue::from_int(b), count)?;
    Ok(s.entries
        .into_iter()
        .map(|e| e.value.base.to_integer())
        .collect())
}
