//! Irrational ellipsoids `E(a, b)` and the unknot filtration, used as a
//! structurally independent check on the T(2,q) spectrum.
//!
//! The boundary of `E(a, b)` has two embedded Reeb orbits `γ1, γ2` of
//! actions `a` and `b`. With `a/b` irrational the generators `γ1^{m1} γ2^{m2}`
//! are graded by position in `N(a, b)`. Irrationality is emulated with the
//! formal `δ`: the ratio is nondegenerate when `(a.base, a.δ)` and
//! `(b.base, b.δ)` are not proportional.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{PerturbedValue, Rational};
use crate::error::{EchError, Result};
use crate::spectral::{ech_spectrum, SpectrumEntry};
use crate::staircase::{integer_staircase, Staircase, StaircaseEntry};
use crate::index::IndexEngine;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipsoidParams {
    a: PerturbedValue,
    b: PerturbedValue,
}

impl EllipsoidParams {
    pub fn new(a: PerturbedValue, b: PerturbedValue) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(EchError::RejectedInput(format!(
                "ellipsoid axes must be positive, got {a} and {b}"
            )));
        }
        // a·m = b·n has a solution with m, n > 0 iff the pairs are proportional
        let lhs = &a.base * Rational::from_integer(b.delta_coeff.clone());
        let rhs = &b.base * Rational::from_integer(a.delta_coeff.clone());
        if lhs == rhs {
            return Err(EchError::RejectedInput(format!(
                "ellipsoid E({a}, {b}) has a rational axis ratio"
            )));
        }
        Ok(EllipsoidParams { a, b })
    }

    pub fn a(&self) -> &PerturbedValue {
        &self.a
    }

    pub fn b(&self) -> &PerturbedValue {
        &self.b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipsoidGenerator {
    pub k: usize,
    pub m1: u64,
    pub m2: u64,
    pub action: PerturbedValue,
}

/// Grading-`2k` generators of `E(a, b)` for `k ≤ max_k`.
pub fn ellipsoid_generators(params: &EllipsoidParams, max_k: usize) -> Result<Vec<EllipsoidGenerator>> {
    let s = Staircase::generate(params.a.clone(), params.b.clone(), max_k + 1)?;
    Ok(s.entries()
        .iter()
        .enumerate()
        .map(|(k, StaircaseEntry { value, witness })| EllipsoidGenerator {
            k,
            m1: witness.m,
            m2: witness.n,
            action: value.clone(),
        })
        .collect())
}

/// `N_k(1, rot)`: the filtration threshold of grading `2k` for the unknot
/// with rotation number `rot`.
pub fn unknot_threshold(k: usize, rot: &PerturbedValue) -> Result<PerturbedValue> {
    let s = Staircase::generate(PerturbedValue::from_int(1), rot.clone(), k + 1)?;
    Ok(s.get(k)?.value.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckMismatch {
    pub k: usize,
    pub expected_degree: BigInt,
    pub rescaled_capacity: Rational,
    pub witness_degree: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub q: u32,
    pub count: usize,
    pub mismatches: Vec<CrosscheckMismatch>,
}

impl CrosscheckReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.pass() {
            return Ok(self);
        }
        let ks: Vec<String> = self.mismatches.iter().map(|m| m.k.to_string()).collect();
        Err(EchError::Verification(format!(
            "spectrum of q = {} disagrees with N(2,{}) at k = {}",
            self.q,
            self.q,
            ks.join(", ")
        )))
    }
}

/// Compares given spectrum entries against `N_k(2, q)` computed from the
/// staircase alone: `2q·c_k` and the witness degree must both equal it.
pub fn crosscheck_entries(engine: &IndexEngine, entries: &[SpectrumEntry]) -> Result<CrosscheckReport> {
    let q = engine.params().q();
    let n = integer_staircase(2, q as i64, entries.len())?;
    let scale = Rational::from_integer(BigInt::from(2 * q));
    let mismatches = entries
        .iter()
        .zip(n)
        .filter_map(|(e, nk)| {
            let rescaled = &e.c_k * &scale;
            let ok = rescaled == Rational::from_integer(nk.clone())
                && nk.to_u128() == Some(e.witness.degree);
            (!ok).then_some(CrosscheckMismatch {
                k: e.k,
                expected_degree: nk,
                rescaled_capacity: rescaled,
                witness_degree: e.witness.degree,
            })
        })
        .collect();
    Ok(CrosscheckReport {
        q,
        count: entries.len(),
        mismatches,
    })
}

pub fn crosscheck_spectrum(engine: &IndexEngine, count: usize) -> Result<CrosscheckReport> {
    let entries = ech_spectrum(engine, count)?;
    crosscheck_entries(engine, &entries)
}
