//! The graded chain complex, the ECH spectrum and knot-filtered ranks.
//!
//! Every admissible current is a cycle: all gradings are even, so the
//! differential vanishes and the complex is its own homology. There is one
//! generator in each even grading, and [`GradedComplex::build`] certifies
//! this bijection over the range it returns.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{PerturbedValue, Rational};
use crate::error::{EchError, Result};
use crate::index::IndexEngine;
use crate::orbit::{action, degree, enumerate_generators, FibrationParams, ReebCurrent};
use crate::staircase::Staircase;

/// Rotation number of the binding in its Seifert-surface framing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotMode {
    /// `rot(b) = 2q`.
    Exact,
    /// `rot(b) = 2q + δ`.
    Perturbed,
}

impl fmt::Display for RotMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RotMode::Exact => "exact",
            RotMode::Perturbed => "perturbed",
        })
    }
}

impl FromStr for RotMode {
    type Err = EchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RotMode::Exact),
            "perturbed" => Ok(RotMode::Perturbed),
            _ => Err(EchError::RejectedInput(format!("unknown rotation mode {s:?}"))),
        }
    }
}

/// `F_b(b^B α) = B·rot(b) + ℓ(α, b)`, which is `d` or `d + B·δ`.
pub fn knot_filtration(params: &FibrationParams, c: &ReebCurrent, mode: RotMode) -> PerturbedValue {
    let base = Rational::from_integer(BigInt::from(degree(params, c)));
    match mode {
        RotMode::Exact => PerturbedValue::new(base, 0),
        RotMode::Perturbed => PerturbedValue::new(base, c.b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedGenerator {
    pub grading: u64,
    pub current: ReebCurrent,
    pub degree: u128,
    pub action: Rational,
}

impl GradedGenerator {
    pub fn filtration(&self, params: &FibrationParams, mode: RotMode) -> PerturbedValue {
        knot_filtration(params, &self.current, mode)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub k: usize,
    pub c_k: Rational,
    pub witness: GradedGenerator,
}

/// Generators in gradings `0, 2, …, 2·max_k`, one per grading.
#[derive(Debug, Clone)]
pub struct GradedComplex {
    params: FibrationParams,
    generators: Vec<GradedGenerator>,
    staircase: Staircase,
}

impl GradedComplex {
    /// Enumerates every current of degree `≤ N_{max_k}(2,q) + 2q` and checks
    /// that the `j`-th one in degree order has grading exactly `2j`.
    pub fn build(engine: &IndexEngine, max_k: usize) -> Result<Self> {
        let params = *engine.params();
        let q = params.q() as i64;
        let staircase = Staircase::generate(
            PerturbedValue::from_int(2),
            PerturbedValue::from_int(q),
            max_k + 1,
        )?;
        let top = staircase.get(max_k)?.value.base.to_integer();
        let bound = top.to_u128().expect("staircase values are nonnegative") + 2 * q as u128;

        let currents = enumerate_generators(&params, bound);
        let mut bad = Vec::new();
        let mut generators = Vec::with_capacity(max_k + 1);
        for (j, current) in currents.into_iter().enumerate() {
            let index = engine.ech_index(&current);
            let want = BigInt::from(2 * j as u64);
            if index != want {
                bad.push(format!("{current}: index {index}, expected {want}"));
                if bad.len() >= 8 {
                    break;
                }
                continue;
            }
            if j <= max_k {
                generators.push(GradedGenerator {
                    grading: 2 * j as u64,
                    degree: degree(&params, &current),
                    action: action(&params, &current),
                    current,
                });
            }
        }
        if !bad.is_empty() {
            return Err(EchError::Verification(format!(
                "gradings are not 0, 2, 4, … for q = {q}: {}",
                bad.join("; ")
            )));
        }
        if generators.len() <= max_k {
            return Err(EchError::Verification(format!(
                "only {} generators below degree {bound}, need {}",
                generators.len(),
                max_k + 1
            )));
        }
        Ok(GradedComplex {
            params,
            generators,
            staircase,
        })
    }

    pub fn params(&self) -> &FibrationParams {
        &self.params
    }

    pub fn max_k(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn generators(&self) -> &[GradedGenerator] {
        &self.generators
    }

    /// The generator of grading `2k`.
    pub fn generator(&self, k: usize) -> Result<&GradedGenerator> {
        self.generators.get(k).ok_or(EchError::OutOfRange {
            index: k,
            len: self.generators.len(),
        })
    }

    /// `N(2,q)` up to `N_{max_k}`.
    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    /// `c_k`, the action of the grading-`2k` generator, for `k < count`.
    pub fn spectrum(&self, count: usize) -> Result<Vec<SpectrumEntry>> {
        (0..count)
            .map(|k| {
                let g = self.generator(k)?;
                Ok(SpectrumEntry {
                    k,
                    c_k: g.action.clone(),
                    witness: g.clone(),
                })
            })
            .collect()
    }

    /// Smallest filtration level `K` at which grading `2k` is nonzero.
    pub fn knot_threshold(&self, k: usize, mode: RotMode) -> Result<PerturbedValue> {
        Ok(self.generator(k)?.filtration(&self.params, mode))
    }

    /// Rank of knot-filtered ECH in the given grading at level `K`.
    pub fn knot_filtered_rank(&self, grading: u64, level: &PerturbedValue, mode: RotMode) -> Result<u8> {
        if grading % 2 == 1 {
            return Ok(0);
        }
        let k = (grading / 2) as usize;
        Ok(u8::from(*level >= self.knot_threshold(k, mode)?))
    }
}

pub fn graded_complex(engine: &IndexEngine, max_k: usize) -> Result<Vec<GradedGenerator>> {
    Ok(GradedComplex::build(engine, max_k)?.generators)
}

/// `c_0, …, c_{count−1}` of `(S³, λ_{2,q})`.
pub fn ech_spectrum(engine: &IndexEngine, count: usize) -> Result<Vec<SpectrumEntry>> {
    if count == 0 {
        return Err(EchError::RejectedInput("spectrum count must be at least 1".into()));
    }
    GradedComplex::build(engine, count - 1)?.spectrum(count)
}

pub fn knot_filtered_group(
    engine: &IndexEngine,
    grading: u64,
    level: &PerturbedValue,
    mode: RotMode,
) -> Result<u8> {
    if grading % 2 == 1 {
        return Ok(0);
    }
    GradedComplex::build(engine, (grading / 2) as usize)?.knot_filtered_rank(grading, level, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::staircase::integer_staircase;

    fn engine(q: i64) -> IndexEngine {
        IndexEngine::new(FibrationParams::new(q).unwrap()).unwrap()
    }

    fn cur(b: u64, h: u64, e: u64) -> ReebCurrent {
        ReebCurrent::new(b, h, e)
    }

    #[test]
    fn low_gradings() {
        let gens = graded_complex(&engine(3), 6).unwrap();
        let currents: Vec<_> = gens.iter().map(|g| g.current).collect();
        assert_eq!(
            currents,
            vec![cur(0, 0, 0), cur(0, 0, 1), cur(0, 1, 0), cur(0, 0, 2), cur(0, 1, 1), cur(0, 0, 3), cur(1, 0, 0)]
        );
        assert_eq!(gens.iter().map(|g| g.grading).collect::<Vec<_>>(), vec![0, 2, 4, 6, 8, 10, 12]);

        let gens = graded_complex(&engine(5), 3).unwrap();
        let currents: Vec<_> = gens.iter().map(|g| g.current).collect();
        assert_eq!(currents, vec![cur(0, 0, 0), cur(0, 0, 1), cur(0, 0, 2), cur(0, 1, 0)]);

        let gens = graded_complex(&engine(9), 0).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].current, ReebCurrent::EMPTY);
        assert_eq!(gens[0].grading, 0);
    }

    #[test]
    fn spectrum_examples() {
        let s = ech_spectrum(&engine(3), 7).unwrap();
        assert_eq!(s[0].c_k, rational(0, 1));
        assert_eq!(s[1].c_k, rational(1, 3));
        assert_eq!(s[6].c_k, rational(1, 1));
        assert_eq!(s[6].witness.current, cur(1, 0, 0));
        assert!(ech_spectrum(&engine(3), 0).is_err());
    }

    #[test]
    fn spectrum_is_rescaled_staircase() {
        for q in (3..=15).step_by(2) {
            let eng = engine(q);
            let s = ech_spectrum(&eng, 400).unwrap();
            let n = integer_staircase(2, q, 400).unwrap();
            for (entry, nk) in s.iter().zip(&n) {
                assert_eq!(&entry.c_k * Rational::from_integer(BigInt::from(2 * q)), Rational::from_integer(nk.clone()));
                assert_eq!(BigInt::from(entry.witness.degree), *nk);
            }
            assert!(s.windows(2).all(|w| w[0].c_k <= w[1].c_k));
        }
    }

    #[test]
    fn filtration_examples() {
        let p = FibrationParams::new(3).unwrap();
        assert_eq!(knot_filtration(&p, &cur(1, 0, 0), RotMode::Perturbed), PerturbedValue::int_delta(6, 1));
        assert_eq!(knot_filtration(&p, &cur(1, 0, 0), RotMode::Exact), PerturbedValue::from_int(6));
        for mode in [RotMode::Exact, RotMode::Perturbed] {
            assert_eq!(knot_filtration(&p, &cur(0, 0, 1), mode), PerturbedValue::from_int(2));
            assert_eq!(knot_filtration(&p, &ReebCurrent::EMPTY, mode), PerturbedValue::zero());
        }
    }

    #[test]
    fn knot_group_examples() {
        let eng = engine(3);
        let six = PerturbedValue::from_int(6);
        assert_eq!(knot_filtered_group(&eng, 12, &six, RotMode::Exact).unwrap(), 1);
        assert_eq!(knot_filtered_group(&eng, 12, &six, RotMode::Perturbed).unwrap(), 0);
        assert_eq!(knot_filtered_group(&eng, 12, &PerturbedValue::int_delta(6, 1), RotMode::Perturbed).unwrap(), 1);
        assert_eq!(knot_filtered_group(&eng, 12, &PerturbedValue::int_delta(6, -1), RotMode::Exact).unwrap(), 0);
        for mode in [RotMode::Exact, RotMode::Perturbed] {
            assert_eq!(knot_filtered_group(&eng, 7, &PerturbedValue::from_int(1000), mode).unwrap(), 0);
        }
    }

    #[test]
    fn knot_rank_is_monotone_in_level() {
        let eng = engine(5);
        let cx = GradedComplex::build(&eng, 60).unwrap();
        for mode in [RotMode::Exact, RotMode::Perturbed] {
            for k in 0..=60u64 {
                let ranks: Vec<u8> = (0..=80)
                    .flat_map(|r| [-1, 0, 1, 2].map(|c| PerturbedValue::int_delta(r, c)))
                    .map(|level| cx.knot_filtered_rank(2 * k, &level, mode).unwrap())
                    .collect();
                assert!(ranks.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(*ranks.last().unwrap(), 1);
            }
        }
    }

    #[test]
    fn low_degree_seam() {
        for q in (3..=31).step_by(2) {
            let eng = engine(q);
            let p = *eng.params();
            let q = q as u64;
            let mut idx: Vec<BigInt> = enumerate_generators(&p, 2 * q as u128 - 1)
                .iter()
                .map(|c| eng.ech_index(c))
                .collect();
            idx.sort();
            let want: Vec<BigInt> = (0..=(3 * q - 1) / 2).map(|j| BigInt::from(2 * j)).collect();
            assert_eq!(idx, want, "q = {q}");
            assert_eq!(eng.ech_index(&cur(0, 0, q)), BigInt::from(3 * q + 1));
            for j in 0..=(q - 1) / 2 {
                assert_eq!(
                    eng.ech_index(&cur(0, 1, j)) + 2,
                    eng.ech_index(&cur(0, 0, j + (q + 1) / 2)),
                    "q = {q}, j = {j}"
                );
            }
        }
    }

    #[test]
    fn witness_b_is_repeat_count_minus_one() {
        for q in (3..=15).step_by(2) {
            let cx = GradedComplex::build(&engine(q), 500).unwrap();
            for k in 0..=500 {
                let b = cx.generator(k).unwrap().current.b as usize;
                assert_eq!(b + 1, cx.staircase().repeat_count(k).unwrap(), "q = {q}, k = {k}");
            }
        }
    }
}
