//! Reeb currents `b^B h^H e^E` of the T(2,q) fibration of S³.
//!
//! `b` is the binding (the torus knot itself, a regular fiber), `e` the
//! exceptional fiber of isotropy `q` and `h` the exceptional fiber of
//! isotropy 2. `h` is negative hyperbolic, so only `H ∈ {0, 1}` is admissible.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::error::{EchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FibrationParams {
    q: u32,
}

impl FibrationParams {
    pub fn new(q: i64) -> Result<Self> {
        if q < 3 || q % 2 == 0 || q > u32::MAX as i64 {
            return Err(EchError::InvalidParameter(q));
        }
        Ok(FibrationParams { q: q as u32 })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub(crate) fn q64(&self) -> u64 {
        self.q as u64
    }

    pub(crate) fn qbig(&self) -> BigInt {
        BigInt::from(self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orbit {
    B,
    H,
    E,
}

impl Orbit {
    pub const ALL: [Orbit; 3] = [Orbit::B, Orbit::H, Orbit::E];

    pub fn symbol(self) -> char {
        match self {
            Orbit::B => 'b',
            Orbit::H => 'h',
            Orbit::E => 'e',
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The current `b^B h^H e^E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ReebCurrent {
    pub b: u64,
    pub h: u64,
    pub e: u64,
}

impl ReebCurrent {
    pub const EMPTY: ReebCurrent = ReebCurrent { b: 0, h: 0, e: 0 };

    pub const fn new(b: u64, h: u64, e: u64) -> Self {
        ReebCurrent { b, h, e }
    }

    pub fn is_admissible(&self) -> bool {
        self.h <= 1
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::EMPTY
    }

    pub fn multiplicity(&self, orbit: Orbit) -> u64 {
        match orbit {
            Orbit::B => self.b,
            Orbit::H => self.h,
            Orbit::E => self.e,
        }
    }
}

impl fmt::Display for ReebCurrent {
    /// Compact notation: `∅`, `e`, `he^2`, `b^2he`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        for orbit in Orbit::ALL {
            match self.multiplicity(orbit) {
                0 => {}
                1 => write!(f, "{orbit}")?,
                k => write!(f, "{orbit}^{k}")?,
            }
        }
        Ok(())
    }
}

/// `d = 2qB + qH + 2E`.
pub fn degree(params: &FibrationParams, c: &ReebCurrent) -> u128 {
    let q = params.q as u128;
    2 * q * c.b as u128 + q * c.h as u128 + 2 * c.e as u128
}

/// `A = d / 2q = B + H/2 + E/q`, the ε → 0 limit of the action.
pub fn action(params: &FibrationParams, c: &ReebCurrent) -> Rational {
    Rational::new(BigInt::from(degree(params, c)), BigInt::from(2 * params.q64()))
}

/// Linking number of two distinct embedded orbits.
pub fn linking(params: &FibrationParams, x: Orbit, y: Orbit) -> Result<u64> {
    use Orbit::*;
    match (x, y) {
        (E, H) | (H, E) => Ok(1),
        (B, E) | (E, B) => Ok(2),
        (B, H) | (H, B) => Ok(params.q64()),
        _ => Err(EchError::RejectedInput(format!(
            "linking number of {x} with itself is not a pairing of distinct orbits"
        ))),
    }
}

/// All admissible currents of degree `≤ max_degree`, ordered by degree and
/// then by increasing `B`. This is increasing ECH index order.
pub fn enumerate_generators(params: &FibrationParams, max_degree: u128) -> Vec<ReebCurrent> {
    let q = params.q as u128;
    let mut out = Vec::new();
    for h in 0..=1u64 {
        let mut b = 0u64;
        loop {
            let used = 2 * q * b as u128 + q * h as u128;
            if used > max_degree {
                break;
            }
            let e_max = ((max_degree - used) / 2) as u64;
            out.extend((0..=e_max).map(|e| ReebCurrent::new(b, h, e)));
            b += 1;
        }
    }
    out.sort_by_key(|c| (degree(params, c), c.b));
    out
}

/// Admissible currents of exactly degree `d`, in increasing `B`.
pub fn generators_of_degree(params: &FibrationParams, d: u128) -> Vec<ReebCurrent> {
    let q = params.q as u128;
    let h = (d % 2) as u64;
    let mut out = Vec::new();
    let mut b = 0u64;
    loop {
        let used = 2 * q * b as u128 + q * h as u128;
        if used > d {
            break;
        }
        let rest = d - used;
        if rest.is_multiple_of(2) {
            out.push(ReebCurrent::new(b, h, (rest / 2) as u64));
        }
        b += 1;
    }
    out
}
