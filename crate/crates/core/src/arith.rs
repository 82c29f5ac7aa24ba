//! Exact rationals and values perturbed by a formal positive infinitesimal.
//!
//! A [`PerturbedValue`] is a pair `(r, c)` standing for `r + c·δ` where `δ`
//! is smaller than every positive rational. Comparison is lexicographic,
//! which realizes every strict inequality that holds for all sufficiently
//! small positive `δ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::EchError;

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational, EchError> {
    let bad = || EchError::RejectedInput(format!("cannot parse rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.replace('−', "-").parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerturbedValue {
    pub base: Rational,
    pub delta_coeff: BigInt,
}

impl PerturbedValue {
    pub fn new(base: Rational, delta_coeff: impl Into<BigInt>) -> Self {
        PerturbedValue {
            base,
            delta_coeff: delta_coeff.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), 0)
    }

    pub fn from_rational(base: Rational) -> Self {
        Self::new(base, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(integer(n))
    }

    /// The value `r + c·δ` for integer `r`.
    pub fn int_delta(r: i64, c: i64) -> Self {
        Self::new(integer(r), c)
    }

    pub fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    pub fn is_exact(&self) -> bool {
        self.delta_coeff.is_zero()
    }

    /// Multiplies both components by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        PerturbedValue {
            base: &self.base * Rational::from_integer(k.clone()),
            delta_coeff: &self.delta_coeff * k,
        }
    }

    /// `⌊r + c·δ⌋` for an infinitesimal `δ > 0`.
    pub fn floor(&self) -> BigInt {
        let fl = self.base.floor().to_integer();
        if self.base.is_integer() && self.delta_coeff.is_negative() {
            fl - 1
        } else {
            fl
        }
    }
}

/// Free-function spelling of [`PerturbedValue::floor`].
pub fn perturbed_floor(x: &PerturbedValue) -> BigInt {
    x.floor()
}

impl Ord for PerturbedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.delta_coeff.cmp(&other.delta_coeff))
    }
}

impl PartialOrd for PerturbedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PerturbedValue {
    type Output = PerturbedValue;
    fn add(self, rhs: &PerturbedValue) -> PerturbedValue {
        PerturbedValue {
            base: &self.base + &rhs.base,
            delta_coeff: &self.delta_coeff + &rhs.delta_coeff,
        }
    }
}

impl Add for PerturbedValue {
    type Output = PerturbedValue;
    fn add(self, rhs: PerturbedValue) -> PerturbedValue {
        &self + &rhs
    }
}

impl Sub for &PerturbedValue {
    type Output = PerturbedValue;
    fn sub(self, rhs: &PerturbedValue) -> PerturbedValue {
        PerturbedValue {
            base: &self.base - &rhs.base,
            delta_coeff: &self.delta_coeff - &rhs.delta_coeff,
        }
    }
}

impl Sub for PerturbedValue {
    type Output = PerturbedValue;
    fn sub(self, rhs: PerturbedValue) -> PerturbedValue {
        &self - &rhs
    }
}

impl Neg for PerturbedValue {
    type Output = PerturbedValue;
    fn neg(self) -> PerturbedValue {
        PerturbedValue {
            base: -self.base,
            delta_coeff: -self.delta_coeff,
        }
    }
}

impl Mul<u64> for &PerturbedValue {
    type Output = PerturbedValue;
    fn mul(self, k: u64) -> PerturbedValue {
        self.scale(&BigInt::from(k))
    }
}

impl From<Rational> for PerturbedValue {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for PerturbedValue {
    /// `r`, `r+δ`, `r+cδ`, `r−δ` or `r−cδ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.base))?;
        let c = &self.delta_coeff;
        if c.is_zero() {
            return Ok(());
        }
        let sign = if c.is_negative() { '−' } else { '+' };
        let mag = c.abs();
        if mag.is_one() {
            write!(f, "{sign}δ")
        } else {
            write!(f, "{sign}{mag}δ")
        }
    }
}

impl FromStr for PerturbedValue {
    type Err = EchError;

    /// Accepts the [`Display`](fmt::Display) forms. `d` is accepted in
    /// place of `δ` and ASCII `-` in place of `−`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s
            .trim()
            .replace('−', "-")
            .replace("delta", "δ")
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == 'd' { 'δ' } else { c })
            .collect();
        if !s.ends_with('δ') {
            return Ok(Self::from_rational(parse_rational(&s)?));
        }
        let body = &s[..s.len() - 'δ'.len_utf8()];
        // the split point is the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (base, coeff) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let coeff = match coeff {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            c => c
                .trim_start_matches('+')
                .parse::<BigInt>()
                .map_err(|_| EchError::RejectedInput(format!("cannot parse δ coefficient in {s:?}")))?,
        };
        Ok(Self::new(base, coeff))
    }
}

/// Exact quotient `num / den` where `den` is known to divide `num`.
pub(crate) fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (quo, rem) = num.div_rem(den);
    debug_assert!(rem.is_zero(), "inexact division");
    quo
}
