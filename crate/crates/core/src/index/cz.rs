use num_bigint::BigInt;

use crate::arith::{integer, rational, PerturbedValue};
use crate::orbit::{FibrationParams, Orbit};

/// Linearized return map type of an embedded orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monodromy {
    /// Rotation by the given perturbed angle (in full turns).
    Elliptic(PerturbedValue),
    /// Negative hyperbolic with the given odd rotation number.
    NegativeHyperbolic(i64),
}

/// Monodromy angles in the orbibundle trivialization. The perturbation
/// pushes `b` forward and `e` backward by an infinitesimal.
#[derive(Debug, Clone)]
pub struct MonodromyTable {
    b: Monodromy,
    h: Monodromy,
    e: Monodromy,
}

impl MonodromyTable {
    pub fn for_params(params: &FibrationParams) -> Self {
        let q = params.q() as i64;
        MonodromyTable {
            b: Monodromy::Elliptic(PerturbedValue::new(integer(2 + q), 1)),
            h: Monodromy::NegativeHyperbolic(2 + q),
            e: Monodromy::Elliptic(PerturbedValue::new(rational(2 + q, q), -1)),
        }
    }

    pub fn get(&self, orbit: Orbit) -> &Monodromy {
        match orbit {
            Orbit::B => &self.b,
            Orbit::H => &self.h,
            Orbit::E => &self.e,
        }
    }
}

/// `CZ(γ^k)` from the monodromy: `2⌊kθ⌋ + 1` for elliptic orbits, `k·n`
/// for hyperbolic ones.
pub fn cz_from_monodromy(monodromy: &Monodromy, k: u64) -> BigInt {
    match monodromy {
        Monodromy::Elliptic(theta) => 2 * (theta * k).floor() + 1,
        Monodromy::NegativeHyperbolic(n) => BigInt::from(*n) * k,
    }
}

/// Closed-form `CZ_orb(γ^k)`.
pub fn cz_orb_closed_form(params: &FibrationParams, orbit: Orbit, k: u64) -> BigInt {
    let q = params.qbig();
    let k = BigInt::from(k);
    match orbit {
        Orbit::B => 2 * (&q + 2) * k + 1,
        Orbit::H => (&q + 2) * k,
        Orbit::E => {
            let (m, r) = (&k / &q, &k % &q);
            let two_r = 2 * &r;
            let ceil = if r == BigInt::from(0) {
                0
            } else if two_r < q {
                1
            } else {
                2
            };
            2 * (&q + 2) * m + two_r + 2 * ceil - 1
        }
    }
}
