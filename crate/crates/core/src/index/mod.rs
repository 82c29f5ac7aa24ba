//! ECH index of currents `b^B h^H e^E` and its three components
//! (relative first Chern number, relative intersection pairing, total
//! Conley–Zehnder index) under the five trivializations.

mod cz;
mod trivialization;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use cz::{cz_from_monodromy, cz_orb_closed_form, Monodromy, MonodromyTable};
pub use trivialization::{Cover, OffsetSeed, TrivOffsetLedger, Trivialization};

use crate::arith::exact_div;
use crate::error::{EchError, Result};
use crate::orbit::{FibrationParams, Orbit, ReebCurrent};

/// `E = q·m + r` with `0 ≤ r < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EuclideanSplit {
    pub m: u64,
    pub r: u64,
}

impl EuclideanSplit {
    pub fn of(params: &FibrationParams, e: u64) -> Self {
        let (m, r) = e.div_rem(&params.q64());
        EuclideanSplit { m, r }
    }
}

/// Relative homology classes whose Chern numbers are tabulated.
/// `Binding` is `Z_b = [Σ]`, the class of a page of the open book.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChernClass {
    Binding,
    Ze,
    Zh,
    /// `Z_{e^q}`, bounded by the `q`-fold cover of `e`.
    ZeCover,
    /// `Z_{h^2}`, bounded by the double cover of `h`.
    ZhCover,
}

impl ChernClass {
    pub const ALL: [ChernClass; 5] = [
        ChernClass::Binding,
        ChernClass::Ze,
        ChernClass::Zh,
        ChernClass::ZeCover,
        ChernClass::ZhCover,
    ];

    /// The cover the class is bounded by, if trivializations over covers apply.
    fn cover(self) -> Option<Cover> {
        match self {
            ChernClass::Binding => Some(Cover::Binding),
            ChernClass::ZeCover => Some(Cover::ECover),
            ChernClass::ZhCover => Some(Cover::HCover),
            ChernClass::Ze | ChernClass::Zh => None,
        }
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChernClass::Binding => "Z_b",
            ChernClass::Ze => "Z_e",
            ChernClass::Zh => "Z_h",
            ChernClass::ZeCover => "Z_{e^q}",
            ChernClass::ZhCover => "Z_{h^2}",
        })
    }
}

impl FromStr for ChernClass {
    type Err = EchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z_b" | "Zb" | "sigma" | "[Σ]" => Ok(ChernClass::Binding),
            "Z_e" | "Ze" => Ok(ChernClass::Ze),
            "Z_h" | "Zh" => Ok(ChernClass::Zh),
            "Z_e^q" | "Z_{e^q}" | "Zeq" => Ok(ChernClass::ZeCover),
            "Z_h^2" | "Z_{h^2}" | "Zh2" => Ok(ChernClass::ZhCover),
            _ => Err(EchError::RejectedInput(format!("unknown class {s:?}"))),
        }
    }
}

/// `(c_τ, Q_τ, CZ^I_τ)`; their sum is the ECH index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexComponents {
    pub chern: BigInt,
    pub pairing: BigInt,
    pub total_cz: BigInt,
}

impl IndexComponents {
    pub fn sum(&self) -> BigInt {
        &self.chern + &self.pairing + &self.total_cz
    }
}

/// Per-fibration tables (offset ledger, monodromy angles) plus every
/// index computation that reads them.
#[derive(Debug, Clone)]
pub struct IndexEngine {
    params: FibrationParams,
    ledger: TrivOffsetLedger,
    monodromy: MonodromyTable,
}

impl IndexEngine {
    pub fn new(params: FibrationParams) -> Result<Self> {
        Ok(IndexEngine {
            ledger: TrivOffsetLedger::for_params(&params)?,
            monodromy: MonodromyTable::for_params(&params),
            params,
        })
    }

    pub fn params(&self) -> &FibrationParams {
        &self.params
    }

    pub fn ledger(&self) -> &TrivOffsetLedger {
        &self.ledger
    }

    pub fn monodromy(&self) -> &MonodromyTable {
        &self.monodromy
    }

    fn q(&self) -> BigInt {
        self.params.qbig()
    }

    /// Closed-form `CZ_τ(orbit^k)`.
    pub fn cz(&self, orbit: Orbit, k: u64, triv: Trivialization) -> Result<BigInt> {
        triv.check_domain(&self.params, orbit, k)?;
        let q = self.q();
        let k_big = BigInt::from(k);
        Ok(match (triv, orbit) {
            (Trivialization::Orb, _) => cz_orb_closed_form(&self.params, orbit, k),
            (Trivialization::Page, Orbit::B) => 4 * q * k_big + 1,
            (Trivialization::Constant | Trivialization::SurfaceE | Trivialization::SurfaceH, Orbit::B) => {
                BigInt::from(1)
            }
            (Trivialization::SurfaceE, Orbit::E) => BigInt::from(-1),
            (Trivialization::SurfaceH, Orbit::H) => BigInt::from(0),
            _ => unreachable!("domain checked above"),
        })
    }

    /// `CZ_orb(orbit^k)` computed from the monodromy angle.
    pub fn cz_via_monodromy(&self, orbit: Orbit, k: u64) -> Result<BigInt> {
        Trivialization::Orb.check_domain(&self.params, orbit, k)?;
        Ok(cz_from_monodromy(self.monodromy.get(orbit), k))
    }

    /// `CZ_τ(orbit^k)` from `CZ_orb` and the offset ledger:
    /// `CZ_τ(γ^{jk}) = CZ_orb(γ^{jk}) + 2j(τ_orb(γ^k) − τ(γ^k))`.
    pub fn cz_via_ledger(&self, orbit: Orbit, k: u64, triv: Trivialization) -> Result<BigInt> {
        triv.check_domain(&self.params, orbit, k)?;
        let orb = cz_orb_closed_form(&self.params, orbit, k);
        if triv == Trivialization::Orb {
            return Ok(orb);
        }
        let cover = match orbit {
            Orbit::B => Cover::Binding,
            Orbit::E => Cover::ECover,
            Orbit::H => Cover::HCover,
        };
        let j = k / cover.multiplicity(&self.params);
        let off = self.ledger.offset(cover, Trivialization::Orb, triv)?;
        Ok(orb + 2 * BigInt::from(j) * off)
    }

    /// `CZ^I_orb` of a current, in closed form.
    pub fn total_cz(&self, c: &ReebCurrent) -> BigInt {
        let q = self.q();
        let b = BigInt::from(c.b);
        let h = BigInt::from(c.h);
        let cz_b = (&q + 2) * &b * &b + (&q + 3) * &b;
        let cz_h = exact_div((&q + 2) * &h * (&h + 1), &BigInt::from(2));
        cz_b + cz_h + self.total_cz_e(c.e)
    }

    /// `CZ^I_orb(e^E) = ((q+2)E² − 2r²)/q + (q+1)m + 2r + ⌊2r/q⌋(2r − q + 1)`.
    fn total_cz_e(&self, e: u64) -> BigInt {
        let q = self.q();
        let split = EuclideanSplit::of(&self.params, e);
        let (e, m, r) = (BigInt::from(e), BigInt::from(split.m), BigInt::from(split.r));
        let quad = exact_div((&q + 2) * &e * &e - 2 * &r * &r, &q);
        let floor_term = if 2 * &r >= q { 2 * &r - &q + 1 } else { BigInt::zero() };
        quad + (&q + 1) * m + 2 * r + floor_term
    }

    /// `Σ_{k ≤ n} CZ_τ(orbit^k)` by direct summation. Every iterate must lie
    /// in the domain of `τ`.
    pub fn total_cz_direct(&self, orbit: Orbit, n: u64, triv: Trivialization) -> Result<BigInt> {
        (1..=n).try_fold(BigInt::zero(), |acc, k| Ok(acc + self.cz(orbit, k, triv)?))
    }

    /// Relative first Chern number. Tabulated values are returned directly;
    /// other pairs are derived from `c_orb` through the offset ledger,
    /// `c_τ(Z) = c_orb(Z) + (τ(γ^k) − τ_orb(γ^k))`.
    pub fn relative_chern(&self, class: ChernClass, triv: Trivialization) -> Result<BigInt> {
        match self.tabulated_chern(class, triv) {
            Some(v) => Ok(v),
            None => self.derived_chern(class, triv),
        }
    }

    pub fn tabulated_chern(&self, class: ChernClass, triv: Trivialization) -> Option<BigInt> {
        let q = self.q();
        use ChernClass::*;
        use Trivialization::*;
        match (class, triv) {
            (_, Orb) => Some(BigInt::zero()),
            (Binding, Constant) => Some(q + 2),
            (Binding, Page) => Some(2 - q),
            (ZeCover, SurfaceE) | (ZhCover, SurfaceH) => Some(q + 2),
            _ => None,
        }
    }

    pub fn derived_chern(&self, class: ChernClass, triv: Trivialization) -> Result<BigInt> {
        // τ_orb extends over every representative, so c_orb vanishes on every class
        let c_orb = BigInt::zero();
        if triv == Trivialization::Orb {
            return Ok(c_orb);
        }
        let cover = class
            .cover()
            .ok_or(EchError::Underivable { class, triv })?;
        let off = self
            .ledger
            .offset(cover, triv, Trivialization::Orb)
            .map_err(|_| EchError::Underivable { class, triv })?;
        Ok(c_orb + off)
    }

    /// `Q_orb(c1, c2)` extended bilinearly from the table on `Z_b, Z_h, Z_e`.
    pub fn q_pairing(&self, c1: &ReebCurrent, c2: &ReebCurrent) -> BigInt {
        let mut total = BigInt::zero();
        for x in Orbit::ALL {
            for y in Orbit::ALL {
                let mx = c1.multiplicity(x);
                let my = c2.multiplicity(y);
                if mx != 0 && my != 0 {
                    total += self.q_orb_basic(x, y) * BigInt::from(mx) * BigInt::from(my);
                }
            }
        }
        total
    }

    /// `Q_orb(Z_x, Z_y)` for embedded orbits.
    pub fn q_orb_basic(&self, x: Orbit, y: Orbit) -> BigInt {
        let q = self.q();
        use Orbit::*;
        match (x, y) {
            (B, B) => q - 2,
            (E, E) | (H, H) => BigInt::from(-1),
            (E, H) | (H, E) => BigInt::from(1),
            (E, B) | (B, E) => BigInt::from(2),
            (H, B) | (B, H) => q,
        }
    }

    /// `Q_orb(B·Z_b + H·Z_h + E·Z_e)` in closed form:
    /// `B²(q−2) − H² − E² + 2qBH + 4BE + 2HE`.
    pub fn q_self(&self, c: &ReebCurrent) -> BigInt {
        let q = self.q();
        let (b, h, e) = (BigInt::from(c.b), BigInt::from(c.h), BigInt::from(c.e));
        &b * &b * (&q - 2) - &h * &h - &e * &e + 2 * &q * &b * &h + 4 * &b * &e + 2 * &h * &e
    }

    /// `Q_τ(Z_b)` from `Q_orb(Z_b)` and the ledger.
    pub fn binding_pairing(&self, triv: Trivialization) -> Result<BigInt> {
        let off = self.ledger.offset(Cover::Binding, triv, Trivialization::Orb)?;
        Ok(self.q_orb_basic(Orbit::B, Orbit::B) + off)
    }

    /// `Q_τ(Z_{γ^k})` in the surface trivialization over the cover: `S_γ`
    /// pushes off itself and the page `Σ` contributes `Q_0(Z_b) = 2q`.
    pub fn cover_pairing(&self, cover: Cover) -> Result<(Trivialization, BigInt)> {
        match cover {
            Cover::ECover => Ok((Trivialization::SurfaceE, 2 * self.q())),
            Cover::HCover => Ok((Trivialization::SurfaceH, 2 * self.q())),
            Cover::Binding => Ok((Trivialization::Page, BigInt::zero())),
        }
    }

    /// `Q_orb(Z_γ)` recovered from the cover pairing:
    /// `Q_orb(k·Z_γ) = Q_τ(Z_{γ^k}) + k(τ_orb(γ^k) − τ(γ^k))`, then divided by `k²`.
    /// Returns `(Q_orb(k·Z_γ), Q_orb(Z_γ))`.
    pub fn orb_pairing_from_cover(&self, cover: Cover) -> Result<(BigInt, BigInt)> {
        let (triv, q_cover) = self.cover_pairing(cover)?;
        let k = BigInt::from(cover.multiplicity(&self.params));
        let off = self.ledger.offset(cover, Trivialization::Orb, triv)?;
        let multiple = q_cover + &k * off;
        let (basic, rem) = multiple.div_rem(&(&k * &k));
        if !rem.is_zero() {
            return Err(EchError::Verification(format!(
                "Q_orb({k}·Z) = {multiple} is not divisible by {}",
                &k * &k
            )));
        }
        Ok((multiple, basic))
    }

    /// The closed-form ECH index
    /// `2EH − H² + (q+2)H + 2qB² + (q+3)B + 4EB + 2qHB
    ///  + (2/q)(E² − r²) + (q+1)m + 2r + ⌊2r/q⌋(2r − q + 1)`.
    ///
    /// For `H ≥ 2` this is the formula's value, not a sum of components: the
    /// formula carries `(q+2)H` where `CZ^I_orb(h^H) = (q+2)H(H+1)/2`.
    pub fn ech_index(&self, c: &ReebCurrent) -> BigInt {
        let q = self.q();
        let split = EuclideanSplit::of(&self.params, c.e);
        let (b, h, e) = (BigInt::from(c.b), BigInt::from(c.h), BigInt::from(c.e));
        let (m, r) = (BigInt::from(split.m), BigInt::from(split.r));
        let linear = 2 * &e * &h - &h * &h + (&q + 2) * &h + 2 * &q * &b * &b + (&q + 3) * &b
            + 4 * &e * &b
            + 2 * &q * &h * &b;
        // (2/q)(E² − r²) = 2qm² + 4mr
        let e_quad = 2 * &q * &m * &m + 4 * &m * &r;
        let floor_term = if 2 * &r >= q { 2 * &r - &q + 1 } else { BigInt::zero() };
        linear + e_quad + (&q + 1) * m + 2 * r + floor_term
    }

    /// `(c_orb, Q_orb, CZ^I_orb)`.
    pub fn ech_index_components(&self, c: &ReebCurrent) -> IndexComponents {
        IndexComponents {
            chern: BigInt::zero(),
            pairing: self.q_self(c),
            total_cz: self.total_cz(c),
        }
    }

    /// Index components in any trivialization. Outside `τ_orb` only pure
    /// binding currents `b^B` are supported.
    pub fn ech_index_components_in(&self, c: &ReebCurrent, triv: Trivialization) -> Result<IndexComponents> {
        if triv == Trivialization::Orb {
            return Ok(self.ech_index_components(c));
        }
        if c.h != 0 || c.e != 0 {
            return Err(EchError::RejectedInput(format!(
                "index components of mixed current {c} are only available in the orb trivialization"
            )));
        }
        let b = BigInt::from(c.b);
        Ok(IndexComponents {
            chern: &b * self.relative_chern(ChernClass::Binding, triv)?,
            pairing: &b * &b * self.binding_pairing(triv)?,
            total_cz: self.total_cz_direct(Orbit::B, c.b, triv)?,
        })
    }

    /// `τ_from(cover) − τ_to(cover)`.
    pub fn triv_offset(&self, cover: Cover, from: Trivialization, to: Trivialization) -> Result<i64> {
        self.ledger.offset(cover, from, to)
    }

    /// Self-linking number of the binding, `−c_Σ([Σ]) = q − 2`.
    pub fn self_linking(&self) -> BigInt {
        -self
            .relative_chern(ChernClass::Binding, Trivialization::Page)
            .expect("page Chern number is tabulated")
    }
}
