use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{EchError, Result};
use crate::orbit::{FibrationParams, Orbit};

/// Homotopy classes of framings of ξ used along the fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trivialization {
    /// Global orbibundle trivialization, defined over every fiber.
    Orb,
    /// Page trivialization of the open book, over the binding.
    Page,
    /// Constant trivialization of the binding as a regular fiber.
    Constant,
    /// Linking-zero framing w.r.t. the fiber surface `S_e`; over `e^{qk}` and `b`.
    SurfaceE,
    /// Linking-zero framing w.r.t. the fiber surface `S_h`; over `h^{2k}` and `b`.
    SurfaceH,
}

impl Trivialization {
    pub const ALL: [Trivialization; 5] = [
        Trivialization::Orb,
        Trivialization::Page,
        Trivialization::Constant,
        Trivialization::SurfaceE,
        Trivialization::SurfaceH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Trivialization::Orb => "orb",
            Trivialization::Page => "page",
            Trivialization::Constant => "constant",
            Trivialization::SurfaceE => "surface-e",
            Trivialization::SurfaceH => "surface-h",
        }
    }

    /// Whether the trivialization is defined over `orbit^k`.
    pub fn is_defined_over(self, params: &FibrationParams, orbit: Orbit, k: u64) -> bool {
        if k == 0 {
            return false;
        }
        match (self, orbit) {
            (Trivialization::Orb, _) => true,
            (_, Orbit::B) => true,
            (Trivialization::SurfaceE, Orbit::E) => k.is_multiple_of(params.q64()),
            (Trivialization::SurfaceH, Orbit::H) => k.is_multiple_of(2),
            _ => false,
        }
    }

    pub(crate) fn check_domain(self, params: &FibrationParams, orbit: Orbit, k: u64) -> Result<()> {
        if self.is_defined_over(params, orbit, k) {
            Ok(())
        } else {
            Err(EchError::OutOfDomain {
                triv: self,
                orbit,
                multiplicity: k,
            })
        }
    }
}

impl fmt::Display for Trivialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Trivialization {
    type Err = EchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "orb" | "orbibundle" => Ok(Trivialization::Orb),
            "page" | "sigma" => Ok(Trivialization::Page),
            "constant" | "0" => Ok(Trivialization::Constant),
            "surface-e" | "e" => Ok(Trivialization::SurfaceE),
            "surface-h" | "h" => Ok(Trivialization::SurfaceH),
            _ => Err(EchError::RejectedInput(format!("unknown trivialization {s:?}"))),
        }
    }
}

/// Orbit covers carrying trivialization offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cover {
    /// The binding `b`.
    Binding,
    /// The `q`-fold cover `e^q`.
    ECover,
    /// The double cover `h^2`.
    HCover,
}

impl Cover {
    pub const ALL: [Cover; 3] = [Cover::Binding, Cover::ECover, Cover::HCover];

    pub fn orbit(self) -> Orbit {
        match self {
            Cover::Binding => Orbit::B,
            Cover::ECover => Orbit::E,
            Cover::HCover => Orbit::H,
        }
    }

    /// Covering multiplicity over the embedded orbit.
    pub fn multiplicity(self, params: &FibrationParams) -> u64 {
        match self {
            Cover::Binding => 1,
            Cover::ECover => params.q64(),
            Cover::HCover => 2,
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cover::Binding => "b",
            Cover::ECover => "e^q",
            Cover::HCover => "h^2",
        })
    }
}

impl FromStr for Cover {
    type Err = EchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b" => Ok(Cover::Binding),
            "e^q" | "eq" => Ok(Cover::ECover),
            "h^2" | "h2" => Ok(Cover::HCover),
            _ => Err(EchError::RejectedInput(format!("unknown cover {s:?}"))),
        }
    }
}

/// One seeded relation `τ_from(cover) − τ_to(cover) = value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OffsetSeed {
    pub cover: Cover,
    pub from: Trivialization,
    pub to: Trivialization,
    pub value: i64,
}

/// Pairwise trivialization offsets, closed under antisymmetry and
/// composition.
///
/// Offsets are stored as potentials `τ(x) − τ_orb(x)`; every seed is checked
/// against the potentials at construction, so redundant seeds must agree.
#[derive(Debug, Clone)]
pub struct TrivOffsetLedger {
    seeds: Vec<OffsetSeed>,
    potentials: BTreeMap<(Cover, Trivialization), i64>,
}

impl TrivOffsetLedger {
    pub fn for_params(params: &FibrationParams) -> Result<Self> {
        let q = params.q() as i64;
        use Cover::*;
        use Trivialization::*;
        let seed = |cover, from, to, value| OffsetSeed { cover, from, to, value };
        Self::from_seeds(vec![
            seed(Binding, Constant, Page, 2 * q),
            seed(Binding, Constant, Orb, 2 + q),
            seed(Binding, Orb, Page, q - 2),
            seed(Binding, SurfaceE, Constant, 0),
            seed(Binding, SurfaceH, Constant, 0),
            seed(ECover, SurfaceE, Orb, 2 + q),
            seed(HCover, SurfaceH, Orb, 2 + q),
        ])
    }

    pub fn from_seeds(seeds: Vec<OffsetSeed>) -> Result<Self> {
        let mut potentials = BTreeMap::new();
        for cover in Cover::ALL {
            potentials.insert((cover, Trivialization::Orb), 0i64);
            let mut queue = VecDeque::from([Trivialization::Orb]);
            while let Some(t) = queue.pop_front() {
                let pt = potentials[&(cover, t)];
                for s in seeds.iter().filter(|s| s.cover == cover) {
                    // pot(from) − pot(to) = value
                    let next = if s.to == t {
                        Some((s.from, pt + s.value))
                    } else if s.from == t {
                        Some((s.to, pt - s.value))
                    } else {
                        None
                    };
                    if let Some((u, pu)) = next {
                        if let std::collections::btree_map::Entry::Vacant(v) = potentials.entry((cover, u)) {
                            v.insert(pu);
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        for s in &seeds {
            let pf = potentials.get(&(s.cover, s.from));
            let pt = potentials.get(&(s.cover, s.to));
            match (pf, pt) {
                (Some(pf), Some(pt)) if pf - pt == s.value => {}
                (Some(pf), Some(pt)) => {
                    return Err(EchError::InconsistentLedger {
                        cover: s.cover,
                        from: s.from,
                        to: s.to,
                        seeded: s.value,
                        implied: pf - pt,
                    })
                }
                _ => {
                    return Err(EchError::UndefinedOffset {
                        cover: s.cover,
                        from: s.from,
                        to: s.to,
                    })
                }
            }
        }
        Ok(TrivOffsetLedger { seeds, potentials })
    }

    pub fn seeds(&self) -> &[OffsetSeed] {
        &self.seeds
    }

    /// Trivializations with a known offset over `cover`.
    pub fn defined_over(&self, cover: Cover) -> Vec<Trivialization> {
        self.potentials
            .keys()
            .filter(|(c, _)| *c == cover)
            .map(|(_, t)| *t)
            .collect()
    }

    /// `τ_from(cover) − τ_to(cover)`.
    pub fn offset(&self, cover: Cover, from: Trivialization, to: Trivialization) -> Result<i64> {
        match (
            self.potentials.get(&(cover, from)),
            self.potentials.get(&(cover, to)),
        ) {
            (Some(f), Some(t)) => Ok(f - t),
            _ => Err(EchError::UndefinedOffset { cover, from, to }),
        }
    }
}
