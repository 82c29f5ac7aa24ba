//! Exact combinatorial embedded contact homology of the T(2,q) torus-knot
//! fibration of S³.
//!
//! The chain complex is generated by currents `b^B h^H e^E` over the binding
//! `b` and the two exceptional fibers `h`, `e`. Everything here is integer or
//! rational arithmetic; infinitesimal perturbations are carried as a formal
//! `δ` (see [`arith::PerturbedValue`]).

pub mod arith;
pub mod ellipsoid;
pub mod error;
pub mod index;
pub mod orbit;
pub mod output;
pub mod spectral;
pub mod staircase;
pub mod verify;

pub use arith::{PerturbedValue, Rational};
pub use error::{EchError, Result};
pub use index::{IndexEngine, Trivialization};
pub use orbit::{FibrationParams, Orbit, ReebCurrent};
pub use spectral::{GradedComplex, GradedGenerator, RotMode, SpectrumEntry};
pub use staircase::Staircase;
