use thiserror::Error;

use crate::index::{ChernClass, Cover, Trivialization};
use crate::orbit::Orbit;

pub type Result<T> = std::result::Result<T, EchError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EchError {
    #[error("invalid torus knot parameter q = {0}: q must be odd and at least 3")]
    InvalidParameter(i64),

    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("index {index} is beyond the generated length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("trivialization {triv} is not defined over {orbit}^{multiplicity}")]
    OutOfDomain {
        triv: Trivialization,
        orbit: Orbit,
        multiplicity: u64,
    },

    #[error("no offset between {from} and {to} over {cover}")]
    UndefinedOffset {
        cover: Cover,
        from: Trivialization,
        to: Trivialization,
    },

    #[error("relative Chern number of {class} in {triv} cannot be derived")]
    Underivable {
        class: ChernClass,
        triv: Trivialization,
    },

    #[error("inconsistent trivialization ledger over {cover}: {from} -> {to} seeded as {seeded}, implied {implied}")]
    InconsistentLedger {
        cover: Cover,
        from: Trivialization,
        to: Trivialization,
        seeded: i64,
        implied: i64,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}
