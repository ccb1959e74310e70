//! Value model: semilattice elements, their enumeration, symbolic sequences
//! and limit assignments.

mod assignment;
mod collide;
mod elt;
mod encode;
mod index_set;
mod law;
mod seq;

pub use assignment::{LimitAssignment, LimitEntry, ShiftMap};
pub use collide::{collisions, CollisionSet, Diag};
pub use elt::{AdjoinedElt, Coord, Elt, TriVal};
pub use encode::{cantor_pair, cantor_unpair, decode, encode, pair_enumerate};
pub use index_set::IndexSet;
pub use law::IndexLaw;
pub use seq::SymbolicSeq;

use thiserror::Error;

/// Errors raised while constructing or decoding model values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("an element must have non-empty support")]
    EmptySupport,
    #[error("coordinate values stored in an element must be 0 or 1")]
    StoredTop,
    #[error("{0} is not a coordinate value")]
    BadTriVal(u8),
    #[error("0 does not encode an element; codes start at 1")]
    DecodeZero,
    #[error("element has a coordinate too large for encoding")]
    EncodeOverflow,
    #[error("a point sequence carries values 0 or 1, not 2")]
    PointValueKind,
    #[error("index-law coefficient must be at least 1")]
    ZeroCoefficient,
    #[error("window must be at least 1")]
    WindowZero,
    #[error("the shift list must contain the identity shift")]
    MissingIdentityShift,
    #[error("entries {0} and {1} carry the same sequence with different limits")]
    DuplicateSequence(usize, usize),
    #[error("the instance needs at least one enumerated pair")]
    PairsZero,
    #[error("entry index {0} out of range")]
    EntryOutOfRange(usize),
}
