//! Constructive manipulation of the largest admissible topology: tail sets,
//! clopen expressions, openness verification, compact subcovers, and point
//! and closed-set separation.

mod admissible;
mod clopen;
mod separate;
mod universe;

pub use admissible::{
    compactness_check, is_admissible_open, isolated_point_witness, tail_set_closed, IsolatedPoint,
    OpenCheck, Subcover,
};
pub use clopen::{ClopenExpr, TailSet};
pub use separate::{separate_closed_sets, separate_points, ClosedSeparation, PointSeparation};
pub use universe::WindowUniverse;

use thiserror::Error;

use crate::model::{Elt, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("the two points must be distinct")]
    EqualPoints,
    #[error("the point is the limit of the entry, hence not isolated")]
    PointIsLimit,
    #[error("the point does not occur in the tail set")]
    PointNotInSet,
    #[error("pair separation does not hold for this assignment")]
    RequiresPairSeparation,
    #[error("cover member {index} is not admissible-open")]
    OpenNotAdmissible { index: usize },
    #[error("no cover member contains the limit")]
    LimitUncovered,
    #[error("no cover member contains the value at index {n}")]
    ValueUncovered { n: u64 },
    #[error("expected a union of finite point sets and limit-closed tails")]
    NotClosedNormalForm,
    #[error("the sets overlap at {point}")]
    Overlap { point: Elt },
    #[error("separation construction broke down: {detail}")]
    SeparationBreakdown { detail: String },
}
