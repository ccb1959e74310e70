//! Deciders, certificates and constructions for topologies with prescribed
//! convergent sequences on countable semilattices.
//!
//! The carrier is the semilattice of finitely supported functions
//! `ω → {0,1,2}` under coordinatewise minimum. Given a finite assignment of
//! symbolic sequences to intended limits, the checkers in [`checkers`] decide
//! the combinatorial separation conditions that characterise the existence of
//! a Hausdorff (equivalently metrizable) topology in which every assigned
//! sequence converges to its limit and every meet-shift `x ↦ a·x·b` is
//! continuous. Verdicts come with finite certificates that can be replayed
//! against sequence evaluation and the meet operation alone.
//!
//! [`topology`] manipulates the largest admissible topology constructively:
//! tail sets, clopen expressions, compactness and normal separation.
//! [`counterexample`] builds the concrete instance in which the semilattice
//! partial order is dense and non-closed in the square, and verifies it with
//! exact certificates.

pub mod checkers;
pub mod counterexample;
pub mod model;
pub mod scan;
pub mod topology;

pub use model::{
    decode, encode, pair_enumerate, AdjoinedElt, Coord, Elt, IndexLaw, IndexSet, LimitAssignment,
    ModelError, ShiftMap, SymbolicSeq, TriVal,
};
