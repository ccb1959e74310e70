//! Decision procedures, with certificates, for the separation conditions at
//! every layer: plain convergence, shift actions, semigroup multipliers and
//! the meet-multiplier form.

mod act;
mod certificate;
mod semilattice;
mod separation;

pub use act::{
    check_act, check_commutative, check_semigroup, collapsing_shift, shift_orbit,
};
pub use certificate::{
    CertMode, Certificate, CertifiedClaim, CheckReport, Claim, Layer, Verdict, Witness,
};
pub use semilattice::{
    check_semilattice, check_semilattice_with, probe_multipliers, SemilatticeOptions,
};
pub use separation::{check_t1, check_t2};
