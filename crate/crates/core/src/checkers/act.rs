//! Checks for shift actions: the orbit construction and the act, semigroup
//! and commutative-form layers, all reduced to the base pair checks on the
//! orbit assignment.

use std::collections::BTreeSet;

use crate::model::{
    AdjoinedElt, Elt, LimitAssignment, ModelError, ShiftMap,
};

use super::certificate::{CheckReport, Claim, Layer, Verdict, Witness};
use super::separation::check_t2;

/// Where an orbit entry came from.
#[derive(Clone, Copy, Debug)]
pub(crate) struct OrbitOrigin {
    pub shift: usize,
    pub entry: usize,
}

/// The orbit assignment: every shift applied to every entry, with exact
/// duplicates (same sequence, same limit) folded away. A sequence appearing
/// twice with different limits is kept so the pair checker can reject it.
pub fn shift_orbit(
    l: &LimitAssignment,
    shifts: &[ShiftMap],
) -> Result<LimitAssignment, ModelError> {
    Ok(shift_orbit_with_origins(l, shifts)?.0)
}

pub(crate) fn shift_orbit_with_origins(
    l: &LimitAssignment,
    shifts: &[ShiftMap],
) -> Result<(LimitAssignment, Vec<OrbitOrigin>), ModelError> {
    if !shifts.iter().any(ShiftMap::is_identity) {
        return Err(ModelError::MissingIdentityShift);
    }
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    let mut origins = Vec::new();
    for (si, shift) in shifts.iter().enumerate() {
        for (ei, entry) in l.entries().iter().enumerate() {
            let seq = shift.apply_seq(&entry.seq);
            let limit = shift.apply(&entry.limit);
            if seen.insert((seq.semantic_key(), limit.clone())) {
                entries.push((seq, limit));
                origins.push(OrbitOrigin { shift: si, entry: ei });
            }
        }
    }
    Ok((
        LimitAssignment::from_entries_unchecked(entries),
        origins,
    ))
}

fn orbit_mult(shifts: &[ShiftMap], origins: &[OrbitOrigin], orbit_entry: usize) -> AdjoinedElt {
    shifts[origins[orbit_entry].shift].effective()
}

/// Rewrites an orbit-level report in terms of the base entries and the
/// effective shift multipliers.
fn remap(
    mut report: CheckReport,
    shifts: &[ShiftMap],
    origins: &[OrbitOrigin],
    layer: Layer,
) -> CheckReport {
    report.layer = layer;
    for cc in &mut report.claims {
        match &mut cc.claim {
            Claim::ValueFiniteness { entry, mult, .. } => {
                *mult = Some(orbit_mult(shifts, origins, *entry));
                *entry = origins[*entry].entry;
            }
            Claim::PairSeparation {
                s_entry,
                t_entry,
                s_mult,
                t_mult,
            } => {
                *s_mult = orbit_mult(shifts, origins, *s_entry);
                *t_mult = orbit_mult(shifts, origins, *t_entry);
                *s_entry = origins[*s_entry].entry;
                *t_entry = origins[*t_entry].entry;
            }
        }
    }
    if let Verdict::Fail { witness } = &mut report.verdict {
        match witness {
            Witness::InfiniteValue { entry, mult, .. } => {
                *mult = orbit_mult(shifts, origins, *entry);
                *entry = origins[*entry].entry;
            }
            Witness::SharedValues {
                s_entry,
                t_entry,
                s_mult,
                t_mult,
                ..
            } => {
                *s_mult = orbit_mult(shifts, origins, *s_entry);
                *t_mult = orbit_mult(shifts, origins, *t_entry);
                *s_entry = origins[*s_entry].entry;
                *t_entry = origins[*t_entry].entry;
            }
            _ => {}
        }
    }
    report
}

pub(crate) fn check_with_shifts(
    l: &LimitAssignment,
    shifts: &[ShiftMap],
    window: u64,
    layer: Layer,
) -> Result<CheckReport, ModelError> {
    let (orbit, origins) = shift_orbit_with_origins(l, shifts)?;
    let report = check_t2(&orbit, window)?;
    Ok(remap(report, shifts, &origins, layer))
}

/// Separation for an act of meet shifts: equivalent to the base pair check
/// on the shift orbit.
pub fn check_act(
    l: &LimitAssignment,
    shifts: &[ShiftMap],
    window: u64,
) -> Result<CheckReport, ModelError> {
    check_with_shifts(l, shifts, window, Layer::Act)
}

/// Separation against two-sided multiplier pairs `x ↦ a·x·b`.
pub fn check_semigroup(
    l: &LimitAssignment,
    multipliers: &[(AdjoinedElt, AdjoinedElt)],
    window: u64,
) -> Result<CheckReport, ModelError> {
    let shifts: Vec<ShiftMap> = multipliers
        .iter()
        .map(|(a, b)| ShiftMap::new(a.clone(), b.clone()))
        .collect();
    check_with_shifts(l, &shifts, window, Layer::Semigroup)
}

/// The one-multiplier form for commutative carriers: `x ↦ a·x`.
pub fn check_commutative(
    l: &LimitAssignment,
    multipliers: &[AdjoinedElt],
    window: u64,
) -> Result<CheckReport, ModelError> {
    let shifts: Vec<ShiftMap> = multipliers
        .iter()
        .map(|a| ShiftMap::new(a.clone(), AdjoinedElt::Unit))
        .collect();
    check_with_shifts(l, &shifts, window, Layer::Commutative)
}

/// Multiplier that folds two constant sequences together while keeping their
/// shifted limits apart; used by tests and negative controls.
pub fn collapsing_shift(a: &Elt) -> ShiftMap {
    ShiftMap::new(AdjoinedElt::Elem(a.clone()), AdjoinedElt::Unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IndexLaw, SymbolicSeq, TriVal};

    fn zpt(k: u32) -> SymbolicSeq {
        SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(k)).unwrap()
    }

    #[test]
    fn identity_orbit_is_the_assignment_itself() {
        let l = LimitAssignment::new([(zpt(0), Elt::one_at(0u64))]).unwrap();
        let orbit = shift_orbit(&l, &[ShiftMap::identity()]).unwrap();
        assert_eq!(orbit, l);
    }

    #[test]
    fn missing_identity_rejected() {
        let l = LimitAssignment::new([(zpt(0), Elt::one_at(0u64))]).unwrap();
        let a = collapsing_shift(&Elt::zero_at(3u64));
        assert_eq!(
            shift_orbit(&l, &[a]).unwrap_err(),
            ModelError::MissingIdentityShift
        );
    }

    #[test]
    fn shifted_entry_carries_shifted_limit() {
        let x = Elt::one_at(0u64);
        let l = LimitAssignment::new([(zpt(0), x.clone())]).unwrap();
        let a = Elt::zero_at(3u64);
        let orbit = shift_orbit(&l, &[ShiftMap::identity(), collapsing_shift(&a)]).unwrap();
        assert_eq!(orbit.len(), 2);
        assert_eq!(*orbit.limit(1), a.meet(&x));
        assert!(orbit
            .seq(1)
            .same_sequence(&zpt(0).scaled(&AdjoinedElt::Elem(a))));
    }

    #[test]
    fn orbit_size_without_collisions() {
        let l = LimitAssignment::new([
            (zpt(0), Elt::one_at(0u64)),
            (zpt(1), Elt::one_at(1u64)),
        ])
        .unwrap();
        let shifts = [ShiftMap::identity(), collapsing_shift(&Elt::zero_at(5u64))];
        let orbit = shift_orbit(&l, &shifts).unwrap();
        assert_eq!(orbit.len(), shifts.len() * l.len());
    }

    #[test]
    fn identity_only_matches_base_check() {
        let l = LimitAssignment::new([
            (zpt(0), Elt::one_at(0u64)),
            (zpt(1), Elt::one_at(1u64)),
        ])
        .unwrap();
        let act = check_act(&l, &[ShiftMap::identity()], 16).unwrap();
        let base = check_t2(&l, 16).unwrap();
        assert_eq!(act.verdict, base.verdict);
        assert_eq!(act.claims.len(), base.claims.len());
    }

    #[test]
    fn collapse_with_distinct_shifted_limits_fails() {
        // two constant sequences whose limits are wrong for the base layer;
        // multiplying by the meet of the constants folds the sequences
        // together while their shifted limits stay apart
        let c1 = Elt::one_at(0u64);
        let c2 = Elt::one_at(1u64);
        let l1 = Elt::one_at(3u64);
        let l2 = Elt::one_at(5u64);
        let l = LimitAssignment::new([
            (SymbolicSeq::constant(c1.clone()), l1),
            (SymbolicSeq::constant(c2.clone()), l2),
        ])
        .unwrap();
        let shifts = [ShiftMap::identity(), collapsing_shift(&c1.meet(&c2))];
        let report = check_act(&l, &shifts, 8).unwrap();
        match &report.verdict {
            Verdict::Fail {
                witness:
                    Witness::SharedValues {
                        s_entry,
                        t_entry,
                        s_mult,
                        t_mult,
                        n,
                        m,
                    },
            } => {
                assert_eq!((*s_entry, *t_entry), (0, 1));
                assert_eq!(s_mult, t_mult);
                assert!(!s_mult.is_unit());
                // replay: the shifted values agree, the shifted limits do not
                let sv = s_mult.apply(&l.seq(*s_entry).eval(*n));
                let tv = t_mult.apply(&l.seq(*t_entry).eval(*m));
                assert_eq!(sv, tv);
                assert_ne!(
                    s_mult.apply(l.limit(*s_entry)),
                    t_mult.apply(l.limit(*t_entry))
                );
            }
            other => panic!("expected collapse failure, got {other:?}"),
        }
    }

    #[test]
    fn semigroup_identity_only_matches_base() {
        let l = LimitAssignment::new([
            (zpt(0), Elt::one_at(0u64)),
            (zpt(2), Elt::zero_at(0u64)),
        ])
        .unwrap();
        let report =
            check_semigroup(&l, &[(AdjoinedElt::Unit, AdjoinedElt::Unit)], 16).unwrap();
        let base = check_t2(&l, 16).unwrap();
        assert_eq!(report.verdict, base.verdict);
    }

    #[test]
    fn two_sided_pair_equals_one_sided_meet() {
        let l = LimitAssignment::new([
            (zpt(0), Elt::one_at(0u64)),
            (zpt(1), Elt::one_at(1u64)),
            (zpt(2), Elt::zero_at(0u64)),
        ])
        .unwrap();
        let a = Elt::zero_at(2u64);
        let b = Elt::one_at(7u64);
        let two_sided = check_semigroup(
            &l,
            &[
                (AdjoinedElt::Unit, AdjoinedElt::Unit),
                (AdjoinedElt::Elem(a.clone()), AdjoinedElt::Elem(b.clone())),
            ],
            16,
        )
        .unwrap();
        let one_sided = check_commutative(
            &l,
            &[AdjoinedElt::Unit, AdjoinedElt::Elem(a.meet(&b))],
            16,
        )
        .unwrap();
        assert_eq!(two_sided.verdict, one_sided.verdict);
        assert_eq!(two_sided.claims, one_sided.claims);
    }
}
