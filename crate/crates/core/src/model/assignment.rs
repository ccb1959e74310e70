//! Assignments of intended limits to finitely many symbolic sequences, and
//! the two-sided meet shifts acting on them.

use serde::{Deserialize, Serialize};

use super::{AdjoinedElt, Elt, ModelError, SymbolicSeq};

/// One sequence together with the point it is required to converge to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitEntry {
    pub seq: SymbolicSeq,
    pub limit: Elt,
}

/// A finite indexed family of (sequence, limit) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitAssignment {
    entries: Vec<LimitEntry>,
}

impl LimitAssignment {
    /// Builds an assignment, rejecting two copies of the same sequence with
    /// different limits. Semantically equal sequences hiding behind distinct
    /// descriptions are left for the pair checker to reject.
    pub fn new<I>(entries: I) -> Result<LimitAssignment, ModelError>
    where
        I: IntoIterator<Item = (SymbolicSeq, Elt)>,
    {
        let out = Self::from_entries_unchecked(entries);
        if let Some((i, j)) = out.find_conflicting_duplicate() {
            return Err(ModelError::DuplicateSequence(i, j));
        }
        Ok(out)
    }

    /// Builds an assignment without the duplicate check. Shift orbits use
    /// this deliberately: an orbit can be ill-defined, and the checkers turn
    /// that into a failure verdict with a witness.
    pub fn from_entries_unchecked<I>(entries: I) -> LimitAssignment
    where
        I: IntoIterator<Item = (SymbolicSeq, Elt)>,
    {
        LimitAssignment {
            entries: entries
                .into_iter()
                .map(|(seq, limit)| LimitEntry { seq, limit })
                .collect(),
        }
    }

    /// First pair of entries carrying the same sequence with distinct limits.
    pub fn find_conflicting_duplicate(&self) -> Option<(usize, usize)> {
        for i in 0..self.entries.len() {
            for j in i + 1..self.entries.len() {
                if self.entries[i].seq.same_sequence(&self.entries[j].seq)
                    && self.entries[i].limit != self.entries[j].limit
                {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LimitEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Result<&LimitEntry, ModelError> {
        self.entries.get(i).ok_or(ModelError::EntryOutOfRange(i))
    }

    pub fn seq(&self, i: usize) -> &SymbolicSeq {
        &self.entries[i].seq
    }

    pub fn limit(&self, i: usize) -> &Elt {
        &self.entries[i].limit
    }

    /// The distinct limits, in order of first appearance.
    pub fn limits(&self) -> Vec<Elt> {
        let mut out: Vec<Elt> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.limit) {
                out.push(e.limit.clone());
            }
        }
        out
    }

    /// The values `s_n` for `n < window` of one entry, without duplicates,
    /// in order of first occurrence.
    pub fn window_values(&self, i: usize, window: u64) -> Vec<Elt> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out: Vec<Elt> = Vec::new();
        for n in 0..window {
            let v = self.entries[i].seq.eval(n);
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
        out
    }
}

/// The two-sided shift `x ↦ left·x·right`. The carrier is commutative, so
/// the action factors through the meet of the two multipliers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftMap {
    pub left: AdjoinedElt,
    pub right: AdjoinedElt,
}

impl ShiftMap {
    pub fn new(left: AdjoinedElt, right: AdjoinedElt) -> ShiftMap {
        ShiftMap { left, right }
    }

    pub fn identity() -> ShiftMap {
        ShiftMap {
            left: AdjoinedElt::Unit,
            right: AdjoinedElt::Unit,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_unit() && self.right.is_unit()
    }

    /// The single multiplier the shift acts by.
    pub fn effective(&self) -> AdjoinedElt {
        self.left.meet(&self.right)
    }

    pub fn apply(&self, x: &Elt) -> Elt {
        self.effective().apply(x)
    }

    pub fn apply_adjoined(&self, x: &AdjoinedElt) -> AdjoinedElt {
        self.effective().meet(x)
    }

    pub fn apply_seq(&self, s: &SymbolicSeq) -> SymbolicSeq {
        s.scaled(&self.effective())
    }

    /// Composition of shifts is again a shift.
    pub fn compose(&self, other: &ShiftMap) -> ShiftMap {
        ShiftMap {
            left: self.left.meet(&other.left),
            right: self.right.meet(&other.right),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IndexLaw, TriVal};

    fn zpt(k: u32) -> SymbolicSeq {
        SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(k)).unwrap()
    }

    #[test]
    fn duplicate_with_distinct_limits_rejected() {
        let err = LimitAssignment::new([
            (zpt(0), Elt::one_at(0u64)),
            (zpt(0), Elt::one_at(1u64)),
        ]);
        assert_eq!(err, Err(ModelError::DuplicateSequence(0, 1)));
    }

    #[test]
    fn duplicate_with_equal_limits_allowed() {
        let l = LimitAssignment::new([
            (zpt(0), Elt::one_at(0u64)),
            (zpt(0), Elt::one_at(0u64)),
        ])
        .unwrap();
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn shift_composition_matches_pointwise_application() {
        let a = ShiftMap::new(
            AdjoinedElt::Elem(Elt::zero_at(1u64)),
            AdjoinedElt::Unit,
        );
        let b = ShiftMap::new(
            AdjoinedElt::Elem(Elt::one_at(4u64)),
            AdjoinedElt::Elem(Elt::zero_at(2u64)),
        );
        let x = Elt::one_at(9u64);
        assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
    }

    #[test]
    fn effective_multiplier_on_identity() {
        assert_eq!(ShiftMap::identity().effective(), AdjoinedElt::Unit);
        let x = Elt::one_at(3u64);
        assert_eq!(ShiftMap::identity().apply(&x), x);
    }
}
