//! Finite-or-cofinite sets of sequence indices.
//!
//! Every index set the deciders manipulate is either finite or has finite
//! complement, and the class is closed under the boolean operations, so
//! membership, emptiness and extremal elements stay exactly computable.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexSet {
    Finite { members: BTreeSet<u64> },
    Cofinite { excluded: BTreeSet<u64> },
}

impl IndexSet {
    pub fn empty() -> IndexSet {
        IndexSet::Finite {
            members: BTreeSet::new(),
        }
    }

    pub fn full() -> IndexSet {
        IndexSet::Cofinite {
            excluded: BTreeSet::new(),
        }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> IndexSet {
        IndexSet::Finite {
            members: members.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> IndexSet {
        IndexSet::Cofinite {
            excluded: excluded.into_iter().collect(),
        }
    }

    /// `{n : n ≥ from}`.
    pub fn from_index(from: u64) -> IndexSet {
        IndexSet::cofinite(0..from)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IndexSet::Finite { .. })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IndexSet::Finite { members } if members.is_empty())
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            IndexSet::Finite { members } => members.contains(&n),
            IndexSet::Cofinite { excluded } => !excluded.contains(&n),
        }
    }

    /// The finite member set, when finite.
    pub fn members(&self) -> Option<&BTreeSet<u64>> {
        match self {
            IndexSet::Finite { members } => Some(members),
            IndexSet::Cofinite { .. } => None,
        }
    }

    /// The finite complement, when cofinite.
    pub fn excluded(&self) -> Option<&BTreeSet<u64>> {
        match self {
            IndexSet::Finite { .. } => None,
            IndexSet::Cofinite { excluded } => Some(excluded),
        }
    }

    pub fn least(&self) -> Option<u64> {
        match self {
            IndexSet::Finite { members } => members.iter().next().copied(),
            IndexSet::Cofinite { excluded } => (0..).find(|n| !excluded.contains(n)),
        }
    }

    pub fn complement(&self) -> IndexSet {
        match self {
            IndexSet::Finite { members } => IndexSet::Cofinite {
                excluded: members.clone(),
            },
            IndexSet::Cofinite { excluded } => IndexSet::Finite {
                members: excluded.clone(),
            },
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        match (self, other) {
            (IndexSet::Finite { members: a }, IndexSet::Finite { members: b }) => {
                IndexSet::Finite {
                    members: a.union(b).copied().collect(),
                }
            }
            (IndexSet::Cofinite { excluded: a }, IndexSet::Cofinite { excluded: b }) => {
                IndexSet::Cofinite {
                    excluded: a.intersection(b).copied().collect(),
                }
            }
            (IndexSet::Finite { members }, IndexSet::Cofinite { excluded })
            | (IndexSet::Cofinite { excluded }, IndexSet::Finite { members }) => {
                IndexSet::Cofinite {
                    excluded: excluded.difference(members).copied().collect(),
                }
            }
        }
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        self.complement()
            .union(&other.complement())
            .complement()
    }

    pub fn minus(&self, other: &IndexSet) -> IndexSet {
        self.intersect(&other.complement())
    }

    /// Members strictly below `bound`, in order.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|n| self.contains(*n)).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<u64>) -> fmt::Result {
            write!(f, "{{")?;
            for (i, n) in set.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{n}")?;
            }
            write!(f, "}}")
        }
        match self {
            IndexSet::Finite { members } => write_set(f, members),
            IndexSet::Cofinite { excluded } if excluded.is_empty() => write!(f, "ω"),
            IndexSet::Cofinite { excluded } => {
                write!(f, "ω∖")?;
                write_set(f, excluded)
            }
        }
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_algebra() {
        let a = IndexSet::finite([1, 2, 3]);
        let b = IndexSet::cofinite([2, 5]);
        assert!(a.union(&b).contains(2));
        assert!(!a.union(&b).contains(5));
        assert!(a.intersect(&b).contains(1));
        assert!(!a.intersect(&b).contains(2));
        assert_eq!(a.complement().complement(), a);
        assert_eq!(b.minus(&a), IndexSet::cofinite([1, 2, 3, 5]));
    }

    #[test]
    fn least_member() {
        assert_eq!(IndexSet::empty().least(), None);
        assert_eq!(IndexSet::cofinite([0, 1, 3]).least(), Some(2));
        assert_eq!(IndexSet::finite([7, 9]).least(), Some(7));
        assert_eq!(IndexSet::from_index(4).least(), Some(4));
    }

    #[test]
    fn window_members() {
        let s = IndexSet::cofinite([1]);
        assert_eq!(s.members_below(4), vec![0, 2, 3]);
    }
}
