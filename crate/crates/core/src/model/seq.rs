//! Symbolic sequences with exact preimage queries.
//!
//! Three shapes are representable: point sequences `n ↦ v_{law(n)}` whose
//! values are singletons of kind 0 or 1, the same sequences multiplied by a
//! fixed element, and eventually constant sequences given as a finite prefix
//! plus a constant tail. Each shape answers `{n : s_n = x}` exactly as a
//! finite or cofinite set, which is what keeps every separation condition in
//! the checkers decidable.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{AdjoinedElt, Elt, IndexLaw, IndexSet, ModelError, TriVal};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum SeqKey {
    Point(TriVal, BigUint),
    Shifted(Elt, TriVal, BigUint),
    Table(Vec<Elt>, Elt),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolicSeq {
    /// `n ↦ v_{law(n)}`: the singleton with value `value` at coordinate `law(n)`.
    Point { value: TriVal, law: IndexLaw },
    /// A point sequence multiplied through by a fixed element.
    ShiftedPoint {
        mult: Elt,
        value: TriVal,
        law: IndexLaw,
    },
    /// Finite prefix, then a constant tail.
    Table { prefix: Vec<Elt>, tail: Elt },
}

impl SymbolicSeq {
    pub fn point(value: TriVal, law: IndexLaw) -> Result<SymbolicSeq, ModelError> {
        if value == TriVal::Two {
            return Err(ModelError::PointValueKind);
        }
        Ok(SymbolicSeq::Point { value, law })
    }

    /// Normalises by trimming prefix entries equal to the tail.
    pub fn table(mut prefix: Vec<Elt>, tail: Elt) -> SymbolicSeq {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        SymbolicSeq::Table { prefix, tail }
    }

    pub fn constant(value: Elt) -> SymbolicSeq {
        SymbolicSeq::table(Vec::new(), value)
    }

    pub fn eval(&self, n: u64) -> Elt {
        match self {
            SymbolicSeq::Point { value, law } => {
                Elt::singleton(law.eval(n), *value).expect("point value is 0 or 1")
            }
            SymbolicSeq::ShiftedPoint { mult, value, law } => {
                let base = Elt::singleton(law.eval(n), *value).expect("point value is 0 or 1");
                mult.meet(&base)
            }
            SymbolicSeq::Table { prefix, tail } => prefix
                .get(usize::try_from(n).expect("index fits usize"))
                .cloned()
                .unwrap_or_else(|| tail.clone()),
        }
    }

    /// `{n : s_n = x}`, exactly.
    pub fn preimage(&self, x: &Elt) -> IndexSet {
        match self {
            SymbolicSeq::Point { value, law } => {
                if x.support_size() != 1 {
                    return IndexSet::empty();
                }
                let (coord, v) = x.support().next().expect("singleton");
                if v != *value {
                    return IndexSet::empty();
                }
                match law.solve(coord) {
                    Some(n) => IndexSet::finite([n]),
                    None => IndexSet::empty(),
                }
            }
            SymbolicSeq::ShiftedPoint { mult, value, law } => {
                let mut hits = Vec::new();
                // indices whose law coordinate lands inside the multiplier
                for (coord, _) in mult.support() {
                    if let Some(n) = law.solve(coord) {
                        if self.eval(n) == *x {
                            hits.push(n);
                        }
                    }
                }
                // the clean shape: x extends the multiplier by exactly one
                // fresh coordinate carrying the sequence value
                if x.support_size() == mult.support_size() + 1 {
                    let mut fresh = None;
                    let mut extends = true;
                    for (coord, v) in x.support() {
                        match mult.get(coord) {
                            TriVal::Two => {
                                if fresh.is_some() || v != *value {
                                    extends = false;
                                    break;
                                }
                                fresh = Some(coord.clone());
                            }
                            mv => {
                                if mv != v {
                                    extends = false;
                                    break;
                                }
                            }
                        }
                    }
                    if extends {
                        if let Some(coord) = fresh {
                            if let Some(n) = law.solve(&coord) {
                                hits.push(n);
                            }
                        }
                    }
                }
                IndexSet::finite(hits)
            }
            SymbolicSeq::Table { prefix, tail } => {
                let prefix_hits = prefix
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| *p == x)
                    .map(|(n, _)| n as u64);
                if x == tail {
                    let misses = prefix
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| *p != x)
                        .map(|(n, _)| n as u64);
                    IndexSet::cofinite(misses)
                } else {
                    IndexSet::finite(prefix_hits)
                }
            }
        }
    }

    /// Multiplies the whole sequence by a fixed element.
    pub fn scaled(&self, mult: &AdjoinedElt) -> SymbolicSeq {
        let a = match mult {
            AdjoinedElt::Unit => return self.clone(),
            AdjoinedElt::Elem(a) => a,
        };
        match self {
            SymbolicSeq::Point { value, law } => SymbolicSeq::ShiftedPoint {
                mult: a.clone(),
                value: *value,
                law: law.clone(),
            },
            SymbolicSeq::ShiftedPoint { mult, value, law } => SymbolicSeq::ShiftedPoint {
                mult: a.meet(mult),
                value: *value,
                law: law.clone(),
            },
            SymbolicSeq::Table { prefix, tail } => SymbolicSeq::table(
                prefix.iter().map(|p| a.meet(p)).collect(),
                a.meet(tail),
            ),
        }
    }

    /// Semantic equality: do the two descriptions denote the same sequence?
    pub fn same_sequence(&self, other: &SymbolicSeq) -> bool {
        match (self, other) {
            (
                SymbolicSeq::Point { value: v1, law: l1 },
                SymbolicSeq::Point { value: v2, law: l2 },
            ) => v1 == v2 && l1.same_function(l2),
            (
                SymbolicSeq::ShiftedPoint {
                    mult: m1,
                    value: v1,
                    law: l1,
                },
                SymbolicSeq::ShiftedPoint {
                    mult: m2,
                    value: v2,
                    law: l2,
                },
            ) => m1 == m2 && v1 == v2 && l1.same_function(l2),
            (
                SymbolicSeq::Table {
                    prefix: p1,
                    tail: t1,
                },
                SymbolicSeq::Table {
                    prefix: p2,
                    tail: t2,
                },
            ) => p1 == p2 && t1 == t2,
            _ => false,
        }
    }

    /// Canonical key for semantic equality; two sequences denote the same
    /// function exactly when their keys coincide.
    pub(crate) fn semantic_key(&self) -> SeqKey {
        match self {
            SymbolicSeq::Point { value, law } => SeqKey::Point(*value, law.scale()),
            SymbolicSeq::ShiftedPoint { mult, value, law } => {
                SeqKey::Shifted(mult.clone(), *value, law.scale())
            }
            SymbolicSeq::Table { prefix, tail } => SeqKey::Table(prefix.clone(), tail.clone()),
        }
    }

    pub(crate) fn point_parts(&self) -> Option<(Option<&Elt>, TriVal, &IndexLaw)> {
        match self {
            SymbolicSeq::Point { value, law } => Some((None, *value, law)),
            SymbolicSeq::ShiftedPoint { mult, value, law } => Some((Some(mult), *value, law)),
            SymbolicSeq::Table { .. } => None,
        }
    }

    pub(crate) fn table_parts(&self) -> Option<(&[Elt], &Elt)> {
        match self {
            SymbolicSeq::Table { prefix, tail } => Some((prefix, tail)),
            _ => None,
        }
    }
}
