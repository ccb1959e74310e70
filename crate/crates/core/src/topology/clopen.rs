//! Tail sets and finite boolean combinations of them.
//!
//! A tail set collects the values of one entry along an index set, with or
//! without the assigned limit. Clopen expressions combine tail sets and
//! finite point sets by union, intersection and complement; membership and
//! per-entry index traces stay exactly computable because preimages and
//! collision sets do.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::model::{collisions, encode, CollisionSet, Elt, IndexSet, LimitAssignment};

/// `s[I]` or `s[I]*`: the values of entry `entry` along `indices`, plus the
/// assigned limit when `with_limit` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSet {
    pub entry: usize,
    pub indices: IndexSet,
    pub with_limit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "expr", rename_all = "snake_case")]
pub enum ClopenExpr {
    Empty,
    Whole,
    Points { members: BTreeSet<Elt> },
    Tail(TailSet),
    Union { parts: Vec<ClopenExpr> },
    Inter { parts: Vec<ClopenExpr> },
    Not { inner: Box<ClopenExpr> },
}

impl ClopenExpr {
    pub fn points<I: IntoIterator<Item = Elt>>(members: I) -> ClopenExpr {
        ClopenExpr::Points {
            members: members.into_iter().collect(),
        }
    }

    pub fn tail(entry: usize, indices: IndexSet, with_limit: bool) -> ClopenExpr {
        ClopenExpr::Tail(TailSet {
            entry,
            indices,
            with_limit,
        })
    }

    pub fn union<I: IntoIterator<Item = ClopenExpr>>(parts: I) -> ClopenExpr {
        ClopenExpr::Union {
            parts: parts.into_iter().collect(),
        }
    }

    pub fn inter<I: IntoIterator<Item = ClopenExpr>>(parts: I) -> ClopenExpr {
        ClopenExpr::Inter {
            parts: parts.into_iter().collect(),
        }
    }

    pub fn complement(self) -> ClopenExpr {
        ClopenExpr::Not {
            inner: Box::new(self),
        }
    }

    /// Pointwise membership.
    pub fn contains(&self, x: &Elt, l: &LimitAssignment) -> bool {
        match self {
            ClopenExpr::Empty => false,
            ClopenExpr::Whole => true,
            ClopenExpr::Points { members } => members.contains(x),
            ClopenExpr::Tail(t) => {
                (t.with_limit && x == l.limit(t.entry))
                    || !l.seq(t.entry).preimage(x).intersect(&t.indices).is_empty()
            }
            ClopenExpr::Union { parts } => parts.iter().any(|p| p.contains(x, l)),
            ClopenExpr::Inter { parts } => parts.iter().all(|p| p.contains(x, l)),
            ClopenExpr::Not { inner } => !inner.contains(x, l),
        }
    }

    /// Stable textual rendering: tail-set identifiers, encoded finite sets,
    /// and the boolean connectives.
    pub fn render(&self) -> String {
        match self {
            ClopenExpr::Empty => "∅".to_string(),
            ClopenExpr::Whole => "X".to_string(),
            ClopenExpr::Points { members } => {
                let mut out = String::from("{");
                for (i, x) in members.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&render_elt(x));
                }
                out.push('}');
                out
            }
            ClopenExpr::Tail(t) => {
                let star = if t.with_limit { "*" } else { "" };
                format!("s{}[{}]{}", t.entry, t.indices, star)
            }
            ClopenExpr::Union { parts } => render_joined(parts, " ∪ "),
            ClopenExpr::Inter { parts } => render_joined(parts, " ∩ "),
            ClopenExpr::Not { inner } => format!("∁{}", inner.render()),
        }
    }
}

fn render_joined(parts: &[ClopenExpr], sep: &str) -> String {
    if parts.is_empty() {
        return "∅".to_string();
    }
    let mut out = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        out.push_str(&p.render());
    }
    out.push(')');
    out
}

/// Elements with small coordinates render as their integer code, the rest
/// as explicit support maps.
pub(crate) fn render_elt(x: &Elt) -> String {
    let small = x
        .max_coord()
        .try_into()
        .map(|c: u64| c <= 64)
        .unwrap_or(false);
    if small {
        if let Ok(code) = encode(x) {
            return format!("e{code}");
        }
    }
    let mut out = String::new();
    let _ = write!(out, "{x}");
    out
}

/// Collision sets for entry pairs, computed once per run.
pub(crate) struct PairCache {
    map: RefCell<BTreeMap<(usize, usize), Rc<CollisionSet>>>,
}

impl PairCache {
    pub fn new() -> PairCache {
        PairCache {
            map: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn get(&self, l: &LimitAssignment, i: usize, j: usize) -> Rc<CollisionSet> {
        if let Some(cs) = self.map.borrow().get(&(i, j)) {
            return Rc::clone(cs);
        }
        let cs = Rc::new(collisions(l.seq(i), l.seq(j)));
        self.map.borrow_mut().insert((i, j), Rc::clone(&cs));
        cs
    }
}

/// `{n : s_i(n) ∈ expr}`, exactly.
pub(crate) fn member_indices(
    expr: &ClopenExpr,
    i: usize,
    l: &LimitAssignment,
    cache: &PairCache,
) -> IndexSet {
    match expr {
        ClopenExpr::Empty => IndexSet::empty(),
        ClopenExpr::Whole => IndexSet::full(),
        ClopenExpr::Points { members } => members
            .iter()
            .fold(IndexSet::empty(), |acc, x| acc.union(&l.seq(i).preimage(x))),
        ClopenExpr::Tail(t) => {
            let mut out = cache.get(l, i, t.entry).project_first(&t.indices);
            if t.with_limit {
                out = out.union(&l.seq(i).preimage(l.limit(t.entry)));
            }
            out
        }
        ClopenExpr::Union { parts } => parts
            .iter()
            .fold(IndexSet::empty(), |acc, p| {
                acc.union(&member_indices(p, i, l, cache))
            }),
        ClopenExpr::Inter { parts } => parts
            .iter()
            .fold(IndexSet::full(), |acc, p| {
                acc.intersect(&member_indices(p, i, l, cache))
            }),
        ClopenExpr::Not { inner } => member_indices(inner, i, l, cache).complement(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IndexLaw, SymbolicSeq, TriVal};

    fn sample() -> LimitAssignment {
        LimitAssignment::new([
            (
                SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(0)).unwrap(),
                Elt::one_at(0u64),
            ),
            (
                SymbolicSeq::point(TriVal::One, IndexLaw::two_pow(0)).unwrap(),
                Elt::zero_at(0u64),
            ),
        ])
        .unwrap()
    }

    #[test]
    fn tail_membership() {
        let l = sample();
        let t = ClopenExpr::tail(0, IndexSet::full(), true);
        assert!(t.contains(&Elt::zero_at(3u64), &l)); // value at n = 1
        assert!(t.contains(&Elt::one_at(0u64), &l)); // the limit
        assert!(!t.contains(&Elt::one_at(3u64), &l));
        let bare = ClopenExpr::tail(0, IndexSet::full(), false);
        assert!(!bare.contains(&Elt::one_at(0u64), &l));
    }

    #[test]
    fn member_indices_against_scan() {
        let l = sample();
        let cache = PairCache::new();
        let exprs = [
            ClopenExpr::tail(1, IndexSet::cofinite([0, 2]), true),
            ClopenExpr::points([Elt::zero_at(3u64), Elt::one_at(3u64)]),
            ClopenExpr::union([
                ClopenExpr::tail(0, IndexSet::full(), true),
                ClopenExpr::points([Elt::one_at(9u64)]),
            ])
            .complement(),
            ClopenExpr::inter([
                ClopenExpr::tail(0, IndexSet::full(), false),
                ClopenExpr::points([Elt::zero_at(1u64), Elt::zero_at(9u64)]),
            ]),
        ];
        for expr in &exprs {
            for i in 0..l.len() {
                let idx = member_indices(expr, i, &l, &cache);
                for n in 0..16u64 {
                    assert_eq!(
                        idx.contains(n),
                        expr.contains(&l.seq(i).eval(n), &l),
                        "expr {expr:?} entry {i} index {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn render_is_stable() {
        let e = ClopenExpr::union([
            ClopenExpr::tail(0, IndexSet::cofinite([1]), true),
            ClopenExpr::points([Elt::one_at(0u64)]),
        ]);
        assert_eq!(e.render(), "(s0[ω∖{1}]* ∪ {e1})");
    }
}
