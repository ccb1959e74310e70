//! Openness in the largest admissible topology, closedness of tail sets,
//! isolated-point witnesses and finite subcovers.

use serde::{Deserialize, Serialize};

use crate::checkers::{Certificate, Verdict, Witness};
use crate::model::{Elt, IndexSet, LimitAssignment};

use super::clopen::{member_indices, ClopenExpr, PairCache, TailSet};
use super::TopologyError;

/// Result of an openness check: for every entry whose limit lies inside,
/// the finitely many escaping indices, exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenCheck {
    pub verdict: Verdict,
    pub window: u64,
    /// Per entry with limit inside: the exact set of escaping indices.
    pub certificates: Vec<(usize, Certificate)>,
}

impl OpenCheck {
    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// A set is open in the largest admissible topology exactly when every
/// entry whose limit it contains escapes it only finitely often.
pub fn is_admissible_open(u: &ClopenExpr, l: &LimitAssignment, window: u64) -> OpenCheck {
    let cache = PairCache::new();
    is_admissible_open_cached(u, l, window, &cache)
}

pub(crate) fn is_admissible_open_cached(
    u: &ClopenExpr,
    l: &LimitAssignment,
    window: u64,
    cache: &PairCache,
) -> OpenCheck {
    let mut certificates = Vec::new();
    for i in 0..l.len() {
        if !u.contains(l.limit(i), l) {
            continue;
        }
        let inside = member_indices(u, i, l, cache);
        let outside = inside.complement();
        match outside.members() {
            Some(members) => {
                certificates.push((i, Certificate::exact(members.iter().copied())));
            }
            None => {
                let n = outside.least().expect("cofinite set has a member");
                return OpenCheck {
                    verdict: Verdict::Fail {
                        witness: Witness::EscapesOpenSet { entry: i, n },
                    },
                    window,
                    certificates,
                };
            }
        }
    }
    OpenCheck {
        verdict: Verdict::Pass,
        window,
        certificates,
    }
}

/// Closedness of `s[I]*`: openness of its complement.
pub fn tail_set_closed(
    l: &LimitAssignment,
    entry: usize,
    indices: &IndexSet,
    window: u64,
) -> OpenCheck {
    let u = ClopenExpr::tail(entry, indices.clone(), true).complement();
    is_admissible_open(&u, l, window)
}

/// A non-limit point of a tail set, isolated by removing its occurrence
/// indices: the singleton is the difference of the two tail sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedPoint {
    pub expr: ClopenExpr,
    /// The shrunken index set with the point's occurrences removed.
    pub remaining: IndexSet,
    pub closed_check: OpenCheck,
}

pub fn isolated_point_witness(
    l: &LimitAssignment,
    entry: usize,
    indices: &IndexSet,
    x: &Elt,
    window: u64,
) -> Result<IsolatedPoint, TopologyError> {
    let e = l.entry(entry)?;
    if x == &e.limit {
        return Err(TopologyError::PointIsLimit);
    }
    let occurrences = e.seq.preimage(x).intersect(indices);
    if occurrences.is_empty() {
        return Err(TopologyError::PointNotInSet);
    }
    let remaining = indices.minus(&occurrences);
    let expr = ClopenExpr::inter([
        ClopenExpr::Tail(TailSet {
            entry,
            indices: indices.clone(),
            with_limit: true,
        }),
        ClopenExpr::Tail(TailSet {
            entry,
            indices: remaining.clone(),
            with_limit: true,
        })
        .complement(),
    ]);
    let closed_check = tail_set_closed(l, entry, &remaining, window);
    Ok(IsolatedPoint {
        expr,
        remaining,
        closed_check,
    })
}

/// A finite subcover of a tail set: the member containing the limit plus
/// one member per excluded index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subcover {
    /// Index into the cover list of the member containing the limit.
    pub limit_member: usize,
    /// For each index whose value escapes the limit member: the covering
    /// member.
    pub excluded: Vec<(u64, usize)>,
}

impl Subcover {
    pub fn size(&self) -> usize {
        1 + self.excluded.len()
    }

    pub fn members(&self) -> Vec<usize> {
        let mut out = vec![self.limit_member];
        for (_, m) in &self.excluded {
            if !out.contains(m) {
                out.push(*m);
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn compactness_check(
    l: &LimitAssignment,
    entry: usize,
    indices: &IndexSet,
    opens: &[ClopenExpr],
    window: u64,
) -> Result<Subcover, TopologyError> {
    let e = l.entry(entry)?;
    let cache = PairCache::new();
    for (index, u) in opens.iter().enumerate() {
        if !is_admissible_open_cached(u, l, window, &cache).is_pass() {
            return Err(TopologyError::OpenNotAdmissible { index });
        }
    }
    let limit_member = opens
        .iter()
        .position(|u| u.contains(&e.limit, l))
        .ok_or(TopologyError::LimitUncovered)?;
    let inside = member_indices(&opens[limit_member], entry, l, &cache);
    let escaping = indices.minus(&inside);
    let members = escaping
        .members()
        .expect("admissible member containing the limit misses finitely many indices");
    let mut excluded = Vec::new();
    for &n in members {
        let v = e.seq.eval(n);
        let holder = opens
            .iter()
            .position(|u| u.contains(&v, l))
            .ok_or(TopologyError::ValueUncovered { n })?;
        excluded.push((n, holder));
    }
    Ok(Subcover {
        limit_member,
        excluded,
    })
}
