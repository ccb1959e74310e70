//! Hausdorff point separation and the inductive normal separation of two
//! closed sets.
//!
//! Point separation builds clopen neighborhoods out of limit tails with
//! finitely many indices removed, or bare singletons for non-limit points.
//! Closed-set separation runs the compact-level induction: level `n` works
//! inside the union of the first `n+1` entry tails, separates the
//! accumulated closed traces by per-entry index sets, and the final level
//! yields the two open expressions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{Elt, IndexSet, LimitAssignment};

use super::admissible::{is_admissible_open_cached, OpenCheck};
use super::clopen::{ClopenExpr, PairCache, TailSet};
use super::TopologyError;

/// Disjoint clopen neighborhoods of two distinct points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSeparation {
    pub left: ClopenExpr,
    pub right: ClopenExpr,
    pub left_check: OpenCheck,
    pub right_check: OpenCheck,
}

pub fn separate_points(
    x: &Elt,
    y: &Elt,
    l: &LimitAssignment,
    window: u64,
) -> Result<PointSeparation, TopologyError> {
    if x == y {
        return Err(TopologyError::EqualPoints);
    }
    if l.find_conflicting_duplicate().is_some() {
        return Err(TopologyError::RequiresPairSeparation);
    }
    let cache = PairCache::new();
    let own_x: Vec<usize> = (0..l.len()).filter(|&i| l.limit(i) == x).collect();
    let own_y: Vec<usize> = (0..l.len()).filter(|&i| l.limit(i) == y).collect();
    let left = side_neighborhood(l, &cache, x, &own_x, y, &own_y)?;
    let right = side_neighborhood(l, &cache, y, &own_y, x, &own_x)?;
    if let Some(p) = parts_overlap_witness(&left, &right, l, &cache) {
        return Err(TopologyError::SeparationBreakdown {
            detail: format!("constructed neighborhoods meet at {p}"),
        });
    }
    let left_expr = parts_to_expr(&left);
    let right_expr = parts_to_expr(&right);
    let left_check = is_admissible_open_cached(&left_expr, l, window, &cache);
    let right_check = is_admissible_open_cached(&right_expr, l, window, &cache);
    if !left_check.is_pass() || !right_check.is_pass() {
        return Err(TopologyError::SeparationBreakdown {
            detail: "constructed neighborhood is not open".to_string(),
        });
    }
    Ok(PointSeparation {
        left: left_expr,
        right: right_expr,
        left_check,
        right_check,
    })
}

/// A union of finite points and tails, the shape every separator here takes.
#[derive(Clone, Debug, Default)]
struct UnionParts {
    points: BTreeSet<Elt>,
    tails: Vec<TailSet>,
}

fn parts_to_expr(parts: &UnionParts) -> ClopenExpr {
    let mut exprs = Vec::new();
    if !parts.points.is_empty() {
        exprs.push(ClopenExpr::points(parts.points.iter().cloned()));
    }
    for t in &parts.tails {
        exprs.push(ClopenExpr::Tail(t.clone()));
    }
    match exprs.len() {
        0 => ClopenExpr::Empty,
        1 => exprs.pop().expect("one part"),
        _ => ClopenExpr::union(exprs),
    }
}

/// The neighborhood of `own`: its limit tails with the other point, all
/// other limits, and every cross-collision index removed; or the bare
/// singleton when `own` is not a limit.
fn side_neighborhood(
    l: &LimitAssignment,
    cache: &PairCache,
    own: &Elt,
    own_entries: &[usize],
    other: &Elt,
    other_entries: &[usize],
) -> Result<UnionParts, TopologyError> {
    let mut parts = UnionParts::default();
    if own_entries.is_empty() {
        parts.points.insert(own.clone());
        return Ok(parts);
    }
    let limits = l.limits();
    for &i in own_entries {
        let mut removed = BTreeSet::new();
        let exclude = |set: &IndexSet, removed: &mut BTreeSet<u64>| -> Result<(), TopologyError> {
            match set.members() {
                Some(members) => {
                    removed.extend(members.iter().copied());
                    Ok(())
                }
                // a value other than the limit recurs cofinally
                None => Err(TopologyError::RequiresPairSeparation),
            }
        };
        exclude(&l.seq(i).preimage(other), &mut removed)?;
        for z in &limits {
            if z != own {
                exclude(&l.seq(i).preimage(z), &mut removed)?;
            }
        }
        for &j in other_entries {
            if let Some(cover) = cache.get(l, i, j).cover() {
                removed.extend(cover);
            } else {
                return Err(TopologyError::RequiresPairSeparation);
            }
        }
        parts.tails.push(TailSet {
            entry: i,
            indices: IndexSet::cofinite(removed),
            with_limit: true,
        });
    }
    Ok(parts)
}

/// Exact disjointness for unions of points and tails.
fn parts_overlap_witness(
    a: &UnionParts,
    b: &UnionParts,
    l: &LimitAssignment,
    cache: &PairCache,
) -> Option<Elt> {
    let in_parts = |p: &Elt, parts: &UnionParts| -> bool {
        parts.points.contains(p)
            || parts.tails.iter().any(|t| {
                (t.with_limit && p == l.limit(t.entry))
                    || !l.seq(t.entry).preimage(p).intersect(&t.indices).is_empty()
            })
    };
    for p in &a.points {
        if in_parts(p, b) {
            return Some(p.clone());
        }
    }
    for p in &b.points {
        if in_parts(p, a) {
            return Some(p.clone());
        }
    }
    for ta in &a.tails {
        if tb_limit_hits(ta, b, l) {
            return Some(l.limit(ta.entry).clone());
        }
        for tb in &b.tails {
            if let Some((n, _)) = cache
                .get(l, ta.entry, tb.entry)
                .restricted_witness(&ta.indices, &tb.indices)
            {
                return Some(l.seq(ta.entry).eval(n));
            }
        }
    }
    for tb in &b.tails {
        if tb_limit_hits(tb, a, l) {
            return Some(l.limit(tb.entry).clone());
        }
    }
    None
}

fn tb_limit_hits(t: &TailSet, other: &UnionParts, l: &LimitAssignment) -> bool {
    if !t.with_limit {
        return false;
    }
    let lim = l.limit(t.entry);
    other.points.contains(lim)
        || other.tails.iter().any(|o| {
            (o.with_limit && lim == l.limit(o.entry))
                || !l.seq(o.entry).preimage(lim).intersect(&o.indices).is_empty()
        })
}

/// Outcome of the closed-set separation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSeparation {
    pub left: ClopenExpr,
    pub right: ClopenExpr,
    pub left_check: OpenCheck,
    pub right_check: OpenCheck,
    pub levels: usize,
}

/// Normal form of a closed input: finite points plus limit-closed tails.
struct ClosedParts {
    points: BTreeSet<Elt>,
    tails: Vec<(usize, IndexSet)>,
}

fn closed_parts(expr: &ClopenExpr, l: &LimitAssignment) -> Result<ClosedParts, TopologyError> {
    let mut out = ClosedParts {
        points: BTreeSet::new(),
        tails: Vec::new(),
    };
    collect_closed(expr, l, &mut out)?;
    Ok(out)
}

fn collect_closed(
    expr: &ClopenExpr,
    l: &LimitAssignment,
    out: &mut ClosedParts,
) -> Result<(), TopologyError> {
    match expr {
        ClopenExpr::Empty => Ok(()),
        ClopenExpr::Points { members } => {
            out.points.extend(members.iter().cloned());
            Ok(())
        }
        ClopenExpr::Tail(t) => {
            l.entry(t.entry)?;
            match t.indices.members() {
                Some(members) => {
                    // a finite tail is just a finite point set
                    for &n in members {
                        out.points.insert(l.seq(t.entry).eval(n));
                    }
                    if t.with_limit {
                        out.points.insert(l.limit(t.entry).clone());
                    }
                    Ok(())
                }
                None if t.with_limit => {
                    out.tails.push((t.entry, t.indices.clone()));
                    Ok(())
                }
                None => Err(TopologyError::NotClosedNormalForm),
            }
        }
        ClopenExpr::Union { parts } => {
            for p in parts {
                collect_closed(p, l, out)?;
            }
            Ok(())
        }
        _ => Err(TopologyError::NotClosedNormalForm),
    }
}

/// Per-entry trace of a set: included value indices and a limit flag.
#[derive(Clone, Debug, PartialEq, Eq)]
struct KSet {
    idx: Vec<IndexSet>,
    lim: Vec<bool>,
}

impl KSet {
    fn empty(len: usize) -> KSet {
        KSet {
            idx: vec![IndexSet::empty(); len],
            lim: vec![false; len],
        }
    }

    fn union(&self, other: &KSet) -> KSet {
        KSet {
            idx: self
                .idx
                .iter()
                .zip(&other.idx)
                .map(|(a, b)| a.union(b))
                .collect(),
            lim: self
                .lim
                .iter()
                .zip(&other.lim)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }
}

/// All indices of entry `i` whose value lies in the set, across entries.
fn kset_indices_on(k: &KSet, i: usize, l: &LimitAssignment, cache: &PairCache) -> IndexSet {
    let mut out = k.idx[i].clone();
    for j in 0..k.idx.len() {
        if !k.idx[j].is_empty() {
            out = out.union(&cache.get(l, i, j).project_first(&k.idx[j]));
        }
        if k.lim[j] {
            out = out.union(&l.seq(i).preimage(l.limit(j)));
        }
    }
    out
}

fn kset_contains(k: &KSet, p: &Elt, l: &LimitAssignment) -> bool {
    for i in 0..k.idx.len() {
        if k.lim[i] && p == l.limit(i) {
            return true;
        }
        if !k.idx[i].is_empty() && !l.seq(i).preimage(p).intersect(&k.idx[i]).is_empty() {
            return true;
        }
    }
    false
}

fn ksets_overlap_witness(
    a: &KSet,
    b: &KSet,
    l: &LimitAssignment,
    cache: &PairCache,
) -> Option<Elt> {
    for i in 0..a.idx.len() {
        let both = kset_indices_on(a, i, l, cache).intersect(&kset_indices_on(b, i, l, cache));
        if let Some(n) = both.least() {
            return Some(l.seq(i).eval(n));
        }
        let lim = l.limit(i);
        if kset_contains(a, lim, l) && kset_contains(b, lim, l) {
            return Some(lim.clone());
        }
    }
    None
}

/// The trace of a closed set on the first `level+1` entries.
fn trace(set: &ClosedParts, level: usize, l: &LimitAssignment, cache: &PairCache) -> KSet {
    let mut out = KSet::empty(l.len());
    for i in 0..=level {
        let mut idx = IndexSet::empty();
        for (j, indices) in &set.tails {
            idx = idx.union(&cache.get(l, i, *j).project_first(indices));
        }
        for p in &set.points {
            idx = idx.union(&l.seq(i).preimage(p));
        }
        out.idx[i] = idx;
        let lim = l.limit(i);
        out.lim[i] = set.points.contains(lim)
            || set.tails.iter().any(|(j, indices)| {
                lim == l.limit(*j) || !l.seq(*j).preimage(lim).intersect(indices).is_empty()
            });
    }
    out
}

fn breakdown(detail: impl Into<String>) -> TopologyError {
    TopologyError::SeparationBreakdown {
        detail: detail.into(),
    }
}

/// Separates two disjoint closed sets (unions of finite point sets and
/// limit-closed tails) by disjoint open expressions, running the level
/// induction over the entries.
pub fn separate_closed_sets(
    a: &ClopenExpr,
    b: &ClopenExpr,
    l: &LimitAssignment,
    window: u64,
) -> Result<ClosedSeparation, TopologyError> {
    let cache = PairCache::new();
    let pa = closed_parts(a, l)?;
    let pb = closed_parts(b, l)?;
    if let Some(p) = closed_overlap_witness(&pa, &pb, l, &cache) {
        return Err(TopologyError::Overlap { point: p });
    }

    let len = l.len();
    let mut v = KSet::empty(len);
    let mut w = KSet::empty(len);
    for level in 0..len {
        let a_n = v.union(&trace(&pa, level, l, &cache));
        let b_n = w.union(&trace(&pb, level, l, &cache));
        if let Some(p) = ksets_overlap_witness(&a_n, &b_n, l, &cache) {
            return Err(TopologyError::Overlap { point: p });
        }
        let mut nv = KSet::empty(len);
        let mut nw = KSet::empty(len);
        for i in 0..=level {
            let lim = l.limit(i);
            let la = kset_contains(&a_n, lim, l);
            let lb = kset_contains(&b_n, lim, l);
            let a_hits = kset_indices_on(&a_n, i, l, &cache);
            let b_hits = kset_indices_on(&b_n, i, l, &cache);
            match (la, lb) {
                (true, true) => {
                    return Err(breakdown(format!("limit of entry {i} lies in both sets")))
                }
                (true, false) => {
                    if !b_hits.is_finite() {
                        return Err(breakdown(format!(
                            "entry {i} accumulates on the opposite side"
                        )));
                    }
                    nv.idx[i] = b_hits.complement();
                    nv.lim[i] = true;
                    nw.idx[i] = b_hits;
                }
                (false, true) => {
                    if !a_hits.is_finite() {
                        return Err(breakdown(format!(
                            "entry {i} accumulates on the opposite side"
                        )));
                    }
                    nw.idx[i] = a_hits.complement();
                    nw.lim[i] = true;
                    nv.idx[i] = a_hits;
                }
                (false, false) => {
                    if !a_hits.is_finite() || !b_hits.is_finite() {
                        return Err(breakdown(format!(
                            "entry {i} accumulates without its limit"
                        )));
                    }
                    nv.idx[i] = a_hits;
                    nw.idx[i] = b_hits;
                }
            }
        }

        // limits pulled in through value coincidences get their tails, with
        // the first side winning conflicts
        let mut rounds = 0;
        loop {
            rounds += 1;
            if rounds > 2 * (level + 2) {
                return Err(breakdown("limit propagation did not settle"));
            }
            let mut changed = false;
            for i in 0..=level {
                let lim = l.limit(i);
                if !nv.lim[i] && kset_contains(&nv, lim, l) {
                    nv.lim[i] = true;
                    let b_hits = kset_indices_on(&b_n, i, l, &cache);
                    if !b_hits.is_finite() {
                        return Err(breakdown(format!(
                            "entry {i} accumulates on the opposite side"
                        )));
                    }
                    nv.idx[i] = nv.idx[i].union(&b_hits.complement());
                    if nw.lim[i] {
                        return Err(breakdown(format!(
                            "limit of entry {i} forced into both sides"
                        )));
                    }
                    changed = true;
                }
                if !nw.lim[i] && !nv.lim[i] && kset_contains(&nw, lim, l) {
                    if kset_contains(&nv, lim, l) {
                        // first side keeps the limit; strip it from the other
                        for j in 0..=level {
                            nw.idx[j] = nw.idx[j].minus(&l.seq(j).preimage(lim));
                        }
                    } else {
                        nw.lim[i] = true;
                        let a_hits = kset_indices_on(&a_n, i, l, &cache);
                        if !a_hits.is_finite() {
                            return Err(breakdown(format!(
                                "entry {i} accumulates on the opposite side"
                            )));
                        }
                        nw.idx[i] = nw.idx[i].union(&a_hits.complement());
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        // prune neutral value coincidences, first side winning
        for j in 0..=level {
            let v_hits = kset_indices_on(&nv, j, l, &cache);
            let overlap = v_hits.intersect(&nw.idx[j]);
            match overlap.members() {
                Some(members) if !members.is_empty() => {
                    let members: Vec<u64> = members.iter().copied().collect();
                    for n in members {
                        let p = l.seq(j).eval(n);
                        if kset_contains(&b_n, &p, l) {
                            nv.idx[j] = nv.idx[j].minus(&IndexSet::finite([n]));
                        } else {
                            nw.idx[j] = nw.idx[j].minus(&IndexSet::finite([n]));
                        }
                    }
                }
                Some(_) => {}
                None => {
                    return Err(breakdown(format!(
                        "entries share an infinite family at level {level}"
                    )))
                }
            }
        }

        if let Some(p) = ksets_overlap_witness(&nv, &nw, l, &cache) {
            return Err(breakdown(format!("level {level} sides meet at {p}")));
        }
        // openness inside the level: a contained limit needs a cofinite tail
        for i in 0..=level {
            let lim = l.limit(i);
            if kset_contains(&nv, lim, l) && kset_indices_on(&nv, i, l, &cache).is_finite() {
                return Err(breakdown(format!("left side not open at entry {i}")));
            }
            if kset_contains(&nw, lim, l) && kset_indices_on(&nw, i, l, &cache).is_finite() {
                return Err(breakdown(format!("right side not open at entry {i}")));
            }
        }
        v = nv;
        w = nw;
    }

    let left_expr = kset_to_expr(&v, &pa, l);
    let right_expr = kset_to_expr(&w, &pb, l);
    let left_check = is_admissible_open_cached(&left_expr, l, window, &cache);
    let right_check = is_admissible_open_cached(&right_expr, l, window, &cache);
    if !left_check.is_pass() || !right_check.is_pass() {
        return Err(breakdown("final expression is not open"));
    }
    let la = parts_from(&v, &pa);
    let lb = parts_from(&w, &pb);
    if let Some(p) = parts_overlap_witness(&la, &lb, l, &cache) {
        return Err(breakdown(format!("final expressions meet at {p}")));
    }
    Ok(ClosedSeparation {
        left: left_expr,
        right: right_expr,
        left_check,
        right_check,
        levels: len,
    })
}

fn parts_from(k: &KSet, closed: &ClosedParts) -> UnionParts {
    let mut parts = UnionParts {
        points: closed.points.clone(),
        tails: Vec::new(),
    };
    for i in 0..k.idx.len() {
        if !k.idx[i].is_empty() || k.lim[i] {
            parts.tails.push(TailSet {
                entry: i,
                indices: k.idx[i].clone(),
                with_limit: k.lim[i],
            });
        }
    }
    parts
}

fn kset_to_expr(k: &KSet, closed: &ClosedParts, _l: &LimitAssignment) -> ClopenExpr {
    parts_to_expr(&parts_from(k, closed))
}

fn closed_overlap_witness(
    a: &ClosedParts,
    b: &ClosedParts,
    l: &LimitAssignment,
    cache: &PairCache,
) -> Option<Elt> {
    let in_closed = |p: &Elt, set: &ClosedParts| -> bool {
        set.points.contains(p)
            || set.tails.iter().any(|(j, indices)| {
                p == l.limit(*j) || !l.seq(*j).preimage(p).intersect(indices).is_empty()
            })
    };
    for p in &a.points {
        if in_closed(p, b) {
            return Some(p.clone());
        }
    }
    for p in &b.points {
        if in_closed(p, a) {
            return Some(p.clone());
        }
    }
    for (i, ia) in &a.tails {
        if in_closed(l.limit(*i), b) {
            return Some(l.limit(*i).clone());
        }
        for (j, jb) in &b.tails {
            if let Some((n, _)) = cache.get(l, *i, *j).restricted_witness(ia, jb) {
                return Some(l.seq(*i).eval(n));
            }
        }
    }
    for (j, _) in &b.tails {
        if in_closed(l.limit(*j), a) {
            return Some(l.limit(*j).clone());
        }
    }
    None
}
