//! Exact descriptions of the collision set `{(n, m) : s_n = t_m}` for a pair
//! of symbolic sequences.
//!
//! For the representable sequence shapes the collision set decomposes into
//! finitely many isolated pairs, row and column strips coming from constant
//! tails, at most one diagonal family `{(n, n+δ)}` coming from two point laws
//! sharing values, and at most one full quadrant coming from two equal tails.
//! The decomposition is what makes the pair-separation conditions decidable:
//! a finite index set covers the collision set exactly when no diagonal and
//! no quadrant is present.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Elt, IndexSet, SymbolicSeq};

/// The diagonal family `{(n, n+delta) : n ≥ from}`. `from` is always at
/// least `max(0, -delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diag {
    pub delta: i64,
    pub from: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionSet {
    pairs: BTreeSet<(u64, u64)>,
    /// `(n, m_from)`: the strip `{(n, m) : m ≥ m_from}`.
    rows: BTreeSet<(u64, u64)>,
    /// `(n_from, m)`: the strip `{(n, m) : n ≥ n_from}`.
    cols: BTreeSet<(u64, u64)>,
    diag: Option<Diag>,
    /// `(a, b)`: the quadrant `{(n, m) : n ≥ a, m ≥ b}`.
    rect: Option<(u64, u64)>,
}

/// Computes the collision set of two sequences.
pub fn collisions(s: &SymbolicSeq, t: &SymbolicSeq) -> CollisionSet {
    let mut out = CollisionSet::default();
    match (s.point_parts(), t.point_parts()) {
        (Some((ms, vs, ls)), Some((mt, vt, lt))) => {
            if vs == vt && ms == mt {
                if let Some(delta) = ls.shift_delta(lt) {
                    let from = if delta < 0 { (-delta) as u64 } else { 0 };
                    out.diag = Some(Diag { delta, from });
                }
            }
            // collisions driven by either multiplier's support
            let mut support_coords = Vec::new();
            for mult in [ms, mt].into_iter().flatten() {
                for (coord, _) in mult.support() {
                    support_coords.push(coord.clone());
                }
            }
            for coord in &support_coords {
                if let Some(n) = ls.solve(coord) {
                    let e = s.eval(n);
                    for m in finite_preimage(t, &e) {
                        out.pairs.insert((n, m));
                    }
                }
                if let Some(m) = lt.solve(coord) {
                    let f = t.eval(m);
                    for n in finite_preimage(s, &f) {
                        out.pairs.insert((n, m));
                    }
                }
            }
        }
        (Some(_), None) => {
            let (prefix, tail) = t.table_parts().expect("table");
            for (m, val) in prefix.iter().enumerate() {
                for n in finite_preimage(s, val) {
                    out.pairs.insert((n, m as u64));
                }
            }
            for n in finite_preimage(s, tail) {
                out.rows.insert((n, prefix.len() as u64));
            }
        }
        (None, Some(_)) => {
            let (prefix, tail) = s.table_parts().expect("table");
            for (n, val) in prefix.iter().enumerate() {
                for m in finite_preimage(t, val) {
                    out.pairs.insert((n as u64, m));
                }
            }
            for m in finite_preimage(t, tail) {
                out.cols.insert((prefix.len() as u64, m));
            }
        }
        (None, None) => {
            let (ps, ts) = s.table_parts().expect("table");
            let (pt, tt) = t.table_parts().expect("table");
            for (n, a) in ps.iter().enumerate() {
                for (m, b) in pt.iter().enumerate() {
                    if a == b {
                        out.pairs.insert((n as u64, m as u64));
                    }
                }
            }
            for (n, a) in ps.iter().enumerate() {
                if a == tt {
                    out.rows.insert((n as u64, pt.len() as u64));
                }
            }
            for (m, b) in pt.iter().enumerate() {
                if b == ts {
                    out.cols.insert((ps.len() as u64, m as u64));
                }
            }
            if ts == tt {
                out.rect = Some((ps.len() as u64, pt.len() as u64));
            }
        }
    }
    out
}

fn finite_preimage(seq: &SymbolicSeq, x: &Elt) -> Vec<u64> {
    match seq.preimage(x) {
        IndexSet::Finite { members } => members.into_iter().collect(),
        // only tables have cofinite preimages, and the callers above never
        // ask a table for one
        IndexSet::Cofinite { .. } => unreachable!("point preimages are finite"),
    }
}

fn least_geq(filter: &IndexSet, lo: u64) -> Option<u64> {
    match filter {
        IndexSet::Finite { members } => members.range(lo..).next().copied(),
        IndexSet::Cofinite { excluded } => (lo..=lo + excluded.len() as u64 + 1)
            .find(|n| !excluded.contains(n)),
    }
}

impl CollisionSet {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
            && self.rows.is_empty()
            && self.cols.is_empty()
            && self.diag.is_none()
            && self.rect.is_none()
    }

    pub fn contains(&self, n: u64, m: u64) -> bool {
        self.pairs.contains(&(n, m))
            || self.rows.iter().any(|&(rn, mf)| rn == n && m >= mf)
            || self.cols.iter().any(|&(nf, cm)| cm == m && n >= nf)
            || self.diag.map_or(false, |d| {
                n >= d.from && n as i64 + d.delta == m as i64
            })
            || self.rect.map_or(false, |(a, b)| n >= a && m >= b)
    }

    /// Whether a single finite index set can cover every collision.
    pub fn separable(&self) -> bool {
        self.diag.is_none() && self.rect.is_none()
    }

    /// A finite `F` such that every collision has a component in `F`, when
    /// one exists.
    pub fn cover(&self) -> Option<BTreeSet<u64>> {
        if !self.separable() {
            return None;
        }
        let mut f = BTreeSet::new();
        for &(n, m) in &self.pairs {
            f.insert(n);
            f.insert(m);
        }
        for &(n, _) in &self.rows {
            f.insert(n);
        }
        for &(_, m) in &self.cols {
            f.insert(m);
        }
        Some(f)
    }

    /// The least collision that no finite set can cover.
    pub fn first_uncoverable(&self) -> Option<(u64, u64)> {
        if let Some(d) = self.diag {
            let m = (d.from as i64 + d.delta) as u64;
            return Some((d.from, m));
        }
        self.rect
    }

    /// Swaps the roles of the two sequences.
    pub fn transpose(&self) -> CollisionSet {
        CollisionSet {
            pairs: self.pairs.iter().map(|&(n, m)| (m, n)).collect(),
            rows: self.cols.iter().map(|&(nf, m)| (m, nf)).collect(),
            cols: self.rows.iter().map(|&(n, mf)| (mf, n)).collect(),
            diag: self.diag.map(|d| Diag {
                delta: -d.delta,
                from: (d.from as i64 + d.delta) as u64,
            }),
            rect: self.rect.map(|(a, b)| (b, a)),
        }
    }

    /// `{n : ∃ m ∈ filter, (n, m) collides}`, exactly.
    pub fn project_first(&self, filter: &IndexSet) -> IndexSet {
        let mut out = IndexSet::finite(
            self.pairs
                .iter()
                .filter(|(_, m)| filter.contains(*m))
                .map(|&(n, _)| n),
        );
        for &(n, m_from) in &self.rows {
            if least_geq(filter, m_from).is_some() {
                out = out.union(&IndexSet::finite([n]));
            }
        }
        for &(n_from, m) in &self.cols {
            if filter.contains(m) {
                out = out.union(&IndexSet::from_index(n_from));
            }
        }
        if let Some(d) = self.diag {
            let part = match filter {
                IndexSet::Finite { members } => IndexSet::finite(
                    members
                        .iter()
                        .filter_map(|&m| diag_source(d, m)),
                ),
                IndexSet::Cofinite { excluded } => {
                    let mut out_of = (0..d.from).collect::<BTreeSet<u64>>();
                    for &m in excluded {
                        if let Some(n) = diag_source(d, m) {
                            out_of.insert(n);
                        }
                    }
                    IndexSet::cofinite(out_of)
                }
            };
            out = out.union(&part);
        }
        if let Some((a, b)) = self.rect {
            if least_geq(filter, b).is_some() {
                out = out.union(&IndexSet::from_index(a));
            }
        }
        out
    }

    /// `{m : ∃ n ∈ filter, (n, m) collides}`, exactly.
    pub fn project_second(&self, filter: &IndexSet) -> IndexSet {
        self.transpose().project_first(filter)
    }

    /// Least collision surviving both index filters.
    pub fn restricted_witness(
        &self,
        n_filter: &IndexSet,
        m_filter: &IndexSet,
    ) -> Option<(u64, u64)> {
        let mut best: Option<(u64, u64)> = None;
        let mut offer = |cand: (u64, u64)| {
            if best.map_or(true, |b| cand < b) {
                best = Some(cand);
            }
        };
        for &(n, m) in &self.pairs {
            if n_filter.contains(n) && m_filter.contains(m) {
                offer((n, m));
            }
        }
        for &(n, m_from) in &self.rows {
            if n_filter.contains(n) {
                if let Some(m) = least_geq(m_filter, m_from) {
                    offer((n, m));
                }
            }
        }
        for &(n_from, m) in &self.cols {
            if m_filter.contains(m) {
                if let Some(n) = least_geq(n_filter, n_from) {
                    offer((n, m));
                }
            }
        }
        if let Some(d) = self.diag {
            let mut diag_offer = |n: u64| {
                if n >= d.from && n_filter.contains(n) {
                    let m = (n as i64 + d.delta) as u64;
                    if m_filter.contains(m) {
                        offer((n, m));
                        return true;
                    }
                }
                false
            };
            if let Some(members) = n_filter.members() {
                for &n in members {
                    diag_offer(n);
                }
            } else if let Some(members) = m_filter.members() {
                for &m in members {
                    if let Some(n) = diag_source(d, m) {
                        diag_offer(n);
                    }
                }
            } else {
                // both cofinite: the first index past all exclusions works
                let bound = d.from + filter_len(n_filter) + filter_len(m_filter) + 1;
                for n in d.from..=bound {
                    if diag_offer(n) {
                        break;
                    }
                }
            }
        }
        if let Some((a, b)) = self.rect {
            if let (Some(n), Some(m)) = (least_geq(n_filter, a), least_geq(m_filter, b)) {
                offer((n, m));
            }
        }
        best
    }
}

fn diag_source(d: Diag, m: u64) -> Option<u64> {
    let n = m as i64 - d.delta;
    if n >= d.from as i64 {
        Some(n as u64)
    } else {
        None
    }
}

fn filter_len(f: &IndexSet) -> u64 {
    match f {
        IndexSet::Finite { members } => members.len() as u64,
        IndexSet::Cofinite { excluded } => excluded.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AdjoinedElt, IndexLaw, TriVal};

    fn zpt(k: u32) -> SymbolicSeq {
        SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(k)).unwrap()
    }

    fn upt(k: u32) -> SymbolicSeq {
        SymbolicSeq::point(TriVal::One, IndexLaw::two_pow(k)).unwrap()
    }

    /// Window scan used as an oracle for the symbolic decomposition.
    fn scan(s: &SymbolicSeq, t: &SymbolicSeq, w: u64) -> BTreeSet<(u64, u64)> {
        let mut hits = BTreeSet::new();
        for n in 0..w {
            let sv = s.eval(n);
            for m in 0..w {
                if sv == t.eval(m) {
                    hits.insert((n, m));
                }
            }
        }
        hits
    }

    fn assert_matches_scan(s: &SymbolicSeq, t: &SymbolicSeq, w: u64) {
        let set = collisions(s, t);
        let brute = scan(s, t, w);
        for n in 0..w {
            for m in 0..w {
                assert_eq!(
                    set.contains(n, m),
                    brute.contains(&(n, m)),
                    "mismatch at ({n},{m}) for {s:?} vs {t:?}"
                );
            }
        }
    }

    #[test]
    fn distinct_value_kinds_never_collide() {
        assert!(collisions(&zpt(0), &upt(0)).is_empty());
    }

    #[test]
    fn distinct_two_parts_never_collide() {
        let set = collisions(&zpt(0), &zpt(1));
        assert!(set.is_empty());
        assert_matches_scan(&zpt(0), &zpt(1), 12);
    }

    #[test]
    fn identical_sequences_collide_on_the_diagonal() {
        let set = collisions(&zpt(0), &zpt(0));
        assert!(!set.separable());
        assert_eq!(set.first_uncoverable(), Some((0, 0)));
        assert_matches_scan(&zpt(0), &zpt(0), 10);
    }

    #[test]
    fn shifted_law_gives_offset_diagonal() {
        // 3·3^n = 3^m forces m = n+1
        let s = SymbolicSeq::point(TriVal::Zero, IndexLaw::new(3, 0).unwrap()).unwrap();
        let t = SymbolicSeq::point(TriVal::Zero, IndexLaw::new(1, 0).unwrap()).unwrap();
        let set = collisions(&s, &t);
        assert_eq!(set.first_uncoverable(), Some((0, 1)));
        assert_matches_scan(&s, &t, 12);
        let back = collisions(&t, &s);
        assert_eq!(back.first_uncoverable(), Some((1, 0)));
    }

    #[test]
    fn scaled_sequences_only_collide_with_equal_multipliers() {
        let a = AdjoinedElt::Elem(Elt::zero_at(5u64));
        let b = AdjoinedElt::Elem(Elt::one_at(5u64));
        let s = zpt(0).scaled(&a);
        let t = zpt(0).scaled(&b);
        assert_matches_scan(&s, &t, 10);
        assert!(collisions(&s, &s.clone()).contains(2, 2));
    }

    #[test]
    fn multiplier_support_hits_are_found() {
        // multiplier support {3, 9} of kind zero: indices 1 and 2 both
        // evaluate to the multiplier itself
        let mult = Elt::zero_at(3u64).meet(&Elt::zero_at(9u64));
        let s = zpt(0).scaled(&AdjoinedElt::Elem(mult));
        let set = collisions(&s, &s.clone());
        assert!(set.contains(1, 2));
        assert!(set.contains(2, 1));
        assert_matches_scan(&s, &s.clone(), 8);
    }

    #[test]
    fn point_against_table() {
        let hit = Elt::zero_at(3u64); // z-value at n = 1
        let s = zpt(0);
        let t = SymbolicSeq::table(vec![Elt::one_at(0u64)], hit);
        let set = collisions(&s, &t);
        assert!(set.separable());
        assert!(set.contains(1, 1));
        assert!(set.contains(1, 100));
        assert!(!set.contains(0, 1));
        assert_eq!(set.cover().unwrap(), BTreeSet::from([1]));
        assert_matches_scan(&s, &t, 10);
    }

    #[test]
    fn tables_with_equal_tails_fill_a_quadrant() {
        let c = Elt::one_at(2u64);
        let d = Elt::zero_at(2u64);
        let s = SymbolicSeq::table(vec![d.clone()], c.clone());
        let t = SymbolicSeq::table(vec![d.clone(), d.clone()], c.clone());
        let set = collisions(&s, &t);
        assert!(!set.separable());
        assert_eq!(set.first_uncoverable(), Some((1, 2)));
        assert_matches_scan(&s, &t, 10);
    }

    #[test]
    fn projections_agree_with_scan() {
        let s = SymbolicSeq::point(TriVal::Zero, IndexLaw::new(3, 0).unwrap()).unwrap();
        let t = SymbolicSeq::point(TriVal::Zero, IndexLaw::new(1, 0).unwrap()).unwrap();
        let set = collisions(&s, &t);
        let filter = IndexSet::cofinite([0, 1, 4]);
        let proj = set.project_first(&filter);
        for n in 0..30u64 {
            let expect = (0..40u64).any(|m| filter.contains(m) && set.contains(n, m));
            assert_eq!(proj.contains(n), expect, "n = {n}");
        }
        let fin = IndexSet::finite([2, 3]);
        let proj = set.project_second(&fin);
        for m in 0..30u64 {
            let expect = (0..40u64).any(|n| fin.contains(n) && set.contains(n, m));
            assert_eq!(proj.contains(m), expect, "m = {m}");
        }
    }

    #[test]
    fn restricted_witness_finds_least_pair() {
        let set = collisions(&zpt(0), &zpt(0));
        assert_eq!(
            set.restricted_witness(&IndexSet::full(), &IndexSet::full()),
            Some((0, 0))
        );
        assert_eq!(
            set.restricted_witness(&IndexSet::cofinite([0, 1]), &IndexSet::full()),
            Some((2, 2))
        );
        assert_eq!(
            set.restricted_witness(&IndexSet::finite([5]), &IndexSet::finite([4])),
            None
        );
    }
}
