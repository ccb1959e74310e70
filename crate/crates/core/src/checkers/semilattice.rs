//! The meet-multiplier layer: separation conditions quantified over
//! semilattice elements.
//!
//! Verdicts are decided symbolically per entry and per entry pair, which
//! settles the conditions for every multiplier at once: a multiplied point
//! sequence hits a target only where its law coordinate lands in the
//! target's support, and two multiplied sequences share infinitely many
//! values only when their value kinds, law shifts and effective multipliers
//! all agree. Probe multipliers drawn from the meet closure of the limits
//! and early window values supply the reported certificates and concrete
//! failure witnesses.

use std::collections::BTreeSet;

use crate::model::{
    collisions, AdjoinedElt, Elt, LimitAssignment, ModelError, SymbolicSeq,
};

use super::act::check_commutative;
use super::certificate::{
    Certificate, CheckReport, Claim, Layer, Verdict, Witness, CLAIM_CAP,
};

#[derive(Clone, Debug)]
pub struct SemilatticeOptions {
    /// Cap on the probe multiplier set.
    pub probe_cap: usize,
    /// Meet-closure depth of the probe set.
    pub meet_depth: u32,
    /// Cap on probe pairs scanned for a representative certificate.
    pub rep_search_cap: usize,
    /// Multipliers used by the identity-adjoined agreement run.
    pub unit_mult_cap: usize,
    /// Window cap for the agreement run.
    pub unit_window_cap: u64,
}

impl Default for SemilatticeOptions {
    fn default() -> Self {
        SemilatticeOptions {
            probe_cap: 128,
            meet_depth: 2,
            rep_search_cap: 256,
            unit_mult_cap: 4,
            unit_window_cap: 32,
        }
    }
}

/// The probe multipliers: limits, early window values, and their meets up
/// to the given depth, deduplicated in deterministic order and capped.
pub fn probe_multipliers(l: &LimitAssignment, window: u64, cap: usize, depth: u32) -> Vec<Elt> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<Elt> = Vec::new();
    let mut push = |v: Elt, out: &mut Vec<Elt>| {
        if out.len() < cap && seen.insert(v.clone()) {
            out.push(v);
        }
    };
    for x in l.limits() {
        push(x, &mut out);
    }
    for i in 0..l.len() {
        for v in l.window_values(i, window.min(4)) {
            push(v, &mut out);
        }
    }
    drop(push);
    let gens = out.clone();
    let mut frontier = gens.clone();
    for _ in 1..depth.max(1) {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &gens {
                if out.len() >= cap {
                    break;
                }
                let m = f.meet(g);
                if seen.insert(m.clone()) {
                    out.push(m.clone());
                    next.push(m);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out
}

fn adjoined(mult: Option<&Elt>) -> AdjoinedElt {
    match mult {
        None => AdjoinedElt::Unit,
        Some(m) => AdjoinedElt::Elem(m.clone()),
    }
}

/// A multiplier separating two given limits, when the probes contain one:
/// `a` itself works unless the first limit lies below `a`'s meet with it.
fn distinguishing_single(x: &Elt, y: &Elt) -> Elt {
    if &x.meet(y) != x {
        x.clone()
    } else {
        y.clone()
    }
}

/// Checks the meet-multiplier separation conditions with default options.
pub fn check_semilattice(l: &LimitAssignment, window: u64) -> Result<CheckReport, ModelError> {
    check_semilattice_with(l, window, &SemilatticeOptions::default())
}

pub fn check_semilattice_with(
    l: &LimitAssignment,
    window: u64,
    opts: &SemilatticeOptions,
) -> Result<CheckReport, ModelError> {
    if window == 0 {
        return Err(ModelError::WindowZero);
    }
    let mut report = CheckReport::new(Layer::Semilattice, window);

    if let Some((i, j)) = l.find_conflicting_duplicate() {
        // any multiplier separating the two limits witnesses the violation
        let a = distinguishing_single(l.limit(i), l.limit(j));
        report.verdict = Verdict::Fail {
            witness: Witness::SharedValues {
                s_entry: i,
                t_entry: j,
                s_mult: AdjoinedElt::Elem(a.clone()),
                t_mult: AdjoinedElt::Elem(a),
                n: 0,
                m: 0,
            },
        };
        return Ok(report);
    }

    let probes = probe_multipliers(l, window, opts.probe_cap, opts.meet_depth);
    let limits = l.limits();

    // value finiteness for every multiplier
    for i in 0..l.len() {
        match l.seq(i).point_parts() {
            Some((_, _, law)) => {
                // a multiplied point value always carries its law coordinate
                // in its support, so the certificate is multiplier-free
                for x in &limits {
                    let members = x
                        .support()
                        .filter_map(|(coord, _)| law.solve(coord));
                    report.push_claim(
                        Claim::ValueFiniteness {
                            entry: i,
                            mult: None,
                            value: x.clone(),
                        },
                        Certificate::exact(members),
                        CLAIM_CAP,
                    );
                }
            }
            None => {
                let (prefix, tail) = l.seq(i).table_parts().expect("table");
                let limit = l.limit(i);
                if tail != limit {
                    // some multiplier sends the tail and the limit apart
                    let a = distinguishing_single(limit, tail);
                    let value = a.meet(tail);
                    debug_assert_ne!(value, a.meet(limit));
                    report.verdict = Verdict::Fail {
                        witness: Witness::InfiniteValue {
                            entry: i,
                            mult: AdjoinedElt::Elem(a),
                            value,
                            tail_from: prefix.len() as u64,
                            sample_n: prefix.len() as u64,
                        },
                    };
                    return Ok(report);
                }
                for a in probes.iter().take(8) {
                    let shifted_limit = a.meet(limit);
                    for x in &limits {
                        if *x == shifted_limit {
                            continue;
                        }
                        let members = prefix
                            .iter()
                            .enumerate()
                            .filter(|(_, p)| a.meet(p) == *x)
                            .map(|(n, _)| n as u64);
                        report.push_claim(
                            Claim::ValueFiniteness {
                                entry: i,
                                mult: Some(AdjoinedElt::Elem(a.clone())),
                                value: x.clone(),
                            },
                            Certificate::exact(members),
                            CLAIM_CAP,
                        );
                    }
                }
            }
        }
    }

    // pair separation over the probe scope
    'pairs: for i in 0..l.len() {
        for j in i..l.len() {
            if let Some(witness) = pair_violation(l, i, j, &probes) {
                report.verdict = Verdict::Fail { witness };
                break 'pairs;
            }
            // representative certificate for the first probe pair with
            // distinct shifted limits
            let mut found = None;
            let mut scanned = 0usize;
            'rep: for a in &probes {
                for b in &probes {
                    scanned += 1;
                    if scanned > opts.rep_search_cap {
                        break 'rep;
                    }
                    if a.meet(l.limit(i)) != b.meet(l.limit(j)) {
                        found = Some((a.clone(), b.clone()));
                        break 'rep;
                    }
                }
            }
            if let Some((a, b)) = found {
                let sa = l.seq(i).scaled(&AdjoinedElt::Elem(a.clone()));
                let sb = l.seq(j).scaled(&AdjoinedElt::Elem(b.clone()));
                let cover = collisions(&sa, &sb)
                    .cover()
                    .expect("representative pair is separable");
                report.push_claim(
                    Claim::PairSeparation {
                        s_entry: i,
                        t_entry: j,
                        s_mult: AdjoinedElt::Elem(a),
                        t_mult: AdjoinedElt::Elem(b),
                    },
                    Certificate::exact(cover),
                    CLAIM_CAP,
                );
            }
        }
    }

    // the identity-adjoined agreement run
    if report.is_pass() {
        let mut unit_mults = vec![AdjoinedElt::Unit];
        for x in limits.iter().take(opts.unit_mult_cap.saturating_sub(2)) {
            unit_mults.push(AdjoinedElt::Elem(x.clone()));
        }
        if limits.len() >= 2 {
            unit_mults.push(AdjoinedElt::Elem(limits[0].meet(&limits[1])));
        }
        let sub = check_commutative(l, &unit_mults, window.min(opts.unit_window_cap))?;
        if !sub.is_pass() {
            report.verdict = sub.verdict.clone();
        }
        report.unit_adjoined = Some(Box::new(sub));
    }

    Ok(report)
}

/// Searches the probe scope for a pair-separation violation: an infinite
/// collision family between the multiplied sequences together with distinct
/// shifted limits.
fn pair_violation(
    l: &LimitAssignment,
    i: usize,
    j: usize,
    probes: &[Elt],
) -> Option<Witness> {
    let si = l.seq(i);
    let sj = l.seq(j);
    let needs_scan = match (si.point_parts(), sj.point_parts()) {
        (Some((mi, vi, li)), Some((mj, vj, lj))) => {
            if vi != vj || li.shift_delta(lj).is_none() {
                return None;
            }
            if mi.is_none() && mj.is_none() {
                // equality of multiplied singleton values forces equal
                // multipliers, so only the limits decide
                if l.limit(i) == l.limit(j) {
                    return None;
                }
                let a = distinguishing_single(l.limit(i), l.limit(j));
                return Some(shared_witness(l, i, j, &a, &a));
            }
            true
        }
        (None, None) => {
            let ti = si.table_parts().expect("table").1;
            let tj = sj.table_parts().expect("table").1;
            // tails matching their limits make the colliding multipliers
            // agree on the limits as well
            !(ti == l.limit(i) && tj == l.limit(j))
        }
        _ => return None,
    };
    if !needs_scan {
        return None;
    }
    let effective = |seq: &SymbolicSeq, a: &Elt| -> Elt {
        match seq.point_parts() {
            Some((m, _, _)) => adjoined(m).apply(a),
            None => a.meet(seq.table_parts().expect("table").1),
        }
    };
    for a in probes {
        for b in probes {
            if a.meet(l.limit(i)) == b.meet(l.limit(j)) {
                continue;
            }
            if effective(si, a) == effective(sj, b) {
                return Some(shared_witness(l, i, j, a, b));
            }
        }
    }
    None
}

fn shared_witness(l: &LimitAssignment, i: usize, j: usize, a: &Elt, b: &Elt) -> Witness {
    let sa = l.seq(i).scaled(&AdjoinedElt::Elem(a.clone()));
    let sb = l.seq(j).scaled(&AdjoinedElt::Elem(b.clone()));
    let (n, m) = collisions(&sa, &sb)
        .first_uncoverable()
        .expect("colliding pair has an uncoverable family");
    Witness::SharedValues {
        s_entry: i,
        t_entry: j,
        s_mult: AdjoinedElt::Elem(a.clone()),
        t_mult: AdjoinedElt::Elem(b.clone()),
        n,
        m,
    }
}
