//! The base separation conditions: every sequence takes each value other
//! than its limit finitely often, and sequences with different limits share
//! values only inside a finite index block.

use crate::model::{
    collisions, AdjoinedElt, Elt, IndexSet, LimitAssignment, ModelError,
};

use super::certificate::{
    Certificate, CheckReport, Claim, Layer, Verdict, Witness, CLAIM_CAP,
};

/// Candidate values one entry is tested against: its own window values, all
/// limits, and the tail constant when the sequence is eventually constant.
fn value_candidates(l: &LimitAssignment, i: usize, window: u64) -> Vec<Elt> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |v: Elt| {
        if seen.insert(v.clone()) {
            out.push(v);
        }
    };
    for v in l.window_values(i, window) {
        push(v);
    }
    for v in l.limits() {
        push(v);
    }
    if let Some((_, tail)) = l.seq(i).table_parts() {
        push(tail.clone());
    }
    out
}

fn infinite_value_witness(entry: usize, mult: AdjoinedElt, value: Elt, pre: &IndexSet) -> Witness {
    let excluded = pre.excluded().expect("cofinite preimage");
    let tail_from = excluded.iter().next_back().map_or(0, |n| n + 1);
    let sample_n = pre.least().expect("cofinite set is non-empty");
    Witness::InfiniteValue {
        entry,
        mult,
        value,
        tail_from,
        sample_n,
    }
}

/// Checks that every entry takes each value other than its limit finitely
/// often. Certificates are the exact preimages.
pub fn check_t1(l: &LimitAssignment, window: u64) -> Result<CheckReport, ModelError> {
    if window == 0 {
        return Err(ModelError::WindowZero);
    }
    let mut report = CheckReport::new(Layer::Set, window);
    run_t1(l, window, &mut report);
    Ok(report)
}

fn run_t1(l: &LimitAssignment, window: u64, report: &mut CheckReport) {
    for i in 0..l.len() {
        for x in value_candidates(l, i, window) {
            if x == *l.limit(i) {
                continue;
            }
            let pre = l.seq(i).preimage(&x);
            match pre.members() {
                Some(members) => report.push_claim(
                    Claim::ValueFiniteness {
                        entry: i,
                        mult: Some(AdjoinedElt::Unit),
                        value: x,
                        },
                    Certificate::exact(members.iter().copied()),
                    CLAIM_CAP,
                ),
                None => {
                    report.verdict = Verdict::Fail {
                        witness: infinite_value_witness(i, AdjoinedElt::Unit, x, &pre),
                    };
                    return;
                }
            }
        }
    }
}

/// Checks pair separation on top of [`check_t1`]: ill-defined assignments
/// are rejected first, then each pair of entries with distinct limits gets a
/// finite exact cover of its collision set, or a witness that none exists.
pub fn check_t2(l: &LimitAssignment, window: u64) -> Result<CheckReport, ModelError> {
    if window == 0 {
        return Err(ModelError::WindowZero);
    }
    let mut report = CheckReport::new(Layer::Set, window);
    if let Some((i, j)) = l.find_conflicting_duplicate() {
        report.verdict = Verdict::Fail {
            witness: Witness::SharedValues {
                s_entry: i,
                t_entry: j,
                s_mult: AdjoinedElt::Unit,
                t_mult: AdjoinedElt::Unit,
                n: 0,
                m: 0,
            },
        };
        return Ok(report);
    }
    run_t1(l, window, &mut report);
    if !report.is_pass() {
        return Ok(report);
    }
    run_pairs(l, &mut report);
    Ok(report)
}

fn run_pairs(l: &LimitAssignment, report: &mut CheckReport) {
    for i in 0..l.len() {
        for j in i..l.len() {
            if l.limit(i) == l.limit(j) {
                continue;
            }
            let cs = collisions(l.seq(i), l.seq(j));
            match cs.cover() {
                Some(cover) => report.push_claim(
                    Claim::PairSeparation {
                        s_entry: i,
                        t_entry: j,
                        s_mult: AdjoinedElt::Unit,
                        t_mult: AdjoinedElt::Unit,
                    },
                    Certificate::exact(cover),
                    CLAIM_CAP,
                ),
                None => {
                    let (n, m) = cs.first_uncoverable().expect("uncoverable collision");
                    report.verdict = Verdict::Fail {
                        witness: Witness::SharedValues {
                            s_entry: i,
                            t_entry: j,
                            s_mult: AdjoinedElt::Unit,
                            t_mult: AdjoinedElt::Unit,
                            n,
                            m,
                        },
                    };
                    return;
                }
            }
        }
    }
}
