//! Reference window scans.
//!
//! These walk sequence values directly and compare elements with meet,
//! without touching the preimage or collision machinery, so they can serve
//! as an independent cross-check of certificates. Point-law coordinates are
//! produced incrementally (multiplying by 3 per step) to keep long windows
//! cheap.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::model::{AdjoinedElt, Elt, SymbolicSeq};

/// The first `window` values of a sequence.
pub fn eval_window(seq: &SymbolicSeq, window: u64) -> Vec<Elt> {
    let mut out = Vec::with_capacity(window as usize);
    match seq {
        SymbolicSeq::Point { value, law } => {
            let mut coord = law.eval(0);
            for n in 0..window {
                out.push(Elt::singleton(coord.clone(), *value).expect("point value"));
                if n + 1 < window {
                    coord *= BigUint::from(3u8);
                }
            }
        }
        SymbolicSeq::ShiftedPoint { mult, value, law } => {
            let mut coord = law.eval(0);
            for n in 0..window {
                let base = Elt::singleton(coord.clone(), *value).expect("point value");
                out.push(mult.meet(&base));
                if n + 1 < window {
                    coord *= BigUint::from(3u8);
                }
            }
        }
        SymbolicSeq::Table { .. } => {
            for n in 0..window {
                out.push(seq.eval(n));
            }
        }
    }
    out
}

/// `{n < window : mult·s_n = target}` by direct evaluation.
pub fn value_hits(
    seq: &SymbolicSeq,
    mult: &AdjoinedElt,
    target: &Elt,
    window: u64,
) -> Vec<u64> {
    eval_window(seq, window)
        .into_iter()
        .enumerate()
        .filter(|(_, v)| mult.apply(v) == *target)
        .map(|(n, _)| n as u64)
        .collect()
}

/// All `(n, m)` below the window with `a·s_n = b·t_m`, by direct evaluation.
pub fn shared_value_pairs(
    s: &SymbolicSeq,
    a: &AdjoinedElt,
    t: &SymbolicSeq,
    b: &AdjoinedElt,
    window: u64,
) -> Vec<(u64, u64)> {
    let mut by_value: HashMap<Elt, Vec<u64>> = HashMap::new();
    for (m, v) in eval_window(t, window).into_iter().enumerate() {
        by_value.entry(b.apply(&v)).or_default().push(m as u64);
    }
    let mut out = Vec::new();
    for (n, v) in eval_window(s, window).into_iter().enumerate() {
        if let Some(ms) = by_value.get(&a.apply(&v)) {
            for &m in ms {
                out.push((n as u64, m));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Deterministic sampler for spot checks and test drivers.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound.max(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IndexLaw, TriVal};

    #[test]
    fn eval_window_matches_pointwise_eval() {
        let seqs = [
            SymbolicSeq::point(TriVal::Zero, IndexLaw::new(3, 2).unwrap()).unwrap(),
            SymbolicSeq::point(TriVal::One, IndexLaw::two_pow(0))
                .unwrap()
                .scaled(&AdjoinedElt::Elem(Elt::zero_at(5u64))),
            SymbolicSeq::table(vec![Elt::one_at(1u64)], Elt::zero_at(2u64)),
        ];
        for seq in &seqs {
            let vals = eval_window(seq, 12);
            for (n, v) in vals.iter().enumerate() {
                assert_eq!(*v, seq.eval(n as u64));
            }
        }
    }

    #[test]
    fn shared_pairs_match_nested_loops() {
        let s = SymbolicSeq::point(TriVal::Zero, IndexLaw::new(3, 0).unwrap()).unwrap();
        let t = SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(0)).unwrap();
        let a = AdjoinedElt::Elem(Elt::one_at(7u64));
        let fast = shared_value_pairs(&s, &a, &t, &a, 10);
        let mut slow = Vec::new();
        for n in 0..10u64 {
            for m in 0..10u64 {
                if a.apply(&s.eval(n)) == a.apply(&t.eval(m)) {
                    slow.push((n, m));
                }
            }
        }
        assert_eq!(fast, slow);
    }
}
