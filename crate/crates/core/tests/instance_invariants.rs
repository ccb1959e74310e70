//! Deterministic invariants of the dense non-closed order instance.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use semitop_core::counterexample::{
    build_example, separation_certificate, value_certificate, verify_main_theorem, EntryKind,
    VerifyOptions,
};
use semitop_core::model::{pair_enumerate, AdjoinedElt, Elt};
use semitop_core::scan;

#[test]
fn comparable_singleton_pairs_lie_in_the_order() {
    for m in 0..10_000u64 {
        let lo = Elt::zero_at(m);
        let hi = Elt::one_at(m);
        assert_eq!(lo.meet(&hi), lo, "pair at coordinate {m}");
    }
}

#[test]
fn law_coordinates_are_injective() {
    let mut seen = BTreeSet::new();
    for k in 0..64u32 {
        for n in 0..64u32 {
            let coord = BigUint::from(2u8).pow(k) * BigUint::from(3u8).pow(n);
            assert!(seen.insert(coord), "collision at ({k},{n})");
        }
    }
    assert_eq!(seen.len(), 64 * 64);
}

#[test]
fn order_misses_a_pair() {
    let x = Elt::one_at(0u64);
    let y = Elt::zero_at(0u64);
    assert_ne!(x.meet(&y), x);
}

#[test]
fn limits_enumerate_the_square_at_every_scale() {
    let inst = build_example(200).unwrap();
    let l = inst.assignment();
    let mut seen = BTreeSet::new();
    for k in 0..200u64 {
        let zi = inst.entry_index(k, EntryKind::ZeroSeq);
        let ui = inst.entry_index(k, EntryKind::OneSeq);
        let expect = pair_enumerate(k);
        assert_eq!((l.limit(zi).clone(), l.limit(ui).clone()), expect);
        assert!(seen.insert(expect), "pair {k} repeated");
    }
}

#[test]
fn certificates_are_exact_against_long_scans() {
    let inst = build_example(6).unwrap();
    let l = inst.assignment();
    let window = 32u64;
    let bound = 10 * window;
    let mut rng = scan::SplitMix(11);
    for _ in 0..40 {
        let i = rng.below(l.len() as u64) as usize;
        let j = rng.below(l.len() as u64) as usize;
        let limits = l.limits();
        let a = AdjoinedElt::Elem(limits[rng.below(limits.len() as u64) as usize].clone());
        let b = match rng.below(2) {
            0 => AdjoinedElt::Unit,
            _ => AdjoinedElt::Elem(
                limits[rng.below(limits.len() as u64) as usize]
                    .meet(&limits[rng.below(limits.len() as u64) as usize]),
            ),
        };
        let target = a.apply(&l.seq(j).eval(rng.below(window)));
        let cert = value_certificate(&target);
        for n in scan::value_hits(l.seq(i), &a, &target, bound) {
            assert!(cert.contains(n), "value hit {n} outside certificate");
        }
        if a.apply(l.limit(i)) != b.apply(l.limit(j)) {
            let cert = separation_certificate(&a, &b);
            for (n, m) in scan::shared_value_pairs(l.seq(i), &a, l.seq(j), &b, bound / 2) {
                assert!(
                    cert.contains(n) || cert.contains(m),
                    "collision ({n},{m}) outside certificate"
                );
            }
        }
    }
}

#[test]
fn nonmember_search_matches_linear_scan_oracle() {
    let report = verify_main_theorem(16, 8, &VerifyOptions::default()).unwrap();
    assert!(report.pass, "failure: {:?}", report.failure);
    // independent oracle: scan the enumeration directly
    let expected = (0..16u64)
        .map(|k| (k, pair_enumerate(k)))
        .find(|(_, (x, y))| x.meet(y) != *x)
        .map(|(k, _)| k)
        .expect("a non-member exists");
    assert_eq!(report.nonclosed_witness.unwrap().k, expected);
}

#[test]
fn per_pair_records_confirm_convergence_targets() {
    let report = verify_main_theorem(8, 8, &VerifyOptions::default()).unwrap();
    assert_eq!(report.per_pair.len(), 8);
    for rec in &report.per_pair {
        assert!(rec.converges, "pair {} does not converge", rec.k);
        assert_eq!(rec.in_order_checked, 8);
        assert!(rec.value_cert_x.is_exact());
        assert!(rec.value_cert_y.is_exact());
        let (x, y) = pair_enumerate(rec.k);
        assert_eq!((rec.x.clone(), rec.y.clone()), (x, y));
    }
}
