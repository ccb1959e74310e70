//! Topology-layer invariants: the openness algebra, finite sets against the
//! base check, trace-generated openness, and separation at window scale.

use proptest::prelude::*;

use semitop_core::checkers::{check_t1, check_t2, Verdict, Witness};
use semitop_core::model::{
    Coord, Elt, IndexLaw, IndexSet, LimitAssignment, SymbolicSeq, TriVal,
};
use semitop_core::scan;
use semitop_core::topology::{
    is_admissible_open, separate_closed_sets, separate_points, ClopenExpr, WindowUniverse,
};

fn arb_trival() -> impl Strategy<Value = TriVal> {
    prop_oneof![Just(TriVal::Zero), Just(TriVal::One)]
}

fn arb_elt() -> impl Strategy<Value = Elt> {
    proptest::collection::btree_map(0u64..40, arb_trival(), 1..4).prop_map(|m| {
        Elt::from_support(m.into_iter().map(|(c, v)| (Coord::from(c), v))).expect("non-empty")
    })
}

fn arb_seq() -> impl Strategy<Value = SymbolicSeq> {
    prop_oneof![
        3 => (arb_trival(), 1u64..20, 0u32..3).prop_map(|(v, c, a)| {
            SymbolicSeq::point(v, IndexLaw::new(c, a).expect("positive")).expect("point")
        }),
        1 => (proptest::collection::vec(arb_elt(), 0..3), arb_elt())
            .prop_map(|(prefix, tail)| SymbolicSeq::table(prefix, tail)),
    ]
}

fn arb_assignment() -> impl Strategy<Value = LimitAssignment> {
    proptest::collection::vec((arb_seq(), arb_elt()), 1..4).prop_filter_map(
        "no conflicting duplicates",
        |entries| LimitAssignment::new(entries).ok(),
    )
}

fn arb_index_set() -> impl Strategy<Value = IndexSet> {
    prop_oneof![
        proptest::collection::btree_set(0u64..12, 0..4).prop_map(IndexSet::finite),
        proptest::collection::btree_set(0u64..12, 0..4).prop_map(IndexSet::cofinite),
    ]
}

fn arb_expr(entries: usize) -> impl Strategy<Value = ClopenExpr> {
    let leaf = prop_oneof![
        Just(ClopenExpr::Whole),
        Just(ClopenExpr::Empty),
        proptest::collection::btree_set(arb_elt(), 1..3)
            .prop_map(|m| ClopenExpr::points(m)),
        (0..entries, arb_index_set(), any::<bool>())
            .prop_map(|(e, i, lim)| ClopenExpr::tail(e, i, lim)),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 1..3).prop_map(ClopenExpr::union),
            proptest::collection::vec(inner.clone(), 1..3).prop_map(ClopenExpr::inter),
            inner.prop_map(|e| e.complement()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn openness_is_closed_under_meet_and_join(
        l in arb_assignment(),
        pair in (0usize..3).prop_flat_map(|_| (arb_expr(1), arb_expr(1))),
    ) {
        let (u, v) = pair;
        let window = 10;
        let ou = is_admissible_open(&u, &l, window);
        let ov = is_admissible_open(&v, &l, window);
        if ou.is_pass() && ov.is_pass() {
            let join = ClopenExpr::union([u.clone(), v.clone()]);
            let meet = ClopenExpr::inter([u, v]);
            prop_assert!(is_admissible_open(&join, &l, window).is_pass());
            prop_assert!(is_admissible_open(&meet, &l, window).is_pass());
        }
        prop_assert!(is_admissible_open(&ClopenExpr::Whole, &l, window).is_pass());
        prop_assert!(is_admissible_open(&ClopenExpr::Empty, &l, window).is_pass());
    }

    #[test]
    fn finite_complements_open_iff_base_check_passes(l in arb_assignment()) {
        let window = 12;
        let t1 = check_t1(&l, window).expect("window positive");
        // finite sets drawn from values and limits
        let mut sets: Vec<Vec<Elt>> = vec![l.limits()];
        for i in 0..l.len() {
            sets.push(l.window_values(i, 3));
        }
        let all_open = sets.into_iter().all(|points| {
            let u = ClopenExpr::points(points).complement();
            is_admissible_open(&u, &l, window).is_pass()
        });
        prop_assert_eq!(all_open, t1.is_pass());
    }

    #[test]
    fn escape_witnesses_replay(l in arb_assignment(), expr in arb_expr(1)) {
        let oc = is_admissible_open(&expr, &l, 10);
        if let Verdict::Fail { witness: Witness::EscapesOpenSet { entry, n } } = oc.verdict {
            prop_assert!(expr.contains(l.limit(entry), &l));
            prop_assert!(!expr.contains(&l.seq(entry).eval(n), &l));
        }
    }

    #[test]
    fn admissibility_equals_openness_of_entry_traces(
        l in arb_assignment(),
        expr in arb_expr(1),
    ) {
        // window-verified form of trace-generated openness: the verdict
        // matches escape counts on every entry tail
        let window = 14;
        let oc = is_admissible_open(&expr, &l, window);
        match oc.verdict {
            Verdict::Pass => {
                for i in 0..l.len() {
                    if expr.contains(l.limit(i), &l) {
                        let cert = &oc
                            .certificates
                            .iter()
                            .find(|(e, _)| *e == i)
                            .expect("certificate per covered entry")
                            .1;
                        for (n, v) in scan::eval_window(l.seq(i), window).iter().enumerate() {
                            prop_assert_eq!(
                                !expr.contains(v, &l),
                                cert.contains(n as u64),
                                "entry {} index {}", i, n
                            );
                        }
                    }
                }
            }
            Verdict::Fail { witness: Witness::EscapesOpenSet { entry, .. } } => {
                // infinitely many escapes: the window shows at least two
                let escapes = scan::eval_window(l.seq(entry), 4 * window)
                    .iter()
                    .filter(|v| !expr.contains(v, &l))
                    .count();
                prop_assert!(escapes >= 2, "expected repeated escapes");
            }
            other => prop_assert!(false, "unexpected verdict {:?}", other),
        }
    }

    #[test]
    fn separated_points_are_disjoint_on_the_universe(
        l in arb_assignment(),
        seed in 0u64..1000,
    ) {
        let window = 10;
        if !check_t2(&l, window).expect("window positive").is_pass() {
            return Ok(());
        }
        let universe = WindowUniverse::new(&l, window, 2);
        let mut rng = scan::SplitMix(seed);
        let x = universe.sample(&mut rng);
        let y = universe.sample(&mut rng);
        if x == y {
            return Ok(());
        }
        let sep = separate_points(&x, &y, &l, window).expect("separation succeeds");
        prop_assert!(sep.left.contains(&x, &l));
        prop_assert!(sep.right.contains(&y, &l));
        prop_assert!(sep.left_check.is_pass() && sep.right_check.is_pass());
        // exhaustive disjointness over the enumerable universe
        let all = universe.enumerate_capped(4000).expect("small universe");
        for p in &all {
            prop_assert!(
                !(sep.left.contains(p, &l) && sep.right.contains(p, &l)),
                "{} lies in both sides", p
            );
        }
    }

    #[test]
    fn closed_unions_separate_pairwise_inside(
        l in arb_assignment(),
        seed in 0u64..1000,
    ) {
        // window-scale form of the two-closed-sets union lemma: points of
        // the union of two disjoint closed tails separate pairwise
        let window = 8;
        if !check_t2(&l, window).expect("window positive").is_pass() {
            return Ok(());
        }
        let mut rng = scan::SplitMix(seed);
        let i = rng.below(l.len() as u64) as usize;
        let pool: Vec<Elt> = scan::eval_window(l.seq(i), 4)
            .into_iter()
            .chain([l.limit(i).clone()])
            .collect();
        let x = pool[rng.below(pool.len() as u64) as usize].clone();
        let y = pool[rng.below(pool.len() as u64) as usize].clone();
        if x == y {
            return Ok(());
        }
        let sep = separate_points(&x, &y, &l, window).expect("separation succeeds");
        prop_assert!(sep.left.contains(&x, &l) && sep.right.contains(&y, &l));
    }
}

#[test]
fn closed_set_separation_on_disjoint_tails() {
    // mirror of the two-sequence instance exercised throughout: a full
    // tail-with-limit versus a far-away finite set and versus another tail
    let l = LimitAssignment::new([
        (
            SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(0)).unwrap(),
            Elt::one_at(0u64),
        ),
        (
            SymbolicSeq::point(TriVal::One, IndexLaw::two_pow(2)).unwrap(),
            Elt::zero_at(0u64),
        ),
    ])
    .unwrap();
    let a = ClopenExpr::union([
        ClopenExpr::tail(0, IndexSet::full(), true),
        ClopenExpr::points([Elt::one_at(50u64)]),
    ]);
    let b = ClopenExpr::union([
        ClopenExpr::tail(1, IndexSet::full(), true),
        ClopenExpr::points([Elt::zero_at(50u64)]),
    ]);
    let sep = separate_closed_sets(&a, &b, &l, 8).unwrap();
    assert!(sep.left_check.is_pass() && sep.right_check.is_pass());
    for x in [
        Elt::one_at(0u64),
        Elt::zero_at(1u64),
        Elt::zero_at(3u64),
        Elt::one_at(50u64),
    ] {
        assert!(sep.left.contains(&x, &l), "left misses {x}");
        assert!(!sep.right.contains(&x, &l), "right grabs {x}");
    }
    for y in [
        Elt::zero_at(0u64),
        Elt::one_at(4u64),
        Elt::one_at(12u64),
        Elt::zero_at(50u64),
    ] {
        assert!(sep.right.contains(&y, &l), "right misses {y}");
        assert!(!sep.left.contains(&y, &l), "left grabs {y}");
    }
}

#[test]
fn universe_generators_grow_monotonically() {
    let l = LimitAssignment::new([(
        SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(0)).unwrap(),
        Elt::one_at(0u64),
    )])
    .unwrap();
    let mut prev = 0;
    for window in [1u64, 2, 4, 8, 16] {
        let u = WindowUniverse::new(&l, window, 2);
        assert!(u.generators().len() >= prev);
        prev = u.generators().len();
    }
}
