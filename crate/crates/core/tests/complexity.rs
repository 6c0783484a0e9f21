use std::collections::BTreeMap;

use omegaforge_core::bits::floor_log2;
use omegaforge_core::bitvm::{run, GuestId, RunOutcome};
use omegaforge_core::complexity::*;
use omegaforge_core::dyadic::Dyadic;
use omegaforge_core::lawful::*;
use omegaforge_core::omega::OmegaBits;
use omegaforge_core::Bits;
use proptest::prelude::*;

const STEPS: u64 = 100_000;

/// Shortest, then lexicographically smallest, program per output among all
/// strings of at most `max_len` bits, by running each one from scratch.
fn brute_force_table(max_len: usize) -> BTreeMap<Bits, Bits> {
    let mut best = BTreeMap::new();
    for len in 0..=max_len {
        for p in Bits::all_of_length(len) {
            if let RunOutcome::Halted { output, bits_consumed, .. } = run(&p, STEPS) {
                if bits_consumed == len {
                    best.entry(output.bits().unwrap().clone()).or_insert(p);
                }
            }
        }
    }
    best
}

fn b(s: &str) -> Bits {
    s.parse().unwrap()
}

#[test]
fn table_matches_brute_force() {
    let table = ExhaustiveTable::build(12, STEPS);
    let expected = brute_force_table(12);
    let got: BTreeMap<Bits, Bits> = table.entries(12).map(|(x, p)| (x.clone(), p.clone())).collect();
    assert_eq!(got, expected);
    assert_eq!(table.first_undecided(12), None);

    let e = complexity_exact(&b("0000"), 12, &table).unwrap();
    let w = &expected[&b("0000")];
    assert_eq!(e.value(), Some(w.len()));
    match e {
        ExactOutcome::Exact(bound) => assert_eq!(&bound.witness, w),
        other => panic!("{:?}", other),
    }
}

#[test]
fn exact_examples() {
    let t3 = ExhaustiveTable::build(3, STEPS);
    assert_eq!(complexity_exact(&Bits::new(), 3, &t3).unwrap().value(), Some(3));
    for x in ["0", "1", "01", "0000"] {
        assert_eq!(complexity_exact(&b(x), 3, &t3).unwrap(), ExactOutcome::AboveBound { bound: 3 });
    }
    let t20 = ExhaustiveTable::build(20, 10_000);
    let ones = Bits::repeat(true, 1024);
    let r = complexity_exact(&ones, 20, &t20);
    assert_eq!(r, Ok(ExactOutcome::AboveBound { bound: 20 }));
    assert_eq!(complexity_upper(&ones, Some(&t20)).value, 36);
}

#[test]
fn exact_is_antimonotone_and_meets_upper() {
    let t = ExhaustiveTable::build(14, STEPS);
    for (x, _) in t.entries(14) {
        let mut prev: Option<usize> = None;
        for l in 3..=14 {
            if let Some(v) = complexity_exact(x, l, &t).unwrap().value() {
                assert!(prev.is_none_or(|p| v <= p));
                prev = Some(v);
            }
        }
        let up = complexity_upper(x, Some(&t));
        assert_eq!(complexity_exact(x, up.value.min(14), &t).unwrap().value(), Some(up.value));
    }
}

#[test]
fn invariance_examples() {
    let t = ExhaustiveTable::build(13, STEPS);
    let r = invariance_audit(GuestId::Unary, 6, &t).unwrap();
    assert!(r.holds());
    assert!(r.max_gap <= 5);
    let outs: Vec<String> = r.rows.iter().map(|row| row.output.to_string()).collect();
    assert_eq!(outs, ["", "1", "11", "111", "1111", "11111"]);
    let empty = &r.rows[0];
    assert_eq!((empty.h_guest, empty.h_universal), (1, 3));

    let r = invariance_audit(GuestId::Literal, 8, &t).unwrap();
    assert!(r.holds());
    assert!(r.rows.iter().all(|row| row.output.len() <= 3));
    assert_eq!(r.rows.len(), 1 + 2 + 4 + 8);
}

#[test]
fn counting_examples() {
    let t = ExhaustiveTable::build(12, STEPS);
    let brute = brute_force_table(12);
    for (n, m) in [(4, 3), (0, 0), (3, 0), (2, 9), (6, 12)] {
        let r = counting_check(n, m, &t).unwrap();
        let expect = brute.iter().filter(|(x, p)| x.len() == n && p.len() <= m).count() as u64;
        assert_eq!(r.count, expect, "n={} m={}", n, m);
        assert!(r.holds());
    }
    assert_eq!(counting_check(4, 3, &t).unwrap().count, 0);
}

#[test]
fn theory_examples() {
    let certified = OmegaBits { certified: b("0111"), lower: Dyadic::zero(), upper: Dyadic::one() };
    let empty = TheoryArtifact::literal(vec![]).unwrap();
    let a = theory_audit(&empty, &certified);
    assert_eq!(a.assertion_count, 0);
    assert!(a.is_sound() && a.c_prime_observed <= 0);

    let wrong = TheoryArtifact::literal(vec![Assertion { index: 1, value: true }]).unwrap();
    assert_eq!(theory_audit(&wrong, &certified).unsound, vec![1]);

    let converse = converse_theory(&certified);
    assert!(theory_audit(&converse, &certified).is_fully_verified());
    assert!(converse.carrier.len() <= theory_size_bound(4));
}

fn assertion_list() -> impl Strategy<Value = Vec<Assertion>> {
    proptest::collection::btree_map(1u64..5_000, any::<bool>(), 0..30).prop_flat_map(|m| {
        let v: Vec<Assertion> = m.into_iter().map(|(index, value)| Assertion { index, value }).collect();
        Just(v).prop_shuffle()
    })
}

fn points(max: usize) -> impl Strategy<Value = Vec<Point>> {
    proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..=max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point { x, y }).collect())
}

proptest! {
    #[test]
    fn upper_witnesses_run(x in proptest::collection::vec(any::<bool>(), 0..300)) {
        let x = Bits::from_bools(x);
        let ub = complexity_upper(&x, None);
        let ok = matches!(run(&ub.witness, 10_000_000), RunOutcome::Halted { ref output, bits_consumed, .. }
            if bits_consumed == ub.value && output.bits() == Some(&x));
        prop_assert!(ok);
        prop_assert!(ub.value <= x.len() + 2 * floor_log2(x.len() as u64 + 1) as usize + 6);
    }

    #[test]
    fn theories_round_trip(list in assertion_list()) {
        let t = TheoryArtifact::literal(list.clone()).unwrap();
        prop_assert_eq!(decode_assertions(&t.encoding()).unwrap(), list);
        prop_assert_eq!(TheoryArtifact::from_carrier(t.carrier.clone(), 10_000_000).unwrap(), t);
    }

    #[test]
    fn interpolants_hit_every_point(ps in points(16)) {
        let set = PointSet::new(ps).unwrap();
        if let Ok(c) = interpolate(&set) {
            prop_assert!(c.knots.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(c.max_residual(&set) <= 1e-9, "residual {}", c.max_residual(&set));
            let n = set.len();
            prop_assert_eq!(describe_size(&c, 32).unwrap(), 64 * n + header_bits(n, 32));
        }
    }

    #[test]
    fn classify_never_exceeds_literal_fallback(x in proptest::collection::vec(any::<bool>(), 1..300)) {
        let x = Bits::from_bools(x);
        let v = classify(&x, None, Threshold::HALF).unwrap();
        prop_assert!(v.rule_size_upper <= x.len() + 2 * floor_log2(x.len() as u64 + 1) as usize + 11);
        prop_assert!(v.ratio > 0.0);
    }
}
