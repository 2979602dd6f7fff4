use hbch::hermitian::{
    classic_bound, big_order, classify_case, resolve_bound, sharp_bound_bruteforce, sharp_bound_closed_form, BoundReport,
    BoundSource, CaseId,
};
use proptest::prelude::*;

fn divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Literal search over the defining equation with β recovered by division.
fn literal_l(q: u64, s: u32, n1: u64) -> i64 {
    let mut best = None::<u64>;
    for x in 1..n1 {
        for y in 1..n1 {
            let hit = (0..s).any(|k| {
                let lhs = q as u128 * x as u128 + (q as u128).pow(2 * k) * y as u128;
                lhs.is_multiple_of(n1 as u128) && lhs / n1 as u128 > 0
            });
            if hit {
                best = Some(best.map_or(x.max(y), |b| b.min(x.max(y))));
            }
        }
    }
    best.unwrap() as i64 - 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn brute_force_agrees_with_literal_search(
        (q, s) in prop::sample::select(vec![(2u64, 2u32), (2, 3), (2, 4), (3, 2), (4, 2), (5, 2), (3, 3)]),
        pick in any::<prop::sample::Index>(),
    ) {
        let order = big_order(q, s).unwrap() as u64;
        let ds: Vec<u64> = divisors(order).into_iter().filter(|&d| d <= 400).collect();
        let n1 = *pick.get(&ds);
        let b = sharp_bound_bruteforce(q, s, n1).unwrap();
        prop_assert_eq!(b.l, literal_l(q, s, n1));
        let w = b.witness.unwrap();
        prop_assert_eq!(w.x.max(w.y) as i64, b.l + 1);
        prop_assert_eq!(q as u128 * w.x as u128 + (q as u128).pow(2 * w.k) * w.y as u128, w.beta * n1 as u128);
    }
}

#[test]
fn non_exceptional_families_match_brute_force() {
    for (q, s) in [(2u64, 2u32), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2), (5, 3), (7, 2), (8, 2)] {
        let order = big_order(q, s).unwrap() as u64;
        for n1 in divisors(order).into_iter().filter(|&d| d <= 5000) {
            let brute = sharp_bound_bruteforce(q, s, n1).unwrap().l;
            for c in classify_case(q, s, n1).into_iter().filter(|c| c.case != CaseId::Four) {
                assert_eq!(sharp_bound_closed_form(&c).unwrap().l, brute, "{c:?}");
            }
        }
    }
}

#[test]
fn families_reconstruct_their_length() {
    for (q, s) in [(2u64, 4u32), (3, 3), (4, 3), (5, 2), (2, 6)] {
        let order = big_order(q, s).unwrap() as u64;
        for n1 in divisors(order) {
            for c in classify_case(q, s, n1) {
                let (qs, a) = (q.pow(s), c.aux as u32);
                let rebuilt = match c.case {
                    CaseId::One | CaseId::Two => (qs + 1) * c.aux,
                    CaseId::ThreeA0 => 2 * (qs - 1),
                    CaseId::Three | CaseId::Four => (qs - 1) * (q.pow(a) + 1),
                };
                assert_eq!(rebuilt, n1);
                assert_eq!(c.case == CaseId::One, matches!(c.case, CaseId::One | CaseId::Two) && s % 2 == 0);
            }
        }
    }
}

#[test]
fn report_and_resolution() {
    let r = BoundReport::compute(2, 3, 21).unwrap();
    assert!(r.caveat_excluded);
    assert!(r.closed_forms.is_empty());
    assert_eq!(r.brute_l(), Some(4));
    assert!(r.rows()[0].starts_with("2 3 21 4x - 4 "));
    assert_eq!(resolve_bound(2, 3, 21).unwrap().source, BoundSource::BruteForce);

    let r = BoundReport::compute(4, 3, 315).unwrap();
    assert!(!r.consistent());
    assert_eq!(r.closed_forms, vec![(CaseId::Four, 43)]);
    assert_eq!(r.brute_l(), Some(33));

    let r = BoundReport::compute(2, 5, 93).unwrap();
    assert!(r.consistent());
    assert!(r.classic < r.brute_l().unwrap());
    assert_eq!(classic_bound(2, 3, 63), 6);
}
