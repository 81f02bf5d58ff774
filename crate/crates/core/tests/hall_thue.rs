//! Hall-gap and Thue-form scans against brute force.

mod common;

use cubicdist::hall::{
    hall_delta, hall_scan, thue_eval, thue_poly, thue_scan, HallOutcome,
};
use cubicdist::partition::Partition;
use cubicdist::{int, rat, Int};
use num_traits::{Signed, Zero};
use rand::Rng;

/// Brute-force gap: scan every y in [1, x^(3/2) + 2].
fn brute_force_delta(x: u64) -> (u64, u64) {
    let cube = (x as u128).pow(3);
    let mut best_y = 1u128;
    let mut best = u128::MAX;
    let mut y = 1u128;
    loop {
        let sq = y * y;
        let gap = if sq > cube { sq - cube } else { cube - sq };
        if gap < best {
            best = gap;
            best_y = y;
        }
        if sq > cube + 2 * y {
            break;
        }
        y += 1;
    }
    (best_y as u64, best as u64)
}

#[test]
fn hall_delta_matches_brute_force() {
    let mut rng = common::rng(0xa110_0001);
    for _ in 0..100 {
        let x: u64 = rng.gen_range(2..=10_000);
        let (by, bd) = brute_force_delta(x);
        match hall_delta(&Int::from(x)).unwrap() {
            HallOutcome::Record(r) => {
                assert_eq!(r.delta, Int::from(bd), "x = {}", x);
                assert_eq!(r.y, Int::from(by), "x = {}", x);
            }
            HallOutcome::PerfectPower { .. } => {
                assert_eq!(bd, 0, "x = {}", x);
            }
        }
    }
}

#[test]
fn hall_classical_record() {
    // 5234^3 = 378661^2 - 17, the classical small-gap example
    match hall_delta(&int(5234)).unwrap() {
        HallOutcome::Record(r) => {
            assert_eq!(r.y, int(378661));
            assert_eq!(r.delta, int(17));
        }
        _ => panic!("5234 is not a perfect power"),
    }
    let (by, bd) = brute_force_delta(5234);
    assert_eq!((by, bd), (378661, 17));
}

#[test]
fn hall_bridge_identity() {
    // |27*16 (4p^3 + 27q^2)| = |(108 q)^2 - (-12 p)^3| exactly
    let mut rng = common::rng(0xa110_0002);
    for _ in 0..1000 {
        let p = int(rng.gen_range(-100_000i64..=100_000));
        let q = int(rng.gen_range(-100_000i64..=100_000));
        let lhs = (int(27 * 16) * (int(4) * &p * &p * &p + int(27) * &q * &q)).abs();
        let rhs = ((int(108) * &q).pow(2) - (int(-12) * &p).pow(3)).abs();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn hall_scan_threshold_and_membership() {
    let records = hall_scan(6000, &rat(0, 1), Partition::whole()).unwrap();
    // every record beats the threshold delta^2 < x
    for r in &records {
        assert!(&r.delta * &r.delta < r.x, "x = {}", r.x);
        assert!(r.ratio.lo.is_positive());
    }
    // the known members below 6000: x = 2 and x = 5234
    let xs: Vec<&Int> = records.iter().map(|r| &r.x).collect();
    assert!(xs.contains(&&int(2)));
    assert!(xs.contains(&&int(5234)));
    // sorted by ratio descending: 5234 (ratio ~ 4.26) precedes 2 (~ 1.41)
    let pos_5234 = records.iter().position(|r| r.x == int(5234)).unwrap();
    let pos_2 = records.iter().position(|r| r.x == int(2)).unwrap();
    assert!(pos_5234 < pos_2);
}

#[test]
fn thue_matches_eval_scaled_and_scan_is_complete() {
    let res = thue_scan(1, 3, &rat(1, 10), Partition::whole()).unwrap();
    assert!(res.scanned > 0);
    for r in &res.records {
        assert_eq!(thue_eval(&r.a, &r.p, &r.q), r.value);
        let poly = thue_poly(&r.a);
        if r.q.is_positive() {
            assert_eq!(poly.eval_scaled(&r.p, &r.q), r.value);
        }
        assert!(!r.value.is_zero());
    }
    // brute re-scan of the record region confirms nothing extra was missed
    let mut brute = 0usize;
    for a3 in -1i64..=1 {
        for a2 in -1i64..=1 {
            for a1 in -1i64..=1 {
                for a0 in -1i64..=1 {
                    if (a0, a1, a2, a3) == (0, 0, 0, 0) {
                        continue;
                    }
                    for q in 1i64..=3 {
                        for p in -(2 * q * 2)..=(2 * q * 2) {
                            if num_integer::gcd(p, q) != 1 {
                                continue;
                            }
                            let a = [int(a0), int(a1), int(a2), int(a3)];
                            let v = thue_eval(&a, &int(p), &int(q));
                            if v.is_zero() {
                                continue;
                            }
                            // score < 1 <=> |F|^20 ||a||^84 < q^8  (eps=1/10)
                            let norm = [a0, a1, a2, a3]
                                .iter()
                                .map(|c| c.abs())
                                .max()
                                .unwrap();
                            let lhs = v.abs().pow(20) * int(norm).pow(84);
                            let rhs = int(q).pow(8);
                            if lhs < rhs {
                                brute += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert_eq!(res.records.len(), brute);
}

#[test]
fn thue_cbrt2_family_minima_sit_on_convergents() {
    // within the x^3 - 2y^3 family the per-denominator minimum of |F| (and
    // hence of the normalized score) is attained at the convergent
    // numerators of 2^(1/3): 4/3, 5/4, 29/23
    let a = [int(-2), int(0), int(0), int(1)];
    for (conv_p, q) in [(4i64, 3i64), (5, 4), (29, 23)] {
        let qb = int(q);
        let best_p = (-6 * q..=6 * q)
            .filter(|p| num_integer::gcd(*p, q) == 1)
            .min_by_key(|p| thue_eval(&a, &int(*p), &qb).abs())
            .unwrap();
        assert_eq!(best_p, conv_p, "q = {}", q);
    }
    // the global scan minimum, by contrast, is reached by a degenerate form
    // (|F| = 1 with unit coefficient norm at the largest q); the family
    // never beats it, so the scan's min_at is not in the family
    let res = thue_scan(2, 8, &rat(1, 10), Partition::whole()).unwrap();
    let (min_a, _, min_q) = res.min_at.clone().unwrap();
    let norm = min_a.iter().map(|c| c.abs()).max().unwrap();
    assert_eq!(norm, int(1));
    assert_eq!(min_q, int(8));
}

#[test]
fn empty_scan_when_threshold_unreachable() {
    // eps = 49/100 with a_max = q_max = 1: q^(1/2-eps) / ||a||^(4+2eps) <= 1
    // while |F| >= 1, so no record can exist
    let res = thue_scan(1, 1, &rat(49, 100), Partition::whole()).unwrap();
    assert!(res.records.is_empty());
    assert!(res.min_score.is_some());
}
