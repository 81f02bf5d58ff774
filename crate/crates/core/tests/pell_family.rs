//! The explicit family around sqrt(2): coefficient-ratio convergence, height
//! comparisons, and the closeness ratios feeding the exponent line.

mod common;

use cubicdist::interval::sqrt_rat;
use cubicdist::pell::{
    closeness_exponents, constraint_line_samples, family_member, pell_seq, positive_root,
};
use cubicdist::{int, rat, Rat};
use num_traits::Signed;

#[test]
fn coefficient_ratios_converge() {
    // (5u_n + u_{n-1})/u_n -> 5 + 1/(sqrt(2)+1) = 4 + sqrt(2),
    // 2v_n/u_n -> 2 sqrt(2)
    let sqrt2 = sqrt_rat(&rat(2, 1), 80);
    let seq = pell_seq(40);
    let mut last_err_a: Option<Rat> = None;
    let mut last_err_b: Option<Rat> = None;
    for n in [5usize, 10, 20, 40] {
        let m = family_member(n).unwrap();
        let u = &seq[n].u;
        let ratio_a = Rat::new(m.poly.coeff(2), u.clone());
        let ratio_b = Rat::new(-m.poly.coeff(0), u.clone());
        let target_a = rat(4, 1) + sqrt2.mid();
        let target_b = rat(2, 1) * sqrt2.mid();
        let err_a = (ratio_a - target_a).abs();
        let err_b = (ratio_b - target_b).abs();
        if let Some(prev) = last_err_a.take() {
            assert!(err_a < prev, "ratio (5u+u')/u not converging at n={}", n);
        }
        if let Some(prev) = last_err_b.take() {
            assert!(err_b < prev, "ratio 2v/u not converging at n={}", n);
        }
        last_err_a = Some(err_a);
        last_err_b = Some(err_b);
    }
}

#[test]
fn height_comparable_to_v() {
    // H(P_n)/v_n stays in [1, 7]
    let seq = pell_seq(12);
    for n in 1..=12 {
        let m = family_member(n).unwrap();
        let ratio = Rat::new(m.poly.height(), seq[n].v.clone());
        assert!(ratio >= rat(1, 1) && ratio <= rat(7, 1), "n = {}", n);
    }
}

#[test]
fn q_grows_like_v_cubed() {
    // q_n / v_n^3 approaches 4 sqrt(2) + 7 + 1/sqrt(2)... = 16.485 and
    // stays within fixed bounds
    let seq = pell_seq(12);
    for n in 1..=12 {
        let m = family_member(n).unwrap();
        let v3 = seq[n].v.clone().pow(3);
        let ratio = Rat::new(m.approx.denom().clone(), v3);
        assert!(
            ratio > rat(10, 1) && ratio < rat(20, 1),
            "n = {}: {}",
            n,
            ratio
        );
    }
}

#[test]
fn approx_converges_to_sqrt2() {
    let m = family_member(12).unwrap();
    let sqrt2 = sqrt_rat(&rat(2, 1), 120);
    let err = (m.approx - sqrt2.mid()).abs();
    assert!(err < rat(1, 1_000_000));
}

#[test]
fn positive_root_is_near_sqrt2() {
    for n in [1usize, 3, 6] {
        let m = family_member(n).unwrap();
        let x = positive_root(&m).unwrap();
        let iv = x.root_interval();
        assert!(iv.hi() > &rat(1, 1) && iv.lo() < &rat(2, 1), "n = {}", n);
    }
}

#[test]
fn closeness_ratio_settles_near_one_fifth() {
    // the exact limit is 2 sqrt(2) / (|sqrt2 - xi_2| |sqrt2 - xi_3|) = 0.2071...
    let rows = closeness_exponents(8, 64).unwrap();
    for w in rows.windows(2) {
        // adjacent ratios agree within a factor far below 10
        let growth = &w[1].ratio.hi / &w[0].ratio.lo;
        assert!(growth < rat(3, 2) && growth > rat(1, 2));
    }
    let last = &rows[7].ratio;
    assert!(last.lo > rat(20, 100) && last.hi < rat(21, 100));
}

#[test]
fn constraint_line_matches_outer_bound() {
    for (u, v) in constraint_line_samples(7) {
        assert_eq!(u, cubicdist::exponents::outer_bound_u(&v).unwrap());
    }
}

#[test]
fn identity_value_signs_alternate() {
    let checks = cubicdist::pell::verify_family_identity(8, 32).unwrap();
    for c in &checks {
        let expected = if c.n % 2 == 1 { int(-2) } else { int(2) };
        assert_eq!(c.value, expected, "n = {}", c.n);
    }
}
