//! The continued-fraction pipeline against the endpoint-expansion oracle,
//! plus the exact identities of the convergent transform and recentering.

mod common;

use cubicdist::cf::{
    cf_expand, convergent_transform, is_convergent, pair_parameters, recenter, AlgebraicReal,
};
use cubicdist::isolate::isolate_real_roots;
use cubicdist::poly::IntPoly;
use cubicdist::{int, rat, Int};
use num_traits::Signed;
use proptest::prelude::*;

/// Picks the first real root of an irreducible cubic as an AlgebraicReal.
fn first_root(p: &IntPoly) -> AlgebraicReal {
    let mut roots = isolate_real_roots(p).unwrap();
    let r = roots.remove(0);
    AlgebraicReal::new(p, r.lo(), r.hi()).unwrap()
}

#[test]
fn expansion_matches_endpoint_oracle() {
    let mut rng = common::rng(0xcf00_0001);
    for _ in 0..60 {
        let p = common::random_irreducible_cubic(&mut rng, 25);
        let mut roots = isolate_real_roots(&p).unwrap();
        let r = roots.remove(0);
        let x = AlgebraicReal::new(&p, r.lo(), r.hi()).unwrap();
        let depth = 8;
        let got = cf_expand(&x, depth).quotients;
        let want = common::cf_prefix_oracle(&p, r.lo(), r.hi(), depth + 1);
        assert_eq!(got, want, "poly {}", p);
    }
}

#[test]
fn quadratic_expansion_matches_oracle() {
    // sqrt(7) = [2; 1,1,1,4, 1,1,1,4, ...]
    let p = IntPoly::from_coeffs(&[-7, 0, 1]);
    let x = AlgebraicReal::new(&p, &rat(2, 1), &rat(3, 1)).unwrap();
    let got = cf_expand(&x, 8).quotients;
    let expected: Vec<Int> = [2, 1, 1, 1, 4, 1, 1, 1, 4].iter().map(|&v| int(v)).collect();
    assert_eq!(got, expected);
}

#[test]
fn transform_identities_random() {
    let mut rng = common::rng(0xcf00_0002);
    for _ in 0..40 {
        let p = common::random_irreducible_cubic(&mut rng, 20);
        let x = first_root(&p);
        let cf = cf_expand(&x, 6);
        let disc = p.discriminant_cubic().unwrap();
        for n in 0..=5 {
            let q = convergent_transform(&p, &cf, n).unwrap();
            assert_eq!(q.discriminant_cubic().unwrap(), disc, "n={} poly {}", n, p);
            let (pn, qn) = &cf.convergents[n];
            assert_eq!(q.leading(), p.eval_scaled(pn, qn), "lead identity");
        }
    }
}

#[test]
fn transform_rejects_excessive_depth() {
    let p = IntPoly::cubic(1, 0, 0, -2);
    let x = AlgebraicReal::new(&p, &rat(1, 1), &rat(2, 1)).unwrap();
    let cf = cf_expand(&x, 2);
    assert!(convergent_transform(&p, &cf, 2).is_err());
}

#[test]
fn recenter_preserves_invariants_random() {
    let mut rng = common::rng(0xcf00_0003);
    for _ in 0..60 {
        let q = common::random_squarefree_cubic(&mut rng, 25);
        let (r, k) = recenter(&q, 16).unwrap();
        assert_eq!(r.leading(), q.leading());
        assert_eq!(
            r.discriminant_cubic().unwrap(),
            q.discriminant_cubic().unwrap()
        );
        assert_eq!(r, q.shift(&k));
    }
}

#[test]
fn recenter_puts_sigma2_in_the_unit_window() {
    // after the shift, the least-modulus root of Q sits within [-1/2, 1/2]
    // of the origin in real part: check against the float oracle
    let mut rng = common::rng(0xcf00_0004);
    for _ in 0..60 {
        let q = common::random_squarefree_cubic(&mut rng, 25);
        let (_, k) = recenter(&q, 24).unwrap();
        let roots = common::roots_f64_of(&q);
        let min = roots
            .iter()
            .map(|(re, im)| (re * re + im * im, *re))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.1.partial_cmp(&a.1).unwrap()))
            .unwrap();
        let k_f = k.to_string().parse::<f64>().unwrap();
        assert!(
            (min.1 - k_f).abs() <= 0.5 + 1e-6,
            "poly {} k {} re {}",
            q,
            k,
            min.1
        );
    }
}

#[test]
fn convergent_membership_with_depth_budget() {
    let p = IntPoly::cubic(1, 0, 0, -2);
    let x = AlgebraicReal::new(&p, &rat(1, 1), &rat(2, 1)).unwrap();
    // convergents of cbrt(2): 1, 4/3, 5/4, 29/23, ...
    assert!(is_convergent(&x, &rat(29, 23), 64).unwrap());
    assert!(!is_convergent(&x, &rat(30, 23), 64).unwrap());
    // a depth budget too small to reach the denominator is an error
    assert!(is_convergent(&x, &rat(584, 403), 1).is_err());
}

#[test]
fn pair_parameters_window_always_holds() {
    // (A-1) q_n <= q_{n+1} <= A q_n is forced by the convergent sandwich
    let mut rng = common::rng(0xcf00_0005);
    for _ in 0..20 {
        let p = common::random_irreducible_cubic(&mut rng, 15);
        let x = first_root(&p);
        let cf = cf_expand(&x, 5);
        let target = cf.convergent(4);
        let pp = pair_parameters(&x, &target, None, 64).unwrap();
        assert_eq!(pp.index, 4);
        assert!(pp.window_holds, "poly {}", p);
        assert!(pp.disc_bound_holds, "|disc| <= 54 H^4 holds for every cubic");
        // B is defined through the primitive minimal polynomial
        assert_eq!(
            pp.b,
            x.minpoly()
                .eval_scaled(target.numer(), target.denom())
                .abs()
        );
    }
}

#[test]
fn pair_parameters_tau_from_target() {
    let p1 = IntPoly::cubic(2, 11, -16, -6);
    let x = AlgebraicReal::new(&p1, &rat(1, 1), &rat(2, 1)).unwrap();
    let pp = pair_parameters(&x, &rat(584, 403), Some((rat(3, 1), rat(5, 2))), 64).unwrap();
    assert_eq!(pp.tau.unwrap(), rat(1, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // prefix stability: a shorter expansion is a truncation of a longer one
    #[test]
    fn prefix_stability(seed in 0u64..1u64 << 48, depth in 2usize..7) {
        let mut rng = common::rng(seed);
        let p = common::random_irreducible_cubic(&mut rng, 12);
        let x = first_root(&p);
        let long = cf_expand(&x, depth + 3);
        let short = cf_expand(&x, depth);
        prop_assert_eq!(&long.quotients[..=depth], &short.quotients[..]);
        prop_assert_eq!(&long.convergents[..=depth], &short.convergents[..]);
    }

    // unimodularity: p_{k-1} q_k - p_k q_{k-1} = (-1)^k
    #[test]
    fn unimodular_determinants(seed in 0u64..1u64 << 48) {
        let mut rng = common::rng(seed);
        let p = common::random_irreducible_cubic(&mut rng, 12);
        let x = first_root(&p);
        let cf = cf_expand(&x, 7);
        for k in 1..cf.convergents.len() {
            let (ref pk, ref qk) = cf.convergents[k];
            let (ref pk1, ref qk1) = cf.convergents[k - 1];
            let det = pk1 * qk - pk * qk1;
            prop_assert_eq!(det, if k % 2 == 0 { int(1) } else { int(-1) });
        }
    }
}
