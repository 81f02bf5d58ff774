//! Function-field properties: the ultrametric, the convergent distance
//! identity, Legendre certification, and the Riccati identity with its norm
//! bound on random cubics over Q[t].

mod common;

use cubicdist::error::Error;
use cubicdist::ffield::{
    derive_riccati, distance_exponent, expand_fraction, kcf_convergents, newton_root,
    poly_cf_expand, verify_riccati_identity, verify_riccati_on_series, Cubic, KcfTemplate,
    LaurentSeries, TPoly,
};
use cubicdist::rat;
use rand::Rng;

fn random_tpoly(rng: &mut rand::rngs::StdRng, max_deg: usize, bound: i64) -> TPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    TPoly::from_int_coeffs(&coeffs)
}

fn random_series(rng: &mut rand::rngs::StdRng) -> LaurentSeries {
    let p = random_tpoly(rng, 4, 9);
    let shift = rng.gen_range(-3i64..=3);
    LaurentSeries::from_tpoly(&p).shift(shift)
}

#[test]
fn ultrametric_norm() {
    let mut rng = common::rng(0xff00_0001);
    for _ in 0..300 {
        let a = random_series(&mut rng);
        let b = random_series(&mut rng);
        let na = a.norm().unwrap();
        let nb = b.norm().unwrap();
        let ns = a.add(&b).norm().unwrap();
        assert!(ns <= na.clone().max(nb.clone()));
        if na != nb {
            assert_eq!(ns, na.max(nb), "equality when norms differ");
        }
    }
}

#[test]
fn norm_is_multiplicative() {
    let mut rng = common::rng(0xff00_0002);
    for _ in 0..200 {
        let a = random_series(&mut rng);
        let b = random_series(&mut rng);
        let prod = a.mul(&b).norm().unwrap();
        assert_eq!(prod, a.norm().unwrap() * b.norm().unwrap());
    }
}

#[test]
fn norm_examples() {
    // t^2 + 1 + 1/t -> 4; 1/t -> 1/2; 0 -> 0
    let s = LaurentSeries::from_tpoly(&TPoly::from_int_coeffs(&[1, 0, 1]))
        .add(&LaurentSeries::from_rat(&rat(1, 1)).shift(-1));
    assert_eq!(s.norm().unwrap(), rat(4, 1));
    assert_eq!(
        LaurentSeries::from_rat(&rat(1, 1)).shift(-1).norm().unwrap(),
        rat(1, 2)
    );
    assert_eq!(LaurentSeries::zero().norm().unwrap(), rat(0, 1));
}

#[test]
fn convergent_distance_identity() {
    // |x - p_k/q_k| = 1/(|q_k| |q_{k+1}|) exactly for the regular expansion
    let tmpl = KcfTemplate::new(rat(1, 1)).unwrap();
    let alpha = tmpl.root().series(80).unwrap();
    let cf = poly_cf_expand(&alpha, 8).unwrap();
    for k in 0..8 {
        let (p, q) = &cf.convergents[k];
        let d = distance_exponent(&alpha, p, q).unwrap();
        let qk = q.norm_exponent().unwrap_or(0);
        let qk1 = cf.convergents[k + 1].1.norm_exponent().unwrap_or(0);
        assert_eq!(d, -(qk + qk1), "k = {}", k);
    }
}

#[test]
fn legendre_membership() {
    // any reduced fraction beating |q|^-2 must be a convergent: test the
    // convergents themselves plus perturbed non-convergents
    let tmpl = KcfTemplate::new(rat(2, 1)).unwrap();
    let alpha = tmpl.root().series(80).unwrap();
    let cf = poly_cf_expand(&alpha, 6).unwrap();
    for k in 1..6 {
        let (p, q) = &cf.convergents[k];
        // perturb the numerator: quality must be lost
        let p_bad = p.add(&TPoly::one());
        let d = distance_exponent(&alpha, &p_bad, q).unwrap();
        assert!(
            d >= -2 * q.norm_exponent().unwrap_or(0),
            "perturbed fraction still beats Legendre at k = {}",
            k
        );
    }
}

#[test]
fn fraction_expansion_round_trip() {
    let mut rng = common::rng(0xff00_0003);
    for _ in 0..100 {
        let num = random_tpoly(&mut rng, 4, 9);
        let mut den = random_tpoly(&mut rng, 3, 9);
        while den.is_zero() {
            den = random_tpoly(&mut rng, 3, 9);
        }
        let s = expand_fraction(&num, &den, -25).unwrap();
        let back = s.mul(&LaurentSeries::from_tpoly(&den));
        let diff = back.sub(&LaurentSeries::from_tpoly(&num));
        // all known coefficients cancel
        assert!(diff.leading().is_none(), "{} / {}", num, den);
    }
}

#[test]
fn newton_residual_contract() {
    for c in [rat(1, 1), rat(2, 1), rat(-1, 1), rat(3, 7)] {
        let p = cubicdist::ffield::kcf_cubic(&c, &TPoly::t());
        let alpha = newton_root(&p, &TPoly::t(), 40).unwrap();
        let res = alpha.eval_cubic(&p);
        // residual is O(t^(1-40+slack))
        match res.leading() {
            None => {}
            Some((d, _)) => assert!(d <= 1 - 40 + 6, "residual 2^{}", d),
        }
    }
}

fn random_irreducible_tcubic(rng: &mut rand::rngs::StdRng) -> Cubic {
    loop {
        let c = Cubic::new(
            random_tpoly(rng, 3, 5),
            random_tpoly(rng, 3, 5),
            random_tpoly(rng, 3, 5),
            random_tpoly(rng, 3, 5),
        );
        let Ok(c) = c else { continue };
        if c.coeffs[3].is_zero() {
            continue;
        }
        match derive_riccati(&c) {
            Ok(_) => return c,
            Err(Error::Reducible) => continue,
            Err(e) => panic!("unexpected error {:?}", e),
        }
    }
}

#[test]
fn riccati_random_cubics() {
    let mut rng = common::rng(0xff00_0004);
    for i in 0..50 {
        let c = random_irreducible_tcubic(&mut rng);
        let coeffs = derive_riccati(&c).unwrap();
        assert!(
            verify_riccati_identity(&c, &coeffs),
            "identity fails at sample {}",
            i
        );
        assert!(
            coeffs.bound_holds,
            "norm bound fails at sample {}: max 2^{} vs H^4 = 2^{}",
            i,
            coeffs.max_norm_exp,
            4 * coeffs.height_exp
        );
    }
}

#[test]
fn riccati_series_substitution_named_example() {
    // 3x^3 - 3tx^2 - 3x + t with the 60-term series
    let p = cubicdist::ffield::kcf_cubic(&rat(1, 1), &TPoly::t());
    let coeffs = derive_riccati(&p).unwrap();
    let alpha = newton_root(&p, &TPoly::t(), 60).unwrap();
    assert!(verify_riccati_on_series(&coeffs, &alpha).unwrap());
}

#[test]
fn kcf_template_rejects_bad_parameters() {
    assert!(KcfTemplate::new(rat(0, 1)).is_err());
    assert!(KcfTemplate::with_variable(rat(1, 1), TPoly::one()).is_err());
}

#[test]
fn kcf_convergents_certified_for_substituted_variable() {
    // t -> t^2 + 1 keeps the template a genuine continued fraction
    let r = TPoly::from_int_coeffs(&[1, 0, 1]);
    let tmpl = KcfTemplate::with_variable(rat(1, 1), r).unwrap();
    let alpha = tmpl.root().series(80).unwrap();
    for (k, (p, q)) in kcf_convergents(&tmpl, 6).iter().enumerate() {
        let d = distance_exponent(&alpha, p, q).unwrap();
        let qe = q.norm_exponent().unwrap_or(0);
        assert!(d < -2 * qe, "k = {}", k);
    }
}
