//! Independent oracles for the integration suites. Everything here solves
//! the same problems as the crate by a different route: float root finding,
//! Sturm chains, Sylvester resultants, endpoint continued fractions. None of
//! it calls the implementation paths it is used to check.
//!
//! Each test binary uses its own subset of the oracles.
#![allow(dead_code)]

use cubicdist::poly::IntPoly;
use cubicdist::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_cubic(rng: &mut StdRng, bound: i64) -> IntPoly {
    loop {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c[3] != 0 {
            return IntPoly::from_coeffs(&c);
        }
    }
}

pub fn random_squarefree_cubic(rng: &mut StdRng, bound: i64) -> IntPoly {
    loop {
        let p = random_cubic(rng, bound);
        if !p.discriminant_cubic().unwrap().is_zero() {
            return p;
        }
    }
}

pub fn random_irreducible_cubic(rng: &mut StdRng, bound: i64) -> IntPoly {
    loop {
        let p = random_squarefree_cubic(rng, bound);
        if cubicdist::poly::is_irreducible_cubic(&p).unwrap() {
            return p;
        }
    }
}

// ---------------------------------------------------------------------------
// float cubic roots (for DERIVED numeric values)
// ---------------------------------------------------------------------------

/// Complex roots (re, im) of a cubic with f64 coefficients: one real root by
/// Cardano + Newton polish, the others from the deflated quadratic.
pub fn cubic_roots_f64(a: f64, b: f64, c: f64, d: f64) -> [(f64, f64); 3] {
    // depressed form x = y - b/(3a): y^3 + py + q
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    let shift = -b / (3.0 * a);
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let mut y = if disc >= 0.0 {
        let s = disc.sqrt();
        cbrt(-q / 2.0 + s) + cbrt(-q / 2.0 - s)
    } else {
        // three real roots: pick the largest by the trig form
        let r = (-p / 3.0_f64).sqrt();
        let phi = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0).acos();
        2.0 * r * (phi / 3.0).cos()
    };
    // Newton polish on the depressed cubic
    for _ in 0..60 {
        let f = y * y * y + p * y + q;
        let fp = 3.0 * y * y + p;
        if fp.abs() < 1e-300 {
            break;
        }
        let step = f / fp;
        y -= step;
        if step.abs() < 1e-15 * y.abs().max(1.0) {
            break;
        }
    }
    let r1 = y + shift;
    // deflate: a x^3 + ... = (x - r1)(a x^2 + e x + f)
    let e = b + a * r1;
    let f = c + e * r1;
    let qdisc = e * e - 4.0 * a * f;
    if qdisc >= 0.0 {
        let s = qdisc.sqrt();
        [
            (r1, 0.0),
            ((-e + s) / (2.0 * a), 0.0),
            ((-e - s) / (2.0 * a), 0.0),
        ]
    } else {
        let s = (-qdisc).sqrt();
        [
            (r1, 0.0),
            (-e / (2.0 * a), s / (2.0 * a)),
            (-e / (2.0 * a), -s / (2.0 * a)),
        ]
    }
}

fn cbrt(x: f64) -> f64 {
    x.signum() * x.abs().powf(1.0 / 3.0)
}

pub fn roots_f64_of(p: &IntPoly) -> [(f64, f64); 3] {
    assert_eq!(p.degree(), 3);
    cubic_roots_f64(
        p.coeff(3).to_f64().unwrap(),
        p.coeff(2).to_f64().unwrap(),
        p.coeff(1).to_f64().unwrap(),
        p.coeff(0).to_f64().unwrap(),
    )
}

/// min pairwise distance of the float roots
pub fn separation_f64(p: &IntPoly) -> f64 {
    let rs = roots_f64_of(p);
    let mut best = f64::INFINITY;
    for i in 0..3 {
        for j in i + 1..3 {
            let dre = rs[i].0 - rs[j].0;
            let dim = rs[i].1 - rs[j].1;
            best = best.min((dre * dre + dim * dim).sqrt());
        }
    }
    best
}

/// float discriminant via a^4 prod (r_i - r_j)^2 over the complex roots
pub fn discriminant_f64(p: &IntPoly) -> f64 {
    let rs = roots_f64_of(p);
    let a = p.coeff(3).to_f64().unwrap();
    // complex product of squared differences
    let mut re = 1.0;
    let mut im = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            let dre = rs[i].0 - rs[j].0;
            let dim = rs[i].1 - rs[j].1;
            let sq_re = dre * dre - dim * dim;
            let sq_im = 2.0 * dre * dim;
            let nre = re * sq_re - im * sq_im;
            im = re * sq_im + im * sq_re;
            re = nre;
        }
    }
    a.powi(4) * re
}

// ---------------------------------------------------------------------------
// Sturm chain over exact rationals
// ---------------------------------------------------------------------------

type RatPoly = Vec<Rat>;

fn rp_from(p: &IntPoly) -> RatPoly {
    p.coeffs().iter().map(|c| Rat::from(c.clone())).collect()
}

fn rp_trim(mut p: RatPoly) -> RatPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rp_deriv(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from(Int::from(i as i64)))
        .collect()
}

fn rp_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lb;
        for (j, bc) in b.iter().enumerate() {
            let idx = dr - db + j;
            let v = &r[idx] - &factor * bc;
            r[idx] = v;
        }
        r = rp_trim(r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn rp_eval_sign(p: &RatPoly, x: &Rat) -> i8 {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &IntPoly) -> Vec<RatPoly> {
    let mut chain = vec![rp_trim(rp_from(p))];
    chain.push(rp_trim(rp_deriv(&chain[0])));
    while chain.last().map_or(false, |c| c.len() > 1) {
        let n = chain.len();
        let rem = rp_rem(&chain[n - 2], &chain[n - 1]);
        let neg: RatPoly = rem.iter().map(|c| -c).collect();
        if neg.is_empty() {
            break;
        }
        chain.push(neg);
    }
    chain
}

fn sign_variations_at(chain: &[RatPoly], x: &Rat) -> usize {
    let mut vars = 0;
    let mut last = 0i8;
    for p in chain {
        if p.is_empty() {
            continue;
        }
        let s = rp_eval_sign(p, x);
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// Number of distinct real roots in (lo, hi] by the Sturm theorem.
pub fn sturm_count(p: &IntPoly, lo: &Rat, hi: &Rat) -> usize {
    let chain = sturm_chain(p);
    sign_variations_at(&chain, lo) - sign_variations_at(&chain, hi)
}

/// Total number of distinct real roots.
pub fn sturm_real_root_count(p: &IntPoly) -> usize {
    let bound = Rat::from(cubicdist::isolate::root_bound(p));
    sturm_count(p, &(-bound.clone()), &bound)
}

// ---------------------------------------------------------------------------
// Sylvester resultant discriminant
// ---------------------------------------------------------------------------

/// disc(P) = (-1)^(d(d-1)/2) Res(P, P') / lead(P) for d = 3, with the
/// resultant computed as a 5x5 Sylvester determinant by fraction-free
/// elimination.
pub fn resultant_discriminant(p: &IntPoly) -> Int {
    assert_eq!(p.degree(), 3);
    let dp = p.derivative();
    let mut m = vec![vec![Int::zero(); 5]; 5];
    // two rows of P (degree 3), three rows of P' (degree 2)
    for r in 0..2 {
        for i in 0..=3 {
            m[r][r + i] = p.coeff(3 - i);
        }
    }
    for r in 0..3 {
        for i in 0..=2 {
            m[2 + r][r + i] = dp.coeff(2 - i);
        }
    }
    let res = bareiss_det(m);
    // (-1)^(3*2/2) = -1
    let q = -res / p.leading();
    q
}

fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

// ---------------------------------------------------------------------------
// endpoint continued fractions (independent of the CF module)
// ---------------------------------------------------------------------------

/// Euclidean continued fraction of a rational.
pub fn cf_of_rational(r: &Rat) -> Vec<Int> {
    let mut quotients = Vec::new();
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    loop {
        let q = num.div_floor(&den);
        quotients.push(q.clone());
        let rem = num - &q * &den;
        if rem.is_zero() {
            return quotients;
        }
        num = den;
        den = rem;
    }
}

/// Certified CF prefix of the unique root of p in (lo, hi): the interval is
/// bisected by exact sign tests until the endpoint expansions share `want`
/// quotients with margin.
pub fn cf_prefix_oracle(p: &IntPoly, lo: &Rat, hi: &Rat, want: usize) -> Vec<Int> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let s_lo = p.sign_at(&lo);
    assert!(s_lo != 0 && p.sign_at(&hi) != 0 && s_lo != p.sign_at(&hi));
    let two = Rat::from(Int::from(2));
    for _ in 0..100_000 {
        let a = cf_of_rational(&lo);
        let b = cf_of_rational(&hi);
        let mut shared = 0;
        while shared < a.len() && shared < b.len() && a[shared] == b[shared] {
            shared += 1;
        }
        // stay away from the tails of both rational expansions, where the
        // [.., n] vs [.., n-1, 1] ambiguity lives
        if shared >= want + 1 && a.len() > shared + 1 && b.len() > shared + 1 {
            return a[..want].to_vec();
        }
        let mid = (&lo + &hi) / &two;
        let sm = p.sign_at(&mid);
        assert!(sm != 0, "rational midpoint hit an irrational root's place");
        if sm == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    panic!("oracle failed to separate the endpoint expansions");
}
