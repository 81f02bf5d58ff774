//! The explicit family of cubic irrationals built from the convergents of
//! sqrt(2): Pell sequences u_n, v_n, the cubics P_n, the rationals p_n/q_n
//! with |q_n^3 P_n(p_n/q_n)| = 2, the predicted continued-fraction pattern
//! with its huge partial quotient A_n, and the closeness ratios that witness
//! the line u = 10 - 3v.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cf::{cf_expand, AlgebraicReal};
use crate::error::{Error, Result};
use crate::interval::{ComplexBox, RatInterval};
use crate::isolate::root_bound;
use crate::poly::{is_irreducible_cubic, IntPoly};
use crate::roots::root_enclosures;
use crate::{Int, Rat};

/// One index of the Pell-style recurrences u_{n+1} = 2u_n + u_{n-1},
/// v_{n+1} = 2v_n + v_{n-1} with seeds (1, 2) and (1, 3): v_n/u_n is the
/// n-th convergent of sqrt(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellPair {
    pub n: usize,
    pub u: Int,
    pub v: Int,
    /// 2 u_n^2 - v_n^2, always +-1
    pub pell_sign: Int,
    /// u_{n-1} v_n - v_{n-1} u_n for n >= 1, always +-1
    pub cross_sign: Option<Int>,
}

/// The sequences through index n_max (inclusive), with both unit identities
/// evaluated exactly.
pub fn pell_seq(n_max: usize) -> Vec<PellPair> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut u_prev = Int::one();
    let mut v_prev = Int::one();
    let mut u = Int::from(2);
    let mut v = Int::from(3);
    for n in 0..=n_max {
        let (un, vn, cross) = if n == 0 {
            (u_prev.clone(), v_prev.clone(), None)
        } else {
            let cross = &u_prev * &v - &v_prev * &u;
            (u.clone(), v.clone(), Some(cross))
        };
        out.push(PellPair {
            n,
            pell_sign: Int::from(2) * &un * &un - &vn * &vn,
            cross_sign: cross,
            u: un,
            v: vn,
        });
        if n >= 1 {
            let u_next = Int::from(2) * &u + &u_prev;
            let v_next = Int::from(2) * &v + &v_prev;
            u_prev = std::mem::replace(&mut u, u_next);
            v_prev = std::mem::replace(&mut v, v_next);
        }
    }
    out
}

/// P_n, its close rational p_n/q_n, and the predicted giant quotient A_n.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub n: usize,
    /// u_n x^3 + (5u_n + u_{n-1}) x^2 - 2(3v_n - u_{n-1}) x - 2v_n
    pub poly: IntPoly,
    /// p_n/q_n in lowest terms
    pub approx: Rat,
    /// gcd removed when reducing p_n/q_n (1 in every observed case)
    pub approx_gcd: Int,
    /// A_n = 2 + 4 u_n v_n (14 u_n^2 + 20 u_n v_n + 7 v_n^2)
    pub a_n: Int,
}

/// Builds the n-th member (n >= 1; P_0 would need u_{-1}) and verifies that
/// P_n is irreducible.
pub fn family_member(n: usize) -> Result<FamilyMember> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the family starts at n = 1".into(),
        ));
    }
    let seq = pell_seq(n);
    let u = &seq[n].u;
    let v = &seq[n].v;
    let u_prev = &seq[n - 1].u;
    let poly = IntPoly::new(vec![
        Int::from(-2) * v,
        Int::from(-2) * (Int::from(3) * v - u_prev),
        Int::from(5) * u + u_prev,
        u.clone(),
    ]);
    if !is_irreducible_cubic(&poly)? {
        return Err(Error::Reducible);
    }
    let u2 = u * u;
    let v2 = v * v;
    let p_raw = Int::from(4) * &u2 * u
        + Int::from(16) * &u2 * v
        + Int::from(14) * u * &v2
        + Int::from(4) * &v2 * v;
    let q_raw = Int::from(8) * &u2 * u
        + Int::from(14) * &u2 * v
        + Int::from(8) * u * &v2
        + &v2 * v;
    let approx_gcd = p_raw.gcd(&q_raw);
    let a_n = Int::from(2)
        + Int::from(4)
            * u
            * v
            * (Int::from(14) * &u2 + Int::from(20) * u * v + Int::from(7) * &v2);
    Ok(FamilyMember {
        n,
        poly,
        approx: Rat::new(p_raw, q_raw),
        approx_gcd,
        a_n,
    })
}

/// The root of P_n near sqrt(2): its unique positive real root.
pub fn positive_root(member: &FamilyMember) -> Result<AlgebraicReal> {
    let hi = Rat::from(root_bound(&member.poly));
    AlgebraicReal::new(&member.poly, &Rat::zero(), &hi)
}

/// Exact evaluation of q_n^3 P_n(p_n/q_n) with the pass flag |value| = 2,
/// plus an enclosure cross-check against the factored form
/// u_n q_n^3 prod_i (p_n/q_n - xi_i).
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub n: usize,
    pub value: Int,
    pub pass: bool,
    /// the factored-product enclosure contains value / (u_n q_n^3)
    pub product_consistent: bool,
}

pub fn verify_family_identity(n_max: usize, enclosure_bits: u32) -> Result<Vec<IdentityCheck>> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let m = family_member(n)?;
        let value = m.poly.eval_scaled(m.approx.numer(), m.approx.denom());
        let pass = value.abs() == Int::from(2);
        let product_consistent = product_check(&m, &value, enclosure_bits)?;
        out.push(IdentityCheck {
            n,
            value,
            pass,
            product_consistent,
        });
    }
    Ok(out)
}

/// P_n(p/q) = u_n prod (p/q - xi_i): checks that the interval product over
/// certified root boxes contains the exact rational value.
fn product_check(m: &FamilyMember, value: &Int, bits: u32) -> Result<bool> {
    let boxes = root_enclosures(&m.poly, bits)?;
    let point = ComplexBox::real(RatInterval::point(m.approx.clone()));
    let mut prod = ComplexBox::real(RatInterval::point(Rat::one()));
    for b in &boxes {
        prod = prod.mul(&point.add(&ComplexBox {
            re: b.re.neg(),
            im: b.im.neg(),
        }));
    }
    let u = m.poly.leading();
    let q = m.approx.denom();
    let expected = Rat::new(value.clone(), &u * q * q * q);
    Ok(prod.re.contains(&expected) && prod.im.contains(&Rat::zero()))
}

/// The predicted prefix of the continued fraction of the positive root:
/// [1; 2^n, 4, 2^(2n+1), 3, A_n, 1, 1, 2^(2n+1), 1, 1, 1, 2^(2n+1), 1, 1]
/// (7n + 14 terms in total).
pub fn predicted_cf_prefix(n: usize) -> Result<Vec<Int>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the family starts at n = 1".into(),
        ));
    }
    let a_n = family_member(n)?.a_n;
    let one = Int::one();
    let two = Int::from(2);
    let mut t = Vec::with_capacity(7 * n + 14);
    t.push(one.clone());
    t.extend(std::iter::repeat_with(|| two.clone()).take(n));
    t.push(Int::from(4));
    t.extend(std::iter::repeat_with(|| two.clone()).take(2 * n + 1));
    t.push(Int::from(3));
    t.push(a_n);
    t.push(one.clone());
    t.push(one.clone());
    t.extend(std::iter::repeat_with(|| two.clone()).take(2 * n + 1));
    t.push(one.clone());
    t.push(one.clone());
    t.push(one.clone());
    t.extend(std::iter::repeat_with(|| two.clone()).take(2 * n + 1));
    t.push(one.clone());
    t.push(one);
    debug_assert_eq!(t.len(), 7 * n + 14);
    Ok(t)
}

/// Outcome of matching the computed expansion against the template.
#[derive(Clone, Debug)]
pub struct PatternReport {
    pub n: usize,
    pub expected: Vec<Int>,
    pub actual: Vec<Int>,
    /// index of the first disagreement, None on a full match
    pub first_mismatch: Option<usize>,
}

impl PatternReport {
    pub fn full_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Expands the positive root of P_n to the template length and reports the
/// first mismatch, if any.
pub fn verify_cf_pattern(n: usize) -> Result<PatternReport> {
    let expected = predicted_cf_prefix(n)?;
    let member = family_member(n)?;
    let root = positive_root(&member)?;
    let actual = cf_expand(&root, expected.len() - 1).quotients;
    let first_mismatch = expected
        .iter()
        .zip(actual.iter())
        .position(|(e, a)| e != a);
    Ok(PatternReport {
        n,
        expected,
        actual,
        first_mismatch,
    })
}

/// Enclosure of |xi_1,n - p_n/q_n| * q_n^3 * v_n, computed through the exact
/// identity so that no deep root refinement is needed:
/// ratio = |value| * v_n / (u_n * prod_{i != 1} |p_n/q_n - xi_i|).
#[derive(Clone, Debug)]
pub struct ClosenessRow {
    pub n: usize,
    pub ratio: RatInterval,
}

pub fn closeness_exponents(n_max: usize, bits: u32) -> Result<Vec<ClosenessRow>> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let m = family_member(n)?;
        let seq = pell_seq(n);
        let value = m.poly.eval_scaled(m.approx.numer(), m.approx.denom());
        let boxes = root_enclosures(&m.poly, bits)?;
        // the positive real root is xi_1; the product runs over the others
        let mut denom = RatInterval::point(Rat::from(m.poly.leading()));
        let mut seen_positive = false;
        for b in &boxes {
            let is_positive_real = b.is_real() && b.re.hi.is_positive();
            if is_positive_real && !seen_positive {
                seen_positive = true;
                continue;
            }
            let diff_sq = ComplexBox::real(RatInterval::point(m.approx.clone())).dist_sq(b);
            denom = denom.mul(&diff_sq.sqrt(bits + 2));
        }
        assert!(seen_positive, "P_n must have a positive real root");
        let numer = Rat::from(value.abs() * &seq[n].v);
        let ratio = denom.recip().mul_rat(&numer);
        out.push(ClosenessRow { n, ratio });
    }
    Ok(out)
}

/// Sample points of the constraint line u = 10 - 3v implied by the family.
pub fn constraint_line_samples(count: usize) -> Vec<(Rat, Rat)> {
    let two = Rat::from(Int::from(2));
    let step = Rat::new(Int::one(), Int::from(count.max(2) as i64 - 1));
    (0..count.max(2))
        .map(|i| {
            let v = &two + Rat::from(Int::from(i as i64)) * &step;
            let u = Rat::from(Int::from(10)) - Rat::from(Int::from(3)) * &v;
            (u, v)
        })
        .collect()
}
