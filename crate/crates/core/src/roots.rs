//! Certified root enclosures and root separation for cubics, plus the
//! depression transform that kills the quadratic term.
//!
//! Complex roots are never approximated by floating point: for a cubic with
//! negative discriminant the conjugate pair is reconstructed from the real
//! root enclosure through the coefficient relations
//! `xi + 2*eta = -a2/a3` and `xi * (eta^2 + theta^2) = -a0/a3`,
//! so refining the real root refines the pair.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{ComplexBox, RatInterval};
use crate::isolate::{isolate_real_roots, RootInterval};
use crate::poly::IntPoly;
use crate::{Int, Rat};

/// Enclosure of the minimal pairwise root distance of a cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepEnclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl SepEnclosure {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn as_interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }
}

/// Result of the depression transform R -> R*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepressedCubic {
    /// 27*b3^3*x^3 + 3*b3*p*x + q
    pub rstar: IntPoly,
    pub p: Int,
    pub q: Int,
}

/// Depresses a cubic: R*(x) = 27 b3^2 R(x - b2/(3 b3)), which has integer
/// coefficients 27 b3^3 x^3 + 3 b3 p x + q with
/// p = 9 b1 b3 - 3 b2^2 and q = 2 b2^3 - 9 b1 b2 b3 + 27 b0 b3^2.
/// Both discriminant identities
/// disc(R*) = (27 b3^2)^4 disc(R) and disc(R*) = 27^2 b3^6 (-4 p^3 - 27 q^2)
/// are checked exactly before returning.
pub fn depress(r: &IntPoly) -> Result<DepressedCubic> {
    if r.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: r.degree(),
        });
    }
    let b3 = r.coeff(3);
    let b2 = r.coeff(2);
    let b1 = r.coeff(1);
    let b0 = r.coeff(0);
    let p = Int::from(9) * &b1 * &b3 - Int::from(3) * &b2 * &b2;
    let q = Int::from(2) * &b2 * &b2 * &b2 - Int::from(9) * &b1 * &b2 * &b3
        + Int::from(27) * &b0 * &b3 * &b3;
    let rstar = IntPoly::new(vec![
        q.clone(),
        Int::from(3) * &b3 * &p,
        Int::zero(),
        Int::from(27) * &b3 * &b3 * &b3,
    ]);
    let disc_r = r.discriminant_cubic()?;
    let disc_rstar = rstar.discriminant_cubic()?;
    let scale = Int::from(27) * &b3 * &b3;
    assert_eq!(
        disc_rstar,
        &scale * &scale * &scale * &scale * &disc_r,
        "depression discriminant scaling identity failed"
    );
    assert_eq!(
        disc_rstar,
        Int::from(729) * b3.pow(6) * (Int::from(-4) * &p * &p * &p - Int::from(27) * &q * &q),
        "depressed discriminant formula failed"
    );
    Ok(DepressedCubic { rstar, p, q })
}

/// Certified boxes around the three roots of a squarefree cubic, each of
/// width at most 2^-precision_bits, sorted by (re.lo, im.lo). For negative
/// discriminant the two complex boxes are exact conjugates.
pub fn root_enclosures(p: &IntPoly, precision_bits: u32) -> Result<Vec<ComplexBox>> {
    let disc = p.discriminant_cubic()?;
    if disc.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let target = Rat::new(Int::one(), Int::one() << precision_bits as usize);
    let mut boxes = if disc.is_positive() {
        let mut roots = isolate_real_roots(p)?;
        for r in &mut roots {
            r.refine_to_width(&target);
        }
        roots
            .into_iter()
            .map(|r| ComplexBox::real(RatInterval::new(r.lo().clone(), r.hi().clone())))
            .collect::<Vec<_>>()
    } else {
        let mut roots = isolate_real_roots(p)?;
        debug_assert_eq!(roots.len(), 1);
        let real = roots.pop().unwrap();
        let (real_box, pair) = conjugate_pair(p, real, &target, precision_bits)?;
        vec![real_box, pair.clone(), pair.conj()]
    };
    boxes.sort_by(|a, b| {
        (a.re.lo.clone(), a.im.lo.clone()).cmp(&(b.re.lo.clone(), b.im.lo.clone()))
    });
    Ok(boxes)
}

/// For disc < 0: the real-root box and the upper-half-plane member of the
/// conjugate pair, both refined to the target width.
fn conjugate_pair(
    p: &IntPoly,
    mut real: RootInterval,
    target: &Rat,
    bits: u32,
) -> Result<(ComplexBox, ComplexBox)> {
    let a3 = Rat::from(p.coeff(3));
    let a2 = Rat::from(p.coeff(2));
    let a1 = Rat::from(p.coeff(1));
    let a0 = Rat::from(p.coeff(0));
    real.refine_to_width(target);
    if p.coeff(0).is_zero() {
        // real root is exactly 0; the pair solves a3 x^2 + a2 x + a1
        let eta = -&a2 / (&a3 * Rat::from(Int::from(2)));
        let theta_sq = &a1 / &a3 - &eta * &eta;
        assert!(theta_sq.is_positive());
        let theta = crate::interval::sqrt_rat(&theta_sq, bits + 2);
        let real_box = ComplexBox::real(RatInterval::zero());
        let pair = ComplexBox::new(RatInterval::point(eta), theta);
        return Ok((real_box, pair));
    }
    let zero = Rat::zero();
    loop {
        if real.contains(&zero) {
            real.exclude_point(&zero);
        }
        let xi = RatInterval::new(real.lo().clone(), real.hi().clone());
        let eta = xi
            .neg()
            .add_rat(&(-&a2 / &a3))
            .mul_rat(&Rat::new(Int::one(), Int::from(2)));
        let pair_modulus_sq = xi.recip().mul_rat(&(-&a0 / &a3));
        let theta_sq = pair_modulus_sq.sub(&eta.square());
        if theta_sq.lo.is_positive() {
            let theta = theta_sq.sqrt(bits + 2);
            if &eta.width() <= target && &theta.width() <= target {
                let real_box = ComplexBox::real(xi);
                let pair = ComplexBox::new(eta, theta);
                return Ok((real_box, pair));
            }
        }
        real.refine_once();
        real.refine_once();
    }
}

/// Enclosure of sep(P) = min pairwise root distance, with relative width at
/// most 2^-precision_bits.
pub fn separation(p: &IntPoly, precision_bits: u32) -> Result<SepEnclosure> {
    let disc = p.discriminant_cubic()?;
    if disc.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let mut prec = precision_bits.max(8) + 4;
    loop {
        let enc = separation_at(p, &disc, prec)?;
        if enc.lo.is_positive() {
            // hi/lo <= 1 + 2^-bits, exactly: hi * 2^bits <= lo * (2^bits + 1)
            let scale = Int::one() << precision_bits as usize;
            let lhs = &enc.hi * Rat::from(scale.clone());
            let rhs = &enc.lo * Rat::from(&scale + Int::one());
            if lhs <= rhs {
                return Ok(enc);
            }
        }
        prec *= 2;
    }
}

fn separation_at(p: &IntPoly, disc: &Int, prec: u32) -> Result<SepEnclosure> {
    let distances: Vec<RatInterval> = if disc.is_positive() {
        let target = Rat::new(Int::one(), Int::one() << prec as usize);
        let mut roots = isolate_real_roots(p)?;
        for r in &mut roots {
            r.refine_to_width(&target);
        }
        debug_assert_eq!(roots.len(), 3);
        let iv: Vec<RatInterval> = roots
            .iter()
            .map(|r| RatInterval::new(r.lo().clone(), r.hi().clone()))
            .collect();
        let dist = |a: &RatInterval, b: &RatInterval| {
            let lo = (&b.lo - &a.hi).max(Rat::zero());
            let hi = &b.hi - &a.lo;
            RatInterval::new(lo, hi)
        };
        vec![
            dist(&iv[0], &iv[1]),
            dist(&iv[1], &iv[2]),
            dist(&iv[0], &iv[2]),
        ]
    } else {
        let boxes = root_enclosures(p, prec)?;
        let real = boxes.iter().find(|b| b.is_real()).unwrap();
        let upper = boxes
            .iter()
            .find(|b| b.im.lo.is_positive() || b.im.hi.is_positive())
            .unwrap();
        let real_to_pair = real.dist(upper, prec);
        let pair_dist = upper.im.mul_rat(&Rat::from(Int::from(2))).abs();
        vec![real_to_pair, pair_dist]
    };
    let mut min = distances[0].clone();
    for d in &distances[1..] {
        min = min.min_enclosure(d);
    }
    Ok(SepEnclosure {
        lo: min.lo,
        hi: min.hi,
    })
}
