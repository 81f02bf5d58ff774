//! Exact rational interval arithmetic.
//!
//! Intervals carry exact rational endpoints and every operation returns an
//! enclosure of the true image, so a chain of operations yields a certified
//! enclosure of the exact value. Irrational functions (square roots, rational
//! powers) take a `bits` argument bounding the enclosure width by 2^-bits in
//! the last rounding step.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPoly;
use crate::{Int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from(Int::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_rat(&self, v: &Rat) -> Self {
        RatInterval {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn mul_rat(&self, v: &Rat) -> Self {
        if v.is_negative() {
            RatInterval {
                lo: &self.hi * v,
                hi: &self.lo * v,
            }
        } else {
            RatInterval {
                lo: &self.lo * v,
                hi: &self.hi * v,
            }
        }
    }

    pub fn square(&self) -> Self {
        if self.contains_zero() {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            RatInterval {
                lo: Rat::zero(),
                hi: a.max(b),
            }
        } else {
            self.mul(self)
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "division by interval containing 0");
        RatInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn abs(&self) -> Self {
        if self.contains_zero() {
            RatInterval {
                lo: Rat::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            }
        } else if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Enclosure of min(self, other) as real numbers.
    pub fn min_enclosure(&self, other: &Self) -> Self {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    /// Certified strict comparison against a rational: Some(true) when every
    /// point of the interval is below v, Some(false) when every point is
    /// above, None when v lies inside.
    pub fn lt_rat(&self, v: &Rat) -> Option<bool> {
        if &self.hi < v {
            Some(true)
        } else if &self.lo > v {
            Some(false)
        } else {
            None
        }
    }

    /// Certified comparison of two enclosures of distinct reals.
    pub fn lt(&self, other: &Self) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if other.hi < self.lo {
            Some(false)
        } else {
            None
        }
    }

    /// Enclosure of sqrt(self); requires lo >= 0.
    pub fn sqrt(&self, bits: u32) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        let lo = sqrt_rat(&self.lo, bits).lo;
        let hi = sqrt_rat(&self.hi, bits).hi;
        RatInterval { lo, hi }
    }
}

/// Enclosure of sqrt(r) with 2^-bits resolution; exact when r is a square.
pub fn sqrt_rat(r: &Rat, bits: u32) -> RatInterval {
    assert!(!r.is_negative());
    if r.is_zero() {
        return RatInterval::zero();
    }
    let num = r.numer();
    let den = r.denom();
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits before the integer sqrt.
    let n = (num * den) << (2 * bits as usize);
    let s = n.sqrt();
    let scale = Rat::new(Int::one(), den * (Int::one() << bits as usize));
    if &s * &s == n {
        RatInterval::point(Rat::from(s) * scale)
    } else {
        RatInterval {
            lo: Rat::from(s.clone()) * &scale,
            hi: Rat::from(s + 1) * scale,
        }
    }
}

/// Enclosure of r^(1/k) for positive rational r; exact for perfect powers.
pub fn nth_root_rat(r: &Rat, k: u32, bits: u32) -> RatInterval {
    assert!(r.is_positive() && k >= 1);
    if k == 1 {
        return RatInterval::point(r.clone());
    }
    let num = r.numer();
    let den = r.denom();
    // (n/d)^(1/k) = (n d^(k-1))^(1/k) / d.
    let mut m = num.clone();
    for _ in 0..k - 1 {
        m *= den;
    }
    let n = m << (k as usize * bits as usize);
    let s = n.nth_root(k);
    let scale = Rat::new(Int::one(), den * (Int::one() << bits as usize));
    let mut spow = Int::one();
    for _ in 0..k {
        spow *= &s;
    }
    if spow == n {
        RatInterval::point(Rat::from(s) * scale)
    } else {
        RatInterval {
            lo: Rat::from(s.clone()) * &scale,
            hi: Rat::from(s + 1) * scale,
        }
    }
}

/// Enclosure of base^exp for positive rational base and rational exp.
pub fn pow_rat(base: &Rat, exp: &Rat, bits: u32) -> RatInterval {
    assert!(base.is_positive());
    if exp.is_zero() {
        return RatInterval::point(Rat::one());
    }
    let negate = exp.is_negative();
    let e = exp.abs();
    let p = e.numer();
    let q: u32 = e
        .denom()
        .try_into()
        .expect("exponent denominator too large");
    // base^p exactly, then the q-th root enclosure.
    let mut b = Rat::one();
    let mut k = p.clone();
    let mut sq = base.clone();
    while k.is_positive() {
        if k.is_odd() {
            b *= &sq;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    let root = nth_root_rat(&b, q, bits);
    if negate {
        root.recip()
    } else {
        root
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

// ---------------------------------------------------------------------------
// Complex boxes.
// ---------------------------------------------------------------------------

/// Axis-aligned box in the complex plane with exact rational corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexBox {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn real(re: RatInterval) -> Self {
        ComplexBox {
            re,
            im: RatInterval::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexBox {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexBox {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    /// Enclosure of |z|^2 over the box.
    pub fn abs_sq(&self) -> RatInterval {
        self.re.square().add(&self.im.square())
    }

    /// Enclosure of |z - w|^2 for z in self, w in other.
    pub fn dist_sq(&self, other: &Self) -> RatInterval {
        self.re
            .sub(&other.re)
            .square()
            .add(&self.im.sub(&other.im).square())
    }

    pub fn dist(&self, other: &Self, bits: u32) -> RatInterval {
        self.dist_sq(other).sqrt(bits)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Interval evaluation of an integer polynomial over the box.
    pub fn eval_poly(&self, p: &IntPoly) -> ComplexBox {
        let mut acc = ComplexBox::real(RatInterval::zero());
        for c in p.coeffs().iter().rev() {
            let coef = ComplexBox::real(RatInterval::point(Rat::from(c.clone())));
            acc = acc.mul(self).add(&coef);
        }
        acc
    }
}
