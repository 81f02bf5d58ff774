//! Exact real-root isolation by Descartes sign-variation bisection.
//!
//! Roots are bracketed inside the Cauchy bound M = 1 + ceil(H/|lead|) and the
//! unit interval is subdivided while the sign-variation count of the Moebius
//! transform exceeds one. All endpoints are exact rationals (dyadic multiples
//! of M), so intervals can be refined to any width by sign bisection without
//! ever leaving exact arithmetic.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::{Int, Rat};

/// An interval [lo, hi] containing exactly one real root of `poly`.
///
/// Either the endpoint signs differ, or lo == hi and the root is exact.
/// `sign_lo` caches the sign of the polynomial on the root's side of lo
/// (the value at lo itself when nonzero).
#[derive(Clone, Debug)]
pub struct RootInterval {
    poly: IntPoly,
    lo: Rat,
    hi: Rat,
    sign_lo: i8,
}

impl RootInterval {
    /// Exact rational root.
    pub fn exact(poly: IntPoly, at: Rat) -> Self {
        debug_assert_eq!(poly.sign_at(&at), 0);
        RootInterval {
            poly,
            lo: at.clone(),
            hi: at,
            sign_lo: 0,
        }
    }

    /// Builds an interval from a strict sign change. The caller asserts that
    /// exactly one root lies inside.
    pub fn from_sign_change(poly: IntPoly, lo: Rat, hi: Rat) -> Result<Self> {
        let sl = poly.sign_at(&lo);
        let sh = poly.sign_at(&hi);
        if lo > hi || sl == 0 || sh == 0 || sl == sh {
            return Err(Error::NotIsolating {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(RootInterval {
            poly,
            lo,
            hi,
            sign_lo: sl,
        })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from(Int::from(2))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn sign_lo(&self) -> i8 {
        self.sign_lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// One bisection step; lands exactly on the root when the midpoint hits it.
    pub fn refine_once(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = self.mid();
        match self.poly.sign_at(&m) {
            0 => {
                self.lo = m.clone();
                self.hi = m;
                self.sign_lo = 0;
            }
            s if s == self.sign_lo => self.lo = m,
            _ => self.hi = m,
        }
    }

    pub fn refine_to_width(&mut self, w: &Rat) {
        while !self.is_exact() && &self.width() > w {
            self.refine_once();
        }
    }

    /// Refines until the rational point v lies strictly outside. The point
    /// must not be the root itself.
    pub fn exclude_point(&mut self, v: &Rat) {
        if self.is_exact() {
            assert!(&self.lo != v, "cannot exclude the root itself");
            return;
        }
        assert!(self.poly.sign_at(v) != 0 || !self.contains(v));
        while self.contains(v) {
            self.refine_once();
        }
    }

    /// Floor of the enclosed root, via exact sign tests at the integers
    /// strictly inside the interval.
    pub fn floor_root(&self) -> Int {
        if self.is_exact() {
            return self.lo.floor().to_integer();
        }
        let flo = self.lo.floor().to_integer();
        // Candidate integers m with lo < m < hi satisfy m < root iff the sign
        // at m matches sign_lo; the floor is the largest such m, or floor(lo)
        // when none lies below the root.
        let a = &flo + 1;
        let b = self.hi.ceil().to_integer() - 1; // largest integer < hi
        if a > b || self.sign_at_int(&a) != self.sign_lo {
            return flo;
        }
        let mut low = a;
        let mut high = b;
        while low < high {
            // midpoint rounded up so the lower bound always advances
            let mid = (&low + &high + 1) >> 1;
            let s = self.sign_at_int(&mid);
            if s == 0 {
                return mid;
            }
            if s == self.sign_lo {
                low = mid;
            } else {
                high = mid - 1;
            }
        }
        low
    }

    fn sign_at_int(&self, m: &Int) -> i8 {
        match self.poly.eval_int(m).sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// Cauchy-style root bound: every real root lies in (-M, M) for
/// M = 1 + ceil(H / |lead|).
pub fn root_bound(p: &IntPoly) -> Int {
    let h = p.height();
    let b = p.leading().abs();
    Int::one() + h.div_ceil(&b)
}

/// Isolates all real roots of a squarefree polynomial into pairwise disjoint
/// intervals, sorted in increasing order.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::InvalidParameter(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let work = p.primitive_normalized();
    if work.degree() == 0 {
        return Ok(Vec::new());
    }
    let orig = work.clone();
    let mut out: Vec<RootInterval> = Vec::new();
    let mut core = work;
    if core.coeff(0).is_zero() {
        // squarefree, so x divides exactly once
        core = core.div_x();
        out.push(RootInterval::exact(orig.clone(), Rat::zero()));
    }
    let m = root_bound(&core);
    let mrat = Rat::from(m.clone());
    // positive roots of core live in (0, M)
    for (lo, hi, exact) in isolate_unit(&core.scale_arg(&m)) {
        if exact {
            out.push(RootInterval::exact(orig.clone(), lo * &mrat));
        } else {
            out.push(anchor(&orig, lo * &mrat, hi * &mrat));
        }
    }
    // negative roots: reflect, isolate positives, map (a, b) -> (-b, -a)
    for (lo, hi, exact) in isolate_unit(&core.reflect().scale_arg(&m)) {
        if exact {
            out.push(RootInterval::exact(orig.clone(), -(lo * &mrat)));
        } else {
            out.push(anchor(&orig, -(hi * &mrat), -(lo * &mrat)));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Descartes bound for the open interval (0, 1): sign variations of
/// (1+x)^n q(1/(1+x)).
fn descartes_01(q: &IntPoly) -> usize {
    let t = q.reverse().shift(&Int::one());
    let mut vars = 0;
    let mut last: i8 = 0;
    for c in t.coeffs() {
        let s = match c.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// Isolating subintervals of (0,1) for the roots of q, as dyadic fractions
/// (lo, hi, exact). `exact` marks a point root at lo == hi.
fn isolate_unit(q: &IntPoly) -> Vec<(Rat, Rat, bool)> {
    let mut out = Vec::new();
    let mut stack: Vec<(IntPoly, Int, u32)> = vec![(q.primitive(), Int::zero(), 0)];
    while let Some((node, c, k)) = stack.pop() {
        match descartes_01(&node) {
            0 => {}
            1 => {
                let den = Int::one() << k as usize;
                out.push((
                    Rat::new(c.clone(), den.clone()),
                    Rat::new(&c + 1, den),
                    false,
                ));
            }
            _ => {
                let left = node.half_arg().primitive();
                let right = left.shift(&Int::one());
                if right.coeff(0).is_zero() {
                    let den = Int::one() << (k + 1) as usize;
                    let mid = Rat::new(&c * 2 + 1, den);
                    out.push((mid.clone(), mid, true));
                }
                stack.push((left, &c * 2, k + 1));
                stack.push((right, &c * 2 + 1, k + 1));
            }
        }
    }
    out
}

/// Builds a RootInterval over the original polynomial, repairing endpoints
/// that happen to be roots themselves (they can only be neighbouring exact
/// roots, never the enclosed one).
fn anchor(orig: &IntPoly, mut lo: Rat, mut hi: Rat) -> RootInterval {
    let mut s_lo = orig.sign_at(&lo);
    let mut s_hi = orig.sign_at(&hi);
    let two = Rat::from(Int::from(2));
    while s_lo == 0 || s_hi == 0 {
        // Effective interior signs: just above a simple root at lo the sign
        // is sign(P'(lo)); just below one at hi it is -sign(P'(hi)).
        let eff_lo = if s_lo == 0 {
            orig.derivative().sign_at(&lo)
        } else {
            s_lo
        };
        let m = (&lo + &hi) / &two;
        let sm = orig.sign_at(&m);
        if sm == 0 {
            return RootInterval::exact(orig.clone(), m);
        }
        if sm == eff_lo {
            lo = m;
            s_lo = sm;
        } else {
            hi = m;
            s_hi = sm;
        }
    }
    debug_assert!(s_lo != s_hi);
    RootInterval {
        poly: orig.clone(),
        lo,
        hi,
        sign_lo: s_lo,
    }
}
