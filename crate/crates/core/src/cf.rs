//! Exact continued fractions of real algebraic numbers, the convergent-based
//! polynomial transform, recentering, and the derived pair parameters.
//!
//! The expansion loop never touches floating point: the integer part of the
//! current complete quotient comes from exact sign tests inside its isolating
//! interval, and the step xi -> 1/(xi - a) acts on the minimal polynomial as
//! a Taylor shift followed by coefficient reversal, re-normalized to a
//! primitive polynomial with positive leading coefficient.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::isolate::{isolate_real_roots, RootInterval};
use crate::poly::{is_irreducible_cubic, IntPoly};
use crate::roots::root_enclosures;
use crate::{Int, Rat};

/// A real algebraic number: an irreducible primitive minimal polynomial of
/// degree 2 or 3 together with an interval isolating one of its real roots.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: IntPoly,
    root: RootInterval,
}

impl AlgebraicReal {
    /// Selects the unique real root of `minpoly` inside [lo, hi].
    pub fn new(minpoly: &IntPoly, lo: &Rat, hi: &Rat) -> Result<Self> {
        let p = minpoly.primitive_normalized();
        match p.degree() {
            0 | 1 => return Err(Error::RationalValue),
            2 => {
                let disc = &p.coeff(1) * &p.coeff(1)
                    - Int::from(4) * &p.coeff(2) * &p.coeff(0);
                if !disc.is_positive() {
                    return Err(Error::NotIsolating {
                        lo: lo.to_string(),
                        hi: hi.to_string(),
                    });
                }
                let s = disc.sqrt();
                if &s * &s == disc {
                    return Err(Error::Reducible);
                }
            }
            3 => {
                if !is_irreducible_cubic(&p)? {
                    return Err(Error::Reducible);
                }
            }
            d => {
                return Err(Error::InvalidParameter(format!(
                    "degree {} minimal polynomials are not supported",
                    d
                )))
            }
        }
        let mut selected = Vec::new();
        for mut r in isolate_real_roots(&p)? {
            // roots are irrational, so membership of the rational bounds is
            // decidable by refinement
            loop {
                if r.lo() > hi || r.hi() < lo {
                    break;
                }
                if r.lo() >= lo && r.hi() <= hi {
                    selected.push(r);
                    break;
                }
                r.refine_once();
            }
        }
        if selected.len() != 1 {
            return Err(Error::NotIsolating {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(AlgebraicReal {
            minpoly: p,
            root: selected.pop().unwrap(),
        })
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn root_interval(&self) -> &RootInterval {
        &self.root
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// Height of the algebraic number: height of its minimal polynomial.
    pub fn height(&self) -> Int {
        self.minpoly.height()
    }
}

/// Finite prefix of a regular continued fraction with its convergents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    /// a_0, a_1, ..., a_n (a_i >= 1 for i >= 1)
    pub quotients: Vec<Int>,
    /// (p_k, q_k) in lowest terms, same length as `quotients`
    pub convergents: Vec<(Int, Int)>,
}

impl CfExpansion {
    pub fn depth(&self) -> usize {
        self.quotients.len().saturating_sub(1)
    }

    pub fn convergent(&self, k: usize) -> Rat {
        let (p, q) = &self.convergents[k];
        Rat::new(p.clone(), q.clone())
    }
}

/// Step-by-step expansion state shared by all consumers.
struct CfIterator {
    poly: IntPoly,
    interval: RootInterval,
    prev: (Int, Int),  // (p_{k-1}, q_{k-1})
    prev2: (Int, Int), // (p_{k-2}, q_{k-2})
}

impl CfIterator {
    fn new(x: &AlgebraicReal) -> Self {
        CfIterator {
            poly: x.minpoly.clone(),
            interval: x.root.clone(),
            prev: (Int::one(), Int::zero()),
            prev2: (Int::zero(), Int::one()),
        }
    }

    /// Produces (a_k, p_k, q_k) and advances the state.
    fn step(&mut self) -> (Int, Int, Int) {
        let a = self.interval.floor_root();
        let p = &a * &self.prev.0 + &self.prev2.0;
        let q = &a * &self.prev.1 + &self.prev2.1;
        self.prev2 = std::mem::replace(&mut self.prev, (p.clone(), q.clone()));

        // xi <- 1/(xi - a): clamp the interval into (a, a+1), then invert.
        let a_rat = Rat::from(a.clone());
        let a1_rat = &a_rat + Rat::one();
        let lo = self.interval.lo().clone().max(a_rat.clone());
        let hi = self.interval.hi().clone().min(a1_rat);
        let mut clamped =
            RootInterval::from_sign_change(self.poly.clone(), lo, hi).expect("clamped interval");
        while clamped.lo() == &a_rat {
            clamped.refine_once();
        }
        let next_poly = self.poly.shift(&a).reverse().primitive_normalized();
        let next_lo = (clamped.hi() - &a_rat).recip();
        let next_hi = (clamped.lo() - &a_rat).recip();
        self.interval = RootInterval::from_sign_change(next_poly.clone(), next_lo, next_hi)
            .expect("inverted interval");
        self.poly = next_poly;
        (a, p, q)
    }
}

/// First n+1 partial quotients and convergents of an algebraic real.
pub fn cf_expand(x: &AlgebraicReal, n: usize) -> CfExpansion {
    let mut it = CfIterator::new(x);
    let mut quotients = Vec::with_capacity(n + 1);
    let mut convergents = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let (a, p, q) = it.step();
        quotients.push(a);
        convergents.push((p, q));
    }
    CfExpansion {
        quotients,
        convergents,
    }
}

/// Legendre-style membership: does `target` appear among the convergents of
/// x up to the first denominator exceeding its own?
pub fn is_convergent(x: &AlgebraicReal, target: &Rat, depth: usize) -> Result<bool> {
    find_convergent_index(x, target, depth).map(|ix| ix.is_some())
}

/// Index n with p_n/q_n == target, expanding until q_n exceeds the target
/// denominator (at most `depth` steps).
pub fn find_convergent_index(
    x: &AlgebraicReal,
    target: &Rat,
    depth: usize,
) -> Result<Option<usize>> {
    if !target.denom().is_positive() {
        return Err(Error::InvalidParameter("denominator must be >= 1".into()));
    }
    let mut it = CfIterator::new(x);
    for k in 0..=depth {
        let (_, p, q) = it.step();
        if &p == target.numer() && &q == target.denom() {
            return Ok(Some(k));
        }
        if &q > target.denom() {
            return Ok(None);
        }
    }
    Err(Error::DepthExceeded(depth))
}

/// The polynomial with roots (q_{n+1} xi_i - p_{n+1}) / (q_n xi_i - p_n):
/// Q(y) = sum_i a_i (p_n y - p_{n+1})^i (q_n y - q_{n+1})^(3-i).
///
/// Its discriminant equals disc(P) exactly and its leading coefficient is
/// q_n^3 P(p_n/q_n).
pub fn convergent_transform(p: &IntPoly, cf: &CfExpansion, n: usize) -> Result<IntPoly> {
    if p.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: p.degree(),
        });
    }
    if n + 1 >= cf.convergents.len() {
        return Err(Error::DepthExceeded(n));
    }
    let (pn, qn) = cf.convergents[n].clone();
    let (pn1, qn1) = cf.convergents[n + 1].clone();
    let l1 = IntPoly::new(vec![-pn1, pn]);
    let l2 = IntPoly::new(vec![-qn1, qn]);
    let mut powers1 = vec![IntPoly::from_coeffs(&[1])];
    let mut powers2 = vec![IntPoly::from_coeffs(&[1])];
    for i in 1..=3 {
        powers1.push(powers1[i - 1].mul(&l1));
        powers2.push(powers2[i - 1].mul(&l2));
    }
    let mut q = IntPoly::zero();
    for i in 0..=3 {
        let term = powers1[i].mul(&powers2[3 - i]);
        let coeff = IntPoly::new(vec![p.coeff(i)]);
        q = q.add(&coeff.mul(&term));
    }
    Ok(q)
}

/// Rounds to the nearest integer; a tie at x = z + 1/2 picks the candidate
/// with the smaller absolute value (then the negative one, which can never
/// actually be reached for integer candidates).
pub fn round_rat(x: &Rat) -> Int {
    let f = x.floor().to_integer();
    let frac = x - Rat::from(f.clone());
    let half = Rat::new(Int::one(), Int::from(2));
    if frac < half {
        f
    } else if frac > half {
        f + 1
    } else {
        let up: Int = &f + 1;
        if f.abs() <= up.abs() {
            f
        } else {
            up
        }
    }
}

/// Nearest integer to every point of the interval, when that is determined.
/// Point intervals fall back to the exact tie rule.
fn round_interval(iv: &RatInterval) -> Option<Int> {
    if iv.is_point() {
        return Some(round_rat(&iv.lo));
    }
    let k = round_rat(&iv.mid());
    let half = Rat::new(Int::one(), Int::from(2));
    let krat = Rat::from(k.clone());
    if iv.lo > &krat - &half && iv.hi < &krat + &half {
        Some(k)
    } else {
        None
    }
}

/// Recenter a cubic: R(x) = Q(x + k) with k the nearest integer to the real
/// part of the designated root sigma_2, the root of least modulus (ties by
/// largest real part; a complex-conjugate tie is immaterial since both share
/// the real part). Leading coefficient and discriminant are unchanged.
pub fn recenter(q: &IntPoly, precision_bits: u32) -> Result<(IntPoly, Int)> {
    let disc = q.discriminant_cubic()?;
    if disc.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let k = recenter_shift(q, &disc, precision_bits)?;
    let r = q.shift(&k);
    debug_assert_eq!(r.discriminant_cubic().unwrap(), disc);
    debug_assert_eq!(r.leading(), q.leading());
    Ok((r, k))
}

/// Exact value or refinable enclosure of a real quantity derived from roots.
#[derive(Clone, Debug)]
enum ReVal {
    Exact(Rat),
    Approx(RatInterval),
}

impl ReVal {
    fn interval(&self) -> RatInterval {
        match self {
            ReVal::Exact(v) => RatInterval::point(v.clone()),
            ReVal::Approx(iv) => iv.clone(),
        }
    }

    /// Certified strict comparison; None when undecided at this precision.
    fn lt(&self, other: &ReVal) -> Option<bool> {
        match (self, other) {
            (ReVal::Exact(a), ReVal::Exact(b)) => Some(a < b),
            _ => self.interval().lt(&other.interval()),
        }
    }

    fn round(&self) -> Option<Int> {
        match self {
            ReVal::Exact(v) => Some(round_rat(v)),
            ReVal::Approx(iv) => round_interval(iv),
        }
    }
}

fn recenter_shift(q: &IntPoly, disc: &Int, precision_bits: u32) -> Result<Int> {
    let a = Rat::from(q.coeff(3));
    let b = Rat::from(q.coeff(2));
    let c = Rat::from(q.coeff(1));
    let d = Rat::from(q.coeff(0));
    let two = Rat::from(Int::from(2));
    let rational = crate::poly::rational_roots(q);

    if disc.is_negative() {
        // One real root xi; the conjugate pair has re = (-b/a - xi)/2 and
        // |pair|^2 = -d/(a xi) (or c/a when xi = 0). A real/pair modulus tie
        // forces xi rational or a pure cubic, so the irrational branch below
        // always separates.
        if let Some(xi) = rational.first() {
            let pair_sq = if xi.is_zero() {
                &c / &a
            } else {
                -&d / (&a * xi)
            };
            let xi_sq = xi * xi;
            let eta = (-&b / &a - xi) / &two;
            let re = match xi_sq.cmp(&pair_sq) {
                std::cmp::Ordering::Less => xi.clone(),
                std::cmp::Ordering::Greater => eta,
                // modulus tie: the larger real part wins
                std::cmp::Ordering::Equal => eta.max(xi.clone()),
            };
            return Ok(round_rat(&re));
        }
        let pure = q.coeff(2).is_zero() && q.coeff(1).is_zero();
        let real_positive = (-&d / &a).is_positive();
        return escalate(precision_bits, |bits| {
            let boxes = root_enclosures(q, bits)?;
            let real = boxes.iter().find(|bx| bx.is_real()).unwrap();
            let upper = boxes
                .iter()
                .find(|bx| bx.im.lo.is_positive() || bx.im.hi.is_positive())
                .unwrap();
            let re = if pure {
                // all three moduli tie; the real root wins on real part
                // exactly when it is positive
                if real_positive {
                    real.re.clone()
                } else {
                    upper.re.clone()
                }
            } else {
                match real.abs_sq().lt(&upper.abs_sq()) {
                    Some(true) => real.re.clone(),
                    Some(false) => upper.re.clone(),
                    None => return Ok(None),
                }
            };
            Ok(round_interval(&re))
        });
    }

    // disc > 0: three distinct real roots. Equal moduli of distinct reals
    // means a +-m pair, i.e. (x^2 - m^2) divides q: b c == a d with -c/a > 0.
    let sym = &b * &c == &a * &d && (-&c / &a).is_positive();
    if sym && rational.len() < 3 {
        // +-m irrational, third root t = -b/a rational
        let m_sq = -&c / &a;
        let t = -&b / &a;
        if &t * &t < m_sq {
            return Ok(round_rat(&t));
        }
        // sigma_2 = +m, the larger real part of the tied pair
        return escalate(precision_bits, |bits| {
            Ok(round_interval(&crate::interval::sqrt_rat(&m_sq, bits)))
        });
    }

    // Mix of exact rational roots and refinable irrational ones; all moduli
    // distinct except possibly a fully rational +-m pair, which the ordering
    // below resolves exactly via the (modulus, -re) key.
    escalate(precision_bits, |bits| {
        let target = Rat::new(Int::one(), Int::one() << bits as usize);
        let mut vals: Vec<ReVal> = Vec::new();
        for mut r in isolate_real_roots(q)? {
            r.refine_to_width(&target);
            let exact = rational.iter().find(|v| r.contains(v) && q.sign_at(v) == 0);
            match exact {
                Some(v) => vals.push(ReVal::Exact(v.clone())),
                None => {
                    if r.is_exact() {
                        vals.push(ReVal::Exact(r.lo().clone()));
                    } else {
                        vals.push(ReVal::Approx(RatInterval::new(
                            r.lo().clone(),
                            r.hi().clone(),
                        )));
                    }
                }
            }
        }
        let sqs: Vec<ReVal> = vals
            .iter()
            .map(|v| match v {
                ReVal::Exact(x) => ReVal::Exact(x * x),
                ReVal::Approx(iv) => ReVal::Approx(iv.square()),
            })
            .collect();
        let mut min_ix = 0usize;
        for i in 1..vals.len() {
            match sqs[i].lt(&sqs[min_ix]) {
                Some(true) => min_ix = i,
                Some(false) => {}
                None => {
                    // exact tie between +-m: larger real part wins
                    if let (ReVal::Exact(x), ReVal::Exact(y)) = (&sqs[i], &sqs[min_ix]) {
                        if x == y {
                            if let (ReVal::Exact(vi), ReVal::Exact(vm)) =
                                (&vals[i], &vals[min_ix])
                            {
                                if vi > vm {
                                    min_ix = i;
                                }
                                continue;
                            }
                        }
                    }
                    return Ok(None);
                }
            }
        }
        Ok(vals[min_ix].round())
    })
}

/// Escalates precision until the attempt commits to a shift.
fn escalate<F>(start_bits: u32, attempt: F) -> Result<Int>
where
    F: Fn(u32) -> Result<Option<Int>>,
{
    let mut bits = start_bits.max(8);
    loop {
        if let Some(k) = attempt(bits)? {
            return Ok(k);
        }
        bits *= 2;
        if bits > 1 << 20 {
            return Err(Error::PrecisionExhausted);
        }
    }
}

/// Exact parameters attached to a convergent p/q of a cubic irrational:
/// the enclosure of A with A q^2 |xi - p/q| = 1, the leading coefficient
/// B = |q^3 P(p/q)| of the convergent transform, and the flags for the
/// inequality |b3| <= 7 q H^2 / A, the window (A-1) q_n <= q_{n+1} <= A q_n
/// and |disc(P)| <= 54 H^4.
#[derive(Clone, Debug)]
pub struct PairParameters {
    pub a_enclosure: RatInterval,
    pub b: Int,
    pub tau: Option<Rat>,
    pub index: usize,
    pub eq2_holds: bool,
    pub window_holds: bool,
    pub disc_bound_holds: bool,
}

pub fn pair_parameters(
    x: &AlgebraicReal,
    target: &Rat,
    target_uv: Option<(Rat, Rat)>,
    depth: usize,
) -> Result<PairParameters> {
    if x.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: x.degree(),
        });
    }
    let n = find_convergent_index(x, target, depth)?.ok_or_else(|| {
        Error::NotAConvergent(target.numer().to_string(), target.denom().to_string())
    })?;
    let cf = cf_expand(x, n + 1);
    let transform = convergent_transform(&x.minpoly, &cf, n)?;
    let b = transform.leading().abs();
    let q = target.denom().clone();
    let qn1 = cf.convergents[n + 1].1.clone();
    let h = x.minpoly.height();
    let disc = x.minpoly.discriminant_cubic()?;
    let disc_bound_holds = disc.abs() <= Int::from(54) * h.pow(4);

    // RHS of eq2 as an exact rational: 7 q H^2 / |b3| compared against A.
    let eq2_rhs = Rat::new(Int::from(7) * &q * &h * &h, b.clone());
    let win_hi = Rat::new(qn1.clone(), q.clone()); // A >= q_{n+1}/q_n
    let win_lo = Rat::new(&qn1 + &q, q.clone()); // A <= q_{n+1}/q_n + 1

    let mut root = x.root.clone();
    let mut bits = 32u32;
    loop {
        root.refine_to_width(&Rat::new(Int::one(), Int::one() << bits as usize));
        if root.contains(target) {
            root.exclude_point(target);
        }
        let xi = RatInterval::new(root.lo().clone(), root.hi().clone());
        let diff = xi.add_rat(&-target.clone()).abs();
        if diff.lo.is_positive() {
            let qsq = Rat::from(&q * &q);
            let a_enc = diff.mul_rat(&qsq).recip();
            let eq2 = a_enc.lt_rat(&eq2_rhs); // A < rhs certifies eq2 (strict
                                              // is fine: A is irrational)
            let above = a_enc.lt_rat(&win_hi); // false <=> A >= q_{n+1}/q_n
            let below = a_enc.lt_rat(&win_lo); // true <=> A <= q_{n+1}/q_n + 1
            if let (Some(eq2), Some(above), Some(below)) = (eq2, above, below) {
                return Ok(PairParameters {
                    a_enclosure: a_enc,
                    b,
                    tau: target_uv.map(|(_, v)| v - Rat::from(Int::from(2))),
                    index: n,
                    eq2_holds: eq2,
                    window_holds: !above && below,
                    disc_bound_holds,
                });
            }
        }
        bits *= 2;
        if bits > 1 << 22 {
            return Err(Error::PrecisionExhausted);
        }
    }
}
