//! Continued fractions over the function field: the regular expansion of a
//! Laurent series, the explicit K-type template with periodic entry rules,
//! and the approximation inequalities they witness.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ffield::series::{expand_fraction, kcf_cubic, newton_root, LaurentSeries};
use crate::ffield::tpoly::{Cubic, TPoly};
use crate::{Int, Rat};

/// A root of a cubic over Q[t] presented so callers can recompute the series
/// to any precision.
#[derive(Clone, Debug)]
pub struct AlgebraicSeries {
    pub poly: Cubic,
    pub initial: TPoly,
}

impl AlgebraicSeries {
    pub fn new(poly: Cubic, initial: TPoly) -> Self {
        AlgebraicSeries { poly, initial }
    }

    pub fn series(&self, terms: usize) -> Result<LaurentSeries> {
        newton_root(&self.poly, &self.initial, terms)
    }
}

/// Regular continued fraction prefix over Q[t].
#[derive(Clone, Debug)]
pub struct PolyCf {
    /// a_0, a_1, ..., a_n with deg a_i >= 1 for i >= 1
    pub quotients: Vec<TPoly>,
    /// convergents (p_k, q_k), gcd-reduced with monic q
    pub convergents: Vec<(TPoly, TPoly)>,
}

/// Expands the regular continued fraction of a truncated series. Fails with
/// a precision error when the known part cannot support another step.
pub fn poly_cf_expand(x: &LaurentSeries, n: usize) -> Result<PolyCf> {
    let mut quotients = Vec::with_capacity(n + 1);
    let mut convergents = Vec::with_capacity(n + 1);
    let mut prev: (TPoly, TPoly) = (TPoly::one(), TPoly::zero());
    let mut prev2: (TPoly, TPoly) = (TPoly::zero(), TPoly::one());
    let mut cur = x.clone();
    for k in 0..=n {
        let a = cur.poly_part()?;
        if k >= 1 && a.degree() < 1 {
            // the ultrametric guarantees deg >= 1 for true quotients; a
            // constant here means the known part ran out
            return Err(Error::PrecisionExhausted);
        }
        let p = a.mul(&prev.0).add(&prev2.0);
        let q = a.mul(&prev.1).add(&prev2.1);
        prev2 = std::mem::replace(&mut prev, (p.clone(), q.clone()));
        quotients.push(a.clone());
        convergents.push((p, q));
        if k < n {
            let frac = cur.sub(&LaurentSeries::from_tpoly(&a));
            if frac
                .leading()
                .map_or(true, |(d, _)| d >= 0)
            {
                return Err(Error::PrecisionExhausted);
            }
            cur = LaurentSeries::from_rat(&Rat::one()).div(&frac)?;
        }
    }
    Ok(PolyCf {
        quotients,
        convergents,
    })
}

/// Expands via the recompute hook, doubling the Newton precision until the
/// requested depth fits.
pub fn poly_cf_expand_algebraic(x: &AlgebraicSeries, n: usize) -> Result<PolyCf> {
    let mut terms = 16usize.max(4 * (n + 1));
    loop {
        match x.series(terms).and_then(|s| poly_cf_expand(&s, n)) {
            Ok(cf) => return Ok(cf),
            Err(Error::PrecisionExhausted) => {
                terms *= 2;
                if terms > 1 << 16 {
                    return Err(Error::PrecisionExhausted);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// The K-type continued fraction of the root of 3x^3 - 3rx^2 - 3cx + cr:
/// head r, then periodic blocks (k = 0, 1, ...) of partial
/// numerators/denominators
///   2(3k+1)c / 3(4k+1)r,   (6k+1)c / r,
///   2(3k+2)c^2 / 3(4k+3)r(r^2+2c),   (6k+5)c^2 / r.
/// The last entry of block k is the "(6k-1)" column read with the next
/// block's counter; solving the recurrence against the regular expansion
/// pins the values 5, 11, 17, ... at positions 4, 8, 12.
#[derive(Clone, Debug)]
pub struct KcfTemplate {
    pub c: Rat,
    pub r: TPoly,
}

impl KcfTemplate {
    pub fn new(c: Rat) -> Result<Self> {
        Self::with_variable(c, TPoly::t())
    }

    /// Template with t replaced by an arbitrary nonconstant r(t).
    pub fn with_variable(c: Rat, r: TPoly) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidParameter("c must be nonzero".into()));
        }
        if r.degree() < 1 {
            return Err(Error::InvalidParameter(
                "substituted variable must be nonconstant".into(),
            ));
        }
        Ok(KcfTemplate { c, r })
    }

    /// The cubic whose t-branch root has this expansion.
    pub fn minimal_poly(&self) -> Cubic {
        kcf_cubic(&self.c, &self.r)
    }

    pub fn root(&self) -> AlgebraicSeries {
        AlgebraicSeries::new(self.minimal_poly(), self.r.clone())
    }

    /// Partial pair (a_j, b_j) for j >= 1; j = 0 is the head b_0 = r.
    pub fn partial(&self, j: usize) -> (TPoly, TPoly) {
        assert!(j >= 1);
        let k = ((j - 1) / 4) as i64;
        let pos = (j - 1) % 4;
        let c = &self.c;
        let c2 = c * c;
        let r = &self.r;
        let int = |v: i64| Rat::from(Int::from(v));
        match pos {
            0 => (
                TPoly::constant(int(2) * int(3 * k + 1) * c),
                r.mul_rat(&int(3 * (4 * k + 1))),
            ),
            1 => (TPoly::constant(int(6 * k + 1) * c), r.clone()),
            2 => (
                TPoly::constant(int(2) * int(3 * k + 2) * &c2),
                r.mul(r)
                    .add(&TPoly::constant(int(2) * c))
                    .mul(r)
                    .mul_rat(&int(3 * (4 * k + 3))),
            ),
            _ => (TPoly::constant(int(6 * k + 5) * &c2), r.clone()),
        }
    }
}

/// Convergents P_0/Q_0 .. P_count/Q_count of the K-type template via the
/// three-term recurrence P_j = b_j P_{j-1} + a_j P_{j-2}, returned
/// gcd-reduced with monic denominators.
pub fn kcf_convergents(tmpl: &KcfTemplate, count: usize) -> Vec<(TPoly, TPoly)> {
    let mut out = Vec::with_capacity(count + 1);
    let mut p_prev2 = TPoly::one();
    let mut q_prev2 = TPoly::zero();
    let mut p_prev = tmpl.r.clone();
    let mut q_prev = TPoly::one();
    out.push(reduce_pair(&p_prev, &q_prev));
    for j in 1..=count {
        let (a, b) = tmpl.partial(j);
        let p = b.mul(&p_prev).add(&a.mul(&p_prev2));
        let q = b.mul(&q_prev).add(&a.mul(&q_prev2));
        out.push(reduce_pair(&p, &q));
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    out
}

fn reduce_pair(p: &TPoly, q: &TPoly) -> (TPoly, TPoly) {
    let g = p.gcd(q);
    let (mut pr, mut qr) = (p.clone(), q.clone());
    if !g.is_zero() && !g.is_constant() {
        pr = p.div_rem(&g).unwrap().0;
        qr = q.div_rem(&g).unwrap().0;
    }
    // monic denominator
    if !qr.is_zero() {
        let lead = qr.leading();
        qr = qr.mul_rat(&lead.recip());
        pr = pr.mul_rat(&lead.recip());
    }
    (pr, qr)
}

/// Exact norm exponent of alpha - p/q for a series alpha known deep enough.
pub fn distance_exponent(
    alpha: &LaurentSeries,
    p: &TPoly,
    q: &TPoly,
) -> Result<i64> {
    let floor = alpha.order().ok_or(Error::PrecisionExhausted)?;
    let frac = expand_fraction(p, q, floor)?;
    let diff = alpha.sub(&frac);
    match diff.norm_exponent()? {
        Some(d) => Ok(d),
        None => Err(Error::PrecisionExhausted),
    }
}

/// One row of the convergent-quality report.
#[derive(Clone, Debug)]
pub struct ApproxCheckRow {
    pub index: usize,
    /// index of the form 4i+2, where the displayed inequality is claimed
    pub canonical_index: bool,
    /// log2 |alpha - P_k/Q_k|
    pub dist_exp: i64,
    /// log2 |Q_k|
    pub q_exp: i64,
    /// log2 H(alpha)
    pub height_exp: i64,
    /// |alpha - P_k/Q_k| < |Q_k|^-2 (convergent certification)
    pub is_convergent_quality: bool,
    /// |alpha - P_k/Q_k| <= H(alpha)^-3 |Q_k|^-2
    pub pass: bool,
}

/// Checks |alpha - P_k/Q_k| <= H^-3 |Q_k|^-2 at the requested K-CF indices.
pub fn ff_approx_check(
    tmpl: &KcfTemplate,
    indices: &[usize],
    terms: usize,
) -> Result<Vec<ApproxCheckRow>> {
    let max_index = indices.iter().copied().max().unwrap_or(0);
    let convergents = kcf_convergents(tmpl, max_index);
    let poly = tmpl.minimal_poly().normalize();
    let height_exp = poly.height_exponent();
    let alpha = tmpl.root().series(terms)?;
    let mut rows = Vec::with_capacity(indices.len());
    for &k in indices {
        let (p, q) = &convergents[k];
        let dist_exp = distance_exponent(&alpha, p, q)?;
        let q_exp = q.norm_exponent().unwrap_or(0);
        rows.push(ApproxCheckRow {
            index: k,
            canonical_index: k >= 2 && (k - 2) % 4 == 0,
            dist_exp,
            q_exp,
            height_exp,
            is_convergent_quality: dist_exp < -2 * q_exp,
            pass: dist_exp <= -3 * height_exp - 2 * q_exp,
        });
    }
    Ok(rows)
}

/// Function-field Legendre certification: every reduced p/q with
/// |alpha - p/q| < |q|^-2 is a regular-CF convergent. Matches the K-CF
/// convergents against the regular expansion.
pub fn certify_kcf_against_regular(tmpl: &KcfTemplate, count: usize) -> Result<bool> {
    let kcf = kcf_convergents(tmpl, count);
    let regular = poly_cf_expand_algebraic(&tmpl.root(), count + 2)?;
    for (p, q) in &kcf {
        let mut found = false;
        for (rp, rq) in &regular.convergents {
            // equality as reduced fractions: p * rq == rp * q
            if p.mul(rq) == rp.mul(q) {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
