//! Truncated formal Laurent series in 1/t over the exact rationals, with
//! rigorous error-order tracking, and Newton iteration for series roots of
//! cubics over Q[t].
//!
//! A series value is (known part) + O(t^order): the map holds exactly the
//! nonzero known coefficients, all at degrees strictly above `order`, and
//! `order = None` marks an exact Laurent polynomial. Every operation
//! propagates the error order soundly, so a nonempty leading term always
//! certifies the ultrametric norm.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ffield::tpoly::{exp2, Cubic, TPoly};
use crate::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    /// degree -> nonzero coefficient, every key > order (when bounded)
    terms: BTreeMap<i64, Rat>,
    /// first unknown degree; None = exact
    order: Option<i64>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries {
            terms: BTreeMap::new(),
            order: None,
        }
    }

    pub fn from_tpoly(p: &TPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(i as i64, c.clone());
            }
        }
        LaurentSeries { terms, order: None }
    }

    /// Exact polynomial reinterpreted as known only above `order`.
    pub fn from_tpoly_truncated(p: &TPoly, order: i64) -> Self {
        let mut s = Self::from_tpoly(p);
        s.truncate(order);
        s
    }

    pub fn from_rat(c: &Rat) -> Self {
        Self::from_tpoly(&TPoly::constant(c.clone()))
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_known_zero(&self) -> bool {
        self.terms.is_empty() && self.order.is_none()
    }

    /// Drops knowledge at or below the given degree.
    pub fn truncate(&mut self, order: i64) {
        let keep: BTreeMap<i64, Rat> = self
            .terms
            .iter()
            .filter(|(d, _)| **d > order)
            .map(|(d, c)| (*d, c.clone()))
            .collect();
        self.terms = keep;
        self.order = Some(match self.order {
            None => order,
            Some(o) => o.max(order),
        });
    }

    /// Leading (degree, coefficient) of the known part.
    pub fn leading(&self) -> Option<(i64, Rat)> {
        self.terms
            .iter()
            .next_back()
            .map(|(d, c)| (*d, c.clone()))
    }

    pub fn coeff(&self, degree: i64) -> Rat {
        self.terms.get(&degree).cloned().unwrap_or_else(Rat::zero)
    }

    /// Exponent d with |x| = 2^d. Errors when the known part is empty but
    /// the value is not exactly zero; Ok(None) encodes the zero series.
    pub fn norm_exponent(&self) -> Result<Option<i64>> {
        match self.leading() {
            Some((d, _)) => Ok(Some(d)),
            None => {
                if self.order.is_none() {
                    Ok(None)
                } else {
                    Err(Error::PrecisionExhausted)
                }
            }
        }
    }

    /// |x| as an exact rational (0 for the zero series).
    pub fn norm(&self) -> Result<Rat> {
        Ok(match self.norm_exponent()? {
            None => Rat::zero(),
            Some(d) => exp2(d),
        })
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = max_order(self.order, other.order);
        let mut terms = self.terms.clone();
        for (d, c) in &other.terms {
            let entry = terms.entry(*d).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(d);
            }
        }
        let mut s = LaurentSeries { terms, order };
        if let Some(o) = order {
            s.truncate(o);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // error contributions: X * O(t^o2), Y * O(t^o1), O(t^(o1+o2))
        let d1 = self.leading().map(|(d, _)| d);
        let d2 = other.leading().map(|(d, _)| d);
        let mut order: Option<i64> = None;
        if let (Some(o2), Some(dx)) = (other.order, d1) {
            order = max_order(order, Some(dx + o2));
        }
        if let (Some(o1), Some(dy)) = (self.order, d2) {
            order = max_order(order, Some(dy + o1));
        }
        if let (Some(o1), Some(o2)) = (self.order, other.order) {
            order = max_order(order, Some(o1 + o2));
        }
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let d = da + db;
                if let Some(o) = order {
                    if d <= o {
                        continue;
                    }
                }
                let entry = terms.entry(d).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentSeries { terms, order }
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentSeries {
                terms: BTreeMap::new(),
                order: self.order,
            };
        }
        LaurentSeries {
            terms: self.terms.iter().map(|(d, a)| (*d, a * c)).collect(),
            order: self.order,
        }
    }

    /// Term-wise d/dt; the error order drops by one.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(d, _)| **d != 0)
            .map(|(d, c)| (d - 1, c * Rat::from(Int::from(*d))))
            .collect();
        LaurentSeries {
            terms,
            order: self.order.map(|o| o - 1),
        }
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
            order: self.order.map(|o| o + k),
        }
    }

    /// Division with sound error propagation. The divisor needs a known
    /// leading term; `floor` optionally forces extra known terms when both
    /// operands are exact (where the quotient is an infinite expansion).
    pub fn div_with_floor(&self, other: &Self, floor: Option<i64>) -> Result<Self> {
        let (db, lb) = other.leading().ok_or(Error::PrecisionExhausted)?;
        let da = self.leading().map(|(d, _)| d);
        // error contributions: O(a)/b and a * O(b) / b^2
        let mut order: Option<i64> = None;
        if let Some(oa) = self.order {
            order = max_order(order, Some(oa - db));
        }
        if let (Some(ob), Some(da)) = (other.order, da) {
            order = max_order(order, Some(da + ob - 2 * db));
        }
        order = max_order(order, floor);
        let cutoff = match order {
            Some(o) => o,
            None => {
                // exact inputs and no floor: only terminating divisions
                i64::MIN / 2
            }
        };
        let mut rem = self.clone();
        let mut quot: BTreeMap<i64, Rat> = BTreeMap::new();
        loop {
            let Some((dr, cr)) = rem.leading() else { break };
            let qd = dr - db;
            if qd <= cutoff {
                break;
            }
            let qc = cr / &lb;
            quot.insert(qd, qc.clone());
            let term = LaurentSeries {
                terms: BTreeMap::from([(qd, qc)]),
                order: None,
            };
            rem = rem.sub(&term.mul(other));
            debug_assert!(rem.leading().map_or(true, |(d, _)| d < dr));
        }
        if order.is_none() && !rem.terms.is_empty() {
            return Err(Error::PrecisionExhausted);
        }
        let mut out = LaurentSeries { terms: quot, order };
        if let Some(o) = order {
            out.truncate(o);
        }
        Ok(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.div_with_floor(other, None)
    }

    /// The polynomial part: all terms of degree >= 0, which must be fully
    /// known.
    pub fn poly_part(&self) -> Result<TPoly> {
        if let Some(o) = self.order {
            if o >= 0 {
                return Err(Error::PrecisionExhausted);
            }
        }
        let deg = match self.leading() {
            Some((d, _)) if d >= 0 => d,
            _ => return Ok(TPoly::zero()),
        };
        let mut coeffs = vec![Rat::zero(); deg as usize + 1];
        for (d, c) in &self.terms {
            if *d >= 0 {
                coeffs[*d as usize] = c.clone();
            }
        }
        Ok(TPoly::new(coeffs))
    }

    /// Evaluation of a cubic at this series.
    pub fn eval_cubic(&self, p: &Cubic) -> Self {
        let mut acc = LaurentSeries::zero();
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::from_tpoly(c));
        }
        acc
    }

    /// Rendered as "d: c_d, c_{d-1}, ..." down to the error order.
    pub fn display_coeffs(&self, max_terms: usize) -> String {
        match self.leading() {
            None => "0".to_string(),
            Some((top, _)) => {
                let bottom = self.order.map(|o| o + 1).unwrap_or(top - max_terms as i64 + 1);
                let mut parts = Vec::new();
                let mut d = top;
                while d >= bottom && parts.len() < max_terms {
                    parts.push(format!("{}", self.coeff(d)));
                    d -= 1;
                }
                format!("{}: {}", top, parts.join(", "))
            }
        }
    }
}

fn max_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

/// Expansion of the rational function num/den as a Laurent series known
/// strictly above `floor`.
pub fn expand_fraction(num: &TPoly, den: &TPoly, floor: i64) -> Result<LaurentSeries> {
    LaurentSeries::from_tpoly(num).div_with_floor(&LaurentSeries::from_tpoly(den), Some(floor))
}

/// Newton iteration for an unramified series root of a cubic.
///
/// `initial` is the exact leading behaviour of the branch (for the cubics
/// used here, the polynomial part of the root). Convergence is certified
/// up front by the ultrametric Newton conditions on exact norms, and the
/// result is certified a posteriori: the returned series agrees with the
/// true root strictly above degree lead - terms.
pub fn newton_root(p: &Cubic, initial: &TPoly, terms: usize) -> Result<LaurentSeries> {
    if initial.is_zero() {
        return Err(Error::UnsupportedBranch("zero initial branch".into()));
    }
    if terms == 0 {
        return Err(Error::InvalidParameter("terms must be >= 1".into()));
    }
    let lead = initial.degree() as i64;

    // exact evaluations at the polynomial initial guess
    let f0 = eval_cubic_tpoly(p, initial);
    let d0 = eval_quadratic_tpoly(&p.dx(), initial);
    let dnorm = d0
        .norm_exponent()
        .ok_or_else(|| Error::UnsupportedBranch("derivative vanishes at branch".into()))?;
    let fnorm = match f0.norm_exponent() {
        None => {
            // already an exact root
            return Ok(LaurentSeries::from_tpoly_truncated(
                initial,
                lead - terms as i64,
            ));
        }
        Some(e) => e,
    };
    // h = f/f'; second and third slope bounds on the ball |z - a| <= |h|
    let h_exp = fnorm - dnorm;
    let half_f2 = eval_linear_tpoly(
        &[p.coeffs[2].clone(), p.coeffs[3].mul_rat(&Rat::from(Int::from(3)))],
        initial,
    );
    let half_f2_norm = half_f2.norm_exponent().unwrap_or(i64::MIN / 4);
    let s3 = p.coeffs[3].norm_exponent().unwrap_or(0);
    let s2 = half_f2_norm.max(s3 + h_exp);
    // contraction: S2 |h|^2 < F and S3 |h|^3 < F, i.e. quadratic progress
    let contraction = s2 + 2 * h_exp < fnorm && s3 + 3 * h_exp < fnorm;
    // derivative stability on the ball: |f''(a) h| < |f'(a)| and
    // |3 a3 h^2| < |f'(a)| (rational constants have norm 1)
    let stable = half_f2_norm + h_exp < dnorm && s3 + 2 * h_exp < dnorm;
    if !contraction || !stable {
        return Err(Error::UnsupportedBranch(
            "Newton contraction fails for this leading term (ramified branch?)".into(),
        ));
    }

    let window = lead - terms as i64 - 4;
    let mut a = LaurentSeries::from_tpoly_truncated(initial, window);
    let dxp = p.dx();
    let max_iters = (usize::BITS - terms.leading_zeros()) as usize + 8;
    for _ in 0..max_iters {
        let f = a.eval_cubic(p);
        if f.terms.is_empty() {
            break;
        }
        let fp = eval_quadratic_series(&dxp, &a);
        let correction = f.div(&fp)?;
        if correction.terms.is_empty() {
            break;
        }
        a = a.sub(&correction);
    }
    // a-posteriori certificate: |f(a)| <= |f'(a)| * 2^(lead - terms)
    let f = a.eval_cubic(p);
    let f_ub = match f.leading() {
        Some((d, _)) => d,
        None => f.order.unwrap_or(i64::MIN / 2),
    };
    let fp = eval_quadratic_series(&dxp, &a);
    let fp_norm = fp.norm_exponent()?.ok_or(Error::PrecisionExhausted)?;
    if f_ub > fp_norm + (lead - terms as i64) {
        return Err(Error::PrecisionExhausted);
    }
    a.truncate(lead - terms as i64);
    Ok(a)
}

fn eval_cubic_tpoly(p: &Cubic, x: &TPoly) -> TPoly {
    let mut acc = TPoly::zero();
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn eval_quadratic_tpoly(coeffs: &[TPoly; 3], x: &TPoly) -> TPoly {
    coeffs[2]
        .mul(x)
        .add(&coeffs[1])
        .mul(x)
        .add(&coeffs[0])
}

fn eval_linear_tpoly(coeffs: &[TPoly; 2], x: &TPoly) -> TPoly {
    coeffs[1].mul(x).add(&coeffs[0])
}

fn eval_quadratic_series(coeffs: &[TPoly; 3], x: &LaurentSeries) -> LaurentSeries {
    let c2 = LaurentSeries::from_tpoly(&coeffs[2]);
    let c1 = LaurentSeries::from_tpoly(&coeffs[1]);
    let c0 = LaurentSeries::from_tpoly(&coeffs[0]);
    c2.mul(x).add(&c1).mul(x).add(&c0)
}

/// The (no5)-style cubic 3x^3 - 3rx^2 - 3cx + cr for parameter c and
/// substituted variable r(t).
pub fn kcf_cubic(c: &Rat, r: &TPoly) -> Cubic {
    Cubic::new(
        r.mul_rat(c),
        TPoly::constant(Rat::from(Int::from(-3)) * c),
        r.mul_rat(&Rat::from(Int::from(-3))),
        TPoly::from_int_coeffs(&[3]),
    )
    .expect("leading coefficient 3")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn series_norms() {
        // t^2 + 1 + 1/t
        let mut s = LaurentSeries::from_tpoly(&TPoly::from_int_coeffs(&[1, 0, 1]));
        s = s.add(&LaurentSeries::from_tpoly(&TPoly::one()).shift(-1));
        assert_eq!(s.norm().unwrap(), rat(4, 1));
        let tinv = LaurentSeries::from_rat(&rat(1, 1)).shift(-1);
        assert_eq!(tinv.norm().unwrap(), rat(1, 2));
        assert_eq!(LaurentSeries::zero().norm().unwrap(), rat(0, 1));
    }

    #[test]
    fn ultrametric_inequality() {
        let a = LaurentSeries::from_tpoly(&TPoly::from_int_coeffs(&[0, 2, 1]));
        let b = LaurentSeries::from_tpoly(&TPoly::from_int_coeffs(&[5, -2, -1]));
        let sum = a.add(&b);
        let na = a.norm().unwrap();
        let nb = b.norm().unwrap();
        assert!(sum.norm().unwrap() <= na.clone().max(nb.clone()));
        // equality when the norms differ
        let c = LaurentSeries::from_tpoly(&TPoly::from_int_coeffs(&[1]));
        assert_eq!(a.add(&c).norm().unwrap(), na);
    }

    #[test]
    fn fraction_expansion() {
        // 1/(t - 1) = t^-1 + t^-2 + ...
        let s = expand_fraction(&TPoly::one(), &TPoly::from_int_coeffs(&[-1, 1]), -5).unwrap();
        for d in [-1i64, -2, -3, -4] {
            assert_eq!(s.coeff(d), rat(1, 1), "degree {}", d);
        }
        assert_eq!(s.order(), Some(-5));
    }

    #[test]
    fn division_error_tracking() {
        let exact = expand_fraction(&TPoly::one(), &TPoly::from_int_coeffs(&[-1, 1]), -30).unwrap();
        // multiplying back recovers 1 up to the tracked error
        let back = exact.mul(&LaurentSeries::from_tpoly(&TPoly::from_int_coeffs(&[-1, 1])));
        let diff = back.sub(&LaurentSeries::from_rat(&rat(1, 1)));
        assert!(diff.terms.is_empty());
        assert!(diff.order().unwrap() >= -30);
    }

    #[test]
    fn newton_kcf_branch() {
        // 3x^3 - 3tx^2 - 3cx + ct with c = 1: root t + (2/3) t^-1 + ...
        let p = kcf_cubic(&rat(1, 1), &TPoly::t());
        let root = newton_root(&p, &TPoly::t(), 3).unwrap();
        assert_eq!(root.coeff(1), rat(1, 1));
        assert_eq!(root.coeff(0), rat(0, 1));
        assert_eq!(root.coeff(-1), rat(2, 3));
        // c = 2 gives 2c/3 = 4/3
        let p = kcf_cubic(&rat(2, 1), &TPoly::t());
        let root = newton_root(&p, &TPoly::t(), 3).unwrap();
        assert_eq!(root.coeff(-1), rat(4, 3));
    }

    #[test]
    fn newton_rejects_ramified() {
        // x^3 - t has no Laurent-series roots
        let p = Cubic::new(
            TPoly::t().neg(),
            TPoly::zero(),
            TPoly::zero(),
            TPoly::one(),
        )
        .unwrap();
        assert!(matches!(
            newton_root(&p, &TPoly::t(), 5),
            Err(Error::UnsupportedBranch(_))
        ));
        assert!(matches!(
            newton_root(&p, &TPoly::one(), 5),
            Err(Error::UnsupportedBranch(_))
        ));
    }

    #[test]
    fn newton_deep_expansion_is_consistent() {
        let p = kcf_cubic(&rat(1, 1), &TPoly::t());
        let short = newton_root(&p, &TPoly::t(), 10).unwrap();
        let long = newton_root(&p, &TPoly::t(), 40).unwrap();
        for d in (1 - 10 + 1)..=1 {
            assert_eq!(short.coeff(d), long.coeff(d), "degree {}", d);
        }
        // residual norm is tiny
        let f = long.eval_cubic(&p);
        match f.leading() {
            None => {}
            Some((d, _)) => assert!(d <= 1 - 40 + 4 + 2),
        }
    }
}
