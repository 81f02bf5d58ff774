//! The Riccati equation D x' = A + B x + C x^2 satisfied by every cubic
//! Laurent series, derived by implicit differentiation in the quotient
//! algebra Q(t)[x]/(P): x' = -P_t / P_x reduced modulo P, denominators
//! cleared and the tuple gcd-normalized. The interesting output is the norm
//! bound max{|A|,|B|,|C|,|D|} <= H(alpha)^4.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ffield::cf::{distance_exponent, poly_cf_expand, KcfTemplate};
use crate::ffield::series::{newton_root, LaurentSeries};
use crate::ffield::tpoly::{Cubic, TPoly};
use crate::poly::is_irreducible_cubic;
use crate::{Int, Rat};

// ---------------------------------------------------------------------------
// Rational functions and polynomials in x over Q(t).
// ---------------------------------------------------------------------------

/// Reduced fraction of polynomials in t; denominator monic and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatFunc {
    num: TPoly,
    den: TPoly,
}

impl RatFunc {
    fn new(num: TPoly, den: TPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut out = RatFunc { num, den };
        out.reduce();
        out
    }

    fn from_tpoly(p: TPoly) -> Self {
        RatFunc {
            num: p,
            den: TPoly::one(),
        }
    }

    fn zero() -> Self {
        Self::from_tpoly(TPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = TPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_rem(&g).unwrap().0;
            self.den = self.den.div_rem(&g).unwrap().0;
        }
        let lead = self.den.leading();
        if !lead.is_one() {
            self.num = self.num.mul_rat(&lead.recip());
            self.den = self.den.mul_rat(&lead.recip());
        }
    }

    fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("inverse of zero".into()));
        }
        Ok(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

/// Polynomial in x over Q(t), dense, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct XPoly {
    coeffs: Vec<RatFunc>,
}

impl XPoly {
    fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn leading(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    fn scale(&self, c: &RatFunc) -> Self {
        XPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        XPoly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::from_tpoly(TPoly::constant(-Rat::one()))))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        XPoly::new(out)
    }

    fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        let dlead = divisor.leading();
        let dd = divisor.degree();
        let mut rem = self.clone();
        let mut quot = vec![RatFunc::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let factor = rem.leading().div(&dlead)?;
            quot[shift] = factor.clone();
            let mut c = rem.coeffs.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                c[shift + j] = c[shift + j].sub(&factor.mul(dc));
            }
            c.pop();
            rem = XPoly::new(c);
            if dd == 0 {
                return Ok((XPoly::new(quot), XPoly::zero()));
            }
        }
        Ok((XPoly::new(quot), rem))
    }

    /// Extended gcd: (g, s) with s*self == g (mod other).
    fn half_ext_gcd(&self, other: &Self) -> Result<(XPoly, XPoly)> {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = XPoly::new(vec![RatFunc::from_tpoly(TPoly::one())]);
        let mut s1 = XPoly::zero();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        Ok((r0, s0))
    }
}

fn cubic_to_xpoly(p: &Cubic) -> XPoly {
    XPoly::new(
        p.coeffs
            .iter()
            .map(|c| RatFunc::from_tpoly(c.clone()))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Riccati derivation.
// ---------------------------------------------------------------------------

/// Normalized Riccati coefficients: D alpha' = A + B alpha + C alpha^2 with
/// A, B, C, D in Q[t], gcd 1, integer coprime coefficients, lead(D) > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiCoeffs {
    pub a: TPoly,
    pub b: TPoly,
    pub c: TPoly,
    pub d: TPoly,
    /// max{|A|,|B|,|C|,|D|} <= H(alpha)^4
    pub bound_holds: bool,
    /// exponent of max{|A|,|B|,|C|,|D|}
    pub max_norm_exp: i64,
    /// exponent of H(alpha)
    pub height_exp: i64,
}

/// Derives the Riccati coefficients of the roots of an irreducible cubic
/// over Q[t]. The input is content-normalized first; reducible or
/// non-squarefree cubics are rejected.
pub fn derive_riccati(p: &Cubic) -> Result<RiccatiCoeffs> {
    let p = p.normalize();
    certify_irreducible(&p)?;
    let px_arr = p.dx();
    let pt_arr = p.dt();
    let p_x = XPoly::new(
        px_arr
            .iter()
            .map(|c| RatFunc::from_tpoly(c.clone()))
            .collect(),
    );
    let p_t = XPoly::new(
        pt_arr
            .iter()
            .map(|c| RatFunc::from_tpoly(c.clone()))
            .collect(),
    );
    let modulus = cubic_to_xpoly(&p);
    let (g, s) = p_x.half_ext_gcd(&modulus)?;
    if g.degree() > 0 || g.is_zero() {
        return Err(Error::Reducible);
    }
    // inverse of P_x modulo P
    let inv = s.scale(&g.leading().inv()?);
    // w = -P_t * inv mod P
    let minus_pt = p_t.scale(&RatFunc::from_tpoly(TPoly::constant(-Rat::one())));
    let w = minus_pt.mul(&inv).div_rem(&modulus)?.1;
    let w0 = w.coeff(0);
    let w1 = w.coeff(1);
    let w2 = w.coeff(2);
    // common denominator
    let d = w0.den.lcm(&w1.den).lcm(&w2.den);
    let clear = |w: &RatFunc| -> TPoly {
        let (q, r) = d.div_rem(&w.den).unwrap();
        debug_assert!(r.is_zero());
        w.num.mul(&q)
    };
    let mut a = clear(&w0);
    let mut b = clear(&w1);
    let mut c = clear(&w2);
    let mut dd = d;
    // gcd-normalize the 4-tuple
    let g4 = a.gcd(&b).gcd(&c).gcd(&dd);
    if !g4.is_zero() && !g4.is_constant() {
        a = a.div_rem(&g4).unwrap().0;
        b = b.div_rem(&g4).unwrap().0;
        c = c.div_rem(&g4).unwrap().0;
        dd = dd.div_rem(&g4).unwrap().0;
    }
    // integer coprime coefficients, positive leading D
    let mut den_lcm = Int::one();
    let mut num_gcd = Int::zero();
    for poly in [&a, &b, &c, &dd] {
        for coeff in poly.coeffs() {
            den_lcm = num_integer::lcm(den_lcm.clone(), coeff.denom().clone());
            num_gcd = num_integer::gcd(num_gcd.clone(), coeff.numer().clone());
        }
    }
    if num_gcd.is_zero() {
        num_gcd = Int::one();
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    if dd.leading().is_negative() {
        scale = -scale;
    }
    a = a.mul_rat(&scale);
    b = b.mul_rat(&scale);
    c = c.mul_rat(&scale);
    dd = dd.mul_rat(&scale);

    let height_exp = p.height_exponent();
    let max_norm_exp = [&a, &b, &c, &dd]
        .iter()
        .filter_map(|q| q.norm_exponent())
        .max()
        .unwrap_or(0);
    let out = RiccatiCoeffs {
        bound_holds: max_norm_exp <= 4 * height_exp,
        max_norm_exp,
        height_exp,
        a,
        b,
        c,
        d: dd,
    };
    debug_assert!(verify_riccati_identity(&p, &out));
    Ok(out)
}

/// Symbolic check (A + B x + C x^2) P_x + D P_t == 0 (mod P); an independent
/// route that never inverts anything.
pub fn verify_riccati_identity(p: &Cubic, r: &RiccatiCoeffs) -> bool {
    let p = p.normalize();
    let modulus = cubic_to_xpoly(&p);
    let px = XPoly::new(
        p.dx()
            .iter()
            .map(|c| RatFunc::from_tpoly(c.clone()))
            .collect(),
    );
    let pt = XPoly::new(
        p.dt()
            .iter()
            .map(|c| RatFunc::from_tpoly(c.clone()))
            .collect(),
    );
    let abc = XPoly::new(vec![
        RatFunc::from_tpoly(r.a.clone()),
        RatFunc::from_tpoly(r.b.clone()),
        RatFunc::from_tpoly(r.c.clone()),
    ]);
    let dxp = XPoly::new(vec![RatFunc::from_tpoly(r.d.clone())]);
    let lhs = abc.mul(&px).add(&dxp.mul(&pt));
    match lhs.div_rem(&modulus) {
        Ok((_, rem)) => rem.is_zero(),
        Err(_) => false,
    }
}

/// Series-substitution check of the Riccati identity: the norm of
/// D alpha' - A - B alpha - C alpha^2 on a truncated root must vanish to the
/// available order.
pub fn verify_riccati_on_series(r: &RiccatiCoeffs, alpha: &LaurentSeries) -> Result<bool> {
    let alpha_prime = alpha.derivative();
    let lhs = LaurentSeries::from_tpoly(&r.d).mul(&alpha_prime);
    let rhs = LaurentSeries::from_tpoly(&r.a)
        .add(&LaurentSeries::from_tpoly(&r.b).mul(alpha))
        .add(&LaurentSeries::from_tpoly(&r.c).mul(&alpha.mul(alpha)));
    let diff = lhs.sub(&rhs);
    // all known coefficients must cancel
    Ok(diff.leading().is_none())
}

/// Irreducibility certificate by specialization: if P(t0, x) is an
/// irreducible cubic over Q for some rational t0 preserving the x-degree,
/// then P is irreducible over Q(t).
fn certify_irreducible(p: &Cubic) -> Result<()> {
    let mut candidates = vec![Rat::zero()];
    for k in 1..=10i64 {
        candidates.push(Rat::from(Int::from(k)));
        candidates.push(Rat::from(Int::from(-k)));
    }
    for t0 in &candidates {
        if let Some(spec) = p.specialize(t0) {
            if spec.degree() == 3 && is_irreducible_cubic(&spec)? {
                return Ok(());
            }
        }
    }
    Err(Error::Reducible)
}

// ---------------------------------------------------------------------------
// Unit-norm normalization and the (4,2)/(3,2) chain check.
// ---------------------------------------------------------------------------

/// Root transformed to unit norm (|alpha| = 1) by inverting and shifting,
/// with the transformed minimal polynomial.
#[derive(Clone, Debug)]
pub struct UnitNormalized {
    pub poly: Cubic,
    pub alpha: LaurentSeries,
    pub steps: Vec<&'static str>,
}

pub fn normalize_unit(p: &Cubic, initial: &TPoly, terms: usize) -> Result<UnitNormalized> {
    let mut poly = p.normalize();
    let mut alpha = newton_root(&poly, initial, terms)?;
    let mut steps = Vec::new();
    for _ in 0..4 {
        let d = alpha.norm_exponent()?.ok_or(Error::PrecisionExhausted)?;
        if d == 0 {
            return Ok(UnitNormalized { poly, alpha, steps });
        }
        if d > 0 {
            if poly.coeffs[0].is_zero() {
                return Err(Error::Reducible);
            }
            alpha = LaurentSeries::from_rat(&Rat::one()).div(&alpha)?;
            poly = poly.invert_root()?.normalize();
            steps.push("invert");
        } else {
            alpha = alpha.add(&LaurentSeries::from_rat(&Rat::one()));
            poly = poly.shift_root(&Rat::one()).normalize();
            steps.push("shift+1");
        }
    }
    Err(Error::PrecisionExhausted)
}

/// One convergent of the chain |alpha - p/q| >= (max{|B|,|C|,|D|/2} |q|^2)^-1
/// >= (H^4 |q|^2)^-1 checked with exact norms.
#[derive(Clone, Debug)]
pub struct ChainCheckRow {
    pub index: usize,
    pub dist_exp: i64,
    pub q_exp: i64,
    /// exponent of max{|B|, |C|, |D|/2}
    pub riccati_bound_exp: i64,
    /// 4 * height exponent
    pub h4_exp: i64,
    pub lower_riccati_ok: bool,
    pub lower_h4_ok: bool,
}

/// Runs the lower-bound chain on the unit-normalized root of the template's
/// cubic against its own regular-CF convergents.
pub fn check_442_chain(
    tmpl: &KcfTemplate,
    count: usize,
    terms: usize,
) -> Result<Vec<ChainCheckRow>> {
    let base = tmpl.minimal_poly();
    let mut work_terms = terms;
    loop {
        match chain_attempt(&base, &tmpl.r, count, work_terms) {
            Ok(rows) => return Ok(rows),
            Err(Error::PrecisionExhausted) => {
                work_terms *= 2;
                if work_terms > 1 << 14 {
                    return Err(Error::PrecisionExhausted);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

fn chain_attempt(
    base: &Cubic,
    initial: &TPoly,
    count: usize,
    terms: usize,
) -> Result<Vec<ChainCheckRow>> {
    let unit = normalize_unit(base, initial, terms)?;
    let riccati = derive_riccati(&unit.poly)?;
    let m_exp = [
        riccati.b.norm_exponent(),
        riccati.c.norm_exponent(),
        riccati.d.norm_exponent().map(|e| e - 1),
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap_or(0);
    let h4_exp = 4 * riccati.height_exp;
    let cf = poly_cf_expand(&unit.alpha, count)?;
    let mut rows = Vec::new();
    for (k, (p, q)) in cf.convergents.iter().enumerate() {
        let dist_exp = distance_exponent(&unit.alpha, p, q)?;
        let q_exp = q.norm_exponent().unwrap_or(0);
        rows.push(ChainCheckRow {
            index: k,
            dist_exp,
            q_exp,
            riccati_bound_exp: m_exp,
            h4_exp,
            lower_riccati_ok: dist_exp >= -(m_exp + 2 * q_exp),
            lower_h4_ok: dist_exp >= -(h4_exp + 2 * q_exp),
        });
    }
    Ok(rows)
}
