//! Dense integer-coefficient univariate polynomials.
//!
//! Coefficient index i holds the coefficient of x^i; the vector carries no
//! trailing zeros, so the leading coefficient of a nonzero polynomial is the
//! last entry.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers, lowest degree first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// Cubic a3*x^3 + a2*x^2 + a1*x + a0 given leading-first coefficients.
    pub fn cubic(a3: i64, a2: i64, a1: i64, a0: i64) -> Self {
        Self::from_coeffs(&[a0, a1, a2, a3])
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or_else(Int::zero)
    }

    /// Naive height: maximum absolute value of the coefficients.
    pub fn height(&self) -> Int {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from(c.clone());
        }
        acc
    }

    /// Exact integer q^deg * P(p/q), computed as sum a_i p^i q^(deg-i).
    pub fn eval_scaled(&self, p: &Int, q: &Int) -> Int {
        if self.is_zero() {
            return Int::zero();
        }
        // Horner from the top, multiplying in one factor of q per step.
        let mut acc = self.coeffs.last().unwrap().clone();
        let mut qp = Int::one();
        for c in self.coeffs.iter().rev().skip(1) {
            qp *= q;
            acc = acc * p + c * &qp;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Int::from(i))
            .collect();
        IntPoly::new(coeffs)
    }

    /// Sign of P(x) at a rational point: -1, 0 or 1.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval_scaled(x.numer(), x.denom());
        match v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// P(-x).
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Taylor shift: P(x + a), via repeated synthetic division.
    pub fn shift(&self, a: &Int) -> IntPoly {
        if self.is_zero() || a.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let add = &c[j + 1] * a;
                c[j] += add;
            }
        }
        IntPoly::new(c)
    }

    /// x^deg * P(1/x): reverses the coefficient vector.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// P(m * x).
    pub fn scale_arg(&self, m: &Int) -> IntPoly {
        let mut pow = Int::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c * &pow;
                pow = &pow * m;
                r
            })
            .collect();
        IntPoly::new(coeffs)
    }

    /// 2^deg * P(x/2): keeps integer coefficients when halving an interval.
    pub fn half_arg(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let d = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c << (d - i))
            .collect();
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::new(coeffs)
    }

    /// Content: positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part: coefficients divided by the content, sign preserved.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_normalized(&self) -> IntPoly {
        let p = self.primitive();
        if p.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Exact division by x; the constant term must be zero.
    pub fn div_x(&self) -> IntPoly {
        assert!(self.coeff(0).is_zero(), "constant term must vanish");
        IntPoly::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// Primitive-part gcd via pseudo-remainders. Result is primitive with
    /// positive leading coefficient; gcd with the zero polynomial is the
    /// other argument.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_normalized();
        let mut b = other.primitive_normalized();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_normalized();
            a = b;
            b = r;
        }
        a
    }

    /// Pseudo-remainder of self by divisor (lead(divisor)^k * self mod divisor).
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero());
        let mut r = self.clone();
        let dlead = divisor.leading();
        let dd = divisor.degree();
        while !r.is_zero() && r.degree() >= dd && !(r.degree() == 0 && dd == 0) {
            let rd = r.degree();
            let rlead = r.leading();
            let mut coeffs = vec![Int::zero(); rd.max(1)];
            // r <- dlead * r - rlead * x^(rd-dd) * divisor
            for i in 0..rd {
                coeffs[i] = r.coeff(i) * &dlead;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let k = rd - dd + j;
                if k < rd {
                    coeffs[k] -= c * &rlead;
                }
            }
            r = IntPoly::new(coeffs);
            if dd == 0 {
                return IntPoly::zero();
            }
        }
        if dd == 0 {
            IntPoly::zero()
        } else {
            r
        }
    }

    /// True when gcd(P, P') is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Discriminant of a cubic a3 x^3 + a2 x^2 + a1 x + a0:
    /// 18*a3*a2*a1*a0 - 4*a2^3*a0 + a2^2*a1^2 - 4*a3*a1^3 - 27*a3^2*a0^2.
    pub fn discriminant_cubic(&self) -> Result<Int> {
        if self.degree() != 3 {
            return Err(Error::WrongDegree {
                expected: 3,
                found: self.degree(),
            });
        }
        let a = self.coeff(3);
        let b = self.coeff(2);
        let c = self.coeff(1);
        let d = self.coeff(0);
        Ok(Int::from(18) * &a * &b * &c * &d - Int::from(4) * &b * &b * &b * &d
            + &b * &b * &c * &c
            - Int::from(4) * &a * &c * &c * &c
            - Int::from(27) * &a * &a * &d * &d)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Cubic irreducibility over Q.
// ---------------------------------------------------------------------------

const CERT_PRIMES: [u32; 13] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
// 2 and 3 are skipped: tiny fields certify less often than they cost.

/// True iff the primitive part of the cubic has no rational root.
///
/// A cubic is reducible over Q exactly when it has a rational root, and a
/// repeated root forces a rational linear factor, so zero discriminant means
/// reducible. Large inputs first try an irreducibility certificate modulo a
/// small prime (no root mod p with p not dividing the leading coefficient
/// implies no rational root); the complete decision enumerates rational-root
/// candidates over divisors of the trailing and leading coefficients.
pub fn is_irreducible_cubic(p: &IntPoly) -> Result<bool> {
    if p.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: p.degree(),
        });
    }
    let q = p.primitive();
    if q.coeff(0).is_zero() {
        return Ok(false);
    }
    if q.discriminant_cubic()?.is_zero() {
        return Ok(false);
    }
    for prime in CERT_PRIMES {
        if has_mod_p_certificate(&q, prime) {
            return Ok(true);
        }
    }
    Ok(!has_rational_root(&q))
}

fn has_mod_p_certificate(q: &IntPoly, p: u32) -> bool {
    let pb = Int::from(p);
    if q.leading().mod_floor(&pb).is_zero() {
        return false;
    }
    let residues: Vec<Int> = q.coeffs().iter().map(|c| c.mod_floor(&pb)).collect();
    for x in 0..p {
        let xb = Int::from(x);
        let mut acc = Int::zero();
        for c in residues.iter().rev() {
            acc = (acc * &xb + c).mod_floor(&pb);
        }
        if acc.is_zero() {
            return false;
        }
    }
    true
}

/// Complete rational-root test on a primitive cubic with nonzero constant
/// term: candidates are (+-) d0/d3 over divisor pairs with gcd 1.
fn has_rational_root(q: &IntPoly) -> bool {
    let d0 = divisors(&q.coeff(0).abs());
    let d3 = divisors(&q.leading().abs());
    for den in &d3 {
        for num in &d0 {
            if num.gcd(den) != Int::one() {
                continue;
            }
            if q.eval_scaled(num, den).is_zero() || q.eval_scaled(&(-num), den).is_zero() {
                return true;
            }
        }
    }
    false
}

/// All rational roots of a nonzero polynomial, deduplicated and sorted.
pub fn rational_roots(p: &IntPoly) -> Vec<Rat> {
    let mut q = p.primitive();
    let mut out = std::collections::BTreeSet::new();
    if q.is_zero() || q.degree() == 0 {
        return Vec::new();
    }
    if q.coeff(0).is_zero() {
        out.insert(Rat::zero());
        while q.coeff(0).is_zero() && q.degree() > 0 {
            q = q.div_x();
        }
    }
    if q.degree() > 0 {
        let d0 = divisors(&q.coeff(0).abs());
        let d3 = divisors(&q.leading().abs());
        for den in &d3 {
            for num in &d0 {
                if num.gcd(den) != Int::one() {
                    continue;
                }
                if q.eval_scaled(num, den).is_zero() {
                    out.insert(Rat::new(num.clone(), den.clone()));
                }
                if q.eval_scaled(&(-num), den).is_zero() {
                    out.insert(Rat::new(-num, den.clone()));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All positive divisors of |n| from its factorization.
fn divisors(n: &Int) -> Vec<Int> {
    let factors = factorize(n.clone());
    let mut out = vec![Int::one()];
    for (p, e) in factors {
        let base = out.clone();
        let mut pk = Int::one();
        for _ in 0..e {
            pk = &pk * &p;
            for d in &base {
                out.push(d * &pk);
            }
        }
    }
    out
}

/// Factorization by trial division with a Pollard-Brent fallback for large
/// cofactors. Deterministic: rho restarts walk a fixed constant sequence.
fn factorize(mut n: Int) -> Vec<(Int, u32)> {
    assert!(n.is_positive());
    let mut out: Vec<(Int, u32)> = Vec::new();
    let push = |p: Int, out: &mut Vec<(Int, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for small in [2u32, 3, 5] {
        let sb = Int::from(small);
        while (&n % &sb).is_zero() {
            n /= &sb;
            push(sb.clone(), &mut out);
        }
    }
    let mut d = Int::from(7);
    let wheel = [4u32, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0;
    let limit = Int::from(1u64 << 20);
    while &d * &d <= n && d <= limit {
        while (&n % &d).is_zero() {
            n /= &d;
            push(d.clone(), &mut out);
        }
        d += Int::from(wheel[wi]);
        wi = (wi + 1) % wheel.len();
    }
    if n > Int::one() {
        if &d * &d > n {
            push(n, &mut out);
        } else {
            let mut stack = vec![n];
            while let Some(m) = stack.pop() {
                if is_probable_prime(&m) {
                    push(m, &mut out);
                    continue;
                }
                let f = pollard_brent(&m);
                stack.push(&m / &f);
                stack.push(f);
            }
        }
    }
    out.sort();
    out
}

fn is_probable_prime(n: &Int) -> bool {
    // Deterministic Miller-Rabin bases for n < 3.3 * 10^24; inputs here stay
    // far below that.
    if n < &Int::from(2) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = Int::from(p);
        if n == &pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let n1 = n - Int::one();
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = Int::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&Int::from(2), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &Int) -> Int {
    let one = Int::one();
    let mut c = Int::one();
    loop {
        let mut x = Int::from(2);
        let mut y = Int::from(2);
        let mut d = Int::one();
        let f = |v: &Int| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if d != *n {
            return d;
        }
        c += &one;
    }
}
