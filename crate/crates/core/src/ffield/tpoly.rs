//! Polynomials in t over the exact rationals: the "integers" of the function
//! field Q((1/t)), normed by |p| = 2^deg(p).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    coeffs: Vec<Rat>, // coeffs[i] = coefficient of t^i, no trailing zeros
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(Rat::one())
    }

    pub fn t() -> Self {
        TPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        TPoly::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        TPoly::new(
            coeffs
                .iter()
                .map(|&c| Rat::from(Int::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; 0 for constants including the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Exponent d with |p| = 2^d; None for the zero polynomial (norm 0).
    pub fn norm_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.degree() as i64)
        }
    }

    /// |p| = 2^deg as an exact rational; 0 for the zero polynomial.
    pub fn norm(&self) -> Rat {
        match self.norm_exponent() {
            None => Rat::zero(),
            Some(d) => exp2(d),
        }
    }

    pub fn neg(&self) -> Self {
        TPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        TPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        TPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division over the field of rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::InvalidParameter("division by zero polynomial".into()));
        }
        let dlead = divisor.leading();
        let dd = divisor.degree();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.degree() >= dd && !(rem.degree() == 0 && dd > 0) {
            let shift = rem.degree() - dd;
            let factor = rem.leading() / &dlead;
            quot[shift] = factor.clone();
            let mut c = rem.coeffs.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                c[shift + j] -= &factor * dc;
            }
            c.pop(); // leading term cancels exactly
            rem = TPoly::new(c);
            if dd == 0 {
                break;
            }
        }
        if dd == 0 {
            // dividing by a constant leaves no remainder
            return Ok((self.mul_rat(&dlead.recip()), TPoly::zero()));
        }
        Ok((TPoly::new(quot), rem))
    }

    /// Monic greatest common divisor. Computed over the integers with
    /// primitive pseudo-remainders, which keeps coefficient growth tame
    /// where naive rational Euclid explodes.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let a = self.to_int_scaled();
        let b = other.to_int_scaled();
        let g = a.gcd(&b);
        TPoly::new(g.coeffs().iter().map(|c| Rat::from(c.clone())).collect()).monic()
    }

    /// The polynomial scaled by the lcm of its coefficient denominators.
    fn to_int_scaled(&self) -> crate::poly::IntPoly {
        let mut den = Int::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den.clone(), c.denom().clone());
        }
        crate::poly::IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.mul(other).div_rem(&g).unwrap();
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return TPoly::zero();
        }
        self.mul_rat(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return TPoly::zero();
        }
        TPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from(Int::from(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitution t -> r(t).
    pub fn compose(&self, r: &TPoly) -> TPoly {
        let mut acc = TPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(r).add(&TPoly::constant(c.clone()));
        }
        acc
    }
}

/// 2^d as an exact rational, for d of either sign.
pub fn exp2(d: i64) -> Rat {
    if d >= 0 {
        Rat::from(Int::one() << d as usize)
    } else {
        Rat::new(Int::one(), Int::one() << (-d) as usize)
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({})", self)
    }
}

impl fmt::Display for TPoly {
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
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// A cubic in x with TPoly coefficients: c[3] x^3 + c[2] x^2 + c[1] x + c[0].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cubic {
    pub coeffs: [TPoly; 4],
}

impl Cubic {
    pub fn new(c0: TPoly, c1: TPoly, c2: TPoly, c3: TPoly) -> Result<Self> {
        if c3.is_zero() {
            return Err(Error::WrongDegree {
                expected: 3,
                found: 0,
            });
        }
        Ok(Cubic {
            coeffs: [c0, c1, c2, c3],
        })
    }

    /// Removes the common polynomial factor and scales to integer coprime
    /// coefficients with positive leading rational.
    pub fn normalize(&self) -> Cubic {
        let mut g = TPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        let mut out: Vec<TPoly> = if g.is_zero() || g.is_constant() {
            self.coeffs.to_vec()
        } else {
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(&g).unwrap();
                    debug_assert!(r.is_zero());
                    q
                })
                .collect()
        };
        // clear rational content: lcm of denominators / gcd of numerators
        let mut den_lcm = Int::one();
        let mut num_gcd = Int::zero();
        for p in &out {
            for c in p.coeffs() {
                den_lcm = num_integer::lcm(den_lcm.clone(), c.denom().clone());
                num_gcd = num_integer::gcd(num_gcd.clone(), c.numer().clone());
            }
        }
        if num_gcd.is_zero() {
            num_gcd = Int::one();
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        if out[3].leading().is_negative() {
            scale = -scale;
        }
        for p in out.iter_mut() {
            *p = p.mul_rat(&scale);
        }
        Cubic {
            coeffs: [
                out[0].clone(),
                out[1].clone(),
                out[2].clone(),
                out[3].clone(),
            ],
        }
    }

    /// Height: max norm of the coefficients, as an exponent of 2.
    pub fn height_exponent(&self) -> i64 {
        self.coeffs
            .iter()
            .filter_map(|c| c.norm_exponent())
            .max()
            .unwrap_or(0)
    }

    /// Partial derivative in x: 3 c3 x^2 + 2 c2 x + c1.
    pub fn dx(&self) -> [TPoly; 3] {
        [
            self.coeffs[1].clone(),
            self.coeffs[2].mul_rat(&Rat::from(Int::from(2))),
            self.coeffs[3].mul_rat(&Rat::from(Int::from(3))),
        ]
    }

    /// Partial derivative in t, coefficient-wise.
    pub fn dt(&self) -> [TPoly; 4] {
        [
            self.coeffs[0].derivative(),
            self.coeffs[1].derivative(),
            self.coeffs[2].derivative(),
            self.coeffs[3].derivative(),
        ]
    }

    /// Coefficient reversal: the minimal polynomial of 1/alpha (cubic again
    /// as long as the constant coefficient is nonzero).
    pub fn invert_root(&self) -> Result<Cubic> {
        Cubic::new(
            self.coeffs[3].clone(),
            self.coeffs[2].clone(),
            self.coeffs[1].clone(),
            self.coeffs[0].clone(),
        )
    }

    /// Minimal polynomial of alpha + s: P(x - s).
    pub fn shift_root(&self, s: &Rat) -> Cubic {
        let m = -s;
        let c3 = self.coeffs[3].clone();
        let c2 = self.coeffs[2].clone();
        let c1 = self.coeffs[1].clone();
        let c0 = self.coeffs[0].clone();
        let three = Rat::from(Int::from(3));
        let two = Rat::from(Int::from(2));
        // P(x + m) expanded
        let n2 = c2.add(&c3.mul_rat(&(&three * &m)));
        let n1 = c1
            .add(&c2.mul_rat(&(&two * &m)))
            .add(&c3.mul_rat(&(&three * &m * &m)));
        let n0 = c0
            .add(&c1.mul_rat(&m))
            .add(&c2.mul_rat(&(&m * &m)))
            .add(&c3.mul_rat(&(&m * &m * &m)));
        Cubic {
            coeffs: [n0, n1, n2, c3],
        }
    }

    /// Substitution t -> r(t) in every coefficient.
    pub fn substitute_t(&self, r: &TPoly) -> Cubic {
        Cubic {
            coeffs: [
                self.coeffs[0].compose(r),
                self.coeffs[1].compose(r),
                self.coeffs[2].compose(r),
                self.coeffs[3].compose(r),
            ],
        }
    }

    /// Specialization t = t0 as an integer-coefficient cubic in x, when the
    /// x-degree survives.
    pub fn specialize(&self, t0: &Rat) -> Option<crate::poly::IntPoly> {
        let vals: Vec<Rat> = self.coeffs.iter().map(|c| c.eval(t0)).collect();
        if vals[3].is_zero() {
            return None;
        }
        let mut den = Int::one();
        for v in &vals {
            den = num_integer::lcm(den.clone(), v.denom().clone());
        }
        let ints: Vec<Int> = vals
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        Some(crate::poly::IntPoly::new(ints))
    }
}
