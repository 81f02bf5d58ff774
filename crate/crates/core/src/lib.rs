//! Exact arithmetic for the approximation of cubic irrationals by rationals.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; no floating point enters any result. The crate covers:
//!
//! - integer polynomials: discriminants, scaled evaluation, real-root
//!   isolation and cubic irreducibility ([`poly`], [`isolate`]);
//! - certified complex root enclosures, root separation, the depression
//!   transform and an exhaustive separation survey ([`roots`], [`survey`]);
//! - continued fractions of real algebraic numbers, the convergent-based
//!   polynomial transform and its derived parameters ([`cf`]);
//! - Hall-gap and Thue-form scans ([`hall`]);
//! - the exponent algebra for (u,v)-distance bounds ([`exponents`]);
//! - the explicit Pell family of cubic irrationals ([`pell`]);
//! - the Laurent-series analogue over Q((1/t)) ([`ffield`]).

pub mod cf;
pub mod error;
pub mod exponents;
pub mod ffield;
pub mod hall;
pub mod interval;
pub mod isolate;
pub mod partition;
pub mod pell;
pub mod poly;
pub mod roots;
pub mod survey;

pub use error::Error;

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational number: reduced, positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for building a [`Rat`] from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
