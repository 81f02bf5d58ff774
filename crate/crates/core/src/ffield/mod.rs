//! The function-field analogue over Q((1/t)): Laurent-series arithmetic with
//! the degree norm |x| = 2^d, Newton-iterated series roots, regular and
//! K-type continued fractions over Q[t], and the Riccati-equation bound.

pub mod cf;
pub mod riccati;
pub mod series;
pub mod tpoly;

pub use cf::{
    certify_kcf_against_regular, distance_exponent, ff_approx_check, kcf_convergents,
    poly_cf_expand, poly_cf_expand_algebraic, AlgebraicSeries, ApproxCheckRow, KcfTemplate,
    PolyCf,
};
pub use riccati::{
    check_442_chain, derive_riccati, normalize_unit, verify_riccati_identity,
    verify_riccati_on_series, ChainCheckRow, RiccatiCoeffs, UnitNormalized,
};
pub use series::{expand_fraction, kcf_cubic, newton_root, LaurentSeries};
pub use tpoly::{exp2, Cubic, TPoly};
