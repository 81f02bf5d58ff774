//! The exponent algebra for (u,v)-distance bounds between cubic irrationals
//! and rationals: the Liouville point, the separation-to-exponent map, the
//! Hall-conditional family, the outer bound u >= 10 - 3v, and the combined
//! region report.
//!
//! Everything is exact rational arithmetic; epsilon is always an input
//! rational, never a float.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::{Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Liouville,
    Theorem1,
    Theorem2,
    OuterBound,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Liouville => "liouville",
            Provenance::Theorem1 => "theorem1",
            Provenance::Theorem2 => "theorem2",
            Provenance::OuterBound => "outer_bound",
        }
    }
}

/// A point (u, v) with exact rational coordinates and its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPair {
    pub u: Rat,
    pub v: Rat,
    pub provenance: Provenance,
}

/// Liouville: A_d and A_r are (r, d)-distanced with constant
/// (d+1)^-r (r+1)^-d.
pub fn liouville_pair(d: u32, r: u32) -> Result<(ExponentPair, Rat)> {
    if d < 1 || r < 1 || d == r {
        return Err(Error::InvalidParameter(
            "need d, r >= 1 and d != r".into(),
        ));
    }
    let constant = Rat::new(
        Int::one(),
        Int::from(d + 1).pow(r) * Int::from(r + 1).pow(d),
    );
    Ok((
        ExponentPair {
            u: Rat::from(Int::from(r)),
            v: Rat::from(Int::from(d)),
            provenance: Provenance::Liouville,
        },
        constant,
    ))
}

/// The separation-exponent map: a bound sep(Q) >= c / (B^(2+s) A^(2-t))
/// yields (u, v) = (2(1+s)/(s+t), 2 + s/(s+t)).
pub fn st_to_uv(s: &Rat, t: &Rat) -> Result<ExponentPair> {
    if !s.is_positive() || !t.is_positive() {
        return Err(Error::InvalidParameter("s and t must be > 0".into()));
    }
    let sum = s + t;
    let two = Rat::from(Int::from(2));
    Ok(ExponentPair {
        u: &two * (Rat::one() + s) / &sum,
        v: &two + s / &sum,
        provenance: Provenance::Theorem1,
    })
}

/// The Hall-conditional family (2r + 2(1-r)/(1/2-eps), 2 + r) for
/// 0 < eps < 1/2 and 1/2 + eps <= r <= 1.
pub fn hall_family_uv(eps: &Rat, r: &Rat) -> Result<ExponentPair> {
    let half = Rat::new(Int::one(), Int::from(2));
    if !eps.is_positive() || eps >= &half {
        return Err(Error::InvalidParameter(
            "epsilon must lie in (0, 1/2)".into(),
        ));
    }
    if r < &(&half + eps) || r > &Rat::one() {
        return Err(Error::InvalidParameter(
            "r must lie in [1/2 + epsilon, 1]".into(),
        ));
    }
    let two = Rat::from(Int::from(2));
    let u = &two * r + &two * (Rat::one() - r) / (&half - eps);
    Ok(ExponentPair {
        u,
        v: &two + r,
        provenance: Provenance::Theorem2,
    })
}

/// The outer bound: any (u, v) in D_{3,1} with 2 <= v <= 3 has u >= 10 - 3v.
pub fn outer_bound_u(v: &Rat) -> Result<Rat> {
    let two = Rat::from(Int::from(2));
    let three = Rat::from(Int::from(3));
    if v < &two || v > &three {
        return Err(Error::InvalidParameter("v must lie in [2, 3]".into()));
    }
    Ok(Rat::from(Int::from(10)) - &three * v)
}

/// One row of the region report.
#[derive(Clone, Debug)]
pub struct RegionRow {
    pub v: Rat,
    pub outer_u: Rat,
    /// conditional inner bound where the Theorem 2 family is defined
    pub inner_u: Option<Rat>,
    pub provenance: String,
}

/// Tabulates the admissible region over a v-grid on [2, 3]: the outer bound,
/// the conditional inner point where r = v - 2 lies in [1/2 + eps, 1], and
/// the Liouville marker at v = 3. Rows with v < 5/2 + eps carry no inner
/// point rather than an extrapolated one.
pub fn region_report(eps: &Rat, grid_points: usize) -> Result<Vec<RegionRow>> {
    let half = Rat::new(Int::one(), Int::from(2));
    if !eps.is_positive() || eps >= &half {
        return Err(Error::InvalidParameter(
            "epsilon must lie in (0, 1/2)".into(),
        ));
    }
    if grid_points < 2 {
        return Err(Error::InvalidParameter("need at least 2 grid points".into()));
    }
    let two = Rat::from(Int::from(2));
    let three = Rat::from(Int::from(3));
    let step = Rat::new(Int::one(), Int::from(grid_points as i64 - 1));
    let mut rows = Vec::with_capacity(grid_points);
    for i in 0..grid_points {
        let v = &two + Rat::from(Int::from(i as i64)) * &step;
        let outer_u = outer_bound_u(&v)?;
        let r = &v - &two;
        let inner = if r >= &half + eps && r <= Rat::one() {
            Some(hall_family_uv(eps, &r)?.u)
        } else {
            None
        };
        let mut provenance = match &inner {
            Some(_) => Provenance::Theorem2.as_str().to_string(),
            None => "none".to_string(),
        };
        if v == three {
            provenance.push_str(",liouville");
        }
        rows.push(RegionRow {
            v,
            outer_u,
            inner_u: inner,
            provenance,
        });
    }
    Ok(rows)
}

/// True when every row with an inner point satisfies inner >= outer.
pub fn inner_dominates_outer(rows: &[RegionRow]) -> bool {
    rows.iter()
        .all(|row| row.inner_u.as_ref().map_or(true, |u| u >= &row.outer_u))
}
