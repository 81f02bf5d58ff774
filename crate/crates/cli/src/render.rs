//! Canonical text renderings shared by every report: integers as decimal
//! strings, rationals as "num/den", enclosures as "[lo,hi]". Nothing is ever
//! emitted as floating point.

use cubicdist::interval::RatInterval;
use cubicdist::poly::IntPoly;
use cubicdist::{Int, Rat};

pub fn int_str(v: &Int) -> String {
    v.to_string()
}

pub fn rat_str(v: &Rat) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn enclosure_str(iv: &RatInterval) -> String {
    format!("[{},{}]", rat_str(&iv.lo), rat_str(&iv.hi))
}

/// Leading-first coefficient list, the same shape the CLI accepts.
pub fn poly_str(p: &IntPoly) -> String {
    let d = p.degree();
    (0..=d)
        .rev()
        .map(|i| p.coeff(i).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// One CSV document: header plus rows, every cell already rendered.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicdist::rat;

    #[test]
    fn canonical_renderings() {
        assert_eq!(rat_str(&rat(584, 403)), "584/403");
        assert_eq!(rat_str(&rat(-4, 8)), "-1/2");
        assert_eq!(rat_str(&rat(3, 1)), "3/1");
        let iv = RatInterval::new(rat(1, 3), rat(1, 2));
        assert_eq!(enclosure_str(&iv), "[1/3,1/2]");
        assert_eq!(poly_str(&IntPoly::cubic(2, 11, -16, -6)), "2,11,-16,-6");
    }
}
