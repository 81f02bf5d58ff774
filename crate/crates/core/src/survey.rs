//! Exhaustive separation survey: the empirical side of the lower bound
//! sep(Q) >= c / (B^(2+s) A^(2-t)) over all irreducible cubics of bounded
//! height.
//!
//! Enumeration is deduplicated modulo the x -> -x and P -> -P symmetries
//! (they preserve sep, B and H): the canonical representative has b3 > 0 and
//! the first nonzero of (b2, b1, b0) positive. Scans are pure functions of
//! their partition slot and merge associatively, so any partition layout
//! reproduces the single-run result bit for bit.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::interval::{pow_rat, RatInterval};
use crate::partition::{run_partitioned, Partition};
use crate::poly::{is_irreducible_cubic, IntPoly};
use crate::roots::{separation, SepEnclosure};
use crate::{Int, Rat};

#[derive(Clone, Debug)]
pub struct SurveyParams {
    /// bound on |b3|
    pub b_max: i64,
    /// bound on the height
    pub h_max: i64,
    /// score exponents: score = sep * B^(2+s) * A^(2-t)
    pub s: Rat,
    pub t: Rat,
    /// how many smallest-score records to keep
    pub top_k: usize,
    /// relative precision of every separation enclosure
    pub precision_bits: u32,
}

impl SurveyParams {
    pub fn validate(&self) -> Result<()> {
        if self.b_max < 1 {
            return Err(Error::InvalidParameter("b_max must be >= 1".into()));
        }
        if self.h_max < self.b_max {
            return Err(Error::InvalidParameter("h_max must be >= b_max".into()));
        }
        if self.s.is_negative() || self.t.is_negative() {
            return Err(Error::InvalidParameter("s and t must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SurveyRecord {
    pub poly: IntPoly,
    pub b: Int,
    pub a: Rat,
    pub sep: SepEnclosure,
    pub score: RatInterval,
}

#[derive(Clone, Debug)]
pub struct SurveyResult {
    /// top_k smallest scores in the deterministic order
    /// (score.lo, score.hi, coefficients)
    pub records: Vec<SurveyRecord>,
    /// enclosure of the global minimum score
    pub min_score: Option<RatInterval>,
    /// number of canonical irreducible cubics scored
    pub surveyed: u64,
}

impl SurveyResult {
    fn empty() -> Self {
        SurveyResult {
            records: Vec::new(),
            min_score: None,
            surveyed: 0,
        }
    }

    fn merge(mut self, mut other: SurveyResult, top_k: usize) -> SurveyResult {
        self.records.append(&mut other.records);
        sort_records(&mut self.records);
        self.records.truncate(top_k);
        self.min_score = match (self.min_score.take(), other.min_score) {
            (Some(a), Some(b)) => Some(RatInterval::new(
                a.lo.min(b.lo.clone()),
                a.hi.min(b.hi),
            )),
            (a, b) => a.or(b),
        };
        self.surveyed += other.surveyed;
        self
    }
}

fn sort_records(records: &mut [SurveyRecord]) {
    records.sort_by(|x, y| {
        (&x.score.lo, &x.score.hi, x.poly.coeffs()).cmp(&(&y.score.lo, &y.score.hi, y.poly.coeffs()))
    });
}

/// True for the canonical representative of the symmetry class.
///
/// x -> -x maps (b3,b2,b1,b0) to (-b3,b2,-b1,b0); composing with P -> -P
/// keeps b3 > 0 and sends (b2,b1,b0) to (-b2,b1,-b0). The representative
/// makes the first nonzero of the sign-flipping coefficients positive.
fn is_canonical(b2: i64, _b1: i64, b0: i64) -> bool {
    if b2 != 0 {
        return b2 > 0;
    }
    if b0 != 0 {
        return b0 > 0;
    }
    true
}

/// Scores every canonical irreducible cubic with |b3| <= b_max, H <= h_max
/// owned by the partition slot.
pub fn sep_survey(params: &SurveyParams, partition: Partition) -> Result<SurveyResult> {
    params.validate()?;
    let mut result = SurveyResult::empty();
    let h = params.h_max;
    let span = (2 * h + 1) as usize;
    let exp_b = Rat::from(Int::from(2)) + &params.s;
    let exp_a = Rat::from(Int::from(2)) - &params.t;
    for b3 in 1..=params.b_max {
        for b2 in -h..=h {
            let linear = (b3 - 1) as usize * span + (b2 + h) as usize;
            if !partition.owns(linear) {
                continue;
            }
            for b1 in -h..=h {
                for b0 in -h..=h {
                    if !is_canonical(b2, b1, b0) {
                        continue;
                    }
                    let poly = IntPoly::cubic(b3, b2, b1, b0);
                    if !is_irreducible_cubic(&poly)? {
                        continue;
                    }
                    let record = score_poly(&poly, &exp_b, &exp_a, params.precision_bits)?;
                    result.surveyed += 1;
                    result.min_score = Some(match result.min_score.take() {
                        None => record.score.clone(),
                        Some(m) => RatInterval::new(
                            m.lo.min(record.score.lo.clone()),
                            m.hi.min(record.score.hi.clone()),
                        ),
                    });
                    result.records.push(record);
                    if result.records.len() > 4 * params.top_k.max(1) {
                        sort_records(&mut result.records);
                        result.records.truncate(params.top_k);
                    }
                }
            }
        }
    }
    sort_records(&mut result.records);
    result.records.truncate(params.top_k);
    Ok(result)
}

fn score_poly(poly: &IntPoly, exp_b: &Rat, exp_a: &Rat, bits: u32) -> Result<SurveyRecord> {
    let sep = separation(poly, bits)?;
    let b = poly.leading().abs();
    let a = Rat::new(poly.height(), b.clone());
    let b_pow = pow_rat(&Rat::from(b.clone()), exp_b, bits);
    let a_pow = pow_rat(&a, exp_a, bits);
    let score = sep.as_interval().mul(&b_pow).mul(&a_pow);
    Ok(SurveyRecord {
        poly: poly.clone(),
        b,
        a,
        sep,
        score,
    })
}

/// Runs the survey over `workers` partitions and merges deterministically.
pub fn sep_survey_parallel(params: &SurveyParams, workers: usize) -> Result<SurveyResult> {
    params.validate()?;
    let parts = run_partitioned(workers.max(1), |p| sep_survey(params, p));
    let mut acc = SurveyResult::empty();
    for part in parts {
        acc = acc.merge(part?, params.top_k);
    }
    Ok(acc)
}
