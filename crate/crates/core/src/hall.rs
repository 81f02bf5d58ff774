//! Hall-gap search |x^3 - y^2| and the Thue-form inequality scanner.
//!
//! For fixed x the gap |x^3 - y^2| is a convex function of y, so the
//! minimizing y is the integer square root of x^3 or its successor; no wider
//! window is ever needed. All threshold comparisons against the irrational
//! bound x^(1/2-eps) are cleared to exact integer power comparisons.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{sqrt_rat, RatInterval};
use crate::partition::{run_partitioned, Partition};
use crate::poly::IntPoly;
use crate::{Int, Rat};

const RATIO_BITS: u32 = 64;

#[derive(Clone, Debug)]
pub struct HallRecord {
    pub x: Int,
    pub y: Int,
    pub delta: Int,
    /// enclosure of x^(1/2) / delta with 64 fractional bits
    pub ratio: RatInterval,
}

/// Outcome of the per-x gap computation.
#[derive(Clone, Debug)]
pub enum HallOutcome {
    Record(HallRecord),
    /// x^3 is a perfect square (exactly when x is one)
    PerfectPower { x: Int, y: Int },
}

/// The y minimizing |x^3 - y^2| and the resulting gap.
pub fn hall_delta(x: &Int) -> Result<HallOutcome> {
    if !x.is_positive() {
        return Err(Error::InvalidParameter("x must be >= 1".into()));
    }
    let cube = x * x * x;
    let s = cube.sqrt();
    let below = &cube - &s * &s;
    if below.is_zero() {
        return Ok(HallOutcome::PerfectPower {
            x: x.clone(),
            y: s,
        });
    }
    let s1: Int = &s + 1;
    let above = &s1 * &s1 - &cube;
    // below + above = 2s + 1 is odd, so no tie is possible
    let (y, delta) = if below < above { (s, below) } else { (s1, above) };
    let ratio = sqrt_rat(&Rat::from(x.clone()), RATIO_BITS)
        .mul_rat(&Rat::new(Int::one(), delta.clone()));
    Ok(HallOutcome::Record(HallRecord {
        x: x.clone(),
        y,
        delta,
        ratio,
    }))
}

/// Exact test of delta < x^(1/2 - eps) for eps = a/b in [0, 1/2):
/// delta^(2b) < x^(b - 2a).
fn below_hall_threshold(x: &Int, delta: &Int, eps: &Rat) -> bool {
    let a: u32 = eps.numer().try_into().expect("epsilon numerator");
    let b: u32 = eps.denom().try_into().expect("epsilon denominator");
    delta.pow(2 * b) < x.pow(b - 2 * a)
}

/// Exact descending order on x^(1/2)/delta: compare x1 d2^2 vs x2 d1^2,
/// ties by increasing x.
fn ratio_order(a: &HallRecord, b: &HallRecord) -> std::cmp::Ordering {
    let lhs = &a.x * (&b.delta * &b.delta);
    let rhs = &b.x * (&a.delta * &a.delta);
    rhs.cmp(&lhs).then_with(|| a.x.cmp(&b.x))
}

/// All x <= x_max whose gap beats x^(1/2-eps), sorted by ratio descending.
pub fn hall_scan(x_max: i64, eps: &Rat, partition: Partition) -> Result<Vec<HallRecord>> {
    validate_eps(eps, true)?;
    if x_max < 2 {
        return Err(Error::InvalidParameter("x_max must be >= 2".into()));
    }
    let mut out = Vec::new();
    for x in 1..=x_max {
        if !partition.owns(x as usize) {
            continue;
        }
        let xb = Int::from(x);
        if let HallOutcome::Record(rec) = hall_delta(&xb)? {
            if below_hall_threshold(&rec.x, &rec.delta, eps) {
                out.push(rec);
            }
        }
    }
    out.sort_by(ratio_order);
    Ok(out)
}

/// Partitioned scan merged in slot order; identical to a single run.
pub fn hall_scan_parallel(x_max: i64, eps: &Rat, workers: usize) -> Result<Vec<HallRecord>> {
    validate_eps(eps, true)?;
    let parts = run_partitioned(workers.max(1), |p| hall_scan(x_max, eps, p));
    let mut all = Vec::new();
    for part in parts {
        all.append(&mut part?);
    }
    all.sort_by(ratio_order);
    Ok(all)
}

fn validate_eps(eps: &Rat, allow_zero: bool) -> Result<()> {
    let ok = (eps.is_positive() || (allow_zero && eps.is_zero()))
        && eps < &Rat::new(Int::one(), Int::from(2));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "epsilon must lie in [0, 1/2)".into(),
        ))
    }
}

// ---------------------------------------------------------------------------
// Thue forms.
// ---------------------------------------------------------------------------

/// F_a(p, q) = a3 p^3 + a2 p^2 q + a1 p q^2 + a0 q^3 for a = (a0, a1, a2, a3).
pub fn thue_eval(a: &[Int; 4], p: &Int, q: &Int) -> Int {
    assert!(
        !(p.is_zero() && q.is_zero()),
        "(p, q) = (0, 0) is excluded"
    );
    let p2 = p * p;
    let q2 = q * q;
    &a[3] * &p2 * p + &a[2] * &p2 * q + &a[1] * p * &q2 + &a[0] * &q2 * q
}

#[derive(Clone, Debug)]
pub struct ThueRecord {
    pub a: [Int; 4],
    pub p: Int,
    pub q: Int,
    pub value: Int,
    /// enclosure of |F| * ||a||^(4+2eps) / q^(1/2-eps)
    pub score: RatInterval,
}

#[derive(Clone, Debug)]
pub struct ThueScanResult {
    pub records: Vec<ThueRecord>,
    /// enclosure of the minimum score over every scanned triple with F != 0
    pub min_score: Option<RatInterval>,
    /// the triple attaining the minimum (ties by smallest (a, q, p))
    pub min_at: Option<([Int; 4], Int, Int)>,
    pub scanned: u64,
}

/// Exact test of |F| * ||a||^(4+2eps) < q^(1/2-eps) for eps = u/v:
/// |F|^(2v) * ||a||^(8v+4u) < q^(v-2u).
fn below_thue_threshold(f_abs: &Int, norm: &Int, q: &Int, eps: &Rat) -> bool {
    // cheap sound reject: norm >= 1, so a record needs |F|^2 < q
    if f_abs * f_abs >= *q {
        return false;
    }
    let u: u32 = eps.numer().try_into().expect("epsilon numerator");
    let v: u32 = eps.denom().try_into().expect("epsilon denominator");
    f_abs.pow(2 * v) * norm.pow(8 * v + 4 * u) < q.pow(v - 2 * u)
}

/// Candidate for the score minimum: exact comparisons are only spent when a
/// float log-score prefilter cannot separate two triples.
#[derive(Clone, Debug)]
struct MinTracker {
    key_log: f64,
    a: [Int; 4],
    p: Int,
    q: Int,
    f_abs: Int,
    norm: Int,
}

const LOG_MARGIN: f64 = 1e-6;

fn log_score(f_abs: &Int, norm: &Int, q: &Int, eps: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    let eps_f = eps.numer().to_f64().unwrap() / eps.denom().to_f64().unwrap();
    ln_big(f_abs) + (4.0 + 2.0 * eps_f) * ln_big(norm) - (0.5 - eps_f) * ln_big(q)
}

fn ln_big(v: &Int) -> f64 {
    use num_traits::ToPrimitive;
    match v.to_f64() {
        Some(f) if f.is_finite() && f > 0.0 => f.ln(),
        _ => {
            // fall back through the bit length for gigantic values
            let bits = v.bits() as f64;
            bits * std::f64::consts::LN_2
        }
    }
}

/// Exact comparison score(lhs) < score(rhs): cross-multiplied to integers,
/// |F1|^(2v) n1^(8v+4u) q2^(v-2u) < |F2|^(2v) n2^(8v+4u) q1^(v-2u).
fn score_lt_exact(l: &MinTracker, r: &MinTracker, eps: &Rat) -> bool {
    let u: u32 = eps.numer().try_into().expect("epsilon numerator");
    let v: u32 = eps.denom().try_into().expect("epsilon denominator");
    let lhs = l.f_abs.pow(2 * v) * l.norm.pow(8 * v + 4 * u) * r.q.pow(v - 2 * u);
    let rhs = r.f_abs.pow(2 * v) * r.norm.pow(8 * v + 4 * u) * l.q.pow(v - 2 * u);
    lhs < rhs
}

/// Deterministic "is the candidate a new minimum": float prefilter with an
/// exact tie-break, ties resolved toward the smaller (a, q, p).
fn improves_min(cand: &MinTracker, cur: &Option<MinTracker>, eps: &Rat) -> bool {
    let Some(cur) = cur else { return true };
    if cand.key_log < cur.key_log - LOG_MARGIN {
        return true;
    }
    if cand.key_log > cur.key_log + LOG_MARGIN {
        return false;
    }
    if score_lt_exact(cand, cur, eps) {
        return true;
    }
    if score_lt_exact(cur, cand, eps) {
        return false;
    }
    // exactly equal scores: deterministic tuple order
    (&cand.a, &cand.q, &cand.p) < (&cur.a, &cur.q, &cur.p)
}

fn thue_score(f_abs: &Int, norm: &Int, q: &Int, eps: &Rat) -> RatInterval {
    let four_two_eps = Rat::from(Int::from(4)) + Rat::from(Int::from(2)) * eps;
    let half_less_eps = Rat::new(Int::one(), Int::from(2)) - eps;
    let norm_pow = crate::interval::pow_rat(&Rat::from(norm.clone()), &four_two_eps, RATIO_BITS);
    let q_pow = crate::interval::pow_rat(&Rat::from(q.clone()), &half_less_eps, RATIO_BITS);
    norm_pow
        .mul_rat(&Rat::from(f_abs.clone()))
        .div(&q_pow)
}

/// Scans every form with ||a||_inf <= a_max against every reduced p/q with
/// 1 <= q <= q_max and |p| <= 2 q (1 + a_max), keeping the triples with
/// 0 < |F| and score < 1.
pub fn thue_scan(
    a_max: i64,
    q_max: i64,
    eps: &Rat,
    partition: Partition,
) -> Result<ThueScanResult> {
    if a_max < 1 || q_max < 1 {
        return Err(Error::InvalidParameter("a_max, q_max must be >= 1".into()));
    }
    validate_eps(eps, false)?;
    let mut records = Vec::new();
    let mut min: Option<MinTracker> = None;
    let mut scanned = 0u64;
    let mut block_ix = 0usize;
    for a3 in -a_max..=a_max {
        for a2 in -a_max..=a_max {
            let owned = partition.owns(block_ix);
            block_ix += 1;
            if !owned {
                continue;
            }
            for a1 in -a_max..=a_max {
                for a0 in -a_max..=a_max {
                    let a = [Int::from(a0), Int::from(a1), Int::from(a2), Int::from(a3)];
                    let norm = a.iter().map(|c| c.abs()).max().unwrap();
                    if norm.is_zero() {
                        continue;
                    }
                    for q in 1..=q_max {
                        let qb = Int::from(q);
                        let pb = 2 * q * (1 + a_max);
                        for p in -pb..=pb {
                            if num_integer::gcd(p, q) != 1 {
                                continue;
                            }
                            let pbig = Int::from(p);
                            let value = thue_eval(&a, &pbig, &qb);
                            if value.is_zero() {
                                continue;
                            }
                            scanned += 1;
                            let f_abs = value.abs();
                            let cand = MinTracker {
                                key_log: log_score(&f_abs, &norm, &qb, eps),
                                a: a.clone(),
                                p: pbig.clone(),
                                q: qb.clone(),
                                f_abs: f_abs.clone(),
                                norm: norm.clone(),
                            };
                            if improves_min(&cand, &min, eps) {
                                min = Some(cand);
                            }
                            if below_thue_threshold(&f_abs, &norm, &qb, eps) {
                                let score = thue_score(&f_abs, &norm, &qb, eps);
                                records.push(ThueRecord {
                                    a: a.clone(),
                                    p: pbig,
                                    q: qb.clone(),
                                    value,
                                    score,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    sort_thue(&mut records);
    let (min_score, min_at) = match min {
        None => (None, None),
        Some(m) => (
            Some(thue_score(&m.f_abs, &m.norm, &m.q, eps)),
            Some((m.a, m.p, m.q)),
        ),
    };
    Ok(ThueScanResult {
        records,
        min_score,
        min_at,
        scanned,
    })
}

fn sort_thue(records: &mut [ThueRecord]) {
    records.sort_by(|x, y| {
        (&x.score.lo, &x.score.hi, &x.a, &x.q, &x.p).cmp(&(&y.score.lo, &y.score.hi, &y.a, &y.q, &y.p))
    });
}

pub fn thue_scan_parallel(
    a_max: i64,
    q_max: i64,
    eps: &Rat,
    workers: usize,
) -> Result<ThueScanResult> {
    let parts = run_partitioned(workers.max(1), |p| thue_scan(a_max, q_max, eps, p));
    let mut records = Vec::new();
    let mut min: Option<MinTracker> = None;
    let mut scanned = 0u64;
    for part in parts {
        let part = part?;
        records.extend(part.records);
        scanned += part.scanned;
        if let Some((a, p, q)) = part.min_at {
            let value = thue_eval(&a, &p, &q);
            let norm = a.iter().map(|c| c.abs()).max().unwrap();
            let cand = MinTracker {
                key_log: log_score(&value.abs(), &norm, &q, eps),
                f_abs: value.abs(),
                norm,
                a,
                p,
                q,
            };
            if improves_min(&cand, &min, eps) {
                min = Some(cand);
            }
        }
    }
    sort_thue(&mut records);
    let (min_score, min_at) = match min {
        None => (None, None),
        Some(m) => (
            Some(thue_score(&m.f_abs, &m.norm, &m.q, eps)),
            Some((m.a, m.p, m.q)),
        ),
    };
    Ok(ThueScanResult {
        records,
        min_score,
        min_at,
        scanned,
    })
}

/// The cubic with coefficient vector a, so that F_a(p,q) = q^3 P_a(p/q).
pub fn thue_poly(a: &[Int; 4]) -> IntPoly {
    IntPoly::new(a.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    #[test]
    fn hall_delta_small_values() {
        match hall_delta(&int(2)).unwrap() {
            HallOutcome::Record(r) => {
                assert_eq!(r.y, int(3));
                assert_eq!(r.delta, int(1));
            }
            _ => panic!("x = 2 is not a perfect power"),
        }
        match hall_delta(&int(4)).unwrap() {
            HallOutcome::PerfectPower { y, .. } => assert_eq!(y, int(8)),
            _ => panic!("4^3 = 8^2"),
        }
    }

    #[test]
    fn hall_scan_contains_x2() {
        let recs = hall_scan(10, &rat(0, 1), Partition::whole()).unwrap();
        assert!(recs
            .iter()
            .any(|r| r.x == int(2) && r.y == int(3) && r.delta == int(1)));
    }

    #[test]
    fn hall_scan_monotone_in_eps() {
        let loose = hall_scan(10, &rat(0, 1), Partition::whole()).unwrap();
        let tight = hall_scan(10, &rat(49, 100), Partition::whole()).unwrap();
        let loose_x: Vec<&Int> = loose.iter().map(|r| &r.x).collect();
        for r in &tight {
            assert!(loose_x.contains(&&r.x));
        }
    }

    #[test]
    fn hall_scan_partition_determinism() {
        let single = hall_scan_parallel(2000, &rat(0, 1), 1).unwrap();
        let eight = hall_scan_parallel(2000, &rat(0, 1), 8).unwrap();
        let key = |r: &HallRecord| (r.x.clone(), r.y.clone(), r.delta.clone(), r.ratio.clone());
        assert_eq!(
            single.iter().map(key).collect::<Vec<_>>(),
            eight.iter().map(key).collect::<Vec<_>>()
        );
    }

    #[test]
    fn thue_eval_examples() {
        let a = [int(-2), int(0), int(0), int(1)];
        assert_eq!(thue_eval(&a, &int(4), &int(3)), int(10));
        let a = [int(-1), int(0), int(0), int(1)];
        assert_eq!(thue_eval(&a, &int(1), &int(1)), int(0));
        let a = [int(-6), int(-16), int(11), int(2)];
        assert_eq!(thue_eval(&a, &int(584), &int(403)), int(-2));
    }

    #[test]
    fn thue_eval_matches_eval_scaled() {
        let a = [int(-6), int(-16), int(11), int(2)];
        let p = thue_poly(&a);
        assert_eq!(
            thue_eval(&a, &int(7), &int(5)),
            p.eval_scaled(&int(7), &int(5))
        );
    }

    #[test]
    fn thue_scan_records_verify() {
        let res = thue_scan(1, 3, &rat(1, 10), Partition::whole()).unwrap();
        for r in &res.records {
            assert_eq!(thue_eval(&r.a, &r.p, &r.q), r.value);
            assert!(!r.value.is_zero());
            assert!(r.score.lo < rat(1, 1));
        }
        assert!(res.scanned > 0);
    }

    #[test]
    fn thue_scan_partition_determinism() {
        let one = thue_scan_parallel(1, 4, &rat(1, 10), 1).unwrap();
        let four = thue_scan_parallel(1, 4, &rat(1, 10), 4).unwrap();
        assert_eq!(one.scanned, four.scanned);
        assert_eq!(one.min_score, four.min_score);
        assert_eq!(one.records.len(), four.records.len());
    }
}
