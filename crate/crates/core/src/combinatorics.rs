//! Counting bounds, exact brute-force counts, and Monte-Carlo estimates
//! quantifying how rare separable dichotomies are.
//!
//! The classical function-counting bound says at most 2·Σ_{i=0}^{n} C(m−1, i)
//! of the 2^m dichotomies of m points in {0,1}^n are linearly separable; a
//! Sauer-Shelah argument gives the weaker 2·Σ_{i=0}^{n+1} C(m, i).  Dividing
//! the first bound by 2^m bounds the probability that uniformly random
//! labels on m fixed points are separable — the quantity the Monte-Carlo
//! estimator here measures empirically, with exact Wilson intervals.
//!
//! Everything that is a bound or a count is exact (big integers and big
//! rationals); only the Monte-Carlo hit counts are random, and those are
//! reproducible by seed.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::model::{BigCount, BitVec, Dichotomy, Rational};
use crate::rng;
use crate::separability::decide_separable;

/// Default ceiling on brute-force counting: 2^20 separability calls.
pub const DEFAULT_COUNT_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CombinatoricsError {
    #[error("point-count {found} exceeds the brute-force guard of {limit} points")]
    TooManyPoints { limit: usize, found: usize },
    #[error("points must share one width; found both {first} and {second}")]
    MixedWidths { first: usize, second: usize },
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("dimension and point count must be at least 1")]
    BadShape,
    #[error("the full-cube model needs m = 2^n (n ≤ {limit}), got n={n}, m={m}")]
    FullCubeMismatch { n: usize, m: usize, limit: usize },
    #[error("cannot draw {m} distinct points from a cube of size 2^{n}")]
    DistinctOverflow { m: usize, n: usize },
    #[error("sweep ratios must be positive and finite, got {0}")]
    BadRatio(f64),
}

/// Σ_{i=0}^{min(upto, top)} C(top, i), exactly.
fn binomial_partial_sum(top: u64, upto: u64) -> BigCount {
    let mut term = BigUint::one();
    let mut sum = BigUint::one(); // i = 0
    for i in 0..upto.min(top) {
        term = term * BigUint::from(top - i) / BigUint::from(i + 1);
        sum += &term;
    }
    sum
}

/// The function-counting bound 2·Σ_{i=0}^{n} C(m−1, i) on the number of
/// separable dichotomies of m points in n dimensions (m ≥ 1).
pub fn paper_bound(m: u64, n: u64) -> BigCount {
    assert!(m >= 1, "paper_bound needs at least one point");
    binomial_partial_sum(m - 1, n) * BigUint::from(2u32)
}

/// The Sauer-Shelah style bound 2·Σ_{i=0}^{n+1} C(m, i); always at least
/// [`paper_bound`].
pub fn sauer_shelah_bound(m: u64, n: u64) -> BigCount {
    assert!(m >= 1, "sauer_shelah_bound needs at least one point");
    binomial_partial_sum(m, n + 1) * BigUint::from(2u32)
}

/// The probability form 2^{−m+1}·Σ_{i=0}^{n} C(m−1, i), clamped to 1: an
/// upper bound on the chance that uniform labels on m points of {0,1}^n
/// are separable.
pub fn probability_bound(m: u64, n: u64) -> Rational {
    let numer = BigInt::from(paper_bound(m, n));
    let denom = BigInt::from(BigUint::one() << m);
    let raw = Rational::new(numer, denom);
    if raw > Rational::one() {
        Rational::one()
    } else {
        raw
    }
}

/// Exact probability ∏_{i=0}^{m−1} (1 − i·2^{−n}) that m independent
/// uniform points of {0,1}^n are pairwise distinct (0 when m > 2^n).
pub fn distinct_probability(m: u64, n: u32) -> Rational {
    let cube = BigUint::one() << n;
    if BigUint::from(m) > cube {
        return Rational::zero();
    }
    let mut numer = BigUint::one();
    for i in 0..m {
        numer *= &cube - BigUint::from(i);
    }
    let denom = num_traits::pow::pow(cube, m as usize);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Exact number of separable ordered dichotomies of a point set, by brute
/// force over all 2^|X| labelings (guarded; see [`DEFAULT_COUNT_LIMIT`]).
pub fn count_separable(points: &[BitVec]) -> Result<BigCount, CombinatoricsError> {
    count_separable_with_limit(points, DEFAULT_COUNT_LIMIT)
}

/// [`count_separable`] with an explicit guard, for callers that accept the
/// exponential cost.
pub fn count_separable_with_limit(
    points: &[BitVec],
    limit: usize,
) -> Result<BigCount, CombinatoricsError> {
    let mut points = points.to_vec();
    points.sort();
    points.dedup();
    if let Some(first) = points.first() {
        if let Some(bad) = points.iter().find(|p| p.width() != first.width()) {
            return Err(CombinatoricsError::MixedWidths {
                first: first.width(),
                second: bad.width(),
            });
        }
    }
    let m = points.len();
    if m > limit {
        return Err(CombinatoricsError::TooManyPoints { limit, found: m });
    }
    if m == 0 {
        return Ok(BigCount::one()); // the empty dichotomy, vacuously separable
    }
    let n = points[0].width();
    let full = (1usize << m) - 1;
    let mut count = BigCount::zero();
    for mask in 0..=full {
        // (X⁺, X⁻) is separable iff its swap is (negate the separator), so
        // decide each complementary pair once and credit both labelings.
        if mask > full ^ mask {
            continue;
        }
        let (pos, neg): (Vec<_>, Vec<_>) = points
            .iter()
            .cloned()
            .enumerate()
            .partition(|(i, _)| mask >> i & 1 == 1);
        let d = Dichotomy::new(
            n,
            pos.into_iter().map(|(_, p)| p).collect(),
            neg.into_iter().map(|(_, p)| p).collect(),
        )
        .expect("a partition cannot conflict");
        if decide_separable(&d).is_separable() {
            count += BigCount::from(2u32);
        }
    }
    Ok(count)
}

/// 95% Wilson score interval for `hits` successes in `trials` draws, with
/// z = 49/25 (= 1.96).  Endpoints are exact rationals, rounded *outward*
/// at the square root (precision 10⁻¹⁸) and clamped to [0, 1], so the
/// reported interval always contains the true Wilson interval.
pub fn wilson_interval(hits: u64, trials: u64) -> (Rational, Rational) {
    assert!(trials >= 1, "wilson_interval needs at least one trial");
    assert!(hits <= trials, "hits cannot exceed trials");
    let z2 = Rational::new(BigInt::from(49 * 49), BigInt::from(25 * 25));
    let nt = Rational::from_integer(trials.into());
    let p = Rational::new(BigInt::from(hits), BigInt::from(trials));
    let denom = Rational::one() + &z2 / &nt;
    let center = &p + &z2 / (&nt * Rational::from_integer(2.into()));
    // radicand of z·√(p(1−p)/n + z²/4n²), folded under one square root
    let radicand = &z2
        * (&p * (Rational::one() - &p) / &nt
            + &z2 / (&nt * &nt * Rational::from_integer(4.into())));
    let root_up = sqrt_upper(&radicand);
    let low = ((&center - &root_up) / &denom).max(Rational::zero());
    let high = ((&center + &root_up) / &denom).min(Rational::one());
    (low, high)
}

/// A rational upper bound on √x within 10⁻¹⁸, exact when x is a perfect
/// square of a rational.
fn sqrt_upper(x: &Rational) -> Rational {
    debug_assert!(x >= &Rational::zero());
    let scale = BigUint::from(10u32).pow(18);
    let a = x.numer().magnitude().clone();
    let b = x.denom().magnitude().clone();
    // √(a/b) = √(a·b·K²) / (b·K) for any K > 0.
    let target = &a * &b * &scale * &scale;
    let mut s = target.sqrt(); // floor square root
    if &s * &s != target {
        s += BigUint::one();
    }
    Rational::new(BigInt::from(s), BigInt::from(b * scale))
}

/// How the estimator draws its point sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointModel {
    /// m independent uniform points; duplicates collapse to one labelled
    /// point (labels are drawn per distinct point, in order of first
    /// appearance).
    IidUniform,
    /// Rejection-sample until m distinct points are collected.
    DistinctUniform,
    /// The full cube, in lexicographic order; requires m = 2^n.
    FullCube,
}

/// One Monte-Carlo estimate of the separable-labeling probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateReport {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    pub hits: u64,
    pub point_estimate: Rational,
    pub ci_low: Rational,
    pub ci_high: Rational,
    pub seed: u64,
}

impl EstimateReport {
    pub const CSV_HEADER: &'static str = "n,m,trials,hits,estimate,ci_low,ci_high,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.trials,
            self.hits,
            self.point_estimate,
            self.ci_low,
            self.ci_high,
            self.seed
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "m": self.m,
            "trials": self.trials,
            "hits": self.hits,
            "estimate": self.point_estimate.to_string(),
            "ci_low": self.ci_low.to_string(),
            "ci_high": self.ci_high.to_string(),
            "seed": self.seed,
        })
    }
}

/// Estimate the probability that a random m-point dichotomy of {0,1}^n is
/// separable.  Each trial draws points under `model` from its own ChaCha8
/// substream, labels each distinct point with an independent fair coin,
/// and asks [`decide_separable`]; trials may execute on any number of
/// worker threads without changing the result.
pub fn estimate_separability_probability(
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    model: PointModel,
) -> Result<EstimateReport, CombinatoricsError> {
    estimate_with_stream_base(n, m, trials, seed, model, 0)
}

const FULL_CUBE_DIM_LIMIT: usize = 20;

fn estimate_with_stream_base(
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    model: PointModel,
    stream_base: u64,
) -> Result<EstimateReport, CombinatoricsError> {
    if n < 1 || m < 1 {
        return Err(CombinatoricsError::BadShape);
    }
    if trials < 1 {
        return Err(CombinatoricsError::ZeroTrials);
    }
    match model {
        PointModel::IidUniform => {}
        PointModel::DistinctUniform => {
            if n < 63 && (m as u64) > 1u64 << n {
                return Err(CombinatoricsError::DistinctOverflow { m, n });
            }
        }
        PointModel::FullCube => {
            if n > FULL_CUBE_DIM_LIMIT || m != 1usize << n {
                return Err(CombinatoricsError::FullCubeMismatch {
                    n,
                    m,
                    limit: FULL_CUBE_DIM_LIMIT,
                });
            }
        }
    }
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| trial_is_separable(n, m, seed, stream_base + t, model) as u64)
        .sum();
    let point_estimate = Rational::new(BigInt::from(hits), BigInt::from(trials));
    let (ci_low, ci_high) = wilson_interval(hits, trials);
    Ok(EstimateReport {
        n,
        m,
        trials,
        hits,
        point_estimate,
        ci_low,
        ci_high,
        seed,
    })
}

fn trial_is_separable(n: usize, m: usize, seed: u64, stream: u64, model: PointModel) -> bool {
    let mut rng = rng::substream(seed, stream);
    let points: Vec<BitVec> = match model {
        PointModel::IidUniform => {
            let mut seen = HashSet::with_capacity(m);
            let mut order = Vec::with_capacity(m);
            for _ in 0..m {
                let p = rng::random_bitvec(&mut rng, n);
                if seen.insert(p.clone()) {
                    order.push(p);
                }
            }
            order
        }
        PointModel::DistinctUniform => {
            let mut seen = HashSet::with_capacity(m);
            let mut order = Vec::with_capacity(m);
            while order.len() < m {
                let p = rng::random_bitvec(&mut rng, n);
                if seen.insert(p.clone()) {
                    order.push(p);
                }
            }
            order
        }
        PointModel::FullCube => (0..1u64 << n).map(|i| BitVec::from_index(n, i)).collect(),
    };
    let labeled = points.into_iter().map(|p| (p, rng::coin(&mut rng)));
    let d = Dichotomy::from_labeled(n, labeled).expect("one label per distinct point");
    decide_separable(&d).is_separable()
}

/// Run [`estimate_separability_probability`] at m = ⌈ratio·n⌉ for each
/// ratio, sharing one master seed (each ratio gets a disjoint block of
/// trial substreams, so reports do not correlate across ratios).
pub fn phase_transition_sweep(
    n: usize,
    ratios: &[f64],
    trials: u64,
    seed: u64,
    model: PointModel,
) -> Result<Vec<EstimateReport>, CombinatoricsError> {
    let mut reports = Vec::with_capacity(ratios.len());
    for (idx, &ratio) in ratios.iter().enumerate() {
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(CombinatoricsError::BadRatio(ratio));
        }
        let m = (ratio * n as f64).ceil() as usize;
        reports.push(estimate_with_stream_base(
            n,
            m,
            trials,
            seed,
            model,
            idx as u64 * trials,
        )?);
    }
    Ok(reports)
}
