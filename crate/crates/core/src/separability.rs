//! Exact linear-separability decisions with verifiable certificates.
//!
//! A dichotomy (X⁺, X⁻) of hypercube points is *separable* when some
//! hyperplane puts every positive point strictly on one side and every
//! negative point strictly on the other: v·p > t for p ∈ X⁺ and v·q < t
//! for q ∈ X⁻.  Because thresholds fire inclusively, a threshold unit
//! realizes (X⁺, X⁻) exactly when such a strict separator exists — an
//! inclusive separator v·p ≥ θ > v·q can always be nudged to a strict one
//! and vice versa — so this module is the single point of truth the trace
//! distinguisher and the counting routines both lean on.
//!
//! The decision runs on the convex-hull side of Farkas' lemma: (X⁺, X⁻) is
//! inseparable iff conv(X⁺) ∩ conv(X⁻) ≠ ∅, i.e. iff
//!
//!   Σ λ_p·p − Σ μ_q·q = 0,  Σ λ_p = 1,  Σ μ_q = 1,  λ, μ ≥ 0
//!
//! has a solution.  That system has only n+2 rows however many points are
//! involved, so the simplex basis stays small even for long traces.  When
//! it is feasible the multipliers are the inseparability certificate; when
//! it is infeasible the Farkas multipliers π = (y, α, β) of the solver
//! yield the strict separator v = −y, t = (α − β)/2, since v·p ≥ α and
//! v·q ≤ −β with α + β > 0.  Both certificates are checkable in exact
//! arithmetic by short independent code paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::model::{BitVec, Dichotomy, Rational};
use crate::simplex::{solve_eq_nonneg, Feasibility};

/// A strict affine separator: `normal`·p > `offset` on X⁺ and < on X⁻.
/// Produced separators are scaled to primitive integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// An inseparability certificate: convex weights on each side whose
/// barycenters coincide.  Coefficients align with the sorted point lists
/// of the dichotomy they were produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullWitness {
    pub positive_coeffs: Vec<Rational>,
    pub negative_coeffs: Vec<Rational>,
}

/// Outcome of a separability decision, always carrying a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparabilityResult {
    Separable(Separator),
    Inseparable(HullWitness),
}

impl SeparabilityResult {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityResult::Separable(_))
    }

    pub fn separator(&self) -> Option<&Separator> {
        match self {
            SeparabilityResult::Separable(s) => Some(s),
            SeparabilityResult::Inseparable(_) => None,
        }
    }

    pub fn hull_witness(&self) -> Option<&HullWitness> {
        match self {
            SeparabilityResult::Separable(_) => None,
            SeparabilityResult::Inseparable(w) => Some(w),
        }
    }
}

/// Errors from the brute-force oracle guards.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle enumeration is limited to width ≤ {limit}, got {found}")]
    WidthTooLarge { limit: usize, found: usize },
    #[error("oracle enumeration is limited to {limit} points, got {found}")]
    TooManyPoints { limit: usize, found: usize },
    #[error("oracle coefficient bound must be at least 1")]
    BadBound,
}

/// Decide separability of a dichotomy, returning a verifiable certificate
/// either way.  Empty sides are vacuously separable: with no positive
/// points the zero normal with offset 1 works, with no negative points
/// offset −1 works, and with no points at all (0, 0) is returned.
pub fn decide_separable(d: &Dichotomy) -> SeparabilityResult {
    let n = d.width();
    let zero_normal = || vec![Rational::zero(); n];
    match (d.positives().is_empty(), d.negatives().is_empty()) {
        (true, true) => {
            return SeparabilityResult::Separable(Separator {
                normal: zero_normal(),
                offset: Rational::zero(),
            })
        }
        (true, false) => {
            return SeparabilityResult::Separable(Separator {
                normal: zero_normal(),
                offset: Rational::one(),
            })
        }
        (false, true) => {
            return SeparabilityResult::Separable(Separator {
                normal: zero_normal(),
                offset: -Rational::one(),
            })
        }
        (false, false) => {}
    }

    // Hull-intersection system: one column per point, n+2 rows.
    let np = d.positives().len();
    let cols = np + d.negatives().len();
    let mut a = vec![vec![BigInt::ZERO; cols]; n + 2];
    for (j, p) in d.positives().iter().enumerate() {
        for i in p.ones() {
            a[i][j] = BigInt::one();
        }
        a[n][j] = BigInt::one();
    }
    for (j, q) in d.negatives().iter().enumerate() {
        for i in q.ones() {
            a[i][np + j] = -BigInt::one();
        }
        a[n + 1][np + j] = BigInt::one();
    }
    let mut b = vec![BigInt::ZERO; n + 2];
    b[n] = BigInt::one();
    b[n + 1] = BigInt::one();

    match solve_eq_nonneg(&a, &b) {
        Feasibility::Feasible(x) => {
            let witness = HullWitness {
                positive_coeffs: x[..np].to_vec(),
                negative_coeffs: x[np..].to_vec(),
            };
            debug_assert!(verify_hull_witness(d, &witness));
            SeparabilityResult::Inseparable(witness)
        }
        Feasibility::Infeasible(pi) => {
            let normal: Vec<Rational> = pi[..n].iter().map(|y| -y).collect();
            let offset = (&pi[n] - &pi[n + 1]) / Rational::from_integer(2.into());
            let (normal, offset) = to_primitive_integers(normal, offset);
            let sep = Separator { normal, offset };
            debug_assert!(verify_separator(d, &sep));
            SeparabilityResult::Separable(sep)
        }
    }
}

/// Rescale (normal, offset) by a positive rational so that all entries are
/// integers with no common factor.  Strict inequalities are preserved by
/// any positive scaling.
fn to_primitive_integers(normal: Vec<Rational>, offset: Rational) -> (Vec<Rational>, Rational) {
    let mut scale = BigInt::one();
    for v in normal.iter().chain(std::iter::once(&offset)) {
        scale = scale.lcm(v.denom());
    }
    let scaled: Vec<BigInt> = normal
        .iter()
        .chain(std::iter::once(&offset))
        .map(|v| (v * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let mut g = BigInt::ZERO;
    for v in &scaled {
        g = g.gcd(v);
    }
    if g.is_zero() {
        g = BigInt::one(); // the all-zero separator of a vacuous dichotomy
    }
    let mut out: Vec<Rational> = scaled
        .into_iter()
        .map(|v| Rational::from_integer(v / &g))
        .collect();
    let offset = out.pop().expect("offset entry");
    (out, offset)
}

/// Check a separator against a dichotomy in exact arithmetic.  Total: any
/// malformed certificate (wrong arity, non-strict contact) is `false`.
pub fn verify_separator(d: &Dichotomy, s: &Separator) -> bool {
    if s.normal.len() != d.width() {
        return false;
    }
    let dot = |x: &BitVec| -> Rational { x.ones().map(|i| s.normal[i].clone()).sum() };
    d.positives().iter().all(|p| dot(p) > s.offset)
        && d.negatives().iter().all(|q| dot(q) < s.offset)
}

/// Check a hull witness against a dichotomy in exact arithmetic: the
/// coefficients must be nonnegative, sum to one on each side, and balance
/// coordinatewise.  Total: malformed certificates are `false`.
pub fn verify_hull_witness(d: &Dichotomy, w: &HullWitness) -> bool {
    if w.positive_coeffs.len() != d.positives().len()
        || w.negative_coeffs.len() != d.negatives().len()
    {
        return false;
    }
    let all = w.positive_coeffs.iter().chain(&w.negative_coeffs);
    if all.clone().any(|c| c.is_negative()) {
        return false;
    }
    let sum_pos: Rational = w.positive_coeffs.iter().sum();
    let sum_neg: Rational = w.negative_coeffs.iter().sum();
    if !sum_pos.is_one() || !sum_neg.is_one() {
        return false;
    }
    let mut balance = vec![Rational::zero(); d.width()];
    for (p, c) in d.positives().iter().zip(&w.positive_coeffs) {
        for i in p.ones() {
            balance[i] += c;
        }
    }
    for (q, c) in d.negatives().iter().zip(&w.negative_coeffs) {
        for i in q.ones() {
            balance[i] -= c;
        }
    }
    balance.iter().all(Zero::is_zero)
}

const ORACLE_WIDTH_LIMIT: usize = 5;
const ORACLE_POINT_LIMIT: usize = 32;

/// Brute-force ground truth on small instances: search integer normals
/// y ∈ [−bound, bound]^n for one admitting an integer threshold
/// t ∈ [−bound, bound] with y·p > t > y·q throughout.  Completely
/// independent of the simplex path — this is the reference the solver is
/// audited against.  Note the answer is conservative in `bound`: a
/// dichotomy separable only by larger coefficients reports `false`.
pub fn oracle_separable(d: &Dichotomy, bound: i64) -> Result<bool, OracleError> {
    guard(d.width(), d.len(), bound)?;
    let n = d.width();
    let mut y = vec![-bound; n];
    loop {
        // With y fixed, a valid t exists iff some integer of [−bound, bound]
        // lies strictly between the largest negative dot and the smallest
        // positive dot.
        let min_pos = d.positives().iter().map(|p| dot_int(&y, p)).min();
        let max_neg = d.negatives().iter().map(|q| dot_int(&y, q)).max();
        let lo = max_neg.map_or(-bound, |v| (v + 1).max(-bound));
        let hi = min_pos.map_or(bound, |v| (v - 1).min(bound));
        if lo <= hi {
            return Ok(true);
        }
        if !advance(&mut y, bound) {
            return Ok(false);
        }
    }
}

/// Batch form of the oracle: for a fixed sorted point list, report which of
/// the 2^m labelings are separable with coefficients in [−bound, bound].
/// Entry `mask` covers the labeling sending `points[i]` to X⁺ iff bit i of
/// `mask` is set.
pub fn oracle_separable_labelings(points: &[BitVec], bound: i64) -> Result<Vec<bool>, OracleError> {
    let n = points.first().map_or(1, BitVec::width);
    guard(n, points.len(), bound)?;
    assert!(
        points.windows(2).all(|w| w[0] < w[1]),
        "points must be sorted and distinct"
    );
    assert!(points.len() <= 20, "labeling table is limited to 20 points");
    let m = points.len();
    let mut table = vec![false; 1usize << m];
    let mut y = vec![-bound; n];
    let mut dots = vec![0i64; m];
    loop {
        for (slot, p) in dots.iter_mut().zip(points) {
            *slot = dot_int(&y, p);
        }
        't: for t in -bound..=bound {
            let mut mask = 0usize;
            for (i, &v) in dots.iter().enumerate() {
                if v == t {
                    continue 't; // a point on the plane realizes nothing
                }
                if v > t {
                    mask |= 1 << i;
                }
            }
            table[mask] = true;
        }
        if !advance(&mut y, bound) {
            return Ok(table);
        }
    }
}

fn guard(width: usize, len: usize, bound: i64) -> Result<(), OracleError> {
    if width > ORACLE_WIDTH_LIMIT {
        return Err(OracleError::WidthTooLarge {
            limit: ORACLE_WIDTH_LIMIT,
            found: width,
        });
    }
    if len > ORACLE_POINT_LIMIT {
        return Err(OracleError::TooManyPoints {
            limit: ORACLE_POINT_LIMIT,
            found: len,
        });
    }
    if bound < 1 {
        return Err(OracleError::BadBound);
    }
    Ok(())
}

fn dot_int(y: &[i64], p: &BitVec) -> i64 {
    p.ones().map(|i| y[i]).sum()
}

/// Odometer step through [−bound, bound]^n; false when the box is spent.
fn advance(y: &mut [i64], bound: i64) -> bool {
    for slot in y.iter_mut() {
        if *slot < bound {
            *slot += 1;
            return true;
        }
        *slot = -bound;
    }
    false
}
