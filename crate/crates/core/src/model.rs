//! Core data model: bit vectors, exact rationals, threshold units, and
//! McCulloch-Pitts systems.
//!
//! The state space is the Boolean hypercube {0,1}^n.  A threshold unit with
//! weights w ∈ Q^n and threshold θ ∈ Q computes H(Σ_{j : x_j = 1} w_j − θ),
//! where H is the Heaviside step with the inclusive convention H(0) = 1: the
//! unit fires exactly when the weighted sum of its active inputs reaches the
//! threshold.  A system is a family of n such units over n inputs, evaluated
//! simultaneously, giving a map Φ: {0,1}^n → {0,1}^n.
//!
//! All arithmetic on weights and thresholds is exact rational arithmetic;
//! there is no floating point anywhere on a decision path.  Systems whose
//! parameters happen to be integers additionally carry an `i64` mirror of
//! their weight matrix so that bulk simulation avoids heap-allocated bignum
//! traffic, but the mirror is built only when it is exactly representable
//! and both paths agree bit for bit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational scalar used for weights, thresholds, and certificates.
pub type Rational = BigRational;

/// Unbounded nonnegative integer used by the counting routines.
pub type BigCount = num_bigint::BigUint;

/// Errors produced while constructing or evaluating model objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("bit vector width {found} does not match expected width {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("unit arity {found} does not match system dimension {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("bit vectors must have width at least 1")]
    EmptyBits,
    #[error("invalid bit character {found:?} at position {position}")]
    BadBitChar { position: usize, found: char },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("point {0} appears with both labels")]
    ConflictingPoint(BitVec),
    #[error("a system needs at least one unit")]
    EmptySystem,
    #[error("declared dimension {declared} does not match unit count {found}")]
    DimensionMismatch { declared: usize, found: usize },
    #[error("a trace needs at least one observation pair")]
    EmptyTrace,
}

/// Parse a rational literal of the form `p` or `p/q` (q ≠ 0), reduced to
/// lowest terms.  This is the single entry point used for every weight,
/// threshold, and certificate coefficient read from text.
pub fn parse_rational(s: &str) -> Result<Rational, ModelError> {
    Rational::from_str(s.trim()).map_err(|_| ModelError::BadRational(s.to_string()))
}

/// A fixed-width vector over {0,1}, packed 64 bits per word.
///
/// Positions are 0-based; position 0 is the *first* coordinate, i.e. the
/// leftmost character of the textual form and the most significant bit of
/// the lexicographic order.  Unused high bits of the last word are kept
/// zero so that equality and hashing can work on the raw words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    width: usize,
    words: Vec<u64>,
}

impl BitVec {
    /// The all-zeros vector of the given width (width ≥ 1).
    pub fn zeros(width: usize) -> Self {
        assert!(width >= 1, "BitVec width must be at least 1");
        BitVec {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    /// Build a vector by evaluating `f` at positions `0..width`.
    pub fn from_fn(width: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = BitVec::zeros(width);
        for i in 0..width {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Build a vector from a slice of Booleans.
    pub fn from_bools(bits: &[bool]) -> Self {
        BitVec::from_fn(bits.len(), |i| bits[i])
    }

    /// Decode a cube index into a vector: bit at position `j` is the
    /// coefficient of 2^(width−1−j) in `index`, so increasing indices
    /// enumerate the cube in lexicographic order.  Requires width ≤ 63.
    pub fn from_index(width: usize, index: u64) -> Self {
        assert!((1..=63).contains(&width), "from_index needs 1 ≤ width ≤ 63");
        assert!(index < (1u64 << width), "index out of range for width");
        BitVec::from_fn(width, |j| (index >> (width - 1 - j)) & 1 == 1)
    }

    /// Inverse of [`BitVec::from_index`].  Requires width ≤ 63.
    pub fn to_index(&self) -> u64 {
        assert!(self.width <= 63, "to_index needs width ≤ 63");
        let mut idx = 0u64;
        for j in 0..self.width {
            idx = (idx << 1) | self.get(j) as u64;
        }
        idx
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Read the bit at `position` (0-based; panics when out of range).
    pub fn get(&self, position: usize) -> bool {
        assert!(position < self.width, "bit position out of range");
        (self.words[position / 64] >> (position % 64)) & 1 == 1
    }

    /// Write the bit at `position` (0-based; panics when out of range).
    pub fn set(&mut self, position: usize, value: bool) {
        assert!(position < self.width, "bit position out of range");
        let mask = 1u64 << (position % 64);
        if value {
            self.words[position / 64] |= mask;
        } else {
            self.words[position / 64] &= !mask;
        }
    }

    /// The first coordinate, i.e. the bit at position 0.
    pub fn first_bit(&self) -> bool {
        self.get(0)
    }

    /// Number of set positions.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterate over all bits in position order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| self.get(i))
    }

    /// Iterate over the set positions in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(64 * k + b)
                }
            })
        })
    }

    /// Raw packed words, least significant bit first within each word.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Construct from raw words, masking any bits beyond `width`.
    pub fn from_words(width: usize, mut words: Vec<u64>) -> Self {
        assert!(width >= 1, "BitVec width must be at least 1");
        assert_eq!(words.len(), width.div_ceil(64), "word count mismatch");
        let tail = width % 64;
        if tail != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << tail) - 1;
        }
        BitVec { width, words }
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitVec {
    /// Lexicographic order with position 0 most significant; widths are
    /// compared first so mixed-width collections still sort consistently.
    fn cmp(&self, other: &Self) -> Ordering {
        self.width.cmp(&other.width).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                // Reversing the bits puts position 64k at the top, which is
                // exactly lexicographic significance.
                let ord = a.reverse_bits().cmp(&b.reverse_bits());
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        if s.is_empty() {
            return Err(ModelError::EmptyBits);
        }
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(ModelError::BadBitChar {
                        position: i,
                        found: c,
                    })
                }
            }
        }
        Ok(v)
    }
}

/// A single linear threshold unit: weights w ∈ Q^k and threshold θ ∈ Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdUnit {
    weights: Vec<Rational>,
    theta: Rational,
}

impl ThresholdUnit {
    /// Build a unit; the arity is the number of weights (≥ 1).
    pub fn new(weights: Vec<Rational>, theta: Rational) -> Self {
        assert!(
            !weights.is_empty(),
            "threshold unit needs at least one weight"
        );
        ThresholdUnit { weights, theta }
    }

    /// Convenience constructor from integer parameters.
    pub fn from_ints(weights: &[i64], theta: i64) -> Self {
        ThresholdUnit::new(
            weights
                .iter()
                .map(|&w| Rational::from_integer(w.into()))
                .collect(),
            Rational::from_integer(theta.into()),
        )
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    /// Evaluate H(Σ_{j : x_j = 1} w_j − θ) with H(0) = 1, exactly.
    pub fn evaluate(&self, x: &BitVec) -> Result<bool, ModelError> {
        if x.width() != self.weights.len() {
            return Err(ModelError::ArityMismatch {
                expected: self.weights.len(),
                found: x.width(),
            });
        }
        let mut acc = Rational::zero();
        for j in x.ones() {
            acc += &self.weights[j];
        }
        Ok(acc >= self.theta)
    }
}

/// Integer mirror of one unit, used for allocation-free bulk simulation.
/// Sums are accumulated in i128, which cannot overflow for any practical
/// dimension (n · 2^63 ≪ 2^127).
#[derive(Debug, Clone)]
struct IntUnit {
    weights: Vec<i64>,
    theta: i64,
}

impl IntUnit {
    fn of(unit: &ThresholdUnit) -> Option<IntUnit> {
        let mut weights = Vec::with_capacity(unit.arity());
        for w in &unit.weights {
            if !w.is_integer() {
                return None;
            }
            weights.push(w.numer().to_i64()?);
        }
        if !unit.theta.is_integer() {
            return None;
        }
        Some(IntUnit {
            weights,
            theta: unit.theta.numer().to_i64()?,
        })
    }

    fn fire(&self, x: &BitVec) -> bool {
        let mut acc: i128 = 0;
        for (k, &word) in x.words().iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let j = 64 * k + w.trailing_zeros() as usize;
                acc += self.weights[j] as i128;
                w &= w - 1;
            }
        }
        acc >= self.theta as i128
    }
}

/// A McCulloch-Pitts system: n threshold units over n shared inputs,
/// evaluated simultaneously as Φ(x) = (f_1(x), …, f_n(x)).
#[derive(Debug, Clone)]
pub struct MPSystem {
    units: Vec<ThresholdUnit>,
    fast: Option<Vec<IntUnit>>,
}

impl MPSystem {
    /// Build a system from n units, each of arity n.
    pub fn new(units: Vec<ThresholdUnit>) -> Result<Self, ModelError> {
        if units.is_empty() {
            return Err(ModelError::EmptySystem);
        }
        let n = units.len();
        for u in &units {
            if u.arity() != n {
                return Err(ModelError::ArityMismatch {
                    expected: n,
                    found: u.arity(),
                });
            }
        }
        let fast = units.iter().map(IntUnit::of).collect::<Option<Vec<_>>>();
        Ok(MPSystem { units, fast })
    }

    /// Convenience constructor from an integer weight matrix and thresholds.
    pub fn from_ints(weights: &[Vec<i64>], thetas: &[i64]) -> Result<Self, ModelError> {
        assert_eq!(weights.len(), thetas.len());
        MPSystem::new(
            weights
                .iter()
                .zip(thetas)
                .map(|(row, &t)| ThresholdUnit::from_ints(row, t))
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[ThresholdUnit] {
        &self.units
    }

    /// Whether the integer fast path is active (exact-arithmetic semantics
    /// are identical either way).
    pub fn has_integer_parameters(&self) -> bool {
        self.fast.is_some()
    }

    /// Apply Φ once: component i of the result is unit i fired on `x`.
    pub fn apply(&self, x: &BitVec) -> Result<BitVec, ModelError> {
        let n = self.dimension();
        if x.width() != n {
            return Err(ModelError::WidthMismatch {
                expected: n,
                found: x.width(),
            });
        }
        if let Some(rows) = &self.fast {
            return Ok(BitVec::from_fn(n, |i| rows[i].fire(x)));
        }
        let mut out = BitVec::zeros(n);
        for (i, unit) in self.units.iter().enumerate() {
            out.set(i, unit.evaluate(x)?);
        }
        Ok(out)
    }

    /// Apply Φ forcing the exact rational path, ignoring any integer
    /// mirror.  Exposed so tests can pin the equivalence of the two paths.
    pub fn apply_exact(&self, x: &BitVec) -> Result<BitVec, ModelError> {
        let n = self.dimension();
        if x.width() != n {
            return Err(ModelError::WidthMismatch {
                expected: n,
                found: x.width(),
            });
        }
        let mut out = BitVec::zeros(n);
        for (i, unit) in self.units.iter().enumerate() {
            out.set(i, unit.evaluate(x)?);
        }
        Ok(out)
    }
}

impl PartialEq for MPSystem {
    fn eq(&self, other: &Self) -> bool {
        self.units == other.units
    }
}

impl Eq for MPSystem {}

/// An ordered pair of disjoint finite subsets (X⁺, X⁻) of one hypercube.
///
/// Both sides are stored sorted lexicographically with duplicates removed,
/// so equal dichotomies have equal representations.  Either side (or both)
/// may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dichotomy {
    width: usize,
    positives: Vec<BitVec>,
    negatives: Vec<BitVec>,
}

impl Dichotomy {
    /// Build a dichotomy over `{0,1}^width`; rejects points of the wrong
    /// width and any point appearing on both sides (reporting the
    /// lexicographically least such point).
    pub fn new(
        width: usize,
        positives: Vec<BitVec>,
        negatives: Vec<BitVec>,
    ) -> Result<Self, ModelError> {
        assert!(width >= 1, "dichotomy width must be at least 1");
        let mut positives = positives;
        let mut negatives = negatives;
        for p in positives.iter().chain(negatives.iter()) {
            if p.width() != width {
                return Err(ModelError::WidthMismatch {
                    expected: width,
                    found: p.width(),
                });
            }
        }
        positives.sort();
        positives.dedup();
        negatives.sort();
        negatives.dedup();
        // Both sides are sorted, so a single merge pass finds the
        // lexicographically least common point if one exists.
        let (mut i, mut j) = (0, 0);
        while i < positives.len() && j < negatives.len() {
            match positives[i].cmp(&negatives[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return Err(ModelError::ConflictingPoint(positives[i].clone())),
            }
        }
        Ok(Dichotomy {
            width,
            positives,
            negatives,
        })
    }

    /// Build from labelled points; `true` labels go to X⁺.  A point seen
    /// with both labels is a conflict (the least such point is reported).
    pub fn from_labeled(
        width: usize,
        points: impl IntoIterator<Item = (BitVec, bool)>,
    ) -> Result<Self, ModelError> {
        let mut seen: BTreeMap<BitVec, (bool, bool)> = BTreeMap::new();
        for (p, label) in points {
            if p.width() != width {
                return Err(ModelError::WidthMismatch {
                    expected: width,
                    found: p.width(),
                });
            }
            let e = seen.entry(p).or_insert((false, false));
            if label {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
        if let Some((p, _)) = seen.iter().find(|(_, &(pos, neg))| pos && neg) {
            return Err(ModelError::ConflictingPoint(p.clone()));
        }
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        for (p, (pos, _)) in seen {
            if pos {
                positives.push(p);
            } else {
                negatives.push(p);
            }
        }
        // BTreeMap iteration is already sorted and duplicate-free.
        Ok(Dichotomy {
            width,
            positives,
            negatives,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Points of X⁺ in lexicographic order.
    pub fn positives(&self) -> &[BitVec] {
        &self.positives
    }

    /// Points of X⁻ in lexicographic order.
    pub fn negatives(&self) -> &[BitVec] {
        &self.negatives
    }

    /// Total number of labelled points.
    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite observation record: pairs (x^i, y^i) with every vector of one
/// common width.  When the trace was produced by a system, y^i = Φ(x^i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    width: usize,
    steps: Vec<(BitVec, BitVec)>,
}

impl Trace {
    pub fn new(steps: Vec<(BitVec, BitVec)>) -> Result<Self, ModelError> {
        let width = match steps.first() {
            None => return Err(ModelError::EmptyTrace),
            Some((x, _)) => x.width(),
        };
        for (x, y) in &steps {
            if x.width() != width {
                return Err(ModelError::WidthMismatch {
                    expected: width,
                    found: x.width(),
                });
            }
            if y.width() != width {
                return Err(ModelError::WidthMismatch {
                    expected: width,
                    found: y.width(),
                });
            }
        }
        Ok(Trace { width, steps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a trace has at least one step by construction
    }

    pub fn steps(&self) -> &[(BitVec, BitVec)] {
        &self.steps
    }
}

/// Serialization form of one unit: every scalar is a rational literal,
/// `"p"` or `"p/q"` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRepr {
    pub weights: Vec<String>,
    pub theta: String,
}

/// Serialization form of a whole system: a declared dimension plus exactly
/// that many units, each of that arity.  This is the on-disk JSON shape
/// (`{"n": ..., "units": [{"weights": [...], "theta": ...}, ...]}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRepr {
    pub n: usize,
    pub units: Vec<UnitRepr>,
}

impl SystemRepr {
    pub fn from_system(system: &MPSystem) -> SystemRepr {
        SystemRepr {
            n: system.dimension(),
            units: system
                .units()
                .iter()
                .map(|u| UnitRepr {
                    weights: u.weights().iter().map(|w| w.to_string()).collect(),
                    theta: u.theta().to_string(),
                })
                .collect(),
        }
    }

    /// Validate and convert back to a live system: the declared `n` must
    /// match the unit count, and every scalar must parse as a rational.
    pub fn to_system(&self) -> Result<MPSystem, ModelError> {
        if self.n != self.units.len() {
            return Err(ModelError::DimensionMismatch {
                declared: self.n,
                found: self.units.len(),
            });
        }
        let units = self
            .units
            .iter()
            .map(|u| {
                let weights = u
                    .weights
                    .iter()
                    .map(|w| parse_rational(w))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ThresholdUnit::new(weights, parse_rational(&u.theta)?))
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        MPSystem::new(units)
    }
}
