//! The polynomial-time trace distinguisher and its n-bit refinement.
//!
//! Given a trace (x^1, y^1), …, (x^m, y^m), the test asks: could some
//! threshold system Φ have produced every pair, i.e. y^i = Φ(x^i)?  For a
//! single output bit this is exactly a linear-separability question — bit
//! position k of Φ is a threshold unit, so the dichotomy
//! X⁺ = {x^i : y^i_k = 1}, X⁻ = {x^i : y^i_k = 0} must be separable, and
//! the same x appearing with both labels is an immediate impossibility.
//! The plain test examines the first bit only; the refined test examines
//! all n positions and reports the first one that fails.
//!
//! Traces produced by an actual system always pass (completeness); traces
//! with uniformly random outputs are rejected with overwhelming
//! probability once m is a modest multiple of n, because separable
//! labelings of m points number at most 2·Σ_{i≤n} C(m−1, i) ≪ 2^m.  Either
//! way the verdict carries a certificate that verifies independently.

use rayon::prelude::*;

use crate::model::{BitVec, Dichotomy, MPSystem, ModelError, Trace};
use crate::rng;
use crate::separability::{decide_separable, HullWitness, SeparabilityResult, Separator};

/// A separator for the dichotomy of one output-bit position (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSeparator {
    pub position: usize,
    pub separator: Separator,
}

/// Why a trace is not McCulloch-Pitts: at some bit position, either one
/// input appears with both output labels, or the labeled inputs are not
/// linearly separable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Conflict {
        position: usize,
        point: BitVec,
    },
    Inseparable {
        position: usize,
        witness: HullWitness,
    },
}

impl Rejection {
    /// The 1-based bit position the rejection concerns.
    pub fn position(&self) -> usize {
        match self {
            Rejection::Conflict { position, .. } => *position,
            Rejection::Inseparable { position, .. } => *position,
        }
    }
}

/// Outcome of a distinguishing run, with evidence either way: separators
/// for every tested position, or a rejection at the first failing one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    McCullochPitts { separators: Vec<BitSeparator> },
    NotMcCullochPitts { rejection: Rejection },
}

impl Verdict {
    pub fn is_mcculloch_pitts(&self) -> bool {
        matches!(self, Verdict::McCullochPitts { .. })
    }

    /// The verdict message, word for word.
    pub fn message(&self) -> &'static str {
        match self {
            Verdict::McCullochPitts { .. } => "McCulloch-Pitts",
            Verdict::NotMcCullochPitts { .. } => "not McCulloch-Pitts",
        }
    }
}

/// The dichotomy of inputs labeled by output bit `position` (1-based).
/// `Err` carries the least input that appears with both labels.
pub fn bit_dichotomy(t: &Trace, position: usize) -> Result<Dichotomy, BitVec> {
    assert!(
        (1..=t.width()).contains(&position),
        "bit position {position} out of range for width {}",
        t.width()
    );
    let labeled = t
        .steps()
        .iter()
        .map(|(x, y)| (x.clone(), y.get(position - 1)));
    Dichotomy::from_labeled(t.width(), labeled).map_err(|e| match e {
        ModelError::ConflictingPoint(p) => p,
        other => unreachable!("trace invariants preclude {other}"),
    })
}

fn examine_position(t: &Trace, position: usize) -> Result<BitSeparator, Rejection> {
    match bit_dichotomy(t, position) {
        Err(point) => Err(Rejection::Conflict { position, point }),
        Ok(d) => match decide_separable(&d) {
            SeparabilityResult::Separable(separator) => Ok(BitSeparator {
                position,
                separator,
            }),
            SeparabilityResult::Inseparable(witness) => {
                Err(Rejection::Inseparable { position, witness })
            }
        },
    }
}

/// The first-bit test: conflict or inseparability of the first-bit
/// dichotomy rejects; otherwise the trace is consistent with some
/// threshold system on that bit and is accepted.
pub fn distinguish(t: &Trace) -> Verdict {
    match examine_position(t, 1) {
        Ok(sep) => Verdict::McCullochPitts {
            separators: vec![sep],
        },
        Err(rejection) => Verdict::NotMcCullochPitts { rejection },
    }
}

/// The refined test: every one of the n bit positions must pass; the
/// first failing position (lowest index) is reported otherwise.  The
/// positions are independent and examined in parallel.
pub fn distinguish_refined(t: &Trace) -> Verdict {
    let mut outcomes: Vec<(usize, Result<BitSeparator, Rejection>)> = (1..=t.width())
        .into_par_iter()
        .map(|pos| (pos, examine_position(t, pos)))
        .collect();
    outcomes.sort_by_key(|(pos, _)| *pos);
    let mut separators = Vec::with_capacity(outcomes.len());
    for (_, outcome) in outcomes {
        match outcome {
            Ok(sep) => separators.push(sep),
            Err(rejection) => return Verdict::NotMcCullochPitts { rejection },
        }
    }
    Verdict::McCullochPitts { separators }
}

/// Sample x^1, …, x^m uniformly (stream 0 of `seed`) and pair each with
/// Φ(x^i).
pub fn generate_mp_trace(system: &MPSystem, m: usize, seed: u64) -> Trace {
    assert!(m >= 1, "a trace needs at least one pair");
    let n = system.dimension();
    let mut xs = rng::substream(seed, 0);
    let steps = (0..m)
        .map(|_| {
            let x = rng::random_bitvec(&mut xs, n);
            let y = system
                .apply(&x)
                .expect("generated input has the system's width");
            (x, y)
        })
        .collect();
    Trace::new(steps).expect("m ≥ 1 and uniform widths")
}

/// Sample both sides of the trace uniformly and independently: x's from
/// stream 0 of `seed`, y's from stream 1, so the two sequences are
/// decoupled and each is a pure function of (seed, index).
pub fn generate_random_trace(n: usize, m: usize, seed: u64) -> Trace {
    assert!(n >= 1, "width must be at least 1");
    assert!(m >= 1, "a trace needs at least one pair");
    let mut xs = rng::substream(seed, 0);
    let mut ys = rng::substream(seed, 1);
    let steps = (0..m)
        .map(|_| {
            (
                rng::random_bitvec(&mut xs, n),
                rng::random_bitvec(&mut ys, n),
            )
        })
        .collect();
    Trace::new(steps).expect("m ≥ 1 and uniform widths")
}
