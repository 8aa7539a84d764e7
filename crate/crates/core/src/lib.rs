//! Threshold systems on the Boolean hypercube: exact separability
//! certificates, a trace distinguisher, counting bounds, orbit dynamics,
//! and a small randomness battery.
//!
//! The crate is organized around one exact decision procedure
//! ([`separability::decide_separable`]) and the structures feeding it:
//! McCulloch-Pitts systems and their traces ([`model`]), the
//! polynomial-time trace test ([`distinguisher`]), counting and
//! probability estimates for threshold dichotomies ([`combinatorics`]),
//! orbit iteration and cycle structure ([`dynamics`]), and bit-stream
//! statistics ([`bitstats`]).  Everything randomized is driven by seeded
//! ChaCha8 substreams ([`rng`]) and reproduces bit for bit.

pub mod bitstats;
pub mod combinatorics;
pub mod distinguisher;
pub mod dynamics;
pub mod model;
pub mod rng;
pub mod separability;
pub mod stream;

mod simplex;

pub use bitstats::{run_battery, run_battery_with, BatteryParams, BatteryReport, TestResult};
pub use distinguisher::{distinguish, distinguish_refined, Rejection, Verdict};
pub use dynamics::{
    find_cycle, first_bit_stream, prefix_projection, random_system, search_pseudorandom_system,
    trajectory, CandidateReport, CycleInfo, SystemGenSpec,
};
pub use model::{
    BigCount, BitVec, Dichotomy, MPSystem, Rational, SystemRepr, ThresholdUnit, Trace,
};
pub use separability::{
    decide_separable, verify_hull_witness, verify_separator, HullWitness, SeparabilityResult,
    Separator,
};
pub use stream::BitStream;
