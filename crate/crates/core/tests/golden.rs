//! Byte-for-byte regression pins against recorded baseline runs.
//!
//! These files freeze the output of seeded reference runs: any change to
//! the generator call sequence, the sampling primitives, the orbit code,
//! or report serialization shows up here as a diff, not as a silent
//! drift underneath downstream experiments.

use std::fmt::Write as _;

use mcpitts::bitstats::BatteryParams;
use mcpitts::dynamics::{
    first_bit_stream, random_system, search_pseudorandom_system, trajectory, SystemGenSpec,
};
use mcpitts::model::SystemRepr;
use mcpitts::BitVec;

fn reference_system() -> (mcpitts::MPSystem, BitVec) {
    let sys = random_system(&SystemGenSpec::new(6, 149)).unwrap();
    (sys, "101001".parse().unwrap())
}

#[test]
fn seeded_system_reproduces_its_recorded_form() {
    let (sys, _) = reference_system();
    let mut json = serde_json::to_string_pretty(&SystemRepr::from_system(&sys)).unwrap();
    json.push('\n');
    assert_eq!(json, include_str!("golden/system_n6_seed149.json"));
}

#[test]
fn seeded_trajectory_reproduces_its_recorded_states() {
    let (sys, start) = reference_system();
    let states = trajectory(&sys, &start, 40).unwrap();
    let mut text = String::new();
    for s in &states {
        writeln!(text, "{s}").unwrap();
    }
    assert_eq!(text, include_str!("golden/trajectory_n6_seed149.txt"));
}

#[test]
fn seeded_first_bit_stream_reproduces_its_recorded_dump() {
    let (sys, start) = reference_system();
    let stream = first_bit_stream(&sys, &start, 256).unwrap();
    assert_eq!(
        stream.to_ascii_lines(),
        include_str!("golden/first_bits_n6_seed149.txt")
    );
}

#[test]
fn desk_scale_search_reproduces_its_recorded_baseline_report() {
    let report =
        search_pseudorandom_system(37, 1 << 16, 0.01, BatteryParams::default(), 200, 0).unwrap();
    let mut json = serde_json::to_string_pretty(&report).unwrap();
    json.push('\n');
    assert_eq!(json, include_str!("golden/search_n37_seed0.json"));
}
