//! `mcpitts` — command-line front end for threshold-system experiments.
//!
//! Subcommands wrap the library 1:1: trace distinguishing, separability
//! certificates, trajectory simulation, instance generation, counting
//! bounds, Monte-Carlo estimates, the randomness battery, and the
//! pseudorandom-system search.  Every randomized command requires an
//! explicit `--seed` and is bit-for-bit reproducible; every command
//! offers `--json`.
//!
//! Exit codes: 0 for success (or a positive verdict), 1 for a negative
//! verdict (not McCulloch-Pitts, inseparable, battery fail), 2 for any
//! input or usage error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{env, fs};

use clap::{Parser, Subcommand};
use serde_json::json;

use mcpitts::bitstats::{run_battery_with, BatteryParams, BatteryReport};
use mcpitts::combinatorics::{
    count_separable_with_limit, estimate_separability_probability, paper_bound,
    phase_transition_sweep, probability_bound, sauer_shelah_bound, EstimateReport, PointModel,
    DEFAULT_COUNT_LIMIT,
};
use mcpitts::distinguisher::{
    bit_dichotomy, distinguish, distinguish_refined, generate_mp_trace, generate_random_trace,
    Rejection, Verdict,
};
use mcpitts::dynamics::{
    find_cycle, first_bit_stream, prefix_projection, random_system, search_pseudorandom_system,
    trajectory, CandidateReport, SystemGenSpec,
};
use mcpitts::separability::{decide_separable, HullWitness, SeparabilityResult, Separator};
use mcpitts::{BitStream, BitVec, Dichotomy, MPSystem, SystemRepr, Trace};

#[derive(Parser)]
#[command(
    name = "mcpitts",
    version,
    about = "Threshold dynamical systems on the hypercube: \
distinguish traces, certify separability, simulate orbits, count, estimate, and test streams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a trace of (input, output) pairs is consistent with
    /// a threshold system; prints `McCulloch-Pitts` or `not
    /// McCulloch-Pitts`
    Distinguish {
        /// Trace file: one `<bits> <bits>` pair per line, `#` comments
        trace_file: PathBuf,
        /// Test every output bit position instead of only the first
        #[arg(long)]
        refined: bool,
        /// Also print the evidence (separators or a rejection) as JSON
        #[arg(long)]
        json: bool,
    },
    /// Decide linear separability of labeled points and print an exact
    /// certificate either way
    Separable {
        /// Points file: one `<bits> <+|->` per line, `#` comments
        points_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Iterate a system: trajectory, first-bit stream, prefix stream, or
    /// cycle structure
    Simulate {
        /// System file (JSON)
        system_file: PathBuf,
        /// Start state, e.g. 101001
        #[arg(long)]
        start: String,
        /// Number of iteration steps
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Print the first-bit stream of steps bits instead of states
        #[arg(long, conflicts_with_all = ["prefix", "cycle"])]
        first_bit: bool,
        /// Print the m-bit prefix of each successive state
        #[arg(long, value_name = "M", conflicts_with = "cycle")]
        prefix: Option<usize>,
        /// Report the orbit's tail and period instead of states
        #[arg(long)]
        cycle: bool,
        /// Iteration allowance for --cycle
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// With --first-bit: write packed bytes (8 bits/byte, first bit
        /// most significant) to stdout
        #[arg(long, requires = "first_bit", conflicts_with = "json")]
        packed: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random system file or a trace file
    #[command(subcommand)]
    Gen(GenCommand),
    /// Counting bounds: separable-dichotomy bound (default), the
    /// Sauer-Shelah bound (--sauer), or the probability bound (--prob)
    Bound {
        /// Number of points
        #[arg(long)]
        m: u64,
        /// Dimension
        #[arg(long)]
        n: u64,
        /// Print the Sauer-Shelah bound instead
        #[arg(long, conflicts_with = "prob")]
        sauer: bool,
        /// Print the separability probability bound (exact rational)
        #[arg(long)]
        prob: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count the separable dichotomies of a point set exactly
    Count {
        /// Points file: one `<bits>` per line, `#` comments
        points_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Monte-Carlo estimate of the probability that m random labeled
    /// points of {0,1}^n are separable (with 95% confidence interval)
    Estimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Draw m distinct points instead of i.i.d. points
        #[arg(long, conflicts_with = "full_cube")]
        distinct_only: bool,
        /// Use all 2^n cube points (m must equal 2^n); only labels vary
        #[arg(long)]
        full_cube: bool,
        #[arg(long)]
        json: bool,
    },
    /// Estimate across several m/n ratios in one seeded run (CSV output)
    Sweep {
        #[arg(long)]
        n: usize,
        /// Comma-separated m/n ratios, e.g. 1,1.5,2,2.5,3,4
        #[arg(long)]
        ratios: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the five-test randomness battery on a bit stream
    Battery {
        /// Stream file: ASCII '0'/'1' (whitespace ignored), or bytes with
        /// --packed
        stream_file: PathBuf,
        /// Two-sided significance level
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
        /// Read the stream as packed bytes (8 bits/byte, MSB first)
        #[arg(long)]
        packed: bool,
        /// Block length for the block-frequency test
        #[arg(long, default_value_t = 128)]
        block_len: usize,
        /// Lag for the autocorrelation test
        #[arg(long, default_value_t = 1)]
        lag: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search seeded random systems for one whose first-bit stream passes
    /// the most battery tests (ties broken toward longer periods)
    Search {
        /// System dimension
        #[arg(long)]
        n: usize,
        /// First-bit stream length per attempt
        #[arg(long)]
        len: usize,
        #[arg(long)]
        attempts: usize,
        #[arg(long)]
        seed: u64,
        /// Two-sided significance level for the battery
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Generate a random system file (integer weights and thresholds)
    System {
        #[arg(long)]
        n: usize,
        /// Lowest weight value
        #[arg(long, default_value_t = -8)]
        wlow: i64,
        /// Highest weight value
        #[arg(long, default_value_t = 8)]
        whigh: i64,
        /// Lowest threshold value
        #[arg(long, default_value_t = -8)]
        tlow: i64,
        /// Highest threshold value
        #[arg(long, default_value_t = 8)]
        thigh: i64,
        #[arg(long)]
        seed: u64,
        /// Write to a file instead of stdout
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a trace file: system outputs (--mp) or uniform noise
    /// (--random)
    Trace {
        /// Pair random inputs with this system's outputs
        #[arg(long, value_name = "SYSTEM_FILE", conflicts_with_all = ["random", "n"])]
        mp: Option<PathBuf>,
        /// Pair random inputs with independent random outputs
        #[arg(long, requires = "n")]
        random: bool,
        /// Dimension (with --random)
        #[arg(long)]
        n: Option<usize>,
        /// Number of (input, output) pairs
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        /// Write to a file instead of stdout
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `mcpitts … | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Distinguish {
            trace_file,
            refined,
            json,
        } => {
            let trace = parse_trace(&read_file(&trace_file)?)?;
            let verdict = if refined {
                distinguish_refined(&trace)
            } else {
                distinguish(&trace)
            };
            println!("{}", verdict.message());
            if json {
                println!("{}", pretty(&verdict_json(&verdict, &trace)));
            }
            Ok(if verdict.is_mcculloch_pitts() { 0 } else { 1 })
        }
        Command::Separable { points_file, json } => {
            let labeled = parse_labeled_points(&read_file(&points_file)?)?;
            let width = labeled[0].0.width();
            let d = Dichotomy::from_labeled(width, labeled).map_err(|e| e.to_string())?;
            let result = decide_separable(&d);
            if json {
                println!("{}", pretty(&separability_json(&d, &result)));
            } else {
                print_separability(&d, &result);
            }
            Ok(if result.is_separable() { 0 } else { 1 })
        }
        Command::Simulate {
            system_file,
            start,
            steps,
            first_bit,
            prefix,
            cycle,
            budget,
            packed,
            json,
        } => {
            let system = parse_system(&read_file(&system_file)?)?;
            let start: BitVec = start.parse().map_err(|e| format!("--start: {e}"))?;
            if cycle {
                let info = find_cycle(&system, &start, budget).map_err(|e| e.to_string())?;
                if json {
                    println!(
                        "{}",
                        pretty(&json!({ "tail": info.tail, "period": info.period }))
                    );
                } else {
                    println!("tail: {}", info.tail);
                    println!("period: {}", info.period);
                }
            } else if first_bit {
                let stream = first_bit_stream(&system, &start, steps).map_err(|e| e.to_string())?;
                if packed {
                    let mut out = std::io::stdout().lock();
                    out.write_all(&stream.to_packed_bytes())
                        .map_err(|e| e.to_string())?;
                    out.flush().map_err(|e| e.to_string())?;
                } else if json {
                    println!(
                        "{}",
                        pretty(&json!({ "len": stream.len(), "bits": stream.to_string() }))
                    );
                } else {
                    print!("{}", stream.to_ascii_lines());
                }
            } else if let Some(m) = prefix {
                let states = trajectory(&system, &start, steps).map_err(|e| e.to_string())?;
                let mut prefixes = Vec::with_capacity(steps);
                for state in states.iter().take(steps) {
                    prefixes.push(prefix_projection(&system, state, m).map_err(|e| e.to_string())?);
                }
                print_states(&prefixes, json);
            } else {
                let states = trajectory(&system, &start, steps).map_err(|e| e.to_string())?;
                print_states(&states, json);
            }
            Ok(0)
        }
        Command::Gen(what) => run_gen(what),
        Command::Bound {
            m,
            n,
            sauer,
            prob,
            json,
        } => {
            let (kind, value) = if prob {
                ("probability", probability_bound(m, n).to_string())
            } else if sauer {
                ("sauer_shelah", sauer_shelah_bound(m, n).to_string())
            } else {
                ("separable_dichotomies", paper_bound(m, n).to_string())
            };
            if json {
                println!(
                    "{}",
                    pretty(&json!({ "m": m, "n": n, "kind": kind, "value": value }))
                );
            } else {
                println!("{value}");
            }
            Ok(0)
        }
        Command::Count { points_file, json } => {
            let points = parse_points(&read_file(&points_file)?)?;
            let limit = brute_force_limit()?;
            let count = count_separable_with_limit(&points, limit).map_err(|e| e.to_string())?;
            let mut distinct = points.clone();
            distinct.sort();
            distinct.dedup();
            if json {
                println!(
                    "{}",
                    pretty(&json!({
                        "points": points.len(),
                        "distinct_points": distinct.len(),
                        "count": count.to_string(),
                    }))
                );
            } else {
                println!("{count}");
            }
            Ok(0)
        }
        Command::Estimate {
            n,
            m,
            trials,
            seed,
            distinct_only,
            full_cube,
            json,
        } => {
            let model = if full_cube {
                PointModel::FullCube
            } else if distinct_only {
                PointModel::DistinctUniform
            } else {
                PointModel::IidUniform
            };
            let report = estimate_separability_probability(n, m, trials, seed, model)
                .map_err(|e| e.to_string())?;
            if json {
                println!("{}", pretty(&report.to_json()));
            } else {
                println!("{}", EstimateReport::CSV_HEADER);
                println!("{}", report.csv_row());
            }
            Ok(0)
        }
        Command::Sweep {
            n,
            ratios,
            trials,
            seed,
            json,
        } => {
            let ratios = parse_ratios(&ratios)?;
            let reports = phase_transition_sweep(n, &ratios, trials, seed, PointModel::IidUniform)
                .map_err(|e| e.to_string())?;
            if json {
                let rows: Vec<_> = reports.iter().map(EstimateReport::to_json).collect();
                println!("{}", pretty(&serde_json::Value::Array(rows)));
            } else {
                println!("{}", EstimateReport::CSV_HEADER);
                for report in &reports {
                    println!("{}", report.csv_row());
                }
            }
            Ok(0)
        }
        Command::Battery {
            stream_file,
            alpha,
            packed,
            block_len,
            lag,
            json,
        } => {
            let stream = read_stream(&stream_file, packed)?;
            let report = run_battery_with(&stream, alpha, BatteryParams { block_len, lag })
                .map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print_battery(&report);
            }
            Ok(if report.overall_pass { 0 } else { 1 })
        }
        Command::Search {
            n,
            len,
            attempts,
            seed,
            alpha,
            json,
        } => {
            let report =
                search_pseudorandom_system(n, len, alpha, BatteryParams::default(), attempts, seed)
                    .map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print_candidate(&report);
            }
            Ok(0)
        }
    }
}

fn run_gen(what: GenCommand) -> Result<u8, String> {
    match what {
        GenCommand::System {
            n,
            wlow,
            whigh,
            tlow,
            thigh,
            seed,
            out,
            json: _,
        } => {
            let spec = SystemGenSpec {
                n,
                weight_low: wlow,
                weight_high: whigh,
                theta_low: tlow,
                theta_high: thigh,
                seed,
            };
            let system = random_system(&spec).map_err(|e| e.to_string())?;
            let mut text = serde_json::to_string_pretty(&SystemRepr::from_system(&system))
                .expect("system serializes");
            text.push('\n');
            emit(out.as_deref(), &text)
        }
        GenCommand::Trace {
            mp,
            random,
            n,
            m,
            seed,
            out,
            json,
        } => {
            let trace = match (&mp, random) {
                (Some(path), false) => {
                    let system = parse_system(&read_file(path)?)?;
                    generate_mp_trace(&system, m, seed)
                }
                (None, true) => {
                    let n = n.ok_or("--random requires --n")?;
                    generate_random_trace(n, m, seed)
                }
                (None, false) => return Err("choose one of --mp <file> or --random".into()),
                (Some(_), true) => unreachable!("clap forbids --mp with --random"),
            };
            let text = if json {
                let steps: Vec<_> = trace
                    .steps()
                    .iter()
                    .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                    .collect();
                let mut t = pretty(&json!({ "n": trace.width(), "steps": steps }));
                t.push('\n');
                t
            } else {
                render_trace(&trace)
            };
            emit(out.as_deref(), &text)
        }
    }
}

// ---------- input parsing ----------

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_stream(path: &Path, packed: bool) -> Result<BitStream, String> {
    if packed {
        let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        if bytes.is_empty() {
            return Err(format!("{}: empty stream file", path.display()));
        }
        Ok(BitStream::from_packed_bytes(&bytes))
    } else {
        BitStream::from_ascii(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Strip a `#` comment and surrounding whitespace; None for blank lines.
fn payload(raw: &str) -> Option<&str> {
    let line = raw.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        None
    } else {
        Some(line)
    }
}

fn parse_trace(text: &str) -> Result<Trace, String> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let Some(line) = payload(raw) else { continue };
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(x), Some(y), None) => {
                let x: BitVec = x.parse().map_err(|e| format!("line {}: {e}", idx + 1))?;
                let y: BitVec = y.parse().map_err(|e| format!("line {}: {e}", idx + 1))?;
                steps.push((x, y));
            }
            _ => return Err(format!("line {}: expected `<bits> <bits>`", idx + 1)),
        }
    }
    Trace::new(steps).map_err(|e| e.to_string())
}

fn render_trace(trace: &Trace) -> String {
    let mut out = String::new();
    for (x, y) in trace.steps() {
        writeln!(out, "{x} {y}").expect("string write");
    }
    out
}

fn parse_labeled_points(text: &str) -> Result<Vec<(BitVec, bool)>, String> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let Some(line) = payload(raw) else { continue };
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(bits), Some(label), None) => {
                let point: BitVec = bits.parse().map_err(|e| format!("line {}: {e}", idx + 1))?;
                let label = match label {
                    "+" => true,
                    "-" => false,
                    other => {
                        return Err(format!(
                            "line {}: label must be `+` or `-`, got {other:?}",
                            idx + 1
                        ))
                    }
                };
                points.push((point, label));
            }
            _ => return Err(format!("line {}: expected `<bits> <+|->`", idx + 1)),
        }
    }
    if points.is_empty() {
        return Err("no labeled points in file".into());
    }
    Ok(points)
}

fn parse_points(text: &str) -> Result<Vec<BitVec>, String> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let Some(line) = payload(raw) else { continue };
        if line.split_whitespace().count() != 1 {
            return Err(format!(
                "line {}: expected a single `<bits>` token",
                idx + 1
            ));
        }
        points.push(line.parse().map_err(|e| format!("line {}: {e}", idx + 1))?);
    }
    if points.is_empty() {
        return Err("no points in file".into());
    }
    Ok(points)
}

fn parse_system(text: &str) -> Result<MPSystem, String> {
    let repr: SystemRepr = serde_json::from_str(text).map_err(|e| format!("system file: {e}"))?;
    repr.to_system().map_err(|e| format!("system file: {e}"))
}

fn parse_ratios(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("--ratios: {:?} is not a number", tok.trim()))
        })
        .collect()
}

fn brute_force_limit() -> Result<usize, String> {
    match env::var("MP_MAX_BRUTE") {
        Err(env::VarError::NotPresent) => Ok(DEFAULT_COUNT_LIMIT),
        Err(e) => Err(format!("MP_MAX_BRUTE: {e}")),
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| format!("MP_MAX_BRUTE must be a positive integer, got {raw:?}")),
    }
}

// ---------- output rendering ----------

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON always renders")
}

fn print_states(states: &[BitVec], json: bool) {
    if json {
        let list: Vec<String> = states.iter().map(BitVec::to_string).collect();
        println!("{}", pretty(&json!({ "states": list })));
    } else {
        for state in states {
            println!("{state}");
        }
    }
}

fn rationals(values: &[mcpitts::Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn separator_json(s: &Separator) -> serde_json::Value {
    json!({ "normal": rationals(&s.normal), "offset": s.offset.to_string() })
}

fn witness_json(d: &Dichotomy, w: &HullWitness) -> serde_json::Value {
    let side = |points: &[BitVec], coeffs: &[mcpitts::Rational]| -> Vec<serde_json::Value> {
        points
            .iter()
            .zip(coeffs)
            .map(|(p, c)| json!({ "point": p.to_string(), "coeff": c.to_string() }))
            .collect()
    };
    json!({
        "positive": side(d.positives(), &w.positive_coeffs),
        "negative": side(d.negatives(), &w.negative_coeffs),
    })
}

fn verdict_json(verdict: &Verdict, trace: &Trace) -> serde_json::Value {
    match verdict {
        Verdict::McCullochPitts { separators } => {
            let seps: Vec<_> = separators
                .iter()
                .map(|bs| {
                    json!({
                        "position": bs.position,
                        "separator": separator_json(&bs.separator),
                    })
                })
                .collect();
            json!({
                "message": verdict.message(),
                "mcculloch_pitts": true,
                "separators": seps,
            })
        }
        Verdict::NotMcCullochPitts { rejection } => {
            let evidence = match rejection {
                Rejection::Conflict { position, point } => json!({
                    "kind": "conflict",
                    "position": position,
                    "point": point.to_string(),
                }),
                Rejection::Inseparable { position, witness } => {
                    let d = bit_dichotomy(trace, *position)
                        .expect("inseparable rejection implies a conflict-free dichotomy");
                    json!({
                        "kind": "inseparable",
                        "position": position,
                        "witness": witness_json(&d, witness),
                    })
                }
            };
            json!({
                "message": verdict.message(),
                "mcculloch_pitts": false,
                "rejection": evidence,
            })
        }
    }
}

fn separability_json(d: &Dichotomy, result: &SeparabilityResult) -> serde_json::Value {
    match result {
        SeparabilityResult::Separable(s) => json!({
            "separable": true,
            "separator": separator_json(s),
        }),
        SeparabilityResult::Inseparable(w) => json!({
            "separable": false,
            "witness": witness_json(d, w),
        }),
    }
}

fn print_separability(d: &Dichotomy, result: &SeparabilityResult) {
    match result {
        SeparabilityResult::Separable(s) => {
            println!("separable");
            let coords: Vec<String> = rationals(&s.normal);
            println!("normal: [{}]", coords.join(", "));
            println!("offset: {}", s.offset);
        }
        SeparabilityResult::Inseparable(w) => {
            println!("inseparable");
            let side = |name: &str, points: &[BitVec], coeffs: &[mcpitts::Rational]| {
                let terms: Vec<String> = points
                    .iter()
                    .zip(coeffs)
                    .map(|(p, c)| format!("{c} x {p}"))
                    .collect();
                println!("{name}: {}", terms.join(" + "));
            };
            side("positive barycenter", d.positives(), &w.positive_coeffs);
            side("negative barycenter", d.negatives(), &w.negative_coeffs);
        }
    }
}

fn print_battery(report: &BatteryReport) {
    println!("stream length: {}", report.stream_len);
    println!("alpha: {}", report.alpha);
    println!(
        "{:<16} {:>14} {:>14}   result",
        "test", "statistic", "p-value"
    );
    for r in &report.results {
        println!(
            "{:<16} {:>14.6e} {:>14.6e}   {}",
            r.name,
            r.statistic,
            r.p_value,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    for name in &report.not_applicable {
        println!("{name:<16} {:>14} {:>14}   not applicable", "-", "-");
    }
    println!(
        "overall: {}",
        if report.overall_pass { "pass" } else { "FAIL" }
    );
}

fn print_candidate(report: &CandidateReport) {
    println!("attempt: {}", report.attempt);
    println!("start: {}", report.start);
    println!("passes: {}/{}", report.passes, report.battery.results.len());
    match report.cycle {
        Some(c) => println!("cycle: tail {} period {}", c.tail, c.period),
        None => println!("cycle: none within {} steps", report.stream_len),
    }
    print_battery(&report.battery);
    println!("(use --json for the full system and report)");
}

fn emit(out: Option<&Path>, text: &str) -> Result<u8, String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        None => print!("{text}"),
    }
    Ok(0)
}
