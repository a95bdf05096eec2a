//! The seeded roundtrip battery behind `slata selftest`.
//!
//!     cargo run --release --example roundtrip_battery -- 7 300

use slata::roundtrip::{verify_roundtrips, RoundtripConfig};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer argument"));
    let seed = args.next().unwrap_or(1);
    let count = args.next().unwrap_or(200) as usize;
    let report = verify_roundtrips(&RoundtripConfig::new(seed, count, 7));
    println!(
        "seed {seed}, {} instances, {} excluded",
        report.instances, report.excluded
    );
    for (name, t) in &report.checks {
        println!("  {name:<24} {:>4} passed {:>3} failed", t.passed, t.failed);
    }
    for (name, n) in &report.stats {
        println!("  {name:<34} {n:>4}");
    }
    if let Some(c) = &report.first_counterexample {
        println!(
            "first counterexample: {}",
            serde_json::to_string(c).unwrap()
        );
    }
}
