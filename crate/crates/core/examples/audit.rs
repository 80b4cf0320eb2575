//! Runs the randomized property audit programmatically.
//!
//! cargo run --release --example audit -- [trials] [seed]

use choi_duality::harness::audit::{run_suite, AuditConfig, Suite};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let config = AuditConfig { trials, seed, ..AuditConfig::default() };
    let report = run_suite(Suite::All, &config);
    println!("{}", report.to_table());
    std::process::exit(report.status.code());
}
