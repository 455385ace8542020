//! One run with the default parameters, written to a directory.
//!
//!     cargo run --release --example single_run -- [out_dir] [mode]

use icnsim::config::{Mode, SimulationConfig};
use icnsim::runner::run_single;

fn main() -> icnsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = SimulationConfig {
        out_dir: args.next().unwrap_or_else(|| "out".into()).into(),
        mode: match args.next().as_deref() {
            Some("multi") => Mode::Multi,
            _ => Mode::Single,
        },
        interests: 5000,
        ..SimulationConfig::default()
    };
    let report = run_single(&config)?;
    let s = &report.outcome.summary.stats;
    println!("mode {}", report.outcome.summary.mode);
    println!(
        "delivered {} dropped {} unterminated {}",
        s.delivered, s.dropped, s.unterminated
    );
    println!("avg delivery {:?} s", s.avg_delivery_s);
    println!(
        "offered {:.1} Mbps, mean {:.1} Mbps, std {:.1} Mbps",
        s.offered_load_mbps, s.avg_load_mbps, s.std_load_mbps
    );
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
