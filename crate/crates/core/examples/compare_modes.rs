//! Run the same scenario in single- and multi-path mode and compare.
//!
//!     cargo run --release --example compare_modes -- [seed] [interests]

use icnsim::config::{Mode, SimulationConfig};
use icnsim::runner::{simulate, Scenario};

fn main() -> icnsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(1, |a| a.parse().expect("seed"));
    let config = SimulationConfig {
        seed,
        interests: args.next().map_or(5000, |a| a.parse().expect("interests")),
        ..SimulationConfig::default()
    };
    let scenario = Scenario::generate(&config, seed)?;
    println!(
        "{:<8}{:>14}{:>12}{:>14}{:>12}{:>10}",
        "mode", "avg_delay_s", "std_load", "offered_load", "avg_load", "dropped"
    );
    for mode in [Mode::Single, Mode::Multi] {
        let out = simulate(&config, &scenario, config.routing_mode_for(mode), 0)?;
        let s = out.summary.stats;
        println!(
            "{:<8}{:>14.6}{:>12.2}{:>14.2}{:>12.2}{:>10}",
            out.summary.mode,
            s.avg_delivery_s.unwrap_or(f64::NAN),
            s.std_load_mbps,
            s.offered_load_mbps,
            s.avg_load_mbps,
            s.dropped
        );
    }
    Ok(())
}
