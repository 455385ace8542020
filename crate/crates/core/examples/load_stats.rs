//! Offered and mean load over time, smoothed, plus the delay histogram.

use icnsim::config::SimulationConfig;
use icnsim::metrics::{load_series, smooth};
use icnsim::protocol::RoutingMode;
use icnsim::runner::{simulate, Scenario};

fn main() -> icnsim::Result<()> {
    let config = SimulationConfig {
        interests: 2000,
        ..SimulationConfig::default()
    };
    let scenario = Scenario::generate(&config, config.seed)?;
    let out = simulate(&config, &scenario, RoutingMode::MultiPath(3), 0)?;

    let series = load_series(&out.logs.loads, config.warmup_s, config.cooldown_start_s);
    let offered: Vec<f64> = series.iter().map(|p| p.offered_mbps).collect();
    let smoothed = smooth(&offered, config.smoothing_window)?;
    println!("time_s,offered_mbps,smoothed_mbps,mean_mbps,std_mbps");
    for (p, s) in series.iter().zip(&smoothed).step_by(250) {
        println!(
            "{:.1},{:.2},{:.2},{:.2},{:.2}",
            p.time, p.offered_mbps, s, p.mean_mbps, p.std_mbps
        );
    }

    println!("bin_start_s,count");
    for (start, count) in out.histogram(0.05)?.iter().take(8) {
        println!("{start:.2},{count}");
    }
    Ok(())
}
