//! Paired batch over consecutive seeds, with a win count per metric.
//!
//!     cargo run --release --example batch -- [runs] [out_dir]

use icnsim::config::SimulationConfig;
use icnsim::runner::run_batch;

fn main() -> icnsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs = args.next().map_or(10, |a| a.parse().expect("runs"));
    let config = SimulationConfig {
        interests: 5000,
        out_dir: args.next().unwrap_or_else(|| "out".into()).into(),
        ..SimulationConfig::default()
    };
    let rows = run_batch(&config, runs)?;

    let mut faster = 0;
    let mut steadier = 0;
    let mut diff_sum = 0.0;
    for pair in rows.chunks(2) {
        let (single, multi) = (&pair[0], &pair[1]);
        if let (Some(s), Some(m)) = (single.avg_delivery_s, multi.avg_delivery_s) {
            faster += usize::from(m < s);
            diff_sum += m - s;
        }
        steadier += usize::from(multi.std_load_mbps < single.std_load_mbps);
    }
    println!(
        "multi faster in {faster}/{runs} pairs, mean delay difference {:+.6} s",
        diff_sum / runs as f64
    );
    println!("multi lower load std in {steadier}/{runs} pairs");
    println!("rows in {}", config.out_dir.join("batch.csv").display());
    Ok(())
}
