use std::process::ExitCode;

use icnsim::config::parse_config;
use icnsim::runner::{run_batch, run_single};
use icnsim::Error;

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os().skip(1)) {
        Ok(c) => c,
        Err(Error::Help(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };

    let result = match config.runs {
        Some(runs) => run_batch(&config, runs).map(|rows| {
            for r in &rows {
                let delay = r
                    .avg_delivery_s
                    .map(|d| format!("{d:.6}"))
                    .unwrap_or_else(|| "-".into());
                println!(
                    "run {} seed {} {:6} avg_delivery_s {delay} std_load_mbps {:.3}",
                    r.run_id, r.seed, r.mode, r.std_load_mbps
                );
            }
            println!("wrote {}", config.out_dir.join("batch.csv").display());
        }),
        None => run_single(&config).map(|report| {
            let s = &report.outcome.summary.stats;
            println!(
                "{} mode, seed {}: delivered {} dropped {} unterminated {}",
                report.outcome.summary.mode, config.seed, s.delivered, s.dropped, s.unterminated
            );
            if let Some(d) = s.avg_delivery_s {
                println!(
                    "avg delivery {d:.6} s, std load {:.3} Mbps, offered load {:.3} Mbps",
                    s.std_load_mbps, s.offered_load_mbps
                );
            }
            for f in &report.files {
                println!("wrote {}", f.display());
            }
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
