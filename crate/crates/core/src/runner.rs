//! Single runs and paired batches, from configuration to output files.

use std::path::PathBuf;

use rayon::prelude::*;

use crate::config::{Mode, SimulationConfig};
use crate::engine::{self, InitInterest};
use crate::error::Result;
use crate::metrics::{self, BatchRow, RunLogs, RunSummary};
use crate::protocol::RoutingMode;
use crate::scenario::{generate_scenario, SeedStreams, Stream};
use crate::topology::{generate_topology, Topology};

/// Topology and requests for one seed. Both modes of a pair share it.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub seed: u64,
    pub topology: Topology,
    pub requests: Vec<InitInterest>,
}

impl Scenario {
    pub fn generate(config: &SimulationConfig, seed: u64) -> Result<Self> {
        let streams = SeedStreams::new(seed);
        let topology = generate_topology(&config.topology_params(), &mut streams.rng(Stream::Topology))?;
        let requests = generate_scenario(
            &topology,
            config.interests,
            config.interest_window_s,
            &mut streams.rng(Stream::Scenario),
        );
        Ok(Scenario {
            seed,
            topology,
            requests,
        })
    }
}

/// In-memory result of one run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: RunSummary,
    pub logs: RunLogs,
}

impl RunOutcome {
    pub fn histogram(&self, bin_width: f64) -> Result<Vec<(f64, usize)>> {
        metrics::histogram(&self.logs.delivery_times(), bin_width)
    }
}

/// Runs one scenario in one mode without touching the filesystem.
pub fn simulate(config: &SimulationConfig, scenario: &Scenario, mode: RoutingMode, run_id: u32) -> Result<RunOutcome> {
    let logs = engine::run(&config.engine_config(mode), &scenario.topology, &scenario.requests)?;
    let stats = metrics::summarize(&logs.loads, &logs.packets, config.warmup_s, config.cooldown_start_s);
    let summary = RunSummary {
        run_id,
        mode: mode.label().to_string(),
        interest_count: scenario.requests.len(),
        seed: scenario.seed,
        smoothing_window: config.smoothing_window,
        warmup_s: config.warmup_s,
        cooldown_start_s: config.cooldown_start_s,
        stats,
    };
    Ok(RunOutcome { summary, logs })
}

#[derive(Debug, Clone)]
pub struct SingleRunReport {
    pub outcome: RunOutcome,
    pub files: Vec<PathBuf>,
}

/// One run at `config.seed` in `config.mode`; writes loads.csv, packets.csv,
/// summary.csv and histogram.csv under `config.out_dir`.
pub fn run_single(config: &SimulationConfig) -> Result<SingleRunReport> {
    config.validate()?;
    let scenario = Scenario::generate(config, config.seed)?;
    let outcome = simulate(config, &scenario, config.routing_mode(), 0)?;
    let written = metrics::write_csv(
        &config.out_dir,
        &outcome.logs.loads,
        &outcome.logs.packets,
        &outcome.summary,
    )?;
    let histogram_path = config.out_dir.join("histogram.csv");
    let bins = outcome.histogram(config.histogram_bin_s)?;
    metrics::csv_file(&histogram_path, |w| metrics::write_histogram(w, &bins))?;
    Ok(SingleRunReport {
        outcome,
        files: vec![written.loads, written.packets, written.summary, histogram_path],
    })
}

/// Paired batch: seeds `seed .. seed + runs`, each in single and multi mode
/// on the same scenario. Runs execute in parallel; rows come back in
/// `(run, single, multi)` order and are written to batch.csv.
pub fn run_batch(config: &SimulationConfig, runs: usize) -> Result<Vec<BatchRow>> {
    config.validate()?;
    let jobs: Vec<(u32, u64, Mode)> = (0..runs)
        .flat_map(|r| {
            let seed = config.seed.wrapping_add(r as u64);
            [(r as u32, seed, Mode::Single), (r as u32, seed, Mode::Multi)]
        })
        .collect();
    let summaries: Vec<RunSummary> = jobs
        .par_iter()
        .map(|&(run_id, seed, mode)| {
            let scenario = Scenario::generate(config, seed)?;
            simulate(config, &scenario, config.routing_mode_for(mode), run_id).map(|o| o.summary)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<BatchRow> = summaries.iter().map(BatchRow::from).collect();
    std::fs::create_dir_all(&config.out_dir).map_err(|e| crate::Error::io(&config.out_dir, e))?;
    metrics::csv_file(&config.out_dir.join("batch.csv"), |w| metrics::write_batch(w, &rows))?;
    Ok(rows)
}
