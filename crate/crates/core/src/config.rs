//! Run configuration from defaults, a `key=value` file and command-line
//! flags, in increasing order of precedence.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;

use crate::engine::EngineConfig;
use crate::error::{Error, Result};
use crate::protocol::{DeliveryClock, RoutingMode};
use crate::routing::DEFAULT_EPSILON_MBPS;
use crate::topology::{TopologyParams, DEFAULT_BUFFER_PACKETS};

pub const DEFAULT_MULTI_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Single,
    Multi,
}

impl Mode {
    fn parse(s: &str) -> Option<Mode> {
        match s {
            "single" => Some(Mode::Single),
            "multi" => Some(Mode::Multi),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub prefixes: usize,
    pub interests: usize,
    pub mode: Mode,
    /// Paths per FIB entry in multi mode; single mode always uses one.
    pub k: usize,
    /// `Some` requests a paired batch instead of a single run.
    pub runs: Option<usize>,
    pub horizon_s: f64,
    pub interest_window_s: f64,
    pub path_updates_per_s: f64,
    pub load_window_s: f64,
    pub buffer_packets: usize,
    pub propagation_delay_s: f64,
    pub smoothing_window: usize,
    pub warmup_s: f64,
    pub cooldown_start_s: f64,
    pub epsilon_mbps: f64,
    pub histogram_bin_s: f64,
    pub delivery_clock: DeliveryClock,
    pub out_dir: PathBuf,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            seed: 1,
            nodes: 10,
            edges: 30,
            prefixes: 15,
            interests: 1000,
            mode: Mode::Single,
            k: DEFAULT_MULTI_K,
            runs: None,
            horizon_s: 1000.0,
            interest_window_s: 950.0,
            path_updates_per_s: 5.0,
            load_window_s: 1.0,
            buffer_packets: DEFAULT_BUFFER_PACKETS,
            propagation_delay_s: 0.0,
            smoothing_window: 5,
            warmup_s: 50.0,
            cooldown_start_s: 950.0,
            epsilon_mbps: DEFAULT_EPSILON_MBPS,
            histogram_bin_s: 0.05,
            delivery_clock: DeliveryClock::FromInterest,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl SimulationConfig {
    pub fn routing_mode(&self) -> RoutingMode {
        self.routing_mode_for(self.mode)
    }

    pub fn routing_mode_for(&self, mode: Mode) -> RoutingMode {
        match mode {
            Mode::Single => RoutingMode::SinglePath,
            Mode::Multi => RoutingMode::MultiPath(self.k),
        }
    }

    pub fn topology_params(&self) -> TopologyParams {
        TopologyParams {
            nodes: self.nodes,
            edges: self.edges,
            prefixes: self.prefixes,
            buffer_packets: self.buffer_packets,
        }
    }

    pub fn engine_config(&self, mode: RoutingMode) -> EngineConfig {
        EngineConfig {
            mode,
            horizon_s: self.horizon_s,
            path_updates_per_s: self.path_updates_per_s,
            load_window_s: self.load_window_s,
            propagation_delay_s: self.propagation_delay_s,
            epsilon_mbps: self.epsilon_mbps,
            delivery_clock: self.delivery_clock,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |msg: String| Err(Error::Usage(msg));
        if let Err(Error::Parameter(msg)) = self.topology_params().validate() {
            return usage(msg);
        }
        if self.k < 1 {
            return usage(format!("k={}: k must be at least 1", self.k));
        }
        if self.runs == Some(0) {
            return usage("runs=0: at least one run is required".into());
        }
        let positive = [
            ("horizon_s", self.horizon_s),
            ("interest_window_s", self.interest_window_s),
            ("path_updates_per_s", self.path_updates_per_s),
            ("load_window_s", self.load_window_s),
            ("epsilon_mbps", self.epsilon_mbps),
            ("histogram_bin_s", self.histogram_bin_s),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return usage(format!("{name}={v}: must be positive"));
            }
        }
        if self.propagation_delay_s.is_nan() || self.propagation_delay_s < 0.0 {
            return usage(format!(
                "propagation_delay_s={}: must be non-negative",
                self.propagation_delay_s
            ));
        }
        if !(self.warmup_s >= 0.0 && self.warmup_s < self.cooldown_start_s && self.cooldown_start_s <= self.horizon_s) {
            return usage(format!(
                "warmup_s={} cooldown_start_s={} horizon_s={}: need warmup < cooldown <= horizon",
                self.warmup_s, self.cooldown_start_s, self.horizon_s
            ));
        }
        if self.interest_window_s > self.horizon_s {
            return usage(format!(
                "interest_window_s={}: must not exceed horizon_s={}",
                self.interest_window_s, self.horizon_s
            ));
        }
        if self.smoothing_window < 1 {
            return usage("smoothing_window=0: must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "icnsim",
    about = "Single-path vs multi-path ICN routing simulator",
    disable_version_flag = true
)]
struct Flags {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    prefixes: Option<usize>,
    /// Number of requests (1000, 5000, 10000 and 20000 are the usual sizes)
    #[arg(long)]
    interests: Option<usize>,
    #[arg(long, value_parser = ["single", "multi"])]
    mode: Option<String>,
    /// Paths per request in multi mode (default 3)
    #[arg(long)]
    k: Option<usize>,
    /// Run a paired batch over seeds seed..seed+runs-1 in both modes
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long = "out", value_name = "DIR")]
    out: Option<PathBuf>,
    /// Flat key=value file; flags override its values
    #[arg(long = "config", value_name = "FILE")]
    config: Option<PathBuf>,
}

/// Builds a configuration from command-line tokens (without the program name).
///
/// Help requests come back as [`Error::Help`] carrying the rendered text.
pub fn parse_config<I, S>(args: I) -> Result<SimulationConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let tokens = std::iter::once(std::ffi::OsString::from("icnsim")).chain(args.into_iter().map(Into::into));
    let flags = Flags::try_parse_from(tokens).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Error::Help(e.to_string()),
        _ => Error::Usage(e.to_string().trim_end().to_string()),
    })?;

    let mut config = SimulationConfig::default();
    let mut explicit_k = None;
    if let Some(path) = &flags.config {
        explicit_k = apply_file(&mut config, path)?;
    }
    if let Some(v) = flags.seed {
        config.seed = v;
    }
    if let Some(v) = flags.nodes {
        config.nodes = v;
    }
    if let Some(v) = flags.edges {
        config.edges = v;
    }
    if let Some(v) = flags.prefixes {
        config.prefixes = v;
    }
    if let Some(v) = flags.interests {
        config.interests = v;
    }
    if let Some(m) = flags.mode.as_deref() {
        config.mode = Mode::parse(m).expect("clap restricts mode values");
    }
    if let Some(v) = flags.k {
        explicit_k = Some(v);
    }
    if let Some(v) = flags.runs {
        config.runs = Some(v);
    }
    if let Some(v) = flags.out {
        config.out_dir = v;
    }
    if let Some(v) = explicit_k {
        config.k = v;
    }
    if let Some(0) = explicit_k {
        return Err(Error::Usage("--k 0: k must be at least 1".into()));
    }
    config.validate()?;
    Ok(config)
}

/// Applies a config file; returns the `k` it sets, if any.
fn apply_file(config: &mut SimulationConfig, path: &Path) -> Result<Option<usize>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut k = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = || format!("{}:{}", path.display(), i + 1);
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Usage(format!("{}: expected key=value, found `{line}`", at())));
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = || Error::Usage(format!("{}: bad value `{value}` for `{key}`", at()));
        macro_rules! num {
            () => {
                value.parse().map_err(|_| bad())?
            };
        }
        match key {
            "seed" => config.seed = num!(),
            "nodes" => config.nodes = num!(),
            "edges" => config.edges = num!(),
            "prefixes" => config.prefixes = num!(),
            "interests" => config.interests = num!(),
            "mode" => config.mode = Mode::parse(value).ok_or_else(bad)?,
            "k" => k = Some(num!()),
            "runs" => config.runs = Some(num!()),
            "out" => config.out_dir = PathBuf::from(value),
            "horizon_s" => config.horizon_s = num!(),
            "interest_window_s" => config.interest_window_s = num!(),
            "path_updates_per_s" => config.path_updates_per_s = num!(),
            "load_window_s" => config.load_window_s = num!(),
            "buffer_packets" => config.buffer_packets = num!(),
            "propagation_delay_s" => config.propagation_delay_s = num!(),
            "smoothing_window" => config.smoothing_window = num!(),
            "warmup_s" => config.warmup_s = num!(),
            "cooldown_start_s" => config.cooldown_start_s = num!(),
            "epsilon_mbps" => config.epsilon_mbps = num!(),
            "histogram_bin_s" => config.histogram_bin_s = num!(),
            "delivery_clock" => {
                config.delivery_clock = match value {
                    "interest" => DeliveryClock::FromInterest,
                    "data" => DeliveryClock::FromData,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(Error::Usage(format!("{}: unknown key `{key}`", at()))),
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<SimulationConfig> {
        parse_config(args.iter().copied())
    }

    #[test]
    fn no_arguments_gives_defaults() {
        let c = parse(&[]).unwrap();
        assert_eq!((c.nodes, c.edges, c.prefixes), (10, 30, 15));
        assert_eq!(c.horizon_s, 1000.0);
        assert_eq!(c.path_updates_per_s, 5.0);
        assert_eq!(c.routing_mode(), RoutingMode::SinglePath);
        assert_eq!(c, SimulationConfig::default());
    }

    #[test]
    fn multi_defaults_to_three_paths() {
        let c = parse(&["--mode", "multi"]).unwrap();
        assert_eq!(c.k, 3);
        assert_eq!(c.routing_mode(), RoutingMode::MultiPath(3));
        let c = parse(&["--mode", "multi", "--k", "2"]).unwrap();
        assert_eq!(c.routing_mode(), RoutingMode::MultiPath(2));
    }

    #[test]
    fn zero_k_is_a_usage_error() {
        let err = parse(&["--k", "0"]).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("--k 0")), "{err}");
    }

    #[test]
    fn bad_tokens_are_reported() {
        let err = parse(&["--bogus"]).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("--bogus")), "{err}");
        let err = parse(&["--nodes", "ten"]).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("ten")), "{err}");
        let err = parse(&["--mode", "both"]).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("both")), "{err}");
        assert!(matches!(parse(&["--nodes", "3", "--edges", "4"]), Err(Error::Usage(_))));
        assert!(matches!(parse(&["--runs", "0"]), Err(Error::Usage(_))));
        assert!(matches!(parse(&["--help"]), Err(Error::Help(_))));
    }

    #[test]
    fn file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(
            &path,
            "# desk run\nseed = 9\ninterests=5000\nmode=multi\nwarmup_s=10 # short\nsmoothing_window=3\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["--config", p, "--seed", "4"]).unwrap();
        assert_eq!(c.seed, 4);
        assert_eq!(c.interests, 5000);
        assert_eq!(c.k, 3);
        assert_eq!(c.warmup_s, 10.0);
        assert_eq!(c.smoothing_window, 3);
        let c = parse(&["--config", p, "--mode", "single"]).unwrap();
        assert_eq!(c.routing_mode(), RoutingMode::SinglePath);
    }

    #[test]
    fn file_errors_name_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cfg");
        fs::write(&path, "seed=1\ncolour=blue\n").unwrap();
        let err = parse(&["--config", path.to_str().unwrap()]).unwrap_err();
        assert!(
            matches!(&err, Error::Usage(m) if m.contains(":2") && m.contains("colour")),
            "{err}"
        );
        fs::write(&path, "warmup_s=960\n").unwrap();
        assert!(matches!(
            parse(&["--config", path.to_str().unwrap()]),
            Err(Error::Usage(_))
        ));
    }
}
