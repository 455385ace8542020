//! Run logs, CSV output and evaluation statistics.

mod csv;
mod stats;

pub use self::csv::{
    csv_file, read_loads, read_packets, write_batch, write_csv, write_histogram, write_loads, write_packets,
    write_summary, BatchRow, RunFiles, BATCH_HEADER, HISTOGRAM_HEADER, LOADS_HEADER, PACKETS_HEADER, SUMMARY_HEADER,
};
pub use self::stats::{histogram, load_series, smooth, summarize, LoadPoint, RunStats};

use crate::ids::{ChannelId, NodeId, PacketId, PrefixId};
use crate::protocol::{Outcome, PacketKind};

/// One channel's measured load at one path update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadSample {
    pub time: f64,
    pub channel: ChannelId,
    pub from: NodeId,
    pub to: NodeId,
    pub load_mbps: f64,
}

/// Final state of one packet.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketRecord {
    pub id: PacketId,
    pub kind: PacketKind,
    pub prefix: PrefixId,
    pub chunk: u32,
    pub src: NodeId,
    pub dst: NodeId,
    pub created_at: f64,
    pub terminated_at: Option<f64>,
    pub outcome: Outcome,
    pub route: Vec<NodeId>,
}

impl PacketRecord {
    pub fn delivery_time(&self) -> Option<f64> {
        match (self.outcome, self.terminated_at) {
            (Outcome::Delivered, Some(t)) => Some(t - self.created_at),
            _ => None,
        }
    }
}

/// Everything a run produces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunLogs {
    /// Sorted by `(time, channel)`.
    pub loads: Vec<LoadSample>,
    /// Sorted by packet id.
    pub packets: Vec<PacketRecord>,
    /// Requests that found no route (cannot happen on connected topologies).
    pub abandoned_requests: usize,
}

impl RunLogs {
    /// Delivery times of delivered data packets, in packet-id order.
    pub fn delivery_times(&self) -> Vec<f64> {
        self.packets
            .iter()
            .filter(|p| p.kind == PacketKind::Data)
            .filter_map(PacketRecord::delivery_time)
            .collect()
    }
}

/// One row of summary.csv.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub run_id: u32,
    pub mode: String,
    pub interest_count: usize,
    pub seed: u64,
    pub smoothing_window: usize,
    pub warmup_s: f64,
    pub cooldown_start_s: f64,
    pub stats: RunStats,
}
