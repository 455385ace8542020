//! Interest and data packets, chunk splitting and data responses.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ids::{NodeId, PacketId, PrefixId};
use crate::routing::RoutePath;
use crate::topology::Prefix;

/// 0.1 MB.
pub const INTEREST_BITS: u64 = 800_000;
/// 8 MB, one data chunk.
pub const DATA_BITS: u64 = 64_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PacketKind {
    Interest,
    Data,
}

impl PacketKind {
    pub fn size_bits(self) -> u64 {
        match self {
            PacketKind::Interest => INTEREST_BITS,
            PacketKind::Data => DATA_BITS,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PacketKind::Interest => "Interest",
            PacketKind::Data => "Data",
        }
    }
}

impl fmt::Display for PacketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PacketKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Interest" => Ok(PacketKind::Interest),
            "Data" => Ok(PacketKind::Data),
            other => Err(Error::Parameter(format!("unknown packet kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Delivered,
    Dropped,
    Unterminated,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Delivered => "Delivered",
            Outcome::Dropped => "Dropped",
            Outcome::Unterminated => "Unterminated",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Delivered" => Ok(Outcome::Delivered),
            "Dropped" => Ok(Outcome::Dropped),
            "Unterminated" => Ok(Outcome::Unterminated),
            other => Err(Error::Parameter(format!("unknown outcome `{other}`"))),
        }
    }
}

/// How the chunks of one request are assigned to FIB paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoutingMode {
    /// Every chunk on the rank-0 path.
    SinglePath,
    /// Chunk `i` on path `i mod p`, `p = min(k, available paths)`.
    MultiPath(usize),
}

impl RoutingMode {
    /// Number of paths the FIB has to hold for this mode.
    pub fn k(self) -> usize {
        match self {
            RoutingMode::SinglePath => 1,
            RoutingMode::MultiPath(k) => k,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RoutingMode::SinglePath => "single",
            RoutingMode::MultiPath(_) => "multi",
        }
    }
}

/// Which instant a data packet's delivery time is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DeliveryClock {
    /// The generating interest's creation (end-to-end per chunk).
    #[default]
    FromInterest,
    /// The data packet's own creation at the anchor.
    FromData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packet {
    pub id: PacketId,
    pub kind: PacketKind,
    pub prefix: PrefixId,
    pub chunk: u32,
    pub size_bits: u64,
    /// Source route, frozen at creation.
    pub route: Vec<NodeId>,
    /// Position of the node currently holding the packet.
    pub hop: usize,
    pub created_at: f64,
    pub terminated_at: Option<f64>,
    pub outcome: Option<Outcome>,
}

impl Packet {
    pub fn current_node(&self) -> NodeId {
        self.route[self.hop]
    }

    pub fn next_node(&self) -> Option<NodeId> {
        self.route.get(self.hop + 1).copied()
    }

    pub fn at_final_hop(&self) -> bool {
        self.hop + 1 == self.route.len()
    }

    pub fn terminate(&mut self, outcome: Outcome, at: Option<f64>) {
        self.outcome = Some(outcome);
        self.terminated_at = at;
    }
}

/// Hands out even interest ids; responses take the odd id right after.
#[derive(Debug, Clone, Default)]
pub struct PacketIds {
    next: u64,
}

impl PacketIds {
    pub fn fresh_interest(&mut self) -> PacketId {
        let id = PacketId(self.next);
        self.next += 2;
        id
    }

    /// Upper bound (exclusive) of any id handed out so far, responses included.
    pub fn bound(&self) -> u64 {
        self.next
    }
}

/// One interest per 8 MB chunk of the prefix's data object, routed per mode.
pub fn split_interest(
    prefix: &Prefix,
    paths: &[RoutePath],
    mode: RoutingMode,
    now: f64,
    ids: &mut PacketIds,
) -> Result<Vec<Packet>> {
    if paths.is_empty() {
        return Err(Error::RoutingUnavailable);
    }
    let usable = match mode {
        RoutingMode::SinglePath => 1,
        RoutingMode::MultiPath(k) => k.clamp(1, paths.len()),
    };
    Ok((0..prefix.chunk_count())
        .map(|chunk| Packet {
            id: ids.fresh_interest(),
            kind: PacketKind::Interest,
            prefix: prefix.id,
            chunk,
            size_bits: INTEREST_BITS,
            route: paths[chunk as usize % usable].nodes.clone(),
            hop: 0,
            created_at: now,
            terminated_at: None,
            outcome: None,
        })
        .collect())
}

/// The data chunk answering an interest that reached its anchor.
pub fn make_data_response(interest: &Packet, now: f64, clock: DeliveryClock) -> Result<Packet> {
    if interest.kind != PacketKind::Interest || !interest.at_final_hop() {
        return Err(Error::RouteMismatch {
            packet: interest.id,
            node: interest.current_node(),
            reason: "data response requested before the interest reached its anchor",
        });
    }
    let mut route = interest.route.clone();
    route.reverse();
    Ok(Packet {
        id: interest.id.response(),
        kind: PacketKind::Data,
        prefix: interest.prefix,
        chunk: interest.chunk,
        size_bits: DATA_BITS,
        route,
        hop: 0,
        created_at: match clock {
            DeliveryClock::FromInterest => interest.created_at,
            DeliveryClock::FromData => now,
        },
        terminated_at: None,
        outcome: None,
    })
}

/// Hyphen-joined node ids, e.g. `3-5-7`.
pub fn route_string(nodes: &[NodeId]) -> String {
    let parts: Vec<String> = nodes.iter().map(|n| n.to_string()).collect();
    parts.join("-")
}

pub fn parse_route(s: &str) -> Result<Vec<NodeId>> {
    s.split('-')
        .map(|p| {
            p.parse::<u32>()
                .map(NodeId)
                .map_err(|_| Error::Parameter(format!("bad route `{s}`")))
        })
        .collect()
}
