//! Random connected topologies with full-duplex links and prefix placement.
//!
//! Every undirected edge `e` is realized as two directed channels: `2e` runs
//! from the lower node id to the higher one and `2e + 1` is its reverse twin.
//! Both directions share the same capacity but own separate buffers.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ids::{ChannelId, NodeId, PrefixId};

pub const MIN_CAPACITY_MBPS: f64 = 512.0;
pub const MAX_CAPACITY_MBPS: f64 = 2048.0;
/// Size of one data chunk; every data object is a whole number of chunks.
pub const CHUNK_MB: u32 = 8;
pub const MAX_CHUNKS_PER_OBJECT: u32 = 8;
pub const MAX_ANCHORS: usize = 3;
pub const DEFAULT_BUFFER_PACKETS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub id: ChannelId,
    pub from: NodeId,
    pub to: NodeId,
    pub capacity_mbps: f64,
    pub buffer_packets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix {
    pub id: PrefixId,
    pub size_mb: u32,
    /// Sorted, distinct, non-empty.
    pub anchors: Vec<NodeId>,
}

impl Prefix {
    pub fn chunk_count(&self) -> u32 {
        self.size_mb / CHUNK_MB
    }

    pub fn is_anchor(&self, node: NodeId) -> bool {
        self.anchors.binary_search(&node).is_ok()
    }
}

/// An undirected edge description used to build a [`Topology`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSpec {
    pub a: NodeId,
    pub b: NodeId,
    pub capacity_mbps: f64,
}

impl EdgeSpec {
    pub fn new(a: u32, b: u32, capacity_mbps: f64) -> Self {
        EdgeSpec {
            a: NodeId(a),
            b: NodeId(b),
            capacity_mbps,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    node_count: usize,
    channels: Vec<Channel>,
    prefixes: Vec<Prefix>,
    /// Outgoing `(neighbor, channel)` pairs per node, sorted by neighbor.
    adjacency: Vec<Vec<(NodeId, ChannelId)>>,
    lookup: HashMap<(NodeId, NodeId), ChannelId>,
}

impl Topology {
    /// Builds a topology from explicit edges and prefixes.
    ///
    /// Connectivity is not required here (see [`Topology::is_connected`]);
    /// generated topologies are always connected.
    pub fn new(node_count: usize, edges: &[EdgeSpec], prefixes: Vec<Prefix>, buffer_packets: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::Parameter("topology needs at least one node".into()));
        }
        if buffer_packets == 0 {
            return Err(Error::Parameter("buffer capacity must be positive".into()));
        }
        let mut channels = Vec::with_capacity(edges.len() * 2);
        let mut lookup = HashMap::with_capacity(edges.len() * 2);
        let mut adjacency = vec![Vec::new(); node_count];
        for (e, edge) in edges.iter().enumerate() {
            let (lo, hi) = if edge.a < edge.b {
                (edge.a, edge.b)
            } else {
                (edge.b, edge.a)
            };
            if lo == hi {
                return Err(Error::Parameter(format!("self-loop on node {lo}")));
            }
            if hi.index() >= node_count {
                return Err(Error::Parameter(format!(
                    "edge {e} references node {hi} outside [0, {node_count})"
                )));
            }
            if !(edge.capacity_mbps.is_finite() && edge.capacity_mbps > 0.0) {
                return Err(Error::Parameter(format!(
                    "edge {e} has non-positive capacity {}",
                    edge.capacity_mbps
                )));
            }
            if lookup.contains_key(&(lo, hi)) {
                return Err(Error::Parameter(format!("parallel edge {lo}-{hi}")));
            }
            for (from, to) in [(lo, hi), (hi, lo)] {
                let id = ChannelId(channels.len() as u32);
                channels.push(Channel {
                    id,
                    from,
                    to,
                    capacity_mbps: edge.capacity_mbps,
                    buffer_packets,
                });
                lookup.insert((from, to), id);
                adjacency[from.index()].push((to, id));
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        for (i, p) in prefixes.iter().enumerate() {
            if p.id.index() != i {
                return Err(Error::Parameter(format!("prefix {} out of order", p.id)));
            }
            if p.anchors.is_empty() {
                return Err(Error::Parameter(format!("prefix {} has no anchor", p.id)));
            }
            if p.anchors.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parameter(format!(
                    "prefix {} anchors must be sorted and distinct",
                    p.id
                )));
            }
            if p.anchors.iter().any(|a| a.index() >= node_count) {
                return Err(Error::Parameter(format!("prefix {} anchored outside the graph", p.id)));
            }
            if p.size_mb == 0 || p.size_mb % CHUNK_MB != 0 {
                return Err(Error::Parameter(format!(
                    "prefix {} size {} MB is not a positive multiple of {CHUNK_MB} MB",
                    p.id, p.size_mb
                )));
            }
        }
        Ok(Topology {
            node_count,
            channels,
            prefixes,
            adjacency,
            lookup,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count as u32).map(NodeId)
    }

    pub fn edge_count(&self) -> usize {
        self.channels.len() / 2
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn channel(&self, id: ChannelId) -> &Channel {
        &self.channels[id.index()]
    }

    pub fn prefixes(&self) -> &[Prefix] {
        &self.prefixes
    }

    pub fn prefix(&self, id: PrefixId) -> &Prefix {
        &self.prefixes[id.index()]
    }

    /// Outgoing `(neighbor, channel)` pairs of `node`, sorted by neighbor id.
    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, ChannelId)] {
        &self.adjacency[node.index()]
    }

    /// The directed channel `a -> b`.
    pub fn channel_between(&self, a: NodeId, b: NodeId) -> Result<&Channel> {
        self.channel_id_between(a, b).map(|id| self.channel(id))
    }

    pub fn channel_id_between(&self, a: NodeId, b: NodeId) -> Result<ChannelId> {
        self.lookup
            .get(&(a, b))
            .copied()
            .ok_or(Error::NoSuchChannel { from: a, to: b })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([NodeId(0)]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in self.neighbors(u) {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.node_count
    }

    /// Plain-text adjacency listing.
    ///
    /// ```text
    /// # edges: edge_id,from,to,capacity_mbps
    /// 0,0,1,1024.000000
    /// # prefixes: prefix_id,size_mb,anchors
    /// 0,24,1;3
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::from("# edges: edge_id,from,to,capacity_mbps\n");
        for (e, ch) in self.channels.iter().step_by(2).enumerate() {
            let _ = writeln!(out, "{e},{},{},{:.6}", ch.from, ch.to, ch.capacity_mbps);
        }
        out.push_str("# prefixes: prefix_id,size_mb,anchors\n");
        for p in &self.prefixes {
            let anchors: Vec<String> = p.anchors.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(out, "{},{},{}", p.id, p.size_mb, anchors.join(";"));
        }
        out
    }

    /// Parses the listing produced by [`Topology::to_text`]. Edge lines have
    /// four fields, prefix lines three; `#` lines are ignored.
    pub fn from_text(text: &str, buffer_packets: usize) -> Result<Self> {
        let mut edges = Vec::new();
        let mut prefixes = Vec::new();
        let mut max_node = 0u32;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let bad = |reason: &str| Error::Parse {
                line: line_no,
                reason: reason.to_string(),
            };
            match fields.len() {
                4 => {
                    let id: usize = fields[0].parse().map_err(|_| bad("edge id"))?;
                    if id != edges.len() {
                        return Err(bad("edge ids must be dense and ordered"));
                    }
                    let a: u32 = fields[1].parse().map_err(|_| bad("edge endpoint"))?;
                    let b: u32 = fields[2].parse().map_err(|_| bad("edge endpoint"))?;
                    let cap: f64 = fields[3].parse().map_err(|_| bad("capacity"))?;
                    max_node = max_node.max(a).max(b);
                    edges.push(EdgeSpec::new(a, b, cap));
                }
                3 => {
                    let id: u32 = fields[0].parse().map_err(|_| bad("prefix id"))?;
                    let size_mb: u32 = fields[1].parse().map_err(|_| bad("prefix size"))?;
                    let anchors = fields[2]
                        .split(';')
                        .map(|s| s.parse::<u32>().map(NodeId))
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("anchor list"))?;
                    if let Some(m) = anchors.iter().map(|a| a.0).max() {
                        max_node = max_node.max(m);
                    }
                    prefixes.push(Prefix {
                        id: PrefixId(id),
                        size_mb,
                        anchors,
                    });
                }
                _ => return Err(bad("expected 3 or 4 comma-separated fields")),
            }
        }
        Topology::new(max_node as usize + 1, &edges, prefixes, buffer_packets)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopologyParams {
    pub nodes: usize,
    pub edges: usize,
    pub prefixes: usize,
    pub buffer_packets: usize,
}

impl Default for TopologyParams {
    fn default() -> Self {
        TopologyParams {
            nodes: 10,
            edges: 30,
            prefixes: 15,
            buffer_packets: DEFAULT_BUFFER_PACKETS,
        }
    }
}

impl TopologyParams {
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes;
        if n < 2 {
            return Err(Error::Parameter(format!("need at least 2 nodes, got {n}")));
        }
        let max_edges = n * (n - 1) / 2;
        if self.edges < n - 1 || self.edges > max_edges {
            return Err(Error::Parameter(format!(
                "{} edges on {n} nodes is infeasible (need {} to {max_edges})",
                self.edges,
                n - 1
            )));
        }
        if self.prefixes < 1 {
            return Err(Error::Parameter("need at least one prefix".into()));
        }
        if self.buffer_packets < 1 {
            return Err(Error::Parameter("buffer capacity must be positive".into()));
        }
        Ok(())
    }
}

/// Generates a random connected topology.
///
/// A uniform spanning tree is drawn first (Aldous-Broder walk on the complete
/// graph), then the remaining edges are sampled uniformly from the non-edges.
/// Capacities are uniform on `[512, 2048]` Mbps. Each prefix gets `1..=3`
/// distinct anchors (at most `nodes - 1`, so every prefix has a consumer) and
/// a size drawn uniformly from `{8, 16, ..., 64}` MB.
pub fn generate_topology<R: Rng + ?Sized>(params: &TopologyParams, rng: &mut R) -> Result<Topology> {
    params.validate()?;
    let n = params.nodes;

    let mut in_tree = vec![false; n];
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(params.edges);
    let mut current = rng.gen_range(0..n);
    in_tree[current] = true;
    let mut reached = 1;
    while reached < n {
        let mut next = rng.gen_range(0..n - 1);
        if next >= current {
            next += 1;
        }
        if !in_tree[next] {
            in_tree[next] = true;
            reached += 1;
            pairs.push(ordered(current, next));
        }
        current = next;
    }

    let mut is_edge = vec![false; n * n];
    for &(a, b) in &pairs {
        is_edge[a as usize * n + b as usize] = true;
    }
    let non_edges: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a as u32, b as u32)))
        .filter(|&(a, b)| !is_edge[a as usize * n + b as usize])
        .collect();
    let extra = params.edges - pairs.len();
    for i in index::sample(rng, non_edges.len(), extra).into_vec() {
        pairs.push(non_edges[i]);
    }
    pairs.sort_unstable();

    let edges: Vec<EdgeSpec> = pairs
        .iter()
        .map(|&(a, b)| EdgeSpec::new(a, b, rng.gen_range(MIN_CAPACITY_MBPS..=MAX_CAPACITY_MBPS)))
        .collect();

    let max_anchors = MAX_ANCHORS.min(n - 1);
    let prefixes = (0..params.prefixes)
        .map(|p| {
            let count = rng.gen_range(1..=max_anchors);
            let mut anchors: Vec<NodeId> = index::sample(rng, n, count)
                .into_iter()
                .map(|i| NodeId(i as u32))
                .collect();
            anchors.sort_unstable();
            Prefix {
                id: PrefixId(p as u32),
                size_mb: CHUNK_MB * rng.gen_range(1..=MAX_CHUNKS_PER_OBJECT),
                anchors,
            }
        })
        .collect();

    Topology::new(n, &edges, prefixes, params.buffer_packets)
}

fn ordered(a: usize, b: usize) -> (u32, u32) {
    if a < b {
        (a as u32, b as u32)
    } else {
        (b as u32, a as u32)
    }
}
