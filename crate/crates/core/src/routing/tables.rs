use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::ids::{NodeId, PrefixId};
use crate::routing::paths::{k_shortest_paths, shortest_path_tree};
use crate::routing::{CostView, RoutePath};
use crate::topology::Topology;

/// Forwarding table: up to `k` ranked paths per `(node, prefix)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RouteSet {
    entries: BTreeMap<(NodeId, PrefixId), Vec<RoutePath>>,
}

impl RouteSet {
    pub fn get(&self, node: NodeId, prefix: PrefixId) -> &[RoutePath] {
        self.entries.get(&(node, prefix)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(NodeId, PrefixId), &Vec<RoutePath>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First hop for the rank-0 path, `None` for anchors and unreachable pairs.
    pub fn next_hop(&self, node: NodeId, prefix: PrefixId) -> Option<NodeId> {
        self.get(node, prefix).first().and_then(|p| p.nodes.get(1).copied())
    }

    /// One line per path: `node,prefix,rank,cost,node1-node2-...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (&(node, prefix), paths) in &self.entries {
            for (rank, path) in paths.iter().enumerate() {
                let _ = writeln!(out, "{node},{prefix},{rank},{:.9},{}", path.cost, path.route_string());
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RibEntry {
    pub anchor: NodeId,
    pub distance: f64,
}

/// Routing table: every anchor of a prefix with its shortest-path distance,
/// nearest first.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Rib {
    entries: BTreeMap<(NodeId, PrefixId), Vec<RibEntry>>,
}

impl Rib {
    pub fn get(&self, node: NodeId, prefix: PrefixId) -> &[RibEntry] {
        self.entries.get(&(node, prefix)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The closest anchor.
    pub fn nearest_anchor(&self, node: NodeId, prefix: PrefixId) -> Option<NodeId> {
        self.get(node, prefix).first().map(|e| e.anchor)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Recomputes both tables for every `(node, prefix)` pair.
///
/// RIB anchors with equal distance are ordered like paths, by the node
/// sequence of their best path, so the nearest anchor always matches the end
/// of the rank-0 FIB path.
pub fn rebuild_tables(topology: &Topology, costs: &CostView, k: usize) -> (RouteSet, Rib) {
    let mut fib = RouteSet::default();
    let mut rib = Rib::default();
    for node in topology.nodes() {
        let tree = shortest_path_tree(topology, costs, node);
        for prefix in topology.prefixes() {
            let paths = k_shortest_paths(topology, costs, node, &prefix.anchors, k);
            if !paths.is_empty() {
                fib.entries.insert((node, prefix.id), paths);
            }
            let mut ranked: Vec<&RoutePath> = prefix.anchors.iter().filter_map(|a| tree[a.index()].as_ref()).collect();
            ranked.sort();
            if !ranked.is_empty() {
                let entries = ranked
                    .into_iter()
                    .map(|p| RibEntry {
                        anchor: p.destination(),
                        distance: p.cost,
                    })
                    .collect();
                rib.entries.insert((node, prefix.id), entries);
            }
        }
    }
    (fib, rib)
}

/// FIB entries computed on first use against a fixed cost snapshot.
///
/// Between two path updates the simulator only queries the pairs that have
/// new requests, so this returns exactly what [`rebuild_tables`] would for
/// those pairs without computing the rest.
#[derive(Debug, Clone)]
pub struct LazyRouteSet {
    costs: CostView,
    k: usize,
    entries: HashMap<(NodeId, PrefixId), Vec<RoutePath>>,
}

impl LazyRouteSet {
    pub fn new(costs: CostView, k: usize) -> Self {
        LazyRouteSet {
            costs,
            k,
            entries: HashMap::new(),
        }
    }

    /// Swaps in a new snapshot and forgets every memoized entry.
    pub fn rebuild(&mut self, costs: CostView) {
        self.costs = costs;
        self.entries.clear();
    }

    pub fn costs(&self) -> &CostView {
        &self.costs
    }

    pub fn get(&mut self, topology: &Topology, node: NodeId, prefix: PrefixId) -> &[RoutePath] {
        let (costs, k) = (&self.costs, self.k);
        self.entries
            .entry((node, prefix))
            .or_insert_with(|| k_shortest_paths(topology, costs, node, &topology.prefix(prefix).anchors, k))
    }
}
