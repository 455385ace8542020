//! Loopless k-shortest paths to a set of targets.
//!
//! Paths are ranked by `(cost, node sequence)`: cost is the sequential sum of
//! channel costs from the source, and equal costs fall back to lexicographic
//! order of the node ids. The spur searches use the same order, so ranking is
//! total and deterministic.
//!
//! Targets are terminal: a path stops at the first target it reaches. This is
//! the same as attaching every target to a virtual sink with zero-cost edges
//! and removing the targets' other outgoing edges.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use crate::ids::{ChannelId, NodeId};
use crate::routing::CostView;
use crate::topology::Topology;

/// A loopless path from a consumer (first node) to an anchor (last node).
#[derive(Debug, Clone)]
pub struct RoutePath {
    pub nodes: Vec<NodeId>,
    /// `channels[i]` connects `nodes[i]` to `nodes[i + 1]`.
    pub channels: Vec<ChannelId>,
    pub cost: f64,
}

impl RoutePath {
    pub fn trivial(node: NodeId) -> Self {
        RoutePath {
            nodes: vec![node],
            channels: Vec::new(),
            cost: 0.0,
        }
    }

    pub fn source(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn destination(&self) -> NodeId {
        *self.nodes.last().expect("paths are never empty")
    }

    pub fn hop_count(&self) -> usize {
        self.channels.len()
    }

    /// Hyphen-joined node ids, e.g. `3-5-7`.
    pub fn route_string(&self) -> String {
        crate::protocol::route_string(&self.nodes)
    }
}

impl PartialEq for RoutePath {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for RoutePath {}

impl PartialOrd for RoutePath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RoutePath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.nodes.cmp(&other.nodes))
    }
}

/// Restrictions applied to one shortest-path search.
struct Search<'a> {
    topology: &'a Topology,
    costs: &'a CostView,
    terminal: &'a [bool],
    blocked_nodes: &'a [bool],
    blocked_channels: &'a HashSet<ChannelId>,
}

impl Search<'_> {
    /// Label-setting search in `(cost, node sequence)` order starting from a
    /// partial path. Returns every settled label; with `stop_at_terminal` it
    /// returns as soon as the first terminal node settles, and that label is
    /// the second element.
    fn run(&self, start: RoutePath, stop_at_terminal: bool) -> (Vec<Option<RoutePath>>, Option<RoutePath>) {
        let n = self.topology.node_count();
        let mut settled: Vec<Option<RoutePath>> = vec![None; n];
        let mut best: Vec<Option<RoutePath>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        let origin = start.destination();
        best[origin.index()] = Some(start.clone());
        heap.push(Reverse(start));

        while let Some(Reverse(label)) = heap.pop() {
            let u = label.destination();
            if settled[u.index()].is_some() {
                continue;
            }
            settled[u.index()] = Some(label.clone());
            let is_terminal = self.terminal[u.index()];
            if is_terminal && stop_at_terminal {
                return (settled, Some(label));
            }
            if is_terminal {
                continue;
            }
            for &(v, ch) in self.topology.neighbors(u) {
                if settled[v.index()].is_some() || self.blocked_nodes[v.index()] || self.blocked_channels.contains(&ch)
                {
                    continue;
                }
                let mut next = label.clone();
                next.nodes.push(v);
                next.channels.push(ch);
                next.cost += self.costs.cost(ch);
                let improves = match &best[v.index()] {
                    Some(b) => next < *b,
                    None => true,
                };
                if improves {
                    best[v.index()] = Some(next.clone());
                    heap.push(Reverse(next));
                }
            }
        }
        (settled, None)
    }
}

/// Up to `k` loopless paths from `src` to any node in `targets`, cheapest
/// first.
///
/// Yen-style ranking: the best path comes from one search, and each later
/// path is the best unlisted candidate obtained by deviating from the most
/// recently accepted path at one of its nodes. Returns fewer than `k` paths
/// when fewer exist and an empty vector when no target is reachable. A source
/// that is itself a target gets the single zero-cost path `[src]`.
pub fn k_shortest_paths(
    topology: &Topology,
    costs: &CostView,
    src: NodeId,
    targets: &[NodeId],
    k: usize,
) -> Vec<RoutePath> {
    if k == 0 || targets.is_empty() {
        return Vec::new();
    }
    let n = topology.node_count();
    let mut terminal = vec![false; n];
    for t in targets {
        terminal[t.index()] = true;
    }
    if terminal[src.index()] {
        return vec![RoutePath::trivial(src)];
    }

    let no_nodes = vec![false; n];
    let no_channels = HashSet::new();
    let search = Search {
        topology,
        costs,
        terminal: &terminal,
        blocked_nodes: &no_nodes,
        blocked_channels: &no_channels,
    };
    let Some(first) = search.run(RoutePath::trivial(src), true).1 else {
        return Vec::new();
    };

    let mut accepted = vec![first];
    let mut candidates: BTreeSet<RoutePath> = BTreeSet::new();
    let mut blocked_nodes = vec![false; n];
    while accepted.len() < k {
        let last = accepted.last().expect("non-empty").clone();
        blocked_nodes.iter_mut().for_each(|b| *b = false);
        let mut root_cost = 0.0;
        for i in 0..last.hop_count() {
            let root_nodes = &last.nodes[..=i];
            let blocked_channels: HashSet<ChannelId> = accepted
                .iter()
                .filter(|p| p.nodes.len() > i + 1 && p.nodes[..=i] == *root_nodes)
                .map(|p| p.channels[i])
                .collect();
            if i > 0 {
                blocked_nodes[last.nodes[i - 1].index()] = true;
                root_cost += costs.cost(last.channels[i - 1]);
            }
            let root = RoutePath {
                nodes: root_nodes.to_vec(),
                channels: last.channels[..i].to_vec(),
                cost: root_cost,
            };
            let spur = Search {
                topology,
                costs,
                terminal: &terminal,
                blocked_nodes: &blocked_nodes,
                blocked_channels: &blocked_channels,
            };
            if let Some(candidate) = spur.run(root, true).1 {
                if !accepted.contains(&candidate) {
                    candidates.insert(candidate);
                }
            }
        }
        match candidates.pop_first() {
            Some(next) => accepted.push(next),
            None => break,
        }
    }
    accepted
}

/// Best path from `src` to every node, no terminal restriction. Used for
/// anchor distances in the RIB.
pub(crate) fn shortest_path_tree(topology: &Topology, costs: &CostView, src: NodeId) -> Vec<Option<RoutePath>> {
    let n = topology.node_count();
    let terminal = vec![false; n];
    let none = vec![false; n];
    let no_channels = HashSet::new();
    Search {
        topology,
        costs,
        terminal: &terminal,
        blocked_nodes: &none,
        blocked_channels: &no_channels,
    }
    .run(RoutePath::trivial(src), false)
    .0
}
