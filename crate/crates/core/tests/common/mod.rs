#![allow(dead_code)]

use std::cmp::Ordering;

use icnsim::metrics::RunLogs;
use icnsim::protocol::{Outcome, PacketKind};
use icnsim::routing::CostView;
use icnsim::topology::{EdgeSpec, Prefix, Topology};
use icnsim::{NodeId, PrefixId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every simple path from `src` that ends at its first target, ranked by
/// `(cost, node sequence)` and cut to `k`.
pub fn oracle_paths(
    topology: &Topology,
    costs: &CostView,
    src: NodeId,
    targets: &[NodeId],
    k: usize,
) -> Vec<(Vec<NodeId>, f64)> {
    let mut found = Vec::new();
    let mut path = vec![src];
    let mut on_path = vec![false; topology.node_count()];
    on_path[src.index()] = true;
    dfs(topology, costs, targets, &mut path, &mut on_path, 0.0, &mut found);
    found.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    found.truncate(k);
    found
}

fn dfs(
    topology: &Topology,
    costs: &CostView,
    targets: &[NodeId],
    path: &mut Vec<NodeId>,
    on_path: &mut [bool],
    cost: f64,
    found: &mut Vec<(Vec<NodeId>, f64)>,
) {
    let here = *path.last().unwrap();
    if targets.contains(&here) {
        found.push((path.clone(), cost));
        return;
    }
    for &(next, channel) in topology.neighbors(here) {
        if on_path[next.index()] {
            continue;
        }
        on_path[next.index()] = true;
        path.push(next);
        dfs(
            topology,
            costs,
            targets,
            path,
            on_path,
            cost + costs.cost(channel),
            found,
        );
        path.pop();
        on_path[next.index()] = false;
    }
}

/// Plain O(n^2) Dijkstra; distance from `src` to the nearest target.
pub fn reference_distance(topology: &Topology, costs: &CostView, src: NodeId, targets: &[NodeId]) -> Option<f64> {
    let n = topology.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[src.index()] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !done[v] && dist[v].is_finite())
            .min_by(|&a, &b| dist[a].partial_cmp(&dist[b]).unwrap_or(Ordering::Equal))?;
        done[u] = true;
        if targets.contains(&NodeId(u as u32)) {
            return Some(dist[u]);
        }
        for &(v, ch) in topology.neighbors(NodeId(u as u32)) {
            let d = dist[u] + costs.cost(ch);
            if d < dist[v.index()] {
                dist[v.index()] = d;
            }
        }
    }
    None
}

/// A random connected graph on `n` nodes with one dummy prefix.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Topology {
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for i in 1..n {
        let a = order[i];
        let b = order[rng.gen_range(0..i)];
        present.insert((a.min(b), a.max(b)));
        edges.push(EdgeSpec::new(a, b, 1000.0));
    }
    let density: f64 = rng.gen_range(0.0..0.8);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if !present.contains(&(a, b)) && rng.gen_bool(density) {
                edges.push(EdgeSpec::new(a, b, 1000.0));
            }
        }
    }
    let prefix = Prefix {
        id: PrefixId(0),
        size_mb: 8,
        anchors: vec![NodeId(0)],
    };
    Topology::new(n, &edges, vec![prefix], 64).unwrap()
}

/// Random positive costs per channel. With `coarse`, costs are multiples of
/// 0.25 up to 0.75, so ties are common.
pub fn random_costs<R: Rng>(rng: &mut R, topology: &Topology, coarse: bool) -> CostView {
    let costs = (0..topology.channels().len())
        .map(|_| {
            if coarse {
                rng.gen_range(1..=3) as f64 * 0.25
            } else {
                rng.gen_range(0.001..1.0)
            }
        })
        .collect();
    CostView::from_costs(0.0, costs).unwrap()
}

/// Distinct random targets, 1 to 3 of them.
pub fn random_targets<R: Rng>(rng: &mut R, n: usize) -> Vec<NodeId> {
    let mut all: Vec<NodeId> = (0..n as u32).map(NodeId).collect();
    all.shuffle(rng);
    let count = rng.gen_range(1..=3.min(n));
    let mut picked = all[..count].to_vec();
    picked.sort();
    picked
}

/// Conservation and route-reversal checks over one run. Returns a
/// description of the first violation.
pub fn audit(logs: &RunLogs) -> Result<(), String> {
    let mut counts = [0usize; 3];
    for p in &logs.packets {
        match p.outcome {
            Outcome::Delivered => counts[0] += 1,
            Outcome::Dropped => counts[1] += 1,
            Outcome::Unterminated => counts[2] += 1,
        }
    }
    if counts.iter().sum::<usize>() != logs.packets.len() {
        return Err(format!(
            "outcome counts {counts:?} do not cover {} records",
            logs.packets.len()
        ));
    }
    for data in logs.packets.iter().filter(|p| p.kind == PacketKind::Data) {
        let request = data.id.request();
        let Ok(i) = logs.packets.binary_search_by_key(&request, |p| p.id) else {
            return Err(format!("data {} has no interest record", data.id));
        };
        let interest = &logs.packets[i];
        if interest.kind != PacketKind::Interest || interest.outcome != Outcome::Delivered {
            return Err(format!(
                "data {} answers interest {} that was not delivered",
                data.id, interest.id
            ));
        }
        if interest.prefix != data.prefix || interest.chunk != data.chunk {
            return Err(format!("data {} prefix/chunk differ from its interest", data.id));
        }
        let mut reversed = interest.route.clone();
        reversed.reverse();
        if reversed != data.route {
            return Err(format!("data {} route is not the reversed interest route", data.id));
        }
    }
    Ok(())
}
