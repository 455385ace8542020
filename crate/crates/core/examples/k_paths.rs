//! Rank loopless paths from one node to a prefix's anchors, before and
//! after loading the best path's first channel.
//!
//!     cargo run --example k_paths -- [seed] [k]

use icnsim::routing::{compute_cost_view, k_shortest_paths, CostView};
use icnsim::scenario::{SeedStreams, Stream};
use icnsim::topology::{generate_topology, TopologyParams};
use icnsim::{NodeId, PrefixId};

fn show(label: &str, paths: &[icnsim::routing::RoutePath]) {
    println!("{label}");
    for (rank, p) in paths.iter().enumerate() {
        println!(
            "  {rank}: {:<16} cost {:.6} hops {}",
            p.route_string(),
            p.cost,
            p.hop_count()
        );
    }
}

fn main() -> icnsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(1, |a| a.parse().expect("seed"));
    let k = args.next().map_or(3, |a| a.parse().expect("k"));

    let topology = generate_topology(
        &TopologyParams::default(),
        &mut SeedStreams::new(seed).rng(Stream::Topology),
    )?;
    let prefix = topology.prefix(PrefixId(0));
    let src = topology.nodes().find(|v| !prefix.is_anchor(*v)).unwrap_or(NodeId(0));
    println!(
        "prefix {} anchored at {:?}, requested from node {src}",
        prefix.id, prefix.anchors
    );

    let idle = CostView::idle(&topology);
    let paths = k_shortest_paths(&topology, &idle, src, &prefix.anchors, k);
    show("idle network:", &paths);

    if let Some(hot) = paths.first().and_then(|p| p.channels.first().copied()) {
        let capacity = topology.channel(hot).capacity_mbps;
        let loaded = compute_cost_view(&topology, |ch| if ch == hot { 0.95 * capacity } else { 0.0 }, 0.0, 1.0);
        show(
            &format!("channel {hot} at 95% of {capacity:.0} Mbps:"),
            &k_shortest_paths(&topology, &loaded, src, &prefix.anchors, k),
        );
    }
    Ok(())
}
