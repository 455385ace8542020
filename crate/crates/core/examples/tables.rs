//! Build every node's FIB and RIB for an idle network and dump them.
//!
//!     cargo run --example tables -- [k]

use icnsim::routing::{rebuild_tables, CostView};
use icnsim::scenario::{SeedStreams, Stream};
use icnsim::topology::{generate_topology, TopologyParams};
use icnsim::NodeId;

fn main() -> icnsim::Result<()> {
    let k = std::env::args().nth(1).map_or(3, |a| a.parse().expect("k"));
    let topology = generate_topology(
        &TopologyParams::default(),
        &mut SeedStreams::new(1).rng(Stream::Topology),
    )?;
    let (fib, rib) = rebuild_tables(&topology, &CostView::idle(&topology), k);
    print!("{}", fib.dump());

    let node = NodeId(0);
    eprintln!("RIB of node {node}:");
    for prefix in topology.prefixes() {
        let entries: Vec<String> = rib
            .get(node, prefix.id)
            .iter()
            .map(|e| format!("{}@{:.4}", e.anchor, e.distance))
            .collect();
        eprintln!(
            "  prefix {:>2}: next hop {:?}, anchors {}",
            prefix.id,
            fib.next_hop(node, prefix.id),
            entries.join(" ")
        );
    }
    Ok(())
}
