//! Generate a random topology, print it in the text format and read it back.
//!
//!     cargo run --example topology -- [seed] [nodes] [edges]

use icnsim::scenario::{SeedStreams, Stream};
use icnsim::topology::{generate_topology, Topology, TopologyParams};

fn main() -> icnsim::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("numeric argument"));
    let seed = args.next().unwrap_or(1);
    let params = TopologyParams {
        nodes: args.next().unwrap_or(10) as usize,
        edges: args.next().unwrap_or(30) as usize,
        ..TopologyParams::default()
    };
    let topology = generate_topology(&params, &mut SeedStreams::new(seed).rng(Stream::Topology))?;
    let text = topology.to_text();
    print!("{text}");

    let parsed = Topology::from_text(&text, params.buffer_packets)?;
    assert_eq!(parsed.to_text(), text);
    eprintln!(
        "{} nodes, {} edges, {} channels, connected: {}",
        topology.node_count(),
        topology.edge_count(),
        topology.channels().len(),
        topology.is_connected()
    );
    for node in topology.nodes().take(3) {
        let degree = topology.neighbors(node).len();
        eprintln!("node {node}: degree {degree}");
    }
    Ok(())
}
