//! Drive the event loop by hand on a three-node line and print each event.

use icnsim::engine::{EngineConfig, EventKind, InitInterest, Simulator};
use icnsim::protocol::RoutingMode;
use icnsim::topology::{EdgeSpec, Prefix, Topology};
use icnsim::{NodeId, PrefixId};

fn main() -> icnsim::Result<()> {
    let prefix = Prefix {
        id: PrefixId(0),
        size_mb: 16,
        anchors: vec![NodeId(2)],
    };
    let edges = [EdgeSpec::new(0, 1, 1024.0), EdgeSpec::new(1, 2, 512.0)];
    let topology = Topology::new(3, &edges, vec![prefix], 64)?;
    let config = EngineConfig {
        mode: RoutingMode::SinglePath,
        horizon_s: 1.0,
        ..EngineConfig::default()
    };

    let mut sim = Simulator::new(&topology, config)?;
    sim.schedule_interest(InitInterest {
        time: 0.1,
        consumer: NodeId(0),
        prefix: PrefixId(0),
    })?;
    while let Some(event) = sim.step()? {
        match event.kind {
            EventKind::PathUpdate { .. } => {}
            kind => println!("{:>10.6}  {kind:?}", event.time),
        }
    }
    for p in sim.finish().packets {
        println!(
            "{} {:<8} chunk {} {:?} route {:?} delivery {:?}",
            p.id,
            p.kind.as_str(),
            p.chunk,
            p.outcome,
            p.route,
            p.delivery_time()
        );
    }
    Ok(())
}
