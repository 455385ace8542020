//! Seed substreams and random request sequences.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::InitInterest;
use crate::ids::{NodeId, PrefixId};
use crate::topology::Topology;

/// Independent named random streams derived from one master seed.
///
/// Structure and workload use different streams, so a run's topology and
/// requests depend only on the seed and never on the routing mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStreams {
    master: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Topology = 1,
    Scenario = 2,
}

impl SeedStreams {
    pub fn new(master: u64) -> Self {
        SeedStreams { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    pub fn rng(&self, stream: Stream) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(stream as u64);
        rng
    }
}

/// `count` requests at uniform times in `[0, window_s)`, each for a uniform
/// prefix from a uniform node that does not anchor it. Sorted by time.
pub fn generate_scenario<R: Rng + ?Sized>(
    topology: &Topology,
    count: usize,
    window_s: f64,
    rng: &mut R,
) -> Vec<InitInterest> {
    let n = topology.node_count();
    let prefixes = topology.prefixes().len();
    let mut requests: Vec<InitInterest> = (0..count)
        .map(|_| {
            let time = rng.gen_range(0.0..window_s);
            let prefix = topology.prefix(PrefixId(rng.gen_range(0..prefixes) as u32));
            let consumer = loop {
                let node = NodeId(rng.gen_range(0..n) as u32);
                if !prefix.is_anchor(node) {
                    break node;
                }
            };
            InitInterest {
                time,
                consumer,
                prefix: prefix.id,
            }
        })
        .collect();
    requests.sort_by(|a, b| a.time.total_cmp(&b.time));
    requests
}
