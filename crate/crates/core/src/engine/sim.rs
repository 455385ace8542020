use crate::engine::channel::{Admission, ChannelState};
use crate::engine::queue::{Event, EventKind, EventQueue};
use crate::error::{Error, Result};
use crate::ids::{ChannelId, NodeId, PacketId, PrefixId};
use crate::metrics::{LoadSample, PacketRecord, RunLogs};
use crate::protocol::{
    make_data_response, split_interest, DeliveryClock, Outcome, Packet, PacketIds, PacketKind, RoutingMode,
};
use crate::routing::{compute_cost_view, CostView, LazyRouteSet, DEFAULT_EPSILON_MBPS};
use crate::topology::Topology;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub mode: RoutingMode,
    /// Hard stop; packets still in flight are logged as unterminated.
    pub horizon_s: f64,
    pub path_updates_per_s: f64,
    pub load_window_s: f64,
    pub propagation_delay_s: f64,
    pub epsilon_mbps: f64,
    pub delivery_clock: DeliveryClock,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            mode: RoutingMode::SinglePath,
            horizon_s: 1000.0,
            path_updates_per_s: 5.0,
            load_window_s: 1.0,
            propagation_delay_s: 0.0,
            epsilon_mbps: DEFAULT_EPSILON_MBPS,
            delivery_clock: DeliveryClock::FromInterest,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("horizon_s", self.horizon_s),
            ("path_updates_per_s", self.path_updates_per_s),
            ("load_window_s", self.load_window_s),
            ("epsilon_mbps", self.epsilon_mbps),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.propagation_delay_s >= 0.0 && self.propagation_delay_s.is_finite()) {
            return Err(Error::Parameter("propagation_delay_s must be non-negative".into()));
        }
        if self.mode.k() == 0 {
            return Err(Error::Parameter("k must be at least 1".into()));
        }
        Ok(())
    }
}

/// A request for one prefix's data object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitInterest {
    pub time: f64,
    pub consumer: NodeId,
    pub prefix: PrefixId,
}

/// One simulation run over a borrowed topology.
pub struct Simulator<'t> {
    topology: &'t Topology,
    config: EngineConfig,
    queue: EventQueue,
    channels: Vec<ChannelState>,
    /// Indexed by packet id; odd slots fill in when data responses exist.
    packets: Vec<Option<Packet>>,
    ids: PacketIds,
    routes: LazyRouteSet,
    loads: Vec<LoadSample>,
    abandoned: usize,
    finished: bool,
}

impl<'t> Simulator<'t> {
    /// Creates a simulator with the first path update and the end-of-run
    /// marker already scheduled.
    pub fn new(topology: &'t Topology, config: EngineConfig) -> Result<Self> {
        config.validate()?;
        let channels = topology
            .channels()
            .iter()
            .map(|ch| ChannelState::new(ch.capacity_mbps, ch.buffer_packets))
            .collect();
        let mut sim = Simulator {
            topology,
            config,
            queue: EventQueue::new(),
            channels,
            packets: Vec::new(),
            ids: PacketIds::default(),
            routes: LazyRouteSet::new(CostView::idle(topology), config.mode.k()),
            loads: Vec::new(),
            abandoned: 0,
            finished: false,
        };
        sim.queue.schedule(0.0, EventKind::PathUpdate { index: 0 })?;
        sim.queue.schedule(config.horizon_s, EventKind::EndOfRun)?;
        Ok(sim)
    }

    pub fn schedule_interest(&mut self, request: InitInterest) -> Result<()> {
        if request.prefix.index() >= self.topology.prefixes().len()
            || request.consumer.index() >= self.topology.node_count()
        {
            return Err(Error::Parameter(format!(
                "request for prefix {} from node {} is outside the topology",
                request.prefix, request.consumer
            )));
        }
        self.queue.schedule(
            request.time,
            EventKind::InitInterest {
                consumer: request.consumer,
                prefix: request.prefix,
            },
        )?;
        Ok(())
    }

    pub fn clock(&self) -> f64 {
        self.queue.clock()
    }

    pub fn channel(&self, id: ChannelId) -> &ChannelState {
        &self.channels[id.index()]
    }

    pub fn packet(&self, id: PacketId) -> Option<&Packet> {
        self.packets.get(id.index()).and_then(Option::as_ref)
    }

    pub fn load_log(&self) -> &[LoadSample] {
        &self.loads
    }

    /// Executes the next event and returns it; `None` once the run is over.
    pub fn step(&mut self) -> Result<Option<Event>> {
        if self.finished {
            return Ok(None);
        }
        let Some(event) = self.queue.pop() else {
            self.finished = true;
            return Ok(None);
        };
        if event.time > self.config.horizon_s {
            self.finished = true;
            return Ok(None);
        }
        let now = event.time;
        match event.kind {
            EventKind::InitInterest { consumer, prefix } => self.handle_init_interest(consumer, prefix, now)?,
            EventKind::TransmitComplete(channel) => self.handle_transmit_complete(channel, now)?,
            EventKind::Receive { node, packet } => self.handle_receive(node, packet, now)?,
            EventKind::PathUpdate { index } => self.handle_path_update(index, now)?,
            EventKind::EndOfRun => self.finished = true,
        }
        Ok(Some(event))
    }

    /// Runs to the horizon and returns the logs.
    pub fn run(mut self) -> Result<RunLogs> {
        while self.step()?.is_some() {}
        Ok(self.finish())
    }

    /// Marks in-flight packets unterminated and assembles the logs.
    pub fn finish(self) -> RunLogs {
        let packets = self
            .packets
            .into_iter()
            .flatten()
            .map(|p| PacketRecord {
                id: p.id,
                kind: p.kind,
                prefix: p.prefix,
                chunk: p.chunk,
                src: p.route[0],
                dst: *p.route.last().expect("routes are never empty"),
                created_at: p.created_at,
                terminated_at: p.terminated_at,
                outcome: p.outcome.unwrap_or(Outcome::Unterminated),
                route: p.route,
            })
            .collect();
        RunLogs {
            loads: self.loads,
            packets,
            abandoned_requests: self.abandoned,
        }
    }

    fn store(&mut self, packet: Packet) -> PacketId {
        let id = packet.id;
        if self.packets.len() <= id.index() {
            self.packets.resize_with(id.index() + 1, || None);
        }
        self.packets[id.index()] = Some(packet);
        id
    }

    fn packet_mut(&mut self, id: PacketId) -> &mut Packet {
        self.packets[id.index()]
            .as_mut()
            .expect("engine only references stored packets")
    }

    /// Puts a packet on the channel towards its next route node.
    fn enqueue_packet(&mut self, id: PacketId, now: f64) -> Result<Admission> {
        let packet = self.packets[id.index()].as_ref().expect("stored");
        let here = packet.current_node();
        let Some(next) = packet.next_node() else {
            return Err(Error::RouteMismatch {
                packet: id,
                node: here,
                reason: "no next hop",
            });
        };
        let bits = packet.size_bits;
        let channel = self
            .topology
            .channel_id_between(here, next)
            .map_err(|_| Error::RouteMismatch {
                packet: id,
                node: here,
                reason: "next hop is not adjacent",
            })?;
        let admission = self.channels[channel.index()].enqueue(id, bits, now);
        match admission {
            Admission::Transmitting { complete_at } => {
                self.queue.schedule(complete_at, EventKind::TransmitComplete(channel))?;
            }
            Admission::Queued => {}
            Admission::Dropped => self.packet_mut(id).terminate(Outcome::Dropped, Some(now)),
        }
        Ok(admission)
    }

    fn handle_init_interest(&mut self, consumer: NodeId, prefix: PrefixId, now: f64) -> Result<()> {
        let topology = self.topology;
        let object = topology.prefix(prefix);
        if object.is_anchor(consumer) {
            return Err(Error::Parameter(format!("consumer {consumer} hosts prefix {prefix}")));
        }
        let paths = self.routes.get(topology, consumer, prefix);
        let interests = match split_interest(object, paths, self.config.mode, now, &mut self.ids) {
            Ok(interests) => interests,
            Err(Error::RoutingUnavailable) => {
                self.abandoned += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        for interest in interests {
            let id = self.store(interest);
            self.enqueue_packet(id, now)?;
        }
        Ok(())
    }

    fn handle_transmit_complete(&mut self, channel: ChannelId, now: f64) -> Result<()> {
        let (id, next) = self.channels[channel.index()]
            .complete(now)
            .expect("completion scheduled for a non-empty channel");
        if let Some(t) = next {
            self.queue.schedule(t, EventKind::TransmitComplete(channel))?;
        }
        let to = self.topology.channel(channel).to;
        self.packet_mut(id).hop += 1;
        self.queue.schedule(
            now + self.config.propagation_delay_s,
            EventKind::Receive { node: to, packet: id },
        )?;
        Ok(())
    }

    fn handle_receive(&mut self, node: NodeId, id: PacketId, now: f64) -> Result<()> {
        let clock = self.config.delivery_clock;
        let packet = self.packet_mut(id);
        if packet.current_node() != node {
            return Err(Error::RouteMismatch {
                packet: id,
                node,
                reason: "packet arrived off its route",
            });
        }
        if !packet.at_final_hop() {
            self.enqueue_packet(id, now)?;
            return Ok(());
        }
        packet.terminate(Outcome::Delivered, Some(now));
        if packet.kind == PacketKind::Interest {
            let data = make_data_response(packet, now, clock)?;
            let data_id = self.store(data);
            self.enqueue_packet(data_id, now)?;
        }
        Ok(())
    }

    fn handle_path_update(&mut self, index: u64, now: f64) -> Result<()> {
        let window = self.config.load_window_s;
        let loads: Vec<f64> = self.channels.iter_mut().map(|ch| ch.load_mbps(now, window)).collect();
        for ch in self.topology.channels() {
            self.loads.push(LoadSample {
                time: now,
                channel: ch.id,
                from: ch.from,
                to: ch.to,
                load_mbps: loads[ch.id.index()],
            });
        }
        let costs = compute_cost_view(self.topology, |c| loads[c.index()], now, self.config.epsilon_mbps);
        self.routes.rebuild(costs);
        let next_index = index + 1;
        let next = next_index as f64 / self.config.path_updates_per_s;
        if next < self.config.horizon_s {
            self.queue.schedule(next, EventKind::PathUpdate { index: next_index })?;
        }
        Ok(())
    }
}

/// Runs `requests` to the configured horizon.
pub fn run(config: &EngineConfig, topology: &Topology, requests: &[InitInterest]) -> Result<RunLogs> {
    let mut sim = Simulator::new(topology, *config)?;
    for &r in requests {
        sim.schedule_interest(r)?;
    }
    sim.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{DATA_BITS, INTEREST_BITS};
    use crate::topology::{EdgeSpec, Prefix};

    fn pair(capacity: f64, size_mb: u32) -> Topology {
        let prefix = Prefix {
            id: PrefixId(0),
            size_mb,
            anchors: vec![NodeId(1)],
        };
        Topology::new(2, &[EdgeSpec::new(0, 1, capacity)], vec![prefix], 64).unwrap()
    }

    fn request(time: f64) -> InitInterest {
        InitInterest {
            time,
            consumer: NodeId(0),
            prefix: PrefixId(0),
        }
    }

    #[test]
    fn idle_run_only_samples_load() {
        let topo = pair(1000.0, 8);
        let logs = run(&EngineConfig::default(), &topo, &[]).unwrap();
        assert!(logs.packets.is_empty());
        assert_eq!(logs.loads.len(), 5000 * 2);
        assert!(logs.loads.iter().all(|s| s.load_mbps == 0.0));
    }

    #[test]
    fn path_updates_on_exact_ticks() {
        let topo = pair(1000.0, 8);
        let config = EngineConfig {
            horizon_s: 2.0,
            ..EngineConfig::default()
        };
        let logs = run(&config, &topo, &[]).unwrap();
        let times: Vec<f64> = logs.loads.iter().step_by(2).map(|s| s.time).collect();
        assert_eq!(times, vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8]);
    }

    #[test]
    fn two_node_timeline() {
        let topo = pair(1024.0, 8);
        let logs = run(&EngineConfig::default(), &topo, &[request(1.0)]).unwrap();
        assert_eq!(logs.packets.len(), 2);
        let (interest, data) = (&logs.packets[0], &logs.packets[1]);
        let up = INTEREST_BITS as f64 / 1024e6;
        let down = DATA_BITS as f64 / 1024e6;
        assert_eq!(interest.outcome, Outcome::Delivered);
        assert_eq!(interest.terminated_at, Some(1.0 + up));
        assert_eq!(data.outcome, Outcome::Delivered);
        assert_eq!(data.route, vec![NodeId(1), NodeId(0)]);
        assert_eq!(data.terminated_at, Some(1.0 + up + down));
        assert!((data.delivery_time().unwrap() - 0.06328125).abs() < 1e-12);
    }

    #[test]
    fn propagation_delay_shifts_receive() {
        let topo = pair(1024.0, 8);
        let config = EngineConfig {
            propagation_delay_s: 0.5,
            ..EngineConfig::default()
        };
        let logs = run(&config, &topo, &[request(1.0)]).unwrap();
        assert_eq!(
            logs.packets[1].terminated_at,
            Some(1.0 + 0.00078125 + 0.5 + 0.0625 + 0.5)
        );
    }

    #[test]
    fn late_request_is_unterminated() {
        let topo = pair(512.0, 64);
        let logs = run(&EngineConfig::default(), &topo, &[request(999.99)]).unwrap();
        assert!(logs.packets.iter().any(|p| p.outcome == Outcome::Unterminated));
        for p in logs.packets.iter().filter(|p| p.outcome == Outcome::Unterminated) {
            assert_eq!(p.terminated_at, None);
        }
    }

    #[test]
    fn chunks_serialize_back_to_back() {
        let topo = pair(512.0, 24);
        let logs = run(&EngineConfig::default(), &topo, &[request(10.0)]).unwrap();
        let interests: Vec<f64> = logs
            .packets
            .iter()
            .filter(|p| p.kind == PacketKind::Interest)
            .map(|p| p.terminated_at.unwrap())
            .collect();
        assert_eq!(interests.len(), 3);
        assert!((interests[1] - interests[0] - 0.0015625).abs() < 1e-12);
        assert!((interests[2] - interests[1] - 0.0015625).abs() < 1e-12);
    }

    #[test]
    fn consumer_hosting_prefix_is_rejected() {
        let topo = pair(512.0, 8);
        let bad = InitInterest {
            time: 0.0,
            consumer: NodeId(1),
            prefix: PrefixId(0),
        };
        assert!(run(&EngineConfig::default(), &topo, &[bad]).is_err());
    }

    #[test]
    fn load_sample_reflects_transmission() {
        // 8 chunks of 64 Mbit on 1024 Mbps: the reverse channel is busy
        // 8 * 0.0625 = 0.5 s inside the window ending at 2.0
        let topo = pair(1024.0, 64);
        let logs = run(&EngineConfig::default(), &topo, &[request(1.0)]).unwrap();
        let sample = logs
            .loads
            .iter()
            .find(|s| s.time == 2.0 && s.channel == ChannelId(1))
            .unwrap();
        assert!((sample.load_mbps - 512.0).abs() < 1e-6, "{}", sample.load_mbps);
    }
}
