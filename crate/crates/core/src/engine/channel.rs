use std::collections::VecDeque;

use crate::ids::PacketId;

/// Time to clock `bits` onto a channel of `capacity_mbps`.
pub fn serialization_delay(bits: u64, capacity_mbps: f64) -> f64 {
    bits as f64 / (capacity_mbps * 1e6)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Admission {
    /// Channel was idle; the packet's transmission completes at this time.
    Transmitting {
        complete_at: f64,
    },
    Queued,
    Dropped,
}

/// One direction of a full-duplex link: a tail-drop FIFO whose head is the
/// packet being transmitted.
#[derive(Debug, Clone)]
pub struct ChannelState {
    capacity_mbps: f64,
    buffer_packets: usize,
    queue: VecDeque<(PacketId, u64)>,
    busy_until: f64,
    /// `(start, end)` of transmissions that may still overlap a load window.
    transmissions: VecDeque<(f64, f64)>,
}

impl ChannelState {
    pub fn new(capacity_mbps: f64, buffer_packets: usize) -> Self {
        ChannelState {
            capacity_mbps,
            buffer_packets,
            queue: VecDeque::new(),
            busy_until: 0.0,
            transmissions: VecDeque::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn busy_until(&self) -> f64 {
        self.busy_until
    }

    pub fn capacity_mbps(&self) -> f64 {
        self.capacity_mbps
    }

    pub fn queued(&self) -> impl Iterator<Item = PacketId> + '_ {
        self.queue.iter().map(|&(id, _)| id)
    }

    pub fn enqueue(&mut self, packet: PacketId, bits: u64, now: f64) -> Admission {
        if self.queue.len() >= self.buffer_packets {
            return Admission::Dropped;
        }
        self.queue.push_back((packet, bits));
        if self.queue.len() == 1 {
            Admission::Transmitting {
                complete_at: self.start(bits, now),
            }
        } else {
            Admission::Queued
        }
    }

    /// Removes the head packet. If another packet is waiting its
    /// transmission starts now and its completion time is returned.
    pub fn complete(&mut self, now: f64) -> Option<(PacketId, Option<f64>)> {
        let (id, _) = self.queue.pop_front()?;
        let next = self.queue.front().map(|&(_, bits)| bits);
        Some((id, next.map(|bits| self.start(bits, now))))
    }

    fn start(&mut self, bits: u64, now: f64) -> f64 {
        let end = now + serialization_delay(bits, self.capacity_mbps);
        self.busy_until = self.busy_until.max(end);
        self.transmissions.push_back((now, end));
        end
    }

    /// Mean rate over `(now - window, now]` in Mbps, counting the part of
    /// every transmission (including one in progress) inside the window.
    /// Never exceeds capacity.
    pub fn load_mbps(&mut self, now: f64, window: f64) -> f64 {
        let from = now - window;
        while self.transmissions.front().is_some_and(|&(_, end)| end <= from) {
            self.transmissions.pop_front();
        }
        let busy = self
            .transmissions
            .iter()
            .map(|&(start, end)| (end.min(now) - start.max(from)).max(0.0))
            .fold(0.0, |acc, d| acc + d);
        (self.capacity_mbps * busy / window).min(self.capacity_mbps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{DATA_BITS, INTEREST_BITS};

    #[test]
    fn delays_are_size_over_capacity() {
        assert_eq!(serialization_delay(DATA_BITS, 2048.0), 0.03125);
        assert_eq!(serialization_delay(INTEREST_BITS, 512.0), 0.0015625);
    }

    #[test]
    fn idle_channel_starts_immediately() {
        let mut ch = ChannelState::new(2048.0, 64);
        assert_eq!(
            ch.enqueue(PacketId(0), DATA_BITS, 10.0),
            Admission::Transmitting { complete_at: 10.03125 }
        );
        assert_eq!(ch.enqueue(PacketId(2), DATA_BITS, 10.0), Admission::Queued);
    }

    #[test]
    fn tail_drop_at_capacity() {
        let mut ch = ChannelState::new(512.0, 64);
        for i in 0..64 {
            assert_ne!(ch.enqueue(PacketId(2 * i), INTEREST_BITS, 0.0), Admission::Dropped);
        }
        assert_eq!(ch.enqueue(PacketId(200), INTEREST_BITS, 0.0), Admission::Dropped);
        assert_eq!(ch.len(), 64);
    }

    #[test]
    fn back_to_back_fifo() {
        let mut ch = ChannelState::new(512.0, 64);
        let Admission::Transmitting { complete_at: t1 } = ch.enqueue(PacketId(0), INTEREST_BITS, 0.0) else {
            panic!("idle channel must start");
        };
        ch.enqueue(PacketId(2), INTEREST_BITS, 0.0);
        let (first, next) = ch.complete(t1).unwrap();
        assert_eq!(first, PacketId(0));
        let t2 = next.unwrap();
        assert_eq!(t2 - t1, 0.0015625);
        let (second, none) = ch.complete(t2).unwrap();
        assert_eq!(second, PacketId(2));
        assert!(none.is_none());
        assert!(ch.is_empty());
        // idle again: next arrival schedules immediately
        assert!(matches!(
            ch.enqueue(PacketId(4), INTEREST_BITS, 5.0),
            Admission::Transmitting { complete_at } if complete_at == 5.0 + 0.0015625
        ));
    }

    #[test]
    fn windowed_load() {
        let mut ch = ChannelState::new(1024.0, 64);
        assert_eq!(ch.load_mbps(0.0, 1.0), 0.0);
        // 64e6 bits at 1024 Mbps: busy 0.0625 s inside the window
        let Admission::Transmitting { complete_at } = ch.enqueue(PacketId(0), DATA_BITS, 0.5) else {
            panic!("idle channel must start");
        };
        ch.complete(complete_at);
        assert_eq!(ch.load_mbps(1.0, 1.0), 64.0);
        assert_eq!(ch.load_mbps(2.0, 1.0), 0.0);
    }

    #[test]
    fn saturated_channel_reports_capacity() {
        let mut ch = ChannelState::new(2048.0, 1000);
        let Admission::Transmitting { complete_at } = ch.enqueue(PacketId(0), DATA_BITS, 0.0) else {
            panic!("idle channel must start");
        };
        for i in 1..100 {
            ch.enqueue(PacketId(2 * i), DATA_BITS, 0.0);
        }
        let mut due = complete_at;
        while due < 1.2 {
            due = ch.complete(due).unwrap().1.unwrap();
        }
        let load = ch.load_mbps(1.2, 1.0);
        assert!((load - 2048.0).abs() < 1e-6 && load <= 2048.0, "{load}");
    }
}
