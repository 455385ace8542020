use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ids::{ChannelId, NodeId, PacketId, PrefixId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventKind {
    InitInterest {
        consumer: NodeId,
        prefix: PrefixId,
    },
    TransmitComplete(ChannelId),
    Receive {
        node: NodeId,
        packet: PacketId,
    },
    /// The `index`-th table refresh, due at `index / rate`.
    PathUpdate {
        index: u64,
    },
    EndOfRun,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub seq: u64,
    pub kind: EventKind,
}

#[derive(Debug)]
struct Entry(Event);

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.time.total_cmp(&other.0.time).then(self.0.seq.cmp(&other.0.seq))
    }
}

/// Pending events in `(time, seq)` order. `seq` comes from one counter per
/// run, so simultaneous events pop in insertion order.
#[derive(Debug, Default)]
pub struct EventQueue {
    heap: BinaryHeap<Reverse<Entry>>,
    next_seq: u64,
    clock: f64,
}

impl EventQueue {
    pub fn new() -> Self {
        Self::default()
    }

    /// Enqueues `kind` at `time` and returns its sequence number.
    pub fn schedule(&mut self, time: f64, kind: EventKind) -> Result<u64> {
        if time.is_nan() || time < self.clock {
            return Err(Error::Causality {
                event_time: time,
                clock: self.clock,
            });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Reverse(Entry(Event { time, seq, kind })));
        Ok(seq)
    }

    /// Removes the earliest event and advances the clock to it.
    pub fn pop(&mut self) -> Option<Event> {
        let Reverse(Entry(event)) = self.heap.pop()?;
        debug_assert!(event.time >= self.clock);
        self.clock = event.time;
        Some(event)
    }

    pub fn peek_time(&self) -> Option<f64> {
        self.heap.peek().map(|Reverse(Entry(e))| e.time)
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}
