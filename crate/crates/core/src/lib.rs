//! Deterministic discrete-event simulator for information-centric networks.
//!
//! The crate compares two interest routing strategies on random topologies:
//!
//! - **single path**: every chunk of a request follows the cheapest path to the
//!   nearest anchor of the prefix;
//! - **multi path**: chunks are spread round-robin over the `k` cheapest loopless
//!   paths, which may end at different anchors (multi-source).
//!
//! Link costs are load-aware (`1 / (capacity - load)`) and recomputed several
//! times per simulated second. Routes are frozen into packets at creation
//! (source routing) and data responses travel the reversed interest route.
//!
//! The pieces can be used independently:
//!
//! - [`topology`] generates capacity-annotated full-duplex graphs with prefixes;
//! - [`routing`] turns a [`routing::CostView`] into k-shortest-path FIB/RIB tables;
//! - [`protocol`] defines interest/data packets and chunk splitting;
//! - [`engine`] runs the event loop with tail-drop FIFO channel buffers;
//! - [`metrics`] writes CSV logs and computes load/delivery statistics;
//! - [`config`], [`scenario`] and [`runner`] wire everything into single and
//!   batch runs.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod config;
pub mod engine;
pub mod error;
pub mod ids;
pub mod metrics;
pub mod protocol;
pub mod routing;
pub mod runner;
pub mod scenario;
pub mod topology;

pub use error::{Error, Result};
pub use ids::{ChannelId, NodeId, PacketId, PrefixId};
