//! Discrete-event core: event queue, channel buffers and the run loop.
//!
//! Events execute in `(time, seq)` order. A run is strictly sequential and
//! owns all of its state, so independent runs can execute on separate threads.

mod channel;
mod queue;
mod sim;

pub use channel::{serialization_delay, Admission, ChannelState};
pub use queue::{Event, EventKind, EventQueue};
pub use sim::{run, EngineConfig, InitInterest, Simulator};
