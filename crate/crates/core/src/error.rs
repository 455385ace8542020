use std::path::PathBuf;

use crate::ids::{NodeId, PacketId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Infeasible or out-of-range parameters passed to a library function.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no channel between node {from} and node {to}")]
    NoSuchChannel { from: NodeId, to: NodeId },

    #[error("event at t={event_time} scheduled before current clock t={clock}")]
    Causality { event_time: f64, clock: f64 },

    #[error("packet {packet} route does not match topology at node {node}: {reason}")]
    RouteMismatch {
        packet: PacketId,
        node: NodeId,
        reason: &'static str,
    },

    #[error("no route available for the requested prefix")]
    RoutingUnavailable,

    /// Command-line or config-file problem; carries the offending token.
    #[error("usage error: {0}")]
    Usage(String),

    /// `--help` was requested; carries the rendered help text.
    #[error("{0}")]
    Help(String),

    #[error("malformed input at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
