//! Load-aware channel costs and k-shortest-path forwarding tables.

mod cost;
mod paths;
mod tables;

pub use cost::{channel_cost, channel_cost_with, compute_cost_view, CostView, DEFAULT_EPSILON_MBPS};
pub use paths::{k_shortest_paths, RoutePath};
pub use tables::{rebuild_tables, LazyRouteSet, Rib, RibEntry, RouteSet};
