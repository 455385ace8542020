use crate::error::{Error, Result};
use crate::ids::ChannelId;
use crate::topology::Topology;

/// Residual capacity below which a channel counts as saturated.
pub const DEFAULT_EPSILON_MBPS: f64 = 1.0;

/// `1 / (capacity - load)` with both sides in Mbps, clamped to `1 / epsilon`
/// once the residual capacity drops under `epsilon`.
pub fn channel_cost(capacity_mbps: f64, load_mbps: f64) -> f64 {
    channel_cost_with(capacity_mbps, load_mbps, DEFAULT_EPSILON_MBPS)
}

pub fn channel_cost_with(capacity_mbps: f64, load_mbps: f64, epsilon_mbps: f64) -> f64 {
    let residual = capacity_mbps - load_mbps;
    if residual >= epsilon_mbps {
        1.0 / residual
    } else {
        1.0 / epsilon_mbps
    }
}

/// Snapshot of every directed channel's cost at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct CostView {
    time: f64,
    costs: Vec<f64>,
}

impl CostView {
    pub fn from_costs(time: f64, costs: Vec<f64>) -> Result<Self> {
        if let Some(i) = costs.iter().position(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::Parameter(format!(
                "channel {i} cost {} is not strictly positive and finite",
                costs[i]
            )));
        }
        Ok(CostView { time, costs })
    }

    /// Every channel at the same cost; useful for hop-count routing in tests.
    pub fn uniform(topology: &Topology, cost: f64) -> Result<Self> {
        CostView::from_costs(0.0, vec![cost; topology.channels().len()])
    }

    /// Zero load everywhere.
    pub fn idle(topology: &Topology) -> Self {
        compute_cost_view(topology, |_| 0.0, 0.0, DEFAULT_EPSILON_MBPS)
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    #[inline]
    pub fn cost(&self, channel: ChannelId) -> f64 {
        self.costs[channel.index()]
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Multiplies every cost by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        CostView::from_costs(self.time, self.costs.iter().map(|c| c * factor).collect())
    }
}

/// Applies [`channel_cost_with`] to every channel using the sampled loads.
pub fn compute_cost_view<F>(topology: &Topology, mut load_mbps: F, time: f64, epsilon_mbps: f64) -> CostView
where
    F: FnMut(ChannelId) -> f64,
{
    let costs = topology
        .channels()
        .iter()
        .map(|ch| channel_cost_with(ch.capacity_mbps, load_mbps(ch.id), epsilon_mbps))
        .collect();
    CostView { time, costs }
}
