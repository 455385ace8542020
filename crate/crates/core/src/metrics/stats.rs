use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metrics::{LoadSample, PacketRecord};
use crate::protocol::{Outcome, PacketKind};

/// Across-channel load statistics at one sampling instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadPoint {
    pub time: f64,
    /// Sum over channels.
    pub offered_mbps: f64,
    pub mean_mbps: f64,
    /// Population standard deviation across channels.
    pub std_mbps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    /// `None` when no data packet was delivered.
    pub avg_delivery_s: Option<f64>,
    pub delivered: usize,
    pub dropped: usize,
    pub unterminated: usize,
    pub offered_load_mbps: f64,
    pub avg_load_mbps: f64,
    pub std_load_mbps: f64,
}

/// Trailing moving average: `out[i] = mean(input[i+1-window ..= i])`,
/// truncated at the start of the series.
pub fn smooth(series: &[f64], window: usize) -> Result<Vec<f64>> {
    if window < 1 {
        return Err(Error::Parameter("smoothing window must be at least 1".into()));
    }
    Ok((0..series.len())
        .map(|i| {
            let slice = &series[(i + 1).saturating_sub(window)..=i];
            let mean = slice.iter().sum::<f64>() / slice.len() as f64;
            // rounding must not push the mean outside the window's range
            let (lo, hi) = slice.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
            mean.clamp(lo, hi)
        })
        .collect())
}

/// Groups samples by time, keeping `warmup_end <= t < cooldown_start`.
pub fn load_series(loads: &[LoadSample], warmup_end: f64, cooldown_start: f64) -> Vec<LoadPoint> {
    let mut by_time: BTreeMap<u64, (f64, Vec<f64>)> = BTreeMap::new();
    for s in loads {
        if s.time >= warmup_end && s.time < cooldown_start {
            // non-negative times order the same as their bit patterns
            by_time
                .entry(s.time.to_bits())
                .or_insert_with(|| (s.time, Vec::new()))
                .1
                .push(s.load_mbps);
        }
    }
    by_time
        .into_values()
        .map(|(time, values)| {
            let n = values.len() as f64;
            let offered = values.iter().fold(0.0, |acc, v| acc + v);
            let mean = offered / n;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            LoadPoint {
                time,
                offered_mbps: offered,
                mean_mbps: mean,
                std_mbps: var.sqrt(),
            }
        })
        .collect()
}

/// Load statistics over the steady-state window plus packet outcome counts.
///
/// Load figures are time averages of the per-instant values from
/// [`load_series`]; they are `0` when no sample falls in the window. Packet
/// figures use every record regardless of time.
pub fn summarize(loads: &[LoadSample], packets: &[PacketRecord], warmup_end: f64, cooldown_start: f64) -> RunStats {
    let series = load_series(loads, warmup_end, cooldown_start);
    let mean_of = |f: fn(&LoadPoint) -> f64| {
        if series.is_empty() {
            0.0
        } else {
            series.iter().map(f).sum::<f64>() / series.len() as f64
        }
    };

    let (mut delivered, mut dropped, mut unterminated) = (0, 0, 0);
    let (mut delay_sum, mut delay_count) = (0.0, 0usize);
    for p in packets {
        match p.outcome {
            Outcome::Delivered => delivered += 1,
            Outcome::Dropped => dropped += 1,
            Outcome::Unterminated => unterminated += 1,
        }
        if p.kind == PacketKind::Data {
            if let Some(d) = p.delivery_time() {
                delay_sum += d;
                delay_count += 1;
            }
        }
    }

    RunStats {
        avg_delivery_s: (delay_count > 0).then(|| delay_sum / delay_count as f64),
        delivered,
        dropped,
        unterminated,
        offered_load_mbps: mean_of(|p| p.offered_mbps),
        avg_load_mbps: mean_of(|p| p.mean_mbps),
        std_load_mbps: mean_of(|p| p.std_mbps),
    }
}

/// Sparse histogram of left-closed bins `[i*w, (i+1)*w)`; empty bins are
/// omitted.
pub fn histogram(values: &[f64], bin_width: f64) -> Result<Vec<(f64, usize)>> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::Parameter("histogram bin width must be positive".into()));
    }
    let mut bins: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in values {
        *bins.entry((v / bin_width).floor() as i64).or_default() += 1;
    }
    Ok(bins
        .into_iter()
        .map(|(i, count)| (i as f64 * bin_width, count))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::{ChannelId, NodeId, PacketId, PrefixId};
    use proptest::prelude::*;

    fn sample(time: f64, channel: u32, load: f64) -> LoadSample {
        LoadSample {
            time,
            channel: ChannelId(channel),
            from: NodeId(0),
            to: NodeId(1),
            load_mbps: load,
        }
    }

    fn data(id: u64, created: f64, terminated: Option<f64>, outcome: Outcome) -> PacketRecord {
        PacketRecord {
            id: PacketId(id),
            kind: PacketKind::Data,
            prefix: PrefixId(0),
            chunk: 0,
            src: NodeId(1),
            dst: NodeId(0),
            created_at: created,
            terminated_at: terminated,
            outcome,
            route: vec![NodeId(1), NodeId(0)],
        }
    }

    #[test]
    fn smoothing_examples() {
        let input = [0.0, 3.0, 6.0];
        assert_eq!(smooth(&input, 1).unwrap(), input.to_vec());
        assert_eq!(smooth(&input, 3).unwrap(), vec![0.0, 1.5, 3.0]);
        assert_eq!(smooth(&[0.1; 7], 5).unwrap(), vec![0.1; 7]);
        assert!(smooth(&input, 0).is_err());
        assert!(smooth(&[], 3).unwrap().is_empty());
    }

    #[test]
    fn warmup_boundaries() {
        let base = vec![sample(100.0, 0, 10.0), sample(100.0, 1, 30.0)];
        let reference = summarize(&base, &[], 50.0, 950.0);
        let mut early = base.clone();
        early.push(sample(49.9, 0, 500.0));
        assert_eq!(summarize(&early, &[], 50.0, 950.0), reference);
        let mut edge = base.clone();
        edge.push(sample(50.0, 0, 500.0));
        assert_ne!(summarize(&edge, &[], 50.0, 950.0), reference);
    }

    #[test]
    fn equal_loads_have_zero_spread() {
        let loads = vec![sample(60.0, 0, 7.0), sample(60.0, 1, 7.0), sample(60.0, 2, 7.0)];
        let stats = summarize(&loads, &[], 50.0, 950.0);
        assert_eq!(stats.std_load_mbps, 0.0);
        assert_eq!(stats.offered_load_mbps, 21.0);
        assert_eq!(stats.avg_load_mbps, 7.0);
    }

    #[test]
    fn population_std_then_time_average() {
        // t=60: {0, 10} -> std 5; t=61: {4, 4} -> std 0
        let loads = vec![
            sample(60.0, 0, 0.0),
            sample(60.0, 1, 10.0),
            sample(61.0, 0, 4.0),
            sample(61.0, 1, 4.0),
        ];
        let stats = summarize(&loads, &[], 50.0, 950.0);
        assert_eq!(stats.std_load_mbps, 2.5);
        assert_eq!(stats.offered_load_mbps, 9.0);
    }

    #[test]
    fn delivery_average_and_counts() {
        let packets = vec![
            data(1, 1.0, Some(3.0), Outcome::Delivered),
            data(3, 1.0, Some(5.0), Outcome::Delivered),
            data(5, 1.0, Some(2.0), Outcome::Dropped),
            data(7, 1.0, None, Outcome::Unterminated),
        ];
        let stats = summarize(&[], &packets, 50.0, 950.0);
        assert_eq!(stats.avg_delivery_s, Some(3.0));
        assert_eq!((stats.delivered, stats.dropped, stats.unterminated), (2, 1, 1));
        assert_eq!(summarize(&[], &packets[2..], 50.0, 950.0).avg_delivery_s, None);
    }

    #[test]
    fn histogram_examples() {
        assert_eq!(histogram(&[0.1, 0.15, 0.3], 0.2).unwrap(), vec![(0.0, 2), (0.2, 1)]);
        assert!(histogram(&[], 0.2).unwrap().is_empty());
        assert_eq!(histogram(&[0.7; 5], 0.2).unwrap().len(), 1);
        assert!(histogram(&[1.0], 0.0).is_err());
    }

    proptest! {
        #[test]
        fn smoothing_stays_in_range(series in proptest::collection::vec(-1e3f64..1e3, 0..60), window in 1usize..10) {
            let out = smooth(&series, window).unwrap();
            prop_assert_eq!(out.len(), series.len());
            if !series.is_empty() {
                let lo = series.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = series.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(out.iter().all(|&v| v >= lo && v <= hi));
            }
        }

        #[test]
        fn histogram_counts_everything(values in proptest::collection::vec(0.0f64..20.0, 0..200), width in 0.01f64..3.0) {
            let total: usize = histogram(&values, width).unwrap().iter().map(|b| b.1).sum();
            prop_assert_eq!(total, values.len());
        }
    }
}
