mod common;

use common::{oracle_paths, random_costs, random_graph, random_targets, reference_distance};
use icnsim::routing::{compute_cost_view, k_shortest_paths, rebuild_tables, CostView, LazyRouteSet};
use icnsim::topology::{generate_topology, TopologyParams};
use icnsim::NodeId;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_matches_oracle(seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let topo = random_graph(&mut rng, n);
    let coarse = rng.gen_bool(0.5);
    let costs = random_costs(&mut rng, &topo, coarse);
    let targets = random_targets(&mut rng, n);
    let src = NodeId(rng.gen_range(0..n as u32));
    for k in 1..=3 {
        let got = k_shortest_paths(&topo, &costs, src, &targets, k);
        let want = oracle_paths(&topo, &costs, src, &targets, k);
        let got_nodes: Vec<_> = got.iter().map(|p| p.nodes.clone()).collect();
        let want_nodes: Vec<_> = want.iter().map(|p| p.0.clone()).collect();
        assert_eq!(got_nodes, want_nodes, "seed {seed} k {k} src {src} targets {targets:?}");
        for (g, w) in got.iter().zip(&want) {
            assert!(
                (g.cost - w.1).abs() <= 1e-9 * w.1.abs().max(1.0),
                "seed {seed}: {} vs {}",
                g.cost,
                w.1
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn k_paths_equal_brute_force(seed in any::<u64>()) {
        assert_matches_oracle(seed);
    }

    #[test]
    fn best_path_cost_matches_dijkstra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=12);
        let topo = random_graph(&mut rng, n);
        let costs = random_costs(&mut rng, &topo, false);
        let targets = random_targets(&mut rng, n);
        let src = NodeId(rng.gen_range(0..n as u32));
        let best = k_shortest_paths(&topo, &costs, src, &targets, 1);
        let reference = reference_distance(&topo, &costs, src, &targets).unwrap();
        prop_assert_eq!(best.len(), 1);
        prop_assert!((best[0].cost - reference).abs() <= 1e-9 * reference.max(1.0));
    }

    #[test]
    fn ranking_invariant_under_cost_scaling(seed in any::<u64>(), factor in 0.01f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=8);
        let topo = random_graph(&mut rng, n);
        // dyadic costs and power-of-two scaling keep sums exact
        let costs = random_costs(&mut rng, &topo, true);
        let factor = factor.log2().round().exp2();
        let scaled = costs.scaled(factor).unwrap();
        let targets = random_targets(&mut rng, n);
        let src = NodeId(rng.gen_range(0..n as u32));
        let a: Vec<_> = k_shortest_paths(&topo, &costs, src, &targets, 3).into_iter().map(|p| p.nodes).collect();
        let b: Vec<_> = k_shortest_paths(&topo, &scaled, src, &targets, 3).into_iter().map(|p| p.nodes).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn paths_are_loopless_and_stop_at_first_target(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=10);
        let topo = random_graph(&mut rng, n);
        let costs = random_costs(&mut rng, &topo, true);
        let targets = random_targets(&mut rng, n);
        let src = NodeId(rng.gen_range(0..n as u32));
        let paths = k_shortest_paths(&topo, &costs, src, &targets, 3);
        for w in paths.windows(2) {
            prop_assert!(w[0].cost <= w[1].cost);
        }
        for p in &paths {
            let mut seen = p.nodes.clone();
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), p.nodes.len());
            prop_assert!(targets.contains(&p.destination()));
            prop_assert!(p.nodes[..p.nodes.len() - 1].iter().all(|v| !targets.contains(v)));
            for (i, ch) in p.channels.iter().enumerate() {
                let c = topo.channel(*ch);
                prop_assert_eq!((c.from, c.to), (p.nodes[i], p.nodes[i + 1]));
            }
        }
    }
}

#[test]
fn generated_topology_tables_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let topo = generate_topology(&TopologyParams::default(), &mut rng).unwrap();
    let costs = compute_cost_view(&topo, |ch| (ch.index() * 37 % 500) as f64, 0.0, 1.0);
    let (fib, rib) = rebuild_tables(&topo, &costs, 3);
    for v in topo.nodes() {
        for prefix in topo.prefixes() {
            let want = oracle_paths(&topo, &costs, v, &prefix.anchors, 3);
            let got: Vec<_> = fib.get(v, prefix.id).iter().map(|p| p.nodes.clone()).collect();
            let want_nodes: Vec<_> = want.iter().map(|p| p.0.clone()).collect();
            assert_eq!(got, want_nodes, "node {v} prefix {}", prefix.id);
            assert_eq!(rib.nearest_anchor(v, prefix.id), Some(*want[0].0.last().unwrap()));
        }
    }
}

#[test]
fn lazy_tables_agree_with_eager_rebuild() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let topo = generate_topology(&TopologyParams::default(), &mut rng).unwrap();
    let mut lazy = LazyRouteSet::new(CostView::idle(&topo), 2);
    for round in 0..3 {
        let costs = random_costs(&mut rng, &topo, round == 1);
        lazy.rebuild(costs.clone());
        let (eager, _) = rebuild_tables(&topo, &costs, 2);
        for ((node, prefix), paths) in eager.iter() {
            let got: Vec<_> = lazy.get(&topo, *node, *prefix).to_vec();
            assert_eq!(&got, paths);
        }
    }
}
