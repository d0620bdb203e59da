mod common;

use lacas::baselines::{astar_search, pe_search, SuccessorMode};
use lacas::search::{path_cost, validate_path, BatchOrder, Lacas, SortedLists, StepStatus};
use lacas::{Budget, ConnectOracle, NeighborIndex, SearchConfig, SearchOutcome, TieKey};
use proptest::prelude::*;

fn all_flag_combinations() -> Vec<SearchConfig> {
    let mut out = Vec::new();
    for mask in 0..16u8 {
        let mut c = SearchConfig::minimal();
        if mask & 1 != 0 {
            c.batch_order = BatchOrder::GoalSorted;
        }
        c.reinsert = mask & 2 != 0;
        c.rolling = mask & 4 != 0;
        c.grandparent = mask & 8 != 0;
        out.push(c);
    }
    out
}

/// Drives a search to the end, checking the tree invariant, threshold monotonicity
/// and g monotonicity at every iteration.
fn run_checked(inst: &lacas::ProblemInstance, config: SearchConfig) -> lacas::SearchReport {
    let oracle = ConnectOracle::new(inst);
    let index = NeighborIndex::build(inst);
    let anytime = config.anytime;
    let mut search = Lacas::with_index(&oracle, &index, config);
    let mut thresholds: Vec<TieKey> = Vec::new();
    let mut gs: Vec<f64> = Vec::new();
    loop {
        let status = search.step();
        for (i, node) in search.nodes().iter().enumerate() {
            if i < thresholds.len() {
                assert!(node.threshold >= thresholds[i], "threshold decreased");
                assert!(node.g <= gs[i], "g increased");
                thresholds[i] = node.threshold;
                gs[i] = node.g;
            } else {
                thresholds.push(node.threshold);
                gs.push(node.g);
            }
            if let Some(p) = node.parent {
                let parent = search.node(p);
                assert!(oracle.connect(parent.loc, node.loc));
            } else {
                assert_eq!(node.loc, inst.start());
                assert_eq!(node.g, 0.0);
            }
        }
        if anytime && search.iterations() % 7 == 0 {
            let dist = common::arc_dijkstra(inst, &search.discovered_arcs(), inst.start());
            for node in search.nodes() {
                let id = search.node_at(node.loc).unwrap();
                let backtracked = path_cost(inst, &search.backtrack(id));
                assert!((backtracked - node.g).abs() < 1e-9);
                assert!(
                    (dist[&node.loc] - node.g).abs() < 1e-9,
                    "tree is not a shortest-path tree"
                );
            }
        }
        if status != StepStatus::Running {
            break;
        }
    }
    search.run()
}

#[test]
fn all_flag_combinations_preserve_invariants_and_optimality() {
    for seed in 0..6 {
        let inst = common::random_instance(100 + seed, 60, 12);
        let optimum = common::dense_dijkstra(&inst);
        for config in all_flag_combinations() {
            let label = format!("{config:?}");
            let report = run_checked(&inst, config.clone());
            match (optimum, &report.outcome) {
                (
                    Some(opt),
                    SearchOutcome::Solution {
                        cost,
                        proven_optimal,
                        path,
                    },
                ) => {
                    assert!(
                        (cost - opt).abs() < 1e-9,
                        "seed {seed} {label}: {cost} vs {opt}"
                    );
                    assert!(proven_optimal);
                    assert!(validate_path(&inst, path, &ConnectOracle::new(&inst)));
                }
                (None, SearchOutcome::NoSolution) => {}
                (o, got) => panic!("seed {seed} {label}: oracle {o:?}, got {got:?}"),
            }
            let costs: Vec<f64> = report.improvements.iter().map(|i| i.cost).collect();
            assert!(costs.windows(2).all(|w| w[1] < w[0]));
            if let Some(last) = costs.last() {
                assert_eq!(Some(*last), report.outcome.cost());
            }

            let mut first_hit = config.clone();
            first_hit.anytime = false;
            let report = lacas::lacas_search(
                &ConnectOracle::new(&inst),
                &NeighborIndex::build(&inst),
                first_hit,
            );
            assert_eq!(report.outcome.is_solution(), optimum.is_some(), "{label}");
            if let SearchOutcome::Solution {
                path,
                cost,
                proven_optimal,
            } = &report.outcome
            {
                assert!(!proven_optimal);
                assert!(validate_path(&inst, path, &ConnectOracle::new(&inst)));
                assert!(*cost >= optimum.unwrap() - 1e-9);
            }
        }
    }
}

#[test]
fn batch_size_one_and_large_batches_keep_the_contract() {
    let inst = common::random_instance(7, 80, 10);
    let opt = common::dense_dijkstra(&inst);
    for b in [1, 3, 200] {
        for config in [SearchConfig::lacas_star(), SearchConfig::lacat_star()] {
            let report = run_checked(&inst, config.with_batch_size(b));
            assert_eq!(
                report.outcome.cost().map(|c| (c * 1e9).round()),
                opt.map(|c| (c * 1e9).round())
            );
        }
    }
}

#[test]
fn astar_matches_dense_dijkstra() {
    for seed in 0..30 {
        let inst = common::random_instance(300 + seed, 120, 15);
        let oracle = ConnectOracle::new(&inst);
        let index = NeighborIndex::build(&inst);
        let report = astar_search(&oracle, &index, SuccessorMode::All, Budget::unlimited());
        match (common::dense_dijkstra(&inst), report.outcome) {
            (
                Some(opt),
                SearchOutcome::Solution {
                    cost,
                    path,
                    proven_optimal,
                },
            ) => {
                assert!((cost - opt).abs() < 1e-9);
                assert!(proven_optimal);
                assert!(validate_path(&inst, &path, &oracle));
            }
            (None, SearchOutcome::NoSolution) => {}
            (o, got) => panic!("seed {seed}: oracle {o:?}, got {got:?}"),
        }
    }
}

#[test]
fn pe_and_lazy_search_issue_identical_batches() {
    for seed in 0..5 {
        let inst = common::random_instance(400 + seed, 150, 10);
        for base in [SearchConfig::lacas(), SearchConfig::lacat_star()] {
            let config = SearchConfig {
                record_batches: true,
                ..base
            };
            let oracle_a = ConnectOracle::new(&inst);
            let index = NeighborIndex::build(&inst);
            let mut lazy = Lacas::with_index(&oracle_a, &index, config.clone());
            let a = lazy.run();
            let oracle_b = ConnectOracle::new(&inst);
            let mut pe = Lacas::new(&oracle_b, SortedLists::new(&inst), config.clone());
            let b = pe.run();
            assert_eq!(lazy.batch_log(), pe.batch_log());
            assert_eq!(a.outcome, b.outcome);
            assert_eq!(a.connect_calls, b.connect_calls);
            assert_eq!(
                pe_search(&ConnectOracle::new(&inst), config).outcome,
                a.outcome
            );
        }
    }
}

#[test]
fn iteration_capped_runs_are_deterministic() {
    let inst = common::random_instance(55, 300, 25);
    let config = SearchConfig::lacat_star().with_budget(Budget::iterations(500));
    let run = || {
        lacas::lacas_search(
            &ConnectOracle::new(&inst),
            &NeighborIndex::build(&inst),
            config.clone(),
        )
    };
    let (a, b) = (run(), run());
    assert_eq!(a.outcome, b.outcome);
    assert_eq!(a.iterations, b.iterations);
    assert_eq!(a.connect_calls, b.connect_calls);
    let costs = |r: &lacas::SearchReport| {
        r.improvements
            .iter()
            .map(|i| (i.iteration, i.cost))
            .collect::<Vec<_>>()
    };
    assert_eq!(costs(&a), costs(&b));
}

#[test]
fn random_batch_order_is_seeded() {
    let inst = common::random_instance(56, 200, 20);
    let run = |seed| {
        let mut c = SearchConfig::lacas();
        c.batch_order = BatchOrder::Random { seed };
        c.record_batches = true;
        let oracle = ConnectOracle::new(&inst);
        let index = NeighborIndex::build(&inst);
        let mut s = Lacas::with_index(&oracle, &index, c);
        s.run();
        s.tree_arcs()
    };
    assert_eq!(run(1), run(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exhaustion_cost_equals_oracle(seed in 0u64..10_000, n in 3usize..70, obstacles in 0usize..20, mask in 0u8..16) {
        let inst = common::random_instance(seed, n, obstacles);
        let config = all_flag_combinations().swap_remove(mask as usize);
        let report = lacas::lacas_search(&ConnectOracle::new(&inst), &NeighborIndex::build(&inst), config);
        let opt = common::dense_dijkstra(&inst);
        prop_assert_eq!(report.outcome.is_solution(), opt.is_some());
        if let (Some(c), Some(o)) = (report.outcome.cost(), opt) {
            prop_assert!((c - o).abs() < 1e-9);
        }
    }
}
