mod common;

use minorlab::decomp::{
    edge_deletion_to_bounded_td, low_td_cover, treedepth, verify_cover, verify_decomposition, weak_diameter_cover,
};
use minorlab::graph::{
    all_graphs, contains_subgraph, distance_to_property, generate_instance, parse_property, Family, OracleLimits,
    Property,
};
use minorlab::obstructions::{enumerate_minimal_forbidden, find_split, is_minimal_non_member};
use minorlab::tester::{query_budget, run_trials, test_monotone, verify_witness, Decision, Oracle, TesterParams};
use minorlab::{EditSet, Graph};
use proptest::prelude::*;

const PROPERTIES: [&str; 5] = [
    "bipartite",
    "acyclic",
    "at-most-one-cycle",
    "triangle-free",
    "3-colorable",
];

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn naive_contains(host: &Graph, pattern: &Graph) -> bool {
    fn place(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == pattern.n() {
            return common::edges(pattern)
                .iter()
                .all(|&(a, b)| host.has_edge(map[a], map[b]));
        }
        for v in 0..host.n() {
            if !used[v] {
                used[v] = true;
                map.push(v);
                let hit = place(host, pattern, map, used);
                map.pop();
                used[v] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    place(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
}

fn property(name: &str) -> std::sync::Arc<dyn Property> {
    parse_property(name).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn subgraph_search_matches_injections(host in graph(7), pattern in graph(4)) {
        prop_assert_eq!(contains_subgraph(&host, &pattern), naive_contains(&host, &pattern));
    }

    #[test]
    fn distance_zero_iff_member(g in graph(8), k in 0usize..5) {
        let p = property(PROPERTIES[k]);
        let limits = OracleLimits { max_edges: 28 };
        if g.m() <= 14 {
            let d = distance_to_property(&g, p.as_ref(), limits).unwrap();
            prop_assert_eq!(d == 0, p.is_member(&g));
        }
    }

    #[test]
    fn members_survive_edge_deletion(g in graph(8), k in 0usize..5, pick in any::<prop::sample::Index>()) {
        let p = property(PROPERTIES[k]);
        if p.is_member(&g) && g.m() > 0 {
            let (a, b) = g.edge_ids()[pick.index(g.m())];
            let mut f = EditSet::new();
            f.insert(a, b);
            prop_assert!(p.is_member(&g.without_edges(&f)));
        }
    }

    #[test]
    fn summable_properties_close_under_union(g in graph(6), h in graph(6), k in 0usize..5) {
        let p = property(PROPERTIES[k]);
        if p.is_summable() && p.is_member(&g) && p.is_member(&h) {
            prop_assert!(p.is_member(&g.disjoint_union(&h)));
        }
    }

    #[test]
    fn shipped_deciders_match_oracles(g in graph(8), k in 0usize..4) {
        let name = PROPERTIES[k];
        prop_assert_eq!(property(name).is_member(&g), common::member(name, g.n(), &common::edges(&g)));
    }

    #[test]
    fn treedepth_matches_recursion(g in graph(8)) {
        let (td, t) = treedepth(&g).unwrap();
        prop_assert_eq!(td, common::treedepth(g.n(), &common::edges(&g)));
        prop_assert!(verify_decomposition(&g, &t, td));
        prop_assert_eq!(t.height, td);
    }

    #[test]
    fn treedepth_is_monotone(g in graph(8), mask in any::<u32>()) {
        let kept: Vec<_> = g.edges().into_iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, e)| e).collect();
        let h = g.spanning_subgraph(&kept);
        prop_assert!(treedepth(&h).unwrap().0 <= treedepth(&g).unwrap().0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_instances_are_reproducible(f in 0usize..5, n in 1usize..300, seed in any::<u64>()) {
        let family = Family::ALL[f];
        let a = generate_instance(family, n, seed).unwrap();
        let b = generate_instance(family, n, seed).unwrap();
        prop_assert_eq!(a.graph.to_edge_list(), b.graph.to_edge_list());
    }

    #[test]
    fn covers_and_deletions_keep_their_contracts(f in 0usize..3, n in 10usize..150, seed in any::<u64>(), k in 0usize..4) {
        let family = [Family::RandomForest, Family::Grid, Family::RandomPlanar][f];
        let inst = generate_instance(family, n, seed).unwrap();
        let g = &inst.graph;
        let delta = [0.2, 0.3, 0.5, 0.75][k];
        prop_assert!(verify_cover(g, &low_td_cover(g, delta, inst.structure).unwrap()));
        prop_assert!(verify_cover(g, &weak_diameter_cover(g, delta, inst.structure).unwrap()));
        let eps = 2.0 * delta;
        if eps <= 1.0 {
            let del = edge_deletion_to_bounded_td(g, eps, inst.structure).unwrap();
            prop_assert!(del.edits.len() as f64 <= eps * g.m() as f64);
            prop_assert!(verify_decomposition(&g.without_edges(&del.edits), &del.decomposition, del.d));
        }
    }

    #[test]
    fn tester_transcripts(f in 0usize..5, n in 10usize..400, seed in any::<u64>(), k in 0usize..3) {
        let name = ["bipartite", "acyclic", "triangle-free"][k];
        let p = property(name);
        let family = enumerate_minimal_forbidden(p.as_ref(), 4, 4).unwrap();
        let g = generate_instance(Family::ALL[f], n, seed).unwrap().graph;
        let params = TesterParams::default();
        let eps = 0.6;
        let run = |s: u64| {
            let mut oracle = Oracle::new(&g, s);
            test_monotone(&mut oracle, p.as_ref(), eps, &family, 3.0, params, s).unwrap()
        };
        let v = run(seed);
        prop_assert_eq!(&v, &run(seed));
        let budget = query_budget(eps / (2.0 * family.size_bound as f64 * 3.0), family.size_bound, params);
        prop_assert!(v.stats.total() <= budget.total);
        match v.decision {
            Decision::Accept => prop_assert!(v.witness.is_none()),
            Decision::Reject => {
                let w = v.witness.as_ref().unwrap();
                prop_assert!(verify_witness(&g, w, &family));
                prop_assert!(!p.is_member(&g));
            }
        }
        if p.is_member(&g) {
            let (report, _) = run_trials(&g, p.as_ref(), eps, &family, 3.0, params, &[seed, seed ^ 1]).unwrap();
            prop_assert_eq!(report.reject_rate, 0.0);
        }
    }
}

#[test]
fn enumerated_families_are_minimal() {
    for name in PROPERTIES {
        let p = property(name);
        let family = enumerate_minimal_forbidden(p.as_ref(), 4, 6).unwrap();
        for h in &family.members {
            assert!(!p.is_member(h));
            for (a, b) in h.edge_ids() {
                let mut f = EditSet::new();
                f.insert(a, b);
                assert!(p.is_member(&h.without_edges(&f)), "{name}: {h:?}");
            }
            for v in 0..h.n() {
                assert!(p.is_member(&h.without_vertex_edges(v)), "{name}: {h:?}");
            }
        }
    }
}

#[test]
fn minimally_non_colorable_graphs_are_unsplit() {
    for k in [2, 3] {
        let p = property(&format!("{k}-colorable"));
        let mut seen = 0;
        for n in 1..=7 {
            for h in all_graphs(n) {
                if h.is_connected() && is_minimal_non_member(p.as_ref(), &h) {
                    assert_eq!(find_split(&h).unwrap(), None, "{k}-colorable: {h:?}");
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }
}
