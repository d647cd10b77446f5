//! Randomized invariants over the whole pipeline.

use proptest::prelude::*;

use item_core::catalog::default_catalog;
use item_core::enumerate::{brute_force_instances, find_instances, EnumerationConfig};
use item_core::features::{distance, feature_vector, FeatureVector};
use item_core::graph::{GraphBuilder, TemporalGraph, WindowSpec};
use item_core::independence::{extract_items, SelectionMode};

fn triples_strategy(
    max_vertices: u32,
    max_edges: usize,
    max_time: i64,
) -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec(
        (0..max_vertices, 0..max_vertices, 0..max_time),
        0..=max_edges,
    )
}

fn build_graph(triples: &[(u32, u32, i64)]) -> TemporalGraph {
    TemporalGraph::from_triples(triples)
}

fn extract_vector(graph: &TemporalGraph) -> FeatureVector {
    let catalog = default_catalog();
    let result = extract_items(
        graph,
        &catalog,
        &EnumerationConfig::default(),
        SelectionMode::GreedyTemporal,
    )
    .unwrap();
    feature_vector(&result, graph, &graph.birth_times(), &catalog)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn window_partition_reconstructs_the_graph(
        triples in triples_strategy(10, 60, 500),
        count in 1usize..8,
    ) {
        let g = build_graph(&triples);
        prop_assume!(g.num_edges() > 0);
        let windows = g.window_partition(WindowSpec::Count(count)).unwrap();
        prop_assert_eq!(windows.len(), count);
        let mut collected: Vec<(u32, u32, i64)> = windows
            .iter()
            .flat_map(|w| w.graph.edges())
            .map(|e| (e.src, e.dst, e.time))
            .collect();
        let mut original: Vec<(u32, u32, i64)> =
            g.edges().iter().map(|e| (e.src, e.dst, e.time)).collect();
        collected.sort_unstable();
        original.sort_unstable();
        prop_assert_eq!(collected, original);
        // Half-open windows tile the span without gaps or overlap.
        let (t_min, _) = g.span().unwrap();
        prop_assert_eq!(windows[0].start, t_min);
        for pair in windows.windows(2) {
            prop_assert_eq!(pair[0].end, pair[1].start);
        }
        let total: f64 = windows.iter().map(|w| w.importance).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn birth_time_is_first_incident_edge(triples in triples_strategy(8, 40, 300)) {
        let g = build_graph(&triples);
        let births = g.birth_times();
        for &v in g.vertices() {
            let naive = g
                .edges()
                .iter()
                .filter(|e| e.src == v || e.dst == v)
                .map(|e| e.time)
                .min();
            prop_assert_eq!(births.get(v), naive);
        }
    }

    #[test]
    fn relabeling_leaves_features_bit_identical(
        triples in triples_strategy(8, 30, 200),
        perm_seed in 0u64..1000,
    ) {
        let g = build_graph(&triples);
        // Deterministic pseudo-permutation of vertex names.
        let n = 8u64;
        let shift = 1 + perm_seed % (n - 1);
        let mut b = GraphBuilder::new();
        for &(s, d, t) in &triples {
            let rs = (u64::from(s) * shift + perm_seed) % n;
            let rd = (u64::from(d) * shift + perm_seed) % n;
            // Injective only when gcd(shift, n) == 1; prefix names instead
            // so distinct inputs always stay distinct.
            b.add_edge(&format!("x{s}_{rs}"), &format!("x{d}_{rd}"), t);
        }
        let relabeled = b.build();
        let va = extract_vector(&g);
        let vb = extract_vector(&relabeled);
        prop_assert_eq!(va.values, vb.values);
    }

    #[test]
    fn time_translation_leaves_features_bit_identical(
        triples in triples_strategy(8, 30, 200),
        offset in -100_000i64..100_000,
    ) {
        let shifted: Vec<(u32, u32, i64)> = triples
            .iter()
            .map(|&(s, d, t)| (s, d, t + offset))
            .collect();
        let va = extract_vector(&build_graph(&triples));
        let vb = extract_vector(&build_graph(&shifted));
        prop_assert_eq!(va.values, vb.values);
    }

    #[test]
    fn time_scaling_scales_durations_only(
        triples in triples_strategy(8, 30, 200),
        scale in 2i64..50,
    ) {
        let scaled: Vec<(u32, u32, i64)> = triples
            .iter()
            .map(|&(s, d, t)| (s, d, t * scale))
            .collect();
        let va = extract_vector(&build_graph(&triples));
        let vb = extract_vector(&build_graph(&scaled));
        for ((name, a), b) in va.names.iter().zip(&va.values).zip(&vb.values) {
            if name.ends_with("_duration") || name.ends_with("_gap") {
                prop_assert!(
                    (a * scale as f64 - b).abs() <= 1e-9 * b.abs().max(1.0),
                    "{} {} x{} vs {}", name, a, scale, b
                );
            } else {
                prop_assert_eq!(a, b, "{} changed under scaling", name);
            }
        }
    }

    #[test]
    fn distance_is_a_metric(
        xs in prop::collection::vec(-100.0f64..100.0, 5),
        ys in prop::collection::vec(-100.0f64..100.0, 5),
        zs in prop::collection::vec(-100.0f64..100.0, 5),
    ) {
        let mk = |values: &[f64]| FeatureVector {
            schema_version: 1,
            names: (0..values.len()).map(|i| format!("c{i}")).collect(),
            kinds: vec![item_core::features::ColumnKind::Frequency; values.len()],
            values: values.to_vec(),
        };
        let (a, b, c) = (mk(&xs), mk(&ys), mk(&zs));
        let dab = distance(&a, &b).unwrap();
        let dba = distance(&b, &a).unwrap();
        let dac = distance(&a, &c).unwrap();
        let dcb = distance(&c, &b).unwrap();
        prop_assert!(dab >= 0.0);
        prop_assert_eq!(dab, dba);
        prop_assert_eq!(distance(&a, &a).unwrap(), 0.0);
        prop_assert!(dab <= dac + dcb + 1e-9);
    }

    #[test]
    fn delta_filter_is_monotone(
        triples in triples_strategy(8, 25, 100),
        small in 1i64..50,
        extra in 0i64..50,
    ) {
        let g = build_graph(&triples);
        let catalog = default_catalog();
        let variants = catalog.get("m5").unwrap().temporal_variants().unwrap();
        let count = |delta: Option<i64>| {
            variants
                .iter()
                .map(|v| {
                    find_instances(
                        &g,
                        v,
                        &EnumerationConfig { delta, max_instances: 1_000_000 },
                    )
                    .unwrap()
                    .len()
                })
                .sum::<usize>()
        };
        let tight = count(Some(small));
        let loose = count(Some(small + extra));
        let unbounded = count(None);
        prop_assert!(tight <= loose);
        prop_assert!(loose <= unbounded);
    }

    #[test]
    fn enumeration_matches_brute_force(triples in triples_strategy(7, 14, 60)) {
        let g = build_graph(&triples);
        let catalog = default_catalog();
        let cfg = EnumerationConfig::default();
        for motif in catalog.motifs() {
            if motif.edges.is_empty() {
                continue;
            }
            for tmt in motif.temporal_variants().unwrap() {
                let mut fast = find_instances(&g, &tmt, &cfg).unwrap();
                let mut oracle = brute_force_instances(&g, &tmt, &cfg).unwrap();
                let key = |i: &item_core::enumerate::MotifInstance| {
                    (i.variant, i.edges.clone(), i.vertices.clone())
                };
                fast.sort_by_key(key);
                oracle.sort_by_key(key);
                prop_assert_eq!(fast.len(), oracle.len(), "count mismatch for {}", &motif.id);
                for (f, o) in fast.iter().zip(&oracle) {
                    prop_assert_eq!(key(f), key(o), "instance mismatch for {}", &motif.id);
                }
            }
        }
    }

    #[test]
    fn extraction_never_reuses_edges(triples in triples_strategy(10, 80, 400)) {
        let g = build_graph(&triples);
        let catalog = default_catalog();
        let result = extract_items(
            &g,
            &catalog,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut consumed = 0usize;
        for outcome in &result.per_motif {
            for inst in &outcome.independent {
                for &e in &inst.edges {
                    prop_assert!(seen.insert(e), "edge {} reused", e);
                    consumed += 1;
                }
            }
        }
        prop_assert_eq!(consumed, g.num_edges());
    }
}
