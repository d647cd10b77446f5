//! Browser bindings: each export takes plain strings/numbers and returns
//! a JSON string so the page needs no generated glue types.

use std::io::Cursor;

use wasm_bindgen::prelude::*;

use item_core::catalog::default_catalog;
use item_core::enumerate::EnumerationConfig;
use item_core::features::{feature_vector, normalize, pairwise_and_gap_aggregate, series_anomaly};
use item_core::graph::{LoadOptions, TemporalGraph, WindowSpec};
use item_core::independence::{extract_items, SelectionMode};
use item_core::sampling::{estimate_distribution, SamplingPlan};
use item_core::synthgen::{generate_base, stretch_perturb, GenSpec};

fn parse_graph(edge_list: &str) -> Result<TemporalGraph, JsError> {
    TemporalGraph::load_edge_list(Cursor::new(edge_list), &LoadOptions::default())
        .map_err(|e| JsError::new(&e.to_string()))
}

fn config(delta: i64) -> EnumerationConfig {
    EnumerationConfig {
        delta: (delta > 0).then_some(delta),
        // Browser-friendly cap; a paste box does not need millions.
        max_instances: 2_000_000,
    }
}

/// Full extraction over a pasted edge list. Returns per-motif item
/// counts, independence metrics, and graph stats. `delta <= 0` means
/// unbounded span.
#[wasm_bindgen]
pub fn analyze_edge_list(edge_list: &str, delta: i64) -> Result<String, JsError> {
    let graph = parse_graph(edge_list)?;
    let catalog = default_catalog();
    let result = extract_items(
        &graph,
        &catalog,
        &config(delta),
        SelectionMode::GreedyTemporal,
    )
    .map_err(|e| JsError::new(&e.to_string()))?;
    let motifs: Vec<serde_json::Value> = result
        .per_motif
        .iter()
        .map(|o| {
            serde_json::json!({
                "id": o.motif_id,
                "item_count": o.independent.len(),
                "overlap_count": o.overlap_count,
                "dm": o.dm,
                "dv": o.dv,
            })
        })
        .collect();
    let stats = graph.stats();
    Ok(serde_json::json!({
        "num_vertices": stats.num_vertices,
        "num_temporal_edges": stats.num_temporal_edges,
        "span": stats.span,
        "residual_count": result.residual_count,
        "motifs": motifs,
    })
    .to_string())
}

/// Splits a pasted edge list into equal windows and reports per-window
/// motif counts plus burst flags from a leave-one-out z-score.
#[wasm_bindgen]
pub fn window_series(
    edge_list: &str,
    window_count: usize,
    z_threshold: f64,
) -> Result<String, JsError> {
    let graph = parse_graph(edge_list)?;
    let catalog = default_catalog();
    let windows = graph
        .window_partition(WindowSpec::Count(window_count))
        .map_err(|e| JsError::new(&e.to_string()))?;
    let dist = estimate_distribution(
        &windows,
        &SamplingPlan::all(windows.len()),
        &catalog,
        &config(0),
        SelectionMode::GreedyTemporal,
    )
    .map_err(|e| JsError::new(&e.to_string()))?;
    let series: Vec<Vec<f64>> = (0..windows.len())
        .map(|i| dist.counts.iter().map(|row| row[i] as f64).collect())
        .collect();
    let flagged = if series.len() >= 3 {
        series_anomaly(&series, z_threshold).map_err(|e| JsError::new(&e.to_string()))?
    } else {
        Vec::new()
    };
    Ok(serde_json::json!({
        "motif_ids": dist.motif_ids,
        "windows": windows
            .iter()
            .map(|w| serde_json::json!({"start": w.start, "end": w.end, "importance": w.importance}))
            .collect::<Vec<_>>(),
        "counts": dist.counts,
        "flagged_windows": flagged,
    })
    .to_string())
}

/// Generates a small synthetic graph plus stretched variants and returns
/// the gap-vs-distance curve for full and frequency-only vectors.
#[wasm_bindgen]
pub fn stretch_curve(
    n: usize,
    edges_per_hour: f64,
    hours: u32,
    variants: usize,
    seed: u64,
) -> Result<String, JsError> {
    let duration = i64::from(hours) * 3_600;
    let spec = GenSpec {
        n,
        p: edges_per_hour / (n as f64 * 3_600.0),
        duration,
        seed,
    };
    let base = generate_base(&spec).map_err(|e| JsError::new(&e.to_string()))?;
    let sigma = duration as f64 / 20.0;
    let mut graphs = vec![base.clone()];
    for i in 1..=variants as i64 {
        // Stretch in graph-duration steps so small demo spans still move.
        let stretched = stretch_perturb(&base, 0, sigma * i as f64, seed + i as u64)
            .map_err(|e| JsError::new(&e.to_string()))?;
        graphs.push(stretched);
    }
    let catalog = default_catalog();
    let vectors: Vec<_> = graphs
        .iter()
        .map(|g| {
            extract_items(g, &catalog, &config(0), SelectionMode::GreedyTemporal)
                .map(|r| feature_vector(&r, g, &g.birth_times(), &catalog))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| JsError::new(&e.to_string()))?;
    let curve_for = |vectors: Vec<item_core::features::FeatureVector>| -> Result<_, JsError> {
        let normalized = normalize(&vectors).map_err(|e| JsError::new(&e.to_string()))?;
        let labeled: Vec<(String, i64, _)> = normalized
            .into_iter()
            .enumerate()
            .map(|(i, v)| (format!("G_{i}"), i as i64, v))
            .collect();
        let (_, curve) =
            pairwise_and_gap_aggregate(&labeled).map_err(|e| JsError::new(&e.to_string()))?;
        Ok(curve.into_iter().collect::<Vec<(i64, f64)>>())
    };
    let full = curve_for(vectors.clone())?;
    let freq_only = curve_for(vectors.iter().map(|v| v.frequency_only()).collect())?;
    Ok(serde_json::json!({
        "num_edges": graphs[0].num_edges(),
        "full": full,
        "frequency_only": freq_only,
    })
    .to_string())
}
