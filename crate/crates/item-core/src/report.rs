//! Machine-readable report built from an extraction result. The JSON
//! schema is versioned; two runs with identical inputs and configuration
//! serialize byte-identically (timing is deliberately kept out).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::MotifCatalog;
use crate::features::{feature_vector, FeatureVector};
use crate::graph::{BirthTimes, GraphStats, TemporalGraph};
use crate::independence::{orbit_occupancy, ItemResult};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// FNV-1a over the canonical catalog serialization; stable across runs
/// and platforms.
pub fn catalog_hash(catalog: &MotifCatalog) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in catalog.serialize().as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[derive(Debug, Clone, Serialize)]
pub struct MotifReport {
    pub id: String,
    pub item_count: usize,
    pub overlap_count: usize,
    pub dm: f64,
    pub dv: f64,
    pub unique_vertices: usize,
    pub mean_duration: f64,
    pub mean_gap: f64,
    pub mean_new_vertices: f64,
    /// log10 of the item count, for distribution plots; absent when zero.
    pub log10_item_count: Option<f64>,
    /// Orbit index -> vertex-visit count.
    pub orbit_occupancy: BTreeMap<u8, u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub catalog_hash: String,
    pub config: serde_json::Value,
    pub graph_stats: GraphStats,
    pub motifs: Vec<MotifReport>,
    pub residual_count: usize,
}

impl AnalyzeReport {
    pub fn build(
        result: &ItemResult,
        graph: &TemporalGraph,
        births: &BirthTimes,
        catalog: &MotifCatalog,
        config: serde_json::Value,
    ) -> Self {
        let vector = feature_vector(result, graph, births, catalog);
        let occupancy = orbit_occupancy(result, catalog);
        let motifs = catalog
            .search_order()
            .map(|m| {
                let outcome = result.outcome(&m.id);
                let item_count = outcome.map_or(0, |o| o.independent.len());
                let get = |suffix: &str| vector.get(&format!("{}_{}", m.id, suffix)).unwrap_or(0.0);
                MotifReport {
                    id: m.id.clone(),
                    item_count,
                    overlap_count: outcome.map_or(0, |o| o.overlap_count),
                    dm: outcome.map_or(0.0, |o| o.dm),
                    dv: outcome.map_or(0.0, |o| o.dv),
                    unique_vertices: outcome.map_or(0, |o| o.unique_vertices),
                    mean_duration: get("duration"),
                    mean_gap: get("gap"),
                    mean_new_vertices: get("new_vertices"),
                    log10_item_count: (item_count > 0).then(|| (item_count as f64).log10()),
                    orbit_occupancy: (0..m.num_orbits)
                        .map(|o| {
                            (
                                o as u8,
                                occupancy
                                    .get(&(m.id.clone(), o as u8))
                                    .copied()
                                    .unwrap_or(0),
                            )
                        })
                        .collect(),
                }
            })
            .collect();
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            catalog_hash: catalog_hash(catalog),
            config,
            graph_stats: graph.stats(),
            motifs,
            residual_count: result.residual_count,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// CSV rows for a cohort of feature vectors: header = schema, one row per
/// graph.
pub fn feature_csv(labels: &[String], vectors: &[FeatureVector]) -> String {
    let mut out = String::new();
    if let Some(first) = vectors.first() {
        out.push_str("graph,");
        out.push_str(&first.names.join(","));
        out.push('\n');
        for (label, v) in labels.iter().zip(vectors) {
            out.push_str(label);
            for x in &v.values {
                out.push(',');
                out.push_str(&format_float(*x));
            }
            out.push('\n');
        }
    }
    out
}

/// Shortest round-trip float formatting (Rust's default `Display` for f64
/// round-trips); integers render without a trailing ".0".
fn format_float(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;
    use crate::enumerate::EnumerationConfig;
    use crate::independence::{extract_items, SelectionMode};

    #[test]
    fn report_round_trips_to_json() {
        let g = TemporalGraph::from_triples(&[(1, 2, 10), (2, 3, 20), (3, 1, 30)]);
        let cat = default_catalog();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        let report = AnalyzeReport::build(
            &res,
            &g,
            &g.birth_times(),
            &cat,
            serde_json::json!({"mode": "greedy"}),
        );
        let text = report.to_json_pretty();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["schema_version"], 1);
        let m5 = parsed["motifs"]
            .as_array()
            .unwrap()
            .iter()
            .find(|m| m["id"] == "m5")
            .unwrap();
        assert_eq!(m5["item_count"], 1);
        assert_eq!(parsed["residual_count"], 0);
    }

    #[test]
    fn catalog_hash_is_stable_and_sensitive() {
        let a = catalog_hash(&default_catalog());
        let b = catalog_hash(&default_catalog());
        assert_eq!(a, b);
        let reordered = default_catalog()
            .with_search_order(
                &["m2", "m1", "m3", "m4", "m7", "m8", "m9", "m5", "m6", "m10", "m11", "m12",
                    "m13", "m14", "m15"]
                    .map(String::from),
            )
            .unwrap();
        assert_ne!(a, catalog_hash(&reordered));
    }
}
