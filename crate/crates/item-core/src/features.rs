//! Fixed-length temporal-structural-orbital feature vectors, cohort
//! normalization, Euclidean similarity, stretch-gap aggregation, and
//! window-series burst flagging.

use std::collections::BTreeMap;

use crate::catalog::MotifCatalog;
use crate::error::{ItemError, Result};
use crate::graph::{BirthTimes, TemporalGraph};
use crate::independence::{instance_structural_contribution, orbit_occupancy, ItemResult};
use crate::sampling::SampledDistribution;

pub const SCHEMA_VERSION: u32 = 1;

/// What a schema column holds; drives the normalization scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnKind {
    Frequency,
    MotifIndependence,
    VertexIndependence,
    Duration,
    Gap,
    Contribution,
    Orbit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub schema_version: u32,
    pub names: Vec<String>,
    pub kinds: Vec<ColumnKind>,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.values[i])
    }

    fn same_schema(&self, other: &FeatureVector) -> bool {
        self.schema_version == other.schema_version && self.names == other.names
    }

    /// Keeps only the frequency columns (count-only baseline vectors).
    pub fn frequency_only(&self) -> FeatureVector {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.kinds[i] == ColumnKind::Frequency)
            .collect();
        FeatureVector {
            schema_version: self.schema_version,
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            kinds: keep.iter().map(|&i| self.kinds[i]).collect(),
            values: keep.iter().map(|&i| self.values[i]).collect(),
        }
    }
}

fn schema_columns(catalog: &MotifCatalog) -> (Vec<String>, Vec<ColumnKind>) {
    let mut names = Vec::new();
    let mut kinds = Vec::new();
    for m in catalog.motifs() {
        for (suffix, kind) in [
            ("freq", ColumnKind::Frequency),
            ("dm", ColumnKind::MotifIndependence),
            ("dv", ColumnKind::VertexIndependence),
            ("duration", ColumnKind::Duration),
            ("gap", ColumnKind::Gap),
            ("new_vertices", ColumnKind::Contribution),
        ] {
            names.push(format!("{}_{}", m.id, suffix));
            kinds.push(kind);
        }
    }
    for m in catalog.motifs() {
        for orbit in 0..m.num_orbits {
            names.push(format!("{}_orbit{}", m.id, orbit));
            kinds.push(ColumnKind::Orbit);
        }
    }
    (names, kinds)
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

struct MotifStats {
    durations: Vec<f64>,
    gaps: Vec<f64>,
    contributions: Vec<f64>,
}

fn collect_stats(
    result: &ItemResult,
    graph: &TemporalGraph,
    births: &BirthTimes,
) -> BTreeMap<String, MotifStats> {
    let mut out: BTreeMap<String, MotifStats> = BTreeMap::new();
    for o in &result.per_motif {
        let entry = out.entry(o.motif_id.clone()).or_insert(MotifStats {
            durations: Vec::new(),
            gaps: Vec::new(),
            contributions: Vec::new(),
        });
        for inst in &o.independent {
            let m = inst.edges.len();
            if m > 0 {
                entry.durations.push(inst.span() as f64);
                // Successive inter-edge gaps average to span / (|E| - 1).
                entry
                    .gaps
                    .push(if m > 1 { inst.span() as f64 / (m - 1) as f64 } else { 0.0 });
            } else {
                entry.durations.push(0.0);
                entry.gaps.push(0.0);
            }
            let c = instance_structural_contribution(inst, graph, births);
            entry.contributions.push(c.new_vertices as f64);
        }
    }
    out
}

/// Builds the schema-ordered vector from an exact extraction result.
pub fn feature_vector(
    result: &ItemResult,
    graph: &TemporalGraph,
    births: &BirthTimes,
    catalog: &MotifCatalog,
) -> FeatureVector {
    let (names, kinds) = schema_columns(catalog);
    let stats = collect_stats(result, graph, births);
    let occupancy = orbit_occupancy(result, catalog);
    let mut values = Vec::with_capacity(names.len());
    for m in catalog.motifs() {
        let outcome = result.outcome(&m.id);
        let freq = outcome.map_or(0.0, |o| o.independent.len() as f64);
        let dm = outcome.map_or(0.0, |o| o.dm);
        let dv = outcome.map_or(0.0, |o| o.dv);
        let s = stats.get(&m.id);
        values.push(freq);
        values.push(dm);
        values.push(dv);
        values.push(s.map_or(0.0, |s| mean(&s.durations)));
        values.push(s.map_or(0.0, |s| mean(&s.gaps)));
        values.push(s.map_or(0.0, |s| mean(&s.contributions)));
    }
    for m in catalog.motifs() {
        for orbit in 0..m.num_orbits {
            values.push(
                occupancy
                    .get(&(m.id.clone(), orbit as u8))
                    .copied()
                    .unwrap_or(0) as f64,
            );
        }
    }
    FeatureVector {
        schema_version: SCHEMA_VERSION,
        names,
        kinds,
        values,
    }
}

/// Vector from a windowed (possibly sampled) distribution: the frequency
/// block carries the importance-weighted estimates; the remaining blocks
/// pool the selected windows' instances.
pub fn feature_vector_sampled(
    dist: &SampledDistribution,
    graph: &TemporalGraph,
    births: &BirthTimes,
    catalog: &MotifCatalog,
) -> FeatureVector {
    let (names, kinds) = schema_columns(catalog);
    let mut values = vec![0.0; names.len()];
    // Pool per-window results.
    let mut pooled_stats: BTreeMap<String, MotifStats> = BTreeMap::new();
    let mut pooled_item: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new(); // (|M̂|, |M|, |V̂|·aggregated denom terms)
    let mut pooled_dv_den: BTreeMap<String, f64> = BTreeMap::new();
    let mut pooled_occ: BTreeMap<(String, u8), u64> = BTreeMap::new();
    for res in dist.window_results.iter().flatten() {
        let stats = collect_stats(res, graph, births);
        for (id, s) in stats {
            let e = pooled_stats.entry(id).or_insert(MotifStats {
                durations: Vec::new(),
                gaps: Vec::new(),
                contributions: Vec::new(),
            });
            e.durations.extend(s.durations);
            e.gaps.extend(s.gaps);
            e.contributions.extend(s.contributions);
        }
        for o in &res.per_motif {
            let m = catalog.get(&o.motif_id);
            let entry = pooled_item.entry(o.motif_id.clone()).or_insert((0, 0, 0));
            entry.0 += o.independent.len();
            entry.1 += o.overlap_count;
            entry.2 += o.unique_vertices;
            *pooled_dv_den.entry(o.motif_id.clone()).or_insert(0.0) +=
                o.overlap_count as f64 * m.map_or(0.0, |m| f64::from(m.order));
        }
        for (key, n) in orbit_occupancy(res, catalog) {
            *pooled_occ.entry(key).or_insert(0) += n;
        }
    }
    let mut col = 0usize;
    for m in catalog.motifs() {
        let (item, overlap, unique) = pooled_item.get(&m.id).copied().unwrap_or((0, 0, 0));
        let dv_den = pooled_dv_den.get(&m.id).copied().unwrap_or(0.0);
        let s = pooled_stats.get(&m.id);
        values[col] = dist.estimate_for(&m.id).unwrap_or(0.0);
        values[col + 1] = if overlap > 0 {
            item as f64 / overlap as f64
        } else {
            0.0
        };
        values[col + 2] = if dv_den > 0.0 {
            unique as f64 / dv_den
        } else {
            0.0
        };
        values[col + 3] = s.map_or(0.0, |s| mean(&s.durations));
        values[col + 4] = s.map_or(0.0, |s| mean(&s.gaps));
        values[col + 5] = s.map_or(0.0, |s| mean(&s.contributions));
        col += 6;
    }
    for m in catalog.motifs() {
        for orbit in 0..m.num_orbits {
            values[col] = pooled_occ
                .get(&(m.id.clone(), orbit as u8))
                .copied()
                .unwrap_or(0) as f64;
            col += 1;
        }
    }
    FeatureVector {
        schema_version: SCHEMA_VERSION,
        names,
        kinds,
        values,
    }
}

/// Cohort normalization: frequency block L1 per vector; duration, gap,
/// contribution, and orbit columns min-max scaled across the set; DM/DV
/// left as-is (already ratios in [0, 1]). Constant columns map to 0.
pub fn normalize(vectors: &[FeatureVector]) -> Result<Vec<FeatureVector>> {
    let Some(first) = vectors.first() else {
        return Err(ItemError::InvalidArgument(
            "cannot normalize an empty cohort".into(),
        ));
    };
    for v in vectors {
        if !v.same_schema(first) {
            return Err(ItemError::SchemaMismatch(
                "cohort vectors disagree on schema".into(),
            ));
        }
    }
    let n_cols = first.len();
    let mut out: Vec<FeatureVector> = vectors.to_vec();
    // Frequency: L1 per vector.
    for v in &mut out {
        let total: f64 = (0..n_cols)
            .filter(|&i| v.kinds[i] == ColumnKind::Frequency)
            .map(|i| v.values[i].abs())
            .sum();
        if total > 0.0 {
            for i in 0..n_cols {
                if v.kinds[i] == ColumnKind::Frequency {
                    v.values[i] /= total;
                }
            }
        }
    }
    // Min-max across the cohort for scale-carrying columns.
    for i in 0..n_cols {
        if !matches!(
            first.kinds[i],
            ColumnKind::Duration | ColumnKind::Gap | ColumnKind::Contribution | ColumnKind::Orbit
        ) {
            continue;
        }
        let lo = vectors.iter().map(|v| v.values[i]).fold(f64::INFINITY, f64::min);
        let hi = vectors
            .iter()
            .map(|v| v.values[i])
            .fold(f64::NEG_INFINITY, f64::max);
        for v in &mut out {
            v.values[i] = if hi > lo { (v.values[i] - lo) / (hi - lo) } else { 0.0 };
        }
    }
    Ok(out)
}

/// Euclidean distance; requires identical schemas.
pub fn distance(a: &FeatureVector, b: &FeatureVector) -> Result<f64> {
    if !a.same_schema(b) {
        return Err(ItemError::SchemaMismatch(
            "cannot compare vectors with different schemas".into(),
        ));
    }
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SimilarityMatrix {
    pub labels: Vec<String>,
    pub distances: Vec<Vec<f64>>,
}

/// Pairwise distances plus, when stretch indices are given, the mean
/// distance per index gap.
pub fn pairwise_and_gap_aggregate(
    labeled: &[(String, i64, FeatureVector)],
) -> Result<(SimilarityMatrix, BTreeMap<i64, f64>)> {
    let n = labeled.len();
    let mut distances = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(&labeled[i].2, &labeled[j].2)?;
            distances[i][j] = d;
            distances[j][i] = d;
        }
    }
    let mut sums: BTreeMap<i64, (f64, usize)> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (labeled[i].1 - labeled[j].1).abs();
            let e = sums.entry(gap).or_insert((0.0, 0));
            e.0 += distances[i][j];
            e.1 += 1;
        }
    }
    let gap_curve = sums
        .into_iter()
        .map(|(g, (s, c))| (g, s / c as f64))
        .collect();
    Ok((
        SimilarityMatrix {
            labels: labeled.iter().map(|(l, _, _)| l.clone()).collect(),
            distances,
        },
        gap_curve,
    ))
}

/// Flags windows where any motif frequency deviates from the rest of the
/// series by more than `z_threshold` leave-one-out standard deviations.
pub fn series_anomaly(series: &[Vec<f64>], z_threshold: f64) -> Result<Vec<usize>> {
    let t = series.len();
    if t < 3 {
        return Err(ItemError::InvalidArgument(format!(
            "need at least 3 windows for anomaly scoring, got {t}"
        )));
    }
    let n_motifs = series[0].len();
    if series.iter().any(|row| row.len() != n_motifs) {
        return Err(ItemError::SchemaMismatch(
            "anomaly series rows have unequal lengths".into(),
        ));
    }
    let mut flagged = Vec::new();
    for i in 0..t {
        let mut is_anomalous = false;
        for k in 0..n_motifs {
            let others: Vec<f64> = (0..t).filter(|&j| j != i).map(|j| series[j][k]).collect();
            let mu = mean(&others);
            let var = others.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>()
                / (others.len().saturating_sub(1)).max(1) as f64;
            // Floor the spread at one count: frequency series are integer
            // scaled, so a sub-unit deviation is never significant and a
            // motif seen once in one window must not flag it.
            let sd = var.sqrt().max(1.0);
            let dev = (series[i][k] - mu).abs();
            let z = dev / sd;
            if z > z_threshold {
                is_anomalous = true;
                break;
            }
        }
        if is_anomalous {
            flagged.push(i);
        }
    }
    Ok(flagged)
}
