//! Importance-weighted estimation of the motif distribution from a subset
//! of windows. Window importances are always computed against the full
//! edge population, even when only a sample of windows is analyzed.

use rand_chacha::ChaCha8Rng;
use rand::seq::index::sample;
use rand::SeedableRng;

use crate::catalog::MotifCatalog;
use crate::enumerate::EnumerationConfig;
use crate::error::{ItemError, Result};
use crate::graph::WindowGraph;
use crate::independence::{extract_items, ItemResult, SelectionMode};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which windows to analyze. Reproducible from the seed.
#[derive(Debug, Clone)]
pub struct SamplingPlan {
    pub total_windows: usize,
    /// Indicator per window.
    pub selected: Vec<bool>,
    pub seed: u64,
    pub fraction: f64,
}

impl SamplingPlan {
    pub fn num_selected(&self) -> usize {
        self.selected.iter().filter(|&&x| x).count()
    }

    pub fn all(total_windows: usize) -> Self {
        Self {
            total_windows,
            selected: vec![true; total_windows],
            seed: 0,
            fraction: 1.0,
        }
    }
}

/// Which normalization the estimate used: `1/t` over the full population
/// or `1/t_x` over a proper sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorForm {
    FullPopulation,
    SampleNormalized,
}

/// Per-motif windowed counts and the importance-weighted estimate.
#[derive(Debug, Clone)]
pub struct SampledDistribution {
    pub motif_ids: Vec<String>,
    /// `counts[k][i]`: exact edge-disjoint count of motif k in window i
    /// (zero where the window was not selected).
    pub counts: Vec<Vec<u64>>,
    /// `normalized[k][i] = counts[k][i] / importance[i]` where defined.
    pub normalized: Vec<Vec<f64>>,
    /// The estimate per motif.
    pub estimate: Vec<f64>,
    pub form: EstimatorForm,
    /// Full per-window extraction results for the selected windows.
    pub window_results: Vec<Option<ItemResult>>,
    pub importances: Vec<f64>,
}

impl SampledDistribution {
    pub fn estimate_for(&self, motif_id: &str) -> Option<f64> {
        self.motif_ids
            .iter()
            .position(|m| m == motif_id)
            .map(|k| self.estimate[k])
    }
}

/// Chooses `ceil(fraction * t)` windows uniformly without replacement,
/// deterministically per seed.
pub fn select_windows(total_windows: usize, fraction: f64, seed: u64) -> Result<SamplingPlan> {
    if total_windows == 0 {
        return Err(ItemError::InvalidArgument(
            "cannot sample from zero windows".into(),
        ));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(ItemError::InvalidArgument(format!(
            "sample fraction {fraction} outside (0, 1]"
        )));
    }
    let t_x = ((fraction * total_windows as f64).ceil() as usize).clamp(1, total_windows);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut selected = vec![false; total_windows];
    for idx in sample(&mut rng, total_windows, t_x) {
        selected[idx] = true;
    }
    Ok(SamplingPlan {
        total_windows,
        selected,
        seed,
        fraction,
    })
}

/// Runs exact extraction on each selected window and combines the
/// importance-normalized per-window frequencies into the estimate.
pub fn estimate_distribution(
    windows: &[WindowGraph],
    plan: &SamplingPlan,
    catalog: &MotifCatalog,
    cfg: &EnumerationConfig,
    mode: SelectionMode,
) -> Result<SampledDistribution> {
    if windows.len() != plan.total_windows {
        return Err(ItemError::PlanMismatch {
            plan: plan.total_windows,
            actual: windows.len(),
        });
    }
    let motif_ids: Vec<String> = catalog.search_order().map(|m| m.id.clone()).collect();
    let run = |w: &WindowGraph| -> Result<Option<ItemResult>> {
        if plan.selected[w.id] {
            extract_items(&w.graph, catalog, cfg, mode).map(Some)
        } else {
            Ok(None)
        }
    };
    // Windows are independent; results are reduced in window-id order so
    // the outcome does not depend on scheduling.
    #[cfg(feature = "parallel")]
    let window_results: Vec<Option<ItemResult>> =
        windows.par_iter().map(run).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let window_results: Vec<Option<ItemResult>> =
        windows.iter().map(run).collect::<Result<_>>()?;

    let t = windows.len();
    let t_x = plan.num_selected();
    let importances: Vec<f64> = windows.iter().map(|w| w.importance).collect();
    let mut counts = vec![vec![0u64; t]; motif_ids.len()];
    let mut normalized = vec![vec![0f64; t]; motif_ids.len()];
    for (i, res) in window_results.iter().enumerate() {
        let Some(res) = res else { continue };
        for (k, id) in motif_ids.iter().enumerate() {
            let c = res.item_count(id) as u64;
            counts[k][i] = c;
            normalized[k][i] = if importances[i] > 0.0 {
                c as f64 / importances[i]
            } else {
                0.0
            };
        }
    }
    // 1/t_x over selected windows; identical to the 1/t full-population
    // form when every window is selected.
    let estimate: Vec<f64> = normalized
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(i, _)| plan.selected[*i])
                .map(|(_, f)| f)
                .sum::<f64>()
                / t_x as f64
        })
        .collect();
    let form = if t_x == t {
        EstimatorForm::FullPopulation
    } else {
        EstimatorForm::SampleNormalized
    };
    Ok(SampledDistribution {
        motif_ids,
        counts,
        normalized,
        estimate,
        form,
        window_results,
        importances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;
    use crate::graph::{TemporalGraph, WindowSpec};

    #[test]
    fn full_fraction_selects_everything() {
        let plan = select_windows(7, 1.0, 3).unwrap();
        assert_eq!(plan.num_selected(), 7);
        assert!(plan.selected.iter().all(|&x| x));
    }

    #[test]
    fn plan_is_deterministic_per_seed() {
        let a = select_windows(10, 0.5, 42).unwrap();
        let b = select_windows(10, 0.5, 42).unwrap();
        assert_eq!(a.selected, b.selected);
        assert_eq!(a.num_selected(), 5);
    }

    #[test]
    fn seeds_give_mostly_distinct_plans() {
        let mut plans = std::collections::HashSet::new();
        for seed in 0..100 {
            plans.insert(select_windows(40, 0.5, seed).unwrap().selected);
        }
        assert!(plans.len() >= 95, "only {} distinct plans", plans.len());
    }

    #[test]
    fn zero_windows_is_an_error() {
        assert!(select_windows(0, 0.5, 1).is_err());
    }

    #[test]
    fn single_window_degenerates_to_exact() {
        let g = TemporalGraph::from_triples(&[(1, 2, 10), (2, 3, 20), (3, 1, 30)]);
        let windows = g.window_partition(WindowSpec::Count(1)).unwrap();
        let plan = SamplingPlan::all(1);
        let cat = default_catalog();
        let dist = estimate_distribution(
            &windows,
            &plan,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        assert_eq!(dist.form, EstimatorForm::FullPopulation);
        assert!((dist.estimate_for("m5").unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_selected_matches_full_formula() {
        let mut triples = Vec::new();
        for i in 0..60u32 {
            triples.push((i % 7, (i + 1) % 7, i64::from(i)));
        }
        let g = TemporalGraph::from_triples(&triples);
        let windows = g.window_partition(WindowSpec::Count(4)).unwrap();
        let plan = SamplingPlan::all(windows.len());
        let cat = default_catalog();
        let dist = estimate_distribution(
            &windows,
            &plan,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        let t = windows.len() as f64;
        for (k, _) in dist.motif_ids.iter().enumerate() {
            let full: f64 = dist.normalized[k].iter().sum::<f64>() / t;
            let rel = if full.abs() > 0.0 {
                (dist.estimate[k] - full).abs() / full.abs()
            } else {
                (dist.estimate[k] - full).abs()
            };
            assert!(rel < 1e-12);
        }
    }

    #[test]
    fn plan_window_mismatch_rejected() {
        let g = TemporalGraph::from_triples(&[(1, 2, 10)]);
        let windows = g.window_partition(WindowSpec::Count(1)).unwrap();
        let plan = SamplingPlan::all(3);
        let cat = default_catalog();
        assert!(matches!(
            estimate_distribution(
                &windows,
                &plan,
                &cat,
                &EnumerationConfig::default(),
                SelectionMode::GreedyTemporal,
            ),
            Err(ItemError::PlanMismatch { .. })
        ));
    }

    #[test]
    fn empty_windows_never_divide_by_zero() {
        // Edges only in the first and last of four windows.
        let g = TemporalGraph::from_triples(&[(1, 2, 0), (2, 3, 399)]);
        let windows = g.window_partition(WindowSpec::Count(4)).unwrap();
        assert!(windows.iter().any(|w| w.graph.num_edges() == 0));
        let plan = SamplingPlan::all(windows.len());
        let cat = default_catalog();
        let dist = estimate_distribution(
            &windows,
            &plan,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        assert!(dist.estimate.iter().all(|f| f.is_finite()));
    }

    #[test]
    fn uniform_windows_unbiased_over_all_plans() {
        // With equal importances, the mean over all fixed-size plans must
        // equal the full-selection value exactly.
        let mut triples = Vec::new();
        // 4 windows x 3 edges, same pattern per window.
        for w in 0..4i64 {
            let base = (w as u32) * 10;
            triples.push((base, base + 1, w * 100));
            triples.push((base + 1, base + 2, w * 100 + 10));
            triples.push((base + 2, base + 3, w * 100 + 20));
        }
        let g = TemporalGraph::from_triples(&triples);
        let windows = g.window_partition(WindowSpec::Count(4)).unwrap();
        assert!(windows
            .iter()
            .all(|w| (w.importance - 0.25).abs() < 1e-12));
        let cat = default_catalog();
        let cfg = EnumerationConfig::default();
        let full = estimate_distribution(
            &windows,
            &SamplingPlan::all(4),
            &cat,
            &cfg,
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        // All C(4,2) plans of size 2.
        let mut sums = vec![0.0; full.estimate.len()];
        let mut n_plans = 0usize;
        for a in 0..4 {
            for b in (a + 1)..4 {
                let mut selected = vec![false; 4];
                selected[a] = true;
                selected[b] = true;
                let plan = SamplingPlan {
                    total_windows: 4,
                    selected,
                    seed: 0,
                    fraction: 0.5,
                };
                let d = estimate_distribution(
                    &windows,
                    &plan,
                    &cat,
                    &cfg,
                    SelectionMode::GreedyTemporal,
                )
                .unwrap();
                assert_eq!(d.form, EstimatorForm::SampleNormalized);
                for (s, e) in sums.iter_mut().zip(&d.estimate) {
                    *s += e;
                }
                n_plans += 1;
            }
        }
        for (k, s) in sums.iter().enumerate() {
            let mean = s / n_plans as f64;
            assert!(
                (mean - full.estimate[k]).abs() < 1e-9,
                "motif {} biased: {} vs {}",
                full.motif_ids[k],
                mean,
                full.estimate[k]
            );
        }
    }
}
