//! Synthetic temporal graphs: a per-second stochastic base generator, the
//! stretch-and-jitter transform for similarity experiments, and burst
//! injection for event-detection fixtures.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{ItemError, Result};
use crate::graph::{GraphBuilder, TemporalGraph, Timestamp};

pub const SECONDS_PER_DAY: i64 = 86_400;

#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub n: usize,
    /// Per-second edge-emission probability per vertex.
    pub p: f64,
    /// Time units (seconds) covered: edges appear in `[0, duration)`.
    pub duration: i64,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(ItemError::InvalidArgument("need at least 2 vertices".into()));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(ItemError::InvalidArgument(format!(
                "edge probability {} outside (0, 1)",
                self.p
            )));
        }
        if self.duration <= 0 {
            return Err(ItemError::InvalidArgument("duration must be positive".into()));
        }
        Ok(())
    }
}

/// Every second, every vertex emits an edge to a uniform random other
/// vertex with probability `p`. No self-loops; deterministic per seed.
pub fn generate_base(spec: &GenSpec) -> Result<TemporalGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = GraphBuilder::new();
    for v in 0..spec.n {
        b.add_vertex(&v.to_string());
    }
    for s in 0..spec.duration {
        for v in 0..spec.n {
            if rng.random::<f64>() < spec.p {
                let mut u = rng.random_range(0..spec.n - 1);
                if u >= v {
                    u += 1;
                }
                b.add_edge(&v.to_string(), &u.to_string(), s);
            }
        }
    }
    Ok(b.build())
}

/// Linearly rescales timestamps about `t_min` so the span grows by
/// `extra_days`, then jitters each by a zero-mean Gaussian, clamped to
/// the new span. The (src, dst) multiset is unchanged.
pub fn stretch_perturb(
    graph: &TemporalGraph,
    extra_days: i64,
    sigma: f64,
    seed: u64,
) -> Result<TemporalGraph> {
    if extra_days < 0 {
        return Err(ItemError::InvalidArgument("extra_days must be >= 0".into()));
    }
    let Some((t_min, t_max)) = graph.span() else {
        return Ok(graph.clone());
    };
    let old_span = (t_max - t_min) as f64;
    let new_span = old_span + (extra_days * SECONDS_PER_DAY) as f64;
    let scale = if old_span > 0.0 { new_span / old_span } else { 0.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = if sigma > 0.0 {
        Some(Normal::new(0.0, sigma).map_err(|e| ItemError::InvalidArgument(e.to_string()))?)
    } else {
        None
    };
    let mut b = GraphBuilder::new();
    for v in graph.vertices() {
        b.add_vertex(graph.vertex_name(*v));
    }
    for e in graph.edges() {
        let stretched = (e.time - t_min) as f64 * scale;
        let jitter = normal.as_ref().map_or(0.0, |n| n.sample(&mut rng));
        let t = (stretched + jitter).round().clamp(0.0, new_span) as Timestamp + t_min;
        b.add_edge(graph.vertex_name(e.src), graph.vertex_name(e.dst), t);
    }
    Ok(b.build())
}

/// Adds `multiplier x (window edge count)` edges inside the window; 70%
/// involve fresh vertex ids (55% fresh-to-fresh pairs, 15% fresh
/// self-loops), the rest connect existing vertices.
pub fn inject_burst(
    graph: &TemporalGraph,
    window: (Timestamp, Timestamp),
    multiplier: usize,
    seed: u64,
) -> Result<TemporalGraph> {
    let (start, end) = window;
    let Some((t_min, t_max)) = graph.span() else {
        return Err(ItemError::InvalidArgument("cannot inject into an empty graph".into()));
    };
    if start >= end || start < t_min || end > t_max + 1 {
        return Err(ItemError::InvalidArgument(format!(
            "burst window [{start}, {end}) outside span [{t_min}, {t_max}]"
        )));
    }
    let window_edges = graph
        .edges()
        .iter()
        .filter(|e| e.time >= start && e.time < end)
        .count();
    if window_edges == 0 {
        return Err(ItemError::InvalidArgument("burst window holds no edges".into()));
    }
    let mut b = GraphBuilder::new();
    for v in graph.vertices() {
        b.add_vertex(graph.vertex_name(*v));
    }
    for e in graph.edges() {
        b.add_edge(graph.vertex_name(e.src), graph.vertex_name(e.dst), e.time);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let existing: Vec<String> = graph
        .vertices()
        .iter()
        .map(|&v| graph.vertex_name(v).to_owned())
        .collect();
    let mut fresh_counter = 0usize;
    let mut fresh = |b: &mut GraphBuilder| {
        // Name space disjoint from edge-list labels loaded from files.
        let name = format!("~b{fresh_counter}");
        fresh_counter += 1;
        b.intern(&name);
        name
    };
    for _ in 0..multiplier * window_edges {
        let t = rng.random_range(start..end);
        let r = rng.random::<f64>();
        if r < 0.55 {
            let u = fresh(&mut b);
            let v = fresh(&mut b);
            b.add_edge(&u, &v, t);
        } else if r < 0.70 {
            let u = fresh(&mut b);
            b.add_edge(&u, &u, t);
        } else {
            let u = &existing[rng.random_range(0..existing.len())];
            let v = &existing[rng.random_range(0..existing.len())];
            b.add_edge(u, v, t);
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn small_spec(seed: u64) -> GenSpec {
        GenSpec {
            n: 20,
            p: 0.01,
            duration: 1000,
            seed,
        }
    }

    fn static_projection(g: &TemporalGraph) -> HashMap<(String, String), usize> {
        let mut out = HashMap::new();
        for e in g.edges() {
            *out.entry((
                g.vertex_name(e.src).to_owned(),
                g.vertex_name(e.dst).to_owned(),
            ))
            .or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn base_generation_is_deterministic() {
        let a = generate_base(&small_spec(7)).unwrap();
        let b = generate_base(&small_spec(7)).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = generate_base(&small_spec(8)).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn base_has_no_self_loops() {
        let g = generate_base(&small_spec(1)).unwrap();
        assert!(g.edges().iter().all(|e| !e.is_loop()));
    }

    #[test]
    fn edge_count_tracks_binomial_expectation() {
        let spec = GenSpec {
            n: 50,
            p: 0.02,
            duration: 500,
            seed: 0,
        };
        let trials = spec.n as f64 * spec.duration as f64;
        let expected = trials * spec.p;
        let sd = (trials * spec.p * (1.0 - spec.p)).sqrt();
        let mut total = 0.0;
        let seeds = 20u64;
        for seed in 0..seeds {
            total += generate_base(&GenSpec { seed, ..spec }).unwrap().num_edges() as f64;
        }
        let mean = total / seeds as f64;
        let se = sd / (seeds as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * se,
            "mean {mean} vs expected {expected} (se {se})"
        );
    }

    #[test]
    fn stretch_identity_when_unchanged() {
        let g = generate_base(&small_spec(3)).unwrap();
        let s = stretch_perturb(&g, 0, 0.0, 1).unwrap();
        assert_eq!(g.edges(), s.edges());
    }

    #[test]
    fn stretch_preserves_structure() {
        let g = generate_base(&small_spec(5)).unwrap();
        for extra in [1, 4] {
            let s = stretch_perturb(&g, extra, SECONDS_PER_DAY as f64 / 6.0, 9).unwrap();
            assert_eq!(static_projection(&g), static_projection(&s));
            assert_eq!(g.num_edges(), s.num_edges());
        }
    }

    #[test]
    fn stretch_grows_span() {
        for seed in 0..10 {
            let g = generate_base(&small_spec(seed)).unwrap();
            let extra = 2i64;
            let s = stretch_perturb(&g, extra, 50.0, seed).unwrap();
            let (lo, hi) = s.span().unwrap();
            let target = (g.span().unwrap().1 - g.span().unwrap().0) + extra * SECONDS_PER_DAY;
            let got = hi - lo;
            // Jitter shrinks the observed span a little; never beyond clamp.
            assert!(got <= target);
            assert!((target - got) < 1000, "span {got} too far from {target}");
        }
    }

    #[test]
    fn burst_multiplier_zero_is_identity() {
        let g = generate_base(&small_spec(2)).unwrap();
        let (lo, hi) = g.span().unwrap();
        let out = inject_burst(&g, (lo, hi + 1), 0, 4).unwrap();
        assert_eq!(static_projection(&g), static_projection(&out));
    }

    #[test]
    fn burst_scales_window_edges() {
        let g = generate_base(&small_spec(6)).unwrap();
        let (lo, hi) = g.span().unwrap();
        let mid = (lo + hi) / 2;
        let in_window = |g: &TemporalGraph| {
            g.edges()
                .iter()
                .filter(|e| e.time >= lo && e.time < mid)
                .count()
        };
        let before = in_window(&g);
        assert!(before > 0);
        let out = inject_burst(&g, (lo, mid), 10, 4).unwrap();
        assert_eq!(in_window(&out), before * 11);
    }

    #[test]
    fn burst_rejects_empty_window() {
        let g = TemporalGraph::from_triples(&[(1, 2, 0), (2, 3, 100)]);
        assert!(inject_burst(&g, (10, 20), 3, 1).is_err());
    }
}
