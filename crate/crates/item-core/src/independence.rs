//! Edge-disjoint instance selection: motif overlap graph, maximal
//! independent set solvers, and the sequential extraction pipeline with
//! edge consumption.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::catalog::{AtomicMotifType, MotifCatalog};
use crate::enumerate::{
    find_fringe, find_instances_indexed, AdjacencyIndex, EnumerationConfig, FringeKind,
    MotifInstance,
};
use crate::error::{ItemError, Result};
use crate::graph::{BirthTimes, EdgeId, TemporalGraph, Timestamp, VertexId};

const EXACT_MIS_LIMIT: usize = 40;

/// Abstract graph over motif-instance labels; an edge marks a shared
/// temporal edge between two instances.
#[derive(Debug, Clone)]
pub struct OverlapGraph {
    labels: Vec<String>,
    /// Selection priority carried from the instances: completion time.
    t_last: Vec<Timestamp>,
    adj: Vec<BTreeSet<usize>>,
    edge_map: HashMap<EdgeId, Vec<usize>>,
}

impl OverlapGraph {
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn edge_map(&self) -> &HashMap<EdgeId, Vec<usize>> {
        &self.edge_map
    }

    /// Builds an overlap graph directly from an edge list over abstract
    /// vertices (used by tests and the MIS quality suite).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        Self {
            labels: (0..n).map(|i| format!("v{i}")).collect(),
            t_last: vec![0; n],
            adj,
            edge_map: HashMap::new(),
        }
    }
}

/// One overlap-graph vertex per instance; one edge per pair of instances
/// co-occurring in any temporal edge's bucket.
pub fn build_overlap_graph(instances: &[MotifInstance]) -> OverlapGraph {
    let mut edge_map: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (i, inst) in instances.iter().enumerate() {
        for &e in &inst.edges {
            edge_map.entry(e).or_default().push(i);
        }
    }
    let mut adj = vec![BTreeSet::new(); instances.len()];
    for bucket in edge_map.values() {
        for (k, &a) in bucket.iter().enumerate() {
            for &b in &bucket[k + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    OverlapGraph {
        labels: instances.iter().map(MotifInstance::label).collect(),
        t_last: instances.iter().map(|i| i.t_last).collect(),
        adj,
        edge_map,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Earliest-completing instance wins; deterministic default.
    GreedyTemporal,
    /// Rounds of random-priority selection.
    LubyRandom(u64),
    /// Maximum independent set by branch and bound; small graphs only.
    Exact,
}

/// Returns indices of a maximal independent set of `h`.
pub fn select_independent(h: &OverlapGraph, mode: SelectionMode) -> Result<Vec<usize>> {
    match mode {
        SelectionMode::GreedyTemporal => Ok(greedy_temporal(h)),
        SelectionMode::LubyRandom(seed) => Ok(luby_random(h, seed)),
        SelectionMode::Exact => exact_maximum(h),
    }
}

fn greedy_temporal(h: &OverlapGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.num_vertices()).collect();
    // Index tiebreak: instances arrive pre-sorted by (t_last, edge ids),
    // which is invariant under vertex relabeling and time translation.
    order.sort_by_key(|&a| (h.t_last[a], a));
    let mut selected = vec![false; h.num_vertices()];
    let mut blocked = vec![false; h.num_vertices()];
    let mut out = Vec::new();
    for v in order {
        if blocked[v] {
            continue;
        }
        selected[v] = true;
        out.push(v);
        for u in h.neighbors(v) {
            blocked[u] = true;
        }
    }
    let _ = selected;
    out.sort_unstable();
    out
}

fn luby_random(h: &OverlapGraph, seed: u64) -> Vec<usize> {
    let n = h.num_vertices();
    let mut rng = SmallRng::seed_from_u64(seed);
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut out = Vec::new();
    while !alive.is_empty() {
        let mut priority: HashMap<usize, f64> = HashMap::new();
        for &v in &alive {
            priority.insert(v, rng.random::<f64>());
        }
        let winners: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&v| {
                h.neighbors(v).filter(|u| alive.contains(u)).all(|u| {
                    let (pv, pu) = (priority[&v], priority[&u]);
                    pv < pu || (pv == pu && v < u)
                })
            })
            .collect();
        for v in winners {
            if !alive.contains(&v) {
                continue;
            }
            out.push(v);
            alive.remove(&v);
            for u in h.neighbors(v) {
                alive.remove(&u);
            }
        }
    }
    out.sort_unstable();
    out
}

fn exact_maximum(h: &OverlapGraph) -> Result<Vec<usize>> {
    let n = h.num_vertices();
    if n > EXACT_MIS_LIMIT {
        return Err(ItemError::ExactMisTooLarge {
            vertices: n,
            limit: EXACT_MIS_LIMIT,
        });
    }
    fn branch(
        h: &OverlapGraph,
        alive: &BTreeSet<usize>,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + alive.len() <= best.len() {
            return;
        }
        // Pick the highest-degree alive vertex to branch on.
        let Some(&v) = alive
            .iter()
            .max_by_key(|&&v| h.neighbors(v).filter(|u| alive.contains(u)).count())
        else {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        };
        // Include v.
        let mut without_nv = alive.clone();
        without_nv.remove(&v);
        for u in h.neighbors(v) {
            without_nv.remove(&u);
        }
        current.push(v);
        branch(h, &without_nv, current, best);
        current.pop();
        // Exclude v.
        let mut without_v = alive.clone();
        without_v.remove(&v);
        branch(h, &without_v, current, best);
    }
    let alive: BTreeSet<usize> = (0..n).collect();
    let mut best = Vec::new();
    branch(h, &alive, &mut Vec::new(), &mut best);
    best.sort_unstable();
    Ok(best)
}

/// Per-motif outcome of the extraction pipeline.
#[derive(Debug, Clone)]
pub struct MotifOutcome {
    pub motif_id: String,
    /// |M|: overlapping instances found on the remainder at this motif's turn.
    pub overlap_count: usize,
    /// The selected edge-disjoint instances.
    pub independent: Vec<MotifInstance>,
    /// Temporal edge ids consumed by the selected instances.
    pub consumed: Vec<EdgeId>,
    /// Motif independence |M-hat| / |M|.
    pub dm: f64,
    /// Vertex independence |V-hat| / (|M| * v_k).
    pub dv: f64,
    pub unique_vertices: usize,
}

#[derive(Debug, Clone)]
pub struct ItemResult {
    /// Outcomes in search order; the residual motif is last.
    pub per_motif: Vec<MotifOutcome>,
    pub total_edges: usize,
    pub residual_count: usize,
}

impl ItemResult {
    pub fn outcome(&self, motif_id: &str) -> Option<&MotifOutcome> {
        self.per_motif.iter().find(|o| o.motif_id == motif_id)
    }

    pub fn item_count(&self, motif_id: &str) -> usize {
        self.outcome(motif_id).map_or(0, |o| o.independent.len())
    }
}

/// The full sequential pipeline: for each motif in search order, enumerate
/// overlapping instances on the remainder, select an edge-disjoint subset,
/// and consume the selected edges before the next motif. Leftover edges
/// become residual instances at the end.
pub fn extract_items(
    graph: &TemporalGraph,
    catalog: &MotifCatalog,
    cfg: &EnumerationConfig,
    mode: SelectionMode,
) -> Result<ItemResult> {
    let mut removed: HashSet<EdgeId> = HashSet::new();
    let mut per_motif = Vec::with_capacity(catalog.len());
    for motif in catalog.search_order() {
        let outcome = if motif.is_isolated_vertex() {
            isolated_vertex_outcome(graph, motif)
        } else if motif.is_isolated_edge() {
            isolated_edge_outcome(graph, motif, &mut removed)
        } else if motif.is_residual() {
            residual_outcome(graph, motif, &mut removed)
        } else {
            core_outcome(graph, motif, cfg, mode, &mut removed)?
        };
        per_motif.push(outcome);
    }
    let residual_count = per_motif
        .iter()
        .find(|o| catalog.get(&o.motif_id).is_some_and(AtomicMotifType::is_residual))
        .map_or(0, |o| o.independent.len());
    Ok(ItemResult {
        per_motif,
        total_edges: graph.num_edges(),
        residual_count,
    })
}

fn outcome_from_selection(
    motif: &AtomicMotifType,
    overlap_count: usize,
    independent: Vec<MotifInstance>,
) -> MotifOutcome {
    let consumed: Vec<EdgeId> = independent.iter().flat_map(|i| i.edges.clone()).collect();
    let unique: HashSet<VertexId> = independent
        .iter()
        .flat_map(|i| i.vertices.iter().copied())
        .collect();
    let (dm, dv) = if overlap_count == 0 {
        (0.0, 0.0)
    } else {
        (
            independent.len() as f64 / overlap_count as f64,
            unique.len() as f64 / (overlap_count as f64 * f64::from(motif.order)),
        )
    };
    MotifOutcome {
        motif_id: motif.id.clone(),
        overlap_count,
        unique_vertices: unique.len(),
        consumed,
        dm,
        dv,
        independent,
    }
}

fn isolated_vertex_outcome(graph: &TemporalGraph, motif: &AtomicMotifType) -> MotifOutcome {
    // Evaluated on the initial graph: a vertex with no incident edge at all.
    let instances = find_fringe(graph, FringeKind::IsolatedVertex);
    outcome_from_selection(motif, instances.len(), instances)
}

fn isolated_edge_outcome(
    graph: &TemporalGraph,
    motif: &AtomicMotifType,
    removed: &mut HashSet<EdgeId>,
) -> MotifOutcome {
    // Isolation is judged on the initial graph; instances whose edge was
    // already consumed (non-default search orders) are dropped.
    let instances: Vec<MotifInstance> = find_fringe(graph, FringeKind::IsolatedEdge)
        .into_iter()
        .filter(|i| !removed.contains(&i.edges[0]))
        .collect();
    for inst in &instances {
        removed.insert(inst.edges[0]);
    }
    outcome_from_selection(motif, instances.len(), instances)
}

fn residual_outcome(
    graph: &TemporalGraph,
    motif: &AtomicMotifType,
    removed: &mut HashSet<EdgeId>,
) -> MotifOutcome {
    let instances: Vec<MotifInstance> = graph
        .edges()
        .iter()
        .filter(|e| !removed.contains(&e.id))
        .map(|e| MotifInstance {
            motif_id: motif.id.clone(),
            variant: 0,
            vertices: vec![e.src, e.dst],
            edges: vec![e.id],
            t_first: e.time,
            t_last: e.time,
        })
        .collect();
    for inst in &instances {
        removed.insert(inst.edges[0]);
    }
    outcome_from_selection(motif, instances.len(), instances)
}

fn core_outcome(
    graph: &TemporalGraph,
    motif: &AtomicMotifType,
    cfg: &EnumerationConfig,
    mode: SelectionMode,
    removed: &mut HashSet<EdgeId>,
) -> Result<MotifOutcome> {
    let remainder = graph.restrict(|e| !removed.contains(&e.id));
    let index = AdjacencyIndex::build(&remainder);
    // Variants of one atomic motif are pooled into a single overlap graph:
    // instances of two variants can share edges and must not both win.
    let mut pooled: Vec<MotifInstance> = Vec::new();
    for variant in motif.temporal_variants()? {
        pooled.extend(find_instances_indexed(&index, &variant, cfg)?);
    }
    pooled.sort_by(|a, b| (a.t_last, &a.edges).cmp(&(b.t_last, &b.edges)));
    let h = build_overlap_graph(&pooled);
    let chosen = select_independent(&h, mode)?;
    let independent: Vec<MotifInstance> = chosen.into_iter().map(|i| pooled[i].clone()).collect();
    for inst in &independent {
        removed.extend(inst.edges.iter().copied());
    }
    Ok(outcome_from_selection(motif, pooled.len(), independent))
}

/// Growth contributed by one instance: every bound edge is new; a vertex
/// is new when its first incident edge inside the instance is its global
/// birth edge (isolated vertices are always new).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralContribution {
    pub new_vertices: usize,
    pub new_edges: usize,
}

pub fn instance_structural_contribution(
    inst: &MotifInstance,
    graph: &TemporalGraph,
    births: &BirthTimes,
) -> StructuralContribution {
    let time_of: HashMap<EdgeId, &crate::graph::TemporalEdge> =
        graph.edges().iter().map(|e| (e.id, e)).collect();
    let mut first_in_instance: HashMap<VertexId, Timestamp> = HashMap::new();
    for id in &inst.edges {
        let e = time_of[id];
        for v in [e.src, e.dst] {
            first_in_instance
                .entry(v)
                .and_modify(|t| *t = (*t).min(e.time))
                .or_insert(e.time);
        }
    }
    let new_vertices = inst
        .vertices
        .iter()
        .collect::<BTreeSet<_>>()
        .iter()
        .filter(|&&&v| match births.get(v) {
            None => true,
            Some(birth) => first_in_instance.get(&v) == Some(&birth),
        })
        .count();
    StructuralContribution {
        new_vertices,
        new_edges: inst.edges.len(),
    }
}

/// Counts each (instance, vertex) pair once under the vertex's orbit.
pub fn orbit_occupancy(
    result: &ItemResult,
    catalog: &MotifCatalog,
) -> HashMap<(String, u8), u64> {
    let mut out: HashMap<(String, u8), u64> = HashMap::new();
    for (motif_id, orbit, _v) in orbit_visits(result, catalog) {
        *out.entry((motif_id, orbit)).or_insert(0) += 1;
    }
    out
}

/// Per-vertex orbit visit counts, for role-evolution analysis.
pub fn orbit_occupancy_by_vertex(
    result: &ItemResult,
    catalog: &MotifCatalog,
) -> HashMap<(VertexId, String, u8), u64> {
    let mut out = HashMap::new();
    for (motif_id, orbit, v) in orbit_visits(result, catalog) {
        *out.entry((v, motif_id, orbit)).or_insert(0) += 1;
    }
    out
}

fn orbit_visits<'a>(
    result: &'a ItemResult,
    catalog: &'a MotifCatalog,
) -> impl Iterator<Item = (String, u8, VertexId)> + 'a {
    result.per_motif.iter().flat_map(move |outcome| {
        let motif = catalog.get(&outcome.motif_id);
        outcome.independent.iter().flat_map(move |inst| {
            let mut seen: HashSet<VertexId> = HashSet::new();
            let mut visits = Vec::new();
            if let Some(m) = motif {
                for (role, &v) in inst.vertices.iter().enumerate() {
                    if seen.insert(v) {
                        visits.push((m.id.clone(), m.orbit_of[role], v));
                    }
                }
            }
            visits
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;

    fn triangle_pair() -> TemporalGraph {
        // Two m5-style triangles sharing the edge (2,3,20).
        TemporalGraph::from_triples(&[
            (1, 2, 10),
            (2, 3, 20),
            (3, 1, 30),
            (3, 4, 40),
            (4, 2, 15),
        ])
    }

    #[test]
    fn overlap_graph_shared_edge() {
        let insts = vec![
            MotifInstance {
                motif_id: "m5".into(),
                variant: 0,
                vertices: vec![1, 2, 3],
                edges: vec![0, 1, 2],
                t_first: 10,
                t_last: 30,
            },
            MotifInstance {
                motif_id: "m5".into(),
                variant: 1,
                vertices: vec![4, 2, 3],
                edges: vec![4, 1, 3],
                t_first: 15,
                t_last: 40,
            },
        ];
        let h = build_overlap_graph(&insts);
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(h.num_edges(), 1);
    }

    #[test]
    fn disjoint_instances_make_edgeless_overlap() {
        let insts = vec![
            MotifInstance {
                motif_id: "m4".into(),
                variant: 0,
                vertices: vec![1, 2],
                edges: vec![0, 1],
                t_first: 0,
                t_last: 1,
            },
            MotifInstance {
                motif_id: "m4".into(),
                variant: 0,
                vertices: vec![3, 4],
                edges: vec![2, 3],
                t_first: 0,
                t_last: 1,
            },
        ];
        let h = build_overlap_graph(&insts);
        assert_eq!(h.num_edges(), 0);
        let all = select_independent(&h, SelectionMode::GreedyTemporal).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn three_instances_one_bucket_make_triangle() {
        let insts: Vec<MotifInstance> = (0..3)
            .map(|i| MotifInstance {
                motif_id: "m14".into(),
                variant: 0,
                vertices: vec![i, i + 10, i + 20],
                edges: vec![99, 10 + i],
                t_first: 0,
                t_last: i64::from(i),
            })
            .collect();
        let h = build_overlap_graph(&insts);
        assert_eq!(h.num_edges(), 3);
    }

    #[test]
    fn greedy_prefers_earlier_completion() {
        let insts = vec![
            MotifInstance {
                motif_id: "a".into(),
                variant: 0,
                vertices: vec![1, 2],
                edges: vec![7],
                t_first: 0,
                t_last: 5,
            },
            MotifInstance {
                motif_id: "b".into(),
                variant: 0,
                vertices: vec![1, 3],
                edges: vec![7],
                t_first: 0,
                t_last: 9,
            },
        ];
        let h = build_overlap_graph(&insts);
        let sel = select_independent(&h, SelectionMode::GreedyTemporal).unwrap();
        assert_eq!(sel, vec![0]);
    }

    #[test]
    fn c5_selections() {
        let h = OverlapGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let exact = select_independent(&h, SelectionMode::Exact).unwrap();
        assert_eq!(exact.len(), 2);
        assert_eq!(
            select_independent(&h, SelectionMode::GreedyTemporal)
                .unwrap()
                .len(),
            2
        );
        for seed in 0..10 {
            let luby = select_independent(&h, SelectionMode::LubyRandom(seed)).unwrap();
            assert_eq!(luby.len(), 2); // every maximal independent set of C5 has size 2
        }
    }

    #[test]
    fn exact_refuses_oversized() {
        let h = OverlapGraph::from_edges(41, &[]);
        assert!(matches!(
            select_independent(&h, SelectionMode::Exact),
            Err(ItemError::ExactMisTooLarge { .. })
        ));
    }

    #[test]
    fn shared_edge_halves_independence() {
        let g = triangle_pair();
        let cat = default_catalog();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        let m5 = res.outcome("m5").unwrap();
        assert_eq!(m5.overlap_count, 2);
        assert_eq!(m5.independent.len(), 1);
        assert!((m5.dm - 0.5).abs() < 1e-12);
    }

    #[test]
    fn disjoint_triangles_saturate_metrics() {
        let mut triples = Vec::new();
        for k in 0..4u32 {
            let base = k * 3 + 1;
            triples.push((base, base + 1, i64::from(k) * 100 + 10));
            triples.push((base + 1, base + 2, i64::from(k) * 100 + 20));
            triples.push((base + 2, base, i64::from(k) * 100 + 30));
        }
        let g = TemporalGraph::from_triples(&triples);
        let cat = default_catalog();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        let m5 = res.outcome("m5").unwrap();
        assert_eq!(m5.overlap_count, 4);
        assert!((m5.dm - 1.0).abs() < 1e-12);
        assert!((m5.dv - 1.0).abs() < 1e-12);
    }

    #[test]
    fn edge_disjoint_and_conserved() {
        let g = triangle_pair();
        let cat = default_catalog();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        let mut seen = HashSet::new();
        let mut consumed_total = 0usize;
        for o in &res.per_motif {
            for inst in &o.independent {
                for &e in &inst.edges {
                    assert!(seen.insert(e), "edge {e} reused");
                    consumed_total += 1;
                }
            }
        }
        assert_eq!(consumed_total, res.total_edges);
    }

    #[test]
    fn rerun_on_residual_finds_no_core() {
        // Residual-only graphs must be a fixed point of the pipeline.
        let g = triangle_pair();
        let cat = default_catalog();
        let cfg = EnumerationConfig::default();
        let res = extract_items(&g, &cat, &cfg, SelectionMode::GreedyTemporal).unwrap();
        let residual_ids: HashSet<EdgeId> = res
            .outcome("m15")
            .unwrap()
            .independent
            .iter()
            .flat_map(|i| i.edges.clone())
            .collect();
        let leftover = g.restrict(|e| residual_ids.contains(&e.id));
        let res2 = extract_items(&leftover, &cat, &cfg, SelectionMode::GreedyTemporal).unwrap();
        for o in &res2.per_motif {
            if o.motif_id != "m15" && o.motif_id != "m2" && o.motif_id != "m1" {
                assert_eq!(o.independent.len(), 0, "{} found on residual", o.motif_id);
            }
        }
    }

    #[test]
    fn structural_contribution_new_vs_reused() {
        // Triangle whose three vertices all first appear inside it.
        let g = TemporalGraph::from_triples(&[(1, 2, 10), (2, 3, 20), (3, 1, 30)]);
        let births = g.birth_times();
        let inst = MotifInstance {
            motif_id: "m5".into(),
            variant: 0,
            vertices: g.edges().iter().map(|e| e.src).collect(),
            edges: g.edges().iter().map(|e| e.id).collect(),
            t_first: 10,
            t_last: 30,
        };
        let c = instance_structural_contribution(&inst, &g, &births);
        assert_eq!(c.new_vertices, 3);
        assert_eq!(c.new_edges, 3);

        // Same triangle but two vertices existed earlier.
        let g2 = TemporalGraph::from_triples(&[
            (1, 9, 0),
            (2, 9, 1),
            (1, 2, 10),
            (2, 3, 20),
            (3, 1, 30),
        ]);
        let births2 = g2.birth_times();
        let tri_edges: Vec<EdgeId> = g2
            .edges()
            .iter()
            .filter(|e| e.time >= 10)
            .map(|e| e.id)
            .collect();
        let verts: Vec<VertexId> = g2
            .edges()
            .iter()
            .filter(|e| e.time >= 10)
            .map(|e| e.src)
            .collect();
        let inst2 = MotifInstance {
            motif_id: "m5".into(),
            variant: 0,
            vertices: verts,
            edges: tri_edges,
            t_first: 10,
            t_last: 30,
        };
        let c2 = instance_structural_contribution(&inst2, &g2, &births2);
        assert_eq!(c2.new_vertices, 1);
        assert_eq!(c2.new_edges, 3);
    }

    #[test]
    fn orbit_occupancy_star() {
        let g = TemporalGraph::from_triples(&[(1, 9, 10), (2, 9, 20), (3, 9, 30)]);
        let cat = default_catalog();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        assert_eq!(res.item_count("m10"), 1);
        let occ = orbit_occupancy(&res, &cat);
        let hub_orbit = cat.get("m10").unwrap().orbit_of[0];
        let leaf_orbit = cat.get("m10").unwrap().orbit_of[1];
        assert_eq!(occ[&("m10".to_string(), hub_orbit)], 1);
        assert_eq!(occ[&("m10".to_string(), leaf_orbit)], 3);
    }

    #[test]
    fn orbit_occupancy_middle_vertex_twice() {
        // Vertex 2 sits in the middle of two 2-paths: 1->2->3 and 4->2->5.
        let g = TemporalGraph::from_triples(&[
            (1, 2, 10),
            (2, 3, 20),
            (4, 2, 30),
            (2, 5, 40),
        ]);
        // m14 ahead of the wedges so both paths survive selection.
        let cat = default_catalog()
            .with_search_order(
                &["m1", "m2", "m3", "m4", "m7", "m8", "m9", "m5", "m6", "m10", "m11", "m14",
                    "m12", "m13", "m15"]
                    .map(String::from),
            )
            .unwrap();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        assert_eq!(res.item_count("m14"), 2);
        let by_vertex = orbit_occupancy_by_vertex(&res, &cat);
        let m14 = cat.get("m14").unwrap();
        let middle_orbit = m14.orbit_of[1];
        let middle_vertex = res.outcome("m14").unwrap().independent[0].vertices[1];
        assert_eq!(
            by_vertex[&(middle_vertex, "m14".to_string(), middle_orbit)],
            2
        );
    }

    #[test]
    fn empty_result_has_empty_occupancy() {
        let g = TemporalGraph::from_triples(&[]);
        let cat = default_catalog();
        let res = extract_items(
            &g,
            &cat,
            &EnumerationConfig::default(),
            SelectionMode::GreedyTemporal,
        )
        .unwrap();
        assert!(orbit_occupancy(&res, &cat).is_empty());
    }
}
