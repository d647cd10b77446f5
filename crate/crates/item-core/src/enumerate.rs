//! Overlapping-instance enumeration: find every binding of a temporal
//! motif type in (the remainder of) a temporal graph.
//!
//! The matcher processes template edges in arrival-rank order and extends
//! partial bindings through time-sorted adjacency lists, pruning on the
//! optional delta span and on vertex-binding conflicts. Equal timestamps
//! are ordered by edge id (load order) and count as satisfying the
//! temporal ordering.

use std::collections::HashMap;

use crate::catalog::{RoleId, TemporalMotifType};
use crate::error::{ItemError, Result};
use crate::graph::{EdgeId, TemporalEdge, TemporalGraph, Timestamp, VertexId};

pub const DEFAULT_MAX_INSTANCES: usize = 10_000_000;
const ORACLE_EDGE_LIMIT: usize = 30;

#[derive(Debug, Clone, Copy)]
pub struct EnumerationConfig {
    /// Maximum allowed `t_last - t_first`; unbounded when absent.
    pub delta: Option<i64>,
    /// Cap on instances per (graph, motif type); exceeding it is an error.
    pub max_instances: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            delta: None,
            max_instances: DEFAULT_MAX_INSTANCES,
        }
    }
}

/// A concrete binding of a temporal motif type to graph edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifInstance {
    pub motif_id: String,
    pub variant: usize,
    /// Role id -> bound vertex.
    pub vertices: Vec<VertexId>,
    /// Bound edge ids in arrival-rank order.
    pub edges: Vec<EdgeId>,
    pub t_first: Timestamp,
    pub t_last: Timestamp,
}

impl MotifInstance {
    /// Canonical string identity: motif id plus edge bindings in rank
    /// order (vertex binding for edgeless instances).
    pub fn label(&self) -> String {
        if self.edges.is_empty() {
            format!("{}[v{}]", self.motif_id, self.vertices[0])
        } else {
            let ids: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
            format!("{}[{}]", self.motif_id, ids.join(","))
        }
    }

    pub fn span(&self) -> i64 {
        self.t_last - self.t_first
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FringeKind {
    IsolatedVertex,
    IsolatedEdge,
}

/// Time-sorted adjacency index over one graph slice. Edges are indexed by
/// position in a `(time, id)`-sorted array so candidate scans are range
/// scans.
pub struct AdjacencyIndex {
    edges: Vec<TemporalEdge>,
    out: HashMap<VertexId, Vec<usize>>,
    inc: HashMap<VertexId, Vec<usize>>,
    pair: HashMap<(VertexId, VertexId), Vec<usize>>,
}

impl AdjacencyIndex {
    pub fn build(graph: &TemporalGraph) -> Self {
        let mut edges = graph.edges().to_vec();
        edges.sort_by_key(TemporalEdge::time_key);
        let mut out: HashMap<VertexId, Vec<usize>> = HashMap::new();
        let mut inc: HashMap<VertexId, Vec<usize>> = HashMap::new();
        let mut pair: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            out.entry(e.src).or_default().push(i);
            inc.entry(e.dst).or_default().push(i);
            pair.entry((e.src, e.dst)).or_default().push(i);
        }
        Self {
            edges,
            out,
            inc,
            pair,
        }
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}

struct Matcher<'a> {
    index: &'a AdjacencyIndex,
    seq: &'a [(RoleId, RoleId)],
    /// Order in which sequence ranks are bound during search. Each step
    /// extends the bound vertex set through a shared role whenever the
    /// template allows it, so candidate scans stay adjacency-sized
    /// instead of degenerating into whole-slice scans when a
    /// mid-sequence template edge touches only unbound roles.
    order: Vec<usize>,
    delta: Option<i64>,
    limit: usize,
}

struct MatchState {
    roles: Vec<Option<VertexId>>,
    /// Chosen edge position per sequence rank (not per search step).
    chosen: Vec<Option<usize>>,
    out: Vec<MotifInstance>,
}

/// Connectivity-first permutation of sequence ranks: starts at rank 0 and
/// repeatedly picks the earliest unbound rank that shares a role with the
/// already-bound ones, falling back to the earliest remaining rank for
/// disconnected templates.
fn binding_order(seq: &[(RoleId, RoleId)]) -> Vec<usize> {
    let mut order = Vec::with_capacity(seq.len());
    let mut used = vec![false; seq.len()];
    let mut bound = [false; u8::MAX as usize + 1];
    while order.len() < seq.len() {
        let pick = (0..seq.len())
            .filter(|&r| !used[r])
            .find(|&r| bound[seq[r].0 as usize] || bound[seq[r].1 as usize])
            .unwrap_or_else(|| (0..seq.len()).position(|r| !used[r]).unwrap());
        used[pick] = true;
        bound[seq[pick].0 as usize] = true;
        bound[seq[pick].1 as usize] = true;
        order.push(pick);
    }
    order
}

impl<'a> Matcher<'a> {
    /// Whether `edge` can bind the template pair at `rank` given the
    /// current role assignment. Arrival ordering is already enforced by
    /// the position range in [`Self::candidate_positions`].
    fn admissible(&self, state: &MatchState, rank: usize, edge: &TemporalEdge) -> bool {
        let (ru, rv) = self.seq[rank];
        // Loop template edges bind only loops; non-loop ones never do.
        if (ru == rv) != edge.is_loop() {
            return false;
        }
        if let Some(delta) = self.delta {
            for c in state.chosen.iter().flatten() {
                if (edge.time - self.index.edges[*c].time).abs() > delta {
                    return false;
                }
            }
        }
        let check = |role: RoleId, vertex: VertexId, roles: &[Option<VertexId>]| match roles
            [role as usize]
        {
            Some(bound) => bound == vertex,
            // Distinct roles bind pairwise-distinct vertices.
            None => !roles.iter().any(|r| *r == Some(vertex)),
        };
        if !check(ru, edge.src, &state.roles) {
            return false;
        }
        if ru != rv {
            // Simulate binding of ru before checking rv.
            let mut roles = state.roles.clone();
            roles[ru as usize] = Some(edge.src);
            if !check(rv, edge.dst, &roles) {
                return false;
            }
        }
        true
    }

    /// Candidates for `rank`: the adjacency list selected by the bound
    /// roles, clipped to the exclusive position range between the nearest
    /// bound lower and higher ranks. Positions follow `(time, id)` order,
    /// so the range clip *is* the arrival-ordering constraint (and makes
    /// chosen positions pairwise distinct).
    fn candidate_positions(&self, state: &MatchState, rank: usize) -> Vec<usize> {
        static EMPTY: Vec<usize> = Vec::new();
        let lb = (0..rank).rev().find_map(|r| state.chosen[r]);
        let ub = (rank + 1..self.seq.len()).find_map(|r| state.chosen[r]);
        let (ru, rv) = self.seq[rank];
        let u = state.roles[ru as usize];
        let v = state.roles[rv as usize];
        let list: &Vec<usize> = match (u, v) {
            (Some(a), Some(b)) => self.index.pair.get(&(a, b)).unwrap_or(&EMPTY),
            (Some(a), None) => self.index.out.get(&a).unwrap_or(&EMPTY),
            (None, Some(b)) => self.index.inc.get(&b).unwrap_or(&EMPTY),
            (None, None) => {
                let start = lb.map_or(0, |p| p + 1);
                let end = ub.unwrap_or(self.index.edges.len());
                return (start..end.max(start)).collect();
            }
        };
        let start = lb.map_or(0, |p| list.partition_point(|&q| q <= p));
        let end = ub.map_or(list.len(), |p| list.partition_point(|&q| q < p));
        list[start..end.max(start)].to_vec()
    }

    fn extend(&self, state: &mut MatchState, step: usize, tmt: &TemporalMotifType) -> Result<()> {
        if step == self.order.len() {
            let first = &self.index.edges[state.chosen[0].unwrap()];
            let last = &self.index.edges[state.chosen[self.seq.len() - 1].unwrap()];
            if state.out.len() >= self.limit {
                return Err(ItemError::InstanceLimit {
                    motif: tmt.key(),
                    limit: self.limit,
                    found: state.out.len(),
                });
            }
            state.out.push(MotifInstance {
                motif_id: tmt.atomic.id.clone(),
                variant: tmt.variant,
                vertices: state.roles.iter().map(|r| r.unwrap()).collect(),
                edges: state
                    .chosen
                    .iter()
                    .map(|c| self.index.edges[c.unwrap()].id)
                    .collect(),
                t_first: first.time,
                t_last: last.time,
            });
            return Ok(());
        }
        let rank = self.order[step];
        for pos in self.candidate_positions(state, rank) {
            let edge = self.index.edges[pos];
            if !self.admissible(state, rank, &edge) {
                continue;
            }
            let (ru, rv) = self.seq[rank];
            let saved_u = state.roles[ru as usize];
            let saved_v = state.roles[rv as usize];
            state.roles[ru as usize] = Some(edge.src);
            state.roles[rv as usize] = Some(edge.dst);
            state.chosen[rank] = Some(pos);
            self.extend(state, step + 1, tmt)?;
            state.chosen[rank] = None;
            state.roles[ru as usize] = saved_u;
            state.roles[rv as usize] = saved_v;
        }
        Ok(())
    }
}

/// Finds every overlapping instance of `tmt` (F1 counting). Output is
/// complete and deterministically ordered by `(t_last, label)`.
pub fn find_instances(
    graph: &TemporalGraph,
    tmt: &TemporalMotifType,
    cfg: &EnumerationConfig,
) -> Result<Vec<MotifInstance>> {
    let index = AdjacencyIndex::build(graph);
    find_instances_indexed(&index, tmt, cfg)
}

pub fn find_instances_indexed(
    index: &AdjacencyIndex,
    tmt: &TemporalMotifType,
    cfg: &EnumerationConfig,
) -> Result<Vec<MotifInstance>> {
    if tmt.sequence.is_empty() {
        return Err(ItemError::EdgelessMotif {
            motif: tmt.atomic.id.clone(),
        });
    }
    let matcher = Matcher {
        index,
        seq: &tmt.sequence,
        order: binding_order(&tmt.sequence),
        delta: cfg.delta,
        limit: cfg.max_instances,
    };
    let mut state = MatchState {
        roles: vec![None; tmt.atomic.order as usize],
        chosen: vec![None; tmt.sequence.len()],
        out: Vec::new(),
    };
    matcher.extend(&mut state, 0, tmt)?;
    let mut out = state.out;
    out.sort_by(|a, b| (a.t_last, &a.edges).cmp(&(b.t_last, &b.edges)));
    Ok(out)
}

/// Fringe detection on the initial graph: degree-0 vertices or edges whose
/// endpoints touch no other edge.
pub fn find_fringe(graph: &TemporalGraph, kind: FringeKind) -> Vec<MotifInstance> {
    match kind {
        FringeKind::IsolatedVertex => {
            let mut incident: HashMap<VertexId, usize> = HashMap::new();
            for e in graph.edges() {
                *incident.entry(e.src).or_insert(0) += 1;
                *incident.entry(e.dst).or_insert(0) += 1;
            }
            graph
                .vertices()
                .iter()
                .copied()
                .filter(|v| !incident.contains_key(v))
                .map(|v| MotifInstance {
                    motif_id: "m1".into(),
                    variant: 0,
                    vertices: vec![v],
                    edges: vec![],
                    t_first: 0,
                    t_last: 0,
                })
                .collect()
        }
        FringeKind::IsolatedEdge => {
            let mut incident: HashMap<VertexId, usize> = HashMap::new();
            for e in graph.edges() {
                *incident.entry(e.src).or_insert(0) += 1;
                *incident.entry(e.dst).or_insert(0) += 1;
            }
            graph
                .edges()
                .iter()
                .filter(|e| {
                    !e.is_loop() && incident[&e.src] == 1 && incident[&e.dst] == 1
                })
                .map(|e| MotifInstance {
                    motif_id: "m2".into(),
                    variant: 0,
                    vertices: vec![e.src, e.dst],
                    edges: vec![e.id],
                    t_first: e.time,
                    t_last: e.time,
                })
                .collect()
        }
    }
}

/// Exhaustive oracle: enumerates every edge subset of the right size and
/// pattern-matches the time-ordered subset against the variant modulo
/// automorphisms. Independent of the backtracking matcher; refuses graphs
/// above [`ORACLE_EDGE_LIMIT`] edges.
pub fn brute_force_instances(
    graph: &TemporalGraph,
    tmt: &TemporalMotifType,
    cfg: &EnumerationConfig,
) -> Result<Vec<MotifInstance>> {
    if graph.num_edges() > ORACLE_EDGE_LIMIT {
        return Err(ItemError::OracleTooLarge {
            edges: graph.num_edges(),
            limit: ORACLE_EDGE_LIMIT,
        });
    }
    if tmt.sequence.is_empty() {
        return Err(ItemError::EdgelessMotif {
            motif: tmt.atomic.id.clone(),
        });
    }
    let auts = crate::catalog::automorphisms(tmt.atomic.order, &tmt.atomic.edges);
    let images: Vec<Vec<(RoleId, RoleId)>> = auts
        .iter()
        .map(|a| {
            tmt.sequence
                .iter()
                .map(|&(u, v)| (a[u as usize], a[v as usize]))
                .collect()
        })
        .collect();
    let mut edges = graph.edges().to_vec();
    edges.sort_by_key(TemporalEdge::time_key);
    let m = tmt.sequence.len();
    let mut out = Vec::new();
    let mut subset = vec![0usize; m];
    enumerate_subsets(edges.len(), m, &mut subset, 0, 0, &mut |chosen| {
        let seq: Vec<&TemporalEdge> = chosen.iter().map(|&i| &edges[i]).collect();
        if let Some(delta) = cfg.delta {
            if seq[m - 1].time - seq[0].time > delta {
                return;
            }
        }
        for (aut, image) in auts.iter().zip(&images) {
            if let Some(assign) = bind_roles(tmt.atomic.order, image, &seq) {
                // `assign` binds the automorphism-image roles; compose back
                // to the canonical variant's roles.
                let vertices: Vec<VertexId> = (0..tmt.atomic.order as usize)
                    .map(|r| assign[aut[r] as usize].unwrap())
                    .collect();
                out.push(MotifInstance {
                    motif_id: tmt.atomic.id.clone(),
                    variant: tmt.variant,
                    vertices,
                    edges: seq.iter().map(|e| e.id).collect(),
                    t_first: seq[0].time,
                    t_last: seq[m - 1].time,
                });
                return;
            }
        }
    });
    out.sort_by(|a, b| (a.t_last, &a.edges).cmp(&(b.t_last, &b.edges)));
    Ok(out)
}

fn enumerate_subsets(
    n: usize,
    m: usize,
    subset: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == m {
        visit(subset);
        return;
    }
    for i in start..n {
        subset[depth] = i;
        enumerate_subsets(n, m, subset, depth + 1, i + 1, visit);
    }
}

/// Tries to bind template roles to vertices so the rank-ordered template
/// pairs realize the given edge sequence; the binding must be injective.
fn bind_roles(
    order: u8,
    pattern: &[(RoleId, RoleId)],
    seq: &[&TemporalEdge],
) -> Option<Vec<Option<VertexId>>> {
    let mut role_of: HashMap<VertexId, RoleId> = HashMap::new();
    let mut assign: Vec<Option<VertexId>> = vec![None; order as usize];
    for (&(ru, rv), e) in pattern.iter().zip(seq) {
        if (ru == rv) != e.is_loop() {
            return None;
        }
        for (role, vertex) in [(ru, e.src), (rv, e.dst)] {
            match (assign[role as usize], role_of.get(&vertex)) {
                (Some(bound), _) if bound != vertex => return None,
                (None, Some(&other)) if other != role => return None,
                _ => {
                    assign[role as usize] = Some(vertex);
                    role_of.insert(vertex, role);
                }
            }
        }
    }
    assign.iter().all(Option::is_some).then_some(assign)
}
