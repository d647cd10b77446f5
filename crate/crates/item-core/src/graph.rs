//! Temporal-graph data model: edge-list ingestion, window partitioning,
//! vertex birth-times, and basic statistics.
//!
//! A [`TemporalGraph`] is an immutable multiset of directed timestamped
//! edges. Edge ids are assigned in load order and stay global across
//! window slices, so edge consumption downstream can be tracked against
//! the original graph.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;
use std::sync::Arc;

use crate::error::{ItemError, Result};

pub type VertexId = u32;
pub type EdgeId = u32;
pub type Timestamp = i64;

/// One directed timestamped edge. `id` is unique within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub time: Timestamp,
    pub id: EdgeId,
}

impl TemporalEdge {
    /// Total order used for temporal-tie resolution: `(time, id)`.
    /// Load order breaks timestamp ties.
    pub fn time_key(&self) -> (Timestamp, EdgeId) {
        (self.time, self.id)
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// Immutable directed temporal multigraph.
#[derive(Debug, Clone)]
pub struct TemporalGraph {
    edges: Vec<TemporalEdge>,
    /// Intern table mapping dense `VertexId` back to the input label.
    names: Arc<Vec<String>>,
    /// Sorted distinct vertex ids present in this graph (slice), including
    /// isolated vertices declared via a vertex sidecar.
    vertices: Vec<VertexId>,
    span: Option<(Timestamp, Timestamp)>,
}

/// Options controlling edge-list parsing.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub delimiter: Option<char>,
    pub has_header: bool,
    pub time_unit: TimeUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeUnit {
    Seconds,
    Milliseconds,
    Raw,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            delimiter: None,
            has_header: false,
            time_unit: TimeUnit::Raw,
        }
    }
}

/// A contiguous half-open time slice `[start, end)` of a temporal graph.
#[derive(Debug, Clone)]
pub struct WindowGraph {
    pub id: usize,
    pub start: Timestamp,
    pub end: Timestamp,
    pub graph: TemporalGraph,
    /// Fraction of all temporal edges of the parent graph inside this window.
    pub importance: f64,
}

/// How to partition a graph into windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSpec {
    Duration(u64),
    Count(usize),
}

/// Timestamp of the first incident edge, per vertex.
#[derive(Debug, Clone, Default)]
pub struct BirthTimes {
    first: HashMap<VertexId, Timestamp>,
}

impl BirthTimes {
    pub fn get(&self, v: VertexId) -> Option<Timestamp> {
        self.first.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GraphStats {
    pub num_vertices: usize,
    pub num_temporal_edges: usize,
    pub num_static_edges: usize,
    pub span: Option<(Timestamp, Timestamp)>,
}

/// Incremental constructor used by the loader and the synthetic generator.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    interner: HashMap<String, VertexId>,
    names: Vec<String>,
    triples: Vec<(VertexId, VertexId, Timestamp)>,
    isolated: Vec<VertexId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.interner.get(name) {
            return id;
        }
        let id = self.names.len() as VertexId;
        self.names.push(name.to_owned());
        self.interner.insert(name.to_owned(), id);
        id
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, time: Timestamp) {
        let s = self.intern(src);
        let d = self.intern(dst);
        self.triples.push((s, d, time));
    }

    /// Declares a vertex that may have no incident edges.
    pub fn add_vertex(&mut self, name: &str) {
        let id = self.intern(name);
        self.isolated.push(id);
    }

    pub fn build(self) -> TemporalGraph {
        TemporalGraph::assemble(self.names, self.triples)
    }
}

impl TemporalGraph {
    fn assemble(names: Vec<String>, triples: Vec<(VertexId, VertexId, Timestamp)>) -> Self {
        // Edge ids follow input order, then everything is sorted by
        // (time, src, dst, id).
        let mut edges: Vec<TemporalEdge> = triples
            .into_iter()
            .enumerate()
            .map(|(i, (src, dst, time))| TemporalEdge {
                src,
                dst,
                time,
                id: i as EdgeId,
            })
            .collect();
        edges.sort_by_key(|e| (e.time, e.src, e.dst, e.id));
        let span = if edges.is_empty() {
            None
        } else {
            let lo = edges.first().unwrap().time;
            let hi = edges.iter().map(|e| e.time).max().unwrap();
            Some((lo, hi))
        };
        let vertices: Vec<VertexId> = (0..names.len() as VertexId).collect();
        Self {
            edges,
            names: Arc::new(names),
            vertices,
            span,
        }
    }

    /// Builds a graph from numeric triples; vertex labels are the decimal ids.
    pub fn from_triples(triples: &[(u32, u32, Timestamp)]) -> Self {
        let mut b = GraphBuilder::new();
        for &(s, d, t) in triples {
            b.add_edge(&s.to_string(), &d.to_string(), t);
        }
        b.build()
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn span(&self) -> Option<(Timestamp, Timestamp)> {
        self.span
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &Arc<Vec<String>> {
        &self.names
    }

    /// Restricts the graph to a subset of its edges, keeping global edge ids.
    /// The vertex set of the slice is the set of endpoints.
    pub fn restrict(&self, keep: impl Fn(&TemporalEdge) -> bool) -> TemporalGraph {
        let edges: Vec<TemporalEdge> = self.edges.iter().filter(|e| keep(e)).copied().collect();
        let mut verts: Vec<VertexId> = edges.iter().flat_map(|e| [e.src, e.dst]).collect();
        verts.sort_unstable();
        verts.dedup();
        let span = if edges.is_empty() {
            None
        } else {
            Some((
                edges.iter().map(|e| e.time).min().unwrap(),
                edges.iter().map(|e| e.time).max().unwrap(),
            ))
        };
        TemporalGraph {
            edges,
            names: Arc::clone(&self.names),
            vertices: verts,
            span,
        }
    }

    /// Parses a whitespace- or comma-separated edge list: `src dst time`
    /// per line, `#` comments skipped, extra columns ignored.
    pub fn load_edge_list<R: BufRead>(reader: R, options: &LoadOptions) -> Result<TemporalGraph> {
        let mut b = GraphBuilder::new();
        let mut header_pending = options.has_header;
        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            if header_pending {
                header_pending = false;
                continue;
            }
            let fields: Vec<&str> = match options.delimiter {
                Some(d) => trimmed.split(d).map(str::trim).filter(|f| !f.is_empty()).collect(),
                None => trimmed
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|f| !f.is_empty())
                    .collect(),
            };
            if fields.len() < 3 {
                return Err(ItemError::ParseEdge {
                    line: lineno,
                    reason: format!("expected at least 3 fields, got {}", fields.len()),
                });
            }
            let raw_time: i64 = fields[2].parse().map_err(|_| ItemError::ParseEdge {
                line: lineno,
                reason: format!("bad timestamp {:?}", fields[2]),
            })?;
            let time = match options.time_unit {
                TimeUnit::Milliseconds => raw_time.div_euclid(1000),
                TimeUnit::Seconds | TimeUnit::Raw => raw_time,
            };
            if time < 0 {
                return Err(ItemError::ParseEdge {
                    line: lineno,
                    reason: format!("negative timestamp {time}"),
                });
            }
            b.add_edge(fields[0], fields[1], time);
        }
        Ok(b.build())
    }

    /// Reads a vertex sidecar (one label per line) and returns a graph whose
    /// vertex set additionally contains those labels. Needed to express
    /// isolated vertices, which edge lists cannot carry.
    pub fn with_vertex_list<R: BufRead>(&self, reader: R) -> Result<TemporalGraph> {
        let mut names: Vec<String> = (*self.names).clone();
        let mut index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as VertexId))
            .collect();
        let mut vertices = self.vertices.clone();
        for line in reader.lines() {
            let line = line?;
            let label = line.trim();
            if label.is_empty() || label.starts_with('#') {
                continue;
            }
            if !index.contains_key(label) {
                let id = names.len() as VertexId;
                names.push(label.to_owned());
                index.insert(label.to_owned(), id);
                vertices.push(id);
            }
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(TemporalGraph {
            edges: self.edges.clone(),
            names: Arc::new(names),
            vertices,
            span: self.span,
        })
    }

    /// Splits the graph into half-open windows `[start, end)` aligned at
    /// `t_min`. Importance of each window is `|E_i| / |E_T|`.
    pub fn window_partition(&self, spec: WindowSpec) -> Result<Vec<WindowGraph>> {
        match spec {
            WindowSpec::Duration(0) => {
                return Err(ItemError::InvalidArgument("window duration must be > 0".into()))
            }
            WindowSpec::Count(0) => {
                return Err(ItemError::InvalidArgument("window count must be >= 1".into()))
            }
            _ => {}
        }
        let Some((t_min, t_max)) = self.span else {
            return Ok(Vec::new());
        };
        let extent = (t_max - t_min + 1) as u64;
        let (duration, count) = match spec {
            WindowSpec::Duration(d) => (d, extent.div_ceil(d) as usize),
            WindowSpec::Count(c) => (extent.div_ceil(c as u64), c),
        };
        let total = self.edges.len() as f64;
        let mut buckets: Vec<Vec<TemporalEdge>> = vec![Vec::new(); count];
        for e in &self.edges {
            let idx = (((e.time - t_min) as u64) / duration) as usize;
            buckets[idx.min(count - 1)].push(*e);
        }
        let windows = buckets
            .into_iter()
            .enumerate()
            .map(|(i, edges)| {
                let start = t_min + (i as u64 * duration) as Timestamp;
                let end = start + duration as Timestamp;
                let importance = if total > 0.0 {
                    edges.len() as f64 / total
                } else {
                    0.0
                };
                let mut verts: Vec<VertexId> = edges.iter().flat_map(|e| [e.src, e.dst]).collect();
                verts.sort_unstable();
                verts.dedup();
                let span = if edges.is_empty() {
                    None
                } else {
                    Some((
                        edges.iter().map(|e| e.time).min().unwrap(),
                        edges.iter().map(|e| e.time).max().unwrap(),
                    ))
                };
                WindowGraph {
                    id: i,
                    start,
                    end,
                    graph: TemporalGraph {
                        edges,
                        names: Arc::clone(&self.names),
                        vertices: verts,
                        span,
                    },
                    importance,
                }
            })
            .collect();
        Ok(windows)
    }

    /// Earliest incident-edge timestamp per vertex. Vertices with no edges
    /// are absent from the map.
    pub fn birth_times(&self) -> BirthTimes {
        let mut first: HashMap<VertexId, Timestamp> = HashMap::new();
        // Edges are time-sorted, so the first sighting wins.
        for e in &self.edges {
            first.entry(e.src).or_insert(e.time);
            first.entry(e.dst).or_insert(e.time);
        }
        BirthTimes { first }
    }

    pub fn stats(&self) -> GraphStats {
        let static_pairs: HashSet<(VertexId, VertexId)> =
            self.edges.iter().map(|e| (e.src, e.dst)).collect();
        GraphStats {
            num_vertices: self.num_vertices(),
            num_temporal_edges: self.edges.len(),
            num_static_edges: static_pairs.len(),
            span: self.span,
        }
    }
}
