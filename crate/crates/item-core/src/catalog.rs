//! Declarative catalog of atomic motifs, their automorphism-derived orbit
//! partitions, and the temporal ordering variants of each motif.
//!
//! Orbit partitions are never declared in catalog files; they are always
//! recomputed by brute force over role permutations (order <= 4, so at
//! most 24 permutations).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{ItemError, Result};

pub type RoleId = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotifKind {
    Fringe,
    Core,
    Residual,
}

/// A small directed subgraph pattern over roles `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicMotifType {
    pub id: String,
    /// Vertex count d.
    pub order: u8,
    /// Directed edge template over role ids; duplicates express multi-edges.
    pub edges: Vec<(RoleId, RoleId)>,
    pub kind: MotifKind,
    /// Role -> orbit index (orbits numbered by smallest member role).
    pub orbit_of: Vec<u8>,
    pub num_orbits: usize,
}

/// An atomic motif plus one canonical edge-arrival ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalMotifType {
    pub atomic: AtomicMotifType,
    /// Index of this variant within the atomic motif (lexicographic order
    /// of canonical sequences).
    pub variant: usize,
    /// Template edges in arrival-rank order; canonical (lexicographically
    /// smallest) representative of its automorphism class.
    pub sequence: Vec<(RoleId, RoleId)>,
}

impl TemporalMotifType {
    pub fn key(&self) -> String {
        format!("{}v{}", self.atomic.id, self.variant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifCatalog {
    motifs: Vec<AtomicMotifType>,
    /// Indices into `motifs`; the residual motif is always last.
    search_order: Vec<usize>,
}

fn permutations(n: u8) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, remaining: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            prefix.push(v);
            rec(prefix, remaining, out);
            prefix.pop();
            remaining.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// All role permutations mapping the edge multiset onto itself.
pub fn automorphisms(order: u8, edges: &[(RoleId, RoleId)]) -> Vec<Vec<u8>> {
    let canonical: BTreeSet<Vec<(RoleId, RoleId)>> = {
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        BTreeSet::from([sorted])
    };
    permutations(order)
        .into_iter()
        .filter(|perm| {
            let mut image: Vec<(RoleId, RoleId)> = edges
                .iter()
                .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
                .collect();
            image.sort_unstable();
            canonical.contains(&image)
        })
        .collect()
}

fn orbit_partition(order: u8, auts: &[Vec<u8>]) -> (Vec<u8>, usize) {
    // Union roles connected by any automorphism, then number orbits by
    // their smallest member.
    let n = order as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for perm in auts {
        for r in 0..n {
            let a = find(&mut parent, r);
            let b = find(&mut parent, perm[r] as usize);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut reps: Vec<usize> = (0..n).map(|r| find(&mut parent, r)).collect();
    let mut distinct: Vec<usize> = reps.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for r in reps.iter_mut() {
        *r = distinct.binary_search(r).unwrap();
    }
    (reps.into_iter().map(|r| r as u8).collect(), distinct.len())
}

fn roles_connected(order: u8, edges: &[(RoleId, RoleId)]) -> bool {
    if edges.is_empty() {
        return order == 1;
    }
    let n = order as usize;
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl AtomicMotifType {
    pub fn new(id: &str, order: u8, edges: Vec<(RoleId, RoleId)>, kind: MotifKind) -> Result<Self> {
        if order == 0 || order > 4 {
            return Err(ItemError::Catalog(format!(
                "motif {id}: order {order} outside 1..=4"
            )));
        }
        for &(u, v) in &edges {
            if u >= order || v >= order {
                return Err(ItemError::Catalog(format!(
                    "motif {id}: edge ({u},{v}) references role outside 0..{order}"
                )));
            }
        }
        if !roles_connected(order, &edges) {
            return Err(ItemError::Catalog(format!(
                "motif {id}: edge template not connected over its roles"
            )));
        }
        let auts = automorphisms(order, &edges);
        let (orbit_of, num_orbits) = orbit_partition(order, &auts);
        Ok(Self {
            id: id.to_owned(),
            order,
            edges,
            kind,
            orbit_of,
            num_orbits,
        })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edgeless single-role motif (isolated vertex).
    pub fn is_isolated_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// Fringe motif matched by the isolation rule rather than enumeration:
    /// a single non-loop edge of kind fringe.
    pub fn is_isolated_edge(&self) -> bool {
        self.kind == MotifKind::Fringe && self.edges.len() == 1 && self.edges[0].0 != self.edges[0].1
    }

    pub fn is_residual(&self) -> bool {
        self.kind == MotifKind::Residual
    }

    /// All edge-arrival orderings reduced modulo the automorphism group.
    pub fn temporal_variants(&self) -> Result<Vec<TemporalMotifType>> {
        if self.edges.is_empty() {
            return Err(ItemError::EdgelessMotif {
                motif: self.id.clone(),
            });
        }
        let auts = automorphisms(self.order, &self.edges);
        let mut canonicals: BTreeSet<Vec<(RoleId, RoleId)>> = BTreeSet::new();
        for perm in permutations(self.edges.len() as u8) {
            let seq: Vec<(RoleId, RoleId)> = perm
                .iter()
                .map(|&i| self.edges[i as usize])
                .collect();
            let canon = auts
                .iter()
                .map(|a| {
                    seq.iter()
                        .map(|&(u, v)| (a[u as usize], a[v as usize]))
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            canonicals.insert(canon);
        }
        Ok(canonicals
            .into_iter()
            .enumerate()
            .map(|(variant, sequence)| TemporalMotifType {
                atomic: self.clone(),
                variant,
                sequence,
            })
            .collect())
    }
}

impl MotifCatalog {
    pub fn new(motifs: Vec<AtomicMotifType>, search_order: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for m in &motifs {
            if !seen.insert(m.id.clone()) {
                return Err(ItemError::Catalog(format!("duplicate motif id {}", m.id)));
            }
        }
        let residuals: Vec<usize> = motifs
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_residual())
            .map(|(i, _)| i)
            .collect();
        if residuals.len() != 1 {
            return Err(ItemError::Catalog(format!(
                "catalog must contain exactly one residual motif, found {}",
                residuals.len()
            )));
        }
        if search_order.len() != motifs.len()
            || search_order.iter().collect::<BTreeSet<_>>().len() != motifs.len()
        {
            return Err(ItemError::Catalog(
                "search order must be a permutation of the catalog".into(),
            ));
        }
        if *search_order.last().unwrap() != residuals[0] {
            return Err(ItemError::Catalog(
                "the residual motif must be last in the search order".into(),
            ));
        }
        Ok(Self {
            motifs,
            search_order,
        })
    }

    pub fn motifs(&self) -> &[AtomicMotifType] {
        &self.motifs
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&AtomicMotifType> {
        self.motifs.iter().find(|m| m.id == id)
    }

    /// Motifs in extraction order (residual last).
    pub fn search_order(&self) -> impl Iterator<Item = &AtomicMotifType> {
        self.search_order.iter().map(|&i| &self.motifs[i])
    }

    /// Replaces the search order, keeping the residual-last invariant.
    pub fn with_search_order(&self, ids: &[String]) -> Result<MotifCatalog> {
        let order: Vec<usize> = ids
            .iter()
            .map(|id| {
                self.motifs
                    .iter()
                    .position(|m| &m.id == id)
                    .ok_or_else(|| ItemError::Catalog(format!("unknown motif id {id}")))
            })
            .collect::<Result<_>>()?;
        MotifCatalog::new(self.motifs.clone(), order)
    }

    /// Canonical text serialization (the parse_catalog format). Stable
    /// across runs; used for provenance hashing.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for m in &self.motifs {
            let kind = match m.kind {
                MotifKind::Fringe => "fringe",
                MotifKind::Core => "core",
                MotifKind::Residual => "residual",
            };
            let _ = writeln!(out, "motif {} vertices={}", m.id, m.order);
            for &(u, v) in &m.edges {
                let _ = writeln!(out, "edge {u} {v}");
            }
            let _ = writeln!(out, "kind={kind}");
        }
        let order: Vec<&str> = self
            .search_order
            .iter()
            .map(|&i| self.motifs[i].id.as_str())
            .collect();
        let _ = writeln!(out, "search-order {}", order.join(" "));
        out
    }

    /// Parses the block-per-motif catalog format. Orbit partitions are
    /// recomputed, never read.
    pub fn parse<R: BufRead>(reader: R) -> Result<MotifCatalog> {
        struct Block {
            id: String,
            order: u8,
            edges: Vec<(RoleId, RoleId)>,
            kind: Option<MotifKind>,
        }
        let mut blocks: Vec<Block> = Vec::new();
        let mut order_ids: Option<Vec<String>> = None;
        let bad = |line: usize, msg: &str| ItemError::Catalog(format!("line {line}: {msg}"));
        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = t.split_whitespace().collect();
            match fields[0] {
                "motif" => {
                    if fields.len() != 3 {
                        return Err(bad(lineno, "expected: motif <id> vertices=<d>"));
                    }
                    let order = fields[2]
                        .strip_prefix("vertices=")
                        .and_then(|s| s.parse::<u8>().ok())
                        .ok_or_else(|| bad(lineno, "expected vertices=<d>"))?;
                    blocks.push(Block {
                        id: fields[1].to_owned(),
                        order,
                        edges: Vec::new(),
                        kind: None,
                    });
                }
                "edge" => {
                    let block = blocks
                        .last_mut()
                        .ok_or_else(|| bad(lineno, "edge before any motif block"))?;
                    if fields.len() != 3 {
                        return Err(bad(lineno, "expected: edge <u_role> <v_role>"));
                    }
                    let u: RoleId = fields[1]
                        .parse()
                        .map_err(|_| bad(lineno, "bad role id"))?;
                    let v: RoleId = fields[2]
                        .parse()
                        .map_err(|_| bad(lineno, "bad role id"))?;
                    block.edges.push((u, v));
                }
                _ if t.starts_with("kind=") => {
                    let block = blocks
                        .last_mut()
                        .ok_or_else(|| bad(lineno, "kind before any motif block"))?;
                    block.kind = Some(match &t[5..] {
                        "fringe" => MotifKind::Fringe,
                        "core" => MotifKind::Core,
                        "residual" => MotifKind::Residual,
                        other => return Err(bad(lineno, &format!("unknown kind {other:?}"))),
                    });
                }
                "search-order" => {
                    order_ids = Some(fields[1..].iter().map(|s| (*s).to_owned()).collect());
                }
                other => return Err(bad(lineno, &format!("unknown directive {other:?}"))),
            }
        }
        let motifs: Vec<AtomicMotifType> = blocks
            .into_iter()
            .map(|b| {
                let kind = b
                    .kind
                    .ok_or_else(|| ItemError::Catalog(format!("motif {}: missing kind", b.id)))?;
                AtomicMotifType::new(&b.id, b.order, b.edges, kind)
            })
            .collect::<Result<_>>()?;
        let search_order = match order_ids {
            Some(ids) => ids
                .iter()
                .map(|id| {
                    motifs
                        .iter()
                        .position(|m| &m.id == id)
                        .ok_or_else(|| ItemError::Catalog(format!("unknown motif id {id}")))
                })
                .collect::<Result<Vec<_>>>()?,
            None => default_order_for(&motifs),
        };
        MotifCatalog::new(motifs, search_order)
    }
}

/// File order with the residual motif moved to the end.
fn default_order_for(motifs: &[AtomicMotifType]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..motifs.len()).collect();
    order.sort_by_key(|&i| motifs[i].is_residual());
    order
}

/// The built-in fifteen-motif library.
///
/// Search order runs fringe motifs first, then the multi-edge, then the
/// 4-edge core patterns, triangles, stars, wedges, and finally the
/// residual sweep.
pub fn default_catalog() -> MotifCatalog {
    use MotifKind::{Core, Fringe, Residual};
    let defs: Vec<(&str, u8, Vec<(u8, u8)>, MotifKind)> = vec![
        ("m1", 1, vec![], Fringe),                                     // isolated vertex
        ("m2", 2, vec![(0, 1)], Fringe),                               // isolated edge
        ("m3", 1, vec![(0, 0)], Fringe),                               // self-loop
        ("m4", 2, vec![(0, 1), (0, 1)], Core),                         // multi-edge
        ("m5", 3, vec![(0, 1), (1, 2), (2, 0)], Core),                 // cyclic triangle
        ("m6", 3, vec![(0, 1), (0, 2), (1, 2)], Core),                 // feed-forward triangle
        ("m7", 4, vec![(0, 1), (0, 2), (1, 2), (2, 3)], Core),         // tailed triangle
        ("m8", 4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], Core),         // directed 4-cycle
        ("m9", 4, vec![(0, 2), (0, 3), (1, 2), (1, 3)], Core),         // bi-fan
        ("m10", 4, vec![(1, 0), (2, 0), (3, 0)], Core),                // in-star
        ("m11", 4, vec![(0, 1), (0, 2), (0, 3)], Core),                // out-star
        ("m12", 3, vec![(0, 1), (0, 2)], Core),                        // divergent wedge
        ("m13", 3, vec![(0, 2), (1, 2)], Core),                        // convergent wedge
        ("m14", 3, vec![(0, 1), (1, 2)], Core),                        // directed 2-path
        ("m15", 2, vec![(0, 1)], Residual),                            // residual edge
    ];
    let motifs: Vec<AtomicMotifType> = defs
        .into_iter()
        .map(|(id, d, edges, kind)| AtomicMotifType::new(id, d, edges, kind).unwrap())
        .collect();
    let order_ids = [
        "m1", "m2", "m3", "m4", "m7", "m8", "m9", "m5", "m6", "m10", "m11", "m12", "m13", "m14",
        "m15",
    ];
    let order: Vec<usize> = order_ids
        .iter()
        .map(|id| motifs.iter().position(|m| &m.id == id).unwrap())
        .collect();
    MotifCatalog::new(motifs, order).unwrap()
}
