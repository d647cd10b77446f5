//! Per-motif enumeration timing on one synthetic window-sized slice.

use std::time::Instant;

use item_core::catalog::default_catalog;
use item_core::enumerate::{find_instances_indexed, AdjacencyIndex, EnumerationConfig};
use item_core::synthgen::{generate_base, GenSpec};

fn main() {
    // Window-sized slice: ~20k edges over 5000 vertices in 2000 s.
    let g = generate_base(&GenSpec {
        n: 5_000,
        p: 0.002,
        duration: 2_000,
        seed: 1,
    })
    .unwrap();
    eprintln!("edges: {}", g.num_edges());
    let index = AdjacencyIndex::build(&g);
    let cfg = EnumerationConfig::default();
    for motif in default_catalog().motifs() {
        if motif.edges.is_empty() {
            continue;
        }
        let t0 = Instant::now();
        let mut total = 0usize;
        for tmt in motif.temporal_variants().unwrap() {
            total += find_instances_indexed(&index, &tmt, &cfg).unwrap().len();
        }
        eprintln!("{}: {} instances in {:?}", motif.id, total, t0.elapsed());
    }
}
