//! Shared inputs for the benchmarks.

use ntc_core::WeightedDualGraph;

/// A chain `-b_1 - ... - -b_n` of rational curves with one arrow on the end.
pub fn chain(len: usize, self_intersection: i64) -> WeightedDualGraph {
    let vertices = (0..len)
        .map(|i| ntc_core::Vertex::new(format!("v{i}"), self_intersection, 0))
        .collect();
    let edges = (1..len).map(|i| (i - 1, i)).collect();
    let arrows = vec![ntc_core::Arrow { at: 0, weight: 1 }];
    WeightedDualGraph::new(None, vertices, edges, arrows).expect("negative definite chain")
}
