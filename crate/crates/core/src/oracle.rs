//! Brute-force ground truth: Dangalchev closeness per vertex and per graph,
//! closeness after single-vertex removal, and vertex residual closeness.
//!
//! Everything here is computed from BFS runs on the actual graph — no
//! closed forms, no shortcuts from vertex-transitivity. The closed-form
//! layer is checked *against* these values, so this module must stay
//! independent of it.
//!
//! Numerics: every term is the dyadic rational `2^{-d}`, accumulated in a
//! fixed deterministic order. Row sums accumulate in BFS pop order
//! (non-decreasing distance, so same-distance layers add exactly); the
//! per-vertex and per-removal reductions run in ascending vertex order
//! under Neumaier compensation. Unreachable pairs contribute 0.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::{Error, Result};

/// Compensated (Neumaier) accumulator: the returned sum is exact to within
/// one final rounding regardless of the magnitudes mixed in.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.compensation
    }
}

/// Reusable BFS workspace: visit marks are per-run epochs so nothing needs
/// clearing between the O(n^2) runs a residual computation performs.
struct BfsScratch {
    visited_epoch: Vec<u32>,
    epoch: u32,
    dist: Vec<u32>,
    queue: Vec<u32>,
    /// `inv_pow2[d] = 2^{-d}`, exact.
    inv_pow2: Vec<f64>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        let mut inv_pow2 = Vec::with_capacity(n + 1);
        let mut p = 1.0f64;
        for _ in 0..=n {
            inv_pow2.push(p);
            p *= 0.5;
        }
        Self {
            visited_epoch: vec![0; n],
            epoch: 0,
            dist: vec![0; n],
            queue: Vec::with_capacity(n),
            inv_pow2,
        }
    }

    /// `sum_j 2^{-d(source, j)}` over all vertices reached from `source`,
    /// optionally with one vertex deleted from the graph.
    fn closeness_from(&mut self, g: &Graph, source: usize, removed: Option<usize>) -> f64 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.visited_epoch.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.queue.clear();
        self.queue.push(source as u32);
        self.visited_epoch[source] = epoch;
        self.dist[source] = 0;
        let mut sum = 0.0f64;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let du = self.dist[u];
            if du > 0 {
                sum += self.inv_pow2[du as usize];
            }
            for &v in g.neighbors(u) {
                if Some(v) == removed || self.visited_epoch[v] == epoch {
                    continue;
                }
                self.visited_epoch[v] = epoch;
                self.dist[v] = du + 1;
                self.queue.push(v as u32);
            }
        }
        sum
    }
}

/// Per-vertex closeness values and their total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosenessReport {
    pub per_vertex: Vec<f64>,
    /// `sum_i per_vertex[i]`; counts each unordered pair twice.
    pub total: f64,
}

/// Total closeness after each single-vertex removal, its minimum, and all
/// vertices attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `per_removal[v]` is the total closeness of the graph with `v` deleted.
    pub per_removal: Vec<f64>,
    pub r_value: f64,
    /// Ascending; minimum attainment is exact f64 equality (all values come
    /// from one deterministic computation).
    pub argmin: Vec<usize>,
}

/// Dangalchev closeness of one vertex: `C(v) = sum_{j != v} 2^{-d(v,j)}`,
/// unreachable vertices contributing 0.
pub fn vertex_closeness(g: &Graph, v: usize) -> Result<f64> {
    let n = g.vertex_count();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(BfsScratch::new(n).closeness_from(g, v, None))
}

/// Closeness of every vertex plus the graph total `C(G) = sum_i C(i)`.
pub fn graph_closeness(g: &Graph) -> ClosenessReport {
    let n = g.vertex_count();
    let mut scratch = BfsScratch::new(n);
    let per_vertex: Vec<f64> = (0..n).map(|v| scratch.closeness_from(g, v, None)).collect();
    let mut total = CompensatedSum::default();
    for &value in &per_vertex {
        total.add(value);
    }
    ClosenessReport {
        per_vertex,
        total: total.value(),
    }
}

fn removal_total(g: &Graph, removed: usize, scratch: &mut BfsScratch) -> f64 {
    let mut total = CompensatedSum::default();
    for i in 0..g.vertex_count() {
        if i != removed {
            total.add(scratch.closeness_from(g, i, Some(removed)));
        }
    }
    total.value()
}

/// Total closeness `C_v` of the graph with vertex `v` and its incident
/// edges deleted. Disconnection shows up as vanished contributions.
pub fn closeness_after_removal(g: &Graph, v: usize) -> Result<f64> {
    let n = g.vertex_count();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(removal_total(g, v, &mut BfsScratch::new(n)))
}

/// Vertex residual closeness `R = min_v C_v`, evaluating every removal.
///
/// Removals fan out across rayon workers; each removal's reduction is
/// sequential, so the report is identical for any worker count.
pub fn residual_closeness(g: &Graph) -> ResidualReport {
    let n = g.vertex_count();
    let per_removal: Vec<f64> = (0..n)
        .into_par_iter()
        .map_init(
            || BfsScratch::new(n),
            |scratch, v| removal_total(g, v, scratch),
        )
        .collect();
    let r_value = per_removal.iter().copied().fold(f64::INFINITY, f64::min);
    let r_value = if per_removal.is_empty() { 0.0 } else { r_value };
    let argmin = per_removal
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == r_value)
        .map(|(v, _)| v)
        .collect();
    ResidualReport {
        per_removal,
        r_value,
        argmin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HararyParams;

    fn harary(k: usize, n: usize) -> Graph {
        Graph::harary(HararyParams::new(k, n).unwrap())
    }

    #[test]
    fn vertex_closeness_anchors() {
        let k5 = Graph::complete(5);
        for v in 0..5 {
            assert_eq!(vertex_closeness(&k5, v).unwrap(), 2.0);
        }
        assert_eq!(vertex_closeness(&harary(4, 11), 0).unwrap(), 3.25);
        assert_eq!(vertex_closeness(&harary(5, 17), 8).unwrap(), 5.25);
        assert_eq!(
            vertex_closeness(&k5, 9),
            Err(Error::VertexOutOfRange { vertex: 9, n: 5 })
        );
    }

    #[test]
    fn graph_closeness_anchors() {
        assert_eq!(graph_closeness(&Graph::complete(5)).total, 10.0);
        assert_eq!(graph_closeness(&harary(4, 9)).total, 27.0);
        assert_eq!(graph_closeness(&harary(3, 12)).total, 36.0);
    }

    #[test]
    fn total_sums_per_vertex() {
        let report = graph_closeness(&harary(5, 17));
        let naive: f64 = report.per_vertex.iter().sum();
        assert!((report.total - naive).abs() <= 1e-12);
    }

    #[test]
    fn removal_anchors() {
        let k4 = Graph::complete(4);
        for v in 0..4 {
            assert_eq!(closeness_after_removal(&k4, v).unwrap(), 3.0);
        }
        assert_eq!(closeness_after_removal(&harary(4, 9), 0).unwrap(), 20.75);
        assert_eq!(closeness_after_removal(&harary(4, 11), 0).unwrap(), 29.0);
        assert_eq!(
            closeness_after_removal(&k4, 4),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        );
    }

    #[test]
    fn residual_anchors() {
        // The Remark 3.7 table values; the minimizing removal is the apex.
        for (n, want) in [(5, 5.0), (7, 11.0), (9, 17.5), (11, 24.875)] {
            let report = residual_closeness(&harary(3, n));
            assert_eq!(report.r_value, want, "H_{{3,{n}}}");
            assert_eq!(report.argmin, vec![(n - 1) / 2], "H_{{3,{n}}}");
        }
    }

    #[test]
    fn residual_on_complete_graph_ties_everywhere() {
        let report = residual_closeness(&Graph::complete(5));
        assert_eq!(report.r_value, 6.0);
        assert_eq!(report.argmin, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn residual_argmin_contains_apex() {
        let report = residual_closeness(&harary(5, 17));
        assert_eq!(report.r_value, 72.5);
        assert!(report.argmin.contains(&8));
    }

    #[test]
    fn unreachable_pairs_contribute_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let report = graph_closeness(&g);
        assert_eq!(report.per_vertex, vec![0.5, 0.5, 0.5, 0.5]);
        assert_eq!(report.total, 2.0);
        // Removing an endpoint strands its partner entirely.
        assert_eq!(closeness_after_removal(&g, 0).unwrap(), 1.0);
    }

    #[test]
    fn tiny_graphs() {
        let k2 = Graph::complete(2);
        assert_eq!(graph_closeness(&k2).total, 1.0);
        let report = residual_closeness(&k2);
        assert_eq!(report.r_value, 0.0);
        assert_eq!(report.argmin, vec![0, 1]);
    }
}
