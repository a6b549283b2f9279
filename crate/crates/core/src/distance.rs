//! Unweighted shortest-path machinery: single-source BFS (optionally with a
//! deleted vertex), eccentricities and diameter, and the closed-form Harary
//! diameter.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::formulas::{FormulaResult, FormulaTrace, Parity};
use crate::graph::{Graph, HararyParams, ParityCase};
use crate::{Error, Result};

/// Hop distances from one source vertex. `None` marks an unreachable vertex
/// (there is deliberately no numeric sentinel); unreachable pairs contribute
/// `0` to closeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<Option<u32>>,
}

impl DistanceRow {
    /// Distance to `v`, or `None` if unreachable.
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }
}

/// Eccentricities and derived distance statistics from `n` BFS runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    /// Per-vertex maximum finite distance.
    pub eccentricities: Vec<u32>,
    pub diameter: u32,
    pub radius: u32,
    pub connected: bool,
}

fn bfs_impl(g: &Graph, source: usize, removed: Option<usize>) -> Vec<Option<u32>> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::with_capacity(n);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have distances");
        for &v in g.neighbors(u) {
            if Some(v) == removed || dist[v].is_some() {
                continue;
            }
            dist[v] = Some(du + 1);
            queue.push_back(v);
        }
    }
    dist
}

/// Exact hop distances from `source`.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<DistanceRow> {
    let n = g.vertex_count();
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, n });
    }
    Ok(DistanceRow {
        source,
        dist: bfs_impl(g, source, None),
    })
}

/// Hop distances from `source` in the graph with `removed` and its incident
/// edges deleted; the entry for `removed` is `None`.
pub fn bfs_excluding(g: &Graph, source: usize, removed: usize) -> Result<DistanceRow> {
    let n = g.vertex_count();
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, n });
    }
    if removed >= n {
        return Err(Error::VertexOutOfRange { vertex: removed, n });
    }
    if source == removed {
        return Err(Error::SourceEqualsRemoved { vertex: source });
    }
    Ok(DistanceRow {
        source,
        dist: bfs_impl(g, source, Some(removed)),
    })
}

/// Eccentricities, diameter, radius, and connectivity from `n` BFS runs.
/// BFS sources fan out across rayon workers; results are identical to
/// sequential execution.
pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.vertex_count();
    let per_source: Vec<(u32, bool)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let dist = bfs_impl(g, s, None);
            let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
            let all_reached = dist.iter().all(Option::is_some);
            (ecc, all_reached)
        })
        .collect();
    let eccentricities: Vec<u32> = per_source.iter().map(|&(e, _)| e).collect();
    GraphStats {
        diameter: eccentricities.iter().copied().max().unwrap_or(0),
        radius: eccentricities.iter().copied().min().unwrap_or(0),
        connected: n > 0 && per_source.iter().all(|&(_, r)| r),
        eccentricities,
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Closed-form diameter of `H_{k,n}` for even `k >= 2`:
/// `floor(n/k)` if `n = 1 (mod k)`, else `ceil(n/k)`.
pub(crate) fn even_k_diameter(k: usize, n: usize) -> u32 {
    debug_assert!(k.is_multiple_of(2) && k < n);
    let d = if n % k == 1 { n / k } else { ceil_div(n, k) };
    d as u32
}

/// Closed-form diameter of `H_{k,n}`, or `None` for `k = 2`, which the
/// closed-form layer does not cover (the BFS oracle remains available).
pub fn harary_diameter(params: HararyParams) -> Option<u32> {
    let (k, n) = (params.k(), params.n());
    if k == 2 {
        return None;
    }
    Some(match params.parity_case() {
        ParityCase::EvenK => even_k_diameter(k, n),
        ParityCase::OddKEvenN if k == 3 => ceil_div(n, 4) as u32,
        ParityCase::OddKOddN if k == 3 => ceil_div(n + 1, 4) as u32,
        ParityCase::OddKEvenN => {
            let inner = even_k_diameter(k - 1, n);
            let base = ceil_div(n, 2 * k - 2) as u32;
            if inner.is_multiple_of(2) && n % (k - 1) != 2 {
                base + 1
            } else {
                base
            }
        }
        ParityCase::OddKOddN => {
            // The lift happens for every odd residue t <= k-4, not only
            // t = 1; verified against BFS over the whole sweep grid.
            let t = (n - k - 1) % (2 * (k - 1));
            let base = ceil_div(n, 2 * k - 2) as u32;
            if t + 4 <= k {
                base + 1
            } else {
                base
            }
        }
    })
}

/// Traced closed-form diameter. `k = 2` reports
/// [`FormulaResult::NotCoveredByPaper`].
pub fn diameter_formula(params: HararyParams) -> FormulaResult {
    let (k, n) = (params.k(), params.n());
    let Some(diam) = harary_diameter(params) else {
        return FormulaResult::NotCoveredByPaper;
    };
    let value = f64::from(diam);
    let trace = match params.parity_case() {
        ParityCase::EvenK => {
            let id = if n % k == 1 {
                "Diam-even-k-mod1"
            } else {
                "Diam-even-k-other"
            };
            FormulaTrace::new(id).with_t(n % k, k)
        }
        ParityCase::OddKEvenN if k == 3 => FormulaTrace::new("Diam-k3-even-n"),
        ParityCase::OddKOddN if k == 3 => FormulaTrace::new("Diam-k3-odd-n"),
        ParityCase::OddKEvenN => {
            let inner = even_k_diameter(k - 1, n);
            let id = if inner.is_multiple_of(2) && n % (k - 1) != 2 {
                "Diam-odd-k-even-n-plus1"
            } else {
                "Diam-odd-k-even-n-base"
            };
            FormulaTrace::new(id)
                .with_t(n % (k - 1), k - 1)
                .with_inner_diam_parity(Parity::of(inner))
        }
        ParityCase::OddKOddN => {
            let t = (n - k - 1) % (2 * (k - 1));
            let id = if t + 4 <= k {
                "Diam-odd-k-odd-n-plus1"
            } else {
                "Diam-odd-k-odd-n-base"
            };
            FormulaTrace::new(id).with_t(t, 2 * (k - 1))
        }
    };
    FormulaResult::covered(value, trace.with_diam(diam))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harary(k: usize, n: usize) -> Graph {
        Graph::harary(HararyParams::new(k, n).unwrap())
    }

    fn params(k: usize, n: usize) -> HararyParams {
        HararyParams::new(k, n).unwrap()
    }

    #[test]
    fn bfs_on_complete_graph() {
        let row = bfs_distances(&Graph::complete(5), 0).unwrap();
        assert_eq!(
            row.dist,
            vec![Some(0), Some(1), Some(1), Some(1), Some(1)]
        );
    }

    #[test]
    fn bfs_anchor_distances() {
        assert_eq!(bfs_distances(&harary(3, 9), 0).unwrap().get(4), Some(1));
        assert_eq!(bfs_distances(&harary(5, 24), 0).unwrap().get(7), Some(4));
        assert_eq!(bfs_distances(&harary(5, 24), 0).unwrap().get(17), Some(4));
    }

    #[test]
    fn bfs_rejects_bad_source() {
        let g = Graph::complete(3);
        assert_eq!(
            bfs_distances(&g, 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn bfs_excluding_examples() {
        let row = bfs_excluding(&Graph::complete(4), 0, 3).unwrap();
        assert_eq!(row.dist, vec![Some(0), Some(1), Some(1), None]);

        // Removing 0 stretches exactly one pair in these two graphs.
        assert_eq!(bfs_distances(&harary(4, 11), 2).unwrap().get(9), Some(2));
        assert_eq!(bfs_excluding(&harary(4, 11), 2, 0).unwrap().get(9), Some(3));
        assert_eq!(bfs_distances(&harary(4, 9), 2).unwrap().get(7), Some(2));
        assert_eq!(bfs_excluding(&harary(4, 9), 2, 0).unwrap().get(7), Some(3));
    }

    #[test]
    fn bfs_excluding_rejects_source_equal_removed() {
        let g = Graph::complete(4);
        assert_eq!(
            bfs_excluding(&g, 2, 2),
            Err(Error::SourceEqualsRemoved { vertex: 2 })
        );
        assert_eq!(
            bfs_excluding(&g, 0, 7),
            Err(Error::VertexOutOfRange { vertex: 7, n: 4 })
        );
    }

    #[test]
    fn excluding_handles_disconnection() {
        // Path 0-1-2: removing the middle vertex separates the ends.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let row = bfs_excluding(&g, 0, 1).unwrap();
        assert_eq!(row.dist, vec![Some(0), None, None]);
    }

    #[test]
    fn stats_examples() {
        let s = graph_stats(&Graph::complete(5));
        assert_eq!((s.diameter, s.radius, s.connected), (1, 1, true));
        assert_eq!(graph_stats(&harary(5, 12)).diameter, 2);
        assert_eq!(graph_stats(&harary(5, 24)).diameter, 4);
        // Odd-odd graphs are not vertex-transitive: H_{3,9} has radius 2
        // (the apex) and diameter 3.
        let s = graph_stats(&harary(3, 9));
        assert_eq!((s.diameter, s.radius), (3, 2));
    }

    #[test]
    fn diameter_formula_anchors() {
        for (k, n, want) in [(4, 9, 2), (5, 18, 3), (3, 11, 3), (5, 24, 4)] {
            assert_eq!(
                diameter_formula(params(k, n)).value(),
                Some(f64::from(want)),
                "H_{{{k},{n}}}"
            );
        }
    }

    #[test]
    fn diameter_formula_k2_not_covered() {
        assert_eq!(
            diameter_formula(params(2, 9)),
            FormulaResult::NotCoveredByPaper
        );
        assert_eq!(harary_diameter(params(2, 9)), None);
    }

    #[test]
    fn diameter_formula_matches_bfs_small_grid() {
        for k in 3..=10 {
            for n in (k + 1)..=60 {
                let p = params(k, n);
                let formula = harary_diameter(p).unwrap();
                let bfs = graph_stats(&Graph::harary(p)).diameter;
                assert_eq!(formula, bfs, "H_{{{k},{n}}}");
            }
        }
    }

    #[test]
    fn odd_odd_lift_residues() {
        // H_{7,11}: t = 3 <= k-4, so the diameter lifts to 2 even though
        // the base value ceil(11/12) is 1.
        assert_eq!(harary_diameter(params(7, 11)), Some(2));
        assert_eq!(graph_stats(&harary(7, 11)).diameter, 2);
        // t = 5 > k-4 stays at the base value.
        assert_eq!(harary_diameter(params(7, 13)), Some(2));
        assert_eq!(graph_stats(&harary(7, 13)).diameter, 2);
    }

    #[test]
    fn stats_on_disconnected_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let s = graph_stats(&g);
        assert!(!s.connected);
        assert_eq!(s.eccentricities, vec![1, 1, 1, 1]);
    }
}
