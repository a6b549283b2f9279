//! Graph construction: Harary graphs, consecutive circulant graphs, and
//! export plumbing.
//!
//! Vertices are labeled `0..n` exactly as in the constructions' usual
//! statements, so that distinguished vertices such as `(n-1)/2` can be
//! referred to directly. Adjacency lists are kept strictly ascending, which
//! makes every traversal in the crate deterministic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The three construction cases of `H_{k,n}`, determined by the parities of
/// `k` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityCase {
    /// `k` even: each vertex joined to the nearest `k/2` vertices in each
    /// direction around the circle. Vertex-transitive.
    EvenK,
    /// `k` odd, `n` even: `H_{k-1,n}` plus an edge to the diametrically
    /// opposite vertex. Vertex-transitive.
    OddKEvenN,
    /// Both odd: `H_{k-1,n}` plus edges `{i, i+(n-1)/2}` for
    /// `0 <= i <= (n-1)/2`; vertex `(n-1)/2` ends up with degree `k+1` and
    /// the graph is not vertex-transitive.
    OddKOddN,
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityCase::EvenK => "EvenK",
            ParityCase::OddKEvenN => "OddKEvenN",
            ParityCase::OddKOddN => "OddKOddN",
        })
    }
}

/// Validated `(k, n)` pair for `H_{k,n}`.
///
/// `k = 2` (the cycle) is admitted so the oracle can cover it; closed forms
/// flag it as not covered where the statements exclude it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HararyParams {
    k: usize,
    n: usize,
}

impl HararyParams {
    /// Requires `2 <= k < n`.
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 || k >= n {
            return Err(Error::InvalidHararyParams { k, n });
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity_case(&self) -> ParityCase {
        match (self.k % 2, self.n % 2) {
            (0, _) => ParityCase::EvenK,
            (_, 0) => ParityCase::OddKEvenN,
            _ => ParityCase::OddKOddN,
        }
    }
}

impl fmt::Display for HararyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{{{},{}}}", self.k, self.n)
    }
}

/// Output formats for [`Graph::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    /// One `"u v"` pair per line, `u < v`, pairs in ascending order,
    /// `\n`-terminated. This is the crate's stable text interchange format.
    EdgeList,
    /// Graphviz undirected graph.
    Dot,
    /// `{"n": .., "edges": [[u, v], ..]}` with the edge-list ordering.
    Json,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Immutable simple undirected graph, adjacency-list representation.
///
/// Invariants, established by every constructor: neighbor lists are strictly
/// ascending, contain no self-loops or duplicates, and are symmetric
/// (`j in adj[i]` iff `i in adj[j]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

fn add_ring_edge(adj: &mut [BTreeSet<usize>], n: usize, u: usize, v: usize) {
    let (u, v) = (u % n, v % n);
    if u != v {
        adj[u].insert(v);
        adj[v].insert(u);
    }
}

impl Graph {
    fn from_adjacency_sets(n: usize, sets: Vec<BTreeSet<usize>>) -> Self {
        let adjacency = sets
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        Self { n, adjacency }
    }

    /// Builds the Harary graph `H_{k,n}`.
    ///
    /// Even `k`: vertex `i` adjacent to `i±1, .., i±k/2 (mod n)`. Odd `k`,
    /// even `n`: `H_{k-1,n}` plus the diametric edge `{i, i+n/2}`. Both odd:
    /// `H_{k-1,n}` plus `{i, i+(n-1)/2}` for `0 <= i <= (n-1)/2`. The edge
    /// count is `ceil(kn/2)` in all three cases.
    pub fn harary(params: HararyParams) -> Self {
        let (k, n) = (params.k(), params.n());
        let mut adj = vec![BTreeSet::new(); n];
        let half = k / 2; // (k-1)/2 when k is odd
        for i in 0..n {
            for step in 1..=half {
                add_ring_edge(&mut adj, n, i, i + step);
            }
        }
        match params.parity_case() {
            ParityCase::EvenK => {}
            ParityCase::OddKEvenN => {
                for i in 0..n {
                    add_ring_edge(&mut adj, n, i, i + n / 2);
                }
            }
            ParityCase::OddKOddN => {
                for i in 0..=(n - 1) / 2 {
                    add_ring_edge(&mut adj, n, i, i + (n - 1) / 2);
                }
            }
        }
        Self::from_adjacency_sets(n, adj)
    }

    /// Builds the consecutive circulant graph `C_{n,[l]}`: vertex `v`
    /// adjacent to `v±i (mod n)` for each `i in 1..=l`.
    ///
    /// Identical to `H_{2l,n}` when `2l < n`; `l = floor(n/2)` yields the
    /// complete graph for odd `n`. Requires `1 <= l <= floor(n/2)`.
    pub fn circulant(n: usize, l: usize) -> Result<Self> {
        if n == 0 || l == 0 || l > n / 2 {
            return Err(Error::InvalidCirculantParams { n, l });
        }
        let mut adj = vec![BTreeSet::new(); n];
        for v in 0..n {
            for step in 1..=l {
                add_ring_edge(&mut adj, n, v, v + step);
            }
        }
        Ok(Self::from_adjacency_sets(n, adj))
    }

    /// Builds the complete graph `K_n` (`n >= 1`).
    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self { n, adjacency }
    }

    /// Builds a graph from an explicit edge list. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_adjacency_sets(n, adj))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Half the sum of the adjacency-list lengths.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in ascending (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Renders the graph in the requested text format; see [`ExportFormat`]
    /// for the exact shapes.
    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::EdgeList => {
                let mut out = String::new();
                for (u, v) in self.edges() {
                    out.push_str(&format!("{u} {v}\n"));
                }
                out
            }
            ExportFormat::Dot => {
                let mut out = String::from("graph {\n");
                for (u, v) in self.edges() {
                    out.push_str(&format!("  {u} -- {v};\n"));
                }
                out.push_str("}\n");
                out
            }
            ExportFormat::Json => {
                let doc = GraphJson {
                    n: self.n,
                    edges: self.edges().collect(),
                };
                serde_json::to_string(&doc).expect("graph json serialization")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harary(k: usize, n: usize) -> Graph {
        Graph::harary(HararyParams::new(k, n).unwrap())
    }

    #[test]
    fn params_validation() {
        assert!(HararyParams::new(2, 5).is_ok());
        assert_eq!(
            HararyParams::new(1, 5),
            Err(Error::InvalidHararyParams { k: 1, n: 5 })
        );
        assert_eq!(
            HararyParams::new(5, 5),
            Err(Error::InvalidHararyParams { k: 5, n: 5 })
        );
        assert_eq!(
            HararyParams::new(6, 4),
            Err(Error::InvalidHararyParams { k: 6, n: 4 })
        );
    }

    #[test]
    fn parity_cases() {
        let case = |k, n| HararyParams::new(k, n).unwrap().parity_case();
        assert_eq!(case(4, 9), ParityCase::EvenK);
        assert_eq!(case(4, 8), ParityCase::EvenK);
        assert_eq!(case(5, 12), ParityCase::OddKEvenN);
        assert_eq!(case(5, 17), ParityCase::OddKOddN);
    }

    #[test]
    fn even_k_construction() {
        let g = harary(4, 8);
        assert_eq!(g.neighbors(0), &[1, 2, 6, 7]);
        assert_eq!(g.edge_count(), 16);
        assert!((0..8).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn odd_k_odd_n_construction() {
        // H_{3,9}: vertex (n-1)/2 = 4 is adjacent to both 0 and 8.
        let g = harary(3, 9);
        assert_eq!(g.neighbors(4), &[0, 3, 5, 8]);
        assert_eq!(g.degree(4), 4);
        assert!((0..9).filter(|&v| v != 4).all(|v| g.degree(v) == 3));
        assert_eq!(g.edge_count(), 14); // ceil(27/2)
    }

    #[test]
    fn odd_k_even_n_construction() {
        let g = harary(5, 12);
        assert_eq!(g.neighbors(0), &[1, 2, 6, 10, 11]);
        assert_eq!(g.edge_count(), 30);
    }

    #[test]
    fn edge_count_is_ceil_kn_over_2() {
        for k in 2..=9 {
            for n in (k + 1)..=40 {
                let g = harary(k, n);
                assert_eq!(g.edge_count(), (k * n).div_ceil(2), "H_{{{k},{n}}}");
            }
        }
    }

    #[test]
    fn degrees_match_construction_claim() {
        for k in 2..=9 {
            for n in (k + 1)..=40 {
                let params = HararyParams::new(k, n).unwrap();
                let g = Graph::harary(params);
                for v in 0..n {
                    let want = if params.parity_case() == ParityCase::OddKOddN && v == (n - 1) / 2
                    {
                        k + 1
                    } else {
                        k
                    };
                    assert_eq!(g.degree(v), want, "H_{{{k},{n}}} vertex {v}");
                }
            }
        }
    }

    #[test]
    fn circulant_examples() {
        let c7 = Graph::circulant(7, 1).unwrap();
        assert!((0..7).all(|v| c7.degree(v) == 2));
        let k7 = Graph::circulant(7, 3).unwrap();
        assert_eq!(k7.edge_count(), 21);
        assert_eq!(k7, Graph::complete(7));
        assert_eq!(
            Graph::circulant(10, 2).unwrap(),
            harary(4, 10),
            "C_{{10,[2]}} and H_{{4,10}} share an edge set"
        );
        assert_eq!(
            Graph::circulant(10, 0),
            Err(Error::InvalidCirculantParams { n: 10, l: 0 })
        );
        assert_eq!(
            Graph::circulant(10, 6),
            Err(Error::InvalidCirculantParams { n: 10, l: 6 })
        );
    }

    #[test]
    fn circulant_max_l_even_n_is_complete() {
        assert_eq!(Graph::circulant(8, 4).unwrap(), Graph::complete(8));
    }

    #[test]
    fn export_edgelist() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.export(ExportFormat::EdgeList), "0 1\n0 2\n1 2\n");
        let lines = harary(3, 8).export(ExportFormat::EdgeList);
        assert_eq!(lines.lines().count(), 12);
    }

    #[test]
    fn export_dot_and_json() {
        let c4 = Graph::circulant(4, 1).unwrap();
        assert_eq!(
            c4.export(ExportFormat::Dot),
            "graph {\n  0 -- 1;\n  0 -- 3;\n  1 -- 2;\n  2 -- 3;\n}\n"
        );
        let json: serde_json::Value =
            serde_json::from_str(&c4.export(ExportFormat::Json)).unwrap();
        assert_eq!(json["n"], 4);
        assert_eq!(json["edges"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 1), (1, 2)]).is_ok());
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(Error::InvalidEdge { u: 1, v: 1, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::InvalidEdge { u: 0, v: 3, n: 3 })
        );
    }

    #[test]
    fn canonical_form_invariants() {
        for (k, n) in [(2, 9), (3, 9), (4, 11), (5, 17), (7, 22)] {
            let g = harary(k, n);
            for v in 0..n {
                let nbrs = g.neighbors(v);
                assert!(nbrs.windows(2).all(|w| w[0] < w[1]), "ascending, no dups");
                assert!(!nbrs.contains(&v), "no self-loop");
                for &u in nbrs {
                    assert!(g.neighbors(u).contains(&v), "symmetry");
                }
            }
        }
    }
}
