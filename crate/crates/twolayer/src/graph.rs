//! In-memory network model: the target graph, the auxiliary graph, and the
//! bipartite bridge between them.
//!
//! Graphs are immutable once built. Node ids are dense integers `0..n`;
//! anything sparser is remapped at ingestion time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
///
/// No self-loops, no parallel edges; `v ∈ adj(u) ⇔ u ∈ adj(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Build a graph from unordered id pairs.
    ///
    /// Self-loops are dropped and duplicate pairs are collapsed; the pair
    /// order inside an edge does not matter. Ids must be below `node_count`.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= node_count || b >= node_count {
                let id = if a >= node_count { a } else { b };
                return Err(Error::NodeOutOfRange { a, b, id, count: node_count });
            }
            if a == b {
                continue;
            }
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut adjacency = vec![Vec::new(); node_count];
        for &(a, b) in &pairs {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { adjacency, edge_count: pairs.len() })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.adjacency.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sum of all degrees, i.e. `2 * edge_count`.
    pub fn volume(&self) -> usize {
        2 * self.edge_count
    }

    /// Iterate over each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Full-scan structural check: sorted unique adjacency, symmetry, no
    /// self-loops, and the handshake identity. Intended for tests and small
    /// instances.
    pub fn check_invariants(&self) -> Result<()> {
        let mut degree_sum = 0usize;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            degree_sum += nbrs.len();
            for window in nbrs.windows(2) {
                if window[0] >= window[1] {
                    return Err(Error::BridgeInconsistent { u, v: window[1] });
                }
            }
            for &v in nbrs {
                if v == u || !self.has_edge(v, u) {
                    return Err(Error::BridgeInconsistent { u, v });
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(Error::BridgeInconsistent { u: degree_sum, v: self.edge_count });
        }
        Ok(())
    }
}

/// Bipartite graph between a `U` side and a `V` side, adjacency kept on both
/// sides so degree lookup is O(1) from either end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    u_adj: Vec<Vec<usize>>,
    v_adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl BipartiteGraph {
    /// Build from `(u, v)` pairs with deduplication.
    pub fn from_pairs<I>(u_count: usize, v_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in pairs {
            if u >= u_count {
                return Err(Error::BridgeIdOutOfRange { u, v, side: "U", count: u_count });
            }
            if v >= v_count {
                return Err(Error::BridgeIdOutOfRange { u, v, side: "V", count: v_count });
            }
            list.push((u, v));
        }
        list.sort_unstable();
        list.dedup();

        let mut u_adj = vec![Vec::new(); u_count];
        let mut v_adj = vec![Vec::new(); v_count];
        for &(u, v) in &list {
            u_adj[u].push(v);
            v_adj[v].push(u);
        }
        for l in &mut u_adj {
            l.sort_unstable();
        }
        for l in &mut v_adj {
            l.sort_unstable();
        }
        Ok(Self { u_adj, v_adj, edge_count: list.len() })
    }

    pub fn u_count(&self) -> usize {
        self.u_adj.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Bridge degree of a target-side node.
    pub fn u_degree(&self, u: usize) -> usize {
        self.u_adj[u].len()
    }

    /// Bridge degree of an auxiliary-side node.
    pub fn v_degree(&self, v: usize) -> usize {
        self.v_adj[v].len()
    }

    pub fn u_neighbors(&self, u: usize) -> &[usize] {
        &self.u_adj[u]
    }

    pub fn v_neighbors(&self, v: usize) -> &[usize] {
        &self.v_adj[v]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.u_adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Verify that both adjacency indexes describe the same edge set.
    pub fn check_consistency(&self) -> Result<()> {
        let mut count = 0usize;
        for (u, vs) in self.u_adj.iter().enumerate() {
            count += vs.len();
            for &v in vs {
                if self.v_adj[v].binary_search(&u).is_err() {
                    return Err(Error::BridgeInconsistent { u, v });
                }
            }
        }
        let back: usize = self.v_adj.iter().map(Vec::len).sum();
        if count != back || count != self.edge_count {
            return Err(Error::BridgeInconsistent { u: count, v: back });
        }
        Ok(())
    }
}

/// The sampling universe: target graph `G`, auxiliary graph `G'`, and the
/// bipartite bridge connecting the two node sets.
#[derive(Debug, Clone)]
pub struct TwoLayerNetwork {
    pub target: Graph,
    pub auxiliary: Graph,
    pub bridge: BipartiteGraph,
}

impl TwoLayerNetwork {
    pub fn new(target: Graph, auxiliary: Graph, bridge: BipartiteGraph) -> Result<Self> {
        if bridge.u_count() != target.node_count() || bridge.v_count() != auxiliary.node_count() {
            return Err(Error::LayerMismatch {
                bridge_u: bridge.u_count(),
                bridge_v: bridge.v_count(),
                target: target.node_count(),
                auxiliary: auxiliary.node_count(),
            });
        }
        Ok(Self { target, auxiliary, bridge })
    }

    /// Whether target node `u` has at least one bridge edge.
    pub fn is_covered(&self, u: usize) -> bool {
        self.bridge.u_degree(u) > 0
    }

    /// Structural summary used to decide which sampling methods apply.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.bridge.check_consistency()?;
        let uncovered_targets = (0..self.bridge.u_count())
            .filter(|&u| self.bridge.u_degree(u) == 0)
            .count();
        let uncovered_auxiliaries = (0..self.bridge.v_count())
            .filter(|&v| self.bridge.v_degree(v) == 0)
            .count();
        let isolated_targets = self
            .target
            .nodes()
            .filter(|&u| self.target.degree(u) == 0)
            .count();
        let isolated_auxiliaries = self
            .auxiliary
            .nodes()
            .filter(|&v| self.auxiliary.degree(v) == 0)
            .count();
        Ok(ValidationReport {
            target_nodes: self.target.node_count(),
            auxiliary_nodes: self.auxiliary.node_count(),
            target_edges: self.target.edge_count(),
            auxiliary_edges: self.auxiliary.edge_count(),
            bridge_edges: self.bridge.edge_count(),
            uncovered_targets,
            uncovered_auxiliaries,
            isolated_targets,
            isolated_auxiliaries,
        })
    }
}

/// Counts reported by [`TwoLayerNetwork::validate`].
///
/// `uncovered_targets == 0` is the precondition for the pure vertex-sampling
/// methods; walk-based methods tolerate uncovered nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub target_nodes: usize,
    pub auxiliary_nodes: usize,
    pub target_edges: usize,
    pub auxiliary_edges: usize,
    pub bridge_edges: usize,
    pub uncovered_targets: usize,
    pub uncovered_auxiliaries: usize,
    pub isolated_targets: usize,
    pub isolated_auxiliaries: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        for u in g.nodes() {
            assert_eq!(g.degree(u), 2);
        }
        g.check_invariants().unwrap();
    }

    #[test]
    fn dedup_and_self_loop_strip() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        let err = Graph::from_edges(3, [(0, 3)]).unwrap_err();
        match err {
            Error::NodeOutOfRange { a, b, id, count } => {
                assert_eq!((a, b, id, count), (0, 3, 3, 3));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn bipartite_cross_consistency() {
        let b = BipartiteGraph::from_pairs(2, 2, [(0, 0), (0, 1), (1, 1), (0, 1)]).unwrap();
        assert_eq!(b.edge_count(), 3);
        assert_eq!(b.u_degree(0), 2);
        assert_eq!(b.v_degree(1), 2);
        b.check_consistency().unwrap();
    }

    #[test]
    fn network_layer_mismatch() {
        let target = Graph::from_edges(2, [(0, 1)]).unwrap();
        let aux = Graph::from_edges(2, []).unwrap();
        let bridge = BipartiteGraph::from_pairs(3, 2, []).unwrap();
        assert!(TwoLayerNetwork::new(target, aux, bridge).is_err());
    }

    #[test]
    fn validation_counts_uncovered() {
        let target = Graph::from_edges(3, [(0, 1)]).unwrap();
        let aux = Graph::from_edges(2, [(0, 1)]).unwrap();
        let bridge = BipartiteGraph::from_pairs(3, 2, [(0, 0), (1, 0)]).unwrap();
        let net = TwoLayerNetwork::new(target, aux, bridge).unwrap();
        let report = net.validate().unwrap();
        assert_eq!(report.uncovered_targets, 1);
        assert_eq!(report.uncovered_auxiliaries, 1);
        assert_eq!(report.isolated_targets, 1);
    }
}
