//! Seeded construction of the synthetic benchmark: preferential-attachment
//! graphs, the barbell target built from two of them, and the random
//! bipartite bridge.
//!
//! Everything here is a pure function of its inputs and the RNG stream, so a
//! fixed seed reproduces the same network bit for bit on any platform.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, TwoLayerNetwork};

/// Configuration for [`generate_synthetic`].
///
/// The target graph is two preferential-attachment parts of `n_per_part`
/// nodes joined by a single edge; the auxiliary graph is a third part of the
/// same size. `m_*` is the number of edges each arriving node attaches
/// (mean degree approaches `2m`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n_per_part: usize,
    pub m_target_1: usize,
    pub m_target_2: usize,
    pub m_aux: usize,
    /// Bridge pairs added on top of the one-edge-per-target-node floor.
    pub extra_pairs: usize,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Desk-scale preset: 500-node parts, part mean degrees 4 and 20,
    /// auxiliary mean degree 10, one extra bridge pair per target node.
    pub fn barbell_small(seed: u64) -> Self {
        Self {
            n_per_part: 500,
            m_target_1: 2,
            m_target_2: 10,
            m_aux: 5,
            extra_pairs: 1000,
            seed,
        }
    }

    /// Full-scale preset: 100k-node parts and 200k extra bridge pairs.
    pub fn barbell_paper(seed: u64) -> Self {
        Self {
            n_per_part: 100_000,
            m_target_1: 2,
            m_target_2: 10,
            m_aux: 5,
            extra_pairs: 200_000,
            seed,
        }
    }
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a complete core on `m + 1` nodes; every later node attaches
/// `m` distinct edges, each endpoint drawn proportionally to current degree
/// via a repeated-endpoint list (duplicate targets are redrawn). The result
/// is connected with min degree `m` and exactly
/// `C(m+1, 2) + (n - m - 1) * m` edges.
pub fn generate_ba<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || n <= m {
        return Err(Error::BadAttachmentParams { n, m });
    }
    let core = m + 1;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(core * m / 2 + (n - core) * m);
    // Each edge contributes both endpoints; drawing uniformly from this list
    // is drawing a node proportionally to its degree.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (core * m / 2 + (n - core) * m));

    for a in 0..core {
        for b in (a + 1)..core {
            edges.push((a, b));
            endpoints.push(a);
            endpoints.push(b);
        }
    }

    let mut picked: Vec<usize> = Vec::with_capacity(m);
    for node in core..n {
        picked.clear();
        while picked.len() < m {
            let target = endpoints[rng.gen_range(0..endpoints.len())];
            if !picked.contains(&target) {
                picked.push(target);
            }
        }
        for &target in &picked {
            edges.push((node, target));
            endpoints.push(node);
            endpoints.push(target);
        }
    }
    Graph::from_edges(n, edges)
}

/// Join two graphs into a barbell: disjoint union (the second part offset by
/// the first part's size) plus one uniformly chosen connecting edge.
pub fn build_barbell_target<R: Rng>(part1: &Graph, part2: &Graph, rng: &mut R) -> Result<Graph> {
    let n1 = part1.node_count();
    let n2 = part2.node_count();
    if n1 == 0 || n2 == 0 {
        return Err(Error::EmptyBarbellPart);
    }
    let mut edges: Vec<(usize, usize)> =
        Vec::with_capacity(part1.edge_count() + part2.edge_count() + 1);
    edges.extend(part1.edges());
    edges.extend(part2.edges().map(|(a, b)| (a + n1, b + n1)));
    let left = rng.gen_range(0..n1);
    let right = n1 + rng.gen_range(0..n2);
    edges.push((left, right));
    Graph::from_edges(n1 + n2, edges)
}

/// Random bipartite bridge: first every `U` node gets one uniformly chosen
/// `V` neighbor (so no target node is left uncovered), then `extra_pairs`
/// further distinct pairs are added, redrawing collisions so the final edge
/// count is exactly `n_u + extra_pairs`.
pub fn wire_bipartite<R: Rng>(
    n_u: usize,
    n_v: usize,
    extra_pairs: usize,
    rng: &mut R,
) -> Result<BipartiteGraph> {
    let capacity = n_u
        .checked_mul(n_v)
        .and_then(|total| total.checked_sub(n_u))
        .ok_or(Error::BridgeCapacityExceeded { requested: extra_pairs, available: usize::MAX })?;
    if extra_pairs > capacity {
        return Err(Error::BridgeCapacityExceeded { requested: extra_pairs, available: capacity });
    }

    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n_u + extra_pairs);
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(n_u + extra_pairs);
    for u in 0..n_u {
        let v = rng.gen_range(0..n_v);
        pairs.push((u, v));
        seen.insert((u, v));
    }
    let mut added = 0;
    while added < extra_pairs {
        let pair = (rng.gen_range(0..n_u), rng.gen_range(0..n_v));
        if seen.insert(pair) {
            pairs.push(pair);
            added += 1;
        }
    }
    BipartiteGraph::from_pairs(n_u, n_v, pairs)
}

/// Generate the full synthetic two-layer network from a spec.
///
/// RNG stream order is fixed: part 1, part 2, connector edge, auxiliary
/// graph, bridge.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<TwoLayerNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let part1 = generate_ba(spec.n_per_part, spec.m_target_1, &mut rng)?;
    let part2 = generate_ba(spec.n_per_part, spec.m_target_2, &mut rng)?;
    let target = build_barbell_target(&part1, &part2, &mut rng)?;
    let auxiliary = generate_ba(spec.n_per_part, spec.m_aux, &mut rng)?;
    let bridge = wire_bipartite(target.node_count(), auxiliary.node_count(), spec.extra_pairs, &mut rng)?;
    TwoLayerNetwork::new(target, auxiliary, bridge)
}
