//! Shared helpers for the integration and acceptance suites.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use twolayer::graph::{BipartiteGraph, Graph, TwoLayerNetwork};

/// Chi-square goodness-of-fit of observed counts against expected
/// probabilities. Cells with zero expected probability must hold zero
/// observations; remaining cells form the statistic with `cells - 1`
/// degrees of freedom.
pub struct ChiSquareFit {
    pub statistic: f64,
    pub critical: f64,
    pub pass: bool,
}

pub fn chi_square_gof(observed: &[u64], expected_probs: &[f64], significance: f64) -> ChiSquareFit {
    assert_eq!(observed.len(), expected_probs.len());
    let total: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&obs, &p) in observed.iter().zip(expected_probs) {
        if p == 0.0 {
            assert_eq!(obs, 0, "observation in a zero-probability cell");
            continue;
        }
        let expected = p * total as f64;
        let diff = obs as f64 - expected;
        statistic += diff * diff / expected;
        cells += 1;
    }
    assert!(cells >= 2, "need at least two populated cells");
    let dist = ChiSquared::new((cells - 1) as f64).unwrap();
    let critical = dist.inverse_cdf(1.0 - significance);
    ChiSquareFit { statistic, critical, pass: statistic <= critical }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph where each pair is an edge with probability `p`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random two-layer network; bridge pairs appear with probability `p_bridge`
/// (coverage not guaranteed).
pub fn random_network<R: Rng>(
    n_u: usize,
    n_v: usize,
    p_edge: f64,
    p_bridge: f64,
    rng: &mut R,
) -> TwoLayerNetwork {
    let target = random_graph(n_u, p_edge, rng);
    let aux = random_graph(n_v, p_edge, rng);
    let mut pairs = Vec::new();
    for u in 0..n_u {
        for v in 0..n_v {
            if rng.gen_bool(p_bridge) {
                pairs.push((u, v));
            }
        }
    }
    let bridge = BipartiteGraph::from_pairs(n_u, n_v, pairs).unwrap();
    TwoLayerNetwork::new(target, aux, bridge).unwrap()
}

/// Random two-layer network where every node on both sides has at least one
/// bridge edge.
pub fn random_covered_network<R: Rng>(
    n_u: usize,
    n_v: usize,
    p_edge: f64,
    p_bridge: f64,
    rng: &mut R,
) -> TwoLayerNetwork {
    let target = random_graph(n_u, p_edge, rng);
    let aux = random_graph(n_v, p_edge, rng);
    let mut pairs = Vec::new();
    for u in 0..n_u {
        pairs.push((u, rng.gen_range(0..n_v)));
    }
    for v in 0..n_v {
        pairs.push((rng.gen_range(0..n_u), v));
    }
    for u in 0..n_u {
        for v in 0..n_v {
            if rng.gen_bool(p_bridge) {
                pairs.push((u, v));
            }
        }
    }
    let bridge = BipartiteGraph::from_pairs(n_u, n_v, pairs).unwrap();
    TwoLayerNetwork::new(target, aux, bridge).unwrap()
}

/// Random positive per-node weights in [0.5, 2.0).
pub fn random_weights<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.5..2.0)).collect()
}

/// Empirical distribution from visit counts.
pub fn normalize_counts(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}
