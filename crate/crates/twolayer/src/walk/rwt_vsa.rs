//! Random walk on the target graph with indirect jumps through the
//! auxiliary layer.
//!
//! At node `x` the walker jumps with probability `w_x / (d_x + w_x)` where
//! `w_x = alpha * b_x`; a jump draws an auxiliary node from the sampler and
//! lands on a uniform bridge neighbor. With these weights the chain is time
//! reversible and visits `u` proportionally to `d_u + w_u`, which is the
//! denominator recorded per sample.

use rand::Rng;

use super::weights::rwt_vsa_weights_all;
use super::{SamplePath, MAX_UNCOVERED_DRAWS};
use crate::error::{Error, Result};
use crate::graph::TwoLayerNetwork;
use crate::vertex_sampler::VertexSampler;

pub fn rwt_vsa_walk<S: VertexSampler, R: Rng>(
    net: &TwoLayerNetwork,
    alpha: f64,
    sampler: &S,
    start: usize,
    budget: usize,
    rng: &mut R,
) -> Result<SamplePath> {
    assert!(alpha >= 0.0, "alpha must be nonnegative");
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    // Jump weights need the sampler's a-priori weights for every covered
    // auxiliary node; samplers that only learn weights at draw time cannot
    // drive this walker.
    let weights = rwt_vsa_weights_all(net, alpha, &|v| sampler.prior_weight(v))?;
    let g = &net.target;
    if g.degree(start) == 0 && weights[start] == 0.0 {
        return Err(Error::DeadEnd(start));
    }

    let mut path = SamplePath::with_capacity(budget);
    let mut x = start;
    path.push(x, g.degree(x) as f64 + weights[x], false);
    for _ in 1..budget {
        let d = g.degree(x) as f64;
        let w = weights[x];
        let jump = if w == 0.0 {
            false
        } else {
            rng.gen_bool(w / (d + w))
        };
        if jump {
            x = indirect_jump(net, sampler, rng)?;
            path.push(x, g.degree(x) as f64 + weights[x], true);
        } else {
            if g.degree(x) == 0 {
                // Unreachable for static graphs once the start check
                // passed: a walk arrives via an edge, a jump lands on a
                // covered node.
                return Err(Error::DeadEnd(x));
            }
            let nbrs = g.neighbors(x);
            x = nbrs[rng.gen_range(0..nbrs.len())];
            path.push(x, g.degree(x) as f64 + weights[x], false);
        }
    }
    Ok(path)
}

/// Draw auxiliary nodes until one has bridge neighbors, then pick one of
/// those uniformly. Redrawing uncovered nodes only rescales the jump law by
/// a constant, leaving it proportional to `b_u`.
fn indirect_jump<S: VertexSampler, R: Rng>(
    net: &TwoLayerNetwork,
    sampler: &S,
    rng: &mut R,
) -> Result<usize> {
    for _ in 0..MAX_UNCOVERED_DRAWS {
        let v = sampler.sample(rng).v;
        let nbrs = net.bridge.v_neighbors(v);
        if !nbrs.is_empty() {
            return Ok(nbrs[rng.gen_range(0..nbrs.len())]);
        }
    }
    Err(Error::NoCoveredAuxiliary(MAX_UNCOVERED_DRAWS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BipartiteGraph, Graph};
    use crate::vertex_sampler::UniformVertexSampler;
    use crate::walk::simple_rw;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_net() -> TwoLayerNetwork {
        let target = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let aux = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let bridge =
            BipartiteGraph::from_pairs(4, 3, [(0, 0), (1, 0), (1, 1), (2, 2), (3, 2)]).unwrap();
        TwoLayerNetwork::new(target, aux, bridge).unwrap()
    }

    #[test]
    fn zero_alpha_reduces_to_simple_rw() {
        let net = small_net();
        let sampler = UniformVertexSampler::new(3);
        let a = simple_rw(&net.target, 0, 2000, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = rwt_vsa_walk(&net, 0.0, &sampler, 0, 2000, &mut ChaCha8Rng::seed_from_u64(1))
            .unwrap();
        assert_eq!(a.nodes, b.nodes);
        assert!(b.jumped.iter().all(|&j| !j));
    }

    #[test]
    fn walker_returns_exact_budget() {
        let net = small_net();
        let sampler = UniformVertexSampler::new(3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let path = rwt_vsa_walk(&net, 5.0, &sampler, 0, 321, &mut rng).unwrap();
        assert_eq!(path.len(), 321);
        assert!(path.jumped.iter().any(|&j| j));
    }

    #[test]
    fn dead_start_is_rejected() {
        let target = Graph::from_edges(2, [(0, 1)]).unwrap();
        let aux = Graph::from_edges(1, []).unwrap();
        let bridge = BipartiteGraph::from_pairs(2, 1, [(0, 0)]).unwrap();
        // Make node 1 isolated and uncovered by building a 3-node target.
        let target3 = Graph::from_edges(3, target.edges().collect::<Vec<_>>()).unwrap();
        let bridge3 = BipartiteGraph::from_pairs(3, 1, bridge.pairs().collect::<Vec<_>>()).unwrap();
        let net = TwoLayerNetwork::new(target3, aux, bridge3).unwrap();
        let sampler = UniformVertexSampler::new(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            rwt_vsa_walk(&net, 2.0, &sampler, 2, 10, &mut rng),
            Err(Error::DeadEnd(2))
        ));
    }

    #[test]
    fn isolated_covered_node_always_jumps_out() {
        // Node 2 has no target edges but one bridge edge: the walk can land
        // there by a jump and must leave by another jump.
        let target = Graph::from_edges(3, [(0, 1)]).unwrap();
        let aux = Graph::from_edges(2, []).unwrap();
        let bridge = BipartiteGraph::from_pairs(3, 2, [(0, 0), (1, 0), (2, 1)]).unwrap();
        let net = TwoLayerNetwork::new(target, aux, bridge).unwrap();
        let sampler = UniformVertexSampler::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let path = rwt_vsa_walk(&net, 3.0, &sampler, 0, 30_000, &mut rng).unwrap();
        assert!(path.nodes.contains(&2));
        assert_eq!(path.len(), 30_000);
    }

    #[test]
    fn denominators_are_degree_plus_weight() {
        let net = small_net();
        let sampler = UniformVertexSampler::new(3);
        let alpha = 2.0;
        let weights =
            rwt_vsa_weights_all(&net, alpha, &|v| sampler.prior_weight(v)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let path = rwt_vsa_walk(&net, alpha, &sampler, 1, 500, &mut rng).unwrap();
        for (node, denom, _) in path.iter() {
            assert_eq!(denom, net.target.degree(node) as f64 + weights[node]);
        }
    }
}
