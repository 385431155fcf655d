//! Baseline walkers: the plain random walk and the random walk with direct
//! (uniform) jumps. Both are simulator-only references; the jump walker
//! assumes uniform node sampling is available on the graph.

use rand::Rng;

use super::SamplePath;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Simple random walk: every step moves to a uniformly chosen neighbor.
/// Sample denominators are the node degrees (the walk's stationary law is
/// degree-proportional).
pub fn simple_rw<R: Rng>(g: &Graph, start: usize, budget: usize, rng: &mut R) -> Result<SamplePath> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if g.degree(start) == 0 {
        return Err(Error::IsolatedStart(start));
    }
    let mut path = SamplePath::with_capacity(budget);
    let mut x = start;
    path.push(x, g.degree(x) as f64, false);
    for _ in 1..budget {
        let nbrs = g.neighbors(x);
        x = nbrs[rng.gen_range(0..nbrs.len())];
        path.push(x, g.degree(x) as f64, false);
    }
    Ok(path)
}

/// Random walk with jumps: at a node of degree `d`, jump to a uniform node
/// with probability `alpha / (d + alpha)`, otherwise move to a uniform
/// neighbor. Stationary law is proportional to `d + alpha`, which is the
/// recorded denominator.
///
/// `alpha == 0` degenerates to [`simple_rw`] and consumes the identical RNG
/// stream. `alpha == f64::INFINITY` is the jump-always flag: every step is a
/// uniform draw and denominators are the constant 1.
pub fn rwwj<R: Rng>(
    g: &Graph,
    alpha: f64,
    start: usize,
    budget: usize,
    rng: &mut R,
) -> Result<SamplePath> {
    assert!(alpha >= 0.0, "alpha must be nonnegative");
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if alpha == 0.0 {
        return simple_rw(g, start, budget, rng);
    }
    let n = g.node_count();
    let denom_of = |u: usize| {
        if alpha.is_infinite() {
            1.0
        } else {
            g.degree(u) as f64 + alpha
        }
    };

    let mut path = SamplePath::with_capacity(budget);
    let mut x = start;
    path.push(x, denom_of(x), false);
    for _ in 1..budget {
        let d = g.degree(x) as f64;
        let jump = alpha.is_infinite() || rng.gen_bool(alpha / (d + alpha));
        if jump {
            x = rng.gen_range(0..n);
            path.push(x, denom_of(x), true);
        } else {
            let nbrs = g.neighbors(x);
            x = nbrs[rng.gen_range(0..nbrs.len())];
            path.push(x, denom_of(x), false);
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rw_on_triangle_is_uniform() {
        let g = triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let steps = 300_000;
        let path = simple_rw(&g, 0, steps, &mut rng).unwrap();
        let mut counts = [0usize; 3];
        for (node, denom, jumped) in path.iter() {
            counts[node] += 1;
            assert_eq!(denom, 2.0);
            assert!(!jumped);
        }
        for &c in &counts {
            let freq = c as f64 / steps as f64;
            assert!((freq - 1.0 / 3.0).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn rw_on_path_graph_visits_by_degree() {
        let g = path3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let steps = 400_000;
        let path = simple_rw(&g, 0, steps, &mut rng).unwrap();
        let mut counts = [0usize; 3];
        for (node, _, _) in path.iter() {
            counts[node] += 1;
        }
        // pi proportional to (1, 2, 1)
        let mid = counts[1] as f64 / steps as f64;
        assert!((mid - 0.5).abs() < 0.01, "middle frequency {mid}");
    }

    #[test]
    fn rw_rejects_isolated_start() {
        let g = Graph::from_edges(2, []).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(matches!(simple_rw(&g, 0, 5, &mut rng), Err(Error::IsolatedStart(0))));
    }

    #[test]
    fn rw_returns_exactly_budget_samples() {
        let g = triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(simple_rw(&g, 1, 17, &mut rng).unwrap().len(), 17);
    }

    #[test]
    fn rwwj_zero_alpha_matches_simple_rw() {
        let g = path3();
        let a = simple_rw(&g, 0, 1000, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        let b = rwwj(&g, 0.0, 0, 1000, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_eq!(a.nodes, b.nodes);
    }

    #[test]
    fn rwwj_jump_always_is_uniform() {
        let g = path3();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let steps = 300_000;
        let path = rwwj(&g, f64::INFINITY, 0, steps, &mut rng).unwrap();
        let mut counts = [0usize; 3];
        for (node, denom, _) in path.iter() {
            counts[node] += 1;
            assert_eq!(denom, 1.0);
        }
        for &c in &counts[..] {
            let freq = c as f64 / steps as f64;
            assert!((freq - 1.0 / 3.0).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn rwwj_escapes_isolated_nodes() {
        // Node 2 is isolated; a jump can land there and must jump out again.
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let path = rwwj(&g, 2.0, 0, 50_000, &mut rng).unwrap();
        assert!(path.nodes.iter().any(|&u| u == 2));
        assert_eq!(path.len(), 50_000);
    }
}
