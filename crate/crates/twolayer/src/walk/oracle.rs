//! Exact transition-matrix oracles for small instances.
//!
//! These build the full Markov chains that the walkers simulate, so tests
//! and the CLI can check reversibility, stationary laws, and method
//! equivalences against exact linear algebra instead of long runs.

use nalgebra::{DMatrix, DVector};

use super::weights::rwt_vsa_weights_all;
use crate::error::{Error, Result};
use crate::graph::{Graph, TwoLayerNetwork};

/// Dense oracles refuse instances above this many states.
pub const MAX_ORACLE_STATES: usize = 1000;

/// Transition matrix of the indirect-jump walk, with the virtual jumper as
/// the extra last state.
///
/// Rows `0..n` are target nodes: mass `1/(d_u + w_u)` per neighbor and
/// `w_u/(d_u + w_u)` to the jumper. The jumper row is the indirect-jump law
/// `b_u / Σ b`. Nodes with no moves at all become absorbing so rows still
/// sum to one; they are unreachable.
pub fn modified_transition_matrix<W>(
    net: &TwoLayerNetwork,
    alpha: f64,
    weight: &W,
) -> Result<DMatrix<f64>>
where
    W: Fn(usize) -> Option<f64>,
{
    let n = net.target.node_count();
    let states = n + 1;
    if states > MAX_ORACLE_STATES {
        return Err(Error::OracleTooLarge { got: states, limit: MAX_ORACLE_STATES });
    }
    let w = rwt_vsa_weights_all(net, alpha, weight)?;
    let bias: Vec<f64> = if alpha > 0.0 {
        w.iter().map(|&x| x / alpha).collect()
    } else {
        // Jump law is independent of alpha; recompute the biases directly.
        super::weights::indirect_bias_all(net, weight)?
    };
    let bias_sum: f64 = bias.iter().sum();

    let jumper = n;
    let mut p = DMatrix::<f64>::zeros(states, states);
    for u in 0..n {
        let total = net.target.degree(u) as f64 + w[u];
        if total == 0.0 {
            p[(u, u)] = 1.0;
            continue;
        }
        for &nbr in net.target.neighbors(u) {
            p[(u, nbr)] = 1.0 / total;
        }
        p[(u, jumper)] = w[u] / total;
    }
    if bias_sum > 0.0 {
        for u in 0..n {
            p[(jumper, u)] = bias[u] / bias_sum;
        }
    } else {
        p[(jumper, jumper)] = 1.0;
    }
    Ok(p)
}

/// Stationary law of the indirect-jump walk over target nodes plus jumper:
/// proportional to `(d_u + w_u, Σ w_u)`, normalized.
pub fn rwt_vsa_stationary<W>(net: &TwoLayerNetwork, alpha: f64, weight: &W) -> Result<Vec<f64>>
where
    W: Fn(usize) -> Option<f64>,
{
    let w = rwt_vsa_weights_all(net, alpha, weight)?;
    let w_sum: f64 = w.iter().sum();
    let mut pi: Vec<f64> = (0..net.target.node_count())
        .map(|u| net.target.degree(u) as f64 + w[u])
        .collect();
    pi.push(w_sum);
    let total: f64 = pi.iter().sum();
    for x in &mut pi {
        *x /= total;
    }
    Ok(pi)
}

/// Transition matrix of the direct-jump walk on a plain graph:
/// `P[i][j] = (alpha/n + [i~j]) / (d_i + alpha)`, jumps folded in (no
/// explicit jumper state, self-jumps allowed).
pub fn rwwj_transition_matrix(g: &Graph, alpha: f64) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    if n > MAX_ORACLE_STATES {
        return Err(Error::OracleTooLarge { got: n, limit: MAX_ORACLE_STATES });
    }
    let uni = alpha / n as f64;
    let mut p = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let total = g.degree(i) as f64 + alpha;
        if total == 0.0 {
            p[(i, i)] = 1.0;
            continue;
        }
        for j in 0..n {
            let edge = if g.has_edge(i, j) { 1.0 } else { 0.0 };
            p[(i, j)] = (uni + edge) / total;
        }
    }
    Ok(p)
}

/// Stationary distribution of a row-stochastic matrix, by solving
/// `pi^T P = pi^T, Σ pi = 1` directly. Requires a unique stationary law
/// (irreducible chain); returns a singular-system error otherwise.
pub fn stationary_distribution(p: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = p.nrows();
    assert_eq!(n, p.ncols(), "transition matrix must be square");
    let mut m = p.transpose() - DMatrix::<f64>::identity(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    // Replace the last balance equation (redundant) with normalization.
    for j in 0..n {
        m[(n - 1, j)] = 1.0;
    }
    rhs[n - 1] = 1.0;
    match m.clone().lu().solve(&rhs) {
        Some(x) => Ok(x.iter().copied().collect()),
        None => {
            let svd = m.svd(false, false);
            let max = svd.singular_values.max();
            let min = svd.singular_values.min();
            Err(Error::SingularSystem { cond: max / min.max(f64::MIN_POSITIVE) })
        }
    }
}

/// Largest absolute detailed-balance violation `|pi_i P_ij - pi_j P_ji|`
/// over all state pairs.
pub fn max_detailed_balance_violation(p: &DMatrix<f64>, pi: &[f64]) -> f64 {
    let n = p.nrows();
    assert_eq!(pi.len(), n, "pi must have one entry per state");
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((pi[i] * p[(i, j)] - pi[j] * p[(j, i)]).abs());
        }
    }
    worst
}

/// Total variation distance between two distributions on the same support.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "distributions must share a support");
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;

    fn uniform(_: usize) -> Option<f64> {
        Some(1.0)
    }

    fn small_net() -> TwoLayerNetwork {
        let target = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let aux = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let bridge =
            BipartiteGraph::from_pairs(4, 3, [(0, 0), (1, 0), (1, 1), (2, 2), (3, 2)]).unwrap();
        TwoLayerNetwork::new(target, aux, bridge).unwrap()
    }

    #[test]
    fn rows_are_stochastic() {
        let net = small_net();
        let p = modified_transition_matrix(&net, 1.5, &uniform).unwrap();
        for i in 0..p.nrows() {
            let sum: f64 = p.row(i).iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "row {i} sums to {sum}");
        }
    }

    #[test]
    fn detailed_balance_holds_for_derived_weights() {
        let net = small_net();
        for alpha in [0.1, 1.0, 10.0] {
            let p = modified_transition_matrix(&net, alpha, &uniform).unwrap();
            let pi = rwt_vsa_stationary(&net, alpha, &uniform).unwrap();
            let violation = max_detailed_balance_violation(&p, &pi);
            assert!(violation <= 1e-12, "alpha {alpha}: violation {violation}");
        }
    }

    #[test]
    fn stationary_matches_linear_solve() {
        let net = small_net();
        let p = modified_transition_matrix(&net, 2.0, &uniform).unwrap();
        let by_formula = rwt_vsa_stationary(&net, 2.0, &uniform).unwrap();
        let by_solve = stationary_distribution(&p).unwrap();
        assert!(total_variation(&by_formula, &by_solve) < 1e-10);
    }

    #[test]
    fn rwwj_matrix_rows_sum_to_one() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let p = rwwj_transition_matrix(&g, 0.7).unwrap();
        for i in 0..3 {
            let sum: f64 = p.row(i).iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
        let pi = stationary_distribution(&p).unwrap();
        let total: f64 = (2.0 + 2.0) as f64 + 3.0 * 0.7;
        let expected: Vec<f64> = [1.0, 2.0, 1.0]
            .iter()
            .map(|d| (d + 0.7) / total)
            .collect();
        assert!(total_variation(&pi, &expected) < 1e-12);
    }

    #[test]
    fn size_guard() {
        let g = Graph::from_edges(MAX_ORACLE_STATES + 1, []).unwrap();
        assert!(matches!(
            rwwj_transition_matrix(&g, 1.0),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
