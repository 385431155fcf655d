//! Jump-weight assignment for the walk-based methods.
//!
//! The indirect bias `b_u = Σ_{v ∈ V_u} a_v / d_v^(b)` is the relative
//! probability that one auxiliary draw followed by a uniform bridge step
//! lands on `u`. The single-walk method scales it by `alpha`; the coupled
//! two-walk method replaces the sampler weights by the other walk's
//! stationary probabilities, which yields a linear fixed point solved here
//! both approximately (given desired weights) and exactly (closed form).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::TwoLayerNetwork;

/// `b_u`: one term `a_v / d_v^(b)` per bridge neighbor of `u`. Zero when `u`
/// has no bridge edges.
pub fn indirect_bias<W>(net: &TwoLayerNetwork, u: usize, weight: &W) -> Result<f64>
where
    W: Fn(usize) -> Option<f64>,
{
    let mut b = 0.0;
    for &v in net.bridge.u_neighbors(u) {
        let a_v = weight(v).ok_or(Error::MissingWeight { u, v })?;
        b += a_v / net.bridge.v_degree(v) as f64;
    }
    Ok(b)
}

/// `b_u` for every target node.
pub fn indirect_bias_all<W>(net: &TwoLayerNetwork, weight: &W) -> Result<Vec<f64>>
where
    W: Fn(usize) -> Option<f64>,
{
    (0..net.target.node_count())
        .map(|u| indirect_bias(net, u, weight))
        .collect()
}

/// Jump weight `w_u = alpha * b_u` of the single-walk method; zero exactly
/// when `u` is uncovered, in which case the walker neither jumps from nor to
/// `u`.
pub fn rwt_vsa_weight<W>(net: &TwoLayerNetwork, alpha: f64, u: usize, weight: &W) -> Result<f64>
where
    W: Fn(usize) -> Option<f64>,
{
    Ok(alpha * indirect_bias(net, u, weight)?)
}

/// [`rwt_vsa_weight`] for every target node.
pub fn rwt_vsa_weights_all<W>(net: &TwoLayerNetwork, alpha: f64, weight: &W) -> Result<Vec<f64>>
where
    W: Fn(usize) -> Option<f64>,
{
    Ok(indirect_bias_all(net, weight)?.into_iter().map(|b| alpha * b).collect())
}

/// Desired weights spread uniformly over covered target nodes, scaled to sum
/// to `alpha`; uncovered nodes get zero (they cannot be jump targets).
pub fn uniform_desired_weights(net: &TwoLayerNetwork, alpha: f64) -> Vec<f64> {
    let covered: Vec<usize> =
        (0..net.target.node_count()).filter(|&u| net.is_covered(u)).collect();
    let mut w = vec![0.0; net.target.node_count()];
    if covered.is_empty() {
        return w;
    }
    let share = alpha / covered.len() as f64;
    for u in covered {
        w[u] = share;
    }
    w
}

/// Desired weights with value `per_node` on every covered target node (and
/// zero elsewhere), plus their total. This parameterization matches the
/// direct-jump walker, where the jump probability at a degree-`d` node is
/// `per_node / (d + per_node)` regardless of graph size.
pub fn per_node_desired_weights(net: &TwoLayerNetwork, per_node: f64) -> (Vec<f64>, f64) {
    let mut w = vec![0.0; net.target.node_count()];
    let mut total = 0.0;
    for (u, slot) in w.iter_mut().enumerate() {
        if net.is_covered(u) {
            *slot = per_node;
            total += per_node;
        }
    }
    (w, total)
}

/// Covered auxiliary nodes, for scaling the auxiliary-side jump mass the
/// same per-node way.
pub fn covered_auxiliary_count(net: &TwoLayerNetwork) -> usize {
    (0..net.auxiliary.node_count()).filter(|&v| net.bridge.v_degree(v) > 0).count()
}

/// All derived quantities of the coupled two-walk design for a given desired
/// jump distribution on the target side.
#[derive(Debug, Clone, PartialEq)]
pub struct RwtRwaWeights {
    pub alpha: f64,
    pub beta: f64,
    /// Desired jump weights `w_u` (sum `alpha`, zero on uncovered nodes).
    pub desired_u: Vec<f64>,
    /// Target-walk stationary law `(d_u + w_u) / (2|E| + alpha)`.
    pub pi_u: Vec<f64>,
    /// Auxiliary-side jump weights `w_v = beta * Σ_{u ∈ U_v} pi_u / d_u^(b)`.
    pub w_v: Vec<f64>,
    /// Auxiliary-walk stationary law, normalized by `2|E'| + Σ_v w_v`.
    ///
    /// When some target nodes are uncovered, `Σ_v w_v` falls short of `beta`
    /// (it equals `beta * Σ_{covered u} pi_u`), so the textbook `beta`
    /// normalizer would not give a distribution; the realized sum does.
    pub pi_v: Vec<f64>,
    /// Proposal weights `w'_u = alpha * Σ_{v ∈ V_u} pi_v / d_v^(b)`: the jump
    /// law the auxiliary walk naturally realizes on the target side.
    pub proposal_u: Vec<f64>,
}

/// Relative tolerance when checking that desired weights sum to `alpha`.
const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Propagate a desired target-side jump distribution through the coupled
/// system: `pi_U` from the desired weights, auxiliary weights `w_V` from
/// `pi_U`, `pi_V` from `w_V`, and finally the proposal weights `w'_U` the
/// auxiliary walk induces back on the target side.
pub fn compute_rwtrwa_weights(
    net: &TwoLayerNetwork,
    alpha: f64,
    beta: f64,
    desired_u: Vec<f64>,
) -> Result<RwtRwaWeights> {
    let n = net.target.node_count();
    assert_eq!(desired_u.len(), n, "desired weights must cover every target node");
    let sum: f64 = desired_u.iter().sum();
    if (sum - alpha).abs() > WEIGHT_SUM_TOL * alpha.max(1.0) {
        return Err(Error::DesiredWeightSum { got: sum, alpha });
    }
    for (u, &w) in desired_u.iter().enumerate() {
        if w != 0.0 && !net.is_covered(u) {
            return Err(Error::DesiredWeightUncovered(u));
        }
    }

    let two_e = net.target.volume() as f64;
    let pi_u: Vec<f64> = (0..n)
        .map(|u| (net.target.degree(u) as f64 + desired_u[u]) / (two_e + alpha))
        .collect();

    let n_v = net.auxiliary.node_count();
    let mut w_v = vec![0.0; n_v];
    for v in 0..n_v {
        let mut acc = 0.0;
        for &u in net.bridge.v_neighbors(v) {
            acc += pi_u[u] / net.bridge.u_degree(u) as f64;
        }
        w_v[v] = beta * acc;
    }

    let beta_realized: f64 = w_v.iter().sum();
    let two_e_aux = net.auxiliary.volume() as f64;
    let pi_v: Vec<f64> = (0..n_v)
        .map(|v| (net.auxiliary.degree(v) as f64 + w_v[v]) / (two_e_aux + beta_realized))
        .collect();

    let mut proposal_u = vec![0.0; n];
    for (u, prop) in proposal_u.iter_mut().enumerate() {
        let mut acc = 0.0;
        for &v in net.bridge.u_neighbors(u) {
            acc += pi_v[v] / net.bridge.v_degree(v) as f64;
        }
        *prop = alpha * acc;
    }

    Ok(RwtRwaWeights { alpha, beta, desired_u, pi_u, w_v, pi_v, proposal_u })
}

/// Size guard for the dense closed-form solve.
const MAX_CLOSED_FORM_NODES: usize = 2000;

/// The self-consistent weight pair of the coupled two-walk design, solved in
/// closed form:
///
/// `w_U* = c (I - c c' A D_V^-1 A^T D_U^-1)^-1 A D_V^-1 (d_V + c' A^T D_U^-1 d_U)`
///
/// with `c = alpha / (2|E'| + beta)`, `c' = beta / (2|E| + alpha)`, `A` the
/// bridge adjacency matrix, `D` the diagonal bridge degrees and `d` the
/// graph degree vectors; `w_V*` is the mirror image. Requires every node on
/// both sides to have at least one bridge edge.
pub fn solve_fixed_point_weights(
    net: &TwoLayerNetwork,
    alpha: f64,
    beta: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = net.target.node_count();
    let n_v = net.auxiliary.node_count();
    if n.max(n_v) > MAX_CLOSED_FORM_NODES {
        return Err(Error::OracleTooLarge { got: n.max(n_v), limit: MAX_CLOSED_FORM_NODES });
    }
    for u in 0..n {
        if net.bridge.u_degree(u) == 0 {
            return Err(Error::UncoveredNode { side: "target", id: u });
        }
    }
    for v in 0..n_v {
        if net.bridge.v_degree(v) == 0 {
            return Err(Error::UncoveredNode { side: "auxiliary", id: v });
        }
    }

    let c = alpha / (net.auxiliary.volume() as f64 + beta);
    let cp = beta / (net.target.volume() as f64 + alpha);

    let mut a = DMatrix::<f64>::zeros(n, n_v);
    for (u, v) in net.bridge.pairs() {
        a[(u, v)] = 1.0;
    }
    // A D_V^-1 and A^T D_U^-1 as column scalings.
    let mut a_dv = a.clone();
    for v in 0..n_v {
        let inv = 1.0 / net.bridge.v_degree(v) as f64;
        a_dv.column_mut(v).scale_mut(inv);
    }
    let mut at_du = a.transpose();
    for u in 0..n {
        let inv = 1.0 / net.bridge.u_degree(u) as f64;
        at_du.column_mut(u).scale_mut(inv);
    }

    let d_u = DVector::<f64>::from_iterator(n, (0..n).map(|u| net.target.degree(u) as f64));
    let d_v =
        DVector::<f64>::from_iterator(n_v, (0..n_v).map(|v| net.auxiliary.degree(v) as f64));

    let solve = |m: DMatrix<f64>, rhs: DVector<f64>| -> Result<DVector<f64>> {
        match m.clone().lu().solve(&rhs) {
            Some(x) => Ok(x),
            None => {
                let svd = m.svd(false, false);
                let max = svd.singular_values.max();
                let min = svd.singular_values.min();
                Err(Error::SingularSystem { cond: max / min.max(f64::MIN_POSITIVE) })
            }
        }
    };

    let m_u = DMatrix::<f64>::identity(n, n) - (&a_dv * &at_du) * (c * cp);
    let rhs_u = &a_dv * (&d_v + &at_du * &d_u * cp);
    let w_u = solve(m_u, rhs_u)? * c;

    let m_v = DMatrix::<f64>::identity(n_v, n_v) - (&at_du * &a_dv) * (c * cp);
    let rhs_v = &at_du * (&d_u + &a_dv * &d_v * c);
    let w_v = solve(m_v, rhs_v)? * cp;

    Ok((w_u.iter().copied().collect(), w_v.iter().copied().collect()))
}

/// Max relative residual of the weight conditions at a candidate pair: how
/// far `(w_U, w_V)` is from reproducing itself through the stationary laws.
pub fn fixed_point_residual(
    net: &TwoLayerNetwork,
    alpha: f64,
    beta: f64,
    w_u: &[f64],
    w_v: &[f64],
) -> f64 {
    let two_e = net.target.volume() as f64;
    let two_e_aux = net.auxiliary.volume() as f64;
    let pi_u: Vec<f64> = (0..w_u.len())
        .map(|u| (net.target.degree(u) as f64 + w_u[u]) / (two_e + alpha))
        .collect();
    let pi_v: Vec<f64> = (0..w_v.len())
        .map(|v| (net.auxiliary.degree(v) as f64 + w_v[v]) / (two_e_aux + beta))
        .collect();

    let scale = w_u
        .iter()
        .chain(w_v.iter())
        .fold(1.0f64, |m, &x| m.max(x.abs()));
    let mut worst = 0.0f64;
    for u in 0..w_u.len() {
        let mut acc = 0.0;
        for &v in net.bridge.u_neighbors(u) {
            acc += pi_v[v] / net.bridge.v_degree(v) as f64;
        }
        worst = worst.max((w_u[u] - alpha * acc).abs() / scale);
    }
    for v in 0..w_v.len() {
        let mut acc = 0.0;
        for &u in net.bridge.v_neighbors(v) {
            acc += pi_u[u] / net.bridge.u_degree(u) as f64;
        }
        worst = worst.max((w_v[v] - beta * acc).abs() / scale);
    }
    worst
}
