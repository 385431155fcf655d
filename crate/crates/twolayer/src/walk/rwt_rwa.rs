//! Coupled-walk sampling when neither layer supports vertex sampling.
//!
//! Three chains advance in lockstep. A walk on the auxiliary graph jumps
//! through the bridge neighbors of the target walk's position; a
//! Metropolis-Hastings chain turns the target-side law that auxiliary walk
//! naturally induces (the proposal weights) into the operator-chosen desired
//! law; and the target walk takes its jump destinations from the MH chain.
//! Per step the update order is auxiliary walk, then MH chain, then target
//! walk.

use rand::Rng;

use super::weights::{compute_rwtrwa_weights, RwtRwaWeights};
use super::SamplePath;
use crate::error::{Error, Result};
use crate::graph::TwoLayerNetwork;

/// Initial states of the three chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RwtRwaStarts {
    /// Target-walk start.
    pub x: usize,
    /// Auxiliary-walk start.
    pub y: usize,
    /// MH-chain start; must carry positive desired weight.
    pub mh: usize,
}

#[derive(Debug)]
pub struct RwtRwaWalker<'a> {
    net: &'a TwoLayerNetwork,
    weights: RwtRwaWeights,
    x: usize,
    y: usize,
    mh: usize,
    step: usize,
    /// Auxiliary-walk jumps skipped because the target walk sat on an
    /// uncovered node (fell back to a walk move).
    pub fallback_steps: usize,
    /// MH steps that kept the previous state (uncovered `y` or rejected
    /// proposal).
    pub mh_rejections: usize,
}

impl<'a> RwtRwaWalker<'a> {
    pub fn new(
        net: &'a TwoLayerNetwork,
        weights: RwtRwaWeights,
        starts: RwtRwaStarts,
    ) -> Result<Self> {
        if net.target.degree(starts.x) == 0 && weights.desired_u[starts.x] == 0.0 {
            return Err(Error::DeadEnd(starts.x));
        }
        if net.auxiliary.degree(starts.y) == 0 && weights.w_v[starts.y] == 0.0 {
            return Err(Error::DeadEnd(starts.y));
        }
        // With alpha = 0 the target walk never jumps and the MH chain is
        // inert, so any start is fine there.
        if weights.alpha > 0.0 && weights.desired_u[starts.mh] <= 0.0 {
            return Err(Error::DesiredWeightUncovered(starts.mh));
        }
        Ok(Self {
            net,
            weights,
            x: starts.x,
            y: starts.y,
            mh: starts.mh,
            step: 0,
            fallback_steps: 0,
            mh_rejections: 0,
        })
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn mh_state(&self) -> usize {
        self.mh
    }

    pub fn step_count(&self) -> usize {
        self.step
    }

    pub fn weights(&self) -> &RwtRwaWeights {
        &self.weights
    }

    /// Denominator of the current target sample: `d_x + w_x` with the
    /// desired weight.
    pub fn denom(&self) -> f64 {
        self.net.target.degree(self.x) as f64 + self.weights.desired_u[self.x]
    }

    /// Advance all three chains once; returns whether the target walk moved
    /// by a jump.
    pub fn advance<R: Rng>(&mut self, rng: &mut R) -> Result<bool> {
        self.advance_auxiliary(rng);
        self.advance_mh(rng);
        let jumped = self.advance_target(rng)?;
        self.step += 1;
        Ok(jumped)
    }

    fn advance_auxiliary<R: Rng>(&mut self, rng: &mut R) {
        let aux = &self.net.auxiliary;
        let w = self.weights.w_v[self.y];
        let d = aux.degree(self.y) as f64;
        let jump = w > 0.0 && rng.gen_bool(w / (d + w));
        if jump {
            let candidates = self.net.bridge.u_neighbors(self.x);
            if !candidates.is_empty() {
                self.y = candidates[rng.gen_range(0..candidates.len())];
                return;
            }
            // Target walk sits on an uncovered node; nothing to jump to.
            self.fallback_steps += 1;
        }
        if aux.degree(self.y) > 0 {
            let nbrs = aux.neighbors(self.y);
            self.y = nbrs[rng.gen_range(0..nbrs.len())];
        }
        // An isolated auxiliary node with zero weight never moves; the
        // constructor rejects such starts and jumps cannot reach them.
    }

    fn advance_mh<R: Rng>(&mut self, rng: &mut R) {
        let candidates = self.net.bridge.v_neighbors(self.y);
        if candidates.is_empty() {
            self.mh_rejections += 1;
            return;
        }
        let proposal = candidates[rng.gen_range(0..candidates.len())];
        let num = self.weights.desired_u[proposal] * self.weights.proposal_u[self.mh];
        let den = self.weights.desired_u[self.mh] * self.weights.proposal_u[proposal];
        let accept = if den <= 0.0 {
            num > 0.0
        } else {
            let r = (num / den).min(1.0);
            r >= 1.0 || rng.gen_bool(r)
        };
        if accept {
            self.mh = proposal;
        } else {
            self.mh_rejections += 1;
        }
    }

    fn advance_target<R: Rng>(&mut self, rng: &mut R) -> Result<bool> {
        let g = &self.net.target;
        let w = self.weights.desired_u[self.x];
        let d = g.degree(self.x) as f64;
        let jump = w > 0.0 && rng.gen_bool(w / (d + w));
        if jump {
            // Copy the MH state verbatim, even when it just rejected.
            self.x = self.mh;
            return Ok(true);
        }
        if g.degree(self.x) == 0 {
            return Err(Error::DeadEnd(self.x));
        }
        let nbrs = g.neighbors(self.x);
        self.x = nbrs[rng.gen_range(0..nbrs.len())];
        Ok(false)
    }
}

/// Run the coupled walker for `budget` target samples.
///
/// `desired_u` are the jump weights the operator wants on the target side
/// (sum `alpha`, zero on uncovered nodes); the recorded denominators are
/// `d_u + desired_u[u]`.
pub fn rwt_rwa_walk<R: Rng>(
    net: &TwoLayerNetwork,
    alpha: f64,
    beta: f64,
    desired_u: Vec<f64>,
    starts: RwtRwaStarts,
    budget: usize,
    rng: &mut R,
) -> Result<SamplePath> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let weights = compute_rwtrwa_weights(net, alpha, beta, desired_u)?;
    let mut walker = RwtRwaWalker::new(net, weights, starts)?;
    let mut path = SamplePath::with_capacity(budget);
    path.push(walker.x(), walker.denom(), false);
    for _ in 1..budget {
        let jumped = walker.advance(rng)?;
        path.push(walker.x(), walker.denom(), jumped);
    }
    Ok(path)
}
