//! Pure vertex-sampling designs: draw auxiliary nodes, cross the bridge.
//!
//! Variant I keeps one uniformly chosen bridge neighbor per draw and needs
//! a-priori weights to reweight later; variant II keeps the whole neighbor
//! set together with the weight observed at sample time, so it also works
//! with samplers whose weights are only known once a node is drawn.

use rand::Rng;

use super::{SamplePath, MAX_UNCOVERED_DRAWS};
use crate::error::{Error, Result};
use crate::graph::TwoLayerNetwork;
use crate::vertex_sampler::VertexSampler;
use crate::walk::weights::indirect_bias;

/// One auxiliary draw of the collect-all-neighbors design: the drawn node
/// `v`, its weight at draw time, and every bridge neighbor with its own
/// bridge degree.
#[derive(Debug, Clone, PartialEq)]
pub struct VsaIISampleGroup {
    pub v: usize,
    pub a_v: f64,
    pub members: Vec<GroupMember>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupMember {
    pub u: usize,
    pub bridge_degree: usize,
}

/// Independent target samples: draw `v`, then one uniform bridge neighbor.
/// Draws that hit an uncovered auxiliary node are skipped and do not count
/// toward the budget. Each returned node appears with probability
/// proportional to its indirect bias `b_u`.
pub fn vsa1_sample<S: VertexSampler, R: Rng>(
    net: &TwoLayerNetwork,
    sampler: &S,
    budget: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut samples = Vec::with_capacity(budget);
    let mut misses = 0usize;
    while samples.len() < budget {
        let v = sampler.sample(rng).v;
        let nbrs = net.bridge.v_neighbors(v);
        if nbrs.is_empty() {
            misses += 1;
            if misses >= MAX_UNCOVERED_DRAWS {
                return Err(Error::NoCoveredAuxiliary(misses));
            }
            continue;
        }
        misses = 0;
        samples.push(nbrs[rng.gen_range(0..nbrs.len())]);
    }
    Ok(samples)
}

/// Collect whole bridge neighborhoods until at least `budget` target samples
/// have been gathered.
pub fn vsa2_sample<S: VertexSampler, R: Rng>(
    net: &TwoLayerNetwork,
    sampler: &S,
    budget: usize,
    rng: &mut R,
) -> Result<Vec<VsaIISampleGroup>> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut groups = Vec::new();
    let mut collected = 0usize;
    let mut misses = 0usize;
    while collected < budget {
        let drawn = sampler.sample(rng);
        let nbrs = net.bridge.v_neighbors(drawn.v);
        if nbrs.is_empty() {
            misses += 1;
            if misses >= MAX_UNCOVERED_DRAWS {
                return Err(Error::NoCoveredAuxiliary(misses));
            }
            continue;
        }
        misses = 0;
        let members: Vec<GroupMember> = nbrs
            .iter()
            .map(|&u| GroupMember { u, bridge_degree: net.bridge.u_degree(u) })
            .collect();
        collected += members.len();
        groups.push(VsaIISampleGroup { v: drawn.v, a_v: drawn.a_v, members });
    }
    Ok(groups)
}

/// View variant-I samples as a [`SamplePath`] whose denominators are the
/// indirect biases `b_u`, so the generic ratio estimator applies unchanged.
pub fn vsa1_to_path<W>(
    samples: &[usize],
    net: &TwoLayerNetwork,
    weight: W,
) -> Result<SamplePath>
where
    W: Fn(usize) -> Option<f64>,
{
    let mut path = SamplePath::with_capacity(samples.len());
    for &u in samples {
        path.push(u, indirect_bias(net, u, &weight)?, true);
    }
    Ok(path)
}

/// Flatten variant-II groups into a [`SamplePath`]: a member `u` drawn via
/// `v` carries denominator `a_v * d_u_b`, reproducing the grouped estimator
/// term by term.
pub fn vsa2_to_path(groups: &[VsaIISampleGroup]) -> SamplePath {
    let total: usize = groups.iter().map(|g| g.members.len()).sum();
    let mut path = SamplePath::with_capacity(total);
    for g in groups {
        for m in &g.members {
            path.push(m.u, g.a_v * m.bridge_degree as f64, true);
        }
    }
    path
}
