//! Multi-trial experiment runner: repeated sampling runs, per-degree NRMSE
//! tables, and the low/high-degree summaries used for trend checks.
//!
//! Trial `i` is seeded with `base_seed ^ i` and draws fresh uniform starts
//! from its own stream, so a config reproduces its table byte for byte no
//! matter how many worker threads reduce it.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{
    degree_distribution, estimate_from_path, path_degree_samples, true_degree_distribution,
    CharacteristicFn, DegreeCurve,
};
use crate::graph::TwoLayerNetwork;
use crate::vertex_sampler::{UniformVertexSampler, VertexSampler};
use crate::walk::{
    compute_rwtrwa_weights, covered_auxiliary_count, per_node_desired_weights, rwt_rwa_walk,
    rwt_vsa_walk, rwwj, simple_rw, vsa1_sample, vsa1_to_path, vsa2_sample, vsa2_to_path,
    RwtRwaStarts, SamplePath,
};

/// Sampling method under evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rw,
    Rwwj,
    VsaI,
    VsaII,
    RwtVsa,
    RwtRwa,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Rw => "rw",
            Method::Rwwj => "rwwj",
            Method::VsaI => "vsa-i",
            Method::VsaII => "vsa-ii",
            Method::RwtVsa => "rwt-vsa",
            Method::RwtRwa => "rwt-rwa",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rw" => Some(Method::Rw),
            "rwwj" => Some(Method::Rwwj),
            "vsa-i" => Some(Method::VsaI),
            "vsa-ii" => Some(Method::VsaII),
            "rwt-vsa" => Some(Method::RwtVsa),
            "rwt-rwa" => Some(Method::RwtRwa),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which side of the degree distribution feeds the NRMSE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Pdf,
    Ccdf,
}

/// One experiment: a method with its parameters, budget as a fraction of
/// the target size, and the number of independent runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub method: Method,
    pub alpha: f64,
    pub beta: f64,
    /// Budget as a fraction of the target node count, in (0, 1].
    pub budget_fraction: f64,
    pub runs: usize,
    pub base_seed: u64,
    /// Samples discarded from the front of each walk before estimating.
    #[serde(default)]
    pub burnin: usize,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::ZeroRuns);
        }
        if !(self.budget_fraction > 0.0 && self.budget_fraction <= 1.0) {
            return Err(Error::BadBudgetFraction(self.budget_fraction));
        }
        Ok(())
    }

    pub fn budget(&self, target_nodes: usize) -> usize {
        ((self.budget_fraction * target_nodes as f64).round() as usize).max(1)
    }
}

/// Per-degree NRMSE over the runs of one config. Degrees with zero
/// ground-truth mass are absent (their NRMSE is undefined).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NrmseTable {
    pub method: Method,
    pub kind: CurveKind,
    pub alpha: f64,
    pub beta: f64,
    pub budget: usize,
    pub runs: usize,
    pub base_seed: u64,
    /// Starts are drawn uniformly per run from the trial's own stream.
    pub start_policy: String,
    pub rows: Vec<NrmseRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NrmseRow {
    pub degree: usize,
    pub truth: f64,
    pub nrmse: f64,
}

impl NrmseTable {
    /// Render as CSV: `degree,truth,nrmse,method,alpha,beta,budget,runs`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,truth,nrmse,method,alpha,beta,budget,runs\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                row.degree,
                row.truth,
                row.nrmse,
                self.method,
                self.alpha,
                self.beta,
                self.budget,
                self.runs
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    /// Mean NRMSE over the lowest-decile and highest-decile populated
    /// degree bins. Per-bin noise is high at small scale; comparing decile
    /// aggregates is how trend assertions are made.
    pub fn decile_summary(&self) -> Option<(f64, f64)> {
        if self.rows.is_empty() {
            return None;
        }
        let k = self.rows.len().div_ceil(10);
        let low = self.rows[..k].iter().map(|r| r.nrmse).sum::<f64>() / k as f64;
        let high =
            self.rows[self.rows.len() - k..].iter().map(|r| r.nrmse).sum::<f64>() / k as f64;
        Some((low, high))
    }
}

/// `sqrt(mean((θ̂ - θ)^2)) / θ`.
pub fn nrmse(estimates: &[f64], truth: f64) -> Result<f64> {
    if estimates.is_empty() {
        return Err(Error::EmptySamples);
    }
    if truth == 0.0 {
        return Err(Error::ZeroTruth);
    }
    let mse = estimates.iter().map(|e| (e - truth) * (e - truth)).sum::<f64>()
        / estimates.len() as f64;
    Ok(mse.sqrt() / truth)
}

/// Run `config.runs` independent trials and reduce them into a per-degree
/// NRMSE table for the requested curve.
pub fn run_trials(
    net: &TwoLayerNetwork,
    config: &TrialConfig,
    kind: CurveKind,
) -> Result<NrmseTable> {
    config.validate()?;
    let truth = true_degree_distribution(&net.target);
    let budget = config.budget(net.target.node_count());

    let curves: Vec<DegreeCurve> = (0..config.runs)
        .into_par_iter()
        .map(|i| {
            let path = sample_trial(net, config, budget, i)?;
            degree_distribution(path_degree_samples(&path, &net.target), Some(truth.d_max))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for d in 0..=truth.d_max {
        let t = match kind {
            CurveKind::Pdf => truth.pdf_at(d),
            CurveKind::Ccdf => truth.ccdf_at(d),
        };
        if t == 0.0 {
            continue;
        }
        let estimates: Vec<f64> = curves
            .iter()
            .map(|c| match kind {
                CurveKind::Pdf => c.pdf_at(d),
                CurveKind::Ccdf => c.ccdf_at(d),
            })
            .collect();
        rows.push(NrmseRow { degree: d, truth: t, nrmse: nrmse(&estimates, t)? });
    }
    Ok(NrmseTable {
        method: config.method,
        kind,
        alpha: config.alpha,
        beta: config.beta,
        budget,
        runs: config.runs,
        base_seed: config.base_seed,
        start_policy: "uniform-per-run".into(),
        rows,
    })
}

/// Per-trial scalar estimates of one characteristic.
pub fn run_scalar_trials(
    net: &TwoLayerNetwork,
    config: &TrialConfig,
    f: &CharacteristicFn,
) -> Result<Vec<f64>> {
    config.validate()?;
    let budget = config.budget(net.target.node_count());
    (0..config.runs)
        .into_par_iter()
        .map(|i| {
            let path = sample_trial(net, config, budget, i)?;
            estimate_from_path(&path, &net.target, f)
        })
        .collect()
}

/// Produce one trial's sample path (all methods are normalized to a path
/// whose denominators encode their reweighting).
fn sample_trial(
    net: &TwoLayerNetwork,
    config: &TrialConfig,
    budget: usize,
    trial: usize,
) -> Result<SamplePath> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.base_seed ^ trial as u64);
    let mut path = sample_once(net, config, budget, &mut rng)?;
    path.discard_prefix(config.burnin);
    if path.is_empty() {
        return Err(Error::EmptySamples);
    }
    Ok(path)
}

/// One sampling run with the config's method; starts drawn from `rng`.
pub fn sample_once<R: Rng>(
    net: &TwoLayerNetwork,
    config: &TrialConfig,
    budget: usize,
    rng: &mut R,
) -> Result<SamplePath> {
    let target = &net.target;
    match config.method {
        Method::Rw => {
            let start = draw_start(target.node_count(), |u| target.degree(u) > 0, rng)?;
            simple_rw(target, start, budget, rng)
        }
        Method::Rwwj => {
            let start = draw_start(target.node_count(), |u| target.degree(u) > 0, rng)?;
            rwwj(target, config.alpha, start, budget, rng)
        }
        Method::VsaI => {
            let sampler = UniformVertexSampler::new(net.auxiliary.node_count());
            let samples = vsa1_sample(net, &sampler, budget, rng)?;
            vsa1_to_path(&samples, net, |v| sampler.prior_weight(v))
        }
        Method::VsaII => {
            let sampler = UniformVertexSampler::new(net.auxiliary.node_count());
            let groups = vsa2_sample(net, &sampler, budget, rng)?;
            Ok(vsa2_to_path(&groups))
        }
        Method::RwtVsa => {
            let sampler = UniformVertexSampler::new(net.auxiliary.node_count());
            let start = draw_start(
                target.node_count(),
                |u| target.degree(u) > 0 || net.is_covered(u),
                rng,
            )?;
            rwt_vsa_walk(net, config.alpha, &sampler, start, budget, rng)
        }
        Method::RwtRwa => {
            // alpha and beta are per-node jump weights here, the same
            // scale as the direct-jump walker: total jump mass is the
            // per-node weight times the covered count on each side.
            let (desired, alpha_total) = per_node_desired_weights(net, config.alpha);
            let beta_total = config.beta * covered_auxiliary_count(net) as f64;
            let weights = compute_rwtrwa_weights(net, alpha_total, beta_total, desired.clone())?;
            let x = draw_start(
                target.node_count(),
                |u| target.degree(u) > 0 || desired[u] > 0.0,
                rng,
            )?;
            let y = draw_start(
                net.auxiliary.node_count(),
                |v| net.auxiliary.degree(v) > 0 || weights.w_v[v] > 0.0,
                rng,
            )?;
            let covered: Vec<usize> =
                (0..target.node_count()).filter(|&u| desired[u] > 0.0).collect();
            let mh = if config.alpha > 0.0 {
                *covered
                    .choose(rng)
                    .ok_or(Error::NoCoveredAuxiliary(0))?
            } else {
                x
            };
            rwt_rwa_walk(net, alpha_total, beta_total, desired, RwtRwaStarts { x, y, mh }, budget, rng)
        }
    }
}

/// Uniform draw over `0..count` conditioned on `valid`; bounded retries.
fn draw_start<R: Rng>(
    count: usize,
    valid: impl Fn(usize) -> bool,
    rng: &mut R,
) -> Result<usize> {
    for _ in 0..100_000 {
        let u = rng.gen_range(0..count);
        if valid(u) {
            return Ok(u);
        }
    }
    Err(Error::NoCoveredAuxiliary(100_000))
}
