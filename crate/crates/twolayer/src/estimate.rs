//! Characteristic functions, ratio estimators, and exact ground truth.
//!
//! Every sampling method reduces to the same ratio form
//! `θ̂ = Σ f(s)/denom(s) / Σ 1/denom(s)`; the estimator never looks at the
//! network, only at the denominators the sampler recorded, so it is
//! oblivious to which method produced the data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, TwoLayerNetwork};
use crate::walk::{indirect_bias, SamplePath, VsaIISampleGroup};

/// The per-node function being averaged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CharacteristicFn {
    /// Indicator of degree exactly `d`.
    DegreePdf(usize),
    /// Indicator of degree strictly above `d`.
    DegreeCcdf(usize),
    /// Arbitrary tabulated values, one per target node.
    Custom(Vec<f64>),
}

impl CharacteristicFn {
    pub fn evaluate(&self, g: &Graph, u: usize) -> f64 {
        match self {
            Self::DegreePdf(d) => {
                if g.degree(u) == *d {
                    1.0
                } else {
                    0.0
                }
            }
            Self::DegreeCcdf(d) => {
                if g.degree(u) > *d {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Custom(table) => table[u],
        }
    }
}

/// Exact population average `θ = (1/n) Σ_u f(u)`.
pub fn ground_truth(g: &Graph, f: &CharacteristicFn) -> f64 {
    let mut sum = KahanSum::default();
    for u in g.nodes() {
        sum.add(f.evaluate(g, u));
    }
    sum.value() / g.node_count() as f64
}

/// Compensated accumulator; keeps the long ratio sums honest.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// The shared ratio form over `(f_value, denominator)` pairs.
pub fn estimate_ratio<I>(samples: I) -> Result<f64>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut numerator = KahanSum::default();
    let mut normalizer = KahanSum::default();
    let mut seen = false;
    for (value, denom) in samples {
        debug_assert!(denom > 0.0, "denominators must be positive");
        seen = true;
        numerator.add(value / denom);
        normalizer.add(1.0 / denom);
    }
    if !seen {
        return Err(Error::EmptySamples);
    }
    Ok(numerator.value() / normalizer.value())
}

/// Ratio estimate over a recorded walk.
pub fn estimate_from_path(path: &SamplePath, g: &Graph, f: &CharacteristicFn) -> Result<f64> {
    estimate_ratio(path.iter().map(|(u, denom, _)| (f.evaluate(g, u), denom)))
}

/// Estimate from independent indirect draws, reweighting each sample by its
/// indirect bias `b_u`; needs the sampler's a-priori weights for every
/// bridge neighbor of every sampled node.
pub fn estimate_vsa1<W>(
    samples: &[usize],
    net: &TwoLayerNetwork,
    weight: W,
    f: &CharacteristicFn,
) -> Result<f64>
where
    W: Fn(usize) -> Option<f64>,
{
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut numerator = KahanSum::default();
    let mut normalizer = KahanSum::default();
    for &u in samples {
        let b = indirect_bias(net, u, &weight)?;
        numerator.add(f.evaluate(&net.target, u) / b);
        normalizer.add(1.0 / b);
    }
    Ok(numerator.value() / normalizer.value())
}

/// Estimate from collect-all-neighbors groups:
/// `θ̂ = [Σ_v (1/a_v) Σ_u f(u)/d_u^(b)] / [Σ_v (1/a_v) Σ_u 1/d_u^(b)]`.
pub fn estimate_vsa2(
    groups: &[VsaIISampleGroup],
    g: &Graph,
    f: &CharacteristicFn,
) -> Result<f64> {
    if groups.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut numerator = KahanSum::default();
    let mut normalizer = KahanSum::default();
    for group in groups {
        for m in &group.members {
            let denom = group.a_v * m.bridge_degree as f64;
            numerator.add(f.evaluate(g, m.u) / denom);
            normalizer.add(1.0 / denom);
        }
    }
    Ok(numerator.value() / normalizer.value())
}

/// A degree-distribution estimate: PDF and CCDF over `0..=d_max`, computed
/// in one pass with a shared normalizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeCurve {
    pub d_max: usize,
    pub pdf: Vec<f64>,
    pub ccdf: Vec<f64>,
    pub normalizer: f64,
}

impl DegreeCurve {
    pub fn pdf_at(&self, d: usize) -> f64 {
        self.pdf.get(d).copied().unwrap_or(0.0)
    }

    pub fn ccdf_at(&self, d: usize) -> f64 {
        self.ccdf.get(d).copied().unwrap_or(0.0)
    }
}

/// Estimate the whole degree distribution from `(degree, denominator)`
/// samples. `d_max` defaults to the largest observed degree.
pub fn degree_distribution<I>(samples: I, d_max: Option<usize>) -> Result<DegreeCurve>
where
    I: IntoIterator<Item = (usize, f64)>,
{
    let mut mass: Vec<f64> = Vec::new();
    let mut normalizer = KahanSum::default();
    let mut seen = false;
    let mut observed_max = 0usize;
    for (degree, denom) in samples {
        debug_assert!(denom > 0.0, "denominators must be positive");
        seen = true;
        observed_max = observed_max.max(degree);
        if degree >= mass.len() {
            mass.resize(degree + 1, 0.0);
        }
        mass[degree] += 1.0 / denom;
        normalizer.add(1.0 / denom);
    }
    if !seen {
        return Err(Error::EmptySamples);
    }
    let d_max = d_max.unwrap_or(observed_max);
    mass.resize(d_max + 1, 0.0);
    let z = normalizer.value();
    let pdf: Vec<f64> = mass.iter().map(|&m| m / z).collect();
    let ccdf = ccdf_from_pdf(&pdf);
    Ok(DegreeCurve { d_max, pdf, ccdf, normalizer: z })
}

/// Exact degree distribution of a graph.
pub fn true_degree_distribution(g: &Graph) -> DegreeCurve {
    let d_max = g.max_degree();
    let mut pdf = vec![0.0; d_max + 1];
    for u in g.nodes() {
        pdf[g.degree(u)] += 1.0;
    }
    let n = g.node_count() as f64;
    for p in &mut pdf {
        *p /= n;
    }
    let ccdf = ccdf_from_pdf(&pdf);
    DegreeCurve { d_max, pdf, ccdf, normalizer: n }
}

fn ccdf_from_pdf(pdf: &[f64]) -> Vec<f64> {
    // ccdf[d] = Σ_{d' > d} pdf[d'], accumulated from the tail so the curve
    // is non-increasing by construction.
    let mut ccdf = vec![0.0; pdf.len()];
    let mut acc = 0.0;
    for d in (0..pdf.len()).rev() {
        ccdf[d] = acc;
        acc += pdf[d];
    }
    ccdf
}

/// Convert a recorded walk into `(degree, denominator)` pairs for
/// [`degree_distribution`].
pub fn path_degree_samples<'a>(
    path: &'a SamplePath,
    g: &'a Graph,
) -> impl Iterator<Item = (usize, f64)> + 'a {
    path.iter().map(|(u, denom, _)| (g.degree(u), denom))
}

/// Estimator output with the metadata needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub budget: usize,
    pub seed: u64,
    /// Normalizer `Z` of the ratio estimator.
    pub normalizer: f64,
    /// Scalar estimate, when a single characteristic was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Degree curve, when a distribution was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<DegreeCurve>,
}

impl EstimateReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV rows `d,estimate,truth` for curve reports (PDF values), with the
    /// exact distribution of `g` as the truth column.
    pub fn curve_csv(&self, truth: &DegreeCurve, ccdf: bool) -> String {
        let mut out = String::from("d,estimate,truth\n");
        if let Some(curve) = &self.curve {
            let len = curve.pdf.len().max(truth.pdf.len());
            for d in 0..len {
                let (est, tru) = if ccdf {
                    (curve.ccdf_at(d), truth.ccdf_at(d))
                } else {
                    (curve.pdf_at(d), truth.pdf_at(d))
                };
                out.push_str(&format!("{d},{est},{tru}\n"));
            }
        }
        out
    }
}
