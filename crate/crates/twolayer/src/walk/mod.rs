//! Sampling processes over the two-layer network: plain random walk, random
//! walk with (direct or indirect) jumps, the pure vertex-sampling designs,
//! and exact transition-matrix oracles for small instances.

mod basic;
mod oracle;
mod rwt_rwa;
mod rwt_vsa;
mod vsa;
mod weights;

pub use basic::{rwwj, simple_rw};
pub use oracle::{
    max_detailed_balance_violation, modified_transition_matrix, rwt_vsa_stationary,
    rwwj_transition_matrix, stationary_distribution, total_variation, MAX_ORACLE_STATES,
};
pub use rwt_rwa::{rwt_rwa_walk, RwtRwaStarts, RwtRwaWalker};
pub use rwt_vsa::rwt_vsa_walk;
pub use vsa::{vsa1_sample, vsa1_to_path, vsa2_sample, vsa2_to_path, GroupMember, VsaIISampleGroup};
pub use weights::{
    compute_rwtrwa_weights, covered_auxiliary_count, fixed_point_residual, indirect_bias,
    indirect_bias_all, per_node_desired_weights, rwt_vsa_weight, rwt_vsa_weights_all,
    solve_fixed_point_weights, uniform_desired_weights, RwtRwaWeights,
};

use crate::error::{Error, Result};

/// Give up after this many consecutive auxiliary draws that hit nodes with
/// no bridge edges.
pub(crate) const MAX_UNCOVERED_DRAWS: usize = 100_000;

/// Ordered record of visited target nodes.
///
/// `denom[i]` is the stationary-law denominator the producing method assigns
/// to sample `i` (degree, degree plus jump weight, or the vertex-sampling
/// bias), and is what the ratio estimators divide by. `jumped[i]` marks
/// samples reached by a jump.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    pub nodes: Vec<usize>,
    pub denom: Vec<f64>,
    pub jumped: Vec<bool>,
}

impl SamplePath {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            nodes: Vec::with_capacity(capacity),
            denom: Vec::with_capacity(capacity),
            jumped: Vec::with_capacity(capacity),
        }
    }

    pub fn push(&mut self, node: usize, denom: f64, jumped: bool) {
        self.nodes.push(node);
        self.denom.push(denom);
        self.jumped.push(jumped);
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64, bool)> + '_ {
        self.nodes
            .iter()
            .zip(&self.denom)
            .zip(&self.jumped)
            .map(|((&n, &d), &j)| (n, d, j))
    }

    /// Drop the first `n` samples (burn-in for variance studies).
    pub fn discard_prefix(&mut self, n: usize) {
        let n = n.min(self.nodes.len());
        self.nodes.drain(..n);
        self.denom.drain(..n);
        self.jumped.drain(..n);
    }

    /// Render as CSV with a `step,node,denom,jumped` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,node,denom,jumped\n");
        for (i, (node, denom, jumped)) in self.iter().enumerate() {
            out.push_str(&format!("{i},{node},{denom},{jumped}\n"));
        }
        out
    }

    /// Parse the format written by [`SamplePath::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut path = SamplePath::with_capacity(16);
        for (idx, line) in text.lines().enumerate() {
            if idx == 0 || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let parse_err = |message: String| Error::Parse {
                path: "<sample csv>".into(),
                line: idx + 1,
                message,
            };
            if fields.len() != 4 {
                return Err(parse_err(format!("expected 4 fields, got {}", fields.len())));
            }
            let node: usize =
                fields[1].trim().parse().map_err(|e| parse_err(format!("node: {e}")))?;
            let denom: f64 =
                fields[2].trim().parse().map_err(|e| parse_err(format!("denom: {e}")))?;
            let jumped: bool =
                fields[3].trim().parse().map_err(|e| parse_err(format!("jumped: {e}")))?;
            path.push(node, denom, jumped);
        }
        Ok(path)
    }
}
