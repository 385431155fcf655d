//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({a}, {b}): node id {id} out of range for a graph with {count} nodes")]
    NodeOutOfRange {
        a: usize,
        b: usize,
        id: usize,
        count: usize,
    },

    #[error("bridge pair ({u}, {v}): {side} id out of range ({count} nodes on that side)")]
    BridgeIdOutOfRange {
        u: usize,
        v: usize,
        side: &'static str,
        count: usize,
    },

    #[error("bridge cross-consistency broken at pair ({u}, {v})")]
    BridgeInconsistent { u: usize, v: usize },

    #[error(
        "layer size mismatch: bridge is {bridge_u}x{bridge_v}, \
         target has {target} nodes, auxiliary has {auxiliary} nodes"
    )]
    LayerMismatch {
        bridge_u: usize,
        bridge_v: usize,
        target: usize,
        auxiliary: usize,
    },

    #[error("preferential attachment requires n > m >= 1, got n={n}, m={m}")]
    BadAttachmentParams { n: usize, m: usize },

    #[error("cannot generate a barbell from an empty part")]
    EmptyBarbellPart,

    #[error("cannot add {requested} extra bridge pairs: only {available} distinct pairs remain")]
    BridgeCapacityExceeded { requested: usize, available: usize },

    #[error("invalid coordinates for venue {id}: lat {lat}, lon {lon}")]
    BadCoordinates { id: usize, lat: f64, lon: f64 },

    #[error("invalid region: min must be strictly below max on both axes")]
    BadRegion,

    #[error("region query cap must be at least 2 (a cap of 1 only accepts empty regions)")]
    BadRegionCap,

    #[error("no venue lies inside the root region")]
    EmptyRootRegion,

    #[error("region bisection exceeded depth {0}; venues too clustered for the query cap")]
    SplitDepthExceeded(usize),

    #[error("start node {0} is isolated")]
    IsolatedStart(usize),

    #[error("node {0} has no neighbors and no jump weight; the walk cannot leave it")]
    DeadEnd(usize),

    #[error("no covered auxiliary node drawn after {0} attempts")]
    NoCoveredAuxiliary(usize),

    #[error("sampler has no a-priori weight for auxiliary node {0}")]
    PriorWeightUnavailable(usize),

    #[error("selection weight unknown for auxiliary node {v}, neighbor of sampled node {u}")]
    MissingWeight { u: usize, v: usize },

    #[error("desired jump weights sum to {got}, expected alpha = {alpha}")]
    DesiredWeightSum { got: f64, alpha: f64 },

    #[error("desired jump weight of uncovered node {0} must be zero")]
    DesiredWeightUncovered(usize),

    #[error("{side} node {id} has no bridge edge; closed-form weights need full coverage")]
    UncoveredNode { side: &'static str, id: usize },

    #[error("linear system is singular (condition estimate {cond:.3e})")]
    SingularSystem { cond: f64 },

    #[error("transition-matrix oracle limited to {limit} states, instance has {got}")]
    OracleTooLarge { got: usize, limit: usize },

    #[error("empty sample set")]
    EmptySamples,

    #[error("ground-truth characteristic is zero; relative error undefined")]
    ZeroTruth,

    #[error("budget must be at least 1")]
    ZeroBudget,

    #[error("runs must be at least 1")]
    ZeroRuns,

    #[error("budget fraction must lie in (0, 1], got {0}")]
    BadBudgetFraction(f64),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("unknown external id {0:?}")]
    UnknownExternalId(String),

    #[error("no check-in venue falls inside the region")]
    NoVenuesInRegion,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
