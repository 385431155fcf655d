//! Sources of auxiliary-graph vertex samples with known relative weights.
//!
//! Every sampler hands back the node together with `a_v`, its relative
//! selection weight at draw time. Estimators only ever use these weights up
//! to proportionality, so conditioning by a common constant (e.g. the
//! region sampler's restart rule) is harmless.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An auxiliary node paired with its relative selection weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedVertexSample {
    pub v: usize,
    pub a_v: f64,
}

/// A source of weighted auxiliary-node samples.
pub trait VertexSampler {
    fn sample<R: Rng>(&self, rng: &mut R) -> WeightedVertexSample;

    /// Relative weight of `v` when it is known before sampling.
    ///
    /// Uniform sampling knows all weights in advance; the region sampler
    /// only learns a weight when the node is actually drawn, and returns
    /// `None` here. Methods that must reweight *neighbors* of a sample
    /// require this to be `Some` for every covered node.
    fn prior_weight(&self, v: usize) -> Option<f64>;
}

/// Uniform independent sampling over `0..count`, all weights 1.
#[derive(Debug, Clone, Copy)]
pub struct UniformVertexSampler {
    count: usize,
}

impl UniformVertexSampler {
    pub fn new(count: usize) -> Self {
        assert!(count >= 1, "sampler needs a nonempty node set");
        Self { count }
    }
}

impl VertexSampler for UniformVertexSampler {
    fn sample<R: Rng>(&self, rng: &mut R) -> WeightedVertexSample {
        WeightedVertexSample { v: rng.gen_range(0..self.count), a_v: 1.0 }
    }

    fn prior_weight(&self, v: usize) -> Option<f64> {
        (v < self.count).then_some(1.0)
    }
}

/// A geo-tagged venue; `id` is the venue's auxiliary node id.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoVenue {
    pub id: usize,
    pub lat: f64,
    pub lon: f64,
}

impl GeoVenue {
    pub fn new(id: usize, lat: f64, lon: f64) -> Result<Self> {
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
            return Err(Error::BadCoordinates { id, lat, lon });
        }
        Ok(Self { id, lat, lon })
    }
}

/// Axis-aligned query rectangle. Membership is closed-open on both axes, so
/// a point exactly on a bisector belongs to the lower/left half.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub lat_min: f64,
    pub lat_max: f64,
    pub lon_min: f64,
    pub lon_max: f64,
}

impl Region {
    pub fn new(lat_min: f64, lat_max: f64, lon_min: f64, lon_max: f64) -> Result<Self> {
        if !(lat_min < lat_max && lon_min < lon_max) {
            return Err(Error::BadRegion);
        }
        Ok(Self { lat_min, lat_max, lon_min, lon_max })
    }

    /// The New York City query rectangle used by the check-in experiments.
    pub fn nyc() -> Self {
        Self { lat_min: 40.4, lat_max: 41.4, lon_min: -74.3, lon_max: -73.3 }
    }

    pub fn contains(&self, lat: f64, lon: f64) -> bool {
        self.lat_min <= lat && lat < self.lat_max && self.lon_min <= lon && lon < self.lon_max
    }

    /// Split at the midpoint of the given axis into (lower, upper).
    fn split(&self, axis: Axis) -> (Region, Region) {
        let mut lower = *self;
        let mut upper = *self;
        match axis {
            Axis::Lon => {
                let mid = 0.5 * (self.lon_min + self.lon_max);
                lower.lon_max = mid;
                upper.lon_min = mid;
            }
            Axis::Lat => {
                let mid = 0.5 * (self.lat_min + self.lat_max);
                lower.lat_max = mid;
                upper.lat_min = mid;
            }
        }
        (lower, upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    Lon,
    Lat,
}

/// Splits alternate longitude, latitude, longitude, ... which keeps leaves
/// close to square.
fn split_axis(depth: u32) -> Axis {
    if depth % 2 == 0 {
        Axis::Lon
    } else {
        Axis::Lat
    }
}

/// Past this depth region widths underflow the f64 grid; reaching it means
/// at least `cap` venues share (nearly) one point.
const MAX_SPLIT_DEPTH: u32 = 128;

/// Random-region-zoom-in venue sampler.
///
/// Models a venue-query API that returns at most `cap` venues per rectangle:
/// the sampler bisects the root region, descending into a uniformly chosen
/// half, until the current region is accessible (holds fewer than `cap`
/// venues). A nonempty final region yields one of its `m` venues uniformly
/// with weight `2^-depth / m`; an empty one restarts from the root, which
/// rescales every weight by the same success probability.
#[derive(Debug, Clone)]
pub struct RrziSampler {
    venues: Vec<GeoVenue>,
    tree: RrziNode,
}

#[derive(Debug, Clone)]
enum RrziNode {
    Leaf(Vec<usize>),
    Split(Box<(RrziNode, RrziNode)>),
}

impl RrziSampler {
    pub fn new(venues: Vec<GeoVenue>, root: Region, cap: usize) -> Result<Self> {
        if cap < 2 {
            return Err(Error::BadRegionCap);
        }
        for v in &venues {
            GeoVenue::new(v.id, v.lat, v.lon)?;
        }
        let inside: Vec<usize> = (0..venues.len())
            .filter(|&i| root.contains(venues[i].lat, venues[i].lon))
            .collect();
        if inside.is_empty() {
            return Err(Error::EmptyRootRegion);
        }
        let tree = build_partition(&venues, root, inside, cap, 0)?;
        Ok(Self { venues, tree })
    }
}

fn build_partition(
    venues: &[GeoVenue],
    region: Region,
    subset: Vec<usize>,
    cap: usize,
    depth: u32,
) -> Result<RrziNode> {
    if subset.len() < cap {
        return Ok(RrziNode::Leaf(subset));
    }
    if depth >= MAX_SPLIT_DEPTH {
        return Err(Error::SplitDepthExceeded(MAX_SPLIT_DEPTH as usize));
    }
    let (lower, upper) = region.split(split_axis(depth));
    let (lo_set, hi_set): (Vec<usize>, Vec<usize>) = subset
        .into_iter()
        .partition(|&i| lower.contains(venues[i].lat, venues[i].lon));
    Ok(RrziNode::Split(Box::new((
        build_partition(venues, lower, lo_set, cap, depth + 1)?,
        build_partition(venues, upper, hi_set, cap, depth + 1)?,
    ))))
}

impl VertexSampler for RrziSampler {
    fn sample<R: Rng>(&self, rng: &mut R) -> WeightedVertexSample {
        loop {
            let mut node = &self.tree;
            let mut depth = 0i32;
            loop {
                match node {
                    RrziNode::Split(halves) => {
                        node = if rng.gen_bool(0.5) { &halves.1 } else { &halves.0 };
                        depth += 1;
                    }
                    RrziNode::Leaf(members) => {
                        if members.is_empty() {
                            break; // restart from the root
                        }
                        let pick = members[rng.gen_range(0..members.len())];
                        return WeightedVertexSample {
                            v: self.venues[pick].id,
                            a_v: 0.5f64.powi(depth) / members.len() as f64,
                        };
                    }
                }
            }
        }
    }

    fn prior_weight(&self, _v: usize) -> Option<f64> {
        None
    }
}

/// Exact inclusion law of the region sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct RrziInclusion {
    /// Probability of each input venue, conditioned on a successful draw;
    /// aligned with the input slice and summing to 1.
    pub probability: Vec<f64>,
    /// Unconditional per-venue mass `2^-depth / m` of the venue's leaf;
    /// equals the `a_v` the sampler reports for that venue.
    pub leaf_weight: Vec<f64>,
    /// Total mass of nonempty leaves (probability a descent does not
    /// restart).
    pub success_mass: f64,
}

/// Enumerate every zoom path of the region sampler and accumulate exact
/// inclusion probabilities. Independent of [`RrziSampler`]'s internals; used
/// to verify it.
pub fn rrzi_inclusion_oracle(
    venues: &[GeoVenue],
    root: Region,
    cap: usize,
) -> Result<RrziInclusion> {
    if cap < 2 {
        return Err(Error::BadRegionCap);
    }
    for v in venues {
        GeoVenue::new(v.id, v.lat, v.lon)?;
    }
    let inside: Vec<usize> = (0..venues.len())
        .filter(|&i| root.contains(venues[i].lat, venues[i].lon))
        .collect();
    if inside.is_empty() {
        return Err(Error::EmptyRootRegion);
    }

    let mut leaf_weight = vec![0.0; venues.len()];
    let mut success_mass = 0.0;
    enumerate_paths(
        venues,
        root,
        &inside,
        cap,
        0,
        1.0,
        &mut leaf_weight,
        &mut success_mass,
    )?;
    let probability =
        leaf_weight.iter().map(|&w| w / success_mass).collect();
    Ok(RrziInclusion { probability, leaf_weight, success_mass })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_paths(
    venues: &[GeoVenue],
    region: Region,
    subset: &[usize],
    cap: usize,
    depth: u32,
    mass: f64,
    leaf_weight: &mut [f64],
    success_mass: &mut f64,
) -> Result<()> {
    if subset.len() < cap {
        if !subset.is_empty() {
            let share = mass / subset.len() as f64;
            for &i in subset {
                leaf_weight[i] += share;
            }
            *success_mass += mass;
        }
        return Ok(());
    }
    if depth >= MAX_SPLIT_DEPTH {
        return Err(Error::SplitDepthExceeded(MAX_SPLIT_DEPTH as usize));
    }
    let (lower, upper) = region.split(split_axis(depth));
    let (lo, hi): (Vec<usize>, Vec<usize>) = subset
        .iter()
        .copied()
        .partition(|&i| lower.contains(venues[i].lat, venues[i].lon));
    enumerate_paths(venues, lower, &lo, cap, depth + 1, mass * 0.5, leaf_weight, success_mass)?;
    enumerate_paths(venues, upper, &hi, cap, depth + 1, mass * 0.5, leaf_weight, success_mass)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn venue(id: usize, lat: f64, lon: f64) -> GeoVenue {
        GeoVenue::new(id, lat, lon).unwrap()
    }

    fn unit_region() -> Region {
        Region::new(0.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn uniform_sampler_single_node() {
        let s = UniformVertexSampler::new(1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            let w = s.sample(&mut rng);
            assert_eq!(w.v, 0);
            assert_eq!(w.a_v, 1.0);
        }
        assert_eq!(s.prior_weight(0), Some(1.0));
        assert_eq!(s.prior_weight(1), None);
    }

    #[test]
    fn uniform_sampler_frequencies() {
        let s = UniformVertexSampler::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws = 1_000_000usize;
        let mut counts = [0usize; 4];
        for _ in 0..draws {
            counts[s.sample(&mut rng).v] += 1;
        }
        let sigma = (draws as f64 * 0.25 * 0.75).sqrt();
        for &c in &counts {
            assert!((c as f64 - draws as f64 * 0.25).abs() < 3.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn uniform_sampler_stays_in_range() {
        let s = UniformVertexSampler::new(10_164);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!((0..10_000).all(|_| s.sample(&mut rng).v < 10_164));
    }

    #[test]
    fn rrzi_root_already_accessible() {
        let venues = vec![venue(7, 0.3, 0.3)];
        let s = RrziSampler::new(venues, unit_region(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = s.sample(&mut rng);
        assert_eq!(w.v, 7);
        assert_eq!(w.a_v, 1.0);
    }

    #[test]
    fn rrzi_two_venues_split_once() {
        // Either side of the first (longitude) bisector at 0.5.
        let venues = vec![venue(0, 0.5, 0.25), venue(1, 0.5, 0.75)];
        let s = RrziSampler::new(venues.clone(), unit_region(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let draws = 100_000usize;
        let mut counts = [0usize; 2];
        for _ in 0..draws {
            let w = s.sample(&mut rng);
            assert_eq!(w.a_v, 0.5);
            counts[w.v] += 1;
        }
        let sigma = (draws as f64 * 0.25).sqrt();
        assert!((counts[0] as f64 - draws as f64 * 0.5).abs() < 4.0 * sigma);

        let oracle = rrzi_inclusion_oracle(&venues, unit_region(), 2).unwrap();
        assert_eq!(oracle.probability, vec![0.5, 0.5]);
        assert_eq!(oracle.leaf_weight, vec![0.5, 0.5]);
        assert_eq!(oracle.success_mass, 1.0);
    }

    #[test]
    fn rrzi_bisector_membership_is_closed_open() {
        let venues = vec![venue(0, 0.1, 0.5), venue(1, 0.1, 0.9)];
        // Venue 0 sits exactly on the lon bisector: with [min, max) halves
        // it lands in [0.5, 1.0) together with venue 1, so the descent
        // continues (lat split keeps them together, the next lon split at
        // 0.75 separates them at depth 3). Empty leaves rescale the
        // conditional probabilities back to 1/2 each.
        let oracle = rrzi_inclusion_oracle(&venues, unit_region(), 2).unwrap();
        assert_eq!(oracle.leaf_weight, vec![0.125, 0.125]);
        assert!((oracle.success_mass - 0.25).abs() < 1e-15);
        assert_eq!(oracle.probability, vec![0.5, 0.5]);
    }

    #[test]
    fn rrzi_four_symmetric_leaves() {
        let venues = vec![
            venue(0, 0.25, 0.25),
            venue(1, 0.25, 0.75),
            venue(2, 0.75, 0.25),
            venue(3, 0.75, 0.75),
        ];
        let oracle = rrzi_inclusion_oracle(&venues, unit_region(), 2).unwrap();
        for p in &oracle.probability {
            assert!((p - 0.25).abs() < 1e-15);
        }
        let total: f64 = oracle.probability.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rrzi_uneven_leaf_depths() {
        // West half: one venue, accessible at depth 1. East half holds
        // three, so it splits by latitude into a depth-2 leaf with two
        // venues and a depth-2 leaf with one.
        let venues = vec![
            venue(0, 0.5, 0.25),
            venue(1, 0.8, 0.75),
            venue(2, 0.9, 0.80),
            venue(3, 0.2, 0.75),
        ];
        let oracle = rrzi_inclusion_oracle(&venues, unit_region(), 3).unwrap();
        assert_eq!(oracle.leaf_weight, vec![0.5, 0.125, 0.125, 0.25]);
        assert_eq!(oracle.success_mass, 1.0);
        assert_eq!(oracle.probability, oracle.leaf_weight);

        // Sampled weights must be exactly the oracle's leaf weights.
        let s = RrziSampler::new(venues, unit_region(), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..2_000 {
            let w = s.sample(&mut rng);
            assert_eq!(w.a_v, oracle.leaf_weight[w.v]);
        }
    }

    #[test]
    fn rrzi_rejects_degenerate_input() {
        assert!(matches!(
            RrziSampler::new(vec![venue(0, 0.5, 0.5)], unit_region(), 1),
            Err(Error::BadRegionCap)
        ));
        assert!(matches!(
            RrziSampler::new(vec![venue(0, 5.0, 5.0)], unit_region(), 2),
            Err(Error::EmptyRootRegion)
        ));
        // Two coincident venues can never be separated.
        let twins = vec![venue(0, 0.5, 0.5), venue(1, 0.5, 0.5)];
        assert!(matches!(
            RrziSampler::new(twins, unit_region(), 2),
            Err(Error::SplitDepthExceeded(_))
        ));
    }

    #[test]
    fn region_rejects_inverted_bounds() {
        assert!(Region::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(GeoVenue::new(0, 91.0, 0.0).is_err());
    }
}
