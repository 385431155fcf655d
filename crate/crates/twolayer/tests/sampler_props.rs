//! Statistical properties of the vertex samplers: empirical frequencies
//! against their exact laws.

mod common;

use common::*;
use rand::Rng;
use twolayer::vertex_sampler::{
    rrzi_inclusion_oracle, GeoVenue, Region, RrziSampler, UniformVertexSampler, VertexSampler,
};

#[test]
fn uniform_sampler_passes_chi_square() {
    let count = 40;
    let sampler = UniformVertexSampler::new(count);
    let mut rng = seeded(10);
    let mut observed = vec![0u64; count];
    for _ in 0..1_000_000 {
        observed[sampler.sample(&mut rng).v] += 1;
    }
    let expected = vec![1.0 / count as f64; count];
    let fit = chi_square_gof(&observed, &expected, 0.01);
    assert!(fit.pass, "statistic {} > critical {}", fit.statistic, fit.critical);
}

/// Random venue cloud in a region, ids 0..n.
fn random_venues<R: Rng>(n: usize, region: Region, rng: &mut R) -> Vec<GeoVenue> {
    (0..n)
        .map(|id| {
            GeoVenue::new(
                id,
                rng.gen_range(region.lat_min..region.lat_max),
                rng.gen_range(region.lon_min..region.lon_max),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn rrzi_empirical_law_matches_enumeration_oracle() {
    let region = Region::new(0.0, 1.0, 0.0, 1.0).unwrap();
    let mut rng = seeded(11);
    for (fixture, cap) in [(30usize, 4usize), (75, 8), (100, 16)] {
        let venues = random_venues(fixture, region, &mut rng);
        let oracle = rrzi_inclusion_oracle(&venues, region, cap).unwrap();
        let total: f64 = oracle.probability.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);

        let sampler = RrziSampler::new(venues, region, cap).unwrap();
        let mut observed = vec![0u64; fixture];
        for _ in 0..200_000 {
            observed[sampler.sample(&mut rng).v] += 1;
        }
        let fit = chi_square_gof(&observed, &oracle.probability, 0.01);
        assert!(
            fit.pass,
            "{fixture} venues, cap {cap}: statistic {} > critical {}",
            fit.statistic, fit.critical
        );
    }
}

#[test]
fn rrzi_sampled_weights_equal_oracle_leaf_weights() {
    // Each venue lives in exactly one accessible leaf, so the weight the
    // sampler attaches must equal the oracle's per-venue leaf weight
    // bitwise (both are powers of two divided by a small integer).
    let region = Region::new(0.0, 1.0, 0.0, 1.0).unwrap();
    let mut rng = seeded(12);
    let venues = random_venues(60, region, &mut rng);
    let oracle = rrzi_inclusion_oracle(&venues, region, 6).unwrap();
    let sampler = RrziSampler::new(venues, region, 6).unwrap();
    for _ in 0..20_000 {
        let w = sampler.sample(&mut rng);
        assert_eq!(w.a_v, oracle.leaf_weight[w.v]);
    }
}

#[test]
fn rrzi_respects_region_restriction() {
    let region = Region::new(0.0, 1.0, 0.0, 1.0).unwrap();
    let mut rng = seeded(13);
    let mut venues = random_venues(50, region, &mut rng);
    // Add venues outside the root; they must never be sampled.
    venues.push(GeoVenue::new(50, 5.0, 5.0).unwrap());
    venues.push(GeoVenue::new(51, -3.0, 0.5).unwrap());
    let sampler = RrziSampler::new(venues.clone(), region, 5).unwrap();
    for _ in 0..50_000 {
        assert!(sampler.sample(&mut rng).v < 50);
    }
    let oracle = rrzi_inclusion_oracle(&venues, region, 5).unwrap();
    assert_eq!(oracle.probability[50], 0.0);
    assert_eq!(oracle.probability[51], 0.0);
}
