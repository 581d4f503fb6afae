//! Deterministic rational samplers for the admissible regions, used by the
//! acceptance suite, the CLI grid runs and the benchmarks.

use crate::exact::{rat_int, Rational};
use crate::tiltplane::{
    li_lower_bound, region_endpoints, region_line_value, region_test, PlanePoint, RegionId,
    StabilityParam,
};
use crate::variety::VarietyParams;

/// `n` abscissas strictly inside the region's horizontal span.
pub fn region_s_samples(r: RegionId, var: &VarietyParams, n: usize) -> Vec<Rational> {
    let (a, b) = region_endpoints(r, var);
    let span = &b.s - &a.s;
    (1..=n)
        .map(|i| &a.s + &span * rat_int(i as i64) / rat_int(n as i64 + 1))
        .collect()
}

/// Deterministic grid of points strictly inside region `r`: `n_s` abscissas,
/// up to `n_q` ordinates each, spaced between the lower boundary and the
/// segment line. Every returned point passes the region test.
pub fn region_point_grid(
    r: RegionId,
    var: &VarietyParams,
    n_s: usize,
    n_q: usize,
) -> Vec<PlanePoint> {
    let mut points = Vec::new();
    for s in region_s_samples(r, var, n_s) {
        let lo = li_lower_bound(&s, var);
        let hi = region_line_value(&s, r, var);
        if lo >= hi {
            continue;
        }
        let gap = &hi - &lo;
        for j in 1..=n_q {
            let q = &lo + &gap * rat_int(j as i64) / rat_int(n_q as i64 + 1);
            let p = PlanePoint::new(s.clone(), q);
            debug_assert!(region_test(&p, r, var));
            points.push(p);
        }
    }
    points
}

/// Cartesian grid of `(p3, p2, p1)` parameter triples from the three region
/// grids, truncated to equal per-region counts.
pub fn certificate_triples(
    var: &VarietyParams,
    n_s: usize,
    n_q: usize,
) -> Vec<(StabilityParam, StabilityParam, StabilityParam)> {
    let g3 = region_point_grid(RegionId::Three, var, n_s, n_q);
    let g2 = region_point_grid(RegionId::Two, var, n_s, n_q);
    let g1 = region_point_grid(RegionId::One, var, n_s, n_q);
    let len = g3.len().min(g2.len()).min(g1.len());
    let mut triples = Vec::with_capacity(len * len * len);
    for p3 in &g3[..len] {
        for p2 in &g2[..len] {
            for p1 in &g1[..len] {
                triples.push((
                    StabilityParam::new(p3.clone()),
                    StabilityParam::new(p2.clone()),
                    StabilityParam::new(p1.clone()),
                ));
            }
        }
    }
    triples
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn grids_stay_inside_their_regions() {
        let var = VarietyParams::gushel_mukai();
        for r in [RegionId::One, RegionId::Two, RegionId::Three] {
            let grid = region_point_grid(r, &var, 6, 4);
            assert!(!grid.is_empty());
            for p in &grid {
                assert!(region_test(p, r, &var), "{p} escaped region {r}");
            }
        }
    }

    #[test]
    fn triples_are_cubic_in_the_grid_size() {
        let var = VarietyParams::gushel_mukai();
        let triples = certificate_triples(&var, 5, 1);
        assert_eq!(triples.len(), 125);
        // some sampled points of regions 1 and 2 sit strictly below the
        // inner parabola q = s^2/2
        let below = |p: &PlanePoint| &p.q - &p.s * &p.s / rat_int(2) < Rational::zero();
        assert!(triples.iter().any(|(_, p2, _)| below(&p2.point)));
        assert!(triples.iter().any(|(_, _, p1)| below(&p1.point)));
    }
}
