//! Geometry of the (s, q) half-plane: the admissible open region above the
//! strong Bogomolov boundary, the three per-component stability regions with
//! their slope windows, exact slope comparison, and wall-endpoint quadratics.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::chern::{NumChern, ReducedPoint};
use crate::exact::{format_rational, rat, rat_int, QuadraticSurd, Rational};
use crate::variety::{catalog, ObjectName, VarietyParams};
use crate::{Error, Result};

/// Point of the (s, q) plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePoint {
    pub s: Rational,
    pub q: Rational,
}

impl PlanePoint {
    pub fn new(s: Rational, q: Rational) -> Self {
        PlanePoint { s, q }
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.s),
            format_rational(&self.q)
        )
    }
}

/// Exact slope value: a rational, or +infinity on a vanishing denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(r) => Some(r),
            Slope::Infinite => None,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::Infinite) => Ordering::Less,
            (Slope::Infinite, Slope::Finite(_)) => Ordering::Greater,
            (Slope::Infinite, Slope::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{}", format_rational(r)),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

/// A tilt-plane point together with an optional second-tilt slope; the
/// numerical identity card of a (double-tilted) stability condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParam {
    pub point: PlanePoint,
    pub mu: Option<Slope>,
}

impl StabilityParam {
    pub fn new(point: PlanePoint) -> Self {
        StabilityParam { point, mu: None }
    }

    pub fn with_mu(point: PlanePoint, mu: Rational) -> Self {
        StabilityParam {
            point,
            mu: Some(Slope::Finite(mu)),
        }
    }
}

/// Which of the three rank-2 components a region (or lattice) refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionId {
    One,
    Two,
    Three,
}

impl RegionId {
    pub fn index(self) -> u8 {
        match self {
            RegionId::One => 1,
            RegionId::Two => 2,
            RegionId::Three => 3,
        }
    }

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(RegionId::One),
            2 => Ok(RegionId::Two),
            3 => Ok(RegionId::Three),
            _ => Err(Error::Parse(format!(
                "region index must be 1, 2 or 3, got {i}"
            ))),
        }
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Reparametrization `(beta, alpha^2) -> (s, q) = (beta, (alpha^2+beta^2)/2)`.
/// Only `alpha^2` enters, so everything stays rational.
pub fn ab_to_sq(beta: &Rational, alpha_sq: &Rational) -> Result<PlanePoint> {
    if !alpha_sq.is_positive() {
        return Err(Error::NonPositiveAlphaSq);
    }
    let q = (alpha_sq + beta * beta) / rat_int(2);
    Ok(PlanePoint::new(beta.clone(), q))
}

/// Lower boundary of the admissible region at abscissa `s`: the maximum of
/// the strengthened-Bogomolov parabola `s^2/2 - 3/(4d)` and the two binding
/// integer tangent lines `k*s - k^2/2`, `k` in `{floor(s), floor(s)+1}`.
///
/// The tangent-line envelope is concave in `k` with maximum at `k = s`, so
/// the two integers around `s` are the only candidates.
pub fn li_lower_bound(s: &Rational, var: &VarietyParams) -> Rational {
    let parabola = s * s / rat_int(2) - rat(3, 4 * var.degree());
    let k0 = s.floor();
    let mut best = parabola;
    for k in [k0.clone(), &k0 + rat_int(1)] {
        let tangent = &k * s - &k * &k / rat_int(2);
        if tangent > best {
            best = tangent;
        }
    }
    best
}

/// Open-region membership: strictly above the lower boundary.
pub fn in_li_region(p: &PlanePoint, var: &VarietyParams) -> bool {
    p.q > li_lower_bound(&p.s, var)
}

/// The tangency offset `sqrt(3/(2d))`: the distance from an integer abscissa
/// to the point where the tangent line meets the lower parabola.
pub fn li_tangency_offset(var: &VarietyParams) -> QuadraticSurd {
    QuadraticSurd::sqrt_of_rational(&rat(3, 2 * var.degree())).expect("positive radicand")
}

/// Reduced point of the rank-2 bundle in the decompositions:
/// `(-1/2, (d-6)/(8d))`, which lies on `s^2 - 2q = 3/(2d)`.
pub fn rank2_reduced_q(var: &VarietyParams) -> Rational {
    let d = var.degree();
    rat(d - 6, 8 * d)
}

/// Segment endpoints cutting out each region, left to right.
pub fn region_endpoints(r: RegionId, var: &VarietyParams) -> (PlanePoint, PlanePoint) {
    let qe = rank2_reduced_q(var);
    match r {
        RegionId::One => (
            PlanePoint::new(rat_int(-1), rat(1, 2)),
            PlanePoint::new(rat(-1, 2), qe),
        ),
        RegionId::Two => (
            PlanePoint::new(rat(-1, 2), qe),
            PlanePoint::new(rat_int(0), rat_int(0)),
        ),
        RegionId::Three => (
            PlanePoint::new(rat_int(0), rat_int(0)),
            PlanePoint::new(rat(1, 2), qe),
        ),
    }
}

/// Value at `s` of the line through the region's two endpoints.
pub fn region_line_value(s: &Rational, r: RegionId, var: &VarietyParams) -> Rational {
    let (a, b) = region_endpoints(r, var);
    &a.q + (&b.q - &a.q) * (s - &a.s) / (&b.s - &a.s)
}

/// The window classes bounding the second tilt in a region: the shifted
/// low object and the unshifted high object.
fn window_classes(r: RegionId, var: &VarietyParams) -> Result<(NumChern, NumChern)> {
    let o = NumChern::line_bundle(0);
    let rank2 = if var.is_gushel_mukai() {
        catalog(var, &ObjectName::TautSub)?
    } else {
        catalog(var, &ObjectName::E2)?
    };
    Ok(match r {
        RegionId::One => (NumChern::line_bundle(-1).shift(1), rank2),
        RegionId::Two => (rank2.shift(1), o),
        RegionId::Three => (o.shift(1), rank2.dual()),
    })
}

/// Strict membership in region `r`: inside the admissible open region,
/// strictly below the segment line, with `s` strictly inside the endpoints'
/// horizontal span.
pub fn region_test(p: &PlanePoint, r: RegionId, var: &VarietyParams) -> bool {
    region_test_detail(p, r, var).is_ok()
}

/// Membership with a failure reason for diagnostics.
pub fn region_test_detail(p: &PlanePoint, r: RegionId, var: &VarietyParams) -> Result<()> {
    if !in_li_region(p, var) {
        return Err(Error::OutsideRegion("below Li boundary".into()));
    }
    let (a, b) = region_endpoints(r, var);
    if p.s <= a.s || p.s >= b.s {
        return Err(Error::OutsideRegion(format!(
            "s outside the open span ({}, {}) of region {}",
            format_rational(&a.s),
            format_rational(&b.s),
            r
        )));
    }
    if p.q >= region_line_value(&p.s, r, var) {
        return Err(Error::OutsideRegion(format!(
            "on or above the region-{r} segment"
        )));
    }
    Ok(())
}

/// Exact tilt slope of a class at `p`: `(ch2 - q rk) / (c1 - s rk)` (the
/// degree factors cancel). The denominator must be non-negative, i.e. the
/// class, possibly after a shift, is in heart orientation.
pub fn slope(p: &PlanePoint, v: &NumChern) -> Result<Slope> {
    let num = &v.ch2 - &p.q * &v.rk;
    let den = &v.c1 - &p.s * &v.rk;
    match den.cmp(&Rational::zero()) {
        Ordering::Less => Err(Error::NegativeDenominator),
        Ordering::Equal => {
            if num.is_zero() {
                Err(Error::ZeroOverZero)
            } else {
                Ok(Slope::Infinite)
            }
        }
        Ordering::Greater => Ok(Slope::Finite(num / den)),
    }
}

/// Result of sorting classes by slope: the ascending permutation plus any
/// tied index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeOrdering {
    pub ascending: Vec<usize>,
    pub ties: Vec<(usize, usize)>,
}

/// Sorts indices of `vs` by slope at `p`, ascending, with exact comparisons.
pub fn slope_order(p: &PlanePoint, vs: &[NumChern]) -> Result<SlopeOrdering> {
    let slopes: Result<Vec<Slope>> = vs.iter().map(|v| slope(p, v)).collect();
    let slopes = slopes?;
    let mut ascending: Vec<usize> = (0..vs.len()).collect();
    ascending.sort_by(|&i, &j| slopes[i].cmp(&slopes[j]));
    let mut ties = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if slopes[i] == slopes[j] {
                ties.push((i, j));
            }
        }
    }
    Ok(SlopeOrdering { ascending, ties })
}

/// The admissible window `[lo, hi)` for the second-tilt slope in region `r`:
/// `lo` is the slope of the shifted low object, `hi` that of the high object.
pub fn mu_window(p: &PlanePoint, r: RegionId, var: &VarietyParams) -> Result<(Rational, Rational)> {
    region_test_detail(p, r, var)?;
    let (low, high) = window_classes(r, var)?;
    let lo = match slope(p, &low)? {
        Slope::Finite(r) => r,
        Slope::Infinite => return Err(Error::ZeroOverZero),
    };
    let hi = match slope(p, &high)? {
        Slope::Finite(r) => r,
        Slope::Infinite => return Err(Error::ZeroOverZero),
    };
    Ok((lo, hi))
}

/// Checks a full stability parameter: region membership plus, when a
/// second-tilt slope is present, membership in the `[lo, hi)` window.
pub fn validate_param(param: &StabilityParam, r: RegionId, var: &VarietyParams) -> Result<()> {
    region_test_detail(&param.point, r, var)?;
    if let Some(mu) = &param.mu {
        let (lo, hi) = mu_window(&param.point, r, var)?;
        let ok = match mu {
            Slope::Finite(m) => *m >= lo && *m < hi,
            Slope::Infinite => false,
        };
        if !ok {
            return Err(Error::OutsideRegion(format!(
                "mu = {mu} outside the window [{}, {})",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
    }
    Ok(())
}

/// Intersections of the line through `p` and the reduced point of `v` with
/// the parabola `q = s^2/2`, as exact surds. The first endpoint is the one
/// on the side of `v`, the second on the opposite side.
pub fn wall_endpoints(p: &PlanePoint, v: &NumChern) -> Result<(QuadraticSurd, QuadraticSurd)> {
    let (gradient, toward_positive) = match v.reduced_point()? {
        ReducedPoint::Affine(rp) => {
            if rp.s == p.s {
                return Err(Error::VerticalLine);
            }
            let m = (&rp.q - &p.q) / (&rp.s - &p.s);
            (m, rp.s > p.s)
        }
        ReducedPoint::Direction { c1, ch2 } => {
            if c1.is_zero() {
                return Err(Error::VerticalLine);
            }
            // normalize the projective direction so c1 > 0
            let m = &ch2 / &c1;
            (m, c1.is_positive())
        }
    };
    // q = m (s - s0) + q0 meets q = s^2/2 at s = m +- sqrt(m^2 - 2 m s0 + 2 q0)
    let disc = &gradient * &gradient - rat_int(2) * &gradient * &p.s + rat_int(2) * &p.q;
    if disc.is_negative() {
        return Err(Error::NoRealIntersection);
    }
    let root = QuadraticSurd::sqrt_of_rational(&disc).map_err(|_| Error::NoRealIntersection)?;
    let plus = root.add_rational(&gradient);
    let minus = root.neg().add_rational(&gradient);
    if toward_positive {
        Ok((plus, minus))
    } else {
        Ok((minus, plus))
    }
}

/// Coefficients `(1/2, -m, m*s0 - q0)` of the wall quadratic in `s`, for
/// residual checks against the endpoints.
pub fn wall_quadratic(p: &PlanePoint, v: &NumChern) -> Result<(Rational, Rational, Rational)> {
    let gradient = match v.reduced_point()? {
        ReducedPoint::Affine(rp) => {
            if rp.s == p.s {
                return Err(Error::VerticalLine);
            }
            (&rp.q - &p.q) / (&rp.s - &p.s)
        }
        ReducedPoint::Direction { c1, ch2 } => {
            if c1.is_zero() {
                return Err(Error::VerticalLine);
            }
            &ch2 / &c1
        }
    };
    let constant = &gradient * &p.s - &p.q;
    Ok((rat(1, 2), -gradient, constant))
}

/// Evaluates `a x^2 + b x + c` at a surd exactly.
pub fn eval_quadratic_at_surd(
    coeffs: &(Rational, Rational, Rational),
    x: &QuadraticSurd,
) -> QuadraticSurd {
    let (a, b, c) = coeffs;
    x.square()
        .scale(a)
        .add(&x.scale(b))
        .expect("same radicand")
        .add(&QuadraticSurd::from_rational(c.clone()))
        .expect("same radicand")
}
