//! Deterministic SVG emission of the plane diagrams: the parabola geometry,
//! the admissible-region boundary, the per-component regions, wall pictures
//! and slope comparisons.
//!
//! Every geometric anchor (curve coefficient, marked point, wall endpoint) is
//! computed exactly and converted to floating point only when written out;
//! the same spec always produces byte-identical output.

use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::chern::{NumChern, ReducedPoint};
use crate::exact::{rat, rat_int, rational_to_f64, Rational};
use crate::tiltplane::{
    li_tangency_offset, rank2_reduced_q, region_endpoints, PlanePoint, RegionId,
};
use crate::variety::VarietyParams;
use crate::{Error, Result};

/// Rational bounding box of the drawing window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatWindow {
    pub s_min: Rational,
    pub s_max: Rational,
    pub q_min: Rational,
    pub q_max: Rational,
}

impl RatWindow {
    pub fn new(s_min: Rational, s_max: Rational, q_min: Rational, q_max: Rational) -> Self {
        RatWindow {
            s_min,
            s_max,
            q_min,
            q_max,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.s_min >= self.s_max || self.q_min >= self.q_max
    }
}

/// What a figure shows.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum FigureKind {
    /// The admissible-region boundary: tangent pieces and parabola pieces.
    LiBoundary,
    /// The three per-component regions with their segments and marked points.
    Regions,
    /// The line through a parameter point and a class, with its two
    /// parabola intersections.
    Wall { p: PlanePoint, class: NumChern },
    /// Slope-comparison picture: lines from a parameter point to the reduced
    /// points of several classes.
    SlopeCompare {
        p: PlanePoint,
        classes: Vec<NumChern>,
    },
}

#[derive(Clone, Debug)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub window: RatWindow,
    pub width_px: u32,
    pub height_px: u32,
}

/// Affine map from plane coordinates to pixel coordinates (y flipped).
#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    s_min: f64,
    s_span: f64,
    q_min: f64,
    q_span: f64,
    w: f64,
    h: f64,
}

impl Viewport {
    pub fn new(spec: &FigureSpec) -> Self {
        Viewport {
            s_min: rational_to_f64(&spec.window.s_min),
            s_span: rational_to_f64(&spec.window.s_max) - rational_to_f64(&spec.window.s_min),
            q_min: rational_to_f64(&spec.window.q_min),
            q_span: rational_to_f64(&spec.window.q_max) - rational_to_f64(&spec.window.q_min),
            w: spec.width_px as f64,
            h: spec.height_px as f64,
        }
    }

    pub fn to_px(&self, s: f64, q: f64) -> (f64, f64) {
        (
            (s - self.s_min) / self.s_span * self.w,
            self.h - (q - self.q_min) / self.q_span * self.h,
        )
    }

    pub fn from_px(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.s_min + x / self.w * self.s_span,
            self.q_min + (self.h - y) / self.h * self.q_span,
        )
    }
}

/// An exactly-placed marked point, already pushed through to `f64`.
#[derive(Clone, Debug)]
pub struct Anchor {
    pub label: String,
    pub s: f64,
    pub q: f64,
    pub color: &'static str,
}

const BLACK: &str = "#000000";
const GRAY: &str = "#999999";
const RED: &str = "#cc0000";
const BLUE: &str = "#0044cc";
const LINE_COLORS: [&str; 4] = ["#0044cc", "#cc0000", "#007700", "#cc6600"];

fn fmt_px(x: f64) -> String {
    format!("{x:.9}")
}

fn polyline(out: &mut String, vp: &Viewport, pts: &[(f64, f64)], stroke: &str, dashed: bool) {
    if pts.len() < 2 {
        return;
    }
    let dash = if dashed {
        " stroke-dasharray=\"6 4\""
    } else {
        ""
    };
    let _ = write!(
        out,
        "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash} points=\""
    );
    for (i, (s, q)) in pts.iter().enumerate() {
        let (x, y) = vp.to_px(*s, *q);
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", fmt_px(x), fmt_px(y));
    }
    out.push_str("\"/>\n");
}

fn segment(out: &mut String, vp: &Viewport, a: (f64, f64), b: (f64, f64), stroke: &str) {
    polyline(out, vp, &[a, b], stroke, false);
}

/// Samples `q = s^2/2 + shift` at rational abscissas across `[lo, hi]`,
/// 256 points per unit of `s` and at least 200 overall.
fn sample_parabola_exact(lo: &Rational, hi: &Rational, shift: &Rational) -> Vec<(f64, f64)> {
    let span = hi - lo;
    if !span.is_positive() {
        return Vec::new();
    }
    let n = ((&span * rat_int(256))
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(200))
    .max(200);
    let mut pts = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let s = lo + &span * rat_int(i) / rat_int(n);
        let q = &s * &s / rat_int(2) + shift;
        pts.push((rational_to_f64(&s), rational_to_f64(&q)));
    }
    pts
}

/// The same parabola sampled in `f64`, for pieces whose endpoints are surds.
fn sample_parabola_f64(lo: f64, hi: f64, shift: f64) -> Vec<(f64, f64)> {
    if hi <= lo {
        return Vec::new();
    }
    let n = (((hi - lo) * 256.0).ceil() as i64).max(64);
    (0..=n)
        .map(|i| {
            let s = lo + (hi - lo) * (i as f64) / (n as f64);
            (s, s * s / 2.0 + shift)
        })
        .collect()
}

fn axes(out: &mut String, vp: &Viewport, window: &RatWindow) {
    let s_lo = rational_to_f64(&window.s_min);
    let s_hi = rational_to_f64(&window.s_max);
    let q_lo = rational_to_f64(&window.q_min);
    let q_hi = rational_to_f64(&window.q_max);
    if q_lo < 0.0 && q_hi > 0.0 {
        segment(out, vp, (s_lo, 0.0), (s_hi, 0.0), GRAY);
    }
    if s_lo < 0.0 && s_hi > 0.0 {
        segment(out, vp, (0.0, q_lo), (0.0, q_hi), GRAY);
    }
}

fn draw_anchor(out: &mut String, vp: &Viewport, a: &Anchor) {
    let (x, y) = vp.to_px(a.s, a.q);
    let _ = writeln!(
        out,
        "<circle class=\"anchor\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>",
        fmt_px(x),
        fmt_px(y),
        a.color
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\" fill=\"{}\">{}</text>",
        fmt_px(x + 5.0),
        fmt_px(y - 5.0),
        a.color,
        a.label
    );
}

/// Red boundary pieces of the admissible region across the window: tangent
/// pieces around each integer abscissa and lower-parabola pieces between.
fn draw_li_boundary(out: &mut String, vp: &Viewport, window: &RatWindow, var: &VarietyParams) {
    let t = li_tangency_offset(var).to_f64();
    let shift = rational_to_f64(&rat(-3, 4 * var.degree()));
    let s_lo = rational_to_f64(&window.s_min);
    let s_hi = rational_to_f64(&window.s_max);
    let k_lo = s_lo.floor() as i64 - 1;
    let k_hi = s_hi.ceil() as i64 + 1;
    for k in k_lo..=k_hi {
        let kf = k as f64;
        // tangent line piece q = k s - k^2/2 on [k - t, k + t]
        let a = (kf - t).max(s_lo);
        let b = (kf + t).min(s_hi);
        if a < b {
            segment(
                out,
                vp,
                (a, kf * a - kf * kf / 2.0),
                (b, kf * b - kf * kf / 2.0),
                RED,
            );
        }
        // lower-parabola piece on [k + t, k + 1 - t]
        let a = (kf + t).max(s_lo);
        let b = (kf + 1.0 - t).min(s_hi);
        polyline(out, vp, &sample_parabola_f64(a, b, shift), RED, false);
    }
}

fn line_bundle_anchors(window: &RatWindow, label_all: bool) -> Vec<Anchor> {
    let mut anchors = Vec::new();
    let k_lo = rational_to_f64(&window.s_min).ceil() as i64;
    let k_hi = rational_to_f64(&window.s_max).floor() as i64;
    for k in k_lo..=k_hi {
        let q = rat(k * k, 2);
        let label = match k {
            0 => "O".to_string(),
            _ => format!("O({k})"),
        };
        if label_all || (-1..=1).contains(&k) {
            anchors.push(Anchor {
                label,
                s: k as f64,
                q: rational_to_f64(&q),
                color: BLACK,
            });
        }
    }
    anchors
}

fn rank2_labels(var: &VarietyParams) -> (&'static str, &'static str) {
    if var.is_gushel_mukai() {
        ("U", "Udual")
    } else {
        ("E2", "E2dual")
    }
}

/// Exactly-placed marked points of a figure, pushed to `f64` at the end.
pub fn anchors(spec: &FigureSpec, var: &VarietyParams) -> Result<Vec<Anchor>> {
    let mut anchors = Vec::new();
    match &spec.kind {
        FigureKind::LiBoundary => {
            anchors.extend(line_bundle_anchors(&spec.window, true));
        }
        FigureKind::Regions => {
            anchors.extend(line_bundle_anchors(&spec.window, false));
            let qe = rank2_reduced_q(var);
            let (lab, lab_dual) = rank2_labels(var);
            anchors.push(Anchor {
                label: lab.into(),
                s: -0.5,
                q: rational_to_f64(&qe),
                color: BLACK,
            });
            anchors.push(Anchor {
                label: lab_dual.into(),
                s: 0.5,
                q: rational_to_f64(&qe),
                color: BLACK,
            });
        }
        FigureKind::Wall { p, class } => {
            anchors.push(Anchor {
                label: "p".into(),
                s: rational_to_f64(&p.s),
                q: rational_to_f64(&p.q),
                color: BLUE,
            });
            if let ReducedPoint::Affine(rp) = class.reduced_point()? {
                anchors.push(Anchor {
                    label: "v".into(),
                    s: rational_to_f64(&rp.s),
                    q: rational_to_f64(&rp.q),
                    color: BLACK,
                });
            }
            let (bminus, bplus) = crate::tiltplane::wall_endpoints(p, class)?;
            for (label, root) in [("B-", &bminus), ("B+", &bplus)] {
                let q = root.square().scale(&rat(1, 2));
                anchors.push(Anchor {
                    label: label.into(),
                    s: root.to_f64(),
                    q: q.to_f64(),
                    color: RED,
                });
            }
        }
        FigureKind::SlopeCompare { p, classes } => {
            anchors.push(Anchor {
                label: "p".into(),
                s: rational_to_f64(&p.s),
                q: rational_to_f64(&p.q),
                color: BLUE,
            });
            for (i, class) in classes.iter().enumerate() {
                if let ReducedPoint::Affine(rp) = class.reduced_point()? {
                    anchors.push(Anchor {
                        label: format!("v{}", i + 1),
                        s: rational_to_f64(&rp.s),
                        q: rational_to_f64(&rp.q),
                        color: LINE_COLORS[i % LINE_COLORS.len()],
                    });
                }
            }
        }
    }
    Ok(anchors)
}

/// Renders the figure as a deterministic SVG document.
pub fn render(spec: &FigureSpec, var: &VarietyParams) -> Result<String> {
    if spec.window.is_empty() || spec.width_px == 0 || spec.height_px == 0 {
        return Err(Error::EmptyWindow);
    }
    let vp = Viewport::new(spec);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = spec.width_px,
        h = spec.height_px
    );
    let _ = writeln!(
        out,
        "<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        spec.width_px, spec.height_px
    );
    axes(&mut out, &vp, &spec.window);

    // the parabola q = s^2/2 is on every figure
    let upper = sample_parabola_exact(&spec.window.s_min, &spec.window.s_max, &rat_int(0));
    polyline(&mut out, &vp, &upper, BLACK, false);

    match &spec.kind {
        FigureKind::LiBoundary | FigureKind::Regions => {
            // the shifted parabola, dashed, plus the red boundary pieces
            let shift = rat(-3, 4 * var.degree());
            let lower = sample_parabola_exact(&spec.window.s_min, &spec.window.s_max, &shift);
            polyline(&mut out, &vp, &lower, GRAY, true);
            draw_li_boundary(&mut out, &vp, &spec.window, var);
            if matches!(spec.kind, FigureKind::Regions) {
                for r in [RegionId::One, RegionId::Two, RegionId::Three] {
                    let (a, b) = region_endpoints(r, var);
                    segment(
                        &mut out,
                        &vp,
                        (rational_to_f64(&a.s), rational_to_f64(&a.q)),
                        (rational_to_f64(&b.s), rational_to_f64(&b.q)),
                        RED,
                    );
                }
            }
        }
        FigureKind::Wall { p, class } => {
            let (half, neg_m, c) = crate::tiltplane::wall_quadratic(p, class)?;
            debug_assert_eq!(half, rat(1, 2));
            let m = -neg_m;
            // q = m (s - s0) + q0 = m s - c across the window
            let line_q = |s: &Rational| &m * s - &c;
            segment(
                &mut out,
                &vp,
                (
                    rational_to_f64(&spec.window.s_min),
                    rational_to_f64(&line_q(&spec.window.s_min)),
                ),
                (
                    rational_to_f64(&spec.window.s_max),
                    rational_to_f64(&line_q(&spec.window.s_max)),
                ),
                BLUE,
            );
        }
        FigureKind::SlopeCompare { p, classes } => {
            for (i, class) in classes.iter().enumerate() {
                let color = LINE_COLORS[i % LINE_COLORS.len()];
                let gradient = match class.reduced_point()? {
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
                let line_q = |s: &Rational| &p.q + &gradient * (s - &p.s);
                segment(
                    &mut out,
                    &vp,
                    (
                        rational_to_f64(&spec.window.s_min),
                        rational_to_f64(&line_q(&spec.window.s_min)),
                    ),
                    (
                        rational_to_f64(&spec.window.s_max),
                        rational_to_f64(&line_q(&spec.window.s_max)),
                    ),
                    color,
                );
            }
        }
    }

    for anchor in anchors(spec, var)? {
        draw_anchor(&mut out, &vp, &anchor);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
