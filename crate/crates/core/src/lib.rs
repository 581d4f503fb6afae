//! Exact-arithmetic toolkit for tilt stability on the Kuznetsov components of
//! even-genus prime Fano threefolds (the genus-6 Gushel–Mukai case is the
//! fully wired default).
//!
//! Everything geometric is computed over arbitrary-precision rationals, with
//! quadratic surds for the parabola intersections; floating point only appears
//! when figures are serialized to SVG. The main layers are:
//!
//! * [`exact`] — rationals, Gaussian rationals, 2×2 matrices, quadratic surds;
//! * [`variety`] — threefold configuration (genus, degree, Todd class) and the
//!   catalog of exceptional-bundle classes;
//! * [`chern`] — numerical Chern characters, twists, duals, the Euler pairing;
//! * [`tiltplane`] — the (s, q) half-plane: admissible regions, slopes,
//!   slope windows, wall endpoints;
//! * [`charge`] — central charges as exact linear maps and their orientation
//!   determinants;
//! * [`kulattice`] — the rank-2 lattices, mutations, the numerical Serre
//!   action and the uniqueness-criterion scans;
//! * [`orbit`] — the positive-determinant transforms relating charges and the
//!   composite Serre-invariance certificate;
//! * [`figures`] — deterministic SVG diagrams of the plane geometry.
//!
//! Grid scans (lattice scans, certificate grids) run on rayon when the
//! `parallel` feature is enabled (the default); sequential fallbacks are
//! always available as `*_seq` entry points.

pub mod charge;
pub mod chern;
pub mod exact;
pub mod figures;
pub mod grid;
pub mod kulattice;
pub mod orbit;
pub mod tiltplane;
pub mod variety;

mod error;

pub use charge::{
    central_charge, charge_matrix, orientation, ChargeMatrix, ChargeSpec, Orientation,
};
pub use chern::{euler, NumChern, ReducedPoint};
pub use error::{Error, Result};
pub use exact::{GaussRational, Mat2, QuadraticSurd, Rational};
pub use kulattice::KuLattice;
pub use orbit::{serre_certificate, solve_gl, GLPlusTransform, SerreCertificate};
pub use tiltplane::{PlanePoint, RegionId, Slope, StabilityParam};
pub use variety::VarietyParams;
