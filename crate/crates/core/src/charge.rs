//! Central charges as exact linear maps: the reparametrized and classical
//! tilt charges on classes, charge matrices on lattice bases, rotation by the
//! inverse of the tilting unit, and orientation determinants.

use num_traits::{Signed, Zero};

use crate::chern::NumChern;
use crate::exact::{GaussRational, Mat2, Rational};
use crate::tiltplane::PlanePoint;
use crate::variety::VarietyParams;
use crate::{Error, Result};

/// Which parametrization a charge uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChargeKind {
    /// Reparametrized tilt charge at a plane point `(s, q)`.
    Sq(PlanePoint),
    /// Classical tilt charge at `(beta, alpha^2)`; only `alpha^2` enters.
    Ab { beta: Rational, alpha_sq: Rational },
}

/// A charge specification: the parametrization plus an optional rotation.
///
/// When `rotation_mu = Some(mu)`, values are multiplied by the conjugate of
/// the unnormalized unit `u = -mu + i`. This equals `|u|^2` times the
/// normalized `(1/u)`-rotation; the positive scalar is irrelevant to every
/// orientation, zero-set and sign use, and keeping it rational avoids square
/// roots in the core arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeSpec {
    pub kind: ChargeKind,
    pub rotation_mu: Option<Rational>,
}

impl ChargeSpec {
    pub fn sq(p: PlanePoint) -> Self {
        ChargeSpec {
            kind: ChargeKind::Sq(p),
            rotation_mu: None,
        }
    }

    pub fn ab(beta: Rational, alpha_sq: Rational) -> Result<Self> {
        if !alpha_sq.is_positive() {
            return Err(Error::NonPositiveAlphaSq);
        }
        Ok(ChargeSpec {
            kind: ChargeKind::Ab { beta, alpha_sq },
            rotation_mu: None,
        })
    }

    pub fn with_rotation(mut self, mu: Rational) -> Self {
        self.rotation_mu = Some(mu);
        self
    }
}

/// Exact value of the central charge on a class.
pub fn central_charge(spec: &ChargeSpec, v: &NumChern, var: &VarietyParams) -> GaussRational {
    let d = var.degree_rational();
    let unrotated = match &spec.kind {
        ChargeKind::Sq(p) => {
            GaussRational::new(-(&d * (&v.ch2 - &p.q * &v.rk)), &d * (&v.c1 - &p.s * &v.rk))
        }
        ChargeKind::Ab { beta, alpha_sq } => {
            let tw = v.twisted_char(beta);
            GaussRational::new(
                &d * (alpha_sq * &tw.rk / crate::exact::rat_int(2) - &tw.ch2),
                &d * &tw.c1,
            )
        }
    };
    match &spec.rotation_mu {
        None => unrotated,
        Some(mu) => {
            let u_conj = GaussRational::new(-mu.clone(), crate::exact::rat_int(-1));
            &u_conj * &unrotated
        }
    }
}

/// Tag recording which ordered basis a charge matrix lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    B,
    C,
    D,
    Custom,
}

/// 2×2 matrix whose columns are `(Re, Im)` of a charge on an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeMatrix {
    pub m: Mat2,
    pub basis_tag: BasisTag,
}

impl ChargeMatrix {
    pub fn det(&self) -> Rational {
        self.m.det()
    }
}

/// Charge matrix of `spec` on the ordered basis `(v1, v2)`.
pub fn charge_matrix(
    spec: &ChargeSpec,
    basis: (&NumChern, &NumChern),
    var: &VarietyParams,
    tag: BasisTag,
) -> ChargeMatrix {
    let z1 = central_charge(spec, basis.0, var);
    let z2 = central_charge(spec, basis.1, var);
    ChargeMatrix {
        m: Mat2::from_columns(&z1, &z2),
        basis_tag: tag,
    }
}

/// Sign of the orientation determinant of a charge matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Degenerate,
    Negative,
}

pub fn orientation(cm: &ChargeMatrix) -> Orientation {
    let det = cm.det();
    if det.is_positive() {
        Orientation::Positive
    } else if det.is_zero() {
        Orientation::Degenerate
    } else {
        Orientation::Negative
    }
}

/// The classical discriminant-type form `(d c1)^2 - 2 (d rk)(d ch2)`,
/// exposed as a diagnostic predicate (`>= 0` on semistable classes).
pub fn bogomolov_form(v: &NumChern, var: &VarietyParams) -> Rational {
    let d = var.degree_rational();
    let a = &d * &v.c1;
    let b = &d * &v.rk;
    let c = &d * &v.ch2;
    &a * &a - crate::exact::rat_int(2) * &b * &c
}
