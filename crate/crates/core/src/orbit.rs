//! Positive-determinant linear algebra relating central charges: solving for
//! the matrix that conjugates one charge into another through a lattice map,
//! orientation certificates, and the composite Serre-invariance certificate.

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::charge::{charge_matrix, BasisTag, ChargeMatrix, ChargeSpec};
use crate::exact::{format_rational, rat, rat_int, Mat2, Rational};
use crate::kulattice::{basis_vectors, serre_inverse_numeric};
use crate::tiltplane::{validate_param, PlanePoint, RegionId, StabilityParam};
use crate::variety::VarietyParams;
use crate::{Error, Result};

/// A 2×2 rational matrix with positive determinant; the numerical shadow of
/// an orientation-preserving charge transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLPlusTransform {
    m: Mat2,
    det: Rational,
}

impl GLPlusTransform {
    /// Wraps a matrix, rejecting non-positive determinants.
    pub fn new(m: Mat2) -> Result<Self> {
        let det = m.det();
        if !det.is_positive() {
            return Err(Error::NotOrientationPreserving);
        }
        Ok(GLPlusTransform { m, det })
    }

    pub fn identity() -> Self {
        GLPlusTransform {
            m: Mat2::identity(),
            det: rat_int(1),
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn det(&self) -> &Rational {
        &self.det
    }

    /// Composition `self . rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &GLPlusTransform) -> GLPlusTransform {
        let m = self.m.mul(&rhs.m);
        let det = m.det();
        GLPlusTransform { m, det }
    }
}

fn mat2_strings(m: &Mat2) -> [[String; 2]; 2] {
    [
        [
            format_rational(m.entry(0, 0)),
            format_rational(m.entry(0, 1)),
        ],
        [
            format_rational(m.entry(1, 0)),
            format_rational(m.entry(1, 1)),
        ],
    ]
}

impl Serialize for GLPlusTransform {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GLPlusTransform", 2)?;
        s.serialize_field("m", &mat2_strings(&self.m))?;
        s.serialize_field("det", &format_rational(&self.det))?;
        s.end()
    }
}

/// Solves `zA = M^{-1} . zB . phi` for `M`, i.e. `M = zB . phi . zA^{-1}`,
/// requiring an orientation-preserving solution. `phi` is the matrix of the
/// lattice map from the source basis to the target basis.
pub fn solve_gl(za: &ChargeMatrix, zb: &ChargeMatrix, phi: &Mat2) -> Result<GLPlusTransform> {
    let za_inv = za.m.inverse().map_err(|_| Error::SingularCharge)?;
    let m = zb.m.mul(phi).mul(&za_inv);
    GLPlusTransform::new(m)
}

fn lattice_basis_tag(r: RegionId) -> BasisTag {
    match r {
        RegionId::One => BasisTag::B,
        RegionId::Two => BasisTag::C,
        RegionId::Three => BasisTag::D,
    }
}

fn region_charge_matrix(p: &PlanePoint, r: RegionId, var: &VarietyParams) -> Result<ChargeMatrix> {
    let basis = basis_vectors(r, var)?;
    Ok(charge_matrix(
        &ChargeSpec::sq(p.clone()),
        (&basis.0, &basis.1),
        var,
        lattice_basis_tag(r),
    ))
}

/// The transform relating the charges of two parameters of the same region,
/// on that region's lattice basis: `Z_A = M^{-1} Z_B`.
pub fn same_orbit_check(
    pa: &StabilityParam,
    pb: &StabilityParam,
    r: RegionId,
    var: &VarietyParams,
) -> Result<GLPlusTransform> {
    validate_param(pa, r, var)?;
    validate_param(pb, r, var)?;
    let za = region_charge_matrix(&pa.point, r, var)?;
    let zb = region_charge_matrix(&pb.point, r, var)?;
    solve_gl(&za, &zb, &Mat2::identity())
}

/// One audited step of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub description: String,
    pub transform: GLPlusTransform,
}

/// The composite Serre-invariance certificate: the mutation steps, the twist
/// step, the closure solve, their composite, and the lattice fixed-point
/// flag. Every stored transform has positive determinant by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreCertificate {
    pub steps: Vec<CertificateStep>,
    pub composite: GLPlusTransform,
    pub lattice_fixed: bool,
}

impl SerreCertificate {
    pub fn passes(&self) -> bool {
        self.lattice_fixed && self.steps.iter().all(|s| s.transform.det().is_positive())
    }
}

impl Serialize for SerreCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SerreCertificate", 4)?;
        s.serialize_field("steps", &self.steps)?;
        s.serialize_field("composite", &self.composite)?;
        s.serialize_field("lattice_fixed", &self.lattice_fixed)?;
        s.serialize_field("passes", &self.passes())?;
        s.end()
    }
}

fn step_context(step: &str, err: Error) -> Error {
    match err {
        Error::OutsideRegion(detail) => Error::OutsideRegion(format!("{step}: {detail}")),
        other => other,
    }
}

/// Runs the four audited solves certifying that the inverse Serre action
/// returns the index-3 charge to its own orbit:
///
/// 1. mutation past the structure sheaf, region 3 to region 2;
/// 2. mutation past the rank-2 bundle, region 2 to region 1;
/// 3. twist by `O(H)`, region 1 back to region 3 at `(s+1, q+s+1/2)`;
/// 4. closure solve inside region 3.
///
/// Every step must have positive determinant, and the lattice side must fix
/// the index-3 basis pointwise.
pub fn serre_certificate(
    p3: &StabilityParam,
    p2: &StabilityParam,
    p1: &StabilityParam,
    var: &VarietyParams,
) -> Result<SerreCertificate> {
    validate_param(p3, RegionId::Three, var).map_err(|e| step_context("p3 (region 3)", e))?;
    validate_param(p2, RegionId::Two, var).map_err(|e| step_context("p2 (region 2)", e))?;
    validate_param(p1, RegionId::One, var).map_err(|e| step_context("p1 (region 1)", e))?;

    let z3 = region_charge_matrix(&p3.point, RegionId::Three, var)?;
    let z2 = region_charge_matrix(&p2.point, RegionId::Two, var)?;
    let z1 = region_charge_matrix(&p1.point, RegionId::One, var)?;

    // the twisted point (s1 + 1, q1 + s1 + 1/2) lands in region 3
    let closure_point = PlanePoint::new(
        &p1.point.s + rat_int(1),
        &p1.point.q + &p1.point.s + rat(1, 2),
    );
    let closure_param = StabilityParam::new(closure_point.clone());
    validate_param(&closure_param, RegionId::Three, var)
        .map_err(|e| step_context("twist closure point (region 3)", e))?;
    let z3b = region_charge_matrix(&closure_point, RegionId::Three, var)?;

    // lattice maps in the chosen bases: mutation past O is the identity,
    // mutation past the rank-2 bundle is minus the identity, the twist is
    // the identity again
    let id = Mat2::identity();
    let minus_id = id.neg();

    let m1 = solve_gl(&z3, &z2, &id)?;
    let m2 = solve_gl(&z2, &z1, &minus_id)?;
    let m3 = solve_gl(&z1, &z3b, &id)?;
    let m4 = solve_gl(&z3b, &z3, &id)?;

    let composite = m4.compose(&m3).compose(&m2).compose(&m1);

    let (d1, d2) = basis_vectors(RegionId::Three, var)?;
    let lattice_fixed =
        serre_inverse_numeric(&d1, var)? == d1 && serre_inverse_numeric(&d2, var)? == d2;

    Ok(SerreCertificate {
        steps: vec![
            CertificateStep {
                description: "left mutation past O: region 3 -> region 2".into(),
                transform: m1,
            },
            CertificateStep {
                description: "left mutation past the rank-2 bundle: region 2 -> region 1".into(),
                transform: m2,
            },
            CertificateStep {
                description: "twist by O(H): region 1 -> region 3".into(),
                transform: m3,
            },
            CertificateStep {
                description: "orbit closure inside region 3".into(),
                transform: m4,
            },
        ],
        composite,
        lattice_fixed,
    })
}

/// Certificates for a batch of `(p3, p2, p1)` triples.
pub fn certificate_grid(
    triples: &[(StabilityParam, StabilityParam, StabilityParam)],
    var: &VarietyParams,
) -> Result<Vec<SerreCertificate>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        triples
            .par_iter()
            .map(|(p3, p2, p1)| serre_certificate(p3, p2, p1, var))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        certificate_grid_seq(triples, var)
    }
}

/// Sequential batch run; the fallback path and the benchmark baseline.
pub fn certificate_grid_seq(
    triples: &[(StabilityParam, StabilityParam, StabilityParam)],
    var: &VarietyParams,
) -> Result<Vec<SerreCertificate>> {
    triples
        .iter()
        .map(|(p3, p2, p1)| serre_certificate(p3, p2, p1, var))
        .collect()
}
