//! The rank-2 numerical lattices of the three component embeddings, mutation
//! maps, the numerical Serre action, lattice membership, and the
//! uniqueness-criterion scans.

use crate::chern::{curve_ideal_class, euler, NumChern};
use crate::exact::{format_rational, rat, rat_int, Mat2, Rational};
use crate::tiltplane::RegionId;
use crate::variety::{catalog, ObjectName, VarietyParams};
use crate::{Error, Result};

/// A rank-2 lattice with a distinguished basis and the restricted pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuLattice {
    pub index: RegionId,
    pub basis: (NumChern, NumChern),
    pub gram: Mat2,
}

/// The distinguished basis vectors of the component lattice, without the
/// Gram matrix (usable when third characters are unavailable, except for the
/// index-2 basis which is produced by a mutation and needs the pairing).
pub fn basis_vectors(i: RegionId, var: &VarietyParams) -> Result<(NumChern, NumChern)> {
    let d = var.degree();
    let (b1, b2) = if var.is_gushel_mukai() {
        (
            NumChern::new(rat_int(1), rat_int(0), rat(-3, 10), Some(rat(1, 20))),
            NumChern::new(rat_int(0), rat_int(1), rat(-3, 5), Some(rat(1, 60))),
        )
    } else {
        let tails = var.basis_ch3();
        (
            NumChern::new(
                rat_int(1),
                rat_int(0),
                rat(-(d + 2), 4 * d),
                tails.map(|t| t.0.clone()),
            ),
            NumChern::new(
                rat_int(0),
                rat_int(1),
                rat(-(3 * d - 6), 4 * d),
                tails.map(|t| t.1.clone()),
            ),
        )
    };
    match i {
        RegionId::One => Ok((b1, b2)),
        RegionId::Three => Ok((b1.twist(1), b2.twist(1))),
        RegionId::Two => {
            let (d1, d2) = (b1.twist(1), b2.twist(1));
            Ok((mutate_o(&d1, var)?, mutate_o(&d2, var)?))
        }
    }
}

/// The lattice for component `i`, with its Gram matrix of pairings.
pub fn ku_basis(i: RegionId, var: &VarietyParams) -> Result<KuLattice> {
    let (e1, e2) = basis_vectors(i, var)?;
    let gram = Mat2::new([
        [euler(&e1, &e1, var)?, euler(&e1, &e2, var)?],
        [euler(&e2, &e1, var)?, euler(&e2, &e2, var)?],
    ]);
    Ok(KuLattice {
        index: i,
        basis: (e1, e2),
        gram,
    })
}

/// Left mutation past the structure sheaf: `v - chi(O, v) [O]`.
pub fn mutate_o(v: &NumChern, var: &VarietyParams) -> Result<NumChern> {
    let o = NumChern::line_bundle(0);
    let chi = euler(&o, v, var)?;
    Ok(v - &o.scale(&chi))
}

/// Left mutation past the rank-2 bundle: `v - chi(U, v) [U]`. Needs the full
/// third character of the bundle, so only the genus-6 case is wired.
pub fn mutate_u(v: &NumChern, var: &VarietyParams) -> Result<NumChern> {
    if !var.is_gushel_mukai() {
        return Err(Error::UnsupportedGenus(var.genus()));
    }
    let u = catalog(var, &ObjectName::TautSub)?;
    let chi = euler(&u, v, var)?;
    Ok(v - &u.scale(&chi))
}

/// Numerical shadow of the inverse Serre functor on the index-3 lattice:
/// the two mutations, the twist by `H`, and the sign of the triple shift.
/// Input and output must lie in the lattice span.
pub fn serre_inverse_numeric(v: &NumChern, var: &VarietyParams) -> Result<NumChern> {
    let lattice = ku_basis(RegionId::Three, var)?;
    lattice_coords(v, &lattice)?;
    let image = -&mutate_u(&mutate_o(v, var)?, var)?.twist(1);
    lattice_coords(&image, &lattice)?;
    Ok(image)
}

/// Exact coordinates of `v` in the lattice basis, verified on every
/// component that is known on both sides.
pub fn lattice_coords(v: &NumChern, lattice: &KuLattice) -> Result<(Rational, Rational)> {
    let (e1, e2) = &lattice.basis;
    let candidates = [
        [(&e1.rk, &e2.rk), (&e1.c1, &e2.c1)],
        [(&e1.rk, &e2.rk), (&e1.ch2, &e2.ch2)],
        [(&e1.c1, &e2.c1), (&e1.ch2, &e2.ch2)],
    ];
    let rhs_rows = [[&v.rk, &v.c1], [&v.rk, &v.ch2], [&v.c1, &v.ch2]];
    let mut coords = None;
    for (rows, rhs) in candidates.iter().zip(rhs_rows.iter()) {
        let m = Mat2::new([
            [rows[0].0.clone(), rows[0].1.clone()],
            [rows[1].0.clone(), rows[1].1.clone()],
        ]);
        if let Ok(sol) = m.solve(&(rhs[0].clone(), rhs[1].clone())) {
            coords = Some(sol);
            break;
        }
    }
    let (a, b) = coords.ok_or_else(|| Error::NotInLattice("degenerate basis".into()))?;
    let rebuilt = &e1.scale(&a) + &e2.scale(&b);
    let mismatch = |what: &str| {
        Error::NotInLattice(format!(
            "{what} mismatch for coordinates ({}, {})",
            format_rational(&a),
            format_rational(&b)
        ))
    };
    if rebuilt.rk != v.rk {
        return Err(mismatch("rk"));
    }
    if rebuilt.c1 != v.c1 {
        return Err(mismatch("c1"));
    }
    if rebuilt.ch2 != v.ch2 {
        return Err(mismatch("ch2"));
    }
    if let (Some(x), Some(y)) = (&rebuilt.ch3, &v.ch3) {
        if x != y {
            return Err(mismatch("ch3"));
        }
    }
    Ok((a, b))
}

/// Whether both coordinates are integers.
pub fn coords_are_integral(coords: &(Rational, Rational)) -> bool {
    coords.0.is_integer() && coords.1.is_integer()
}

/// Value of the lattice quadratic form `chi(v, v)` at integer coordinates.
fn form_value(gram: &Mat2, a: i64, b: i64) -> Rational {
    let (a, b) = (rat_int(a), rat_int(b));
    gram.entry(0, 0) * &a * &a
        + (gram.entry(0, 1) + gram.entry(1, 0)) * &a * &b
        + gram.entry(1, 1) * &b * &b
}

/// Maximum of `chi(v, v)` over nonzero integer vectors with coordinates
/// bounded by `radius`, along with every attaining coordinate pair.
pub fn ell_max_attained(lattice: &KuLattice, radius: u32) -> (Rational, Vec<(i64, i64)>) {
    #[cfg(feature = "parallel")]
    {
        ell_max_attained_par(lattice, radius)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ell_max_attained_seq(lattice, radius)
    }
}

/// Sequential scan; always available as the fallback and for benchmarking.
pub fn ell_max_attained_seq(lattice: &KuLattice, radius: u32) -> (Rational, Vec<(i64, i64)>) {
    let r = radius as i64;
    let mut best: Option<(Rational, Vec<(i64, i64)>)> = None;
    for a in -r..=r {
        scan_row(&lattice.gram, a, r, &mut best);
    }
    best.expect("radius >= 1 visits a nonzero vector")
}

#[cfg(feature = "parallel")]
pub fn ell_max_attained_par(lattice: &KuLattice, radius: u32) -> (Rational, Vec<(i64, i64)>) {
    use rayon::prelude::*;
    let r = radius as i64;
    (-r..=r)
        .into_par_iter()
        .fold(
            || None,
            |mut best, a| {
                scan_row(&lattice.gram, a, r, &mut best);
                best
            },
        )
        .reduce(|| None, merge_best)
        .expect("radius >= 1 visits a nonzero vector")
}

fn scan_row(gram: &Mat2, a: i64, r: i64, best: &mut Option<(Rational, Vec<(i64, i64)>)>) {
    for b in -r..=r {
        if a == 0 && b == 0 {
            continue;
        }
        let value = form_value(gram, a, b);
        match best {
            None => *best = Some((value, vec![(a, b)])),
            Some((cur, witnesses)) => {
                if value > *cur {
                    *cur = value;
                    witnesses.clear();
                    witnesses.push((a, b));
                } else if value == *cur {
                    witnesses.push((a, b));
                }
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn merge_best(
    x: Option<(Rational, Vec<(i64, i64)>)>,
    y: Option<(Rational, Vec<(i64, i64)>)>,
) -> Option<(Rational, Vec<(i64, i64)>)> {
    match (x, y) {
        (None, y) => y,
        (x, None) => x,
        (Some((vx, mut wx)), Some((vy, wy))) => {
            if vx > vy {
                Some((vx, wx))
            } else if vy > vx {
                Some((vy, wy))
            } else {
                wx.extend(wy);
                Some((vx, wx))
            }
        }
    }
}

/// Maximum of the quadratic form over the coordinate box.
pub fn ell_max(lattice: &KuLattice, radius: u32) -> Rational {
    ell_max_attained(lattice, radius).0
}

/// One line of the pairing-consistency report.
#[derive(Clone, Debug)]
pub struct ChiEntry {
    pub label: String,
    pub value: String,
    pub expected: String,
    pub pass: bool,
    pub note: String,
}

/// Cross-checks of the pairing values underlying the uniqueness criterion:
/// the self-pairings of the mutated-conic and twisted-cubic classes, their
/// lattice coordinates, and the numerical component membership of the cubic.
#[derive(Clone, Debug)]
pub struct ChiConsistencyReport {
    pub entries: Vec<ChiEntry>,
}

impl ChiConsistencyReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

pub fn chi_consistency_report(var: &VarietyParams) -> Result<ChiConsistencyReport> {
    if !var.is_gushel_mukai() {
        return Err(Error::UnsupportedGenus(var.genus()));
    }
    let ku1 = ku_basis(RegionId::One, var)?;
    let o = NumChern::line_bundle(0);
    let u = catalog(var, &ObjectName::TautSub)?;
    // mutated generic-conic ideal and twisted-cubic ideal classes
    let q1 = mutate_u(&curve_ideal_class(2, 0, var)?, var)?;
    let q2 = curve_ideal_class(3, 0, var)?;

    let mut entries = Vec::new();
    let mut check = |label: &str, value: Rational, expected: Rational, note: &str| {
        entries.push(ChiEntry {
            label: label.to_string(),
            value: format_rational(&value),
            expected: format_rational(&expected),
            pass: value == expected,
            note: note.to_string(),
        });
    };
    check(
        "chi(Q1,Q1)",
        euler(&q1, &q1, var)?,
        rat_int(-1),
        "consistent with hom counts 1 - 2",
    );
    check(
        "chi(Q2,Q2)",
        euler(&q2, &q2, var)?,
        rat_int(-2),
        "consistent with hom counts 1 - 3",
    );
    check(
        "chi(O,Q2)",
        euler(&o, &q2, var)?,
        rat_int(0),
        "numerical component membership",
    );
    check(
        "chi(U,Q2)",
        euler(&u, &q2, var)?,
        rat_int(0),
        "numerical component membership",
    );

    let q2_coords = lattice_coords(&q2, &ku1)?;
    entries.push(ChiEntry {
        label: "[Q2] in basis".into(),
        value: format!(
            "({}, {})",
            format_rational(&q2_coords.0),
            format_rational(&q2_coords.1)
        ),
        expected: "(1, 0)".into(),
        pass: q2_coords == (rat_int(1), rat_int(0)),
        note: "the twisted-cubic ideal is the first basis vector".into(),
    });
    let q1_coords = lattice_coords(&q1, &ku1)?;
    entries.push(ChiEntry {
        label: "[Q1] in basis".into(),
        value: format!(
            "({}, {})",
            format_rational(&q1_coords.0),
            format_rational(&q1_coords.1)
        ),
        expected: "(-1, 1)".into(),
        pass: q1_coords == (rat_int(-1), rat_int(1)),
        note: "the mutated conic ideal is -e1 + e2".into(),
    });
    Ok(ChiConsistencyReport { entries })
}
