//! Numerical Chern-character algebra: twists, duals, shifts, twisted
//! characters, the Euler pairing, and curve-ideal classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{format_rational, parse_rational, rat_int, Rational};
use crate::tiltplane::PlanePoint;
use crate::variety::VarietyParams;
use crate::{Error, Result};

/// Rational 4-vector `(rk, c1, ch2, ch3)` in powers of the hyperplane class.
///
/// The canonical storage is the coefficient convention (`ch3` is the
/// coefficient of `H^3`); the integrated convention, where the last slot is
/// multiplied by the degree, is available as a display mode. `ch3` is optional
/// because several genus-g catalog classes are only known up to degree 2;
/// operations that genuinely need it reject classes with `ch3` unset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumChern {
    pub rk: Rational,
    pub c1: Rational,
    pub ch2: Rational,
    pub ch3: Option<Rational>,
}

impl NumChern {
    pub fn new(rk: Rational, c1: Rational, ch2: Rational, ch3: Option<Rational>) -> Self {
        NumChern { rk, c1, ch2, ch3 }
    }

    pub fn zero() -> Self {
        NumChern::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Some(Rational::zero()),
        )
    }

    /// `ch(O(kH)) = (1, k, k^2/2, k^3/6)`.
    pub fn line_bundle(k: i64) -> Self {
        let k = rat_int(k);
        NumChern {
            rk: rat_int(1),
            c1: k.clone(),
            ch2: &k * &k / rat_int(2),
            ch3: Some(&k * &k * &k / rat_int(6)),
        }
    }

    pub fn ch3_required(&self) -> Result<&Rational> {
        self.ch3.as_ref().ok_or(Error::MissingCh3)
    }

    /// Multiplication by `e^{tH}` for a rational `t`; the shared polynomial
    /// rule behind both `twist` and `twisted_char`.
    pub fn twist_rational(&self, t: &Rational) -> NumChern {
        let half = &(t * t) / rat_int(2);
        let sixth = &(t * t * t) / rat_int(6);
        NumChern {
            rk: self.rk.clone(),
            c1: &self.c1 + t * &self.rk,
            ch2: &self.ch2 + t * &self.c1 + &half * &self.rk,
            ch3: self
                .ch3
                .as_ref()
                .map(|c3| c3 + t * &self.ch2 + &half * &self.c1 + &sixth * &self.rk),
        }
    }

    /// `v * e^{kH}` for an integer `k`.
    pub fn twist(&self, k: i64) -> NumChern {
        self.twist_rational(&rat_int(k))
    }

    /// Twisted character `ch^beta = e^{-beta H} * ch`.
    pub fn twisted_char(&self, beta: &Rational) -> NumChern {
        self.twist_rational(&-beta.clone())
    }

    /// `(rk, -c1, ch2, -ch3)`.
    pub fn dual(&self) -> NumChern {
        NumChern {
            rk: self.rk.clone(),
            c1: -self.c1.clone(),
            ch2: self.ch2.clone(),
            ch3: self.ch3.as_ref().map(|c| -c.clone()),
        }
    }

    /// Homological shift acting on classes by `(-1)^n`.
    pub fn shift(&self, n: i64) -> NumChern {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self
        }
    }

    pub fn scale(&self, k: &Rational) -> NumChern {
        NumChern {
            rk: &self.rk * k,
            c1: &self.c1 * k,
            ch2: &self.ch2 * k,
            ch3: self.ch3.as_ref().map(|c| c * k),
        }
    }

    /// Reduced point of the class: the affine chart `(c1/rk, ch2/rk)` for
    /// nonzero rank, or the projective direction `[0 : c1 : ch2]`.
    pub fn reduced_point(&self) -> Result<ReducedPoint> {
        if !self.rk.is_zero() {
            return Ok(ReducedPoint::Affine(PlanePoint::new(
                &self.c1 / &self.rk,
                &self.ch2 / &self.rk,
            )));
        }
        if self.c1.is_zero() && self.ch2.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(ReducedPoint::Direction {
            c1: self.c1.clone(),
            ch2: self.ch2.clone(),
        })
    }

    /// Coefficient-convention rendering, e.g. `(1, 0, -3/10, 1/20)`.
    pub fn coeff_string(&self) -> String {
        format!(
            "({}, {}, {}, {})",
            format_rational(&self.rk),
            format_rational(&self.c1),
            format_rational(&self.ch2),
            self.ch3
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| "unset".into()),
        )
    }

    /// Integrated-convention rendering: the last slot is `d * ch3`.
    pub fn integrated_string(&self, var: &VarietyParams) -> String {
        format!(
            "({}, {}, {}, {})",
            format_rational(&self.rk),
            format_rational(&self.c1),
            format_rational(&self.ch2),
            self.ch3
                .as_ref()
                .map(|c| format_rational(&(c * var.degree_rational())))
                .unwrap_or_else(|| "unset".into()),
        )
    }
}

impl Add for &NumChern {
    type Output = NumChern;
    fn add(self, rhs: &NumChern) -> NumChern {
        NumChern {
            rk: &self.rk + &rhs.rk,
            c1: &self.c1 + &rhs.c1,
            ch2: &self.ch2 + &rhs.ch2,
            ch3: match (&self.ch3, &rhs.ch3) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }
}

impl Sub for &NumChern {
    type Output = NumChern;
    fn sub(self, rhs: &NumChern) -> NumChern {
        self + &-rhs
    }
}

impl Neg for &NumChern {
    type Output = NumChern;
    fn neg(self) -> NumChern {
        self.scale(&rat_int(-1))
    }
}

impl fmt::Display for NumChern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_string())
    }
}

#[derive(Serialize, Deserialize)]
struct ClassDto {
    rk: String,
    c1: String,
    ch2: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ch3: Option<String>,
}

impl Serialize for NumChern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ClassDto {
            rk: format_rational(&self.rk),
            c1: format_rational(&self.c1),
            ch2: format_rational(&self.ch2),
            ch3: self.ch3.as_ref().map(format_rational),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumChern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = ClassDto::deserialize(deserializer)?;
        let parse = |s: &str| parse_rational(s).map_err(|e| D::Error::custom(e.to_string()));
        Ok(NumChern {
            rk: parse(&dto.rk)?,
            c1: parse(&dto.c1)?,
            ch2: parse(&dto.ch2)?,
            ch3: dto.ch3.as_deref().map(parse).transpose()?,
        })
    }
}

/// Reduced character of a class: an affine plane point for nonzero rank, a
/// projective direction for rank zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedPoint {
    Affine(PlanePoint),
    Direction { c1: Rational, ch2: Rational },
}

/// Euler pairing `chi(v, w)` via the Riemann–Roch expansion
/// `d * [deg-3 coefficient of ch(v)^dual * ch(w) * td]`, written out as a
/// closed form in the components.
pub fn euler(v: &NumChern, w: &NumChern, var: &VarietyParams) -> Result<Rational> {
    let v3 = v.ch3_required()?;
    let w3 = w.ch3_required()?;
    let [_, t1, t2, t3] = var.todd().coefficients()?;
    let half = &t1; // 1/2 on an index-1 threefold, kept symbolic anyway
    let mut p3 = &t3 * &v.rk * &w.rk;
    p3 += &t2 * (&v.rk * &w.c1 - &v.c1 * &w.rk);
    p3 += half * &(&v.rk * &w.ch2 + &v.ch2 * &w.rk) - half * &(&v.c1 * &w.c1);
    p3 += &v.ch2 * &w.c1 - &v.c1 * &w.ch2;
    p3 += &v.rk * w3 - v3 * &w.rk;
    Ok(p3 * var.degree_rational())
}

/// Class of the ideal sheaf of a degree-`e`, genus-`gc` curve: the third
/// character is pinned by `chi(O, O_curve) = 1 - gc` against the implemented
/// pairing, so no sign convention can drift.
pub fn curve_ideal_class(e: u32, gc: i64, var: &VarietyParams) -> Result<NumChern> {
    assert!(e >= 1, "curve degree must be positive");
    if !var.todd().is_full() {
        return Err(Error::MissingTodd);
    }
    let d = var.degree_rational();
    let x = (rat_int(1 - gc) - rat_int(e as i64) / rat_int(2)) / &d;
    Ok(NumChern {
        rk: rat_int(1),
        c1: Rational::zero(),
        ch2: -(rat_int(e as i64) / &d),
        ch3: Some(-x),
    })
}
