//! Exact arithmetic substrate: arbitrary-precision rationals, Gaussian
//! rationals, 2×2 rational matrices and quadratic surds.
//!
//! No floating point enters any computation here; conversions to `f64` exist
//! only as one-way serialization helpers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (guaranteed by the backing representation).
pub type Rational = num_rational::BigRational;

/// `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"n"` (optionally signed, ASCII digits).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats as `"p/q"`, or `"n"` when the value is integral.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One-way conversion for SVG serialization and float sanity oracles.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// Complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussRational {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `|z|^2 = re^2 + im^2`, an exact rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(
                f,
                "{} - {}i",
                format_rational(&self.re),
                format_rational(&-self.im.clone())
            )
        } else {
            write!(
                f,
                "{} + {}i",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

// ---------------------------------------------------------------------------
// 2x2 rational matrices
// ---------------------------------------------------------------------------

/// 2×2 matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    e: [[Rational; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[Rational; 2]; 2]) -> Self {
        Mat2 { e }
    }

    pub fn from_i64(e: [[i64; 2]; 2]) -> Self {
        Mat2::new(e.map(|row| row.map(rat_int)))
    }

    pub fn identity() -> Self {
        Mat2::from_i64([[1, 0], [0, 1]])
    }

    /// Matrix with the two complex numbers as columns `(Re, Im)`.
    pub fn from_columns(c0: &GaussRational, c1: &GaussRational) -> Self {
        Mat2::new([
            [c0.re.clone(), c1.re.clone()],
            [c0.im.clone(), c1.im.clone()],
        ])
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.e[i][j]
    }

    pub fn det(&self) -> Rational {
        &self.e[0][0] * &self.e[1][1] - &self.e[0][1] * &self.e[1][0]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [
            [Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &self.e[i][0] * &rhs.e[0][j] + &self.e[i][1] * &rhs.e[1][j];
            }
        }
        Mat2::new(out)
    }

    pub fn mul_vec(&self, v: &(Rational, Rational)) -> (Rational, Rational) {
        (
            &self.e[0][0] * &v.0 + &self.e[0][1] * &v.1,
            &self.e[1][0] * &v.0 + &self.e[1][1] * &v.1,
        )
    }

    pub fn scale(&self, k: &Rational) -> Mat2 {
        Mat2::new([
            [&self.e[0][0] * k, &self.e[0][1] * k],
            [&self.e[1][0] * k, &self.e[1][1] * k],
        ])
    }

    pub fn neg(&self) -> Mat2 {
        self.scale(&rat_int(-1))
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv = det.recip();
        Ok(Mat2::new([
            [&self.e[1][1] * &inv, -(&self.e[0][1] * &inv)],
            [-(&self.e[1][0] * &inv), &self.e[0][0] * &inv],
        ]))
    }

    /// Solves `self * x = rhs` exactly (Cramer).
    pub fn solve(&self, rhs: &(Rational, Rational)) -> Result<(Rational, Rational)> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let x = (&rhs.0 * &self.e[1][1] - &rhs.1 * &self.e[0][1]) / &det;
        let y = (&rhs.1 * &self.e[0][0] - &rhs.0 * &self.e[1][0]) / &det;
        Ok((x, y))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            format_rational(&self.e[0][0]),
            format_rational(&self.e[0][1]),
            format_rational(&self.e[1][0]),
            format_rational(&self.e[1][1]),
        )
    }
}

/// Exact determinant of a 2×2 matrix.
pub fn det2(m: &Mat2) -> Rational {
    m.det()
}

/// Exact solution of `m * x = rhs`; errors on a singular matrix.
pub fn solve2x2(m: &Mat2, rhs: &(Rational, Rational)) -> Result<(Rational, Rational)> {
    m.solve(rhs)
}

// ---------------------------------------------------------------------------
// Quadratic surds
// ---------------------------------------------------------------------------

/// Splits `n >= 0` as `f^2 * d` with `d` square-free. Returns `(f, d)`.
///
/// Trial division runs while `p^3 <= remaining`; the leftover cofactor then
/// has at most two prime factors, so a perfect-square check finishes the
/// decomposition. Intended for the moderate radicands produced by wall
/// geometry, not for cryptographic-size inputs.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative());
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    if let Some(n_small) = n.to_u128() {
        let (f, d) = squarefree_split_u128(n_small);
        return (BigInt::from(f), BigInt::from(d));
    }
    let mut n = n.clone();
    let mut f = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= &p;
            }
        }
        p += if p == BigInt::from(2) {
            BigInt::one()
        } else {
            BigInt::from(2)
        };
    }
    if n > BigInt::one() {
        let r = n.sqrt();
        if &r * &r == n {
            f *= r;
        } else {
            d *= n;
        }
    }
    (f, d)
}

fn squarefree_split_u128(mut n: u128) -> (u128, u128) {
    if n == 0 {
        return (1, 0);
    }
    let mut f: u128 = 1;
    let mut d: u128 = 1;
    let mut p: u128 = 2;
    while p.checked_pow(3).is_some_and(|c| c <= n) {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            f *= p.pow(e / 2);
            if !e.is_multiple_of(2) {
                d *= p;
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > 1 {
        let r = n.isqrt();
        if r * r == n {
            f *= r;
        } else {
            d *= n;
        }
    }
    (f, d)
}

/// `a + b*sqrt(d)` with `d` a square-free non-negative integer.
///
/// Normalized at construction: the radicand is reduced to its square-free
/// part, and a surd with no irrational part is stored as `(a, 0, 0)`, so
/// equality is decidable componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadraticSurd {
    /// Builds `a + b*sqrt(radicand)`, normalizing the radicand. Errors when
    /// the radicand is negative and `b` is nonzero.
    pub fn new(a: Rational, b: Rational, radicand: BigInt) -> Result<Self> {
        if radicand.is_negative() {
            if b.is_zero() {
                return Ok(QuadraticSurd::from_rational(a));
            }
            return Err(Error::NegativeRadicand);
        }
        let (f, d) = squarefree_split(&radicand);
        let b = b * Rational::from_integer(f);
        if b.is_zero() || d.is_zero() {
            return Ok(QuadraticSurd::from_rational(a));
        }
        if d.is_one() {
            return Ok(QuadraticSurd::from_rational(a + b));
        }
        Ok(QuadraticSurd { a, b, d })
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    /// Exact square root of a non-negative rational as a surd.
    pub fn sqrt_of_rational(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let n = r.numer() * r.denom();
        let coeff = Rational::new(BigInt::one(), r.denom().clone());
        QuadraticSurd::new(Rational::zero(), coeff, n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadraticSurd {
            a: &self.a + r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return QuadraticSurd::from_rational(Rational::zero());
        }
        QuadraticSurd {
            a: &self.a * k,
            b: &self.b * k,
            d: self.d.clone(),
        }
    }

    fn compatible_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.is_rational() {
            return Ok(other.d.clone());
        }
        if other.is_rational() || self.d == other.d {
            return Ok(self.d.clone());
        }
        Err(Error::IncompatibleRadicands(
            self.d.clone(),
            other.d.clone(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.compatible_radicand(other)?;
        QuadraticSurd::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.compatible_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * &dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        QuadraticSurd::new(a, b, d)
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same radicand")
    }

    /// Exact comparison; requires equal radicands or one rational operand.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        let d = self.compatible_radicand(other)?;
        let a = &self.a - &other.a;
        let b = &self.b - &other.b;
        Ok(sign_a_plus_b_sqrt_d(&a, &b, &d))
    }

    /// Total order against a plain rational (always defined).
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let a = &self.a - r;
        sign_a_plus_b_sqrt_d(&a, &self.b, &self.d)
    }

    /// Sign of the value, as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        sign_a_plus_b_sqrt_d(&self.a, &self.b, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a)
            + rational_to_f64(&self.b) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

/// Exact total order on surds consistent with their real values; requires a
/// shared radicand or one rational operand.
pub fn surd_cmp(x: &QuadraticSurd, y: &QuadraticSurd) -> Result<Ordering> {
    x.try_cmp(y)
}

/// Exact sign of `a + b*sqrt(d)` for square-free `d >= 0`.
fn sign_a_plus_b_sqrt_d(a: &Rational, b: &Rational, d: &BigInt) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return a.cmp(&Rational::zero());
    }
    let sa = a.cmp(&Rational::zero());
    let sb = b.cmp(&Rational::zero());
    if sa == Ordering::Equal {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // Opposite signs: compare b^2 d against a^2. Equality cannot occur for a
    // square-free d >= 2 with a, b nonzero, but falls through consistently.
    let lhs = b * b * Rational::from_integer(d.clone());
    let rhs = a * a;
    match lhs.cmp(&rhs) {
        Ordering::Equal => Ordering::Equal,
        ord => {
            if sb == Ordering::Greater {
                ord
            } else {
                ord.reverse()
            }
        }
    }
}

impl serde::Serialize for QuadraticSurd {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("QuadraticSurd", 4)?;
        s.serialize_field("a", &format_rational(&self.a))?;
        s.serialize_field("b", &format_rational(&self.b))?;
        s.serialize_field("d", &self.d.to_string())?;
        s.serialize_field("approx", &self.to_f64())?;
        s.end()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.a));
        }
        if self.b.is_negative() {
            write!(
                f,
                "{} - {}*sqrt({})",
                format_rational(&self.a),
                format_rational(&-self.b.clone()),
                self.d
            )
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                format_rational(&self.a),
                format_rational(&self.b),
                self.d
            )
        }
    }
}
