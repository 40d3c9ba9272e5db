//! Scalars, points and point configurations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{Float, Signed, Zero};

use crate::error::GeomError;
use crate::DISTINCT_EPS;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Coordinate field shared by the exact and float kernels.
///
/// Arithmetic takes references so the rational implementation avoids clones.
/// `negligible` is the single place where the two modes differ: exact values
/// are negligible only when they are zero, floats when they are small relative
/// to a squared scale.
pub trait Coord: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics (exact) or yields a non-finite value (float) on division by zero.
    fn div(&self, other: &Self) -> Self;
    fn signum(&self) -> i8;

    /// `|v| <= eps * sqrt(scale_sq)` in float mode, `v == 0` in exact mode.
    fn negligible(v: &Self, scale_sq: &Self, eps: f64) -> bool;

    /// Whether two coordinates are the same point component for distinctness.
    fn same_component(a: &Self, b: &Self) -> bool;

    fn mode() -> Mode;
}

impl Coord for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn signum(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn negligible(v: &Self, scale_sq: &Self, eps: f64) -> bool {
        v * v <= eps * eps * scale_sq
    }
    fn same_component(a: &Self, b: &Self) -> bool {
        Float::abs(a - b) <= DISTINCT_EPS
    }
    fn mode() -> Mode {
        Mode::Float
    }
}

impl Coord for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn signum(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn negligible(v: &Self, _scale_sq: &Self, _eps: f64) -> bool {
        v.is_zero()
    }
    fn same_component(a: &Self, b: &Self) -> bool {
        a == b
    }
    fn mode() -> Mode {
        Mode::Exact
    }
}

/// Coordinate mode of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

/// Ambient dimension. Planar points are stored with `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn get(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn from_usize(d: usize) -> Option<Dim> {
        match d {
            2 => Some(Dim::Two),
            3 => Some(Dim::Three),
            _ => None,
        }
    }
}

/// A 3-vector; also used for points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Coord> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vec3::new(self.x.sub(&o.x), self.y.sub(&o.y), self.z.sub(&o.z))
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec3::new(self.x.add(&o.x), self.y.add(&o.y), self.z.add(&o.z))
    }

    pub fn scale(&self, s: &T) -> Self {
        Vec3::new(self.x.mul(s), self.y.mul(s), self.z.mul(s))
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.mul(&o.x).add(&self.y.mul(&o.y)).add(&self.z.mul(&o.z))
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y.mul(&o.z).sub(&self.z.mul(&o.y)),
            self.z.mul(&o.x).sub(&self.x.mul(&o.z)),
            self.x.mul(&o.y).sub(&self.y.mul(&o.x)),
        )
    }

    /// Scalar triple product `self · (b × c)`.
    pub fn triple(&self, b: &Self, c: &Self) -> T {
        self.dot(&b.cross(c))
    }

    pub fn is_zero(&self) -> bool {
        let z = T::zero();
        self.x == z && self.y == z && self.z == z
    }

    /// Point equality under the mode's distinctness rule.
    pub fn coincides(&self, o: &Self) -> bool {
        T::same_component(&self.x, &o.x)
            && T::same_component(&self.y, &o.y)
            && T::same_component(&self.z, &o.z)
    }
}

impl Vec3<f64> {
    pub fn norm(&self) -> f64 {
        Float::sqrt(self.norm_sq())
    }
}

impl Vec3<Rational> {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(Rational::from_i64(x), Rational::from_i64(y), Rational::from_i64(z))
    }

    pub fn to_f64(&self) -> Vec3<f64> {
        use num_traits::ToPrimitive;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        Vec3::new(f(&self.x), f(&self.y), f(&self.z))
    }
}

/// A scalar in either mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

/// A point (or difference vector) in either mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Exact(Vec3<Rational>),
    Float(Vec3<f64>),
}

impl Point {
    pub fn mode(&self) -> Mode {
        match self {
            Point::Exact(_) => Mode::Exact,
            Point::Float(_) => Mode::Float,
        }
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &Point) -> Result<Point, GeomError> {
        match (self, other) {
            (Point::Exact(p), Point::Exact(q)) => Ok(Point::Exact(p.sub(q))),
            (Point::Float(p), Point::Float(q)) => Ok(Point::Float(p.sub(q))),
            _ => Err(GeomError::ModeMismatch),
        }
    }

    pub fn dot(&self, other: &Point) -> Result<Scalar, GeomError> {
        match (self, other) {
            (Point::Exact(p), Point::Exact(q)) => Ok(Scalar::Exact(p.dot(q))),
            (Point::Float(p), Point::Float(q)) => Ok(Scalar::Float(p.dot(q))),
            _ => Err(GeomError::ModeMismatch),
        }
    }

    pub fn norm_sq(&self) -> Scalar {
        match self {
            Point::Exact(p) => Scalar::Exact(p.norm_sq()),
            Point::Float(p) => Scalar::Float(p.norm_sq()),
        }
    }
}

/// Coordinates of a configuration, tagged by mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Points {
    Exact(Vec<Vec3<Rational>>),
    Float(Vec<Vec3<f64>>),
}

/// An ordered list of pairwise distinct points sharing one dimension and mode.
#[derive(Debug, Clone)]
pub struct PointConfig {
    points: Points,
    dim: Dim,
    pub label: String,
}

/// Two configurations are equal when their points, dimension and mode agree.
/// Labels are ignored.
impl PartialEq for PointConfig {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

fn validate<T: Coord>(pts: &[Vec3<T>], dim: Dim) -> Result<(), GeomError> {
    if dim == Dim::Two {
        if let Some(i) = pts.iter().position(|p| p.z != T::zero()) {
            return Err(GeomError::DimMismatch(alloc::format!(
                "planar configuration has nonzero z at point {i}"
            )));
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].coincides(&pts[j]) {
                return Err(GeomError::Coincident(i, j));
            }
        }
    }
    Ok(())
}

impl PointConfig {
    pub fn exact(
        label: impl Into<String>,
        dim: Dim,
        points: Vec<Vec3<Rational>>,
    ) -> Result<Self, GeomError> {
        validate(&points, dim)?;
        Ok(PointConfig {
            points: Points::Exact(points),
            dim,
            label: label.into(),
        })
    }

    pub fn float(label: impl Into<String>, dim: Dim, points: Vec<Vec3<f64>>) -> Result<Self, GeomError> {
        if points
            .iter()
            .any(|p| !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()))
        {
            return Err(GeomError::InvalidParameter("non-finite coordinate".into()));
        }
        validate(&points, dim)?;
        Ok(PointConfig {
            points: Points::Float(points),
            dim,
            label: label.into(),
        })
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        match self.points {
            Points::Exact(_) => Mode::Exact,
            Points::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match &self.points {
            Points::Exact(p) => p.len(),
            Points::Float(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> Option<Point> {
        match &self.points {
            Points::Exact(p) => p.get(i).cloned().map(Point::Exact),
            Points::Float(p) => p.get(i).cloned().map(Point::Float),
        }
    }

    pub fn as_float(&self) -> Option<&[Vec3<f64>]> {
        match &self.points {
            Points::Float(p) => Some(p),
            Points::Exact(_) => None,
        }
    }

    pub fn as_exact(&self) -> Option<&[Vec3<Rational>]> {
        match &self.points {
            Points::Exact(p) => Some(p),
            Points::Float(_) => None,
        }
    }

    /// Float copy of the configuration (exact coordinates are rounded).
    pub fn to_float(&self) -> PointConfig {
        match &self.points {
            Points::Float(_) => self.clone(),
            Points::Exact(p) => PointConfig {
                points: Points::Float(p.iter().map(Vec3::to_f64).collect()),
                dim: self.dim,
                label: self.label.clone(),
            },
        }
    }

    /// The configuration with point `i` deleted.
    pub fn without(&self, i: usize) -> Result<PointConfig, GeomError> {
        let len = self.len();
        if i >= len {
            return Err(GeomError::IndexOutOfRange { index: i, len });
        }
        let mut out = self.clone();
        match &mut out.points {
            Points::Exact(p) => {
                p.remove(i);
            }
            Points::Float(p) => {
                p.remove(i);
            }
        }
        Ok(out)
    }
}
