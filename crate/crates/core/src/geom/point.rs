use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::GeomError;

/// A point (or free vector) in the plane. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Rotation by +90 degrees.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A projective direction: `d`, `-d` and `k·d` all compare equal.
///
/// Stored canonically as a unit vector with `dy > 0`, or `dy == 0` and
/// `dx > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    dx: f64,
    dy: f64,
}

impl Direction {
    pub fn new(dx: f64, dy: f64) -> Result<Self, GeomError> {
        let n = dx.hypot(dy);
        if !(n.is_finite() && n > 0.0) {
            return Err(GeomError::ZeroDirection);
        }
        let (mut ux, mut uy) = (dx / n, dy / n);
        if uy < 0.0 || (uy == 0.0 && ux < 0.0) {
            ux = -ux;
            uy = -uy;
        }
        // avoid a signed zero leaking into output
        Ok(Self {
            dx: ux + 0.0,
            dy: uy + 0.0,
        })
    }

    pub fn from_points(from: Point, to: Point) -> Result<Self, GeomError> {
        let d = to - from;
        Self::new(d.x, d.y)
    }

    pub fn dx(self) -> f64 {
        self.dx
    }

    pub fn dy(self) -> f64 {
        self.dy
    }

    pub fn as_vector(self) -> Point {
        Point::new(self.dx, self.dy)
    }

    /// Sine of the angle between the two directions (0 when parallel).
    pub fn sin_angle(self, other: Direction) -> f64 {
        self.as_vector().cross(other.as_vector()).abs()
    }

    /// Acute angle between the two lines, in radians.
    pub fn angle_to(self, other: Direction) -> f64 {
        let c = self.as_vector().dot(other.as_vector()).abs().min(1.0);
        let s = self.sin_angle(other);
        s.atan2(c)
    }

    pub fn slope(self) -> Slope {
        Slope::of(self.as_vector())
    }
}

/// Slope of a line, with an explicit vertical case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    Finite(f64),
    Vertical,
}

impl Slope {
    pub fn of(v: Point) -> Slope {
        if v.x.abs() <= 1e-14 * v.y.abs() {
            Slope::Vertical
        } else {
            Slope::Finite(v.y / v.x)
        }
    }

    pub fn between(p: Point, q: Point) -> Slope {
        Slope::of(q - p)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Slope::Finite(m) => Some(m),
            Slope::Vertical => None,
        }
    }
}

/// A line `a·x + b·y + c = 0`, normalized so `a² + b² = 1` and the first
/// nonzero of `(a, b)` is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        let n = a.hypot(b);
        if !(n.is_finite() && n > 0.0 && c.is_finite()) {
            return Err(GeomError::DegenerateLine);
        }
        let sign = if a > 0.0 || (a == 0.0 && b > 0.0) { 1.0 } else { -1.0 };
        let k = sign / n;
        Ok(Self {
            a: a * k + 0.0,
            b: b * k + 0.0,
            c: c * k + 0.0,
        })
    }

    pub fn through(p: Point, q: Point) -> Result<Self, GeomError> {
        Self::from_point_direction(p, q - p)
    }

    /// Line through `p` along `d`. `d` is normalized before the constant
    /// term is formed, so large coordinates do not overflow.
    pub fn from_point_direction(p: Point, d: Point) -> Result<Self, GeomError> {
        let n = d.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(GeomError::DegenerateLine);
        }
        let u = Point::new(d.x / n, d.y / n);
        // normal (dy, -dx)
        Self::new(u.y, -u.x, u.x * p.y - u.y * p.x)
    }

    pub fn coefficients(self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn normal(self) -> Point {
        Point::new(self.a, self.b)
    }

    pub fn direction(self) -> Direction {
        Direction::new(-self.b, self.a).expect("normalized line has unit normal")
    }

    /// Signed distance (the line is normalized).
    pub fn signed_distance(self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn project(self, p: Point) -> Point {
        p - self.normal() * self.signed_distance(p)
    }

    pub fn intersect(self, other: Line) -> Option<Point> {
        let det = self.a * other.b - self.b * other.a;
        if det.abs() <= 1e-15 {
            return None;
        }
        let x = (self.b * other.c - self.c * other.b) / det;
        let y = (self.c * other.a - self.a * other.c) / det;
        Some(Point::new(x, y))
    }
}
