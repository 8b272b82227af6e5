//! General second-degree curves and the ellipse quantities derived from them.

use serde::{Deserialize, Serialize};

use super::{Direction, GeomError, Line, NotTangentKind, Point};

/// `A x² + B xy + C y² + D x + E y + F = 0`.
///
/// Coefficients are stored projectively normalized: scaled so that
/// `A + C = 1` whenever `A + C` is not (numerically) zero, otherwise scaled
/// so the largest quadratic coefficient has magnitude one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Conic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self, GeomError> {
        let raw = [a, b, c, d, e, f];
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let quad_scale = a.abs().max(b.abs()).max(c.abs());
        if quad_scale == 0.0 {
            return Err(GeomError::NotQuadratic);
        }
        let trace = a + c;
        let k = if trace.abs() > 1e-14 * quad_scale {
            1.0 / trace
        } else {
            let lead = [a, b, c].into_iter().find(|v| *v != 0.0).unwrap_or(1.0);
            lead.signum() / quad_scale
        };
        Ok(Self {
            a: a * k + 0.0,
            b: b * k + 0.0,
            c: c * k + 0.0,
            d: d * k + 0.0,
            e: e * k + 0.0,
            f: f * k + 0.0,
        })
    }

    pub fn from_array(c: [f64; 6]) -> Result<Self, GeomError> {
        Self::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    /// The centered form `A(x-h)² + B(x-h)(y-k) + C(y-k)² = r`.
    pub fn centered(a: f64, b: f64, c: f64, center: Point, r: f64) -> Result<Self, GeomError> {
        let (h, k) = (center.x, center.y);
        Self::new(
            a,
            b,
            c,
            -2.0 * a * h - b * k,
            -b * h - 2.0 * c * k,
            a * h * h + b * h * k + c * k * k - r,
        )
    }

    pub fn to_array(self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn eval(self, p: Point) -> f64 {
        let (x, y) = (p.x, p.y);
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    pub fn gradient(self, p: Point) -> Point {
        Point::new(
            2.0 * self.a * p.x + self.b * p.y + self.d,
            self.b * p.x + 2.0 * self.c * p.y + self.e,
        )
    }

    /// `vᵀ M v` for the symmetric matrix `M = [[A, B/2], [B/2, C]]`.
    pub fn quadratic_form(self, v: Point) -> f64 {
        self.a * v.x * v.x + self.b * v.x * v.y + self.c * v.y * v.y
    }

    /// `uᵀ M v`.
    pub fn bilinear(self, u: Point, v: Point) -> f64 {
        self.a * u.x * v.x + 0.5 * self.b * (u.x * v.y + u.y * v.x) + self.c * u.y * v.y
    }

    /// `Δ = 4AC − B²`.
    pub fn big_delta(self) -> f64 {
        4.0 * self.a * self.c - self.b * self.b
    }

    /// `δ = CD² + AE² − BDE − FΔ`.
    pub fn small_delta(self) -> f64 {
        self.c * self.d * self.d + self.a * self.e * self.e
            - self.b * self.d * self.e
            - self.f * self.big_delta()
    }

    /// Largest coefficient magnitude.
    pub fn scale(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Projective distance: max coefficient difference after both sides are
    /// normalized to unit max-norm with matching sign.
    pub fn projective_distance(self, other: Conic) -> f64 {
        let p = self.to_array();
        let q = other.to_array();
        let sp = self.scale();
        let sq = other.scale();
        let dot: f64 = p.iter().zip(&q).map(|(a, b)| a * b).sum();
        let sign = if dot < 0.0 { -1.0 } else { 1.0 };
        p.iter()
            .zip(&q)
            .map(|(a, b)| (a / sp - sign * b / sq).abs())
            .fold(0.0, f64::max)
    }
}

/// Geometric description of an ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseInfo {
    pub conic: Conic,
    pub center: Point,
    /// Semi-major axis length.
    pub a: f64,
    /// Semi-minor axis length.
    pub b: f64,
    /// `b² / a²`.
    pub ratio_sq: f64,
    pub eccentricity: f64,
    /// `4AC − B²`.
    pub big_delta: f64,
    /// `CD² + AE² − BDE − FΔ`.
    pub small_delta: f64,
    /// `4δ / Δ²`.
    pub mu: f64,
    /// Angle of the major axis against +x, radians in `(-π/2, π/2]`.
    pub major_angle: f64,
}

/// Decides whether `c` is a real nondegenerate ellipse and extracts its
/// center, axes and eccentricity.
pub fn classify_conic(conic: Conic) -> Result<EllipseInfo, GeomError> {
    let coeffs = conic.to_array();
    if coeffs.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    // Re-normalizing puts A + C > 0 whenever Δ > 0.
    let conic = Conic::from_array(coeffs)?;
    let big_delta = conic.big_delta();
    if big_delta <= 0.0 {
        return Err(GeomError::NotAnEllipse { big_delta });
    }
    let small_delta = conic.small_delta();
    if small_delta <= 0.0 {
        return Err(GeomError::Degenerate { small_delta });
    }
    let Conic { a, b, c, d, e, .. } = conic;
    let center = Point::new((b * e - 2.0 * c * d) / big_delta, (b * d - 2.0 * a * e) / big_delta);
    let mu = 4.0 * small_delta / (big_delta * big_delta);
    let j = a + c;
    let root_m = (a - c).hypot(b);
    let major_sq = 0.5 * mu * (j + root_m);
    // J − √M = Δ / (J + √M) avoids cancellation for elongated ellipses.
    let minor_sq = 0.5 * mu * big_delta / (j + root_m);
    let ratio_sq = big_delta / ((j + root_m) * (j + root_m));
    let eccentricity = (2.0 * root_m / (j + root_m)).sqrt();
    let major_angle = {
        let mut t = 0.5 * (-b).atan2(c - a);
        if t <= -std::f64::consts::FRAC_PI_2 {
            t += std::f64::consts::PI;
        }
        t
    };
    Ok(EllipseInfo {
        conic,
        center,
        a: major_sq.sqrt(),
        b: minor_sq.sqrt(),
        ratio_sq,
        eccentricity,
        big_delta,
        small_delta,
        mu,
        major_angle,
    })
}

impl EllipseInfo {
    pub fn is_circle(&self, tol: f64) -> bool {
        self.eccentricity <= tol
    }

    /// `−Q(center) = δ/Δ`, the depth of the center below the level set.
    pub fn depth(&self) -> f64 {
        self.small_delta / self.big_delta
    }
}

/// Direction `u` with `dᵀ M u = 0`: the diameter bisecting every chord
/// parallel to `d`.
pub fn conjugate_direction(info: &EllipseInfo, d: Direction) -> Direction {
    let Conic { a, b, c, .. } = info.conic;
    let v = d.as_vector();
    let md = Point::new(a * v.x + 0.5 * b * v.y, 0.5 * b * v.x + c * v.y);
    let u = md.perp();
    Direction::new(u.x, u.y).expect("positive definite form maps nonzero to nonzero")
}

/// Endpoints of the diameter along `d`, ordered as `center ∓ τ·d` with `d`
/// in canonical orientation.
pub fn diameter_endpoints(info: &EllipseInfo, d: Direction) -> (Point, Point) {
    let v = d.as_vector();
    let tau = (info.depth() / info.conic.quadratic_form(v)).sqrt();
    (info.center - v * tau, info.center + v * tau)
}

/// The point where `line` touches the ellipse.
///
/// The conic restricted to the line is a quadratic in the arc parameter;
/// tangency means a double root. The discriminant is reported relative to
/// that of a line through the center, so `0` is tangent, `1` is a diameter.
pub fn line_tangency_point(info: &EllipseInfo, line: Line, tol: f64) -> Result<Point, GeomError> {
    let conic = info.conic;
    let p0 = line.project(info.center);
    let d = line.direction().as_vector();
    let alpha = conic.quadratic_form(d);
    let beta = conic.gradient(p0).dot(d);
    let gamma = conic.eval(p0);
    let relative = (beta * beta - 4.0 * alpha * gamma) / (4.0 * alpha * info.depth());
    if relative.abs() > tol {
        let kind = if relative > 0.0 {
            NotTangentKind::TwoIntersections
        } else {
            NotTangentKind::NoIntersection
        };
        return Err(GeomError::NotTangent {
            kind,
            discriminant: relative,
        });
    }
    Ok(p0 + d * (-beta / (2.0 * alpha)))
}

/// Relative discriminant of the conic restricted to `line` (see
/// [`line_tangency_point`]).
pub fn tangency_discriminant(info: &EllipseInfo, line: Line) -> f64 {
    let conic = info.conic;
    let p0 = line.project(info.center);
    let d = line.direction().as_vector();
    let alpha = conic.quadratic_form(d);
    let beta = conic.gradient(p0).dot(d);
    let gamma = conic.eval(p0);
    (beta * beta - 4.0 * alpha * gamma) / (4.0 * alpha * info.depth())
}
