use serde::{Deserialize, Serialize};

use super::{Conic, Direction, GeomError, Line, Point};

/// `T(x) = M x + t` with invertible `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    pub tx: f64,
    pub ty: f64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        m11: 1.0,
        m12: 0.0,
        m21: 0.0,
        m22: 1.0,
        tx: 0.0,
        ty: 0.0,
    };

    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64, tx: f64, ty: f64) -> Result<Self, GeomError> {
        let map = Self { m11, m12, m21, m22, tx, ty };
        let det = map.det();
        if !(det.is_finite() && tx.is_finite() && ty.is_finite()) || det == 0.0 {
            return Err(GeomError::SingularMap { det });
        }
        let scale = m11.abs().max(m12.abs()).max(m21.abs()).max(m22.abs());
        if det.abs() <= 1e-15 * scale * scale {
            return Err(GeomError::SingularMap { det });
        }
        Ok(map)
    }

    /// Map with columns `e1`, `e2` and translation `origin`.
    pub fn from_columns(e1: Point, e2: Point, origin: Point) -> Result<Self, GeomError> {
        Self::new(e1.x, e2.x, e1.y, e2.y, origin.x, origin.y)
    }

    pub fn translation(t: Point) -> Self {
        Self {
            tx: t.x,
            ty: t.y,
            ..Self::IDENTITY
        }
    }

    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            m11: c,
            m12: -s,
            m21: s,
            m22: c,
            tx: 0.0,
            ty: 0.0,
        }
    }

    pub fn uniform_scale(k: f64) -> Result<Self, GeomError> {
        Self::new(k, 0.0, 0.0, k, 0.0, 0.0)
    }

    /// Rotation, then uniform scale, then translation.
    pub fn similarity(angle: f64, scale: f64, translation: Point) -> Result<Self, GeomError> {
        let (s, c) = angle.sin_cos();
        Self::new(scale * c, -scale * s, scale * s, scale * c, translation.x, translation.y)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            m11: self.m11 * other.m11 + self.m12 * other.m21,
            m12: self.m11 * other.m12 + self.m12 * other.m22,
            m21: self.m21 * other.m11 + self.m22 * other.m21,
            m22: self.m21 * other.m12 + self.m22 * other.m22,
            tx: self.m11 * other.tx + self.m12 * other.ty + self.tx,
            ty: self.m21 * other.tx + self.m22 * other.ty + self.ty,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let det = self.det();
        let (n11, n12, n21, n22) = (self.m22 / det, -self.m12 / det, -self.m21 / det, self.m11 / det);
        AffineMap {
            m11: n11,
            m12: n12,
            m21: n21,
            m22: n22,
            tx: -(n11 * self.tx + n12 * self.ty),
            ty: -(n21 * self.tx + n22 * self.ty),
        }
    }

    pub fn apply_vector(&self, v: Point) -> Point {
        Point::new(self.m11 * v.x + self.m12 * v.y, self.m21 * v.x + self.m22 * v.y)
    }

    pub fn apply_point(&self, p: Point) -> Point {
        self.apply_vector(p) + Point::new(self.tx, self.ty)
    }

    pub fn apply_direction(&self, d: Direction) -> Direction {
        let v = self.apply_vector(d.as_vector());
        Direction::new(v.x, v.y).expect("invertible map keeps directions nonzero")
    }

    pub fn apply_line(&self, line: Line) -> Line {
        let inv = self.inverse();
        let (a, b, c) = line.coefficients();
        // n·x + c = 0 with x = N(y − t): (Nᵀn)·y + c − (Nᵀn)·t = 0
        let na = inv.m11 * a + inv.m21 * b;
        let nb = inv.m12 * a + inv.m22 * b;
        Line::new(na, nb, c - na * self.tx - nb * self.ty).expect("invertible map keeps lines")
    }

    /// Image conic: `Q'(y) = Q(T⁻¹ y)`.
    pub fn apply_conic(&self, conic: &Conic) -> Conic {
        let inv = self.inverse();
        let (n11, n12, n21, n22) = (inv.m11, inv.m12, inv.m21, inv.m22);
        let (s11, s12, s22) = (conic.a, 0.5 * conic.b, conic.c);
        // S' = Nᵀ S N
        let sn11 = s11 * n11 + s12 * n21;
        let sn12 = s11 * n12 + s12 * n22;
        let sn21 = s12 * n11 + s22 * n21;
        let sn22 = s12 * n12 + s22 * n22;
        let p11 = n11 * sn11 + n21 * sn21;
        let p12 = n11 * sn12 + n21 * sn22;
        let p22 = n12 * sn12 + n22 * sn22;
        // g' = Nᵀ g
        let gx = n11 * conic.d + n21 * conic.e;
        let gy = n12 * conic.d + n22 * conic.e;
        let (bx, by) = (self.tx, self.ty);
        let sb_x = p11 * bx + p12 * by;
        let sb_y = p12 * bx + p22 * by;
        Conic::new(
            p11,
            2.0 * p12,
            p22,
            gx - 2.0 * sb_x,
            gy - 2.0 * sb_y,
            bx * sb_x + by * sb_y - gx * bx - gy * by + conic.f,
        )
        .expect("invertible map keeps a quadratic quadratic")
    }

    /// True when the linear part is a scaled rotation (orthogonal columns of
    /// equal length, positive determinant).
    pub fn is_similarity(&self, tol: f64) -> bool {
        let c1 = Point::new(self.m11, self.m21);
        let c2 = Point::new(self.m12, self.m22);
        let n = c1.norm_sq().max(c2.norm_sq());
        (c1.dot(c2)).abs() <= tol * n
            && (c1.norm_sq() - c2.norm_sq()).abs() <= tol * n
            && self.det() > 0.0
    }

    /// Uniform scale factor of a similarity.
    pub fn similarity_scale(&self) -> f64 {
        self.det().abs().sqrt()
    }
}
