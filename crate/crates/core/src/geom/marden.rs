//! Triangle inellipses from weighted partial fractions.
//!
//! For weights `t1 + t2 + t3 = 1` with `t1·t2·t3 > 0`, the zeros of
//! `F(z) = Σ t_k / (z − z_k)` are the foci of the ellipse inscribed in the
//! triangle `z1 z2 z3` that touches side `z2z3` at
//! `(t2·z3 + t3·z2)/(t2 + t3)` and similarly for the other two sides.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GeomError, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MardenInput {
    pub vertices: [Point; 3],
    pub weights: [f64; 3],
}

impl MardenInput {
    pub fn new(vertices: [Point; 3], weights: [f64; 3]) -> Result<Self, GeomError> {
        let sum: f64 = weights.iter().sum();
        let product: f64 = weights.iter().product();
        // written so that NaN weights are rejected
        let valid = (sum - 1.0).abs() <= 1e-12 && product > 0.0;
        if !valid {
            return Err(GeomError::InvalidWeights { weights });
        }
        let [z1, z2, z3] = vertices;
        let area2 = (z2 - z1).cross(z3 - z1);
        let scale = (z2 - z1).norm().max((z3 - z1).norm()).max((z3 - z2).norm());
        let proper = area2.abs() > 1e-12 * scale * scale;
        if !proper {
            return Err(GeomError::CollinearVertices);
        }
        Ok(Self { vertices, weights })
    }

    /// Weights whose inellipse is centered at `center`.
    ///
    /// The center is the mean of the foci, `(Σ z_k − Σ t_k z_k)/2`, so the
    /// weights are the barycentric coordinates of `Σ z_k − 2·center`.
    pub fn weights_for_center(vertices: [Point; 3], center: Point) -> Result<[f64; 3], GeomError> {
        let [z1, z2, z3] = vertices;
        let target = z1 + z2 + z3 - center * 2.0;
        let area = (z2 - z1).cross(z3 - z1);
        if area == 0.0 {
            return Err(GeomError::CollinearVertices);
        }
        let t1 = (z2 - target).cross(z3 - target) / area;
        let t2 = (z3 - target).cross(z1 - target) / area;
        let t3 = (z1 - target).cross(z2 - target) / area;
        Ok([t1, t2, t3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MardenResult {
    /// Ordered lexicographically by `(x, y)`.
    pub foci: (Point, Point),
    /// Tangency with sides `z2z3`, `z1z3`, `z1z2`.
    pub tangency: [Point; 3],
}

impl MardenResult {
    /// Focal string length `|ζ − Z1| + |ζ − Z2|` at each tangency point.
    pub fn string_lengths(&self) -> [f64; 3] {
        let (f1, f2) = self.foci;
        self.tangency.map(|z| z.distance(f1) + z.distance(f2))
    }

    pub fn center(&self) -> Point {
        self.foci.0.midpoint(self.foci.1)
    }
}

fn to_complex(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

fn from_complex(z: Complex64) -> Point {
    Point::new(z.re, z.im)
}

pub fn marden_inellipse(input: &MardenInput) -> Result<MardenResult, GeomError> {
    let input = MardenInput::new(input.vertices, input.weights)?;
    let [z1, z2, z3] = input.vertices.map(to_complex);
    let [t1, t2, t3] = input.weights;
    // t1(z−z2)(z−z3) + t2(z−z1)(z−z3) + t3(z−z1)(z−z2) = z² − σ1 z + σ0
    let sigma1 = (z2 + z3) * t1 + (z1 + z3) * t2 + (z1 + z2) * t3;
    let sigma0 = z2 * z3 * t1 + z1 * z3 * t2 + z1 * z2 * t3;
    let root = (sigma1 * sigma1 - sigma0 * 4.0).sqrt();
    let mut f1 = from_complex((sigma1 + root) * 0.5);
    let mut f2 = from_complex((sigma1 - root) * 0.5);
    if (f2.x, f2.y) < (f1.x, f1.y) {
        std::mem::swap(&mut f1, &mut f2);
    }
    let zeta1 = (z3 * t2 + z2 * t3) / (t2 + t3);
    let zeta2 = (z3 * t1 + z1 * t3) / (t1 + t3);
    let zeta3 = (z2 * t1 + z1 * t2) / (t1 + t2);
    Ok(MardenResult {
        foci: (f1, f2),
        tangency: [zeta1, zeta2, zeta3].map(from_complex),
    })
}

/// Where the ellipse with the given foci and focal string length touches a
/// line it is tangent to: reflect one focus across the line and join it to
/// the other.
pub fn focal_tangency_point(foci: (Point, Point), line: super::Line) -> Point {
    let (f1, f2) = foci;
    let reflected = f2 - line.normal() * (2.0 * line.signed_distance(f2));
    let d1 = line.signed_distance(f1);
    let d2 = line.signed_distance(reflected);
    f1.lerp(reflected, d1 / (d1 - d2))
}
