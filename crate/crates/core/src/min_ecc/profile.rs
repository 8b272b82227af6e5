//! The eccentricity profile of the `Q_z` family.
//!
//! With `J = A + C` and `M = (A − C)² + B²`, the squared axis ratio of the
//! member centered at abscissa `h` is `G = (J − √M)/(J + √M)`, and
//! `G′` has the sign of `p = 2J′M − JM′`. For type 1 frames `p` factors
//! through the quadratic `o(h)`, whose root in `I` is `h₊`.

use serde::{Deserialize, Serialize};

use super::MinEccError;
use crate::inscribed::{qz_coefficients_unchecked, QzCoefficients};
use crate::quad::{MdqType, QzParams};

/// Squared axis ratio and the sign-carrying derivative numerator from
/// `(A, B, C)` and their derivatives.
pub(crate) fn ratio_and_slope(abc: [f64; 3], dabc: [f64; 3]) -> (f64, f64) {
    let [a, b, c] = abc;
    let [da, db, dc] = dabc;
    let j = a + c;
    let m = (a - c) * (a - c) + b * b;
    let dj = da + dc;
    let dm = 2.0 * (a - c) * (da - dc) + 2.0 * b * db;
    let root = m.sqrt();
    // J − √M = (4AC − B²)/(J + √M)
    let g = (4.0 * a * c - b * b) / ((j + root) * (j + root));
    (g, 2.0 * dj * m - j * dm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EccentricityProfile {
    pub params: QzParams,
}

impl EccentricityProfile {
    pub fn new(params: QzParams) -> Self {
        Self { params }
    }

    pub fn coefficients(&self, h: f64) -> QzCoefficients {
        qz_coefficients_unchecked(&self.params, h)
    }

    /// `(A′, B′, C′)` at `h`.
    pub fn derivatives(&self, h: f64) -> [f64; 3] {
        let QzParams { s, t, v, w } = self.params;
        let sv = s - v;
        let l = self.params.newton_y(h);
        let dl = self.params.newton_slope();
        [
            4.0 * sv * sv * (2.0 * l * dl + 2.0 * w / sv),
            4.0 * sv * (4.0 * (1.0 + w - t) * h + (v * t - w * s - s - 2.0 * v)),
            8.0 * sv * sv * h,
        ]
    }

    pub fn j(&self, h: f64) -> f64 {
        let k = self.coefficients(h);
        k.a + k.c
    }

    pub fn m(&self, h: f64) -> f64 {
        let k = self.coefficients(h);
        (k.a - k.c) * (k.a - k.c) + k.b * k.b
    }

    /// `b²/a²` of the member centered at `h`.
    pub fn g(&self, h: f64) -> f64 {
        let k = self.coefficients(h);
        ratio_and_slope([k.a, k.b, k.c], self.derivatives(h)).0
    }

    /// `p(h) = 2J′M − JM′`.
    pub fn p(&self, h: f64) -> f64 {
        let k = self.coefficients(h);
        ratio_and_slope([k.a, k.b, k.c], self.derivatives(h)).1
    }

    /// `K = (s² + t²)v² − 2wstv + 2s²w²`.
    pub fn k(&self) -> f64 {
        let QzParams { s, t, v, w } = self.params;
        (s * s + t * t) * v * v - 2.0 * w * s * t * v + 2.0 * s * s * w * w
    }

    /// Coefficients `[h², h, 1]` of `o(h) = −2(s²+t²)(s−v)h² − 2Kh + sK`.
    pub fn o_coefficients(&self) -> [f64; 3] {
        let QzParams { s, t, v, .. } = self.params;
        let k = self.k();
        [-2.0 * (s * s + t * t) * (s - v), -2.0 * k, s * k]
    }

    pub fn o(&self, h: f64) -> f64 {
        let [a, b, c] = self.o_coefficients();
        (a * h + b) * h + c
    }

    /// `256h((s−v)/s)⁴(vt−ws)²(s−h)o(h)`, equal to `p(h)` on type 1 frames.
    pub fn p_factored(&self, h: f64) -> f64 {
        let QzParams { s, t, v, w } = self.params;
        let r = (s - v) / s;
        let x = v * t - w * s;
        256.0 * h * r.powi(4) * x * x * (s - h) * self.o(h)
    }
}

fn require_type1(p: &QzParams) -> Result<(), MinEccError> {
    match p.mdq_type() {
        MdqType::Type1 | MdqType::Both => Ok(()),
        _ => Err(MinEccError::NotType1Frame),
    }
}

/// `K` and the coefficients of `o`.
pub fn k_and_o(p: &QzParams) -> Result<(f64, [f64; 3]), MinEccError> {
    require_type1(p)?;
    let prof = EccentricityProfile::new(*p);
    Ok((prof.k(), prof.o_coefficients()))
}

/// Root of `o` in `I`, in the cancellation-free form
/// `sK / (K + √(K² + 2(s²+t²)s(s−v)K))`.
pub(crate) fn h_plus_formula(p: &QzParams) -> f64 {
    let QzParams { s, t, v, .. } = *p;
    let k = EccentricityProfile::new(*p).k();
    let sigma = s * s + t * t;
    s * k / (k + (k * k + 2.0 * sigma * s * (s - v) * k).sqrt())
}

pub fn h_plus(p: &QzParams) -> Result<f64, MinEccError> {
    require_type1(p)?;
    Ok(h_plus_formula(p))
}

/// `A, B, C` at `h₊` from their simplified closed forms.
pub fn coefficients_at_h_plus(p: &QzParams) -> Result<[f64; 3], MinEccError> {
    let h = h_plus(p)?;
    let QzParams { s, t, w, .. } = *p;
    let k = EccentricityProfile::new(*p).k();
    let sigma = s * s + t * t;
    let f = (w - t + 1.0) * (2.0 * h - s);
    Ok([
        2.0 * (t * t * k - 2.0 * w * s * s * sigma) / (s * t * sigma) * f,
        -4.0 * w * s * s * (w * sigma + s * s - t * t) / (t * t * sigma) * f,
        2.0 * s * k / (t * sigma) * f,
    ])
}
