//! The inscribed family in the similarity frame `Q_z`, parameterized by the
//! center abscissa `h`.
//!
//! Every inscribed ellipse has the centered form
//! `A(h)(x−h)² + B(h)(x−h)(y−L(h)) + C(h)(y−L(h))² = R(h)` with center
//! `(h, L(h))` on the Newton line.

use serde::{Deserialize, Serialize};

use super::InscribedError;
use crate::geom::{Conic, Point};
use crate::quad::QzParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QzCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r: f64,
    pub l_of_h: f64,
}

impl QzCoefficients {
    pub fn center(&self, h: f64) -> Point {
        Point::new(h, self.l_of_h)
    }
}

pub(crate) fn check_h(p: &QzParams, h: f64) -> Result<(), InscribedError> {
    let (lo, hi) = p.interval();
    if h.is_finite() && lo < h && h < hi {
        Ok(())
    } else {
        Err(InscribedError::out_of_range("h", h, (lo, hi)))
    }
}

/// `A, B, C, R, L` without the interval check; the polynomials make sense
/// for every `h`.
pub fn qz_coefficients_unchecked(p: &QzParams, h: f64) -> QzCoefficients {
    let QzParams { s, t, v, w } = *p;
    let sv = s - v;
    let l = p.newton_y(h);
    QzCoefficients {
        a: 4.0 * sv * sv * (l * l + w * (2.0 * h - s) / sv),
        b: 4.0 * sv * (2.0 * (1.0 + w - t) * h * h + (v * t - w * s - s - 2.0 * v) * h + v * s),
        c: 4.0 * sv * sv * h * h,
        r: (s - 2.0 * h) * (2.0 * h - v) * (2.0 * (v * (t - 1.0) - w * s) * h + v * s),
        l_of_h: l,
    }
}

pub fn qz_coefficients(p: &QzParams, h: f64) -> Result<QzCoefficients, InscribedError> {
    check_h(p, h)?;
    Ok(qz_coefficients_unchecked(p, h))
}

pub fn qz_ellipse(p: &QzParams, h: f64) -> Result<Conic, InscribedError> {
    let k = qz_coefficients(p, h)?;
    Ok(Conic::centered(k.a, k.b, k.c, k.center(h), k.r)?)
}
