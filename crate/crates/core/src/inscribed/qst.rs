//! The inscribed family in the affine frame `Q_{s,t}`, parameterized by the
//! abscissa `q ∈ (0, 1)` of the tangency point on the bottom side.

use super::{InscribedError, TangencyReport};
use crate::geom::{Conic, Point};
use crate::quad::QstParams;

fn check_q(q: f64) -> Result<(), InscribedError> {
    if q.is_finite() && 0.0 < q && q < 1.0 {
        Ok(())
    } else {
        Err(InscribedError::out_of_range("q", q, (0.0, 1.0)))
    }
}

pub fn qst_ellipse(p: &QstParams, q: f64) -> Result<Conic, InscribedError> {
    check_q(q)?;
    let (s, t) = (p.s, p.t);
    let m = (1.0 - q) * s + q * t;
    Ok(Conic::new(
        t * t,
        4.0 * q * q * (t - 1.0) * t + 2.0 * q * t * (s - t + 2.0) - 2.0 * s * t,
        m * m,
        -2.0 * q * t * t,
        -2.0 * q * t * m,
        q * q * t * t,
    )?)
}

/// Tangency points on `S1..S4` in closed form.
pub fn qst_tangency(p: &QstParams, q: f64) -> Result<TangencyReport, InscribedError> {
    check_q(q)?;
    let (s, t) = (p.s, p.t);
    let d2 = (t - 1.0) * (s + t) * q + s;
    let d3 = (s + t - 2.0) * q + 1.0;
    let q1 = Point::new(0.0, q * t / ((t - s) * q + s));
    let q2 = Point::new((1.0 - q) * s * s / d2, t * (s + q * (t - 1.0)) / d2);
    let q3 = Point::new((s + q * (t - 1.0)) / d3, (1.0 - q) * t / d3);
    let q4 = Point::new(q, 0.0);
    Ok(TangencyReport::new([q1, q2, q3, q4]))
}

pub fn qst_h_from_q(p: &QstParams, q: f64) -> Result<f64, InscribedError> {
    check_q(q)?;
    let (s, t) = (p.s, p.t);
    Ok(0.5 * (q * (t - s) + s) / (q * (t - 1.0) + 1.0))
}

pub fn qst_q_from_h(p: &QstParams, h: f64) -> Result<f64, InscribedError> {
    let (lo, hi) = p.interval();
    if !(h.is_finite() && lo < h && h < hi) {
        return Err(InscribedError::out_of_range("h", h, (lo, hi)));
    }
    let (s, t) = (p.s, p.t);
    Ok((s - 2.0 * h) / (2.0 * (t - 1.0) * h + s - t))
}
