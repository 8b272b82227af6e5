//! The inscribed family of a centered parallelogram, parameterized by
//! `v ∈ (−1, 1)`.
//!
//! The parallelogram is the image of the square `[−1, 1]²` under
//! `T(X, Y) = (lX + dY, kY)`, and the ellipses inscribed in the square are
//! `X² + 2vXY + Y² = 1 − v²`, touching `X = −1` at `Y = v`. Pulling back
//! through `T⁻¹` gives the family in closed form.

use super::{InscribedError, TangencyReport};
use crate::geom::{Conic, Point};
use crate::quad::ParallelogramParams;

fn check_v(v: f64) -> Result<(), InscribedError> {
    if v.is_finite() && -1.0 < v && v < 1.0 {
        Ok(())
    } else {
        Err(InscribedError::out_of_range("v", v, (-1.0, 1.0)))
    }
}

pub fn parallelogram_tangency(p: &ParallelogramParams, v: f64) -> Result<TangencyReport, InscribedError> {
    check_v(v)?;
    let ParallelogramParams { l, k, d } = *p;
    Ok(TangencyReport::new([
        Point::new(-l + d * v, k * v),
        Point::new(-l * v + d, k),
        Point::new(l - d * v, -k * v),
        Point::new(l * v - d, -k),
    ]))
}

/// Quadratic part `(A, B, C)` of member `v`, multiplied through by `l²` so
/// only ratios of the parameters appear, and its derivative in `v`.
pub(crate) fn parallelogram_quadratic(p: &ParallelogramParams, v: f64) -> ([f64; 3], [f64; 3]) {
    let (dk, lk) = (p.d / p.k, p.l / p.k);
    let abc = [1.0, -2.0 * dk + 2.0 * v * lk, dk * dk - 2.0 * v * dk * lk + lk * lk];
    let dabc = [0.0, 2.0 * lk, -2.0 * dk * lk];
    (abc, dabc)
}

pub fn parallelogram_ellipse(p: &ParallelogramParams, v: f64) -> Result<Conic, InscribedError> {
    check_v(v)?;
    let ([a, b, c], _) = parallelogram_quadratic(p, v);
    Ok(Conic::new(a, b, c, 0.0, 0.0, -(1.0 - v * v) * p.l * p.l)?)
}
