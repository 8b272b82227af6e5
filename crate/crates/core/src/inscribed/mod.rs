//! The one-parameter family of ellipses inscribed in a convex quadrilateral.
//!
//! Non-parallelograms are parameterized by the center abscissa `h` in the
//! `Q_z` frame (or by the tangency parameter `q` in the `Q_{s,t}` frame);
//! parallelograms by `v ∈ (−1, 1)`.

mod parallelogram;
mod qst;
mod qz;

pub use parallelogram::{parallelogram_ellipse, parallelogram_tangency};
pub(crate) use parallelogram::parallelogram_quadratic;
pub use qst::{qst_ellipse, qst_h_from_q, qst_q_from_h, qst_tangency};
pub use qz::{qz_coefficients, qz_coefficients_unchecked, qz_ellipse, QzCoefficients};

use serde::{Deserialize, Serialize};

use crate::geom::{classify_conic, line_tangency_point, Conic, EllipseInfo, GeomError, Point, Slope};
use crate::quad::{to_parallelogram, to_qst, to_qz, FrameEmbedding, FrameParams, QuadError, Quadrilateral};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InscribedError {
    #[error("{name} must lie in ({lo},{hi})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("{0}")]
    WrongParameter(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl InscribedError {
    pub(crate) fn out_of_range(name: &'static str, value: f64, (lo, hi): (f64, f64)) -> Self {
        InscribedError::ParameterOutOfRange { name, value, lo, hi }
    }
}

/// Slopes of the tangency chords.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordSlopes {
    pub q1q2: Slope,
    pub q2q3: Slope,
    pub q3q4: Slope,
    pub q1q4: Slope,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangencyReport {
    /// `q_j` lies on side `S_j`.
    pub points: [Point; 4],
    pub chords: ChordSlopes,
}

impl TangencyReport {
    pub fn new(points: [Point; 4]) -> Self {
        let [q1, q2, q3, q4] = points;
        Self {
            points,
            chords: ChordSlopes {
                q1q2: Slope::between(q1, q2),
                q2q3: Slope::between(q2, q3),
                q3q4: Slope::between(q3, q4),
                q1q4: Slope::between(q1, q4),
            },
        }
    }
}

/// Selects a member of the inscribed family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyParam {
    /// Center abscissa in the `Q_z` frame.
    H(f64),
    /// Bottom-side tangency abscissa in the `Q_{s,t}` frame.
    Q(f64),
    /// Parallelogram family parameter.
    V(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InscribedEllipseReport {
    pub quad: Quadrilateral,
    /// World-frame conic, normalized.
    pub conic: Conic,
    pub info: EllipseInfo,
    pub frame: FrameEmbedding,
    pub param: FamilyParam,
    /// Center abscissa in the frame (`Q_z` or `Q_{s,t}`).
    pub h: Option<f64>,
    pub q: Option<f64>,
    /// World tangency points, `q_j` on world side `S_j`.
    pub tangency: TangencyReport,
    /// Center given by the family parameter, mapped to the world frame.
    /// `info.center` is the one extracted from the conic.
    pub center: Point,
}

/// Tangency points of `info` with the four sides of `quad`.
pub fn tangency_points(info: &EllipseInfo, quad: &Quadrilateral, tol: f64) -> Result<[Point; 4], GeomError> {
    let lines = quad.side_lines();
    let mut out = [Point::ORIGIN; 4];
    for (slot, line) in out.iter_mut().zip(lines) {
        *slot = line_tangency_point(info, line, tol)?;
    }
    Ok(out)
}

pub fn inscribed_ellipse(quad: &Quadrilateral, param: FamilyParam) -> Result<InscribedEllipseReport, InscribedError> {
    inscribed_ellipse_with(quad, param, &Tolerances::default())
}

pub fn inscribed_ellipse_with(
    quad: &Quadrilateral,
    param: FamilyParam,
    tol: &Tolerances,
) -> Result<InscribedEllipseReport, InscribedError> {
    let is_parallelogram = quad.classify_with(tol).is_parallelogram;
    let (frame, frame_conic, frame_points, frame_center, h, q) = match (param, is_parallelogram) {
        (FamilyParam::V(v), true) => {
            let frame = to_parallelogram(quad)?;
            let FrameParams::Parallelogram(p) = frame.params else { unreachable!() };
            let conic = parallelogram_ellipse(&p, v)?;
            let points = parallelogram_tangency(&p, v)?.points;
            (frame, conic, points, Point::ORIGIN, None, None)
        }
        (FamilyParam::H(h), false) => {
            let frame = to_qz(quad)?;
            let FrameParams::Qz(p) = frame.params else { unreachable!() };
            let conic = qz_ellipse(&p, h)?;
            let info = classify_conic(conic)?;
            let points = tangency_points(&info, &p.quad(), tol.tangency)?;
            (frame, conic, points, Point::new(h, p.newton_y(h)), Some(h), None)
        }
        (FamilyParam::Q(q), false) => {
            let frame = to_qst(quad)?;
            let FrameParams::Qst(p) = frame.params else { unreachable!() };
            let conic = qst_ellipse(&p, q)?;
            let points = qst_tangency(&p, q)?.points;
            let h = qst_h_from_q(&p, q)?;
            (frame, conic, points, Point::new(h, p.newton_y(h)), Some(h), Some(q))
        }
        (FamilyParam::V(_), false) => {
            return Err(InscribedError::WrongParameter(
                "v selects a parallelogram's inscribed ellipse; use h or q".into(),
            ))
        }
        (_, true) => {
            return Err(InscribedError::WrongParameter(
                "a parallelogram's inscribed ellipses are selected with v".into(),
            ))
        }
    };
    let map = frame.world_from_frame;
    let conic = map.apply_conic(&frame_conic);
    let info = classify_conic(conic)?;
    let points = frame.to_world_order(frame_points.map(|p| map.apply_point(p)));
    Ok(InscribedEllipseReport {
        quad: *quad,
        conic: info.conic,
        center: map.apply_point(frame_center),
        info,
        frame,
        param,
        h,
        q,
        tangency: TangencyReport::new(points),
    })
}
