//! The inscribed ellipse of minimal eccentricity.
//!
//! Tangential quads get their incircle. Midpoint diagonal quads use the
//! closed-form optimum `h₊` in a type 1 `Q_z` frame. Parallelograms and all
//! other quads fall back to a numeric search over the family; for general
//! quads that search assumes the eccentricity has a single minimum.

mod profile;
mod search;

pub use profile::{coefficients_at_h_plus, h_plus, k_and_o, EccentricityProfile};
pub use search::{golden_section_max, polish_by_slope, PRESCAN};

use serde::{Deserialize, Serialize};

use crate::geom::{classify_conic, diameter_endpoints, Conic, Direction, Point};
use crate::inscribed::{
    inscribed_ellipse_with, parallelogram_quadratic, FamilyParam, InscribedEllipseReport, InscribedError, TangencyReport,
};
use crate::quad::{to_parallelogram, to_qz, FrameParams, ParallelogramParams, QuadClassification, Quadrilateral, QzParams};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MinEccError {
    #[error("frame parameters are not a type 1 midpoint diagonal quadrilateral")]
    NotType1Frame,
    #[error(transparent)]
    Inscribed(#[from] InscribedError),
}

impl From<crate::quad::QuadError> for MinEccError {
    fn from(e: crate::quad::QuadError) -> Self {
        MinEccError::Inscribed(e.into())
    }
}

impl From<crate::geom::GeomError> for MinEccError {
    fn from(e: crate::geom::GeomError) -> Self {
        MinEccError::Inscribed(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinEccMode {
    Incircle,
    ClosedForm,
    Numeric,
}

impl MinEccMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MinEccMode::Incircle => "incircle",
            MinEccMode::ClosedForm => "closed_form",
            MinEccMode::Numeric => "numeric",
        }
    }
}

pub const UNIQUENESS_WARNING: &str =
    "not a midpoint diagonal quadrilateral: numeric minimum over the family, assuming the eccentricity has a single local minimum";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinEccResult {
    pub mode: MinEccMode,
    /// Optimal center abscissa in the `Q_z` frame (absent for parallelograms).
    pub h_plus: Option<f64>,
    pub ellipse: InscribedEllipseReport,
    pub eccentricity: f64,
    /// Diameters along `D1` and `D2`, each as `center ∓ τ·d`.
    pub equal_diameters: [(Point, Point); 2],
    pub diagonal_directions: [Direction; 2],
    pub is_circle: bool,
    /// `|P1P2| − |P3P4|` relative to the longer one.
    pub length_gap: f64,
    /// `d1ᵀ M d2 / √(d1ᵀ M d1 · d2ᵀ M d2)`: zero for conjugate directions.
    pub conjugacy_residual: f64,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MinEccOptions {
    /// Use the numeric search even when a closed form exists.
    pub force_numeric: bool,
    /// Skip bisection on the derivative sign after the golden-section search.
    pub no_polish: bool,
}

pub fn min_ecc_ellipse(q: &Quadrilateral) -> Result<MinEccResult, MinEccError> {
    min_ecc_ellipse_with(q, MinEccOptions::default(), &Tolerances::default())
}

pub fn min_ecc_ellipse_with(
    q: &Quadrilateral,
    opts: MinEccOptions,
    tol: &Tolerances,
) -> Result<MinEccResult, MinEccError> {
    let class = q.classify_with(tol);
    if class.is_tangential && !opts.force_numeric {
        return incircle(q, &class);
    }
    if class.is_parallelogram {
        let frame = to_parallelogram(q)?;
        let FrameParams::Parallelogram(p) = frame.params else { unreachable!() };
        let v = numeric_v_plus(&p, !opts.no_polish);
        let ellipse = inscribed_ellipse_with(q, FamilyParam::V(v), tol)?;
        return Ok(finish(MinEccMode::Numeric, None, ellipse, q, None));
    }
    let frame = to_qz(q)?;
    let FrameParams::Qz(p) = frame.params else { unreachable!() };
    let (mode, h, warning) = if class.mdq_type.is_mdq() && !opts.force_numeric {
        (MinEccMode::ClosedForm, profile::h_plus_formula(&p), None)
    } else {
        let warning = (!class.mdq_type.is_mdq()).then(|| UNIQUENESS_WARNING.to_string());
        (MinEccMode::Numeric, numeric_h_plus(&p, !opts.no_polish), warning)
    };
    let ellipse = inscribed_ellipse_with(q, FamilyParam::H(h), tol)?;
    Ok(finish(mode, Some(h), ellipse, q, warning))
}

/// Maximizer of `G` over `I` by prescan plus golden section, optionally
/// refined by bisection on the sign of `p`.
pub fn numeric_h_plus(p: &QzParams, polish: bool) -> f64 {
    let prof = EccentricityProfile::new(*p);
    let (lo, hi) = p.interval();
    let h = golden_section_max(|h| prof.g(h), lo, hi, 1e-12);
    if polish {
        polish_by_slope(|h| prof.p(h), h, lo, hi, 1e-6 * (hi - lo))
    } else {
        h
    }
}

/// `b²/a²` of the parallelogram family member `v`.
pub fn parallelogram_ratio(p: &ParallelogramParams, v: f64) -> f64 {
    let (abc, dabc) = parallelogram_quadratic(p, v);
    profile::ratio_and_slope(abc, dabc).0
}

pub fn numeric_v_plus(p: &ParallelogramParams, polish: bool) -> f64 {
    let f = |v: f64| {
        let (abc, dabc) = parallelogram_quadratic(p, v);
        profile::ratio_and_slope(abc, dabc)
    };
    let v = golden_section_max(|v| f(v).0, -1.0, 1.0, 1e-12);
    if polish {
        polish_by_slope(|v| f(v).1, v, -1.0, 1.0, 1e-6)
    } else {
        v
    }
}

fn finish(
    mode: MinEccMode,
    h_plus: Option<f64>,
    ellipse: InscribedEllipseReport,
    q: &Quadrilateral,
    warning: Option<String>,
) -> MinEccResult {
    let dirs = [q.d1_direction(), q.d2_direction()];
    let info = &ellipse.info;
    let p12 = diameter_endpoints(info, dirs[0]);
    let p34 = diameter_endpoints(info, dirs[1]);
    let (l1, l2) = (p12.0.distance(p12.1), p34.0.distance(p34.1));
    let (u, w) = (dirs[0].as_vector(), dirs[1].as_vector());
    let m = info.conic;
    let conjugacy = m.bilinear(u, w) / (m.quadratic_form(u) * m.quadratic_form(w)).sqrt();
    MinEccResult {
        mode,
        h_plus,
        eccentricity: info.eccentricity,
        is_circle: info.is_circle(1e-9),
        equal_diameters: [p12, p34],
        diagonal_directions: dirs,
        length_gap: (l1 - l2).abs() / l1.max(l2),
        conjugacy_residual: conjugacy,
        warning,
        ellipse,
    }
}

fn incircle(q: &Quadrilateral, class: &QuadClassification) -> Result<MinEccResult, MinEccError> {
    let (center, r) = q.incircle();
    let conic = Conic::new(
        1.0,
        0.0,
        1.0,
        -2.0 * center.x,
        -2.0 * center.y,
        center.x * center.x + center.y * center.y - r * r,
    )?;
    let info = classify_conic(conic)?;
    let points = q.side_lines().map(|l| l.project(center));
    let (frame, param, h) = if class.is_parallelogram {
        let frame = to_parallelogram(q)?;
        let FrameParams::Parallelogram(p) = frame.params else { unreachable!() };
        // q1 = (−l + dv, kv) is the touch point on frame side 1
        let q1 = frame.frame_from_world().apply_point(points[frame.world_index(0)]);
        (frame, FamilyParam::V(q1.y / p.k), None)
    } else {
        let frame = to_qz(q)?;
        let h = frame.frame_from_world().apply_point(center).x;
        (frame, FamilyParam::H(h), Some(h))
    };
    let ellipse = InscribedEllipseReport {
        quad: *q,
        conic: info.conic,
        info,
        frame,
        param,
        h,
        q: None,
        tangency: TangencyReport::new(points),
        center,
    };
    let mut out = finish(MinEccMode::Incircle, h, ellipse, q, None);
    out.is_circle = true;
    out.eccentricity = 0.0;
    Ok(out)
}
