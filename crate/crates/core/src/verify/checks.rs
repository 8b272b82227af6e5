//! Individual checks. Each returns a [`CheckReport`] whose residuals carry
//! their own tolerances.

use super::{CheckId, CheckReport, Residual, Witness};
use crate::geom::{
    conjugate_direction, focal_tangency_point, marden_inellipse, Direction, GeomError, Line, MardenInput, Point,
};
use crate::inscribed::InscribedEllipseReport;
use crate::min_ecc::{min_ecc_ellipse_with, parallelogram_ratio, EccentricityProfile, MinEccMode, MinEccOptions};
use crate::quad::{to_qst, FrameParams, MdqType, QstParams, Quadrilateral, QzParams};
use crate::tol::Tolerances;

/// Sine of the angle between a chord and the diagonal it should parallel.
pub const PARALLEL_TOL: f64 = 1e-9;
/// Smallest chord/diagonal sine accepted as "not parallel".
pub const T2_GAP: f64 = 1e-6;
/// Smallest angle (radians) between the conjugate of `D1` and `D2` accepted
/// as "not parallel".
pub const T1_GAP: f64 = 1e-4;

/// Whether non-MDQ inputs get negative assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeMode {
    Assert,
    Skip,
}

fn witness(report: &InscribedEllipseReport) -> Witness {
    Witness {
        vertices: report.quad.vertices(),
        param: Some(report.param),
        note: None,
    }
}

fn quad_witness(q: &Quadrilateral) -> Witness {
    Witness {
        vertices: q.vertices(),
        param: None,
        note: None,
    }
}

/// Distance in `(s, t)` from the two MDQ lines `s = t` and `s + t = 2` of
/// the quad's `Q_{s,t}` frame. Zero for parallelograms.
pub fn mdq_margin(q: &Quadrilateral) -> f64 {
    match to_qst(q) {
        Ok(f) => match f.params {
            FrameParams::Qst(p) => (p.s - p.t).abs().min((p.s + p.t - 2.0).abs()),
            _ => 0.0,
        },
        Err(_) => 0.0,
    }
}

/// The center lies on the open segment between the diagonal midpoints.
pub fn check_newton(report: &InscribedEllipseReport, tol: &Tolerances) -> CheckReport {
    let q = &report.quad;
    let c = q.classify_with(tol);
    let scale = q.diameter();
    // the conic's own center, not the one derived from the family parameter
    let center = report.info.center;
    let residuals = if c.is_parallelogram {
        vec![Residual::le("center_distance", center.distance(c.m1), tol.residual * scale)]
    } else {
        let seg = c.m2 - c.m1;
        let line = Line::through(c.m1, c.m2).expect("distinct midpoints");
        let along = (center - c.m1).dot(seg) / seg.norm_sq();
        vec![
            Residual::le("line_distance", line.signed_distance(center).abs(), tol.residual * scale),
            Residual::gt("interior_margin", along.min(1.0 - along), 0.0),
        ]
    };
    CheckReport::from_residuals(CheckId::Newton, residuals, witness(report))
}

fn gap(p: Point, q: Point, d: Direction) -> f64 {
    match Direction::from_points(p, q) {
        Ok(u) => u.sin_angle(d),
        Err(_) => f64::NAN,
    }
}

/// Tangency chords against the diagonals: type 1 makes `q2q3`, `q1q4`
/// parallel to `D2`; type 2 makes `q1q2`, `q3q4` parallel to `D1`; otherwise
/// none of the four is parallel.
pub fn check_t2(report: &InscribedEllipseReport, negative: NegativeMode, tol: &Tolerances) -> CheckReport {
    let q = &report.quad;
    let mdq = q.classify_with(tol).mdq_type;
    let [q1, q2, q3, q4] = report.tangency.points;
    let (d1, d2) = (q.d1_direction(), q.d2_direction());
    let on_d1 = [("q1q2", gap(q1, q2, d1)), ("q3q4", gap(q3, q4, d1))];
    let on_d2 = [("q2q3", gap(q2, q3, d2)), ("q1q4", gap(q1, q4, d2))];
    let mut residuals = Vec::new();
    let positive = |pairs: &[(&str, f64)], out: &mut Vec<Residual>| {
        for (label, g) in pairs {
            out.push(Residual::le(format!("{label}_parallel"), *g, PARALLEL_TOL));
        }
    };
    match mdq {
        MdqType::Type1 => positive(&on_d2, &mut residuals),
        MdqType::Type2 => positive(&on_d1, &mut residuals),
        MdqType::Both => {
            positive(&on_d1, &mut residuals);
            positive(&on_d2, &mut residuals);
        }
        MdqType::None => {
            if negative == NegativeMode::Skip {
                return CheckReport::not_applicable(CheckId::T2, "not a midpoint diagonal quadrilateral; negative checks skipped");
            }
            for (label, g) in on_d1.iter().chain(&on_d2) {
                residuals.push(Residual::gt(format!("{label}_gap"), *g, T2_GAP));
            }
        }
    }
    CheckReport::from_residuals(CheckId::T2, residuals, witness(report))
}

/// The diameter conjugate to `D1` is parallel to `D2` exactly for MDQs.
pub fn check_t1(report: &InscribedEllipseReport, negative: NegativeMode, tol: &Tolerances) -> CheckReport {
    let q = &report.quad;
    let mdq = q.classify_with(tol).mdq_type;
    let u = conjugate_direction(&report.info, q.d1_direction());
    let angle = u.angle_to(q.d2_direction());
    let residuals = if mdq.is_mdq() {
        vec![Residual::le("conjugate_angle", angle, PARALLEL_TOL)]
    } else if negative == NegativeMode::Assert {
        vec![Residual::gt("conjugate_gap", angle, T1_GAP)]
    } else {
        return CheckReport::not_applicable(CheckId::T1, "not a midpoint diagonal quadrilateral; negative checks skipped");
    };
    CheckReport::from_residuals(CheckId::T1, residuals, witness(report))
}

/// Number of family members scanned for the optimality check.
pub const SCAN: usize = 512;

/// The minimal-eccentricity ellipse of an MDQ has equal conjugate diameters
/// along the diagonals, and no scanned family member is rounder.
pub fn check_t3(q: &Quadrilateral, tol: &Tolerances) -> CheckReport {
    let class = q.classify_with(tol);
    if !class.mdq_type.is_mdq() {
        return CheckReport::not_applicable(CheckId::T3, "not a midpoint diagonal quadrilateral");
    }
    let w = quad_witness(q);
    let r = match min_ecc_ellipse_with(q, MinEccOptions::default(), tol) {
        Ok(r) => r,
        Err(e) => return CheckReport::error(CheckId::T3, e.to_string(), w),
    };
    let mut residuals = vec![
        Residual::le("length_gap", r.length_gap, tol.residual),
        Residual::le("conjugacy", r.conjugacy_residual.abs(), tol.residual),
    ];
    let frame = r.ellipse.frame;
    let scan = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64, at: f64| {
        let best = g(at);
        (0..SCAN)
            .map(|i| g(lo + (hi - lo) * (i as f64 + 0.5) / SCAN as f64) - best)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    match (frame.params, r.mode) {
        (_, MinEccMode::Incircle) => {
            residuals.push(Residual::le("eccentricity", r.ellipse.info.eccentricity, tol.residual));
        }
        (FrameParams::Qz(p), _) => {
            let prof = EccentricityProfile::new(p);
            let (lo, hi) = p.interval();
            let h = r.h_plus.expect("Q_z result has h");
            residuals.push(Residual::le("optimality_slack", scan(&|x| prof.g(x), lo, hi, h), 1e-12));
            let [a, b, c] = prof.o_coefficients();
            let o_scale = (a * h * h).abs() + (b * h).abs() + c.abs();
            residuals.push(Residual::le("o_root", prof.o(h).abs() / o_scale, 1e-10));
        }
        (FrameParams::Parallelogram(p), _) => {
            let crate::inscribed::FamilyParam::V(v) = r.ellipse.param else {
                return CheckReport::error(CheckId::T3, "parallelogram without v".into(), w);
            };
            residuals.push(Residual::le(
                "optimality_slack",
                scan(&|x| parallelogram_ratio(&p, x), -1.0, 1.0, v),
                1e-12,
            ));
        }
        (FrameParams::Qst(_), _) => unreachable!("min-ecc never uses the affine frame"),
    }
    CheckReport::from_residuals(CheckId::T3, residuals, w)
}

fn params_witness(p: &QzParams, h: f64) -> Witness {
    Witness {
        vertices: p.vertices(),
        param: Some(crate::inscribed::FamilyParam::H(h)),
        note: None,
    }
}

/// `J² − M = 16(s−v)²R`.
pub fn check_jmr(p: &QzParams, h: f64) -> CheckReport {
    let prof = EccentricityProfile::new(*p);
    let (j, m) = (prof.j(h), prof.m(h));
    let rhs = 16.0 * (p.s - p.v).powi(2) * prof.coefficients(h).r;
    let scale = (j * j).max(m).max(rhs.abs());
    let residuals = vec![Residual::le("jmr", (j * j - m - rhs).abs() / scale, 1e-9)];
    CheckReport::from_residuals(CheckId::Jmr, residuals, params_witness(p, h))
}

/// `R(h) > 0` on the open interval.
pub fn check_r_positive(p: &QzParams, h: f64) -> CheckReport {
    let r = EccentricityProfile::new(*p).coefficients(h).r;
    CheckReport::from_residuals(CheckId::RPositive, vec![Residual::gt("r", r, 0.0)], params_witness(p, h))
}

/// For type 1 frames: `h₊ ∈ I`, `o(h₊) = 0`,
/// `h₊² = (s−2h₊)K/(2(s²+t²)(s−v))`, and `p(h)` equals its factored form.
pub fn check_h0sq(p: &QzParams, h: f64) -> CheckReport {
    if p.mdq_type() != MdqType::Type1 {
        return CheckReport::not_applicable(CheckId::H0sq, "frame is not type 1");
    }
    let prof = EccentricityProfile::new(*p);
    let hp = crate::min_ecc::h_plus(p).expect("type 1");
    let (lo, hi) = p.interval();
    let QzParams { s, t, v, .. } = *p;
    let k = prof.k();
    let rhs = (s - 2.0 * hp) * k / (2.0 * (s * s + t * t) * (s - v));
    let [a, b, c] = prof.o_coefficients();
    let o_scale = (a * hp * hp).abs() + (b * hp).abs() + c.abs();
    let coeffs = prof.coefficients(h);
    let d = prof.derivatives(h);
    let (jj, m) = (coeffs.a + coeffs.c, prof.m(h));
    let dj = d[0] + d[2];
    let dm = 2.0 * (coeffs.a - coeffs.c) * (d[0] - d[2]) + 2.0 * coeffs.b * d[1];
    let p_scale = (2.0 * dj * m).abs().max((jj * dm).abs());
    let residuals = vec![
        Residual::gt("h_plus_inside", (hp - lo).min(hi - hp) / (hi - lo), 0.0),
        Residual::le("o_root", prof.o(hp).abs() / o_scale, 1e-10),
        Residual::le("h0sq", (hp * hp - rhs).abs() / (hp * hp).max(rhs.abs()), 1e-10),
        Residual::le("dgo", (prof.p(h) - prof.p_factored(h)).abs() / p_scale, 1e-8),
    ];
    CheckReport::from_residuals(CheckId::H0sq, residuals, params_witness(p, h))
}

fn midpoint_gap(q: &Quadrilateral) -> f64 {
    let c = q.classify();
    let p = c.diagonal_intersection;
    p.distance(c.m1).min(p.distance(c.m2)) / q.diameter()
}

/// Tangential MDQs are orthodiagonal kites.
pub fn check_l3(q: &Quadrilateral, tol: &Tolerances) -> CheckReport {
    let c = q.classify_with(tol);
    if !(c.is_tangential && c.mdq_type.is_mdq()) {
        return CheckReport::not_applicable(CheckId::L3, "not a tangential midpoint diagonal quadrilateral");
    }
    let (a, b, cc, d) = q.side_lengths();
    let diam = q.diameter();
    let kite = ((a - b).abs().max((cc - d).abs())).min((b - cc).abs().max((d - a).abs())) / diam;
    let dot = q.d1_direction().as_vector().dot(q.d2_direction().as_vector()).abs();
    let residuals = vec![
        Residual::le("orthodiagonal", dot, tol.residual),
        Residual::le("kite", kite, tol.residual),
    ];
    CheckReport::from_residuals(CheckId::L3, residuals, quad_witness(q))
}

/// Tangential orthodiagonal quads are MDQs.
pub fn check_l5(q: &Quadrilateral, tol: &Tolerances) -> CheckReport {
    let c = q.classify_with(tol);
    if !(c.is_tangential && c.is_orthodiagonal) {
        return CheckReport::not_applicable(CheckId::L5, "not tangential and orthodiagonal");
    }
    let residuals = vec![Residual::le("midpoint_gap", midpoint_gap(q), tol.residual)];
    CheckReport::from_residuals(CheckId::L5, residuals, quad_witness(q))
}

/// A trapezoid that is an MDQ is a parallelogram.
pub fn check_mdqtrap(q: &Quadrilateral, tol: &Tolerances) -> CheckReport {
    let c = q.classify_with(tol);
    if !(c.is_trapezoid && !c.is_parallelogram) {
        return CheckReport::not_applicable(CheckId::Mdqtrap, "not a trapezoid");
    }
    let residuals = vec![Residual::gt("midpoint_gap", midpoint_gap(q), tol.residual)];
    CheckReport::from_residuals(CheckId::Mdqtrap, residuals, quad_witness(q))
}

/// Tangency point on the bottom side of `Q_{s,t}` for the member centered
/// at abscissa `h`, computed independently through the foci of the same
/// ellipse seen as inscribed in a triangle formed by three of the side
/// lines.
///
/// For `s > 1` the triangle is `A2 A3 A5`, for `s < 1` it is `A1 A4 A5`,
/// where `A5 = (0, −t/(s−1))` is where the lines of `S1` and `S3` meet.
pub fn marden_s4_tangency(p: &QstParams, h: f64) -> Result<Point, GeomError> {
    let (s, t) = (p.s, p.t);
    let a5 = Point::new(0.0, -t / (s - 1.0));
    let tri = if s > 1.0 {
        [Point::new(0.0, 1.0), Point::new(s, t), a5]
    } else {
        [Point::ORIGIN, Point::new(1.0, 0.0), a5]
    };
    let center = Point::new(h, p.newton_y(h));
    let weights = MardenInput::weights_for_center(tri, center)?;
    let out = marden_inellipse(&MardenInput::new(tri, weights)?)?;
    let bottom = Line::new(0.0, 1.0, 0.0)?;
    Ok(focal_tangency_point(out.foci, bottom))
}
