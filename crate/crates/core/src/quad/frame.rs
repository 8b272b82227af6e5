//! Canonical frames.
//!
//! * `Q_{s,t}`: an affine image with vertices `(0,0), (0,1), (s,t), (1,0)`.
//! * `Q_z`: a similarity image with vertices `(0,0), (0,1), (s,t), (v,w)`.
//! * parallelogram: a rigid image with vertices `(−l−d,−k), (−l+d,k),
//!   (l+d,k), (l−d,−k)`.
//!
//! Frames may start from a different vertex than the world quad. Frame
//! vertex `i` is world vertex `(i + shift) % 4`, so frame side `j` is world
//! side `(j + shift) % 4`. Relabelling by one swaps the roles of `D1` and
//! `D2`; this is how vertical parallel sides and type 2 quads are handled.

use serde::{Deserialize, Serialize};

use super::{MdqType, QuadError, Quadrilateral};
use crate::geom::{AffineMap, Line, Point};

fn finite(xs: &[f64]) -> bool {
    xs.iter().all(|x| x.is_finite())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QstParams {
    pub s: f64,
    pub t: f64,
}

impl QstParams {
    /// Requires `s, t > 0`, `s + t > 1`, `s ≠ 1`.
    pub fn new(s: f64, t: f64) -> Result<Self, QuadError> {
        if !finite(&[s, t]) || !(s > 0.0 && t > 0.0 && s + t > 1.0) || (s - 1.0).abs() <= 1e-12 {
            return Err(QuadError::InvalidParams(format!(
                "(s, t) = ({s}, {t}) needs s, t > 0, s + t > 1, s != 1"
            )));
        }
        Ok(Self { s, t })
    }

    pub fn vertices(&self) -> [Point; 4] {
        [
            Point::ORIGIN,
            Point::new(0.0, 1.0),
            Point::new(self.s, self.t),
            Point::new(1.0, 0.0),
        ]
    }

    pub fn quad(&self) -> Quadrilateral {
        Quadrilateral::from_clockwise_unchecked(self.vertices())
    }

    /// Open interval of center abscissae.
    pub fn interval(&self) -> (f64, f64) {
        if self.s < 1.0 {
            (0.5 * self.s, 0.5)
        } else {
            (0.5, 0.5 * self.s)
        }
    }

    /// Newton line `y = L_Q(x)`.
    pub fn newton_y(&self, x: f64) -> f64 {
        let (s, t) = (self.s, self.t);
        0.5 * (s - t + 2.0 * x * (t - 1.0)) / (s - 1.0)
    }

    pub fn mdq_type(&self) -> MdqType {
        let tol = 1e-9 * self.s.abs().max(self.t.abs()).max(1.0);
        MdqType::from_flags((self.s - self.t).abs() <= tol, (self.s + self.t - 2.0).abs() <= tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QzParams {
    pub s: f64,
    pub t: f64,
    pub v: f64,
    pub w: f64,
}

impl QzParams {
    /// Checks the conditions the construction needs: `s, v > 0`, `s ≠ v`,
    /// `v(t−1) + (1−w)s > 0` and `vt − ws > 0`. Together these say the
    /// four points form a clockwise convex quad whose sides `S1`, `S3` are
    /// not parallel. See [`QzParams::is_strict`] for the full conditions.
    pub fn new(s: f64, t: f64, v: f64, w: f64) -> Result<Self, QuadError> {
        let p = Self { s, t, v, w };
        let ok = finite(&[s, t, v, w])
            && s > 0.0
            && v > 0.0
            && (s - v).abs() > 1e-12 * s.max(v)
            && v * (t - 1.0) + (1.0 - w) * s > 0.0
            && v * t - w * s > 0.0;
        if !ok {
            return Err(QuadError::InvalidParams(format!(
                "(s, t, v, w) = ({s}, {t}, {v}, {w}) is not a convex Q_z frame with s != v"
            )));
        }
        Ok(p)
    }

    /// Additionally `t > w` and `ws − v(t−1) ≠ 0` (sides `S2`, `S4` not
    /// parallel), both with a relative margin so that rounding in the frame
    /// map cannot flip the choice of labelling.
    pub fn is_strict(&self) -> bool {
        let (s, t, v, w) = (self.s, self.t, self.v, self.w);
        let scale = self.scale();
        t - w > 1e-12 * scale && (w * s - v * (t - 1.0)).abs() > 1e-12 * scale * scale
    }

    pub fn scale(&self) -> f64 {
        [self.s, self.t, self.v, self.w, 1.0].iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn vertices(&self) -> [Point; 4] {
        [
            Point::ORIGIN,
            Point::new(0.0, 1.0),
            Point::new(self.s, self.t),
            Point::new(self.v, self.w),
        ]
    }

    pub fn quad(&self) -> Quadrilateral {
        Quadrilateral::from_clockwise_unchecked(self.vertices())
    }

    pub fn interval(&self) -> (f64, f64) {
        if self.v < self.s {
            (0.5 * self.v, 0.5 * self.s)
        } else {
            (0.5 * self.s, 0.5 * self.v)
        }
    }

    /// Newton line `y = L(h)` through `(s/2, t/2)` and `(v/2, (w+1)/2)`.
    pub fn newton_y(&self, h: f64) -> f64 {
        self.t / 2.0 + self.newton_slope() * (h - self.s / 2.0)
    }

    pub fn newton_slope(&self) -> f64 {
        (self.w + 1.0 - self.t) / (self.v - self.s)
    }

    pub fn mdq_type(&self) -> MdqType {
        let (s, t, v, w) = (self.s, self.t, self.v, self.w);
        let tol = 1e-9 * self.scale() * self.scale();
        MdqType::from_flags((v * t - (w + 1.0) * s).abs() <= tol, ((t - 2.0) * v - (w - 1.0) * s).abs() <= tol)
    }
}

/// Parallelogram with vertices `(−l−d,−k), (−l+d,k), (l+d,k), (l−d,−k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramParams {
    pub l: f64,
    pub k: f64,
    pub d: f64,
}

impl ParallelogramParams {
    pub fn new(l: f64, k: f64, d: f64) -> Result<Self, QuadError> {
        if !finite(&[l, k, d]) || !(l > 0.0 && k > 0.0 && d.abs() < l) {
            return Err(QuadError::InvalidParams(format!(
                "(l, k, d) = ({l}, {k}, {d}) needs l, k > 0 and |d| < l"
            )));
        }
        Ok(Self { l, k, d })
    }

    pub fn vertices(&self) -> [Point; 4] {
        let (l, k, d) = (self.l, self.k, self.d);
        [
            Point::new(-l - d, -k),
            Point::new(-l + d, k),
            Point::new(l + d, k),
            Point::new(l - d, -k),
        ]
    }

    pub fn quad(&self) -> Quadrilateral {
        Quadrilateral::from_clockwise_unchecked(self.vertices())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    Qst,
    Qz,
    Parallelogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrameParams {
    Qst(QstParams),
    Qz(QzParams),
    Parallelogram(ParallelogramParams),
}

impl FrameParams {
    pub fn vertices(&self) -> [Point; 4] {
        match self {
            FrameParams::Qst(p) => p.vertices(),
            FrameParams::Qz(p) => p.vertices(),
            FrameParams::Parallelogram(p) => p.vertices(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameEmbedding {
    pub params: FrameParams,
    pub world_from_frame: AffineMap,
    /// Frame vertex `i` is world vertex `(i + shift) % 4`.
    pub shift: usize,
    pub similarity: bool,
}

impl FrameEmbedding {
    fn new(params: FrameParams, world_from_frame: AffineMap, shift: usize) -> Self {
        Self {
            params,
            world_from_frame,
            shift,
            similarity: world_from_frame.is_similarity(1e-10),
        }
    }

    pub fn kind(&self) -> FrameKind {
        match self.params {
            FrameParams::Qst(_) => FrameKind::Qst,
            FrameParams::Qz(_) => FrameKind::Qz,
            FrameParams::Parallelogram(_) => FrameKind::Parallelogram,
        }
    }

    pub fn frame_from_world(&self) -> AffineMap {
        self.world_from_frame.inverse()
    }

    pub fn frame_quad(&self) -> Quadrilateral {
        Quadrilateral::from_clockwise_unchecked(self.params.vertices())
    }

    /// World index of frame vertex (or side) `i`.
    pub fn world_index(&self, i: usize) -> usize {
        (i + self.shift) % 4
    }

    /// Reorders per-side frame data into world side order.
    pub fn to_world_order<T: Copy>(&self, frame: [T; 4]) -> [T; 4] {
        let mut out = frame;
        for (i, item) in frame.into_iter().enumerate() {
            out[self.world_index(i)] = item;
        }
        out
    }

    /// The MDQ type read off the frame parameters, expressed for the world
    /// labelling (an odd shift swaps the diagonals).
    pub fn world_mdq_type(&self) -> MdqType {
        let t = mdq_param_test(&self.params);
        if self.shift % 2 == 1 {
            match t {
                MdqType::Type1 => MdqType::Type2,
                MdqType::Type2 => MdqType::Type1,
                other => other,
            }
        } else {
            t
        }
    }
}

/// Exact parameter criteria for the MDQ type.
pub fn mdq_param_test(p: &FrameParams) -> MdqType {
    match p {
        FrameParams::Qst(p) => p.mdq_type(),
        FrameParams::Qz(p) => p.mdq_type(),
        FrameParams::Parallelogram(_) => MdqType::Both,
    }
}

fn solve_columns(e1: Point, e2: Point, r: Point) -> Point {
    let det = e1.cross(e2);
    Point::new(r.cross(e2) / det, e1.cross(r) / det)
}

/// Affine frame sending `A1, A2, A4` to `(0,0), (0,1), (1,0)`.
pub fn to_qst(q: &Quadrilateral) -> Result<FrameEmbedding, QuadError> {
    if q.classify().is_parallelogram {
        return Err(QuadError::IsParallelogram);
    }
    // shift 1 plays the role of the quarter turn used when S1 ∥ S3
    for shift in [0, 1] {
        let [a1, a2, a3, a4] = q.relabeled(shift).vertices();
        let (e1, e2) = (a4 - a1, a2 - a1);
        let st = solve_columns(e1, e2, a3 - a1);
        if let Ok(params) = QstParams::new(st.x, st.y) {
            let map = AffineMap::from_columns(e1, e2, a1).map_err(|_| QuadError::DegenerateVertices)?;
            return Ok(FrameEmbedding::new(FrameParams::Qst(params), map, shift));
        }
    }
    Err(QuadError::UnreachableFrame)
}

fn qz_candidate(q: &Quadrilateral, shift: usize) -> Option<(QzParams, AffineMap)> {
    let r = q.relabeled(shift);
    let [a1, a2, a3, a4] = r.vertices();
    let u = a2 - a1;
    let n = Point::new(u.y, -u.x);
    let n2 = u.norm_sq();
    let frame = |p: Point| {
        let rel = p - a1;
        Point::new(rel.dot(n) / n2, rel.dot(u) / n2)
    };
    let (st, vw) = (frame(a3), frame(a4));
    let params = QzParams::new(st.x, st.y, vw.x, vw.y).ok()?;
    let map = AffineMap::from_columns(n, u, a1).ok()?;
    Some((params, map))
}

/// Similarity frame with `A1 → (0,0)`, `A2 → (0,1)`.
///
/// Type 1 quads keep their diagonals (shift 0 or 2), type 2 quads are
/// relabelled by one vertex so the frame is type 1. Labellings meeting every
/// frame condition are preferred; otherwise the first one meeting the
/// constructive subset is used (trapezoids can never have both side pairs
/// non-parallel).
pub fn to_qz(q: &Quadrilateral) -> Result<FrameEmbedding, QuadError> {
    let c = q.classify();
    if c.is_parallelogram {
        return Err(QuadError::IsParallelogram);
    }
    let shifts: &[usize] = match c.mdq_type {
        MdqType::Type1 => &[0, 2],
        MdqType::Type2 => &[1, 3],
        _ => &[0, 1, 2, 3],
    };
    let candidates: Vec<_> = shifts
        .iter()
        .filter_map(|&s| qz_candidate(q, s).map(|(p, m)| (s, p, m)))
        .collect();
    let pick = candidates
        .iter()
        .find(|(_, p, _)| p.is_strict())
        .or_else(|| candidates.first())
        .ok_or(QuadError::UnreachableFrame)?;
    let (shift, params, map) = *pick;
    Ok(FrameEmbedding::new(FrameParams::Qz(params), map, shift))
}

/// Rigid frame centering a parallelogram with its longer side pair
/// horizontal; this guarantees `|d| < l`.
pub fn to_parallelogram(q: &Quadrilateral) -> Result<FrameEmbedding, QuadError> {
    if !q.classify().is_parallelogram {
        return Err(QuadError::NotParallelogram);
    }
    let (_, b, c, _) = q.side_lengths();
    let shift = if c >= b { 0 } else { 1 };
    let r = q.relabeled(shift);
    let [a1, a2, a3, a4] = r.vertices();
    let center = Point::new(
        0.25 * (a1.x + a2.x + a3.x + a4.x),
        0.25 * (a1.y + a2.y + a3.y + a4.y),
    );
    let ex = a3 - a2;
    let ex = ex * (1.0 / ex.norm());
    let ey = ex.perp();
    let map = AffineMap::from_columns(ex, ey, center).map_err(|_| QuadError::DegenerateVertices)?;
    let frame = |p: Point| {
        let rel = p - center;
        Point::new(rel.dot(ex), rel.dot(ey))
    };
    let (f2, f3) = (frame(a2), frame(a3));
    let f1 = frame(a1);
    let f4 = frame(a4);
    let l = 0.25 * ((f3.x - f2.x) + (f4.x - f1.x));
    let k = 0.25 * ((f2.y - f1.y) + (f3.y - f4.y));
    let d = 0.25 * ((f2.x + f3.x) - (f1.x + f4.x));
    let params = ParallelogramParams::new(l, k, d)?;
    Ok(FrameEmbedding::new(FrameParams::Parallelogram(params), map, shift))
}

/// Newton line data: world midpoints and line, plus the center interval
/// and `y = slope·x + intercept` in the frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonLine {
    pub m1: Point,
    pub m2: Point,
    pub line: Line,
    pub interval: (f64, f64),
    pub slope: f64,
    pub intercept: f64,
}

impl NewtonLine {
    pub fn contains_abscissa(&self, h: f64) -> bool {
        self.interval.0 < h && h < self.interval.1
    }
}

pub fn newton_segment(q: &Quadrilateral, frame: &FrameEmbedding) -> Result<NewtonLine, QuadError> {
    let c = q.classify();
    let (interval, slope, intercept) = match frame.params {
        FrameParams::Parallelogram(_) => None,
        _ if c.is_parallelogram => None,
        FrameParams::Qst(p) => Some((p.interval(), (p.t - 1.0) / (p.s - 1.0), p.newton_y(0.0))),
        FrameParams::Qz(p) => Some((p.interval(), p.newton_slope(), p.newton_y(0.0))),
    }
    .ok_or(QuadError::ParallelogramDegenerate {
        center: c.m1.midpoint(c.m2),
    })?;
    let line = Line::through(c.m1, c.m2).map_err(|_| QuadError::ParallelogramDegenerate {
        center: c.m1.midpoint(c.m2),
    })?;
    Ok(NewtonLine {
        m1: c.m1,
        m2: c.m2,
        line,
        interval,
        slope,
        intercept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Quadrilateral {
        Quadrilateral::canonicalize(
            [(0.0, 0.0), (0.0, 1.0), (8.0, 4.0), (6.0, 2.0)].map(Point::from),
        )
        .unwrap()
    }

    #[test]
    fn example_qz_frame_is_identity() {
        let f = to_qz(&example()).unwrap();
        assert_eq!(f.world_from_frame, AffineMap::IDENTITY);
        assert_eq!(f.params, FrameParams::Qz(QzParams { s: 8.0, t: 4.0, v: 6.0, w: 2.0 }));
        assert!(f.similarity && f.shift == 0);
        assert_eq!(mdq_param_test(&f.params), MdqType::Type1);
    }

    #[test]
    fn example_newton_segment() {
        let q = example();
        let f = to_qz(&q).unwrap();
        let n = newton_segment(&q, &f).unwrap();
        assert_eq!(n.interval, (3.0, 4.0));
        assert_eq!((n.slope, n.intercept), (0.5, 0.0));
    }

    #[test]
    fn example_qst_frame() {
        let q = example();
        let f = to_qst(&q).unwrap();
        let m = f.world_from_frame;
        assert_eq!(m.apply_point(Point::new(1.0, 0.0)), Point::new(6.0, 2.0));
        assert_eq!(m.apply_point(Point::new(0.0, 1.0)), Point::new(0.0, 1.0));
        let FrameParams::Qst(p) = f.params else { panic!() };
        assert!((p.s - 4.0 / 3.0).abs() < 1e-15 && (p.t - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.mdq_type(), MdqType::Type1);
    }

    #[test]
    fn qst_newton_line() {
        let p = QstParams::new(2.0, 2.0).unwrap();
        assert_eq!(p.interval(), (0.5, 1.0));
        for x in [0.0, 0.3, 1.7] {
            assert!((p.newton_y(x) - x).abs() < 1e-15);
        }
        let f = to_qst(&p.quad()).unwrap();
        assert_eq!(f.world_from_frame, AffineMap::IDENTITY);
    }

    #[test]
    fn param_tests() {
        assert_eq!(QstParams::new(2.0, 2.0).unwrap().mdq_type(), MdqType::Type1);
        assert_eq!(QstParams::new(1.5, 0.5).unwrap().mdq_type(), MdqType::Type2);
        assert_eq!(QstParams::new(2.0, 3.0).unwrap().mdq_type(), MdqType::None);
        assert_eq!(QzParams::new(8.0, 4.0, 6.0, 2.0).unwrap().mdq_type(), MdqType::Type1);
        assert!(QstParams::new(1.0, 2.0).is_err());
        assert!(QstParams::new(0.3, 0.3).is_err());
    }

    #[test]
    fn similar_copy_has_same_params() {
        let sim = AffineMap::similarity(std::f64::consts::PI / 6.0, 5.0, Point::new(-2.0, 7.0)).unwrap();
        let moved = Quadrilateral::canonicalize(example().vertices().map(|p| sim.apply_point(p))).unwrap();
        let f = to_qz(&moved).unwrap();
        let FrameParams::Qz(p) = f.params else { panic!() };
        let expect = [8.0, 4.0, 6.0, 2.0];
        for (a, b) in [p.s, p.t, p.v, p.w].iter().zip(expect) {
            assert!((a - b).abs() < 1e-9, "{p:?}");
        }
        assert!(f.similarity);
        for i in 0..4 {
            let w = f.world_from_frame.apply_point(f.params.vertices()[i]);
            assert!(w.distance(moved.vertex(f.world_index(i))) < 1e-12);
        }
    }

    #[test]
    fn type2_is_relabelled_to_type1() {
        let q = QstParams::new(1.5, 0.5).unwrap().quad();
        let q = Quadrilateral::canonicalize(q.vertices()).unwrap();
        assert_eq!(q.classify().mdq_type, MdqType::Type2);
        let f = to_qz(&q).unwrap();
        let FrameParams::Qz(p) = f.params else { panic!() };
        assert!((p.v - (p.w + 1.0) * p.s / p.t).abs() < 1e-12);
        assert_eq!(f.world_mdq_type(), MdqType::Type2);
    }

    #[test]
    fn parallelogram_frame() {
        let q = Quadrilateral::canonicalize(
            [(0.0, 0.0), (1.0, 2.0), (5.0, 2.0), (4.0, 0.0)].map(Point::from),
        )
        .unwrap();
        let f = to_parallelogram(&q).unwrap();
        let FrameParams::Parallelogram(p) = f.params else { panic!() };
        assert!((p.l - 2.0).abs() < 1e-15 && (p.k - 1.0).abs() < 1e-15 && (p.d - 0.5).abs() < 1e-15);
        for i in 0..4 {
            let w = f.world_from_frame.apply_point(p.vertices()[i]);
            assert!(w.distance(q.vertex(f.world_index(i))) < 1e-14);
        }
        assert!(matches!(
            newton_segment(&q, &f),
            Err(QuadError::ParallelogramDegenerate { center }) if center.distance(Point::new(2.5, 1.0)) < 1e-15
        ));
        assert_eq!(to_qz(&q), Err(QuadError::IsParallelogram));
        assert_eq!(to_qst(&q), Err(QuadError::IsParallelogram));
    }

    #[test]
    fn trapezoid_with_vertical_sides() {
        // S1 ∥ S3, both vertical
        let q = Quadrilateral::canonicalize(
            [(0.0, 0.0), (0.0, 1.0), (2.0, 3.0), (2.0, 0.5)].map(Point::from),
        )
        .unwrap();
        let f = to_qst(&q).unwrap();
        assert_eq!(f.shift, 1);
        let g = to_qz(&q).unwrap();
        let FrameParams::Qz(p) = g.params else { panic!() };
        assert!(p.s != p.v);
    }
}
