//! Convex quadrilaterals: canonical vertex order, classification and the
//! normalizing frames used to build inscribed ellipses.

mod frame;

pub use frame::{
    mdq_param_test, newton_segment, to_parallelogram, to_qst, to_qz, FrameEmbedding, FrameKind,
    FrameParams, NewtonLine, ParallelogramParams, QstParams, QzParams,
};

use serde::{Deserialize, Serialize};

use crate::geom::{Direction, Line, Point};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("vertex coordinates must be finite")]
    NonFinite,
    #[error("degenerate vertices (repeated point or collinear triple)")]
    DegenerateVertices,
    #[error("NotConvex: the points do not form a strictly convex quadrilateral")]
    NotConvex,
    #[error("quadrilateral is a parallelogram")]
    IsParallelogram,
    #[error("quadrilateral is not a parallelogram")]
    NotParallelogram,
    #[error("no vertex labelling satisfies the frame conditions")]
    UnreachableFrame,
    #[error("invalid frame parameters: {0}")]
    InvalidParams(String),
    #[error("parallelogram has no Newton segment; inscribed centers collapse to {center:?}")]
    ParallelogramDegenerate { center: Point },
}

/// A strictly convex quadrilateral with vertices `A1..A4` in clockwise
/// order, `A1` the lowest vertex (ties broken by smallest `x`).
///
/// Sides are `S_j = A_j A_{j+1}`; diagonals `D1 = A1A3`, `D2 = A2A4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrilateral {
    vertices: [Point; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MdqType {
    None,
    Type1,
    Type2,
    Both,
}

impl MdqType {
    pub fn is_mdq(self) -> bool {
        self != MdqType::None
    }

    pub fn from_flags(type1: bool, type2: bool) -> Self {
        match (type1, type2) {
            (true, true) => MdqType::Both,
            (true, false) => MdqType::Type1,
            (false, true) => MdqType::Type2,
            (false, false) => MdqType::None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MdqType::None => "none",
            MdqType::Type1 => "type1",
            MdqType::Type2 => "type2",
            MdqType::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadClassification {
    pub is_parallelogram: bool,
    pub mdq_type: MdqType,
    pub is_tangential: bool,
    pub is_orthodiagonal: bool,
    pub is_trapezoid: bool,
    pub is_kite: bool,
    pub diagonal_intersection: Point,
    /// Midpoint of `D1`.
    pub m1: Point,
    /// Midpoint of `D2`.
    pub m2: Point,
}

fn orientation(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

impl Quadrilateral {
    /// Orders four points into a canonical clockwise quadrilateral.
    pub fn canonicalize(points: [Point; 4]) -> Result<Self, QuadError> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(QuadError::NonFinite);
        }
        let scale = points
            .iter()
            .flat_map(|p| points.iter().map(move |q| p.distance(*q)))
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(QuadError::DegenerateVertices);
        }
        let eps = 1e-12 * scale * scale;
        for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    if orientation(points[i], points[j], points[k]).abs() <= eps {
                        return Err(QuadError::DegenerateVertices);
                    }
                }
            }
        }
        // Of the three cyclic orders through points[0], exactly one is
        // convex when the points are in convex position.
        let orders = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
        let mut chosen = None;
        for order in orders {
            let ring = order.map(|i| points[i]);
            let turns: Vec<f64> = (0..4)
                .map(|i| orientation(ring[i], ring[(i + 1) % 4], ring[(i + 2) % 4]))
                .collect();
            if turns.iter().all(|t| *t < 0.0) || turns.iter().all(|t| *t > 0.0) {
                chosen = Some(ring);
                break;
            }
        }
        let mut ring = chosen.ok_or(QuadError::NotConvex)?;
        if orientation(ring[0], ring[1], ring[2]) > 0.0 {
            ring.reverse();
        }
        let start = (0..4)
            .min_by(|&i, &j| {
                let (p, q) = (ring[i], ring[j]);
                p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
            })
            .expect("four vertices");
        ring.rotate_left(start);
        Ok(Self { vertices: ring })
    }

    /// Builds from vertices already in clockwise order, rotated so that
    /// `vertices[0]` becomes `A1`. Used by frames that relabel.
    pub(crate) fn from_clockwise_unchecked(vertices: [Point; 4]) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    /// `A_{i+1}` for zero-based `i`, cyclic.
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % 4]
    }

    /// Zero-based side `j` runs from `A_{j+1}` to `A_{j+2}`.
    pub fn side(&self, j: usize) -> (Point, Point) {
        (self.vertex(j), self.vertex(j + 1))
    }

    pub fn side_line(&self, j: usize) -> Line {
        let (p, q) = self.side(j);
        Line::through(p, q).expect("distinct vertices")
    }

    pub fn side_lines(&self) -> [Line; 4] {
        [0, 1, 2, 3].map(|j| self.side_line(j))
    }

    /// `(a, b, c, d) = (|A1A4|, |A1A2|, |A2A3|, |A3A4|)`.
    pub fn side_lengths(&self) -> (f64, f64, f64, f64) {
        let [a1, a2, a3, a4] = self.vertices;
        (a1.distance(a4), a1.distance(a2), a2.distance(a3), a3.distance(a4))
    }

    pub fn d1(&self) -> (Point, Point) {
        (self.vertices[0], self.vertices[2])
    }

    pub fn d2(&self) -> (Point, Point) {
        (self.vertices[1], self.vertices[3])
    }

    pub fn d1_direction(&self) -> Direction {
        Direction::from_points(self.vertices[0], self.vertices[2]).expect("distinct")
    }

    pub fn d2_direction(&self) -> Direction {
        Direction::from_points(self.vertices[1], self.vertices[3]).expect("distinct")
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let v = self.vertices;
        let mut m = 0.0_f64;
        for i in 0..4 {
            for j in (i + 1)..4 {
                m = m.max(v[i].distance(v[j]));
            }
        }
        m
    }

    pub fn diagonal_intersection(&self) -> Point {
        let [a1, a2, a3, a4] = self.vertices;
        let d1 = a3 - a1;
        let d2 = a4 - a2;
        let t = (a2 - a1).cross(d2) / d1.cross(d2);
        a1 + d1 * t
    }

    /// The same quadrilateral with `A_{k+1}` relabelled as `A1`.
    pub fn relabeled(&self, shift: usize) -> Quadrilateral {
        let mut v = self.vertices;
        v.rotate_left(shift % 4);
        Quadrilateral { vertices: v }
    }

    pub fn contains(&self, p: Point) -> bool {
        (0..4).all(|j| {
            let (a, b) = self.side(j);
            orientation(a, b, p) < 0.0
        })
    }

    pub fn classify(&self) -> QuadClassification {
        self.classify_with(&Tolerances::default())
    }

    pub fn classify_with(&self, tol: &Tolerances) -> QuadClassification {
        let scale = self.diameter();
        let eps = tol.residual;
        let [a1, a2, a3, a4] = self.vertices;
        let p = self.diagonal_intersection();
        let m1 = a1.midpoint(a3);
        let m2 = a2.midpoint(a4);
        // D1 lies on the Newton line exactly when it passes through the
        // midpoint of D2, i.e. the diagonals meet at that midpoint.
        let type1 = p.distance(m2) <= eps * scale;
        let type2 = p.distance(m1) <= eps * scale;
        let parallel = |j: usize, k: usize| {
            let (p0, p1) = self.side(j);
            let (q0, q1) = self.side(k);
            let (u, v) = (p1 - p0, q1 - q0);
            u.cross(v).abs() <= eps * u.norm() * v.norm()
        };
        let pair13 = parallel(0, 2);
        let pair24 = parallel(1, 3);
        let is_parallelogram = pair13 && pair24;
        let mdq_type = if is_parallelogram {
            MdqType::Both
        } else {
            MdqType::from_flags(type1, type2)
        };
        let (a, b, c, d) = self.side_lengths();
        let eq = |x: f64, y: f64| (x - y).abs() <= eps * scale;
        QuadClassification {
            is_parallelogram,
            mdq_type,
            is_tangential: eq(a + c, b + d),
            is_orthodiagonal: self.d1_direction().as_vector().dot(self.d2_direction().as_vector()).abs()
                <= eps,
            is_trapezoid: pair13 != pair24,
            is_kite: (eq(a, b) && eq(c, d)) || (eq(b, c) && eq(d, a)),
            diagonal_intersection: p,
            m1,
            m2,
        }
    }

    /// Incircle of a tangential quadrilateral: center and radius.
    ///
    /// The center is where the internal bisectors at `A1` and `A2` meet.
    pub fn incircle(&self) -> (Point, f64) {
        let bisector = |i: usize| {
            let v = self.vertex(i);
            let prev = self.vertex(i + 3);
            let next = self.vertex(i + 1);
            let u1 = (prev - v) * (1.0 / (prev - v).norm());
            let u2 = (next - v) * (1.0 / (next - v).norm());
            Line::from_point_direction(v, u1 + u2).expect("nonzero bisector")
        };
        let center = bisector(0)
            .intersect(bisector(1))
            .or_else(|| bisector(0).intersect(bisector(2)))
            .expect("bisectors of a convex quadrilateral meet");
        let r = self
            .side_lines()
            .iter()
            .map(|l| l.signed_distance(center).abs())
            .sum::<f64>()
            / 4.0;
        (center, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: [(f64, f64); 4]) -> [Point; 4] {
        v.map(Point::from)
    }

    fn example() -> Quadrilateral {
        Quadrilateral::canonicalize(pts([(0.0, 0.0), (8.0, 4.0), (0.0, 1.0), (6.0, 2.0)])).unwrap()
    }

    #[test]
    fn canonical_order_of_example() {
        let expected = pts([(0.0, 0.0), (0.0, 1.0), (8.0, 4.0), (6.0, 2.0)]);
        let inputs = [
            [(0.0, 0.0), (8.0, 4.0), (0.0, 1.0), (6.0, 2.0)],
            [(6.0, 2.0), (0.0, 1.0), (8.0, 4.0), (0.0, 0.0)],
            [(0.0, 1.0), (6.0, 2.0), (0.0, 0.0), (8.0, 4.0)],
        ];
        for input in inputs {
            let q = Quadrilateral::canonicalize(pts(input)).unwrap();
            assert_eq!(q.vertices(), expected);
        }
    }

    #[test]
    fn canonical_order_of_square() {
        let q = Quadrilateral::canonicalize(pts([(1.0, 1.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]))
            .unwrap();
        assert_eq!(q.vertices(), pts([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]));
    }

    #[test]
    fn rejects_degenerate_and_nonconvex() {
        let collinear = pts([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0)]);
        assert_eq!(Quadrilateral::canonicalize(collinear), Err(QuadError::DegenerateVertices));
        let repeated = pts([(0.0, 0.0), (0.0, 0.0), (2.0, 0.0), (0.0, 1.0)]);
        assert_eq!(Quadrilateral::canonicalize(repeated), Err(QuadError::DegenerateVertices));
        let dart = pts([(0.0, 0.0), (4.0, 0.0), (0.0, 4.0), (1.0, 1.0)]);
        assert_eq!(Quadrilateral::canonicalize(dart), Err(QuadError::NotConvex));
        let nan = pts([(f64::NAN, 0.0), (4.0, 0.0), (0.0, 4.0), (1.0, 1.0)]);
        assert_eq!(Quadrilateral::canonicalize(nan), Err(QuadError::NonFinite));
    }

    #[test]
    fn example_classification() {
        let c = example().classify();
        assert_eq!(c.mdq_type, MdqType::Type1);
        assert!(!c.is_parallelogram && !c.is_tangential && !c.is_orthodiagonal);
        assert!(!c.is_trapezoid && !c.is_kite);
        let (a, b, cc, d) = example().side_lengths();
        assert!((a + cc - 14.87).abs() < 0.01, "{}", a + cc);
        assert!((b + d - 3.83).abs() < 0.01, "{}", b + d);
        assert!(c.diagonal_intersection.distance(Point::new(3.0, 1.5)) < 1e-14);
    }

    #[test]
    fn square_classification() {
        let q = Quadrilateral::canonicalize(pts([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]))
            .unwrap();
        let c = q.classify();
        assert!(c.is_parallelogram && c.is_tangential && c.is_orthodiagonal && c.is_kite);
        assert_eq!(c.mdq_type, MdqType::Both);
        assert!(!c.is_trapezoid);
        let (center, r) = q.incircle();
        assert!(center.distance(Point::new(0.5, 0.5)) < 1e-15 && (r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn right_kite_is_mdq() {
        // kite symmetric about the diagonal y = x: tangential and orthodiagonal
        let q = Quadrilateral::canonicalize(pts([(0.0, 0.0), (1.0, 3.0), (4.0, 4.0), (3.0, 1.0)]))
            .unwrap();
        let c = q.classify();
        assert!(c.is_tangential && c.is_orthodiagonal && c.is_kite);
        assert!(c.mdq_type.is_mdq());
    }

    #[test]
    fn trapezoid_is_not_mdq() {
        let q = Quadrilateral::canonicalize(pts([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 2.5)]))
            .unwrap();
        let c = q.classify();
        assert!(c.is_trapezoid && !c.is_parallelogram);
        assert_eq!(c.mdq_type, MdqType::None);
    }
}
