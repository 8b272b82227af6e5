//! Worked examples through the public API, each with an independently
//! computed expected value.

use inellipse::geom::{
    classify_conic, conjugate_direction, diameter_endpoints, line_tangency_point, AffineMap, Conic, Direction,
    GeomError, Line, Point, Slope,
};
use inellipse::inscribed::{
    inscribed_ellipse, parallelogram_ellipse, parallelogram_tangency, qst_ellipse, qst_h_from_q, qst_q_from_h,
    qst_tangency, qz_coefficients, qz_ellipse, FamilyParam, InscribedError,
};
use inellipse::min_ecc::{
    coefficients_at_h_plus, h_plus, k_and_o, min_ecc_ellipse, min_ecc_ellipse_with, EccentricityProfile, MinEccError,
    MinEccMode, MinEccOptions,
};
use inellipse::quad::{
    mdq_param_test, newton_segment, to_qst, to_qz, FrameParams, MdqType, ParallelogramParams, QstParams, QuadError,
    Quadrilateral, QzParams,
};
use inellipse::Tolerances;

fn pts(v: [(f64, f64); 4]) -> [Point; 4] {
    v.map(Point::from)
}

fn example() -> Quadrilateral {
    Quadrilateral::canonicalize(pts([(0.0, 0.0), (0.0, 1.0), (8.0, 4.0), (6.0, 2.0)])).unwrap()
}

fn square() -> Quadrilateral {
    Quadrilateral::canonicalize(pts([(1.0, 1.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap()
}

fn example_qz() -> QzParams {
    QzParams::new(8.0, 4.0, 6.0, 2.0).unwrap()
}

fn near(a: Point, b: Point, tol: f64) -> bool {
    a.distance(b) <= tol
}

/// Coefficient distance after scaling both to unit max-norm with matching sign.
fn same_conic(got: Conic, want: [f64; 6], tol: f64) -> bool {
    got.projective_distance(Conic::from_array(want).unwrap()) <= tol
}

fn permutations(v: [Point; 4]) -> Vec<[Point; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut seen = [false; 4];
                    idx.iter().for_each(|&i| seen[i] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(idx.map(|i| v[i]));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn canonical_order_of_example_in_every_input_order() {
    let want = pts([(0.0, 0.0), (0.0, 1.0), (8.0, 4.0), (6.0, 2.0)]);
    let orders = permutations(want);
    assert_eq!(orders.len(), 24);
    for order in orders {
        assert_eq!(Quadrilateral::canonicalize(order).unwrap().vertices(), want);
    }
}

#[test]
fn canonical_order_of_square() {
    assert_eq!(square().vertices(), pts([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]));
}

#[test]
fn collinear_triple_is_degenerate() {
    let r = Quadrilateral::canonicalize(pts([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0)]));
    assert_eq!(r, Err(QuadError::DegenerateVertices));
}

#[test]
fn reflex_vertex_is_not_convex() {
    let r = Quadrilateral::canonicalize(pts([(0.0, 0.0), (4.0, 0.0), (0.0, 4.0), (1.0, 1.0)]));
    assert_eq!(r, Err(QuadError::NotConvex));
}

#[test]
fn example_classification() {
    let q = example();
    let c = q.classify();
    assert_eq!(c.mdq_type, MdqType::Type1);
    assert!(!c.is_parallelogram && !c.is_tangential && !c.is_orthodiagonal && !c.is_trapezoid && !c.is_kite);
    assert_eq!(c.diagonal_intersection, Point::new(3.0, 1.5));
    assert_eq!(c.m2, Point::new(3.0, 1.5));
    assert_eq!(c.m1, Point::new(4.0, 2.0));
    let (a, b, cc, d) = q.side_lengths();
    let sum_ac = 40f64.sqrt() + 73f64.sqrt();
    let sum_bd = 1.0 + 8f64.sqrt();
    assert!((a + cc - sum_ac).abs() < 1e-12 && (b + d - sum_bd).abs() < 1e-12);
    assert!((sum_ac - 14.87).abs() < 0.01 && (sum_bd - 3.83).abs() < 0.01);
}

#[test]
fn square_classification() {
    let c = square().classify();
    assert!(c.is_parallelogram && c.is_tangential && c.is_orthodiagonal && c.is_kite);
    assert_eq!(c.mdq_type, MdqType::Both);
    assert!(!c.is_trapezoid);
}

#[test]
fn incircle_kite_is_mdq() {
    // tangents to the unit circle symmetric about y = x form a kite
    let tangent = |theta: f64| Line::new(theta.cos(), theta.sin(), -1.0).unwrap();
    let angles = [0.0f64, 90.0, 200.0, 250.0].map(f64::to_radians);
    let lines = angles.map(tangent);
    let corners = [0, 1, 2, 3].map(|i| lines[i].intersect(lines[(i + 1) % 4]).unwrap());
    let q = Quadrilateral::canonicalize(corners).unwrap();
    let class = q.classify();
    assert!(class.is_tangential && class.is_orthodiagonal && class.is_kite);
    assert_ne!(class.mdq_type, MdqType::None);
}

#[test]
fn example_newton_segment() {
    let q = example();
    let n = newton_segment(&q, &to_qz(&q).unwrap()).unwrap();
    assert_eq!(n.interval, (3.0, 4.0));
    assert_eq!((n.slope, n.intercept), (0.5, 0.0));
    for m in [n.m1, n.m2] {
        assert!(n.line.signed_distance(m).abs() < 1e-15);
    }
}

#[test]
fn qst_newton_segment() {
    let q = QstParams::new(2.0, 2.0).unwrap().quad();
    let n = newton_segment(&q, &to_qst(&q).unwrap()).unwrap();
    assert_eq!(n.interval, (0.5, 1.0));
    assert_eq!((n.slope, n.intercept), (1.0, 0.0));
}

#[test]
fn parallelogram_newton_segment_collapses() {
    let q = square();
    let f = to_qz(&example()).unwrap();
    assert_eq!(
        newton_segment(&q, &f),
        Err(QuadError::ParallelogramDegenerate {
            center: Point::new(0.5, 0.5)
        })
    );
}

#[test]
fn qst_frame_of_qst_quad_is_identity() {
    let q = QstParams::new(2.0, 2.0).unwrap().quad();
    let f = to_qst(&q).unwrap();
    assert_eq!(f.params, FrameParams::Qst(QstParams { s: 2.0, t: 2.0 }));
    assert_eq!(f.world_from_frame, AffineMap::IDENTITY);
}

#[test]
fn qst_frame_of_example() {
    let q = example();
    let f = to_qst(&q).unwrap();
    let FrameParams::Qst(p) = f.params else { panic!("{:?}", f.params) };
    let frame = p.vertices();
    for (i, v) in frame.iter().enumerate() {
        let world = q.vertex(f.world_index(i));
        assert!(near(f.world_from_frame.apply_point(*v), world, 1e-12));
    }
    assert!(p.s > 0.0 && p.t > 0.0 && p.s + p.t > 1.0 && p.s != 1.0);
    assert_eq!(to_qst(&square()), Err(QuadError::IsParallelogram));
}

#[test]
fn qz_frame_of_example_is_identity() {
    let f = to_qz(&example()).unwrap();
    assert_eq!(f.params, FrameParams::Qz(QzParams { s: 8.0, t: 4.0, v: 6.0, w: 2.0 }));
    assert_eq!(f.world_from_frame, AffineMap::IDENTITY);
    assert!(f.similarity);
}

#[test]
fn qz_frame_undoes_a_similarity() {
    let t = AffineMap::similarity(30f64.to_radians(), 5.0, Point::new(-3.0, 11.0)).unwrap();
    let moved = Quadrilateral::canonicalize(example().vertices().map(|p| t.apply_point(p))).unwrap();
    let f = to_qz(&moved).unwrap();
    let FrameParams::Qz(p) = f.params else { panic!() };
    for (got, want) in [(p.s, 8.0), (p.t, 4.0), (p.v, 6.0), (p.w, 2.0)] {
        assert!((got - want).abs() < 1e-9, "{p:?}");
    }
    assert!(f.similarity && (f.world_from_frame.similarity_scale() - 5.0).abs() < 1e-12);
}

#[test]
fn type2_quad_maps_to_type1_frame() {
    let q = QstParams::new(1.5, 0.5).unwrap().quad();
    assert_eq!(q.classify().mdq_type, MdqType::Type2);
    let f = to_qz(&q).unwrap();
    let FrameParams::Qz(p) = f.params else { panic!() };
    assert!((p.v - (p.w + 1.0) * p.s / p.t).abs() < 1e-9 * p.scale());
    assert_eq!(f.world_mdq_type(), MdqType::Type2);
}

#[test]
fn parameter_mdq_tests() {
    assert_eq!(mdq_param_test(&FrameParams::Qst(QstParams::new(2.0, 2.0).unwrap())), MdqType::Type1);
    assert_eq!(mdq_param_test(&FrameParams::Qst(QstParams::new(1.5, 0.5).unwrap())), MdqType::Type2);
    assert_eq!(mdq_param_test(&FrameParams::Qst(QstParams::new(2.0, 3.0).unwrap())), MdqType::None);
    assert_eq!(mdq_param_test(&FrameParams::Qz(example_qz())), MdqType::Type1);
}

#[test]
fn conic_golden_values() {
    let unit = classify_conic(Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap()).unwrap();
    assert_eq!(unit.center, Point::new(0.0, 0.0));
    assert!((unit.a - 1.0).abs() < 1e-15 && (unit.b - 1.0).abs() < 1e-15 && unit.eccentricity == 0.0);

    let e0 = classify_conic(Conic::new(33.0, -148.0, 196.0, 28.0, -168.0, 36.0).unwrap()).unwrap();
    assert!(near(e0.center, Point::new(3.5, 1.75), 1e-14));
    let (j, m) = (229.0, 163f64.powi(2) + 148f64.powi(2));
    let ratio = (j - m.sqrt()) / (j + m.sqrt());
    assert!((e0.ratio_sq - ratio).abs() < 1e-14);
    assert!((0.019667..0.019668).contains(&ratio));

    let hyperbola = classify_conic(Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, -1.0).unwrap());
    assert!(matches!(hyperbola, Err(GeomError::NotAnEllipse { .. })), "{hyperbola:?}");
}

#[test]
fn conjugate_diameters_of_e0() {
    let e0 = inscribed_ellipse(&example(), FamilyParam::H(3.5)).unwrap().info;
    let d1 = Direction::new(2.0, 1.0).unwrap();
    let conj = conjugate_direction(&e0, d1);
    assert!(conj.sin_angle(Direction::new(6.0, 1.0).unwrap()).abs() < 1e-12);

    let (r31, r2) = (31f64.sqrt(), 2f64.sqrt());
    let (p1, p2) = diameter_endpoints(&e0, d1);
    assert!(near(p1, Point::new((7.0 - r31) / 2.0, (7.0 - r31) / 4.0), 1e-12));
    assert!(near(p2, Point::new((7.0 + r31) / 2.0, (7.0 + r31) / 4.0), 1e-12));
    let (p3, p4) = diameter_endpoints(&e0, Direction::new(6.0, 1.0).unwrap());
    assert!(near(p3, Point::new((7.0 - 3.0 * r2) / 2.0, (7.0 - r2) / 4.0), 1e-12));
    assert!(near(p4, Point::new((7.0 + 3.0 * r2) / 2.0, (7.0 + r2) / 4.0), 1e-12));

    let unit = classify_conic(Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap()).unwrap();
    let perp = conjugate_direction(&unit, Direction::new(1.0, 0.0).unwrap());
    assert!(perp.sin_angle(Direction::new(0.0, 1.0).unwrap()).abs() < 1e-15);
}

#[test]
fn tangency_on_e0_sides() {
    let e0 = inscribed_ellipse(&example(), FamilyParam::H(3.5)).unwrap().info;
    let x_axis = Line::through(Point::new(0.0, 0.0), Point::new(0.0, 1.0)).unwrap();
    let s4 = Line::through(Point::new(0.0, 0.0), Point::new(6.0, 2.0)).unwrap();
    assert!(near(line_tangency_point(&e0, x_axis, 1e-8).unwrap(), Point::new(0.0, 3.0 / 7.0), 1e-12));
    assert!(near(line_tangency_point(&e0, s4, 1e-8).unwrap(), Point::new(18.0 / 7.0, 6.0 / 7.0), 1e-12));
}

#[test]
fn qst_symmetric_member() {
    let p = QstParams::new(2.0, 2.0).unwrap();
    let c = qst_ellipse(&p, 0.5).unwrap();
    assert!(same_conic(c, [4.0, -2.0, 4.0, -4.0, -4.0, 1.0], 1e-15));
    let info = classify_conic(c).unwrap();
    assert!(near(info.center, Point::new(2.0 / 3.0, 2.0 / 3.0), 1e-15));
    assert!((qst_h_from_q(&p, 0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn qst_symmetric_tangency() {
    let p = QstParams::new(2.0, 2.0).unwrap();
    let t = qst_tangency(&p, 0.5).unwrap();
    let [q1, q2, q3, q4] = t.points;
    assert_eq!(q1, Point::new(0.0, 0.5));
    assert_eq!(q4, Point::new(0.5, 0.0));
    assert_eq!(t.chords.q1q4, Slope::Finite(-1.0));
    // 4x² − 2xy + 4y² − 4x − 4y + 1 restricted to y = x/2 + 1 is (2x − 1)²,
    // restricted to y = 2x − 2 it is (4x − 5)²
    assert!(near(q2, Point::new(0.5, 1.25), 1e-15));
    assert!(near(q3, Point::new(1.25, 0.5), 1e-15));
    let info = classify_conic(qst_ellipse(&p, 0.5).unwrap()).unwrap();
    let quad = p.quad();
    for (j, qj) in t.points.iter().enumerate() {
        let on_side = line_tangency_point(&info, quad.side_line(j), 1e-8).unwrap();
        assert!(near(*qj, on_side, 1e-10), "q{} {qj:?} vs {on_side:?}", j + 1);
    }
}

#[test]
fn qst_parameter_round_trip() {
    let p = QstParams::new(2.0, 3.0).unwrap();
    for i in 1..100 {
        let q = i as f64 / 100.0;
        let h = qst_h_from_q(&p, q).unwrap();
        assert!((qst_q_from_h(&p, h).unwrap() - q).abs() < 1e-12);
    }
    assert!(matches!(qst_h_from_q(&p, 1.0), Err(InscribedError::ParameterOutOfRange { .. })));
    assert!(matches!(qst_q_from_h(&p, 1.0), Err(InscribedError::ParameterOutOfRange { .. })));
}

#[test]
fn example_qz_coefficients() {
    let p = example_qz();
    let k = qz_coefficients(&p, 3.5).unwrap();
    assert_eq!(k.center(3.5), Point::new(3.5, 1.75));
    // coefficients are a common multiple of (33, −148, 196)
    let scale = k.a / 33.0;
    assert!((k.b / scale + 148.0).abs() < 1e-12 && (k.c / scale - 196.0).abs() < 1e-12);
    let j = k.a + k.c;
    let m = (k.a - k.c).powi(2) + k.b.powi(2);
    let (s, v) = (p.s, p.v);
    assert!((j * j - m - 16.0 * (s - v).powi(2) * k.r).abs() < 1e-12 * j * j);
    assert!(matches!(qz_coefficients(&p, 4.5), Err(InscribedError::ParameterOutOfRange { .. })));
}

#[test]
fn example_qz_ellipse_and_tangency() {
    let c = qz_ellipse(&example_qz(), 3.5).unwrap();
    assert!(same_conic(c, [33.0, -148.0, 196.0, 28.0, -168.0, 36.0], 1e-14));
    let r = inscribed_ellipse(&example(), FamilyParam::H(3.5)).unwrap();
    let want = pts([(0.0, 3.0 / 7.0), (32.0 / 9.0, 7.0 / 3.0), (62.0 / 9.0, 26.0 / 9.0), (18.0 / 7.0, 6.0 / 7.0)]);
    for (got, want) in r.tangency.points.iter().zip(want) {
        assert!(near(*got, want, 1e-12), "{got:?} vs {want:?}");
    }
    assert_eq!(r.center, Point::new(3.5, 1.75));
}

#[test]
fn rotated_example_rotates_tangency() {
    let rot = AffineMap::rotation(std::f64::consts::FRAC_PI_2);
    let q = example();
    let moved = Quadrilateral::canonicalize(q.vertices().map(|p| rot.apply_point(p))).unwrap();
    let base = inscribed_ellipse(&q, FamilyParam::H(3.5)).unwrap();
    let r = inscribed_ellipse(&moved, FamilyParam::H(3.5)).unwrap();
    let mut want: Vec<Point> = base.tangency.points.iter().map(|p| rot.apply_point(*p)).collect();
    let mut got = r.tangency.points.to_vec();
    let key = |p: &Point| (p.x * 1e9).round() as i64;
    want.sort_by_key(key);
    got.sort_by_key(key);
    for (g, w) in got.iter().zip(&want) {
        assert!(near(*g, *w, 1e-12), "{g:?} vs {w:?}");
    }
}

#[test]
fn parallelogram_members() {
    let p = ParallelogramParams::new(1.0, 1.0, 0.0).unwrap();
    let mid = parallelogram_tangency(&p, 0.0).unwrap();
    assert_eq!(mid.points, pts([(-1.0, 0.0), (0.0, 1.0), (1.0, 0.0), (0.0, -1.0)]));
    let half = parallelogram_tangency(&p, 0.5).unwrap();
    assert_eq!(half.points, pts([(-1.0, 0.5), (-0.5, 1.0), (1.0, -0.5), (0.5, -1.0)]));
    assert_eq!(half.chords.q1q2, Slope::Finite(1.0));
    assert_eq!(half.chords.q2q3, Slope::Finite(-1.0));

    assert!(same_conic(parallelogram_ellipse(&p, 0.0).unwrap(), [1.0, 0.0, 1.0, 0.0, 0.0, -1.0], 1e-15));
    let info = classify_conic(parallelogram_ellipse(&p, 0.5).unwrap()).unwrap();
    assert!(info.center.norm() < 1e-15);
    for (j, qj) in half.points.iter().enumerate() {
        let on_side = line_tangency_point(&info, p.quad().side_line(j), 1e-8).unwrap();
        assert!(near(*qj, on_side, 1e-10), "q{}", j + 1);
    }
    assert!(parallelogram_tangency(&p, 1.0).is_err());
}

#[test]
fn unit_square_incircle_member() {
    let r = inscribed_ellipse(&square(), FamilyParam::V(0.0)).unwrap();
    assert!(r.info.is_circle(1e-12));
    assert!(near(r.info.center, Point::new(0.5, 0.5), 1e-15));
    assert!((r.info.a - 0.5).abs() < 1e-15);
}

#[test]
fn k_o_and_h_plus_of_example() {
    let p = example_qz();
    let (k, o) = k_and_o(&p).unwrap();
    assert_eq!(k, 2624.0);
    assert_eq!(k, 64.0 * 41.0);
    let o_at = |h: f64| o[0] * h * h + o[1] * h + o[2];
    assert!(o_at(3.0) * o_at(4.0) < 0.0);

    let hp = h_plus(&p).unwrap();
    let want = (9.0 * 41f64.sqrt() - 41.0) / 5.0;
    assert!((hp - want).abs() < 1e-14, "{hp} vs {want}");
    assert!(3.0 < hp && hp < 4.0);
    assert!(o_at(hp).abs() < 1e-9 * k);

    let non_mdq = QzParams::new(8.0, 4.0, 5.0, 2.0).unwrap();
    assert_eq!(k_and_o(&non_mdq), Err(MinEccError::NotType1Frame));
}

#[test]
fn profile_at_e0() {
    let prof = EccentricityProfile::new(example_qz());
    let (j, m) = (229.0, 163f64.powi(2) + 148f64.powi(2));
    assert!((prof.g(3.5) - (j - m.sqrt()) / (j + m.sqrt())).abs() < 1e-13);
    // j, m in the frame scale are fixed multiples of the integer-form values
    let ratio = prof.j(3.5) / j;
    assert!((prof.m(3.5) / (ratio * ratio) - m).abs() < 1e-9 * m);
    assert!(prof.g(3.0 + 1e-9) < 1e-6 && prof.g(4.0 - 1e-9) < 1e-6);
}

#[test]
fn closed_form_coefficients_at_optimum() {
    let p = example_qz();
    let [a, b, c] = coefficients_at_h_plus(&p).unwrap();
    let k = qz_coefficients(&p, h_plus(&p).unwrap()).unwrap();
    for (x, y) in [(a, k.a), (b, k.b), (c, k.c)] {
        assert!((x - y).abs() < 1e-9 * y.abs(), "{x} vs {y}");
    }
    assert!(a * c > 0.0);
    let (s, t, w) = (p.s, p.t, p.w);
    let m1 = t / s;
    let m2 = (w - 1.0) * t / ((w + 1.0) * s);
    let lhs = (a + m1 * b + m1 * m1 * c) / (a + m2 * b + m2 * m2 * c);
    let rhs = (1.0 + m1 * m1) / (1.0 + m2 * m2);
    assert!((lhs - rhs).abs() < 1e-9 * rhs);
}

#[test]
fn min_ecc_of_example() {
    let r = min_ecc_ellipse(&example()).unwrap();
    assert_eq!(r.mode, MinEccMode::ClosedForm);
    let rm = 41f64.sqrt();
    let want = [
        1281.0 - 189.0 * rm,
        -6344.0 + 936.0 * rm,
        10004.0 - 1476.0 * rm,
        -11644.0 + 1836.0 * rm,
        69864.0 - 11016.0 * rm,
        126756.0 - 19764.0 * rm,
    ];
    assert!(same_conic(r.ellipse.conic, want, 1e-9), "{:?}", r.ellipse.conic);
    assert!(r.length_gap < 1e-9 && r.conjugacy_residual.abs() < 1e-9);
    let d = r.diagonal_directions;
    assert!(d[0].sin_angle(Direction::new(2.0, 1.0).unwrap()).abs() < 1e-15);
    assert!(d[1].sin_angle(Direction::new(6.0, 1.0).unwrap()).abs() < 1e-15);
}

#[test]
fn min_ecc_of_square_is_incircle() {
    let r = min_ecc_ellipse(&square()).unwrap();
    assert_eq!(r.mode, MinEccMode::Incircle);
    assert!(r.is_circle && r.eccentricity == 0.0);
    let [(p1, p2), (p3, p4)] = r.equal_diameters;
    let c = Point::new(0.5, 0.5);
    let s = 0.5 / 2f64.sqrt();
    let mut got = [p1, p2, p3, p4].map(|p| p - c);
    got.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    let want = pts([(-s, -s), (-s, s), (s, -s), (s, s)]);
    for (g, w) in got.iter().zip(want) {
        assert!(near(*g, w, 1e-15), "{got:?}");
    }
}

#[test]
fn forced_numeric_agrees_with_closed_form() {
    let opts = MinEccOptions {
        force_numeric: true,
        ..Default::default()
    };
    let r = min_ecc_ellipse_with(&example(), opts, &Tolerances::default()).unwrap();
    assert_eq!(r.mode, MinEccMode::Numeric);
    assert!(r.warning.is_none());
    let want = (9.0 * 41f64.sqrt() - 41.0) / 5.0;
    assert!((r.h_plus.unwrap() - want).abs() < 1e-6);
}
