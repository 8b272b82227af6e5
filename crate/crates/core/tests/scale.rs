//! Results must not depend on the magnitude of the input coordinates.

use inellipse::geom::Point;
use inellipse::inscribed::{inscribed_ellipse, FamilyParam};
use inellipse::min_ecc::min_ecc_ellipse;
use inellipse::quad::{to_qz, FrameParams, Quadrilateral};
use inellipse::verify::{verify_quad, CheckId};
use inellipse::Tolerances;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SCALES: [f64; 7] = [1e-100, 1e-20, 1e-6, 1.0, 1e6, 1e20, 1e100];

fn grid_quads() -> Vec<[Point; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    while out.len() < 300 {
        let v: [Point; 4] =
            std::array::from_fn(|_| Point::new(rng.gen_range(-4i32..=4) as f64, rng.gen_range(-4i32..=4) as f64));
        if Quadrilateral::canonicalize(v).is_ok() {
            out.push(v);
        }
    }
    out
}

#[test]
fn min_ecc_is_scale_free() {
    for v in grid_quads() {
        let base = min_ecc_ellipse(&Quadrilateral::canonicalize(v).unwrap()).unwrap();
        for k in SCALES {
            let q = Quadrilateral::canonicalize(v.map(|p| p * k)).unwrap();
            let r = min_ecc_ellipse(&q).unwrap_or_else(|e| panic!("{v:?} at {k:e}: {e}"));
            assert_eq!(r.mode, base.mode, "{v:?} at {k:e}");
            assert!((r.eccentricity - base.eccentricity).abs() < 1e-9, "{v:?} at {k:e}");
            let c = r.ellipse.info.center * (1.0 / k);
            assert!(c.distance(base.ellipse.info.center) < 1e-9, "{v:?} at {k:e}");
        }
    }
}

#[test]
fn family_members_are_scale_free() {
    for v in grid_quads() {
        let q = Quadrilateral::canonicalize(v).unwrap();
        let param = if q.classify().is_parallelogram {
            FamilyParam::V(0.3)
        } else {
            let FrameParams::Qz(p) = to_qz(&q).unwrap().params else { unreachable!() };
            let (lo, hi) = p.interval();
            FamilyParam::H(lo + 0.3 * (hi - lo))
        };
        // frame parameters are dimensionless, so the same value applies at every scale
        let base = inscribed_ellipse(&q, param).unwrap();
        for k in SCALES {
            let scaled = Quadrilateral::canonicalize(v.map(|p| p * k)).unwrap();
            let r = inscribed_ellipse(&scaled, param).unwrap_or_else(|e| panic!("{v:?} at {k:e}: {e}"));
            assert!((r.info.eccentricity - base.info.eccentricity).abs() < 1e-9, "{v:?} at {k:e}");
            for (a, b) in r.tangency.points.iter().zip(base.tangency.points) {
                assert!((*a * (1.0 / k)).distance(b) < 1e-9, "{v:?} at {k:e}");
            }
        }
    }
}

#[test]
fn hostile_coordinates_do_not_panic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let magnitudes = [0.0, 5e-324, 1e-300, 1e-150, 1e150, 1e300, f64::MAX];
    let tol = Tolerances::default();
    for i in 0..3000 {
        let v: [Point; 4] = std::array::from_fn(|_| {
            let m = magnitudes[rng.gen_range(0..magnitudes.len())];
            let pick = |rng: &mut ChaCha8Rng| match i % 3 {
                0 => rng.gen_range(-1.0..1.0) * m,
                1 => rng.gen_range(-2i32..=2) as f64 * m,
                _ => 1.0 + rng.gen_range(-1.0..1.0) * 1e-12,
            };
            Point::new(pick(&mut rng), pick(&mut rng))
        });
        let Ok(q) = Quadrilateral::canonicalize(v) else { continue };
        let _ = q.classify();
        let _ = min_ecc_ellipse(&q);
        let _ = inscribed_ellipse(&q, FamilyParam::Q(0.4));
        let _ = verify_quad(&q, &CheckId::ALL, 0.05, &tol);
    }
}
