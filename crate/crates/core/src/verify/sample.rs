//! Seeded samplers for the random checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::SampleRanges;
use crate::geom::{AffineMap, Point};
use crate::quad::{ParallelogramParams, QstParams, Quadrilateral, QzParams};

/// Smallest accepted interior-angle sine and shortest/longest side ratio.
const CONDITION: f64 = 0.05;
/// `|s − v|` relative to `max(s, v)` must exceed this.
const SLACK: f64 = 0.1;
const MAX_TRIES: usize = 10_000;

/// Rotation by a uniform angle, log-uniform scale in `[0.1, 10]`,
/// translation in `[−10, 10]²`.
pub fn random_similarity(rng: &mut impl Rng) -> AffineMap {
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let scale = 10f64.powf(rng.gen_range(-1.0..1.0));
    let t = Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
    AffineMap::similarity(angle, scale, t).expect("nonzero scale")
}

/// `R(α) · diag(σ1, σ2) · R(β)` plus translation, with singular values in
/// `[0.5, 2]` so the condition number stays below 4.
pub fn random_affine(rng: &mut impl Rng) -> AffineMap {
    let r1 = AffineMap::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
    let r2 = AffineMap::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
    let d = AffineMap::new(rng.gen_range(0.5..2.0), 0.0, 0.0, rng.gen_range(0.5..2.0), 0.0, 0.0).expect("positive");
    let t = AffineMap::translation(Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)));
    t.compose(&r1.compose(&d.compose(&r2)))
}

/// True when every interior angle has sine at least 0.05 and no side is
/// shorter than 0.05 times the longest.
pub fn well_conditioned(q: &Quadrilateral) -> bool {
    let v = q.vertices();
    let sides: Vec<Point> = (0..4).map(|i| v[(i + 1) % 4] - v[i]).collect();
    let lens: Vec<f64> = sides.iter().map(|s| s.norm()).collect();
    let longest = lens.iter().cloned().fold(0.0, f64::max);
    if lens.iter().any(|&l| l < CONDITION * longest) {
        return false;
    }
    (0..4).all(|i| {
        let (u, w) = (sides[i], sides[(i + 1) % 4]);
        (u.cross(w) / (u.norm() * w.norm())).abs() >= CONDITION
    })
}

pub struct Sampler {
    rng: ChaCha8Rng,
    ranges: SampleRanges,
}

impl Sampler {
    pub fn new(rng: ChaCha8Rng, ranges: SampleRanges) -> Self {
        Self { rng, ranges }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    fn accept(&self, p: &QzParams) -> bool {
        p.is_strict()
            && (p.s - p.v).abs() > SLACK * p.s.max(p.v)
            && well_conditioned(&p.quad())
    }

    fn qz_with(&mut self, mut v_of: impl FnMut(&mut Self, f64, f64, f64) -> Option<f64>) -> QzParams {
        let r = self.ranges;
        for _ in 0..MAX_TRIES {
            let s = self.uniform(r.s.0, r.s.1);
            let t = self.uniform(r.t.0, r.t.1);
            let w = self.uniform(r.w.0, r.w.1);
            let Some(v) = v_of(self, s, t, w) else { continue };
            if let Ok(p) = QzParams::new(s, t, v, w) {
                if self.accept(&p) {
                    return p;
                }
            }
        }
        panic!("sample ranges admit no well-conditioned quadrilateral");
    }

    /// Strict, well-conditioned `Q_z` parameters.
    pub fn qz_generic(&mut self) -> QzParams {
        let r = self.ranges;
        self.qz_with(|me, _, _, _| Some(me.uniform(r.v.0, r.v.1)))
    }

    /// Type 1: `vt = (w + 1)s`.
    pub fn qz_type1(&mut self) -> QzParams {
        self.qz_with(|_, s, t, w| Some((w + 1.0) * s / t))
    }

    /// Type 2: `(t − 2)v = (w − 1)s`.
    pub fn qz_type2(&mut self) -> QzParams {
        self.qz_with(|_, s, t, w| ((t - 2.0).abs() > 1e-3).then(|| (w - 1.0) * s / (t - 2.0)))
    }

    pub fn qst(&mut self) -> QstParams {
        let r = self.ranges;
        loop {
            let s = self.uniform(r.s.0.min(0.2), r.s.1);
            let t = self.uniform(r.t.0.min(0.2), r.t.1);
            if (s - 1.0).abs() < SLACK || s + t < 1.0 + SLACK {
                continue;
            }
            if let Ok(p) = QstParams::new(s, t) {
                if well_conditioned(&p.quad()) {
                    return p;
                }
            }
        }
    }

    pub fn parallelogram(&mut self) -> ParallelogramParams {
        loop {
            let l = self.uniform(0.5, 5.0);
            let k = self.uniform(0.5, 5.0);
            let d = self.uniform(-0.9, 0.9) * l;
            let p = ParallelogramParams::new(l, k, d).expect("in range");
            if well_conditioned(&p.quad()) {
                return p;
            }
        }
    }

    /// A trapezoid with exactly one pair of parallel sides.
    pub fn trapezoid(&mut self) -> Quadrilateral {
        loop {
            let base = self.uniform(1.0, 5.0);
            let height = self.uniform(0.5, 5.0);
            let ratio = if self.rng.gen_bool(0.5) {
                self.uniform(0.2, 0.8)
            } else {
                self.uniform(1.25, 3.0)
            };
            let top = base * ratio;
            let x0 = self.uniform(-base, base);
            let pts = [
                Point::ORIGIN,
                Point::new(x0, height),
                Point::new(x0 + top, height),
                Point::new(base, 0.0),
            ];
            if let Ok(q) = Quadrilateral::canonicalize(pts) {
                if well_conditioned(&q) {
                    return q;
                }
            }
        }
    }

    /// A tangential type 1 quad, found by bisecting the Pitot residual
    /// `(a + c) − (b + d)` over `w ∈ (−1, 2t − 1)` with `v = (w + 1)s/t`.
    pub fn l3(&mut self) -> Quadrilateral {
        loop {
            let s = self.uniform(0.6, 8.0);
            let t = self.uniform(0.6, 8.0);
            let pitot = |w: f64| {
                let v = (w + 1.0) * s / t;
                let q = Quadrilateral::from_clockwise_unchecked(QzParams { s, t, v, w }.vertices());
                let (a, b, c, d) = q.side_lengths();
                a + c - b - d
            };
            let (mut lo, mut hi) = (-1.0, 2.0 * t - 1.0);
            if !(pitot(lo) < 0.0 && pitot(hi) > 0.0) {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if pitot(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let w = 0.5 * (lo + hi);
            let v = (w + 1.0) * s / t;
            let Ok(p) = QzParams::new(s, t, v, w) else { continue };
            if let Ok(q) = Quadrilateral::canonicalize(p.vertices()) {
                if well_conditioned(&q) {
                    return q;
                }
            }
        }
    }

    /// A quad circumscribed about the unit circle whose diagonals are
    /// perpendicular. Three tangent directions are random; the fourth is
    /// found by bisection on the diagonal dot product.
    pub fn l5(&mut self) -> Quadrilateral {
        use std::f64::consts::PI;
        fn corner(a: f64, b: f64) -> Point {
            let m = 0.5 * (a + b);
            Point::new(m.cos(), m.sin()) * (1.0 / (0.5 * (b - a)).cos())
        }
        fn quad(t: [f64; 4]) -> [Point; 4] {
            [corner(t[0], t[1]), corner(t[1], t[2]), corner(t[2], t[3]), corner(t[3], t[0] + 2.0 * PI)]
        }
        fn dot(t: [f64; 4]) -> f64 {
            let [p1, p2, p3, p4] = quad(t);
            let (u, w) = (p3 - p1, p4 - p2);
            u.dot(w) / (u.norm() * w.norm())
        }
        loop {
            let a1 = 0.0;
            let a2 = self.uniform(0.4, PI - 0.4);
            let a3 = a2 + self.uniform(0.4, PI - 0.4);
            let (lo0, hi0) = ((a3 + 0.05).max(PI + 0.05), (a3 + PI - 0.05).min(2.0 * PI - 0.05));
            if lo0 >= hi0 {
                continue;
            }
            let f = |a4: f64| dot([a1, a2, a3, a4]);
            let (mut lo, mut hi) = (lo0, hi0);
            let flo = f(lo);
            if flo * f(hi) > 0.0 {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid) * flo > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let pts = quad([a1, a2, a3, 0.5 * (lo + hi)]);
            let map = random_similarity(&mut self.rng);
            if let Ok(q) = Quadrilateral::canonicalize(pts.map(|p| map.apply_point(p))) {
                if well_conditioned(&q) {
                    return q;
                }
            }
        }
    }

    /// Applies a random similarity (or nothing) and re-canonicalizes.
    pub fn place(&mut self, vertices: [Point; 4], similarity: bool) -> Quadrilateral {
        let map = if similarity {
            random_similarity(&mut self.rng)
        } else {
            AffineMap::IDENTITY
        };
        Quadrilateral::canonicalize(vertices.map(|p| map.apply_point(p))).expect("similarity keeps convexity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::MdqType;
    use crate::tol::Tolerances;
    use rand::SeedableRng;

    fn sampler(seed: u64) -> Sampler {
        Sampler::new(ChaCha8Rng::seed_from_u64(seed), SampleRanges::default())
    }

    #[test]
    fn typed_samplers_hit_their_type() {
        let mut s = sampler(1);
        for _ in 0..50 {
            assert!(s.qz_type1().mdq_type() == MdqType::Type1 || s.qz_type1().mdq_type() == MdqType::Both);
            let t2 = s.qz_type2().mdq_type();
            assert!(t2 == MdqType::Type2 || t2 == MdqType::Both);
        }
    }

    #[test]
    fn l3_and_l5_are_tangential() {
        let mut s = sampler(2);
        let tol = Tolerances::default();
        for _ in 0..50 {
            let c = s.l3().classify_with(&tol);
            assert!(c.is_tangential && c.mdq_type.is_mdq(), "{c:?}");
            let c = s.l5().classify_with(&tol);
            assert!(c.is_tangential && c.is_orthodiagonal, "{c:?}");
        }
    }

    #[test]
    fn trapezoids_are_not_parallelograms() {
        let mut s = sampler(3);
        for _ in 0..50 {
            let c = s.trapezoid().classify();
            assert!(c.is_trapezoid && !c.is_parallelogram);
        }
    }

    #[test]
    fn affine_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let m = random_affine(&mut rng);
            assert!(m.det().abs() >= 0.25 && m.det().abs() <= 4.0);
        }
    }
}
