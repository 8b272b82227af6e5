//! One-dimensional maximization on an open interval.

/// Number of interior points sampled before bracketing.
pub const PRESCAN: usize = 64;

/// Golden-section maximization of `f` on `(lo, hi)`.
///
/// A uniform prescan picks the best sample, and the search then runs on
/// the bracket formed by its neighbours until the bracket is narrower than
/// `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let step = (hi - lo) / PRESCAN as f64;
    let best = (1..PRESCAN)
        .map(|i| (i, f(lo + step * i as f64)))
        .fold((1, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let (mut a, mut b) = (lo + step * (best.0 - 1) as f64, lo + step * (best.0 + 1) as f64);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    0.5 * (a + b)
}

/// Refines a maximizer near `x0` by bisecting on the sign of the derivative
/// `df`, inside `(lo, hi)`. Returns `x0` if no sign change is bracketed.
pub fn polish_by_slope(df: impl Fn(f64) -> f64, x0: f64, lo: f64, hi: f64, width: f64) -> f64 {
    let mut a = (x0 - width).max(lo + 0.25 * (x0 - lo));
    let mut b = (x0 + width).min(hi - 0.25 * (hi - x0));
    let (fa, fb) = (df(a), df(b));
    if !(fa > 0.0 && fb < 0.0) {
        return x0;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if df(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
