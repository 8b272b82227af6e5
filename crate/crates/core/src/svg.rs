//! SVG 1.1 figures of a quadrilateral and an inscribed ellipse.

use std::fmt::Write;

use crate::geom::Point;
use crate::inscribed::InscribedEllipseReport;
use crate::min_ecc::MinEccResult;
use crate::quad::Quadrilateral;

/// What to draw besides the quadrilateral, its diagonals and its Newton
/// segment.
#[derive(Debug, Clone, Copy, Default)]
pub struct Figure<'a> {
    pub ellipse: Option<&'a InscribedEllipseReport>,
    /// Adds the equal conjugate diameters.
    pub min_ecc: Option<&'a MinEccResult>,
    /// Draw the ellipse as `<circle>`.
    pub circle: bool,
}

fn num(x: f64) -> String {
    // shortest round-trip form; avoid "-0"
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

fn pt(p: Point) -> String {
    format!("{},{}", num(p.x), num(p.y))
}

fn line(out: &mut String, class: &str, a: Point, b: Point, extra: &str) {
    let _ = writeln!(
        out,
        r#"    <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"{extra}/>"#,
        num(a.x),
        num(a.y),
        num(b.x),
        num(b.y)
    );
}

fn dot(out: &mut String, class: &str, p: Point, r: f64) {
    let _ = writeln!(out, r#"    <circle class="{class}" cx="{}" cy="{}" r="{}"/>"#, num(p.x), num(p.y), num(r));
}

/// Renders the figure in world coordinates: a `scale(1,-1)` group keeps
/// `y` pointing up, and the view box is the vertex bounding box grown by
/// 5% of its larger side.
pub fn render_svg(q: &Quadrilateral, fig: Figure<'_>) -> String {
    let v = q.vertices();
    let (mut lo, mut hi) = (v[0], v[0]);
    for p in &v[1..] {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let size = (hi.x - lo.x).max(hi.y - lo.y);
    let m = 0.05 * size;
    let stroke = size / 250.0;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    out.push_str(
        "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n",
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(lo.x - m),
        num(-(hi.y + m)),
        num(hi.x - lo.x + 2.0 * m),
        num(hi.y - lo.y + 2.0 * m)
    );
    let _ = writeln!(
        out,
        r#"  <g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{}">"#,
        num(stroke)
    );
    let points: Vec<String> = v.iter().map(|&p| pt(p)).collect();
    let _ = writeln!(out, r#"    <polygon class="quad" points="{}"/>"#, points.join(" "));
    let dash = format!(r#" stroke-dasharray="{} {}""#, num(4.0 * stroke), num(3.0 * stroke));
    line(&mut out, "diagonal", v[0], v[2], &dash);
    line(&mut out, "diagonal", v[1], v[3], &dash);
    let c = q.classify();
    let dotted = format!(r#" stroke-dasharray="{} {}" stroke="gray""#, num(stroke), num(2.0 * stroke));
    line(&mut out, "newton", c.m1, c.m2, &dotted);

    if let Some(rep) = fig.ellipse {
        let info = &rep.info;
        let center = info.center;
        if fig.circle {
            let r = 0.5 * (info.a + info.b);
            let _ = writeln!(
                out,
                r#"    <circle class="ellipse" cx="{}" cy="{}" r="{}" stroke="blue"/>"#,
                num(center.x),
                num(center.y),
                num(r)
            );
        } else {
            let (s, co) = info.major_angle.sin_cos();
            let p0 = Point::new(center.x + info.a * co, center.y + info.a * s);
            let p1 = Point::new(center.x - info.a * co, center.y - info.a * s);
            let deg = info.major_angle.to_degrees();
            let _ = writeln!(
                out,
                r#"    <path class="ellipse" stroke="blue" d="M {} A {} {} {} 1 0 {} A {} {} {} 1 0 {} Z"/>"#,
                pt(p0),
                num(info.a),
                num(info.b),
                num(deg),
                pt(p1),
                num(info.a),
                num(info.b),
                num(deg),
                pt(p0)
            );
        }
        let [q1, q2, q3, q4] = rep.tangency.points;
        for (a, b) in [(q1, q2), (q2, q3), (q3, q4), (q1, q4)] {
            line(&mut out, "chord", a, b, r#" stroke="green""#);
        }
        let _ = writeln!(out, r#"    <g fill="red" stroke="none">"#);
        dot(&mut out, "center", rep.center, 2.0 * stroke);
        for p in rep.tangency.points {
            dot(&mut out, "tangency", p, 2.0 * stroke);
        }
        out.push_str("    </g>\n");
    }
    if let Some(r) = fig.min_ecc {
        for (a, b) in r.equal_diameters {
            line(&mut out, "diameter", a, b, r#" stroke="purple""#);
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
