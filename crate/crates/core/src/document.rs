//! JSON documents read and written by the command-line tool.
//!
//! Output documents always carry every top-level key (absent blocks are
//! `null`) and print every float with 17 significant digits, so a parsed
//! number is bit-identical to the computed one.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::geom::{Conic, Point, Slope};
use crate::inscribed::{ChordSlopes, FamilyParam, InscribedEllipseReport};
use crate::min_ecc::{MinEccMode, MinEccResult};
use crate::quad::{newton_segment, to_parallelogram, to_qz, FrameParams, MdqType, QuadError, Quadrilateral};
use crate::tol::Tolerances;
use crate::verify::BatchReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadDocument {
    pub vertices: [[f64; 2]; 4],
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid quadrilateral: {0}")]
    Quad(#[from] QuadError),
}

impl QuadDocument {
    pub fn from_quad(q: &Quadrilateral) -> Self {
        Self {
            vertices: q.vertices().map(Point::to_array),
            label: None,
        }
    }

    pub fn quad(&self) -> Result<Quadrilateral, QuadError> {
        Quadrilateral::canonicalize(self.vertices.map(Point::from))
    }
}

/// Parses a quad document and canonicalizes its vertices.
pub fn parse_quad_document(text: &str) -> Result<(QuadDocument, Quadrilateral), DocumentError> {
    let doc: QuadDocument = serde_json::from_str(text)?;
    let quad = doc.quad()?;
    Ok((doc, quad))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameBlock {
    pub params: FrameParams,
    /// Frame vertex `i` is canonical vertex `(i + shift) % 4`.
    pub shift: usize,
    /// Range of the family parameter: `h` for `Q_z`, `v` for parallelograms.
    pub interval: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationBlock {
    /// `parallelogram`, `type1`, `type2`, `trapezoid` or `generic`.
    pub kind: String,
    pub mdq_type: MdqType,
    pub is_parallelogram: bool,
    pub is_tangential: bool,
    pub is_orthodiagonal: bool,
    pub is_trapezoid: bool,
    pub is_kite: bool,
    pub diagonal_intersection: Point,
    pub midpoint_d1: Point,
    pub midpoint_d2: Point,
    /// `|A1A4|, |A1A2|, |A2A3|, |A3A4|`.
    pub side_lengths: [f64; 4],
    pub frame: Option<FrameBlock>,
}

impl ClassificationBlock {
    pub fn new(q: &Quadrilateral, tol: &Tolerances) -> Self {
        let c = q.classify_with(tol);
        let kind = if c.is_parallelogram {
            "parallelogram"
        } else if c.mdq_type.is_mdq() {
            c.mdq_type.as_str()
        } else if c.is_trapezoid {
            "trapezoid"
        } else {
            "generic"
        };
        let frame = if c.is_parallelogram {
            to_parallelogram(q).ok().map(|f| FrameBlock {
                params: f.params,
                shift: f.shift,
                interval: [-1.0, 1.0],
            })
        } else {
            to_qz(q).ok().and_then(|f| {
                let n = newton_segment(q, &f).ok()?;
                Some(FrameBlock {
                    params: f.params,
                    shift: f.shift,
                    interval: [n.interval.0, n.interval.1],
                })
            })
        };
        let (a, b, cc, d) = q.side_lengths();
        Self {
            kind: kind.to_string(),
            mdq_type: c.mdq_type,
            is_parallelogram: c.is_parallelogram,
            is_tangential: c.is_tangential,
            is_orthodiagonal: c.is_orthodiagonal,
            is_trapezoid: c.is_trapezoid,
            is_kite: c.is_kite,
            diagonal_intersection: c.diagonal_intersection,
            midpoint_d1: c.m1,
            midpoint_d2: c.m2,
            side_lengths: [a, b, cc, d],
            frame,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlopeBlock {
    pub slope: Option<f64>,
    pub vertical: bool,
}

impl From<Slope> for SlopeBlock {
    fn from(s: Slope) -> Self {
        Self {
            slope: s.value(),
            vertical: s == Slope::Vertical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChordBlock {
    pub q1q2: SlopeBlock,
    pub q2q3: SlopeBlock,
    pub q3q4: SlopeBlock,
    pub q1q4: SlopeBlock,
}

impl From<ChordSlopes> for ChordBlock {
    fn from(c: ChordSlopes) -> Self {
        Self {
            q1q2: c.q1q2.into(),
            q2q3: c.q2q3.into(),
            q3q4: c.q3q4.into(),
            q1q4: c.q1q4.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseBlock {
    pub param: FamilyParam,
    /// Center abscissa in the `Q_z` or `Q_{s,t}` frame.
    pub h: Option<f64>,
    /// Bottom-side tangency abscissa in the `Q_{s,t}` frame.
    pub q: Option<f64>,
    /// Normalized so that `a + c = 1`.
    pub conic: Conic,
    /// Coprime integers proportional to the conic, when it has one.
    pub integer_form: Option<[i64; 6]>,
    pub center: Point,
    pub semi_axes: [f64; 2],
    pub major_angle: f64,
    pub eccentricity: f64,
    pub is_circle: bool,
    /// `q_j` lies on side `S_j`.
    pub tangency_points: [Point; 4],
    pub chord_slopes: ChordBlock,
}

impl EllipseBlock {
    pub fn new(rep: &InscribedEllipseReport, tol: &Tolerances) -> Self {
        let info = &rep.info;
        Self {
            param: rep.param,
            h: rep.h,
            q: rep.q,
            conic: rep.conic,
            integer_form: integer_form(&rep.conic),
            center: rep.center,
            semi_axes: [info.a, info.b],
            major_angle: info.major_angle,
            eccentricity: info.eccentricity,
            is_circle: 1.0 - info.ratio_sq <= tol.residual,
            tangency_points: rep.tangency.points,
            chord_slopes: rep.tangency.chords.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinEccBlock {
    pub mode: MinEccMode,
    pub h_plus: Option<f64>,
    pub eccentricity: f64,
    pub is_circle: bool,
    /// Equal conjugate diameters along `D1` and `D2`, as endpoint pairs.
    pub diameters: [[Point; 2]; 2],
    pub length_gap: f64,
    pub conjugacy_residual: f64,
    pub warning: Option<String>,
}

impl From<&MinEccResult> for MinEccBlock {
    fn from(r: &MinEccResult) -> Self {
        let [(p1, p2), (p3, p4)] = r.equal_diameters;
        Self {
            mode: r.mode,
            h_plus: r.h_plus,
            eccentricity: r.eccentricity,
            is_circle: r.is_circle,
            diameters: [[p1, p2], [p3, p4]],
            length_gap: r.length_gap,
            conjugacy_residual: r.conjugacy_residual,
            warning: r.warning.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub command: String,
    pub tolerance: f64,
    pub input: Option<QuadDocument>,
    /// Clockwise, starting from the lowest (then leftmost) vertex.
    pub canonical_vertices: Option<[Point; 4]>,
    pub classification: Option<ClassificationBlock>,
    pub ellipse: Option<EllipseBlock>,
    pub min_ecc: Option<MinEccBlock>,
    pub verification: Option<BatchReport>,
}

impl ResultDocument {
    pub fn new(command: &str, tol: &Tolerances) -> Self {
        Self {
            command: command.to_string(),
            tolerance: tol.residual,
            input: None,
            canonical_vertices: None,
            classification: None,
            ellipse: None,
            min_ecc: None,
            verification: None,
        }
    }

    pub fn with_quad(mut self, doc: QuadDocument, q: &Quadrilateral, tol: &Tolerances) -> Self {
        self.input = Some(doc);
        self.canonical_vertices = Some(q.vertices());
        self.classification = Some(ClassificationBlock::new(q, tol));
        self
    }

    /// Pretty JSON with 17 significant digits per float.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents are plain data");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

pub fn parse_result_document(text: &str) -> Result<ResultDocument, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

/// Formats `x` with 17 significant digits, trailing zeros dropped.
/// Positional notation for decimal exponents in `[-5, 16]`, scientific
/// otherwise. Non-finite values become `null`.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    if (-5..=16).contains(&exp) {
        if exp >= 0 {
            let e = exp as usize;
            let (int, frac) = if digits.len() > e + 1 {
                (digits[..=e].to_string(), digits[e + 1..].to_string())
            } else {
                (format!("{digits:0<width$}", width = e + 1), "0".to_string())
            };
            format!("{sign}{int}.{frac}")
        } else {
            format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
        }
    } else {
        let (head, tail) = digits.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        format!("{sign}{head}.{tail}e{exp}")
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) if !n.is_f64() => out.push_str(&i.to_string()),
            (_, Some(u)) if !n.is_f64() => out.push_str(&u.to_string()),
            _ => out.push_str(&format_number(n.as_f64().expect("float"))),
        },
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) => {
            if items.iter().all(|x| x.is_number() || x.is_null()) && !items.is_empty() {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, out);
                }
                out.push(']');
            } else if items.is_empty() {
                out.push_str("[]");
            } else {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    write_value(x, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

const MAX_DENOMINATOR: i64 = 1_000_000;

/// First continued-fraction convergent `p/q` of `x` within `1e-9`, if its
/// denominator is at most `10⁶`.
pub fn rational_approximation(x: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e9 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > MAX_DENOMINATOR {
            return None;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if (x - p1 as f64 / q1 as f64).abs() <= 1e-9 {
            return Some((p1, q1));
        }
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Coprime integers proportional to the conic, when the normalized
/// coefficients share a denominator of at most `10⁶` (each within `1e-9`).
pub fn integer_form(conic: &Conic) -> Option<[i64; 6]> {
    let mut fracs = [(0i64, 1i64); 6];
    let mut lcm: i64 = 1;
    for (slot, c) in fracs.iter_mut().zip(conic.to_array()) {
        let (p, q) = rational_approximation(c)?;
        *slot = (p, q);
        lcm = lcm / gcd(lcm, q) * q;
        if lcm > MAX_DENOMINATOR {
            return None;
        }
    }
    let ints = fracs.map(|(p, q)| p * (lcm / q));
    let g = ints.iter().fold(0, |g, &n| gcd(g, n));
    (g != 0).then(|| ints.map(|n| n / g))
}
