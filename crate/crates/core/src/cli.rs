//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error,
//! 3 parameter error, 4 output I/O error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::document::{parse_quad_document, EllipseBlock, MinEccBlock, QuadDocument, ResultDocument};
use crate::inscribed::{inscribed_ellipse_with, FamilyParam, InscribedEllipseReport};
use crate::min_ecc::{min_ecc_ellipse_with, MinEccOptions, MinEccResult};
use crate::quad::Quadrilateral;
use crate::svg::{render_svg, Figure};
use crate::tol::{parse_tolerance, Tolerances};
use crate::verify::{parse_checks, run_batch, verify_quad, BatchConfig, CheckId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PARAMETER: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable overriding the residual tolerance.
pub const TOL_ENV: &str = "INELLIPSE_TOL";

#[derive(Debug, Parser)]
#[command(name = "inellipse", version, about = "Ellipses inscribed in convex quadrilaterals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a quadrilateral.
    Classify {
        /// Quad document (JSON), or `-` for standard input.
        input: PathBuf,
    },
    /// Construct one member of the inscribed family.
    Ellipse {
        input: PathBuf,
        #[command(flatten)]
        param: RequiredParam,
    },
    /// Minimal-eccentricity inscribed ellipse.
    MinEcc {
        input: PathBuf,
        /// Search numerically even when a closed form exists.
        #[arg(long)]
        force_numeric: bool,
    },
    /// Check the theorems on one input or on a seeded random batch.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        input: Option<PathBuf>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Minimum distance from the midpoint-diagonal lines for negative
        /// assertions; 0 disables them.
        #[arg(long, default_value_t = 0.05)]
        margin: f64,
    },
    /// Draw the quadrilateral and optionally an inscribed ellipse as SVG.
    Render {
        input: PathBuf,
        #[command(flatten)]
        param: OptionalParam,
        /// Draw the minimal-eccentricity ellipse and its equal conjugate
        /// diameters.
        #[arg(long, conflicts_with_all = ["h", "q", "v"])]
        min_ecc: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct RequiredParam {
    /// Center abscissa in the `Q_z` frame.
    #[arg(long, allow_negative_numbers = true)]
    h: Option<f64>,
    /// Bottom-side tangency abscissa in the `Q_{s,t}` frame, in (0,1).
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    /// Parallelogram parameter, in (-1,1).
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalParam {
    #[arg(long, allow_negative_numbers = true)]
    h: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
}

fn family_param(h: Option<f64>, q: Option<f64>, v: Option<f64>) -> Option<FamilyParam> {
    h.map(FamilyParam::H).or(q.map(FamilyParam::Q)).or(v.map(FamilyParam::V))
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<(QuadDocument, Quadrilateral), Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?
    };
    parse_quad_document(&text).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))
}

fn tolerances() -> Result<Tolerances, Failure> {
    match std::env::var(TOL_ENV) {
        Ok(text) => parse_tolerance(&text)
            .map(Tolerances::with_residual)
            .ok_or_else(|| Failure::new(EXIT_INPUT, format!("{TOL_ENV} must be a decimal in (0,1), got {text:?}"))),
        Err(_) => Ok(Tolerances::default()),
    }
}

fn ellipse(q: &Quadrilateral, param: FamilyParam, tol: &Tolerances) -> Result<InscribedEllipseReport, Failure> {
    inscribed_ellipse_with(q, param, tol).map_err(|e| Failure::new(EXIT_PARAMETER, e.to_string()))
}

fn min_ecc(q: &Quadrilateral, force_numeric: bool, tol: &Tolerances) -> Result<MinEccResult, Failure> {
    let opts = MinEccOptions {
        force_numeric,
        ..MinEccOptions::default()
    };
    min_ecc_ellipse_with(q, opts, tol).map_err(|e| Failure::new(EXIT_PARAMETER, e.to_string()))
}

fn execute(cli: Cli, stderr: &mut dyn Write) -> Result<(ResultDocument, i32), Failure> {
    let tol = tolerances()?;
    match cli.command {
        Command::Classify { input } => {
            let (doc, q) = read_input(&input)?;
            Ok((ResultDocument::new("classify", &tol).with_quad(doc, &q, &tol), EXIT_OK))
        }
        Command::Ellipse { input, param } => {
            let (doc, q) = read_input(&input)?;
            let p = family_param(param.h, param.q, param.v).expect("clap requires one");
            let rep = ellipse(&q, p, &tol)?;
            let mut out = ResultDocument::new("ellipse", &tol).with_quad(doc, &q, &tol);
            out.ellipse = Some(EllipseBlock::new(&rep, &tol));
            Ok((out, EXIT_OK))
        }
        Command::MinEcc { input, force_numeric } => {
            let (doc, q) = read_input(&input)?;
            let r = min_ecc(&q, force_numeric, &tol)?;
            if let Some(w) = &r.warning {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let mut out = ResultDocument::new("min-ecc", &tol).with_quad(doc, &q, &tol);
            out.ellipse = Some(EllipseBlock::new(&r.ellipse, &tol));
            out.min_ecc = Some(MinEccBlock::from(&r));
            Ok((out, EXIT_OK))
        }
        Command::Verify {
            input,
            random,
            samples,
            seed,
            checks,
            margin,
        } => {
            let checks: Vec<CheckId> = parse_checks(&checks).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
            if !(margin.is_finite() && margin >= 0.0) {
                return Err(Failure::new(EXIT_INPUT, format!("margin must be finite and non-negative, got {margin}")));
            }
            let mut out = ResultDocument::new("verify", &tol);
            let report = if random {
                let cfg = BatchConfig {
                    samples,
                    seed,
                    checks,
                    margin,
                    ..BatchConfig::default()
                };
                run_batch(&cfg, &tol).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?
            } else {
                let (doc, q) = read_input(input.as_ref().expect("clap requires input"))?;
                out = out.with_quad(doc, &q, &tol);
                verify_quad(&q, &checks, margin, &tol)
            };
            let code = if report.passed {
                EXIT_OK
            } else {
                let failed: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| c.fail > 0)
                    .map(|c| c.check.to_string())
                    .collect();
                let _ = writeln!(stderr, "verification failed: {}", failed.join(", "));
                EXIT_VERIFY_FAILED
            };
            out.verification = Some(report);
            Ok((out, code))
        }
        Command::Render {
            input,
            param,
            min_ecc: with_min_ecc,
            out: path,
        } => {
            let (doc, q) = read_input(&input)?;
            let mut out = ResultDocument::new("render", &tol).with_quad(doc, &q, &tol);
            let mut rep = None;
            let mut best = None;
            if with_min_ecc {
                let r = min_ecc(&q, false, &tol)?;
                out.min_ecc = Some(MinEccBlock::from(&r));
                best = Some(r);
            } else if let Some(p) = family_param(param.h, param.q, param.v) {
                rep = Some(ellipse(&q, p, &tol)?);
            }
            let shown = best.as_ref().map(|r| &r.ellipse).or(rep.as_ref());
            let block = shown.map(|r| EllipseBlock::new(r, &tol));
            let fig = Figure {
                ellipse: shown,
                min_ecc: best.as_ref(),
                circle: block.as_ref().is_some_and(|b| b.is_circle),
            };
            out.ellipse = block;
            let svg = render_svg(&q, fig);
            std::fs::write(&path, svg)
                .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
            Ok((out, EXIT_OK))
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli, stderr) {
        Ok((doc, code)) => {
            if stdout.write_all(doc.to_json().as_bytes()).is_err() {
                return EXIT_IO;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("inellipse").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, EXIT_INPUT);
        assert_eq!(call(&["ellipse", "x.json"]).0, EXIT_INPUT);
        assert_eq!(call(&["ellipse", "x.json", "--h", "1", "--q", "0.5"]).0, EXIT_INPUT);
        assert_eq!(call(&["verify"]).0, EXIT_INPUT);
        assert_eq!(call(&["verify", "--random", "--samples", "0"]).0, EXIT_INPUT);
        assert_eq!(call(&["verify", "--random", "--checks", "t9"]).0, EXIT_INPUT);
        assert_eq!(call(&["classify", "/nonexistent/quad.json"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
