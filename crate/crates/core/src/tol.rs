//! Residual tolerance policy shared by classification and verification.

use serde::{Deserialize, Serialize};

/// Tolerances used across the crate.
///
/// `residual` is dimensionless and gets multiplied by a geometric scale
/// (quad diameter, coefficient norm) at the point of use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub residual: f64,
    pub param: f64,
    pub tangency: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-9,
            param: 1e-12,
            tangency: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn with_residual(residual: f64) -> Self {
        Self {
            residual,
            ..Self::default()
        }
    }
}

/// Parses a decimal tolerance string (as accepted from `INELLIPSE_TOL`).
///
/// Only finite, strictly positive values below 1 are accepted.
pub fn parse_tolerance(text: &str) -> Option<f64> {
    let value: f64 = text.trim().parse().ok()?;
    (value.is_finite() && value > 0.0 && value < 1.0).then_some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_tolerances() {
        assert_eq!(parse_tolerance("1e-6"), Some(1e-6));
        assert_eq!(parse_tolerance(" 0.001 "), Some(0.001));
        assert_eq!(parse_tolerance("0"), None);
        assert_eq!(parse_tolerance("-1e-3"), None);
        assert_eq!(parse_tolerance("NaN"), None);
        assert_eq!(parse_tolerance("inf"), None);
        assert_eq!(parse_tolerance("abc"), None);
    }
}
