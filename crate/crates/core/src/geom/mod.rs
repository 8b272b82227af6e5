//! Conic-section and affine-map kernel.

mod affine;
mod conic;
mod marden;
mod point;

pub use affine::AffineMap;
pub use conic::{
    classify_conic, conjugate_direction, diameter_endpoints, line_tangency_point,
    tangency_discriminant, Conic, EllipseInfo,
};
pub use marden::{focal_tangency_point, marden_inellipse, MardenInput, MardenResult};
pub use point::{Direction, Line, Point, Slope};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotTangentKind {
    TwoIntersections,
    NoIntersection,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("quadratic part vanishes")]
    NotQuadratic,
    #[error("not an ellipse: 4AC - B^2 = {big_delta} <= 0")]
    NotAnEllipse { big_delta: f64 },
    #[error("degenerate conic: delta = {small_delta} <= 0")]
    Degenerate { small_delta: f64 },
    #[error("line is not tangent ({kind:?}), relative discriminant {discriminant}")]
    NotTangent { kind: NotTangentKind, discriminant: f64 },
    #[error("singular affine map (det = {det})")]
    SingularMap { det: f64 },
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("degenerate line coefficients")]
    DegenerateLine,
    #[error("triangle vertices are collinear")]
    CollinearVertices,
    #[error("weights {weights:?} must sum to 1 with positive product")]
    InvalidWeights { weights: [f64; 3] },
}
