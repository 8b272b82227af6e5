//! Ellipses inscribed in convex quadrilaterals.
//!
//! The crate builds the one-parameter family of inscribed ellipses of a
//! convex quadrilateral, classifies midpoint diagonal quadrilaterals (the
//! diagonal intersection is the midpoint of a diagonal), checks the
//! tangency-chord and conjugate-diameter characterizations numerically, and
//! computes the unique inscribed ellipse of minimal eccentricity.

pub mod cli;
pub mod document;
pub mod geom;
pub mod inscribed;
pub mod min_ecc;
pub mod quad;
pub mod svg;
pub mod verify;
pub mod tol;

pub use tol::Tolerances;
