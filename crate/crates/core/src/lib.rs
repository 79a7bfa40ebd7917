//! Generalized Apollonius curves and equioptic curves of circles in the
//! hyperbolic and elliptic planes.
//!
//! The crate works in the projective model: hyperbolic points live in the
//! Beltrami–Klein disk, elliptic points in the gnomonic chart. Curves are
//! symmetric 3×3 matrices, so isometries act on them by congruence.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apollonius;
pub mod document;
pub mod equioptic;
pub mod error;
pub mod geometry;
pub mod render;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{CurvatureSign, HomogeneousLine, HomogeneousPoint, Isometry};
