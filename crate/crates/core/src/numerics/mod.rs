//! Scalars, Minkowski vectors, deformation parameters and graded series.

pub mod mink;
pub mod params;
pub mod scalar;
pub mod series;

pub use mink::{eta, lorentz_boost, mink_dot, MinkVec};
pub use params::{DeformParams, RealizationSpec};
pub use scalar::{parse_rational, CRational, Coeff, Rational};
pub use series::{EpsSeries, Taylor};
