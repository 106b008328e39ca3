//! Newton–Okounkov bodies of divisor and curve classes on projective bundles
//! over curves, surface area measures of polytopes, Minkowski reconstruction
//! and Blaschke sums.

pub mod area_measure;
pub mod bundle;
pub mod error;
pub mod linalg;
pub mod par;
pub mod polytope;
pub mod scalar;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use polytope::{AnyPolytope, Halfspace, Polytope};
pub use scalar::{Number, NumericMode, Rational, Real, Scalar};
