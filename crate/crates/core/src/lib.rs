//! Exact finite-dimensional algebra over the Gaussian rationals: structure
//! constants, bimodules, zero-product pairs, and solvers for derivation-type
//! identities, with checkable certificates.

pub mod algebra;
pub mod builders;
pub mod certificate;
pub mod deriv;
pub mod idempotents;
pub mod linalg;
pub mod maps;
pub mod sampling;
pub mod scalar;
pub mod zero_products;
pub mod zpd;

pub use algebra::{verify_algebra, verify_bimodule, Algebra, AlgebraError, Bimodule, Side, StructureConstants};
pub use certificate::{Certificate, Outcome, Witness};
pub use deriv::{ConditionTag, MapSpace};
pub use idempotents::{IdealSpec, IdempotentFamily};
pub use linalg::{Matrix, Subspace, Vector};
pub use maps::{BilinearMap, LinearMap};
pub use scalar::{Rational, Scalar};
pub use zero_products::{PairMode, ZeroPairSet};
pub use zpd::Product;
