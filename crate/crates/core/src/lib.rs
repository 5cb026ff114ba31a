//! Isoparametric hypersurfaces in spheres.
//!
//! Exact construction of Cartan–Münzner polynomials for `g ∈ {1, 2, 3}` and
//! numerical verification of the geometry of their level sets.

pub mod algebra;
pub mod error;
pub mod families;
pub mod geometry;
pub mod polynomial;
pub mod report;
pub mod scalar;
pub mod tolerance;

pub use algebra::{AlgElem, AlgebraKind};
pub use error::{Error, Result};
pub use families::{catalog, catalog_names, verify_exact, FamilyKind, FamilySpec};
pub use geometry::{FamilyField, LevelPoint, Sampler, SpherePoint};
pub use polynomial::{MultiPoly, Poly};
pub use scalar::{QSqrt3, Rational};
