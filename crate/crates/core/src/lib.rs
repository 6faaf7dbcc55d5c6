//! Finite-dimensional measure cones over exact rational arithmetic.
//!
//! A *measure cone* is a triple `(V, V⁺, e)` of a real vector space, a
//! generating proper convex cone, and a strictly positive linear *charge*
//! functional. This crate realizes such triples as polyhedral cones over ℚⁿ
//! given by their generating rays, and implements the structure that comes
//! with them:
//!
//! - charge splits `e₊/e₋` and minimal (Hahn–Jordan style) decompositions,
//!   computed by exact rational linear programming ([`lp`]);
//! - the base norm (`1-norm`) and the wider family of cone-contour norms
//!   ([`cone::McNorm`]);
//! - norm-orthogonality, disjointness witnesses in the dual effect interval
//!   `[o, e]`, and support-family verification ([`cone`]);
//! - concrete instances: classical lattice cones, the square-base cone with
//!   non-unique minimal decompositions, seeded random cones, and a
//!   floating-point positive-semidefinite matrix cone ([`instances`]);
//! - direction/mixing distances and audited charge-preserving positive maps
//!   ([`maps`]).
//!
//! Every computation on polyhedral cones is exact: scalars are
//! arbitrary-precision rationals and the LP kernel pivots without rounding.
//! The only floating-point corner is the spectral matrix instance, which is
//! explicitly tolerance-based.

pub mod cone;
pub mod error;
pub mod instances;
pub mod linalg;
pub mod lp;
pub mod maps;
pub mod rational;

pub use cone::{
    ChargeSplit, Decomposition, DecompositionSet, Effect, McNorm, PolyhedralCone,
    SupportFamilyReport, ValidationReport,
};
pub use error::{Error, Result};
pub use linalg::{RMatrix, RVector};
pub use lp::{LinearProgram, LpResult, LpSolution};
pub use maps::{CrossingCertificate, DirectionDistance, LinearMap, MapAudit, MixingOrder};
pub use rational::{RatInterval, Rational};
