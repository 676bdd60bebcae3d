//! Exact computations on finite Sullivan models.
//!
//! The crate covers free graded-commutative algebras with rational
//! coefficients ([`algebra`]), Sullivan models with their text format
//! ([`model`], [`format`]), degree-wise cohomology ([`cohomology`]),
//! ellipticity through the associated pure model and Gröbner bases
//! ([`purity`], [`groebner`]), two-stage structure analysis ([`structure`]),
//! and rational toral rank bounds with verifiable extension certificates
//! ([`rank`]). The [`corpus`] module runs the bundled example models and
//! [`random`] generates seeded two-stage models for property testing.

pub mod algebra;
pub mod cohomology;
pub mod corpus;
pub mod format;
pub mod groebner;
pub mod linalg;
pub mod model;
pub mod par;
pub mod purity;
pub mod random;
pub mod rank;
pub mod report;
pub mod structure;

pub use algebra::{GenId, Generator, GeneratorTable, Monomial, Polynomial, Scalar};
pub use cohomology::{BettiTable, CohomologyOptions};
pub use model::{Derivation, ModelMorphism, SullivanModel};
pub use par::Execution;
pub use purity::EllipticityReport;
