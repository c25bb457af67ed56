//! Exact toolkit for affine schemes with a `G_m`-action, presented as
//! weighted-graded quotients `k[x]/I`.
//!
//! The crate builds the fixed-point locus, attractor and repeller of such a
//! scheme, the interpolation family over the `t`-line, and checks the
//! identities between them with a Buchberger engine. A brute-force
//! finite-field point counter provides an independent cross-check.

pub mod error;
pub mod frontend;
pub mod gmaction;
pub mod groebner;
pub mod interp;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use gmaction::{AlgebraMap, GradedAlgebra, StructureMapKind};
pub use groebner::{Ideal, Limits};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, WeightedDegree};
pub use ring::{RingSpec, Variable};
pub use scalar::{Field, Scalar};
