//! Exact computations with finite W-superalgebras of `gl(M|N)`.
//!
//! The crate realizes the W-superalgebra attached to a pyramid inside `U(p)`
//! through explicit generator formulas, checks the shifted super Yangian
//! relations on those generators by PBW straightening, and classifies the
//! one-dimensional representations through column-connected tableaux.
//!
//! Module map:
//!
//! * [`gl`]: basis, supercommutator and supertrace form of `gl(M|N)`.
//! * [`pyramid`]: pyramids, their combinatorics and the good pair `(e, h)`.
//! * [`pbw`]: the enveloping superalgebra as a straightening engine.
//! * [`weights`]: the weights `η`, `ρ_h`, `ρ̃`, `ρ̄`, `β`, `δ` and root partitions.
//! * [`wgen`]: the generators `D`, `E`, `F` and the relation verifier.
//! * [`modules1d`]: tableaux, eigenvalue data and the classification.

pub mod error;
pub mod gl;
pub mod linalg;
pub mod modules1d;
pub mod pbw;
pub mod pyramid;
pub mod scalar;
pub mod weights;
pub mod wgen;

pub use error::{Error, Result};
pub use gl::{BoxIndex, LieSuperElement, Sign};
pub use pbw::{Uea, UeaElement};
pub use pyramid::{Pyramid, ShiftMatrix};
pub use scalar::Rational;
