//! Exact-arithmetic obstructions for cuspidal curves in the complex projective plane.
//!
//! A hypothetical curve is described by its degree, its genus and the
//! semigroups of its singular points. The crate evaluates the genus formula,
//! the semigroup-counting inequality coming from bottom/top correction terms,
//! the Orevkov/BMY bound, the genus-one multiplicity bound and the
//! semicontinuity of the spectrum, and drives exhaustive searches over
//! candidate singularity types.
//!
//! Module map:
//!
//! * [`semigroup`]: numerical semigroups, counting functions, Alexander polynomials.
//! * [`gapfn`]: gap functions and their min-plus convolution.
//! * [`floer`]: staircases, `γ_m`, Spin^c index sets and correction terms of large surgeries.
//! * [`obstruct`]: the user-facing checks and [`obstruct::ObstructionReport`].
//! * [`classify`]: candidate enumeration, searches and the genus-one classification.

pub mod classify;
mod error;
pub mod floer;
pub mod gapfn;
pub mod obstruct;
pub mod semigroup;

pub use error::{Error, Result};

/// Exact rational used for correction terms, Spin^c indices and spectrum values.
pub type Rational = num_rational::Ratio<i64>;
