//! Exact computation in Laurent group rings `Z[Z^m]` and their Novikov
//! completions graded by a linear form.
//!
//! The crate is organized around the objects it manipulates:
//!
//! * [`group_ring`] — sparse exact arithmetic in `Z[Z^m]`, grading forms,
//!   norms and truncations;
//! * [`cones`] — integral cones over the lattice, exact membership,
//!   integral hulls, perturbation covers and growth-transfer constants;
//! * [`series`] — truncated Novikov-ring elements with validity-cutoff
//!   tracking, geometric matrix series, twisted (semilinear) operator
//!   powers and growth profiling;
//! * [`rationality`] — certified rational closed forms via the adjugate,
//!   series expansion, and linear-recurrence recognition;
//! * [`complex`] — boundary data of a Novikov complex, `d² = 0`
//!   verification over truncations, cone-support certification, and a
//!   built-in worked example on a 3-manifold.
//!
//! All ring coefficients are arbitrary-precision integers and all grading
//! comparisons are exact rationals; nothing in the numeric core rounds.
//! The polynomial layer is generic over the coefficient scalar through
//! [`scalar::Coeff`]; the concrete aliases below fix the exact types the
//! rest of the crate (and the CLI) work with.

pub mod complex;
pub mod cones;
pub mod error;
pub mod group_ring;
pub mod json;
pub mod rationality;
pub mod scalar;
pub mod series;

/// Arbitrary-precision integer coefficients.
pub type Int = num_bigint::BigInt;
/// Exact rational scalars (grading values, cutoffs, witnesses).
pub type Rat = num_rational::BigRational;

/// The Laurent group ring `Z[Z^m]` with big-integer coefficients.
pub type LaurentElement = group_ring::Laurent<Int>;
/// Square matrices over [`LaurentElement`].
pub type LaurentMatrix = group_ring::LaurentSquareMatrix<Int>;

pub use error::Error;
pub use group_ring::{ExponentVector, GradingForm};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Converts an `i64` into the coefficient type.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Converts an `i64` into an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact rational `n/d`; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
