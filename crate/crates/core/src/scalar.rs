//! Coefficient scalar abstraction for the polynomial layer.
//!
//! The sparse Laurent arithmetic does not care what its coefficients are
//! beyond exact ring operations with a sign, so it is written against this
//! trait. The crate root instantiates it at [`num_bigint::BigInt`], which
//! is the type every exact statement in the library is made about;
//! machine integers work too for small experiments.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::Signed;

/// An exact, signed coefficient ring element.
pub trait Coeff:
    Clone + Debug + Display + Eq + Ord + Signed + Neg<Output = Self> + From<i32> + 'static
{
}

impl<T> Coeff for T where
    T: Clone + Debug + Display + Eq + Ord + Signed + Neg<Output = T> + From<i32> + 'static
{
}
