use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Scalar type for distances: `f32` or `f64`.
///
/// Everything in this crate is an exact max/min computation over finitely
/// many distance values, so any IEEE float works; `f64` is the default used
/// by the crate-root aliases and the CLI.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute comparison tolerance used by validators and bound checkers
    /// when no explicit tolerance is supplied.
    fn default_tolerance() -> Self {
        Self::from_f64(1e-9).unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
