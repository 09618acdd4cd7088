use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type the numerics are generic over.
///
/// `f64` is the production choice; `f32` works when memory or bandwidth
/// matters more than the last digits. Tolerances written against the spec's
/// f64 figures are floored at a small multiple of the type's epsilon so the
/// same code stays meaningful at lower precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Shorthand for converting an f64 constant into `Self`.
    #[inline]
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }

    /// Smallest relative tolerance that is meaningful for this type.
    #[inline]
    fn tol_floor() -> Self {
        Self::epsilon() * Self::c(16.0)
    }

    /// Clamp a requested tolerance to what the type can resolve.
    #[inline]
    fn effective_tol(requested: f64) -> Self {
        let req = Self::c(requested);
        if req < Self::tol_floor() {
            Self::tol_floor()
        } else {
            req
        }
    }

    /// Unit in the last place of `self` (spacing to the next float).
    #[inline]
    fn ulp(self) -> Self {
        let a = self.abs();
        if a == Self::zero() {
            return Self::min_positive_value();
        }
        if !a.is_finite() {
            return Self::infinity();
        }
        // epsilon = 2^(1-p), so ulp(x) = epsilon * 2^floor(log2 x).
        Self::epsilon() * Self::c(2.0).powf(a.log2().floor())
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}
