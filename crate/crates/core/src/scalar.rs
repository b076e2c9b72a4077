//! Scalar abstraction for sub-wedge sizes.
//!
//! Every combinatorial routine in this crate (angle sequences, the flip
//! dynamic programs, the matching algorithms, the oracle) only needs ring
//! arithmetic and a total-ish order, so they are written against [`Weight`].
//! That lets the same code run on `f64` radians, on `f32`, and on exact
//! integers such as `i64` (used by the hardness gadgets, whose bounds are
//! integer identities) or `num_rational::Ratio<i64>`.
//!
//! Quantities that are inherently real (square roots, ratios) are reported
//! as `f64` through [`Weight::as_f64`].

use std::fmt::Debug;

use num_traits::{Float, Num, ToPrimitive};

/// A sub-wedge size: any copyable ordered ring element convertible to `f64`.
pub trait Weight: Copy + PartialOrd + Debug + Num + ToPrimitive + Send + Sync + 'static {
    /// Lossy conversion used for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn is_negative(self) -> bool {
        self < Self::zero()
    }
}

impl<T> Weight for T where T: Copy + PartialOrd + Debug + Num + ToPrimitive + Send + Sync + 'static {}

/// Floating-point weights, needed wherever the full circle `2π` appears.
pub trait RealWeight: Weight + Float {
    fn tau() -> Self;
}

impl RealWeight for f64 {
    fn tau() -> Self {
        std::f64::consts::TAU
    }
}

impl RealWeight for f32 {
    fn tau() -> Self {
        std::f32::consts::TAU
    }
}

#[inline]
pub fn wmin<W: Weight>(a: W, b: W) -> W {
    if b < a {
        b
    } else {
        a
    }
}

#[inline]
pub fn wmax<W: Weight>(a: W, b: W) -> W {
    if b > a {
        b
    } else {
        a
    }
}

/// Strict "ratio `a_num / a_den` is smaller than `b_num / b_den`" for
/// nonnegative numerators, by cross multiplication. A zero denominator is an
/// unbounded ratio and is never smaller than anything.
pub fn ratio_less<W: Weight>(a_num: W, a_den: W, b_num: W, b_den: W) -> bool {
    let zero = W::zero();
    if a_den <= zero {
        return false;
    }
    if b_den <= zero {
        return true;
    }
    a_num * b_den < b_num * a_den
}

/// Sum a slice of weights.
pub fn wsum<W: Weight>(values: impl IntoIterator<Item = W>) -> W {
    values.into_iter().fold(W::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_ordering_handles_unbounded() {
        assert!(ratio_less(3, 2, 2, 1));
        assert!(!ratio_less(2, 1, 3, 2));
        assert!(!ratio_less(1, 0, 5, 1));
        assert!(ratio_less(5, 1, 1, 0));
        assert!(!ratio_less(1, 0, 1, 0));
    }

    #[test]
    fn rationals_are_weights() {
        use num_rational::Ratio;
        let a = Ratio::new(1i64, 3);
        let b = Ratio::new(2i64, 3);
        assert_eq!(wsum([a, b]), Ratio::from_integer(1));
        assert!((a.as_f64() - 1.0 / 3.0).abs() < 1e-15);
    }
}
