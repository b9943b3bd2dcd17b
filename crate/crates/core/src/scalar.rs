//! Scalar abstraction shared by the solver and the exact oracle.
//!
//! The backward induction, the closed forms and the enumeration oracle only
//! need field operations and an ordering, so they are written once against
//! [`Scalar`] and instantiated with `f64` for production runs, `f32` for
//! cheap sweeps, and [`BigRational`] when an answer must be exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Ordered field element usable by the solver.
pub trait Scalar: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive {
    /// `num / den` in this scalar type. For floats this is a single
    /// rounded division; for rationals it is exact.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Larger of two values; the left one wins ties.
    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Per-stage conditional acceptance probabilities from a distribution over
/// the accepted index: `h_n = p_n / (1 - p_1 - ... - p_{n-1})`.
///
/// `masses` may sum to less than 1 (the remainder is "nobody accepted").
/// Float round-off up to `1e-12` above 1 is tolerated and clamped.
pub fn hazards_from_masses<T: Scalar>(masses: &[T]) -> Option<Vec<T>> {
    let total = masses.iter().fold(T::zero(), |acc, m| acc + m.clone());
    if total.as_f64() > 1.0 + 1e-12 || masses.iter().any(|m| *m < T::zero()) {
        return None;
    }
    let mut remaining = T::one();
    let mut out = Vec::with_capacity(masses.len());
    for m in masses {
        let h = if remaining > T::zero() {
            let h = m.clone() / remaining.clone();
            if h > T::one() {
                T::one()
            } else {
                h
            }
        } else {
            T::zero()
        };
        remaining = remaining - m.clone();
        out.push(h);
    }
    Some(out)
}

/// Cost grid `{0, 1/10, ..., 9/10}` in the requested scalar type.
pub fn decile_costs<T: Scalar>() -> Vec<T> {
    (0..10).map(|k| T::from_ratio(k, 10)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_ratio_is_exact() {
        let tenth = BigRational::from_ratio(1, 10);
        let sum = (0..10).fold(BigRational::from_count(0), |acc, _| acc + tenth.clone());
        assert_eq!(sum, BigRational::from_count(1));
    }

    #[test]
    fn hazards_reproduce_masses() {
        let masses = vec![
            BigRational::from_ratio(1, 3),
            BigRational::from_ratio(1, 3),
            BigRational::from_ratio(1, 3),
        ];
        let h = hazards_from_masses(&masses).unwrap();
        assert_eq!(h[0], BigRational::from_ratio(1, 3));
        assert_eq!(h[1], BigRational::from_ratio(1, 2));
        assert_eq!(h[2], BigRational::from_count(1));
        assert!(hazards_from_masses(&[0.7, 0.7]).is_none());
        assert!(hazards_from_masses(&[-0.1, 0.7]).is_none());
        assert_eq!(hazards_from_masses(&[1.0, 0.0]).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn max_of_prefers_left_on_ties() {
        assert_eq!(f64::max_of(1.0, 1.0), 1.0);
        assert_eq!(f64::max_of(1.0, 2.0), 2.0);
        assert_eq!(decile_costs::<f64>().len(), 10);
    }
}
