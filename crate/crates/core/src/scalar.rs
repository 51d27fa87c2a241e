//! Exact integer scalars used by the counting tables and the recursions.
//!
//! Everything that is summed over all fillings of a shape is generic over
//! [`Count`]. `i64` is plenty for exhaustive runs (n ≤ 20 keeps n! inside
//! 64 bits), `BigInt` is the default at the crate root.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed exact integer type.
pub trait Count:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_count(v: u64) -> Self {
        Self::from_u64(v).expect("count does not fit the scalar type")
    }

    fn from_index(v: usize) -> Self {
        Self::from_usize(v).expect("index does not fit the scalar type")
    }
}

impl<T> Count for T where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub fn factorial<C: Count>(n: usize) -> C {
    (1..=n).fold(C::one(), |acc, k| acc * C::from_index(k))
}

/// Binomial coefficient, zero whenever `k < 0` or `k > n`.
pub fn binomial<C: Count>(n: i64, k: i64) -> C {
    if n < 0 || k < 0 || k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    let mut acc = C::one();
    for i in 0..k {
        acc = acc * C::from_i64(n - i).unwrap();
        acc = acc / C::from_i64(i + 1).unwrap();
    }
    acc
}

pub fn lcm_upto<C: Count>(n: usize) -> C {
    (1..=n).fold(C::one(), |acc, k| acc.lcm(&C::from_index(k)))
}

/// Exact division, or `None` when `den` does not divide `num`.
pub fn exact_div<C: Count>(num: &C, den: &C) -> Option<C> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

/// Renders `p/q` (or just `p` when the denominator is one).
pub fn ratio_string<C: Count>(r: &Ratio<C>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering of a rational, rounded to `digits` places.
pub fn ratio_decimal<C: Count>(r: &Ratio<C>, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = (0..digits).fold(C::one(), |acc, _| acc * C::from_u8(10).unwrap());
    let two = C::one() + C::one();
    let scaled = abs * Ratio::from_integer(scale.clone());
    let rounded = (scaled.numer().clone() * two.clone() + scaled.denom().clone()) / (scaled.denom().clone() * two);
    let (int, frac) = rounded.div_rem(&scale);
    let mut s = String::new();
    if neg && !(int.is_zero() && frac.is_zero()) {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        s.push('.');
        s.push_str(&format!("{:0>width$}", frac.to_string(), width = digits));
    }
    s
}

pub fn to_bigint<C: Count>(v: &C) -> BigInt {
    v.to_i128().map(BigInt::from).unwrap_or_else(|| v.to_string().parse().expect("integer renders as decimal"))
}

pub fn from_bigint<C: Count>(v: &BigInt) -> Option<C> {
    C::from_i128(v.to_i128()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial::<i64>(0), 1);
        assert_eq!(factorial::<i64>(10), 3_628_800);
        assert_eq!(factorial::<BigInt>(21).to_string(), "51090942171709440000");
        assert_eq!(binomial::<i64>(5, 2), 10);
        assert_eq!(binomial::<i64>(0, 0), 1);
        assert_eq!(binomial::<i64>(3, 4), 0);
        assert_eq!(binomial::<i64>(3, -1), 0);
        assert_eq!(lcm_upto::<i64>(4), 12);
        assert_eq!(lcm_upto::<i64>(0), 1);
    }

    #[test]
    fn exact_division() {
        assert_eq!(exact_div(&12i64, &4), Some(3));
        assert_eq!(exact_div(&-12i64, &4), Some(-3));
        assert_eq!(exact_div(&13i64, &4), None);
        assert_eq!(exact_div(&1i64, &0), None);
    }

    #[test]
    fn rational_rendering() {
        let r = Ratio::new(2i64, 3);
        assert_eq!(ratio_string(&r), "2/3");
        assert_eq!(ratio_decimal(&r, 6), "0.666667");
        assert_eq!(ratio_string(&Ratio::from_integer(5i64)), "5");
        assert_eq!(ratio_decimal(&Ratio::new(-1i64, 8), 2), "-0.13");
        assert_eq!(ratio_decimal(&Ratio::from_integer(0i64), 3), "0.000");
    }
}
