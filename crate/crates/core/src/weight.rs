//! Exact rational edge weights and load sums.
//!
//! A [`Weight`] is a reduced fraction in `(0, 1]` whose denominator is at most
//! [`MAX_DENOMINATOR`]. A [`Load`] is an arbitrary-precision sum of weights, so
//! comparisons against capacity never round.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::WeightError;

/// Largest denominator accepted for a weight.
pub const MAX_DENOMINATOR: i64 = 1_000_000_000;

/// An edge weight (bin-packing item size), exactly representable and in `(0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Ratio<i64>);

impl Weight {
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reducing the fraction first.
    pub fn new(numer: i64, denom: i64) -> Result<Self, WeightError> {
        if denom == 0 {
            return Err(WeightError::ZeroDenominator);
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(value: Ratio<i64>) -> Result<Self, WeightError> {
        if !value.is_positive() || value > Ratio::one() {
            return Err(WeightError::OutOfRange(value.to_string()));
        }
        if *value.denom() > MAX_DENOMINATOR {
            return Err(WeightError::DenominatorTooLarge(value.to_string()));
        }
        Ok(Weight(value))
    }

    /// `1/k` for `k >= 1`.
    pub fn unit_fraction(k: i64) -> Result<Self, WeightError> {
        Self::new(1, k)
    }

    /// `self + delta`, failing if the sum leaves `(0, 1]`.
    pub fn checked_add(self, delta: Weight) -> Result<Self, WeightError> {
        Self::from_ratio(self.0 + delta.0)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    /// Lossy conversion, for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// True when `self > 1/2`.
    pub fn is_large(&self) -> bool {
        2 * self.numer() > self.denom()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.6` (read as `3/5`).
impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || WeightError::Malformed(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = parse_digits(p).ok_or_else(bad)?;
            let q: i64 = parse_digits(q).ok_or_else(bad)?;
            return Weight::new(p, q);
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if frac_part.len() > 9 {
            return Err(WeightError::DenominatorTooLarge(s.to_string()));
        }
        let int_val: i64 = if int_part.is_empty() {
            0
        } else {
            parse_digits(int_part).ok_or_else(bad)?
        };
        let frac_val: i64 = if frac_part.is_empty() {
            0
        } else {
            parse_digits(frac_part).ok_or_else(bad)?
        };
        if int_val > 1 {
            return Err(WeightError::OutOfRange(s.to_string()));
        }
        let scale = 10i64.pow(frac_part.len() as u32);
        Weight::new(int_val * scale + frac_val, scale)
    }
}

fn parse_digits(s: &str) -> Option<i64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || s.len() > 18 {
        return None;
    }
    s.parse().ok()
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact sum of weights at a vertex, in a bin, or over a stream.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Load(BigRational);

impl Load {
    pub fn zero() -> Self {
        Load(BigRational::zero())
    }

    pub fn one() -> Self {
        Load(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Whether adding `w` keeps this load within unit capacity.
    pub fn fits(&self, w: Weight) -> bool {
        self.plus(w) <= Load::one()
    }

    pub fn plus(&self, w: Weight) -> Load {
        Load(&self.0 + w.to_big())
    }

    pub fn exceeds_one(&self) -> bool {
        self.0 > BigRational::one()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Smallest integer not below this load.
    pub fn ceil(&self) -> u64 {
        self.0.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_weight(&self, w: Weight) -> Ordering {
        self.0.cmp(&w.to_big())
    }
}

impl From<Weight> for Load {
    fn from(w: Weight) -> Self {
        Load(w.to_big())
    }
}

impl Add<Weight> for Load {
    type Output = Load;
    fn add(self, rhs: Weight) -> Load {
        Load(self.0 + rhs.to_big())
    }
}

impl AddAssign<Weight> for Load {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.to_big();
    }
}

impl AddAssign<&Load> for Load {
    fn add_assign(&mut self, rhs: &Load) {
        self.0 += &rhs.0;
    }
}

impl Sum<Weight> for Load {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Load {
        let mut acc = Load::zero();
        for w in iter {
            acc += w;
        }
        acc
    }
}

impl<'a> Sum<&'a Weight> for Load {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Load {
        iter.copied().sum()
    }
}

impl fmt::Display for Load {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Load {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Load({self})")
    }
}

impl Serialize for Load {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `ceil(ratio * m)` computed exactly, with `ratio = numer / denom`.
pub fn ceil_scaled(m: u64, numer: u64, denom: u64) -> u64 {
    let prod = m as u128 * numer as u128;
    prod.div_ceil(denom as u128) as u64
}

/// Least common multiple of the weights' denominators.
pub fn common_denominator<'a>(weights: impl IntoIterator<Item = &'a Weight>) -> BigInt {
    weights
        .into_iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(&BigInt::from(w.denom())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn decimal_parses_exactly() {
        assert_eq!(w("0.6"), Weight::new(3, 5).unwrap());
        assert_eq!(w("0.5"), Weight::new(1, 2).unwrap());
        assert_eq!(w("1"), Weight::ONE);
        assert_eq!(w("1.000"), Weight::ONE);
        assert_eq!(w(".25"), Weight::new(1, 4).unwrap());
    }

    #[test]
    fn fraction_is_not_a_float() {
        let third = w("1/3");
        assert_eq!((third.numer(), third.denom()), (1, 3));
        let sum: Load = [third, third, third].iter().sum();
        assert_eq!(sum, Load::one());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!("0".parse::<Weight>(), Err(WeightError::OutOfRange(_))));
        assert!(matches!("0/5".parse::<Weight>(), Err(WeightError::OutOfRange(_))));
        assert!(matches!("1.5".parse::<Weight>(), Err(WeightError::OutOfRange(_))));
        assert!(matches!("3/2".parse::<Weight>(), Err(WeightError::OutOfRange(_))));
        assert!(matches!("1/0".parse::<Weight>(), Err(WeightError::ZeroDenominator)));
        assert!("-0.5".parse::<Weight>().is_err());
        assert!("abc".parse::<Weight>().is_err());
        assert!("0.1234567891".parse::<Weight>().is_err());
        assert!("1/1000000001".parse::<Weight>().is_err());
    }

    #[test]
    fn load_fits_at_exactly_one() {
        let l = Load::from(w("3/5"));
        assert!(l.fits(w("2/5")));
        assert!(!l.fits(w("1/2")));
        assert_eq!(l.plus(w("1/2")).to_string(), "11/10");
    }

    #[test]
    fn ceil_scaled_is_exact() {
        assert_eq!(ceil_scaled(10, 16926, 10000), 17);
        assert_eq!(ceil_scaled(10000, 16926, 10000), 16926);
        assert_eq!(ceil_scaled(0, 16926, 10000), 0);
    }

    #[test]
    fn display_round_trips() {
        for s in ["1/3", "1", "999999/1000000"] {
            assert_eq!(w(s).to_string(), s);
            assert_eq!(w(&w(s).to_string()), w(s));
        }
    }
}
