//! Exact rational probabilities.
//!
//! Every probability that enters a model or an exact engine is a reduced
//! arbitrary-precision fraction, so equivalence checks are plain equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A reduced rational number.
///
/// Values read from model files are checked to lie in `[0, 1]`. Arithmetic is
/// unchecked so intermediate expressions such as `1 - p` or level-set
/// differences can be formed freely; [`Probability::is_unit`] re-checks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Probability(BigRational);

impl Probability {
    pub fn zero() -> Self {
        Probability(BigRational::zero())
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    /// `num / den`, reduced. Fails outside `[0, 1]` or on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadProbability(format!("{num}/{den}"), "zero denominator"));
        }
        Self::from_ratio(BigRational::new(num.into(), den.into()))
    }

    /// Checked conversion from an arbitrary rational.
    pub fn from_ratio(r: BigRational) -> Result<Self> {
        let p = Probability(r);
        if p.is_unit() {
            Ok(p)
        } else {
            Err(Error::BadProbability(p.to_string(), "outside [0, 1]"))
        }
    }

    /// Unchecked constructor for values produced by exact arithmetic.
    pub fn from_ratio_unchecked(r: BigRational) -> Self {
        Probability(r)
    }

    /// `1 / 2^bits`-grid value `k / 2^bits`.
    pub fn dyadic(k: u64, bits: u32) -> Self {
        Probability(BigRational::new(BigInt::from(k), BigInt::one() << bits))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_unit(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    pub fn complement(&self) -> Self {
        Probability(BigRational::one() - &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses `"num/den"` or a plain decimal such as `"0.25"`, exactly.
    pub fn parse(text: &str) -> Result<Self> {
        let r = parse_rational(text.trim())
            .ok_or_else(|| Error::BadProbability(text.to_string(), "expected `num/den` or a decimal"))?;
        Probability::from_ratio(r).map_err(|_| Error::BadProbability(text.to_string(), "outside [0, 1]"))
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_digits(num.trim())?;
        let den = parse_digits(den.trim())?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let int = if int_part.is_empty() {
        BigInt::zero()
    } else {
        parse_digits(int_part)?
    };
    if frac_part.is_empty() {
        return if text.ends_with('.') { None } else { Some(BigRational::from_integer(int)) };
    }
    let frac = parse_digits(frac_part)?;
    let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Some(BigRational::new(int * &scale + frac, scale))
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Probability::parse(s)
    }
}

/// Always `num/den`, including `0/1` and `1/1`.
impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for Probability {
    type Output = Probability;
    fn add(self, rhs: Probability) -> Probability {
        Probability(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn add(self, rhs: &'a Probability) -> Probability {
        Probability(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Probability> for Probability {
    fn add_assign(&mut self, rhs: &Probability) {
        self.0 += &rhs.0;
    }
}

impl Sub for Probability {
    type Output = Probability;
    fn sub(self, rhs: Probability) -> Probability {
        Probability(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn sub(self, rhs: &'a Probability) -> Probability {
        Probability(&self.0 - &rhs.0)
    }
}

impl Mul for Probability {
    type Output = Probability;
    fn mul(self, rhs: Probability) -> Probability {
        Probability(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn mul(self, rhs: &'a Probability) -> Probability {
        Probability(&self.0 * &rhs.0)
    }
}

impl Sum for Probability {
    fn sum<I: Iterator<Item = Probability>>(iter: I) -> Probability {
        iter.fold(Probability::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a Probability> for Probability {
    fn sum<I: Iterator<Item = &'a Probability>>(iter: I) -> Probability {
        iter.fold(Probability::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Probability {
        Probability::parse(s).unwrap()
    }

    #[test]
    fn thirds_sum_to_one_exactly() {
        let third = Probability::new(1, 3).unwrap();
        let total = &(&third + &third) + &third;
        assert!(total.is_one());
        // associativity on an awkward triple
        let (a, b, c) = (p("1/7"), p("2/9"), p("0.125"));
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn decimal_parses_exactly() {
        assert_eq!(p("0.5"), Probability::new(1, 2).unwrap());
        assert_eq!(p(".25"), Probability::new(1, 4).unwrap());
        assert_eq!(p("1"), Probability::one());
        assert_eq!(p("1.000"), Probability::one());
        assert_eq!(p("0"), Probability::zero());
    }

    #[test]
    fn third_and_truncated_decimal_differ() {
        let exact = p("1/3");
        let approx = p("0.333333333333");
        assert_ne!(exact, approx);
        assert_eq!(approx.to_string(), "333333333333/1000000000000");
        assert_eq!(
            approx.ratio(),
            &BigRational::new(333_333_333_333i64.into(), 1_000_000_000_000i64.into())
        );
    }

    #[test]
    fn rejects_garbage_and_out_of_range() {
        for bad in ["", ".", "1.", "-0.5", "1.5", "3/2", "1/0", "a/b", "0.5e1", "1 /", "+1"] {
            assert!(Probability::parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn display_is_num_over_den() {
        assert_eq!(Probability::zero().to_string(), "0/1");
        assert_eq!(Probability::one().to_string(), "1/1");
        assert_eq!(p("2/4").to_string(), "1/2");
    }

    #[test]
    fn dyadic_grid() {
        assert_eq!(Probability::dyadic(1, 1), p("1/2"));
        assert_eq!(Probability::dyadic(3, 2), p("3/4"));
    }
}
