use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rational::ExactRational;
use crate::error::{Error, Result};

/// `10^n` as a big integer.
pub fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), n as usize)
}

pub(crate) fn pow10_u(n: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), n as usize)
}

/// Rounds `n / d` to the nearest integer, ties away from zero. `d` must be non-zero.
pub fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (n, d) = if d.is_negative() { (-n, -d) } else { (n.clone(), d.clone()) };
    let (q, r) = n.div_rem(&d);
    let twice = r.abs() * 2u32;
    if twice >= d {
        if n.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// `ceil(n / d)` for non-negative `n` and positive `d`.
pub(crate) fn ceil_div_u(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

pub(crate) fn magnitude(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

/// Decimal fixed-point real: `mantissa × 10^(−scale)`, accurate to within
/// `error` units in the last place.
///
/// Every arithmetic operation rounds to nearest and charges one ulp on top of
/// the propagated operand error, so `error` only ever grows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedReal {
    mantissa: BigInt,
    scale: u32,
    error: BigUint,
}

impl FixedReal {
    pub fn from_parts(mantissa: BigInt, scale: u32, error: BigUint) -> Self {
        Self { mantissa, scale, error }
    }

    pub fn zero(scale: u32) -> Self {
        Self::from_parts(BigInt::zero(), scale, BigUint::zero())
    }

    pub fn from_integer(n: impl Into<BigInt>, scale: u32) -> Self {
        Self::from_parts(n.into() * pow10(scale), scale, BigUint::zero())
    }

    /// Nearest representable value at `scale`; the error bound is one ulp
    /// unless the rational is exactly representable.
    pub fn from_rational(x: &ExactRational, scale: u32) -> Self {
        let scaled = x.numer() * pow10(scale);
        let (q, r) = scaled.div_rem(x.denom());
        let (mantissa, error) = if r.is_zero() {
            (q, BigUint::zero())
        } else {
            (round_div(&scaled, x.denom()), BigUint::from(1u32))
        };
        Self::from_parts(mantissa, scale, error)
    }

    /// Exact conversion of a double followed by rounding to `scale`.
    pub fn from_f64(v: f64, scale: u32) -> Result<Self> {
        let r = num_rational::BigRational::from_float(v)
            .ok_or_else(|| Error::Domain(format!("non-finite value {v}")))?;
        Ok(Self::from_rational(&ExactRational::from(r), scale))
    }

    /// Parses a decimal literal such as `0.5772156649` and rounds it to
    /// `scale`. Digits beyond the literal's own length are unknown (the
    /// literal may be truncated), so the bound covers one unit of its last digit.
    pub fn from_decimal_literal(literal: &str, scale: u32) -> Result<Self> {
        let exact: ExactRational = literal.parse()?;
        let digits = literal.split_once('.').map_or(0, |(_, f)| f.len()) as u32;
        let mut x = Self::from_rational(&exact, scale);
        if digits < scale {
            x.error += pow10_u(scale - digits);
        }
        Ok(x)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Error bound in ulps of `10^(−scale)`.
    pub fn error_ulps(&self) -> &BigUint {
        &self.error
    }

    pub fn with_added_error(mut self, ulps: impl Into<BigUint>) -> Self {
        self.error += ulps.into();
        self
    }

    /// The represented value as an exact rational.
    pub fn to_rational(&self) -> ExactRational {
        ExactRational::fraction(self.mantissa.clone(), pow10(self.scale))
    }

    /// The error bound as an exact rational.
    pub fn error_bound(&self) -> ExactRational {
        ExactRational::fraction(BigInt::from(self.error.clone()), pow10(self.scale))
    }

    pub fn error_f64(&self) -> f64 {
        self.error_bound().to_f64()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Whether `x` lies within the error bound of this value.
    pub fn contains(&self, x: &ExactRational) -> bool {
        let diff = (&self.to_rational() - x).abs();
        diff <= self.error_bound()
    }

    /// Whether the two enclosures overlap, i.e. the values agree within the
    /// sum of their error bounds.
    pub fn agrees_with(&self, other: &FixedReal) -> bool {
        let diff = (&self.to_rational() - &other.to_rational()).abs();
        diff <= &self.error_bound() + &other.error_bound()
    }

    /// Same value at another scale. Widening is exact; narrowing rounds.
    pub fn rescale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let f = pow10(scale - self.scale);
                let fu = pow10_u(scale - self.scale);
                Self::from_parts(&self.mantissa * f, scale, &self.error * fu)
            }
            Ordering::Less => {
                let drop = self.scale - scale;
                let mantissa = round_div(&self.mantissa, &pow10(drop));
                let error = ceil_div_u(&self.error, &pow10_u(drop)) + 1u32;
                Self::from_parts(mantissa, scale, error)
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let s = self.scale.max(other.scale);
        (self.rescale(s), other.rescale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::from_parts(a.mantissa + b.mantissa, a.scale, a.error + b.error)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::from_parts(a.mantissa - b.mantissa, a.scale, a.error + b.error)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(-&self.mantissa, self.scale, self.error.clone())
    }

    pub fn abs(&self) -> Self {
        Self::from_parts(self.mantissa.abs(), self.scale, self.error.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let s = a.scale;
        let one = pow10(s);
        let mantissa = round_div(&(&a.mantissa * &b.mantissa), &one);
        let (ma, mb) = (magnitude(&a.mantissa), magnitude(&b.mantissa));
        let spread = &ma * &b.error + &mb * &a.error + &a.error * &b.error;
        let error = ceil_div_u(&spread, &pow10_u(s)) + 1u32;
        Self::from_parts(mantissa, s, error)
    }

    /// Quotient; fails when the divisor's enclosure contains zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other);
        let s = a.scale;
        let mb = magnitude(&b.mantissa);
        if mb <= b.error {
            return Err(Error::DivisionByZero);
        }
        let mantissa = round_div(&(&a.mantissa * pow10(s)), &b.mantissa);
        let ma = magnitude(&a.mantissa);
        let spread = (&ma * &b.error + &mb * &a.error) * pow10_u(s);
        let denom = &mb * (&mb - &b.error);
        let error = ceil_div_u(&spread, &denom) + 1u32;
        Ok(Self::from_parts(mantissa, s, error))
    }

    /// Product with an exact integer (no rounding).
    pub fn mul_int(&self, n: &BigInt) -> Self {
        Self::from_parts(&self.mantissa * n, self.scale, &self.error * magnitude(n))
    }

    /// Product with an exact rational, rounded once.
    pub fn mul_rational(&self, q: &ExactRational) -> Self {
        let mantissa = round_div(&(&self.mantissa * q.numer()), q.denom());
        let dq = magnitude(q.denom());
        let error = ceil_div_u(&(&self.error * magnitude(q.numer())), &dq) + 1u32;
        Self::from_parts(mantissa, self.scale, error)
    }

    pub fn div_int(&self, n: &BigInt) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mantissa = round_div(&self.mantissa, n);
        let error = ceil_div_u(&self.error, &magnitude(n)) + 1u32;
        Ok(Self::from_parts(mantissa, self.scale, error))
    }

    /// Decimal string with exactly `digits` digits after the point. Only a
    /// leading `-` is ever emitted, and never for a value that rounds to zero.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let m = self.rescale(digits).mantissa;
        let negative = m.sign() == Sign::Minus;
        let s = m.abs().to_string();
        let s = if s.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits as usize);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// Error bound rendered like [`FixedReal::to_decimal_string`], rounded up.
    pub fn error_decimal_string(&self, digits: u32) -> String {
        let e = if digits >= self.scale {
            BigInt::from(self.error.clone()) * pow10(digits - self.scale)
        } else {
            BigInt::from(ceil_div_u(&self.error, &pow10_u(self.scale - digits)))
        };
        Self::from_parts(e, digits, BigUint::zero()).to_decimal_string(digits)
    }

    /// Cheap magnitude estimate, good enough for choosing truncation points.
    pub fn approx_log10_abs(&self) -> f64 {
        let bits = self.mantissa.bits() as f64;
        bits * std::f64::consts::LOG10_2 - self.scale as f64
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(self.scale))
    }
}

/// Sum of fixed-point values at a common scale.
pub fn sum_fixed<'a>(scale: u32, items: impl IntoIterator<Item = &'a FixedReal>) -> FixedReal {
    items
        .into_iter()
        .fold(FixedReal::zero(scale), |acc, x| acc.add(x))
}
