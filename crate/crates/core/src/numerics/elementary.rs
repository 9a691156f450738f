//! Logarithm, exponential, rational powers and π on [`FixedReal`].
//!
//! Each function works at the caller's scale plus guard digits, tallies its
//! own rounding and series-truncation error in internal ulps, and reports the
//! total (plus the propagated input error) in the result's error bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fixed::{ceil_div_u, magnitude, pow10, pow10_u, round_div, FixedReal};
use super::rational::ExactRational;
use crate::error::{Error, Result};

const GUARD: u32 = 20;

/// Selector for [`fix_elementary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    Log,
    Exp,
    PowRational(ExactRational),
}

pub fn fix_elementary(x: &FixedReal, f: &Elementary) -> Result<FixedReal> {
    match f {
        Elementary::Log => ln(x),
        Elementary::Exp => exp(x),
        Elementary::PowRational(p) => pow_rational(x, p),
    }
}

/// Internal value at working scale with its error in internal ulps.
struct Work {
    value: BigInt,
    error: BigUint,
}

/// Rounds an internal result back to `scale`, charging one ulp for the
/// rounding plus the internal error.
fn finish(work: Work, work_scale: u32, scale: u32) -> FixedReal {
    let drop = work_scale - scale;
    let mantissa = round_div(&work.value, &pow10(drop));
    let error = ceil_div_u(&work.error, &pow10_u(drop)) + 1u32;
    FixedReal::from_parts(mantissa, scale, error)
}

/// `2·atanh(u)` for `|u| ≤ 1/3`, `u` given at scale `w` with error ≤ 1 ulp.
fn two_atanh(u: &BigInt, w: u32) -> Work {
    let one = pow10(w);
    let u2 = round_div(&(u * u), &one);
    let mut power = u.clone();
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut k = 1u64;
    while !power.is_zero() {
        sum += round_div(&power, &BigInt::from(k));
        power = round_div(&(&power * &u2), &one);
        k += 2;
        terms += 1;
    }
    // Three ulps per term for the power recurrence and division, the final
    // term below one ulp bounds the tail, and the input's ulp moves the
    // result by at most 1/(1−u²) ≤ 9/8 ulp.
    Work {
        value: sum * 2u32,
        error: BigUint::from(6 * terms + 6),
    }
}

fn ln2_work(w: u32) -> Work {
    let u = round_div(&pow10(w), &BigInt::from(3));
    two_atanh(&u, w)
}

/// Natural logarithm; the enclosure of `x` must lie strictly above zero.
pub fn ln(x: &FixedReal) -> Result<FixedReal> {
    let s = x.scale();
    let m = x.mantissa();
    let e = x.error_ulps();
    if !m.is_positive() || magnitude(m) <= *e {
        return Err(Error::Domain(format!(
            "logarithm of non-positive value {}",
            x.to_decimal_string(s.min(30))
        )));
    }
    if e.is_zero() && *m == pow10(s) {
        return Ok(FixedReal::zero(s));
    }
    let w = s + GUARD;
    let one = pow10(w);
    let big_x = m * pow10(GUARD);

    // Find k with X / 2^k in [1/√2, √2]; comparisons are exact.
    let above = |k: i64| -> bool {
        // X / 2^k > 1.4143 · one
        if k >= 0 {
            &big_x * 10_000u32 > (&one * 14_143u32) << (k as usize)
        } else {
            (&big_x << ((-k) as usize)) * 10_000u32 > &one * 14_143u32
        }
    };
    let below = |k: i64| -> bool {
        // X / 2^k < 0.7071 · one
        if k >= 0 {
            &big_x * 10_000u32 < (&one * 7_071u32) << (k as usize)
        } else {
            (&big_x << ((-k) as usize)) * 10_000u32 < &one * 7_071u32
        }
    };
    let mut k = big_x.bits() as i64 - one.bits() as i64;
    while above(k) {
        k += 1;
    }
    while below(k) {
        k -= 1;
    }
    let y = if k >= 0 {
        round_div(&big_x, &(BigInt::one() << (k as usize)))
    } else {
        &big_x << ((-k) as usize)
    };
    let u = round_div(&((&y - &one) * &one), &(&y + &one));
    let mut log_y = two_atanh(&u, w);
    // y's rounding (half an ulp) moves u by less than one ulp
    log_y.error += 2u32;
    let kk = BigInt::from(k);
    let (value, error) = if k == 0 {
        (log_y.value, log_y.error)
    } else {
        let l2 = ln2_work(w);
        (
            log_y.value + &kk * l2.value,
            log_y.error + magnitude(&kk) * l2.error,
        )
    };
    let mut out = finish(Work { value, error }, w, s);
    if !e.is_zero() {
        // |log(x̃) − log(x)| ≤ e / (x̃ − e)
        let prop = ceil_div_u(&(e * pow10_u(s)), &(magnitude(m) - e));
        out = out.with_added_error(prop);
    }
    Ok(out)
}

/// `exp(v)` for `v ≥ 0` given as (mantissa, scale); returns value and error
/// at `scale` ignoring input uncertainty.
fn exp_nonneg(m: &BigInt, s: u32) -> Result<FixedReal> {
    debug_assert!(!m.is_negative());
    let approx = m.to_f64().unwrap_or(f64::INFINITY) / 10f64.powi(s as i32);
    if approx.is_nan() || approx >= 1.0e6 {
        return Err(Error::Domain(format!("exponential overflow for argument ≈ {approx:e}")));
    }
    // halvings so that r = v / 2^j < 2^-8
    let j = (approx.max(1.0).log2().ceil() as u32) + 8;
    let magnitude_digits = (approx * std::f64::consts::LOG10_E).ceil() as u32 + 1;
    let guard = GUARD + (j as f64 * 0.302).ceil() as u32 + magnitude_digits;
    let w = s + guard;
    let one = pow10(w);
    let r = round_div(&(m * pow10(guard)), &(BigInt::one() << j as usize));

    let mut sum = one.clone();
    let mut term = one.clone();
    let mut n = 1u32;
    loop {
        term = round_div(&(&term * &r), &(&one * n));
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    // relative error of exp(r) in ulps: one per term, one for the tail and
    // one for the rounding of r
    let mut rel = BigUint::from(n + 3);
    for _ in 0..j {
        sum = round_div(&(&sum * &sum), &one);
        rel = rel * 2u32 + 1u32;
    }
    let abs_error = ceil_div_u(&(magnitude(&sum) * &rel), &pow10_u(w)) + 1u32;
    Ok(finish(Work { value: sum, error: abs_error }, w, s))
}

pub fn exp(x: &FixedReal) -> Result<FixedReal> {
    let s = x.scale();
    let e = x.error_ulps();
    let e_val = x.error_f64();
    if e_val > 10.0 {
        return Err(Error::Domain("exponential of a value with error bound above 10".into()));
    }
    // exp(x̃ + δ) − exp(x̃) ≤ |δ| · exp(x̃) · exp(e)
    let growth = BigUint::from((e_val.exp() * 1000.0).ceil() as u64 + 1);
    if x.mantissa().is_zero() {
        // |exp(δ) − 1| ≤ |δ|·exp(e)
        let prop = ceil_div_u(&(e * &growth), &BigUint::from(1000u32));
        return Ok(FixedReal::from_integer(1, s).with_added_error(prop));
    }
    if !x.mantissa().is_negative() {
        let out = exp_nonneg(x.mantissa(), s)?;
        let prop = ceil_div_u(
            &(e * (magnitude(out.mantissa()) + 1u32) * &growth),
            &(pow10_u(s) * 1000u32),
        );
        return Ok(out.with_added_error(prop));
    }
    // exp(−v) = 1 / exp(v), computed a few digits finer so the reciprocal
    // keeps absolute accuracy at `scale`
    let fine = s + 5;
    let m = magnitude(x.mantissa());
    let pos = exp_nonneg(&(BigInt::from(m) * pow10(5)), fine)?;
    let prop = ceil_div_u(
        &(e * pow10_u(5) * (magnitude(pos.mantissa()) + 1u32) * &growth),
        &(pow10_u(fine) * 1000u32),
    );
    let pos = pos.with_added_error(prop);
    let recip = FixedReal::from_integer(1, fine).div(&pos)?;
    Ok(recip.rescale(s))
}

/// `x^p` for positive `x` and rational `p`, via `exp(p·log x)`.
pub fn pow_rational(x: &FixedReal, p: &ExactRational) -> Result<FixedReal> {
    if p.is_zero() {
        return Ok(FixedReal::from_integer(1, x.scale()));
    }
    if p.is_integer() && p.is_positive() {
        // repeated multiplication keeps exactness for exact inputs
        if let Some(n) = p.numer().to_u32() {
            if n <= 64 {
                let s = x.scale();
                let fine = x.rescale(s + 10);
                let mut acc = fine.clone();
                for _ in 1..n {
                    acc = acc.mul(&fine);
                }
                return Ok(acc.rescale(s));
            }
        }
    }
    let s = x.scale();
    let log_mag = x.approx_log10_abs().abs() * p.to_f64().abs();
    let extra = 10 + log_mag.ceil() as u32;
    let lx = ln(&x.rescale(s + extra))?;
    let y = lx.mul_rational(p);
    Ok(exp(&y)?.rescale(s))
}

/// `atan(1/n)` at scale `w` with its internal error.
fn atan_inv(n: u32, w: u32) -> Work {
    let one = pow10(w);
    let n2 = BigInt::from(n) * n;
    let mut power = round_div(&one, &BigInt::from(n));
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    let mut terms = 0u64;
    let mut negative = false;
    while !power.is_zero() {
        let t = round_div(&power, &BigInt::from(k));
        if negative {
            sum -= t;
        } else {
            sum += t;
        }
        power = round_div(&power, &n2);
        negative = !negative;
        k += 2;
        terms += 1;
    }
    Work {
        value: sum,
        error: BigUint::from(2 * terms + 2),
    }
}

/// π by Machin's formula `16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(scale: u32) -> FixedReal {
    let w = scale + GUARD;
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    let value = a.value * 16u32 - b.value * 4u32;
    let error = a.error * 16u32 + b.error * 4u32;
    finish(Work { value, error }, w, scale)
}

/// `log 2` at `scale`.
pub fn ln2(scale: u32) -> FixedReal {
    let w = scale + GUARD;
    finish(ln2_work(w), w, scale)
}

/// `log(x)` for an exact positive rational.
pub fn ln_rational(x: &ExactRational, scale: u32) -> Result<FixedReal> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive value {x}")));
    }
    // numerator and denominator separately keep the input exact
    let num = FixedReal::from_integer(x.numer().clone(), scale);
    let den = FixedReal::from_integer(x.denom().clone(), scale);
    Ok(ln(&num)?.sub(&ln(&den)?))
}
