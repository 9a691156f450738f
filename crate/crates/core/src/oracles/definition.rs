//! Direct summation of `Σ_n (1/(an+b) − log((an+b+1)/(an+b))) zⁿ` and its
//! termwise z-derivative, with a certified bound on the omitted tail.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{pow10, round_div, ExactRational, FixedReal};
use crate::sequences::SeriesParams;

const GUARD: u32 = 10;
const CHUNK: u64 = 4096;

/// `f(y) = 1/y − log(1 + 1/y)` at scale `w` with its error in ulps.
///
/// Uses `f(y) = 1/(y(2y+1)) − 2 Σ_{j≥1} u^{2j+1}/(2j+1)` with `u = 1/(2y+1)`.
fn bracket(y: &BigInt, w: u32) -> (BigInt, u64) {
    let one = pow10(w);
    let two_y1 = y * 2u32 + 1u32;
    let mut value = round_div(&one, &(y * &two_y1));
    let u = round_div(&one, &two_y1);
    let u2 = round_div(&(&u * &u), &one);
    let mut power = round_div(&(&u * &u2), &one);
    let mut j = 1u32;
    let mut steps = 0u64;
    while !power.is_zero() {
        value -= round_div(&(&power * 2u32), &BigInt::from(2 * j + 1));
        power = round_div(&(&power * &u2), &one);
        j += 1;
        steps += 1;
    }
    (value, 2 + 2 * steps)
}

/// `G(y) = (y+1) log(1 + 1/y) − 1 = Σ_{j≥1} (u^{2j−1} + u^{2j})/(2j−1)` with
/// `u = 1/(2y+1)`, which is `a` times the integral of the bracket from the
/// point where `an+b = y` to infinity.
fn bracket_integral(y: &BigInt, w: u32) -> (BigInt, u64) {
    let one = pow10(w);
    let u = round_div(&one, &(y * 2u32 + 1u32));
    let mut power = u.clone();
    let mut sum = BigInt::zero();
    let mut j = 1u32;
    let mut steps = 0u64;
    while !power.is_zero() {
        sum += round_div(&power, &BigInt::from(2 * j - 1));
        power = round_div(&(&power * &u), &one);
        if !power.is_zero() {
            sum += round_div(&power, &BigInt::from(2 * j - 1));
            power = round_div(&(&power * &u), &one);
        }
        j += 1;
        steps += 1;
    }
    // each power carries at most `steps` ulps; the neglected tail is < 1 ulp
    (sum, 2 + 2 * steps + 4 * steps * steps)
}

fn ulps_from_f64(bound: f64, w: u32) -> BigUint {
    let log10 = bound.log10() + w as f64;
    if !log10.is_finite() || log10 < -30.0 {
        return BigUint::one();
    }
    let scaled = 10f64.powf(log10) * (1.0 + 1e-9);
    let digits = scaled.log10().floor().max(0.0) as u32;
    if digits > 15 {
        let lead = (scaled / 10f64.powi(digits as i32 - 15)).ceil() as u64 + 1;
        BigUint::from(lead) * BigUint::from(10u32).pow(digits - 15)
    } else {
        BigUint::from(scaled.ceil() as u64 + 1)
    }
}

/// Partial sum over `n < N` plus a certified tail correction, at scale
/// `precision`.
///
/// * `z = 1`: the bracket is decreasing and convex in `n`, so the tail lies
///   between two integrals; their midpoint is added and half their gap is
///   the error.
/// * `z = −1`: alternating with decreasing magnitude; half the first omitted
///   term is added and is also the error. For `l = 1` the sum is extended
///   until the weighted terms decrease.
/// * `|z| < 1`: geometric bound, and summation stops early once the terms
///   fall below the working precision.
pub fn definition_sum(params: &SeriesParams, n_terms: u64, precision: u32) -> Result<FixedReal> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("definition_sum needs at least one term".into()));
    }
    let a = params.a();
    let b = params.b();
    let l = params.l();
    let z = params.z();
    let one_z = z == &ExactRational::one();
    let minus_one = z == &ExactRational::from(-1i64);
    let unit = one_z || minus_one;

    let digits_n = (n_terms as f64 + 1.0).log10().ceil() as u32;
    let w = precision + GUARD + digits_n * (1 + l);

    let mut n_terms = n_terms;
    if minus_one && l == 1 {
        n_terms = n_terms.max(2 * b / a + 2);
    }
    let zf = z.to_f64().abs();
    if !unit && zf > 0.0 {
        // stop once (n+1)|z|^n < 10^{−w−2}
        let cut = (1..)
            .find(|&n: &u64| {
                let n = n as f64;
                (n + 1.0).ln() + n * zf.ln() < -((w + 2) as f64) * std::f64::consts::LN_10
            })
            .unwrap_or(u64::MAX);
        n_terms = n_terms.min(cut.max(2));
    } else if zf == 0.0 {
        n_terms = n_terms.min(2);
    }

    let term = |n: u64| -> (BigInt, u64) {
        let y = BigInt::from(a) * n + b;
        let (f, err) = bracket(&y, w);
        let (f, err) = if l == 1 { (f * n, err * n) } else { (f, err) };
        let e = if l == 1 { n.checked_sub(1) } else { Some(n) };
        let Some(e) = e else { return (BigInt::zero(), 0) };
        if unit {
            let negative = minus_one && e % 2 == 1;
            (if negative { -f } else { f }, err)
        } else {
            let zp = z.pow(e as i32).expect("non-negative power");
            (round_div(&(f * zp.numer()), zp.denom()), err + 1)
        }
    };

    let chunks: Vec<(u64, u64)> = (0..n_terms.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(n_terms)))
        .collect();
    let partials: Vec<(BigInt, u64)> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut s = BigInt::zero();
            let mut e = 0u64;
            for n in lo..hi {
                let (t, te) = term(n);
                s += t;
                e += te;
            }
            (s, e)
        })
        .collect();
    let mut sum = BigInt::zero();
    let mut err = BigUint::zero();
    for (s, e) in partials {
        sum += s;
        err += e;
    }

    let big_n = n_terms;
    if one_z {
        // tail ∈ [G(aN+b)/a, G(a(N−1)+b)/a]
        let lo_y = BigInt::from(a) * big_n + b;
        let hi_y = BigInt::from(a) * (big_n - 1) + b;
        let (g_lo, e_lo) = bracket_integral(&lo_y, w);
        let (g_hi, e_hi) = bracket_integral(&hi_y, w);
        let mid = round_div(&(&g_lo + &g_hi), &BigInt::from(2 * a));
        let half_gap = (&g_hi - &g_lo).abs();
        let half_gap = round_div(&half_gap, &BigInt::from(2 * a)).magnitude().clone();
        sum += mid;
        err += half_gap + e_lo + e_hi + 2u32;
    } else if minus_one {
        let (t, te) = term(big_n);
        let half = round_div(&t, &BigInt::from(2));
        sum += half.clone();
        err += half.magnitude().clone() + te + 1u32;
    } else if zf > 0.0 {
        // bracket ≤ 1/(2y²); Σ_{n≥N} |z|^n and Σ n|z|^{n−1} in closed form
        let y = (a * big_n + b) as f64;
        let f_bound = 0.5 / (y * y);
        let nf = big_n as f64;
        let bound = if l == 0 {
            f_bound * zf.powf(nf) / (1.0 - zf)
        } else {
            f_bound * zf.powf(nf - 1.0) * (nf - (nf - 1.0) * zf) / ((1.0 - zf) * (1.0 - zf))
        };
        err += ulps_from_f64(bound, w);
    }
    Ok(FixedReal::from_parts(sum, w, err).rescale(precision))
}

/// `Σ_{n≤N} log n / tⁿ` plus a bound for the rest, at scale `precision`.
/// The tail uses `log n ≤ n` and the closed form of `Σ n x^n`.
pub fn somos_log_direct(t: u64, n_terms: u64, precision: u32) -> Result<FixedReal> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    let w = precision + GUARD;
    let mut sum = FixedReal::zero(w);
    let mut denom = BigInt::from(t);
    for n in 2..=n_terms {
        denom *= t;
        let log_n = crate::numerics::ln(&FixedReal::from_integer(n, w + 5))?;
        sum = sum.add(&log_n.div_int(&denom)?.rescale(w));
    }
    let x = 1.0 / t as f64;
    let m = n_terms as f64 + 1.0;
    // Σ_{n≥M} n x^n = x^M (M − (M−1)x) / (1−x)²
    let log_bound = m * x.ln() + (m - (m - 1.0) * x).ln() - 2.0 * (1.0 - x).ln();
    let tail = ulps_from_f64(log_bound.exp().max(f64::MIN_POSITIVE), w);
    let tail = if log_bound < -((w + 5) as f64) * std::f64::consts::LN_10 {
        BigUint::one()
    } else {
        tail
    };
    Ok(sum.with_added_error(tail).rescale(precision))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: u64, b: u64, l: u32, z: ExactRational) -> SeriesParams {
        SeriesParams::new(a, b, l, z, 2).unwrap()
    }

    fn check(x: &FixedReal, literal: &str) {
        let r = FixedReal::from_decimal_literal(literal, x.scale()).unwrap();
        assert!(x.agrees_with(&r), "{x} ± {} vs {literal}", x.error_bound());
    }

    #[test]
    fn euler_gamma_to_ten_digits() {
        let g = definition_sum(&params(1, 1, 0, ExactRational::one()), 200_000, 14).unwrap();
        assert!(g.error_f64() < 1e-11, "error {}", g.error_f64());
        check(&g, "0.57721566490153286060651209");
    }

    #[test]
    fn log_four_over_pi_alternating() {
        let v = definition_sum(&params(1, 1, 0, ExactRational::from(-1i64)), 100_000, 14).unwrap();
        assert!(v.error_f64() < 1e-10);
        check(&v, "0.2415644752704904446910368915632944245037");
    }

    #[test]
    fn single_term_is_one_minus_log_two() {
        let v = definition_sum(&params(1, 1, 0, ExactRational::fraction(0, 1)), 1, 20).unwrap();
        check(&v, "0.30685281944005469058276787854182343192");
    }

    #[test]
    fn geometric_and_derivative_cases() {
        // γ_{1,1}(1/2) and γ'_{1,1}(−1) from mpmath
        let v = definition_sum(&params(1, 1, 0, ExactRational::fraction(1, 2)), 1_000, 30).unwrap();
        check(&v, "0.370626515383013834456380561472200387658563402");
        let d = definition_sum(&params(1, 1, 1, ExactRational::from(-1i64)), 100_000, 12).unwrap();
        check(&d, "0.0462018644551717146666358237670861639183596423");
    }

    #[test]
    fn somos_direct_sum() {
        let s = somos_log_direct(2, 200, 50).unwrap();
        check(&s, "0.5078339228684383921890418407220763742462");
        assert!(s.error_f64() < 1e-49);
    }
}
