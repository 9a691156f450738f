//! `log Γ` and `ψ` for positive rationals by upward recurrence and the
//! Stirling / asymptotic series, with the remainder bounded by the first
//! omitted term.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::{ln, ln_rational, pi, ExactRational, FixedReal};

const GUARD: u32 = 10;

fn bernoulli_cache() -> &'static Mutex<Vec<ExactRational>> {
    static CACHE: OnceLock<Mutex<Vec<ExactRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![ExactRational::one()]))
}

/// Bernoulli number `B_n` (with `B_1 = −1/2`).
pub fn bernoulli(n: usize) -> ExactRational {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        if m > 1 && m % 2 == 1 {
            cache.push(ExactRational::zero());
            continue;
        }
        // B_m = −1/(m+1) Σ_{k<m} binom(m+1, k) B_k
        let mut binom = BigInt::from(1);
        let mut acc = ExactRational::zero();
        for (k, bk) in cache.iter().enumerate() {
            if !bk.is_zero() {
                acc += ExactRational::from(binom.clone()) * bk;
            }
            binom = binom * (m + 1 - k) / (k + 1);
        }
        let value = -(acc * ExactRational::fraction(1, m as u64 + 1));
        cache.push(value);
    }
    cache[n].clone()
}

fn require_positive(x: &ExactRational) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("argument must be positive, got {x}")));
    }
    Ok(())
}

/// Shift `n` with `x + n ≥ max(10, w/2)` for working scale `w`.
fn shift_for(x: &ExactRational, w: u32) -> u64 {
    let target = (w as f64 / 2.0).max(10.0);
    let xf = x.to_f64();
    if xf >= target {
        0
    } else {
        (target - xf).ceil() as u64
    }
}

/// Sums the terms `term(1), term(2), …` of an enveloping asymptotic series,
/// stopping once a term drops below `10^{−w−2}`; the first omitted term
/// bounds the remainder and is returned in ulps of scale `w`.
fn asymptotic_tail(
    w: u32,
    term: impl Fn(usize) -> ExactRational,
) -> (FixedReal, u64) {
    let limit = ExactRational::fraction(1, crate::numerics::pow10(w + 2));
    let mut sum = ExactRational::zero();
    let mut j = 1;
    loop {
        let t = term(j);
        if t.abs() < limit {
            // the series is enveloping: the remainder is below this term
            return (FixedReal::from_rational(&sum, w), 1);
        }
        sum += t;
        j += 1;
        assert!(j < 10_000, "asymptotic series failed to reach the target");
    }
}

/// `log Γ(x)` for rational `x > 0`, at scale `precision`.
pub fn log_gamma(x: &ExactRational, precision: u32) -> Result<FixedReal> {
    require_positive(x)?;
    let w = precision + GUARD;
    let n = shift_for(x, w);
    let big_x = x + ExactRational::from(n);

    // Stirling: (X − 1/2) log X − X + log(2π)/2 + Σ B_{2j} / (2j(2j−1) X^{2j−1})
    let log_x = ln_rational(&big_x, w)?;
    let two_pi = pi(w + 2).mul_int(&BigInt::from(2)).rescale(w + 2);
    let log_2pi = ln(&two_pi)?.rescale(w);
    let inv_x = big_x.recip()?;
    let inv_x2 = &inv_x * &inv_x;
    let (series, remainder) = asymptotic_tail(w, |j| {
        let b = bernoulli(2 * j);
        let d = (2 * j * (2 * j - 1)) as u64;
        b * ExactRational::fraction(1, d) * &inv_x * inv_x2.pow(j as i32 - 1).expect("power")
    });
    let mut value = log_x
        .mul_rational(&(&big_x - ExactRational::fraction(1, 2)))
        .sub(&FixedReal::from_rational(&big_x, w))
        .add(&log_2pi.mul_rational(&ExactRational::fraction(1, 2)))
        .add(&series)
        .with_added_error(remainder);

    if n > 0 {
        // log Γ(x) = log Γ(x+n) − log(x(x+1)⋯(x+n−1))
        let mut product = ExactRational::one();
        for j in 0..n {
            product = product * (x + ExactRational::from(j));
        }
        value = value.sub(&ln_rational(&product, w)?);
    }
    Ok(value.rescale(precision))
}

/// Digamma `ψ(x)` for rational `x > 0`, at scale `precision`.
pub fn digamma(x: &ExactRational, precision: u32) -> Result<FixedReal> {
    require_positive(x)?;
    let w = precision + GUARD;
    let n = shift_for(x, w);
    let big_x = x + ExactRational::from(n);

    // ψ(X) ≈ log X − 1/(2X) − Σ B_{2j} / (2j X^{2j})
    let inv_x = big_x.recip()?;
    let inv_x2 = &inv_x * &inv_x;
    let (series, remainder) = asymptotic_tail(w, |j| {
        let b = bernoulli(2 * j);
        b * ExactRational::fraction(1, 2 * j as u64) * inv_x2.pow(j as i32).expect("power")
    });
    let mut shift = ExactRational::fraction(1, 2) * &inv_x;
    for j in 0..n {
        // ψ(x) = ψ(x+n) − Σ_{j<n} 1/(x+j)
        shift += (x + ExactRational::from(j)).recip()?;
    }
    let value = ln_rational(&big_x, w)?
        .sub(&series)
        .sub(&FixedReal::from_rational(&shift, w))
        .with_added_error(remainder);
    Ok(value.rescale(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::FixedReal;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::fraction(n, d)
    }

    fn near(x: &FixedReal, literal: &str) {
        let r = FixedReal::from_decimal_literal(literal, x.scale()).unwrap();
        assert!(x.agrees_with(&r), "{x} vs {literal} (error {})", x.error_bound());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(bernoulli(13), q(0, 1));
    }

    #[test]
    fn log_gamma_examples() {
        let one = log_gamma(&q(1, 1), 30).unwrap();
        assert!(one.error_bound() < q(1, 10i64.pow(15)));
        assert!(one.to_rational().abs() <= one.error_bound());
        // mpmath references
        near(&log_gamma(&q(1, 2), 30).unwrap(), "0.572364942924700087071713675676529355824");
        near(&log_gamma(&q(1, 4), 30).unwrap(), "1.288022524698077457370610440219717295925");
        near(&log_gamma(&q(25, 1), 30).unwrap(), "54.784729398112319190093344083606");
    }

    #[test]
    fn digamma_examples() {
        near(&digamma(&q(1, 1), 30).unwrap(), "-0.577215664901532860606512090082402431042");
        near(&digamma(&q(1, 2), 30).unwrap(), "-1.963510026021423479440976332999");
        near(&digamma(&q(3, 4), 30).unwrap(), "-1.085860879786472169626886762817");
    }

    #[test]
    fn rejects_non_positive() {
        assert!(log_gamma(&q(0, 1), 10).is_err());
        assert!(digamma(&q(-1, 2), 10).is_err());
    }
}
