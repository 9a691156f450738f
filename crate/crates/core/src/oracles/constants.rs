//! Stored 50-digit constant literals and the independent computations used
//! to validate them.

use num_bigint::BigInt;

use super::definition::definition_sum;
use super::special::{bernoulli, digamma};
use crate::error::Result;
use crate::numerics::{self, pow10, ExactRational, FixedReal};
use crate::sequences::SeriesParams;

pub const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992";
pub const PI: &str = "3.14159265358979323846264338327950288419716939937510";
pub const LOG_2: &str = "0.69314718055994530941723212145817656807550013436025";
pub const CATALAN: &str = "0.91596559417721901505460351493238411077414937428167";
pub const GLAISHER: &str = "1.28242712910062263687534256886979172776768892732500";

/// Leading digits of A as quoted in the literature.
pub const GLAISHER_QUOTED: &str = "1.28242712";

/// Digits after the point in the stored literals.
pub const LITERAL_DIGITS: u32 = 50;

fn literal(s: &str, scale: u32) -> FixedReal {
    FixedReal::from_decimal_literal(s, scale).expect("stored literal parses")
}

/// Euler's constant: the literal up to its length, `−ψ(1)` beyond.
pub fn euler_gamma(scale: u32) -> Result<FixedReal> {
    if scale <= LITERAL_DIGITS - 2 {
        Ok(literal(EULER_GAMMA, scale))
    } else {
        Ok(digamma(&ExactRational::one(), scale)?.neg())
    }
}

pub fn pi(scale: u32) -> FixedReal {
    numerics::pi(scale)
}

pub fn log2(scale: u32) -> FixedReal {
    numerics::ln2(scale)
}

/// `log π`.
pub fn log_pi(scale: u32) -> Result<FixedReal> {
    Ok(numerics::ln(&pi(scale + 5))?.rescale(scale))
}

/// Catalan's constant `G` from the literal.
pub fn catalan(scale: u32) -> FixedReal {
    literal(CATALAN, scale)
}

/// Glaisher–Kinkelin `A` from the literal.
pub fn glaisher(scale: u32) -> FixedReal {
    literal(GLAISHER, scale)
}

/// `log A` from the literal.
pub fn log_glaisher(scale: u32) -> Result<FixedReal> {
    Ok(numerics::ln(&glaisher(scale + 5))?.rescale(scale))
}

/// `ζ′(2) = −Σ log n / n²` by Euler–Maclaurin summation from `n = N`:
/// the tail is `(log N + 1)/N + log N/(2N²) + Σ_j B_{2j} N^{−2j−1}(log N + 1 − H_{2j})`,
/// with the remainder bounded by twice the first omitted correction.
pub fn zeta_prime_two(scale: u32) -> Result<FixedReal> {
    let w = scale + 10;
    let n0: u64 = 40.max(w as u64);
    let mut head = FixedReal::zero(w);
    for n in 2..n0 {
        let log_n = numerics::ln(&FixedReal::from_integer(n, w + 4))?;
        head = head.add(&log_n.div_int(&BigInt::from(n * n))?.rescale(w));
    }
    let big_n = ExactRational::from(n0);
    let log_n = numerics::ln(&FixedReal::from_integer(n0, w))?;
    let mut with_log = ExactRational::zero();
    let mut plain = ExactRational::zero();
    let mut harmonic = ExactRational::zero();
    let mut harmonic_index = 0u64;
    let mut j = 1usize;
    let remainder = loop {
        while harmonic_index < 2 * j as u64 {
            harmonic_index += 1;
            harmonic += ExactRational::fraction(1, harmonic_index);
        }
        let coef = bernoulli(2 * j) * big_n.pow(-(2 * j as i32) - 1)?;
        let size = coef.abs().to_f64() * (log_n.to_f64() + 1.0 + harmonic.to_f64());
        if size.log10() < -((w + 2) as f64)
        {
            break 2u64;
        }
        with_log += &coef;
        plain += &coef * (ExactRational::one() - &harmonic);
        j += 1;
    };
    let inv_n = big_n.recip()?;
    let tail = log_n
        .mul_rational(&(&inv_n + ExactRational::fraction(1, 2) * &inv_n * &inv_n + with_log))
        .add(&FixedReal::from_rational(&(&inv_n + plain), w))
        .with_added_error(remainder);
    Ok(head.add(&tail).neg().rescale(scale))
}

/// `G = (π/8) log(2+√3) + (3/8) Σ_{n≥0} (n!)² / ((2n)! (2n+1)²)`.
pub fn catalan_series(scale: u32) -> Result<FixedReal> {
    let w = scale + 10;
    let root3 = (BigInt::from(3) * pow10(2 * w)).sqrt();
    let two_plus = FixedReal::from_parts(root3 + pow10(w) * 2u32, w, 1u32.into());
    let log_term = numerics::ln(&two_plus)?;
    let first = numerics::pi(w).mul(&log_term).mul_rational(&ExactRational::fraction(1, 8));

    let limit = ExactRational::fraction(1, pow10(w + 2));
    let mut term = ExactRational::one();
    let mut sum = ExactRational::zero();
    let mut n = 0u64;
    while term >= limit || n == 0 {
        sum += &term;
        // ratio of consecutive terms: (n+1)²(2n+1)² / ((2n+1)(2n+2)(2n+3)²)
        let r = ExactRational::fraction(
            BigInt::from(n + 1) * (n + 1) * (2 * n + 1),
            BigInt::from(2 * n + 2) * (2 * n + 3) * (2 * n + 3),
        );
        term = term * r;
        n += 1;
    }
    // ratios stay below 1/4, so the tail is at most term/3
    let tail = FixedReal::from_rational(&(term * ExactRational::fraction(1, 3)), w);
    let series = FixedReal::from_rational(&(sum * ExactRational::fraction(3, 8)), w)
        .with_added_error(tail.mantissa().magnitude().clone() + 1u32);
    Ok(first.add(&series).rescale(scale))
}

/// Outcome of one literal check.
#[derive(Clone, Debug, PartialEq)]
pub struct LiteralCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, stored: &FixedReal, computed: &FixedReal, how: &str) -> LiteralCheck {
    let passed = stored.agrees_with(computed);
    LiteralCheck {
        name,
        passed,
        detail: format!(
            "{how}: stored {} vs computed {} ± {}",
            stored.to_decimal_string(stored.scale()),
            computed.to_decimal_string(computed.scale()),
            computed.error_decimal_string(computed.scale()),
        ),
    }
}

/// Cross-checks every stored literal against an independent computation.
pub fn validate_literals() -> Result<Vec<LiteralCheck>> {
    let s = 45;
    let mut out = Vec::new();

    out.push(check("pi", &literal(PI, s), &numerics::pi(s), "Machin arctangent series"));
    out.push(check("log2", &literal(LOG_2, s), &numerics::ln2(s), "atanh series"));

    let gamma_params = SeriesParams::with_int_z(1, 1, 0, 1, 2)?;
    let by_definition = definition_sum(&gamma_params, 20_000, 8)?;
    out.push(check("gamma", &literal(EULER_GAMMA, 8), &by_definition, "definition sum, 8 digits"));
    let by_digamma = digamma(&ExactRational::one(), s)?.neg();
    out.push(check("gamma", &literal(EULER_GAMMA, s), &by_digamma, "−ψ(1)"));

    out.push(check("catalan", &literal(CATALAN, s), &catalan_series(s)?, "Ramanujan-type central binomial series"));

    let quoted = literal(GLAISHER_QUOTED, 8);
    out.push(check("glaisher", &literal(GLAISHER, 8), &quoted, "quoted leading digits"));
    // log A = (log 2π + γ)/12 − ζ′(2)/(2π²)
    let w = s + 5;
    let pi_w = numerics::pi(w);
    let log_2pi = numerics::ln(&pi_w.mul_int(&BigInt::from(2)))?;
    let zeta = zeta_prime_two(w)?;
    let log_a = log_2pi
        .add(&by_digamma.rescale(w))
        .mul_rational(&ExactRational::fraction(1, 12))
        .sub(&zeta.div(&pi_w.mul(&pi_w).mul_int(&BigInt::from(2)))?);
    let a_from_zeta = numerics::exp(&log_a)?.rescale(s);
    out.push(check("glaisher", &literal(GLAISHER, s), &a_from_zeta, "ζ′(2) relation with Euler–Maclaurin ζ′(2)"));
    Ok(out)
}
