//! Closed forms built from `log Γ`, `ψ` and the constant literals.

use std::str::FromStr;

use num_bigint::BigInt;

use super::constants;
use super::definition::definition_sum;
use super::quadrature::{quadrature, IntegrandKind, QuadratureSpec};
use super::special::{digamma, log_gamma};
use crate::digits::WordSpec;
use crate::error::{Error, Result};
use crate::numerics::{self, ExactRational, FixedReal};
use crate::sequences::SeriesParams;

/// The available closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormName {
    /// Value of the occurrence-count series of a word, both value branches.
    WordConstant,
    /// `γ_{a,b}(1) = log Γ((b+1)/a) − log Γ(b/a) − ψ(b/a)/a`.
    GammaAB1,
    /// `log σ_t` from `γ_{1,1}(1/t) = t log(t / ((t−1) σ_t^{t−1}))`.
    SomosFromGamma,
    /// `log A` from `γ′_{1,1}(−1) = log(2^{11/6} A⁶ / (π^{3/2} e))`.
    GlaisherFromGammaPrime,
    /// `G/π = γ′_{2,1}(−1) − γ_{2,1}(−1)/2 + log(4/π)/4 + 3 log A − (7/12) log 2`.
    CatalanCombination,
    /// `ζ′(2)/π² = (log 2π + γ)/6 − 2 log A`.
    Zeta2Relation,
}

impl FromStr for ClosedFormName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "word_constant" => Self::WordConstant,
            "gamma_ab_1" => Self::GammaAB1,
            "somos_from_gamma" => Self::SomosFromGamma,
            "glaisher_from_gamma_prime" => Self::GlaisherFromGammaPrime,
            "catalan_combination" => Self::CatalanCombination,
            "zeta2_relation" => Self::Zeta2Relation,
            other => return Err(Error::UnknownName(format!("closed form {other:?}"))),
        })
    }
}

/// Arguments a closed form may need; unused fields are ignored.
#[derive(Clone, Debug, Default)]
pub struct ClosedFormArgs {
    pub word: Option<WordSpec>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub t: Option<u64>,
    /// `γ′_{1,1}(−1)` or `γ′_{2,1}(−1)`; computed by quadrature when absent.
    pub gamma_prime: Option<FixedReal>,
    /// `γ_{2,1}(−1)`; computed by quadrature when absent.
    pub gamma: Option<FixedReal>,
}

fn missing(what: &str) -> Error {
    Error::InvalidArgument(format!("closed form needs {what}"))
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::fraction(n, d)
}

/// `log Γ((b+1)/a) − log Γ(b/a) − ψ(b/a)/a`.
pub fn gamma_ab_at_one(a: u64, b: u64, precision: u32) -> Result<FixedReal> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams("a and b must be positive".into()));
    }
    let w = precision + 5;
    let x = ExactRational::fraction(b, a);
    let x1 = ExactRational::fraction(b + 1, a);
    let v = log_gamma(&x1, w)?
        .sub(&log_gamma(&x, w)?)
        .sub(&digamma(&x, w)?.mul_rational(&ExactRational::fraction(1, a)));
    Ok(v.rescale(precision))
}

/// Closed form of the word series, using the separate zero-value branch
/// `log Γ(1/a) + γ/a − |ω| log B` when `v_B(ω) = 0`.
pub fn word_constant(word: &WordSpec, precision: u32) -> Result<FixedReal> {
    let a = (word.base() as u64).pow(word.len() as u32);
    let v = word.value();
    if v != 0 {
        return gamma_ab_at_one(a, v, precision);
    }
    let w = precision + 5;
    let log_b = numerics::ln(&FixedReal::from_integer(word.base(), w))?;
    let value = log_gamma(&ExactRational::fraction(1, a), w)?
        .add(&constants::euler_gamma(w)?.mul_rational(&ExactRational::fraction(1, a)))
        .sub(&log_b.mul_int(&BigInt::from(word.len())));
    Ok(value.rescale(precision))
}

/// `log σ_t = (log(t/(t−1)) − γ_{1,1}(1/t)/t) / (t−1)`, with `γ_{1,1}(1/t)`
/// from the geometric definition sum.
pub fn somos_from_gamma(t: u64, precision: u32) -> Result<FixedReal> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be an integer ≥ 2, got {t}")));
    }
    let w = precision + 5;
    let params = SeriesParams::new(1, 1, 0, ExactRational::fraction(1, t), 2)?;
    let g = definition_sum(&params, u64::MAX / 2, w)?;
    let log_ratio = numerics::ln_rational(&ExactRational::fraction(t, t - 1), w)?;
    let tt = t as i64;
    let value = log_ratio
        .sub(&g.mul_rational(&q(1, tt)))
        .mul_rational(&q(1, tt - 1));
    Ok(value.rescale(precision))
}

fn quadrature_value(a: u64, b: u64, l: u32, z: i64, target: u32) -> Result<FixedReal> {
    let params = SeriesParams::with_int_z(a, b, l, z, 2)?;
    quadrature(&QuadratureSpec::new(IntegrandKind::DefinitionSingle, params, target))
}

/// `log A = (γ′_{1,1}(−1) − (11/6) log 2 + (3/2) log π + 1) / 6`.
pub fn glaisher_from_gamma_prime(gamma_prime: &FixedReal, precision: u32) -> Result<FixedReal> {
    let w = precision.max(gamma_prime.scale()) + 5;
    let value = gamma_prime
        .rescale(w)
        .sub(&constants::log2(w).mul_rational(&q(11, 6)))
        .add(&constants::log_pi(w)?.mul_rational(&q(3, 2)))
        .add(&FixedReal::from_integer(1, w))
        .mul_rational(&q(1, 6));
    Ok(value.rescale(precision))
}

/// `γ′_{1,1}(−1) = (11/6) log 2 + 6 log A − (3/2) log π − 1` from the A literal.
pub fn gamma_prime_11_minus1(precision: u32) -> Result<FixedReal> {
    let w = precision + 5;
    let value = constants::log2(w)
        .mul_rational(&q(11, 6))
        .add(&constants::log_glaisher(w)?.mul_int(&BigInt::from(6)))
        .sub(&constants::log_pi(w)?.mul_rational(&q(3, 2)))
        .sub(&FixedReal::from_integer(1, w));
    Ok(value.rescale(precision))
}

/// `log(4/π)`.
pub fn log_four_over_pi(precision: u32) -> Result<FixedReal> {
    let w = precision + 5;
    Ok(constants::log2(w).mul_int(&BigInt::from(2)).sub(&constants::log_pi(w)?).rescale(precision))
}

/// `γ_{2,1}(−1) = π/4 − 2 log Γ(1/4) + log √(2π³)`.
pub fn gamma_21_minus1(precision: u32) -> Result<FixedReal> {
    let w = precision + 5;
    let pi = constants::pi(w);
    let log_pi = constants::log_pi(w)?;
    let value = pi
        .mul_rational(&q(1, 4))
        .sub(&log_gamma(&q(1, 4), w)?.mul_int(&BigInt::from(2)))
        .add(&constants::log2(w).mul_rational(&q(1, 2)))
        .add(&log_pi.mul_rational(&q(3, 2)));
    Ok(value.rescale(precision))
}

/// `γ′_{2,1}(−1) = G/π + π/8 − log Γ(1/4) − 3 log A + log π + (1/3) log 2`.
pub fn gamma_prime_21_minus1(precision: u32) -> Result<FixedReal> {
    let w = precision + 5;
    let pi = constants::pi(w);
    let value = constants::catalan(w)
        .div(&pi)?
        .add(&pi.mul_rational(&q(1, 8)))
        .sub(&log_gamma(&q(1, 4), w)?)
        .sub(&constants::log_glaisher(w)?.mul_int(&BigInt::from(3)))
        .add(&constants::log_pi(w)?)
        .add(&constants::log2(w).mul_rational(&q(1, 3)));
    Ok(value.rescale(precision))
}

/// `G/π` from the combination with `γ_{2,1}(−1)` and `γ′_{2,1}(−1)`.
pub fn catalan_combination(gamma: &FixedReal, gamma_prime: &FixedReal, precision: u32) -> Result<FixedReal> {
    let w = precision.max(gamma.scale()).max(gamma_prime.scale()) + 5;
    let value = gamma_prime
        .rescale(w)
        .sub(&gamma.rescale(w).mul_rational(&q(1, 2)))
        .add(&log_four_over_pi(w)?.mul_rational(&q(1, 4)))
        .add(&constants::log_glaisher(w)?.mul_int(&BigInt::from(3)))
        .sub(&constants::log2(w).mul_rational(&q(7, 12)));
    Ok(value.rescale(precision))
}

/// `ζ′(2)/π² = 2((log 2π + γ)/12 − log A)`.
pub fn zeta2_relation(precision: u32) -> Result<FixedReal> {
    let w = precision + 5;
    let log_2pi = constants::log2(w).add(&constants::log_pi(w)?);
    let value = log_2pi
        .add(&constants::euler_gamma(w)?)
        .mul_rational(&q(1, 6))
        .sub(&constants::log_glaisher(w)?.mul_int(&BigInt::from(2)));
    Ok(value.rescale(precision))
}

/// Evaluates a named closed form.
pub fn closed_form(name: ClosedFormName, args: &ClosedFormArgs, precision: u32) -> Result<FixedReal> {
    match name {
        ClosedFormName::WordConstant => word_constant(args.word.as_ref().ok_or_else(|| missing("a word"))?, precision),
        ClosedFormName::GammaAB1 => gamma_ab_at_one(
            args.a.ok_or_else(|| missing("a"))?,
            args.b.ok_or_else(|| missing("b"))?,
            precision,
        ),
        ClosedFormName::SomosFromGamma => somos_from_gamma(args.t.ok_or_else(|| missing("t"))?, precision),
        ClosedFormName::GlaisherFromGammaPrime => {
            let gp = match &args.gamma_prime {
                Some(v) => v.clone(),
                None => quadrature_value(1, 1, 1, -1, 13)?,
            };
            glaisher_from_gamma_prime(&gp, precision)
        }
        ClosedFormName::CatalanCombination => {
            let g = match &args.gamma {
                Some(v) => v.clone(),
                None => quadrature_value(2, 1, 0, -1, 13)?,
            };
            let gp = match &args.gamma_prime {
                Some(v) => v.clone(),
                None => quadrature_value(2, 1, 1, -1, 13)?,
            };
            catalan_combination(&g, &gp, precision)
        }
        ClosedFormName::Zeta2Relation => zeta2_relation(precision),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(x: &FixedReal, literal: &str) {
        let r = FixedReal::from_decimal_literal(literal, x.scale()).unwrap();
        assert!(x.agrees_with(&r), "{x} ± {} vs {literal}", x.error_bound());
    }

    #[test]
    fn gamma_ab_collapses_to_euler_gamma() {
        near(&gamma_ab_at_one(1, 1, 40).unwrap(), constants::EULER_GAMMA);
    }

    #[test]
    fn word_branches_agree_with_general_formula() {
        for (w, b) in [("0", 2), ("00", 2), ("0", 3), ("1", 2), ("11", 2), ("01", 2)] {
            let word = WordSpec::parse(w, b).unwrap();
            let p = crate::sequences::word_params(&word);
            let general = gamma_ab_at_one(p.a(), p.b(), 30).unwrap();
            assert!(word_constant(&word, 30).unwrap().agrees_with(&general), "{w}");
        }
        near(&word_constant(&WordSpec::parse("11", 2).unwrap(), 35).unwrap(), "0.06818426851532267092528871884186547353285");
    }

    #[test]
    fn somos_matches_direct_sum() {
        let direct = super::super::definition::somos_log_direct(2, 400, 40).unwrap();
        assert!(somos_from_gamma(2, 40).unwrap().agrees_with(&direct));
        near(&somos_from_gamma(2, 35).unwrap(), "0.5078339228684383921890418407220763742462");
    }

    #[test]
    fn relations_reproduce_literals() {
        near(&zeta2_relation(40).unwrap(), "-0.0949934988490888010666440600032883337339");
        let log_a = glaisher_from_gamma_prime(&gamma_prime_11_minus1(40).unwrap(), 40).unwrap();
        near(&log_a, "0.2487544770337842625472529935761139760974");
        let combo = catalan_combination(&gamma_21_minus1(40).unwrap(), &gamma_prime_21_minus1(40).unwrap(), 40).unwrap();
        near(&combo, "0.2915609040308187801383844564683949188641");
    }

    #[test]
    fn unknown_name() {
        assert!("nope".parse::<ClosedFormName>().is_err());
        assert_eq!("zeta2_relation".parse::<ClosedFormName>().unwrap(), ClosedFormName::Zeta2Relation);
    }
}
