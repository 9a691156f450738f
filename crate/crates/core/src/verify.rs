//! Exact-identity self checks, grouped into named suites.

use num_bigint::BigInt;

use crate::catalog::{self, ConstantArgs};
use crate::digits::{self, WordSpec};
use crate::error::{Error, Result};
use crate::kernels::{kernel_q, kernel_q_direct, kernel_qtilde_forms, weight_parts, WeightKind};
use crate::numerics::ExactRational;
use crate::oracles::validate_literals;
use crate::sequences::{coefficient, coefficient_recursive, verify_functional_equation, word_params, SeriesParams};
use crate::series_engines::SeriesFamily;

pub const SUITES: &[&str] = &["kernels", "functional", "digits", "blocks", "folding", "literals"];

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run(name: &str) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s)).collect();
    }
    Ok(vec![run_one(name)?])
}

fn run_one(name: &str) -> Result<SuiteReport> {
    match name {
        "kernels" => Ok(kernels(2..=12, 200)),
        "functional" => Ok(functional(500)),
        "digits" => Ok(digit_equivalence(10_000)),
        "blocks" => Ok(blocks(1_000)),
        "folding" => folding(2_000),
        "literals" => literals(),
        other => Err(Error::UnknownName(format!("suite {other:?}; known suites: {}, all", SUITES.join(", ")))),
    }
}

/// Addison weight, both `Q̃` forms, integrality of `P_B(k)` and `P_2 ≡ 1`.
pub fn kernels(bases: std::ops::RangeInclusive<u32>, max_k: u64) -> SuiteReport {
    let mut r = SuiteReport::new("kernels");
    for base in bases {
        let b = base as i64;
        for k in 1..=max_k {
            let bk = b * k as i64;
            let product: BigInt = (1..b).map(|j| BigInt::from(bk + j)).product();
            let inner: ExactRational = (1..b).map(|m| ExactRational::fraction(m * (b - m), bk + m)).sum();
            let p = ExactRational::from(product) * inner;
            r.check(p.is_integer(), || format!("P_{base}({k}) = {p} is not an integer"));
            if base == 2 {
                r.check(p == ExactRational::one(), || format!("P_2({k}) = {p}"));
            }
            let full: BigInt = (0..=b).map(|j| BigInt::from(bk + j)).product();
            let w = p.checked_div(&ExactRational::from(full)).expect("non-zero");
            let q = kernel_q_direct(k, base);
            let expect = &q - ExactRational::fraction(b - 1, BigInt::from(2 * bk) * (k + 1));
            r.check(w == expect, || format!("Addison weight at k={k}, B={base}"));
            let (wn, wd) = weight_parts(WeightKind::Addison, k, base);
            r.check(ExactRational::fraction(wn, wd) == w, || format!("Addison parts at k={k}, B={base}"));
            r.check(kernel_q(k, base) == q, || format!("Q parts at k={k}, B={base}"));
            let (difference, direct) = kernel_qtilde_forms(k, base);
            r.check(difference == direct, || format!("Q̃ forms at k={k}, B={base}"));
        }
    }
    r
}

/// Parameter sets covering `a ∈ {1,2,4}`, `b ∈ {1,2,3}`, `l ∈ {0,1}`,
/// `z ∈ {1,−1,1/2}` and `B ∈ {2,3}`.
pub fn functional_param_sets() -> Vec<SeriesParams> {
    let half = ExactRational::fraction(1, 2);
    let one = ExactRational::one();
    let minus = ExactRational::from(-1i64);
    [
        (1, 1, 0, one.clone(), 2),
        (1, 1, 0, minus.clone(), 2),
        (1, 1, 1, minus.clone(), 2),
        (2, 1, 0, minus.clone(), 3),
        (2, 1, 1, minus.clone(), 3),
        (1, 2, 0, half.clone(), 2),
        (4, 3, 0, one.clone(), 2),
        (4, 2, 1, half.clone(), 3),
        (2, 3, 0, half, 2),
        (4, 1, 1, minus, 2),
    ]
    .into_iter()
    .map(|(a, b, l, z, base)| SeriesParams::new(a, b, l, z, base).expect("valid parameters"))
    .collect()
}

pub fn functional(degree: u64) -> SuiteReport {
    let mut r = SuiteReport::new("functional");
    for p in functional_param_sets() {
        r.check(verify_functional_equation(&p, degree), || format!("functional equation fails for {p}"));
    }
    r
}

/// Words whose recursion coefficients must equal their direct digit counts.
pub fn listed_words() -> Vec<WordSpec> {
    [("0", 2), ("1", 2), ("01", 2), ("10", 2), ("11", 2), ("0", 3), ("2", 3), ("12", 3)]
        .into_iter()
        .map(|(w, b)| WordSpec::parse(w, b).expect("valid word"))
        .collect()
}

/// Word counts, parity differences and prefix-sum versus recursion.
pub fn digit_equivalence(max_k: u64) -> SuiteReport {
    let mut r = SuiteReport::new("digits");
    for word in listed_words() {
        let p = word_params(&word);
        for k in 1..=max_k {
            let a = coefficient(&p, k);
            let n = digits::count_occurrences(&word, k);
            r.check(a == ExactRational::from(n), || format!("word {word} at k={k}: {a} vs {n}"));
        }
    }
    for base in [2u32, 4] {
        let p = SeriesParams::with_int_z(1, 1, 0, -1, base).expect("valid");
        for k in 1..=max_k {
            let (odd, even) = digits::parity_counts(k, base).expect("even base");
            let a = coefficient(&p, k);
            r.check(a == ExactRational::from(odd as i64 - even as i64), || format!("parity B={base} k={k}"));
        }
    }
    for p in functional_param_sets() {
        for k in (1..=max_k).step_by(37) {
            r.check(coefficient(&p, k) == coefficient_recursive(&p, k), || format!("prefix sum vs recursion {p} k={k}"));
        }
    }
    r
}

/// Each block of `B` terms of the ε-form equals one term `a_k Q(k,B)`, and
/// `a_k Q + a_k Q̃ = a_k (B−1)/(Bk(k+1))`.
pub fn blocks(max_k: u64) -> SuiteReport {
    let mut r = SuiteReport::new("blocks");
    for p in functional_param_sets().into_iter().filter(|p| p.l() == 0) {
        let base = p.base();
        let b = base as u64;
        for k in 1..=max_k {
            let a = coefficient(&p, k);
            let block: ExactRational = (0..b)
                .map(|j| {
                    let n = k * b + j;
                    ExactRational::fraction(digits::epsilon(n, base), n)
                })
                .sum::<ExactRational>()
                * &a;
            let q = kernel_q(k, base);
            r.check(block == &a * &q, || format!("block identity {p} k={k}"));
            let (qt, _) = kernel_qtilde_forms(k, base);
            let split = &a * ExactRational::fraction(b - 1, b * k * (k + 1));
            r.check(&a * &q + &a * qt == split, || format!("split identity {p} k={k}"));
        }
    }
    r
}

/// General-base coefficients equal the folded binary forms.
pub fn folding(max_k: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("folding");
    let somos = ConstantArgs { t: Some(2), ..ConstantArgs::default() };
    let none = ConstantArgs::default();
    let cases = [
        ("somos_t", &somos, SeriesFamily::Vacca),
        ("somos_t", &somos, SeriesFamily::Addison),
        ("glaisher_logA", &none, SeriesFamily::Addison),
        ("catalan_over_pi", &none, SeriesFamily::Addison),
    ];
    for (name, args, family) in cases {
        let general = catalog::series_recipe(name, args, 2, family)?;
        let folded = catalog::folded_recipe(name, args, family)?;
        for k in 1..=max_k {
            r.check(general.sequence.value(2, k) == folded.sequence.value(2, k), || {
                format!("{name} ({family}) coefficient at k={k}")
            });
        }
    }
    Ok(r)
}

/// Stored constant literals against independent computations.
pub fn literals() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("literals");
    for c in validate_literals()? {
        r.check(c.passed, || format!("{}: {}", c.name, c.detail));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(kernels(2..=5, 30).passed());
        assert!(functional(60).passed());
        assert!(digit_equivalence(300).passed());
        assert!(blocks(50).passed());
        assert!(folding(100).unwrap().passed());
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nonexistent").is_err());
    }
}
