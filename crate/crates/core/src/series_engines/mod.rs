//! Partial sums of the Vacca-, complement- and Addison-type series, with
//! tail estimates recorded at checkpoints.
//!
//! Every term is one exact rounded division at `precision + GUARD_DIGITS`
//! digits, so a partial sum is an integer mantissa. Chunks of the index range
//! are summed independently and reduced in ascending order, which makes the
//! parallel result identical to the sequential one.

pub mod leading;
pub mod tail;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::digits;
use crate::error::{Error, Result};
use crate::kernels::{weight_parts, WeightKind};
use crate::numerics::{pow10, round_div, ExactRational, FixedReal, GUARD_DIGITS};
use crate::sequences::{LinearSequence, ScaledCoefficient, SeriesParams};

pub use leading::leading_integral;
pub use tail::{tail_bound, tail_to_fixed};

const CHUNK: u64 = 1 << 14;

/// The series representations of `γ_{a,b}^{(l)}(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesFamily {
    /// `Σ a_k Q(k,B)`.
    Vacca,
    /// `I₀ − Σ a_k Q̃(k,B)`.
    Complement,
    /// `I_l/2 + Σ a_{k,l} P_B(k)/(Bk⋯(Bk+B))`.
    Addison,
    /// `Σ a_{⌊k/B⌋} ε(k)/k`, summed in whole blocks of `B` terms.
    EpsilonForm,
}

impl SeriesFamily {
    pub const ALL: [SeriesFamily; 4] = [Self::Vacca, Self::Complement, Self::Addison, Self::EpsilonForm];

    pub fn name(self) -> &'static str {
        match self {
            Self::Vacca => "vacca",
            Self::Complement => "complement",
            Self::Addison => "addison",
            Self::EpsilonForm => "epsilon",
        }
    }

    /// Kernel whose decay governs the tail.
    pub fn weight(self) -> WeightKind {
        match self {
            Self::Vacca | Self::EpsilonForm => WeightKind::Vacca,
            Self::Complement => WeightKind::Complement,
            Self::Addison => WeightKind::Addison,
        }
    }
}

impl fmt::Display for SeriesFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("series method {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

/// Where to record partial sums and how to run the summation.
#[derive(Clone, Debug, Default)]
pub struct SumOptions {
    /// Term counts to record; powers of ten below `N` when absent. `N` itself
    /// is always recorded.
    pub checkpoints: Option<Vec<u64>>,
    pub execution: Execution,
}

impl SumOptions {
    pub fn sequential() -> Self {
        Self { execution: Execution::Sequential, ..Self::default() }
    }

    pub fn with_checkpoints(checkpoints: Vec<u64>) -> Self {
        Self { checkpoints: Some(checkpoints), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub terms: u64,
    pub partial: FixedReal,
    pub estimated_tail: FixedReal,
    pub reference_error: Option<FixedReal>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvergenceReport {
    pub checkpoints: Vec<Checkpoint>,
}

impl ConvergenceReport {
    /// Fills in `|partial − reference|` at every checkpoint.
    pub fn with_reference(mut self, reference: &FixedReal) -> Self {
        for c in &mut self.checkpoints {
            let scale = c.partial.scale();
            c.reference_error = Some(c.partial.sub(&reference.rescale(scale)).abs());
        }
        self
    }

    pub fn last(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }
}

/// `leading + Σ_{k=1}^{N} c_k·w(k)` for a coefficient sequence and kernel.
#[derive(Clone, Debug)]
pub struct WeightedSeries {
    pub sequence: LinearSequence,
    pub base: u32,
    pub weight: WeightKind,
    /// Closed-form part; evaluated at the working scale by the caller.
    pub leading: Leading,
}

/// The non-series part of a representation.
#[derive(Clone, Debug)]
pub enum Leading {
    Exact(ExactRational),
    Integral { params: SeriesParams, factor: ExactRational },
    Value(FixedReal),
}

impl Leading {
    fn eval(&self, scale: u32) -> Result<FixedReal> {
        Ok(match self {
            Leading::Exact(q) => FixedReal::from_rational(q, scale),
            Leading::Integral { params, factor } => leading_integral(params, scale + 2)?.mul_rational(factor).rescale(scale),
            Leading::Value(v) => v.rescale(scale),
        })
    }
}

fn working_scale(precision: u32) -> Result<u32> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    Ok(precision + GUARD_DIGITS)
}

/// Sorted, deduplicated checkpoints ending at `n`, each a multiple of `align`.
fn checkpoint_list(n: u64, opts: &SumOptions, align: u64) -> Result<Vec<u64>> {
    let mut list = match &opts.checkpoints {
        Some(c) => {
            if let Some(bad) = c.iter().find(|&&t| t > n) {
                return Err(Error::InvalidArgument(format!("checkpoint {bad} exceeds the term count {n}")));
            }
            c.clone()
        }
        None => std::iter::successors(Some(10u64), |p| p.checked_mul(10))
            .take_while(|&p| p < n)
            .filter(|p| p % align == 0)
            .collect(),
    };
    list.push(n);
    list.sort_unstable();
    list.dedup();
    if let Some(&bad) = list.iter().find(|&&t| t % align != 0) {
        return Err(Error::Misaligned { terms: bad, alignment: align });
    }
    Ok(list)
}

/// Sums `term(k)` for `first ≤ k ≤ end` and returns the running total at
/// each `end` together with the accumulated rounding error in ulps.
fn accumulate<F>(first: u64, ends: &[u64], execution: Execution, term: F) -> Vec<(BigInt, BigUint)>
where
    F: Fn(u64) -> (BigInt, u64) + Sync,
{
    let mut chunks = Vec::new();
    let mut lo = first;
    for &end in ends {
        while lo <= end {
            let hi = end.min(lo.saturating_add(CHUNK - 1));
            chunks.push((lo, hi));
            lo = hi + 1;
        }
    }
    let run = |&(lo, hi): &(u64, u64)| {
        let mut sum = BigInt::zero();
        let mut err = 0u64;
        for k in lo..=hi {
            let (t, e) = term(k);
            sum += t;
            err += e;
        }
        (sum, err)
    };
    let sums: Vec<(BigInt, u64)> = match execution {
        Execution::Parallel => chunks.par_iter().map(run).collect(),
        Execution::Sequential => chunks.iter().map(run).collect(),
    };

    let mut out = Vec::with_capacity(ends.len());
    let mut total = BigInt::zero();
    let mut err = BigUint::zero();
    let mut next = 0;
    for &end in ends {
        while next < chunks.len() && chunks[next].1 <= end {
            total += &sums[next].0;
            err += sums[next].1;
            next += 1;
        }
        out.push((total.clone(), err.clone()));
    }
    out
}

/// One rounded term `c·w·10^w` with its error in ulps, for weights in `[0, 1]`.
fn scaled_term(c: ScaledCoefficient, wn: &BigInt, wd: &BigInt, one: &BigInt) -> (BigInt, u64) {
    match c {
        ScaledCoefficient::Exact(num, den) => {
            if num.is_zero() {
                (BigInt::zero(), 0)
            } else {
                (round_div(&(num * wn * one), &(den * wd)), 1)
            }
        }
        ScaledCoefficient::Fixed(m, e) => (round_div(&(m * wn), wd), e + 1),
    }
}

fn report(
    partials: Vec<(BigInt, BigUint)>,
    ends: &[u64],
    leading: &FixedReal,
    w: u32,
    precision: u32,
    tail: impl Fn(u64) -> f64,
) -> (FixedReal, ConvergenceReport) {
    let checkpoints: Vec<Checkpoint> = partials
        .into_iter()
        .zip(ends)
        .map(|((sum, err), &terms)| Checkpoint {
            terms,
            partial: FixedReal::from_parts(sum, w, err).add(leading).rescale(precision),
            estimated_tail: tail_to_fixed(tail(terms), precision),
            reference_error: None,
        })
        .collect();
    let value = checkpoints.last().expect("N is always a checkpoint").partial.clone();
    (value, ConvergenceReport { checkpoints })
}

/// `leading + Σ_{k≤N} c_k w(k)` at `precision` digits.
pub fn sum_weighted(
    series: &WeightedSeries,
    n: u64,
    precision: u32,
    opts: &SumOptions,
) -> Result<(FixedReal, ConvergenceReport)> {
    let w = working_scale(precision)?;
    let ends = checkpoint_list(n, opts, 1)?;
    let leading = series.leading.eval(w)?;
    let coeffs = series.sequence.fixed(series.base, w);
    let one = pow10(w);
    let (base, kind) = (series.base, series.weight);
    let partials = accumulate(1, &ends, opts.execution, |k| {
        let (wn, wd) = weight_parts(kind, k, base);
        scaled_term(coeffs.value(k), &wn, &wd, &one)
    });
    Ok(report(partials, &ends, &leading, w, precision, |t| {
        tail_bound(&series.sequence, base, kind, t)
    }))
}

fn require_l0(params: &SeriesParams, what: &str) -> Result<()> {
    if params.l() != 0 {
        return Err(Error::InvalidParams(format!("the {what} series needs l = 0, got l = {}", params.l())));
    }
    Ok(())
}

/// The weighted series behind a family, for `a_{k,l}` of `params`.
pub fn family_series(family: SeriesFamily, params: &SeriesParams) -> Result<WeightedSeries> {
    let seq = LinearSequence::from_params(params);
    let (sequence, leading) = match family {
        SeriesFamily::Vacca | SeriesFamily::EpsilonForm => {
            require_l0(params, family.name())?;
            (seq, Leading::Exact(ExactRational::zero()))
        }
        SeriesFamily::Complement => {
            require_l0(params, "complement")?;
            let negated = LinearSequence {
                prefix: seq.prefix.map(|(r, inc)| (-r, inc)),
                ..seq
            };
            (negated, Leading::Integral { params: params.clone(), factor: ExactRational::one() })
        }
        SeriesFamily::Addison => (
            seq,
            Leading::Integral { params: params.clone(), factor: ExactRational::fraction(1, 2) },
        ),
    };
    Ok(WeightedSeries { sequence, base: params.base(), weight: family.weight(), leading })
}

/// Sums `family` for `params` with `n` terms (for the ε-form, `n` counts
/// individual terms and must be a multiple of `B`).
pub fn sum_family(
    family: SeriesFamily,
    params: &SeriesParams,
    n: u64,
    precision: u32,
    opts: &SumOptions,
) -> Result<(FixedReal, ConvergenceReport)> {
    let series = family_series(family, params)?;
    if family == SeriesFamily::EpsilonForm {
        return sum_epsilon(&series, n, precision, opts);
    }
    sum_weighted(&series, n, precision, opts)
}

/// `n` terms `a_{⌊k/B⌋} ε(k)/k`, taken as the `n/B` complete blocks
/// `k = jB, …, jB+B−1` for `j = 1..n/B`. Block `j` equals `a_j Q(j,B)`.
fn sum_epsilon(series: &WeightedSeries, n: u64, precision: u32, opts: &SumOptions) -> Result<(FixedReal, ConvergenceReport)> {
    let w = working_scale(precision)?;
    let base = series.base;
    let b = base as u64;
    let ends = checkpoint_list(n, opts, b)?;
    let index_ends: Vec<u64> = ends.iter().map(|&t| if t == 0 { 0 } else { t + b - 1 }).collect();
    let coeffs = series.sequence.fixed(base, w);
    let one = pow10(w);
    let partials = accumulate(b, &index_ends, opts.execution, |k| {
        let eps = BigInt::from(digits::epsilon(k, base));
        scaled_term(coeffs.value(k / b), &eps, &BigInt::from(k), &one)
    });
    let leading = FixedReal::zero(w);
    Ok(report(partials, &ends, &leading, w, precision, |t| {
        tail_bound(&series.sequence, base, WeightKind::Vacca, t / b)
    }))
}

pub fn sum_vacca(params: &SeriesParams, n: u64, precision: u32) -> Result<(FixedReal, ConvergenceReport)> {
    sum_family(SeriesFamily::Vacca, params, n, precision, &SumOptions::default())
}

pub fn sum_epsilon_form(params: &SeriesParams, n: u64, precision: u32) -> Result<(FixedReal, ConvergenceReport)> {
    sum_family(SeriesFamily::EpsilonForm, params, n, precision, &SumOptions::default())
}

pub fn sum_complement(params: &SeriesParams, n: u64, precision: u32) -> Result<(FixedReal, ConvergenceReport)> {
    sum_family(SeriesFamily::Complement, params, n, precision, &SumOptions::default())
}

pub fn sum_addison(params: &SeriesParams, n: u64, precision: u32) -> Result<(FixedReal, ConvergenceReport)> {
    sum_family(SeriesFamily::Addison, params, n, precision, &SumOptions::default())
}

/// Estimated truncation error after `n` terms, as a non-negative value.
pub fn estimate_tail(family: SeriesFamily, params: &SeriesParams, n: u64) -> FixedReal {
    let seq = LinearSequence::from_params(params);
    let blocks = match family {
        SeriesFamily::EpsilonForm => n / params.base() as u64,
        _ => n,
    };
    tail_to_fixed(tail_bound(&seq, params.base(), family.weight(), blocks), 6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernel_q;
    use crate::sequences::coefficient;

    fn params(a: u64, b: u64, l: u32, z: i64, base: u32) -> SeriesParams {
        SeriesParams::with_int_z(a, b, l, z, base).unwrap()
    }

    #[test]
    fn single_vacca_term() {
        let (v, r) = sum_vacca(&params(1, 1, 0, 1, 2), 1, 20).unwrap();
        assert!(v.contains(&ExactRational::fraction(1, 6)));
        assert_eq!(r.checkpoints.len(), 1);
    }

    #[test]
    fn epsilon_alignment() {
        let p = params(1, 1, 0, 1, 3);
        let (v, _) = sum_epsilon_form(&p, 3, 30).unwrap();
        let expect = coefficient(&p, 1) * kernel_q(1, 3);
        assert!(v.contains(&expect), "{v} vs {expect}");
        assert_eq!(sum_epsilon_form(&p, 4, 30).unwrap_err(), Error::Misaligned { terms: 4, alignment: 3 });
        assert!(sum_epsilon_form(&p, 0, 30).unwrap().0.contains(&ExactRational::zero()));
    }

    #[test]
    fn complement_with_no_terms_is_the_integral() {
        let (v, _) = sum_complement(&params(1, 1, 0, 1, 2), 0, 20).unwrap();
        assert!(v.contains(&ExactRational::one()));
    }

    #[test]
    fn l1_rejected_by_l0_families() {
        let p = params(1, 1, 1, -1, 2);
        assert!(sum_vacca(&p, 10, 10).is_err());
        assert!(sum_complement(&p, 10, 10).is_err());
        assert!(sum_addison(&p, 10, 10).is_ok());
    }

    #[test]
    fn checkpoints_and_execution_modes() {
        let p = params(1, 1, 0, -1, 2);
        let opts = SumOptions::with_checkpoints(vec![7, 100, 40_000]);
        let (par, rp) = sum_family(SeriesFamily::Addison, &p, 50_000, 30, &opts).unwrap();
        let seq = SumOptions { execution: Execution::Sequential, ..opts };
        let (s, rs) = sum_family(SeriesFamily::Addison, &p, 50_000, 30, &seq).unwrap();
        assert_eq!(par, s);
        assert_eq!(rp, rs);
        let terms: Vec<u64> = rp.checkpoints.iter().map(|c| c.terms).collect();
        assert_eq!(terms, vec![7, 100, 40_000, 50_000]);
        assert!(sum_family(SeriesFamily::Vacca, &p, 10, 10, &SumOptions::with_checkpoints(vec![11])).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in SeriesFamily::ALL {
            assert_eq!(f.name().parse::<SeriesFamily>().unwrap(), f);
        }
        assert!("euler".parse::<SeriesFamily>().is_err());
    }
}
