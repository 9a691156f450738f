//! Named constants: each one pairs a series recipe with an independent
//! reference value.

use std::fmt;
use std::str::FromStr;

use crate::digits::WordSpec;
use crate::error::{Error, Result};
use crate::kernels::WeightKind;
use crate::numerics::{self, ExactRational, FixedReal};
use crate::oracles::{
    closed_form, constants, definition_sum, log_gamma, quadrature, somos_log_direct, IntegrandKind, QuadratureSpec,
};
use crate::sequences::{word_params, Increment, LinearSequence, SeriesParams};
use crate::series_engines::{
    family_series, sum_family, sum_weighted, tail_to_fixed, Checkpoint, ConvergenceReport, Leading, SeriesFamily,
    SumOptions, WeightedSeries,
};

/// How a constant is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Series(SeriesFamily),
    /// Tanh-sinh quadrature of the single-integral representation.
    Integral,
    /// Direct summation of the defining series.
    Definition,
}

impl Method {
    pub const VACCA: Method = Method::Series(SeriesFamily::Vacca);
    pub const EPSILON: Method = Method::Series(SeriesFamily::EpsilonForm);
    pub const COMPLEMENT: Method = Method::Series(SeriesFamily::Complement);
    pub const ADDISON: Method = Method::Series(SeriesFamily::Addison);

    pub fn name(self) -> &'static str {
        match self {
            Method::Series(f) => f.name(),
            Method::Integral => "integral",
            Method::Definition => "definition",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integral" => Ok(Method::Integral),
            "definition" => Ok(Method::Definition),
            other => other.parse().map(Method::Series),
        }
    }
}

/// Order of the truncation error of the default method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceClass {
    LogNOverN,
    LogNOverN2,
    OneOverN,
}

impl fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::LogNOverN => "logN_over_N",
            Self::LogNOverN2 => "logN_over_N2",
            Self::OneOverN => "one_over_N",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConstantInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// Extra arguments the entry needs.
    pub args: &'static [&'static str],
    pub class: ConvergenceClass,
    /// Supported methods; the first is the default.
    pub methods: &'static [Method],
}

const PARAM_METHODS: &[Method] = &[
    Method::ADDISON,
    Method::VACCA,
    Method::EPSILON,
    Method::COMPLEMENT,
    Method::Integral,
    Method::Definition,
];
const DERIVATIVE_METHODS: &[Method] = &[Method::ADDISON, Method::Integral, Method::Definition];
const LOG4PI_METHODS: &[Method] = PARAM_METHODS;

static ENTRIES: &[ConstantInfo] = &[
    ConstantInfo {
        name: "gamma",
        description: "Euler's constant γ = γ_{1,1}(1)",
        args: &[],
        class: ConvergenceClass::LogNOverN2,
        methods: PARAM_METHODS,
    },
    ConstantInfo {
        name: "log4_over_pi",
        description: "log(4/π) = γ_{1,1}(−1)",
        args: &[],
        class: ConvergenceClass::LogNOverN2,
        methods: LOG4PI_METHODS,
    },
    ConstantInfo {
        name: "log_b",
        description: "log b from length differences L_B(⌊k/b⌋) − L_B(k)",
        args: &["b"],
        class: ConvergenceClass::LogNOverN2,
        methods: &[Method::ADDISON, Method::VACCA],
    },
    ConstantInfo {
        name: "log_gamma_1_over_B",
        description: "log Γ(1/B) from zero-digit counts",
        args: &[],
        class: ConvergenceClass::LogNOverN,
        methods: &[Method::VACCA],
    },
    ConstantInfo {
        name: "word_constant",
        description: "Σ N_{ω,B}(k) Q(k,B) = γ_{B^|ω|, v_B(ω)}(1) for a digit word ω",
        args: &["word"],
        class: ConvergenceClass::LogNOverN2,
        methods: PARAM_METHODS,
    },
    ConstantInfo {
        name: "somos_t",
        description: "log σ_t for the generalized Somos constant, integer t ≥ 2",
        args: &["t"],
        class: ConvergenceClass::LogNOverN2,
        methods: &[Method::ADDISON, Method::VACCA],
    },
    ConstantInfo {
        name: "glaisher_logA",
        description: "log A for the Glaisher–Kinkelin constant",
        args: &[],
        class: ConvergenceClass::OneOverN,
        methods: &[Method::ADDISON],
    },
    ConstantInfo {
        name: "zeta_prime_2_over_pi2",
        description: "ζ′(2)/π²",
        args: &[],
        class: ConvergenceClass::OneOverN,
        methods: &[Method::ADDISON],
    },
    ConstantInfo {
        name: "catalan_over_pi",
        description: "G/π for Catalan's constant G",
        args: &[],
        class: ConvergenceClass::OneOverN,
        methods: &[Method::ADDISON],
    },
    ConstantInfo {
        name: "gamma_2_1_minus1",
        description: "γ_{2,1}(−1) = π/4 − 2 log Γ(1/4) + log √(2π³)",
        args: &[],
        class: ConvergenceClass::LogNOverN2,
        methods: PARAM_METHODS,
    },
    ConstantInfo {
        name: "gamma_prime_2_1_minus1",
        description: "γ′_{2,1}(−1), the z-derivative at z = −1",
        args: &[],
        class: ConvergenceClass::OneOverN,
        methods: DERIVATIVE_METHODS,
    },
    ConstantInfo {
        name: "gamma_prime_1_1_minus1",
        description: "γ′_{1,1}(−1) = log(2^{11/6} A⁶ / (π^{3/2} e))",
        args: &[],
        class: ConvergenceClass::OneOverN,
        methods: DERIVATIVE_METHODS,
    },
    ConstantInfo {
        name: "gamma_ab",
        description: "γ_{a,b}^{(l)}(z) for user-chosen a, b, l, z",
        args: &["a", "b", "l", "z"],
        class: ConvergenceClass::LogNOverN2,
        methods: PARAM_METHODS,
    },
];

/// All registered constants in a fixed order.
pub fn list_constants() -> &'static [ConstantInfo] {
    ENTRIES
}

/// Finds an entry by name or short alias.
pub fn lookup(name: &str) -> Result<&'static ConstantInfo> {
    let canonical = match name {
        "somos" => "somos_t",
        "glaisher" => "glaisher_logA",
        "catalan" => "catalan_over_pi",
        "zeta2" => "zeta_prime_2_over_pi2",
        "log_gamma" => "log_gamma_1_over_B",
        other => other,
    };
    ENTRIES
        .iter()
        .find(|e| e.name == canonical)
        .ok_or_else(|| Error::UnknownName(format!("constant {name:?}")))
}

/// Extra arguments; each entry reads the ones it lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstantArgs {
    pub b: Option<u64>,
    pub t: Option<u64>,
    pub word: Option<String>,
    pub a: Option<u64>,
    pub l: Option<u32>,
    pub z: Option<ExactRational>,
}

fn need<T: Clone>(v: &Option<T>, what: &str, name: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::InvalidArgument(format!("{name} needs --{what}")))
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::fraction(n, d)
}

fn harmonic(n: u64) -> ExactRational {
    (1..=n).map(|j| ExactRational::fraction(1, j)).sum()
}

fn somos_t(args: &ConstantArgs) -> Result<u64> {
    let t = need(&args.t, "t", "somos_t")?;
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be an integer ≥ 2, got {t}")));
    }
    Ok(t)
}

fn log_b_arg(args: &ConstantArgs) -> Result<u64> {
    let b = need(&args.b, "b", "log_b")?;
    if b < 2 {
        return Err(Error::InvalidArgument(format!("log_b needs b ≥ 2, got {b}")));
    }
    Ok(b)
}

/// The series parameters when the constant is itself `γ_{a,b}^{(l)}(z)`.
pub fn entry_params(info: &ConstantInfo, args: &ConstantArgs, base: u32) -> Result<Option<SeriesParams>> {
    let p = |a, b, l, z| SeriesParams::with_int_z(a, b, l, z, base).map(Some);
    match info.name {
        "gamma" => p(1, 1, 0, 1),
        "log4_over_pi" => p(1, 1, 0, -1),
        "gamma_2_1_minus1" => p(2, 1, 0, -1),
        "gamma_prime_2_1_minus1" => p(2, 1, 1, -1),
        "gamma_prime_1_1_minus1" => p(1, 1, 1, -1),
        "word_constant" => {
            let word = WordSpec::parse(&need(&args.word, "word", info.name)?, base)?;
            Ok(Some(word_params(&word)))
        }
        "gamma_ab" => SeriesParams::new(
            need(&args.a, "a", info.name)?,
            need(&args.b, "b", info.name)?,
            args.l.unwrap_or(0),
            args.z.clone().unwrap_or_else(ExactRational::one),
            base,
        )
        .map(Some),
        _ => Ok(None),
    }
}

fn composite(constant: ExactRational, lengths: Vec<(ExactRational, u64)>, prefix: Option<(ExactRational, Increment)>) -> LinearSequence {
    LinearSequence { constant, lengths, prefix }
}

fn weighted(sequence: LinearSequence, base: u32, weight: WeightKind, leading: ExactRational) -> WeightedSeries {
    WeightedSeries { sequence, base, weight, leading: Leading::Exact(leading) }
}

fn unsupported(info: &ConstantInfo, method: Method) -> Error {
    let names: Vec<&str> = info.methods.iter().map(|m| m.name()).collect();
    Error::InvalidArgument(format!(
        "method {method} is not available for {}; use one of {}",
        info.name,
        names.join(", ")
    ))
}

/// The weighted series a series method sums for an entry in base `base`.
pub fn series_recipe(name: &str, args: &ConstantArgs, base: u32, family: SeriesFamily) -> Result<WeightedSeries> {
    let info = lookup(name)?;
    let method = Method::Series(family);
    if !info.methods.contains(&method) {
        return Err(unsupported(info, method));
    }
    if base < 2 {
        return Err(Error::InvalidArgument(format!("base must be at least 2, got {base}")));
    }
    let addison = family == SeriesFamily::Addison;
    let weight = family.weight();
    Ok(match info.name {
        "log4_over_pi" if addison => {
            // (L_B(⌊k/2⌋) − L_B(k) + a_k) with the alternating prefix sum a_k
            let p = SeriesParams::with_int_z(1, 1, 0, -1, base)?;
            let seq = composite(
                ExactRational::zero(),
                vec![(q(1, 1), 2), (q(-1, 1), 1)],
                Some((q(1, 1), Increment::Series(p))),
            );
            weighted(seq, base, weight, q(1, 4))
        }
        "log_b" => {
            let b = log_b_arg(args)?;
            let seq = composite(ExactRational::zero(), vec![(q(1, 1), b), (q(-1, 1), 1)], None);
            let h = harmonic(b - 1);
            let leading = if addison { h - ExactRational::fraction(b - 1, 2 * b) } else { h };
            weighted(seq, base, weight, leading)
        }
        "log_gamma_1_over_B" => {
            let zeros = SeriesParams::with_int_z(base as u64, base as u64, 0, 1, base)?;
            let seq = composite(
                q(-1, 1),
                vec![(ExactRational::fraction(-1, base as i64), 1)],
                Some((q(1, 1), Increment::Series(zeros))),
            );
            weighted(seq, base, weight, harmonic(base as u64 - 1))
        }
        "somos_t" => {
            let t = somos_t(args)?;
            let ti = t as i64;
            let inc = Increment::Series(SeriesParams::new(1, 1, 0, ExactRational::fraction(1, t), base)?);
            // outer multiplier m; the prefix coefficient is −1/(t(t−1)) in both forms
            let (m, leading) = if addison {
                (q(ti + 1, 2 * (ti - 1)), q(3 * ti - 1, 4 * ti * (ti - 1) * (ti - 1)))
            } else {
                (q(1, ti - 1), q(1, (ti - 1) * (ti - 1)))
            };
            let seq = composite(
                ExactRational::zero(),
                vec![(m.clone(), t), (-m, t - 1)],
                Some((q(-1, ti * (ti - 1)), inc)),
            );
            weighted(seq, base, weight, leading)
        }
        "glaisher_logA" => {
            let seq = composite(
                ExactRational::zero(),
                vec![(q(-7, 36), 1), (q(7, 36), 2)],
                Some((q(-1, 36), Increment::Glaisher)),
            );
            weighted(seq, base, weight, q(13, 48))
        }
        "zeta_prime_2_over_pi2" => {
            let seq = composite(
                ExactRational::zero(),
                vec![(q(4, 18), 1), (q(-1, 18), 2)],
                Some((q(1, 18), Increment::Zeta2)),
            );
            weighted(seq, base, weight, q(-1, 8))
        }
        "catalan_over_pi" => {
            let seq = composite(
                ExactRational::zero(),
                vec![(q(1, 8), 2), (q(-1, 8), 1)],
                Some((q(1, 1), Increment::Catalan)),
            );
            weighted(seq, base, weight, q(11, 32))
        }
        _ => {
            let params = entry_params(info, args, base)?.expect("parameter-backed entry");
            family_series(family, &params)?
        }
    })
}

/// Binary forms with the length differences folded into a seed at `k = 1`.
/// Only entries with such a form are accepted.
pub fn folded_recipe(name: &str, args: &ConstantArgs, family: SeriesFamily) -> Result<WeightedSeries> {
    let info = lookup(name)?;
    let weight = family.weight();
    let seeded = |inc: Increment, seed: ExactRational| Increment::Seeded(Box::new(inc), seed);
    match (info.name, family) {
        ("somos_t", SeriesFamily::Vacca | SeriesFamily::Addison) if somos_t(args)? == 2 => {
            let inc = Increment::Series(SeriesParams::new(1, 1, 0, q(1, 2), 2)?);
            let (seed, leading) = if family == SeriesFamily::Addison { (4, q(5, 8)) } else { (3, q(1, 1)) };
            let seq = composite(ExactRational::zero(), vec![], Some((q(-1, 2), seeded(inc, q(seed, 1)))));
            Ok(weighted(seq, 2, weight, leading))
        }
        ("glaisher_logA", SeriesFamily::Addison) => {
            let seq = composite(ExactRational::zero(), vec![], Some((q(-1, 36), seeded(Increment::Glaisher, q(16, 1)))));
            Ok(weighted(seq, 2, weight, q(13, 48)))
        }
        ("catalan_over_pi", SeriesFamily::Addison) => {
            let seq = composite(ExactRational::zero(), vec![], Some((q(1, 1), seeded(Increment::Catalan, q(-9, 8)))));
            Ok(weighted(seq, 2, weight, q(11, 32)))
        }
        _ => Err(Error::InvalidArgument(format!("{} has no folded binary {family} form", info.name))),
    }
}

/// Independent reference value for an entry.
pub fn reference_value(name: &str, args: &ConstantArgs, base: u32, precision: u32) -> Result<FixedReal> {
    let info = lookup(name)?;
    let w = precision + 5;
    let value = match info.name {
        "gamma" => constants::euler_gamma(w)?,
        "log4_over_pi" => closed_form::log_four_over_pi(w)?,
        "log_b" => numerics::ln_rational(&ExactRational::from(log_b_arg(args)?), w)?,
        "log_gamma_1_over_B" => log_gamma(&ExactRational::fraction(1, base as u64), w)?,
        "word_constant" => closed_form::word_constant(&WordSpec::parse(&need(&args.word, "word", name)?, base)?, w)?,
        "somos_t" => {
            let t = somos_t(args)?;
            let n = ((w + 10) as f64 * std::f64::consts::LN_10 / (t as f64).ln()).ceil() as u64 + 10;
            somos_log_direct(t, n, w)?
        }
        "glaisher_logA" => constants::log_glaisher(w)?,
        "zeta_prime_2_over_pi2" => {
            let pi = constants::pi(w + 2);
            constants::zeta_prime_two(w + 2)?.div(&pi.mul(&pi))?
        }
        "catalan_over_pi" => constants::catalan(w + 2).div(&constants::pi(w + 2))?,
        "gamma_2_1_minus1" => closed_form::gamma_21_minus1(w)?,
        "gamma_prime_2_1_minus1" => closed_form::gamma_prime_21_minus1(w)?,
        "gamma_prime_1_1_minus1" => closed_form::gamma_prime_11_minus1(w)?,
        "gamma_ab" => {
            let params = entry_params(info, args, base)?.expect("parameter-backed entry");
            if params.z() == &ExactRational::one() {
                closed_form::gamma_ab_at_one(params.a(), params.b(), w)?
            } else {
                definition_sum(&params, 200_000, w)?
            }
        }
        other => unreachable!("entry {other} has no reference"),
    };
    Ok(value.rescale(precision))
}

/// A catalog evaluation with its convergence record.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub name: &'static str,
    pub method: Method,
    pub value: FixedReal,
    pub report: ConvergenceReport,
    pub reference: Option<FixedReal>,
}

impl Evaluation {
    /// `|value − reference|`, when a reference exists.
    pub fn deviation(&self) -> Option<FixedReal> {
        let r = self.reference.as_ref()?;
        Some(self.value.sub(&r.rescale(self.value.scale())).abs())
    }
}

/// Evaluates a constant with `n` terms at `precision` digits; `method`
/// defaults to the entry's first method. The reference is attached when it
/// can be computed.
pub fn evaluate_constant(
    name: &str,
    args: &ConstantArgs,
    base: u32,
    n: u64,
    precision: u32,
    method: Option<Method>,
    opts: &SumOptions,
) -> Result<Evaluation> {
    let info = lookup(name)?;
    let method = method.unwrap_or(info.methods[0]);
    if !info.methods.contains(&method) {
        return Err(unsupported(info, method));
    }
    let (value, report) = match method {
        Method::Series(family) => {
            let series = series_recipe(info.name, args, base, family)?;
            if family == SeriesFamily::EpsilonForm {
                let params = entry_params(info, args, base)?.expect("parameter-backed entry");
                sum_family(family, &params, n, precision, opts)?
            } else {
                sum_weighted(&series, n, precision, opts)?
            }
        }
        Method::Definition | Method::Integral => {
            let params = entry_params(info, args, base)?.expect("parameter-backed entry");
            let value = if method == Method::Definition {
                definition_sum(&params, n, precision)?
            } else {
                let target = precision.clamp(6, crate::oracles::quadrature::MAX_TARGET_DIGITS);
                quadrature(&QuadratureSpec::new(IntegrandKind::DefinitionSingle, params, target))?.rescale(precision)
            };
            let checkpoint = Checkpoint {
                terms: n,
                partial: value.clone(),
                estimated_tail: tail_to_fixed(value.error_f64(), precision),
                reference_error: None,
            };
            (value, ConvergenceReport { checkpoints: vec![checkpoint] })
        }
    };
    let reference = reference_value(info.name, args, base, precision).ok();
    let report = match &reference {
        Some(r) => report.with_reference(r),
        None => report,
    };
    Ok(Evaluation { name: info.name, method, value, report, reference })
}
