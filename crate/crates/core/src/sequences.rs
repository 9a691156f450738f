//! Digit-defined coefficient sequences `a_{k,l}` and the composite sequences
//! used by the constant catalog.
//!
//! Every sequence here is a prefix sum: `a_k = Σ g(p)` over the prefixes
//! `p = ⌊k/B^j⌋ ≥ 1` of `k`'s base-B expansion, for some increment `g`.
//! This is the unrolled form of `a_k = a_{⌊k/B⌋} + g(k)`, `a_0 = 0`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::{self, WordSpec};
use crate::error::{Error, Result};
use crate::numerics::{pow10, round_div, ExactRational};

/// The tuple `(a, b, l, z, B)` selecting one series instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesParams {
    a: u64,
    b: u64,
    l: u32,
    z: ExactRational,
    base: u32,
}

impl SeriesParams {
    pub fn new(a: u64, b: u64, l: u32, z: ExactRational, base: u32) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if a == 0 || b == 0 {
            return bad(format!("a and b must be positive, got a={a}, b={b}"));
        }
        if l > 1 {
            return bad(format!("only l = 0 or l = 1 is supported, got l={l}"));
        }
        if base < 2 {
            return bad(format!("base must be at least 2, got {base}"));
        }
        if z.abs() > ExactRational::one() {
            return bad(format!("|z| must not exceed 1, got z={z}"));
        }
        if l == 1 && z == ExactRational::one() {
            return bad("the derivative series needs (z−1)² + (l−1)² ≠ 0, so z = 1 with l = 1 is excluded".into());
        }
        Ok(Self { a, b, l, z, base })
    }

    /// Shorthand for integer `z`.
    pub fn with_int_z(a: u64, b: u64, l: u32, z: i64, base: u32) -> Result<Self> {
        Self::new(a, b, l, ExactRational::from(z), base)
    }

    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn z(&self) -> &ExactRational {
        &self.z
    }
    pub fn base(&self) -> u32 {
        self.base
    }

    /// Same `(a, b, l, z)` with another base.
    pub fn with_base(&self, base: u32) -> Result<Self> {
        Self::new(self.a, self.b, self.l, self.z.clone(), base)
    }

    /// Index `m = (p−b)/a` of the term of the binomial series reached by `p`,
    /// when `p ≡ b (mod a)` and `m ≥ l`.
    fn term_index(&self, p: u64) -> Option<u64> {
        if p < self.b || !(p - self.b).is_multiple_of(self.a) {
            return None;
        }
        let m = (p - self.b) / self.a;
        (m >= self.l as u64).then_some(m)
    }

    /// The increment `binom(m, l)·z^{m−l}` contributed by index `p`.
    pub fn increment(&self, p: u64) -> ExactRational {
        match self.term_index(p) {
            None => ExactRational::zero(),
            Some(m) => {
                let e = (m - self.l as u64) as i32;
                let binom = if self.l == 0 { 1 } else { m };
                ExactRational::from(binom) * self.z.pow(e).expect("non-negative exponent")
            }
        }
    }
}

impl std::fmt::Display for SeriesParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a={}, b={}, l={}, z={}, B={})", self.a, self.b, self.l, self.z, self.base)
    }
}

fn prefixes(k: u64, base: u32) -> impl Iterator<Item = u64> {
    let b = base as u64;
    std::iter::successors((k > 0).then_some(k), move |&p| (p >= b).then_some(p / b))
}

/// `a_{k,l}` summed over the digit prefixes of `k`.
pub fn coefficient(params: &SeriesParams, k: u64) -> ExactRational {
    prefixes(k, params.base).map(|p| params.increment(p)).sum()
}

/// `a_{k,l}` by the recursion `a_k = a_{⌊k/B⌋} + increment(k)`.
pub fn coefficient_recursive(params: &SeriesParams, k: u64) -> ExactRational {
    if k == 0 {
        return ExactRational::zero();
    }
    coefficient_recursive(params, k / params.base as u64) + params.increment(k)
}

/// Coefficients `a_0..=a_N` materialized by the recursion.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    params: SeriesParams,
    values: Vec<ExactRational>,
}

impl CoefficientTable {
    pub fn new(params: SeriesParams, n: u64) -> Self {
        let b = params.base as u64;
        let mut values = Vec::with_capacity(n as usize + 1);
        values.push(ExactRational::zero());
        for k in 1..=n {
            let v = &values[(k / b) as usize] + params.increment(k);
            values.push(v);
        }
        Self { params, values }
    }

    pub fn params(&self) -> &SeriesParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: u64) -> Option<&ExactRational> {
        self.values.get(k as usize)
    }
}

/// Parameters whose coefficients count occurrences of `ω`:
/// `a = B^{|ω|}`, `b = v_B(ω)` (or `B^{|ω|}` when the value is 0), `l = 0`, `z = 1`.
pub fn word_params(word: &WordSpec) -> SeriesParams {
    let a = (word.base() as u64).pow(word.len() as u32);
    let b = if word.value() != 0 { word.value() } else { a };
    SeriesParams::new(a, b, 0, ExactRational::one(), word.base()).expect("word parameters are valid")
}

/// Increment `g(p)` of a prefix-sum sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Increment {
    /// `binom(m,l)·z^{m−l}` from series parameters (the base is taken from them).
    Series(SeriesParams),
    /// `(−1)^{p−1}(6p+3)`.
    Glaisher,
    /// `(−1)^{p−1}·6p`.
    Zeta2,
    /// `j` for `p = 2j`, `((−1)^{j−1} − 1)/2 · (2j+1)` for `p = 2j+1`.
    Catalan,
    /// `seed` at `p = 1`, otherwise the inner increment. With `B = 2` every
    /// positive `k` has 1 as its leading prefix, so this shifts the whole
    /// sequence by `seed − g(1)`.
    Seeded(Box<Increment>, ExactRational),
}

impl Increment {
    /// Exact integer value when the increment is integer valued.
    fn integer(&self, p: u64) -> Option<i128> {
        let sign = |n: u64| if n % 2 == 1 { 1i128 } else { -1i128 };
        match self {
            Increment::Glaisher => Some(sign(p) * (6 * p as i128 + 3)),
            Increment::Zeta2 => Some(sign(p) * 6 * p as i128),
            Increment::Catalan => {
                if p.is_multiple_of(2) {
                    Some((p / 2) as i128)
                } else {
                    let j = (p - 1) / 2;
                    Some(if j % 2 == 1 { 0 } else { -(p as i128) })
                }
            }
            Increment::Series(params) => {
                let z = params.z();
                if !z.is_integer() {
                    return None;
                }
                Some(match params.term_index(p) {
                    None => 0,
                    Some(m) => {
                        let e = m - params.l() as u64;
                        let s = if z.is_zero() {
                            (e == 0) as i128
                        } else if z.is_negative() && e % 2 == 1 {
                            -1
                        } else {
                            1
                        };
                        let binom = if params.l() == 0 { 1 } else { m as i128 };
                        s * binom
                    }
                })
            }
            Increment::Seeded(inner, seed) => {
                if p == 1 {
                    seed.is_integer().then(|| seed.numer().to_i128()).flatten()
                } else {
                    inner.integer(p)
                }
            }
        }
    }

    pub fn value(&self, p: u64) -> ExactRational {
        match self {
            Increment::Series(params) => params.increment(p),
            Increment::Seeded(inner, seed) => {
                if p == 1 {
                    seed.clone()
                } else {
                    inner.value(p)
                }
            }
            other => ExactRational::from_integer(other.integer(p).expect("integer increment")),
        }
    }

    /// Smallest `d` with `d·g(p)` an integer for every `p`, if there is one.
    fn denominator(&self) -> Option<i128> {
        match self {
            Increment::Series(params) => params.z().is_integer().then_some(1),
            Increment::Seeded(inner, seed) => Some(inner.denominator()?.lcm(&seed.denom().to_i128()?)),
            _ => Some(1),
        }
    }

    /// `d·g(p)` for a multiple `d` of the denominator.
    fn scaled(&self, p: u64, d: i128) -> i128 {
        match self {
            Increment::Seeded(_, seed) if p == 1 => {
                seed.numer().to_i128().expect("seed fits") * (d / seed.denom().to_i128().expect("seed fits"))
            }
            Increment::Seeded(inner, _) => inner.scaled(p, d),
            other => d * other.integer(p).expect("exact increment"),
        }
    }

    /// Series parameters behind a non-integer increment, if any.
    fn series(&self) -> Option<&SeriesParams> {
        match self {
            Increment::Series(p) => Some(p),
            Increment::Seeded(inner, _) => inner.series(),
            _ => None,
        }
    }

    /// Power of `k` bounding the growth of the prefix sum (besides `log k`).
    pub fn growth_degree(&self) -> u32 {
        match self {
            Increment::Series(p) => p.l(),
            Increment::Seeded(inner, _) => inner.growth_degree(),
            _ => 1,
        }
    }
}

/// Prefix sum of an increment over the base-B prefixes of `k`.
pub fn prefix_sum(inc: &Increment, base: u32, k: u64) -> ExactRational {
    prefixes(k, base).map(|p| inc.value(p)).sum()
}

/// Named composite sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositeRecipe {
    /// `L_B(⌊k/d⌋) − L_B(k)`.
    LengthDifference { divisor: u64 },
    /// `a_k = a_{⌊k/B⌋} + t^{1−k}`.
    Somos { t: u64 },
    /// `b_k = b_{⌊k/B⌋} + (−1)^{k−1}(6k+3)`.
    Glaisher,
    /// `c_k = c_{⌊k/B⌋} + (−1)^{k−1}·6k`.
    Zeta2,
    /// `c_{2j} = c_{⌊2j/B⌋} + j`, `c_{2j+1} = c_{⌊(2j+1)/B⌋} + ((−1)^{j−1} − 1)/2·(2j+1)`.
    Catalan,
}

impl CompositeRecipe {
    /// Looks a recipe up by name; `arg` is the divisor or `t` where needed.
    pub fn from_name(name: &str, arg: Option<u64>) -> Result<Self> {
        let need = |what: &str| {
            arg.ok_or_else(|| Error::InvalidArgument(format!("recipe {name} needs {what}")))
        };
        match name {
            "length_difference" => {
                let divisor = need("a divisor")?;
                if divisor < 1 {
                    return Err(Error::InvalidArgument("divisor must be positive".into()));
                }
                Ok(Self::LengthDifference { divisor })
            }
            "somos" => {
                let t = need("t")?;
                if t < 2 {
                    return Err(Error::InvalidArgument(format!("t must be an integer ≥ 2, got {t}")));
                }
                Ok(Self::Somos { t })
            }
            "glaisher" => Ok(Self::Glaisher),
            "zeta2" => Ok(Self::Zeta2),
            "catalan" => Ok(Self::Catalan),
            _ => Err(Error::UnknownName(format!("composite recipe {name:?}"))),
        }
    }

    /// The increment generating the recipe, or `None` for length differences.
    pub fn increment(&self, base: u32) -> Option<Increment> {
        match self {
            Self::LengthDifference { .. } => None,
            Self::Somos { t } => Some(Increment::Series(
                SeriesParams::new(1, 1, 0, ExactRational::fraction(1, *t), base).expect("valid"),
            )),
            Self::Glaisher => Some(Increment::Glaisher),
            Self::Zeta2 => Some(Increment::Zeta2),
            Self::Catalan => Some(Increment::Catalan),
        }
    }
}

/// Evaluates a composite recipe at `k` in base `base`.
pub fn composite_sequence(recipe: &CompositeRecipe, base: u32, k: u64) -> ExactRational {
    match recipe {
        CompositeRecipe::LengthDifference { divisor } => ExactRational::from(
            digits::length(k / divisor, base) as i64 - digits::length(k, base) as i64,
        ),
        other => prefix_sum(&other.increment(base).expect("prefix recipe"), base, k),
    }
}

/// Checks the functional equation
/// `Σ a_k x^k − (1 + x + ⋯ + x^{B−1}) Σ a_k x^{Bk} = Σ_{k≥l} binom(k,l) z^{k−l} x^{ak+b}`
/// coefficient by coefficient up to `x^degree`.
pub fn verify_functional_equation(params: &SeriesParams, degree: u64) -> bool {
    let n = degree as usize;
    let b = params.base as usize;
    let coeffs: Vec<ExactRational> = (0..=degree).map(|k| coefficient(params, k)).collect();

    let mut lhs = coeffs.clone();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for r in 0..b {
            let idx = b * k + r;
            if idx > n {
                break;
            }
            lhs[idx] = &lhs[idx] - c;
        }
    }

    let mut rhs = vec![ExactRational::zero(); n + 1];
    let mut k = params.l as u64;
    loop {
        let idx = params.a * k + params.b;
        if idx > degree {
            break;
        }
        let binom = if params.l == 0 { 1 } else { k };
        rhs[idx as usize] = ExactRational::from(binom)
            * params.z.pow((k - params.l as u64) as i32).expect("non-negative exponent");
        k += 1;
    }
    lhs == rhs
}

/// `c_k = constant + Σ_i r_i·L_B(⌊k/d_i⌋) + ρ·A_k`, with `A_k` a prefix sum.
///
/// Every series in the catalog uses a coefficient of this shape, with the
/// outer multiplier of its identity already folded in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSequence {
    pub constant: ExactRational,
    pub lengths: Vec<(ExactRational, u64)>,
    pub prefix: Option<(ExactRational, Increment)>,
}

impl LinearSequence {
    /// `a_{k,l}` of the given parameters.
    pub fn from_params(params: &SeriesParams) -> Self {
        Self {
            constant: ExactRational::zero(),
            lengths: Vec::new(),
            prefix: Some((ExactRational::one(), Increment::Series(params.clone()))),
        }
    }

    pub fn value(&self, base: u32, k: u64) -> ExactRational {
        let mut v = self.constant.clone();
        for (r, d) in &self.lengths {
            v += r * ExactRational::from(digits::length(k / d, base) as u64);
        }
        if let Some((rho, inc)) = &self.prefix {
            v += rho * prefix_sum(inc, base, k);
        }
        v
    }

    /// Power of `k` in the growth bound `|c_k| ≤ C·k^deg·(log_B k + 1)`.
    pub fn growth_degree(&self) -> u32 {
        self.prefix.as_ref().map_or(0, |(_, inc)| inc.growth_degree())
    }

    /// Scaled evaluator for the summation engines.
    pub fn fixed(&self, base: u32, scale: u32) -> FixedCoefficients {
        FixedCoefficients::new(self.clone(), base, scale)
    }
}

/// A coefficient prepared for one rounded division per term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaledCoefficient {
    /// The exact value `num/den` (not scaled).
    Exact(BigInt, BigInt),
    /// `mantissa·10^{−scale}` within `error` ulps.
    Fixed(BigInt, u64),
}

/// Evaluates a [`LinearSequence`] exactly where possible and otherwise at a
/// fixed scale, using a table of scaled powers of `z` cut off once they drop
/// below one ulp.
#[derive(Clone, Debug)]
pub struct FixedCoefficients {
    seq: LinearSequence,
    base: u32,
    scale: u32,
    /// Common denominator and integer numerators of the rational parts.
    den: BigInt,
    constant_num: BigInt,
    length_nums: Vec<(BigInt, u64)>,
    /// `ρ` as numerator and denominator (exact paths use `den` instead).
    rho: Option<(BigInt, BigInt)>,
    powers: Option<PowerTable>,
}

#[derive(Clone, Debug)]
struct PowerTable {
    /// `round(z^e·10^scale)` for `e ≤ cutoff`.
    values: Vec<BigInt>,
}

impl PowerTable {
    fn new(z: &ExactRational, l: u32, scale: u32) -> Self {
        let zf = z.to_f64().abs();
        let mut cutoff = 0usize;
        if zf > 0.0 {
            // smallest E past the peak of (e+l)^l |z|^e with all later
            // contributions below 10^{−scale−2}
            let ln_z = zf.ln();
            let peak = if l == 0 { 0.0 } else { l as f64 / -ln_z };
            let target = -((scale + 2) as f64) * std::f64::consts::LN_10;
            loop {
                let e = cutoff as f64;
                let size = l as f64 * (e + l as f64).max(1.0).ln() + e * ln_z;
                if e > peak && size < target {
                    break;
                }
                cutoff += 1;
            }
        }
        let one = pow10(scale);
        let mut values = Vec::with_capacity(cutoff + 1);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for _ in 0..=cutoff {
            values.push(round_div(&(&num * &one), &den));
            num *= z.numer();
            den *= z.denom();
        }
        Self { values }
    }
}

impl FixedCoefficients {
    fn new(seq: LinearSequence, base: u32, scale: u32) -> Self {
        let mut den = seq.constant.denom().clone();
        for (r, _) in &seq.lengths {
            den = den.lcm(r.denom());
        }
        let mut rho = None;
        let mut powers = None;
        if let Some((r, inc)) = &seq.prefix {
            if let Some(d) = inc.denominator() {
                den = den.lcm(&(r.denom() * d));
            } else {
                let params = inc.series().expect("non-integer increments come from series parameters");
                powers = Some(PowerTable::new(params.z(), params.l(), scale));
            }
            rho = Some((r.numer().clone(), r.denom().clone()));
        }
        let scale_to = |q: &ExactRational| q.numer() * (&den / q.denom());
        let constant_num = scale_to(&seq.constant);
        let length_nums = seq.lengths.iter().map(|(r, d)| (scale_to(r), *d)).collect();
        Self {
            base,
            scale,
            constant_num,
            length_nums,
            rho,
            powers,
            den,
            seq,
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn sequence(&self) -> &LinearSequence {
        &self.seq
    }

    /// Numerator over `self.den` of the rational (non-prefix) part.
    fn rational_part(&self, k: u64) -> BigInt {
        let mut v = self.constant_num.clone();
        for (r, d) in &self.length_nums {
            if !r.is_zero() {
                v += r * digits::length(k / d, self.base);
            }
        }
        v
    }

    /// Scaled prefix sum from the power table with its error in ulps.
    fn fixed_prefix(&self, inc: &Increment, table: &PowerTable, k: u64) -> (BigInt, u64) {
        let mut sum = BigInt::zero();
        let mut error = 0u64;
        for p in prefixes(k, self.base) {
            if let Increment::Seeded(_, seed) = inc {
                if p == 1 {
                    // seeds in the catalog are integers
                    sum += seed.numer() * pow10(self.scale) / seed.denom();
                    if !seed.is_integer() {
                        error += 1;
                    }
                    continue;
                }
            }
            let params = inc.series().expect("series increment");
            let Some(m) = params.term_index(p) else { continue };
            let e = (m - params.l() as u64) as usize;
            let binom = if params.l() == 0 { 1 } else { m };
            match table.values.get(e) {
                Some(v) => {
                    sum += v * binom;
                    error += binom.div_ceil(2);
                }
                None => error += 1,
            }
        }
        (sum, error)
    }

    pub fn value(&self, k: u64) -> ScaledCoefficient {
        let rational = self.rational_part(k);
        match (&self.seq.prefix, &self.powers, &self.rho) {
            (None, _, _) => ScaledCoefficient::Exact(rational, self.den.clone()),
            (Some((_, inc)), None, Some((rn, rd))) => {
                let d = inc.denominator().expect("exact increment");
                let a: i128 = prefixes(k, self.base)
                    .map(|p| inc.scaled(p, d))
                    .sum();
                let total = rational + rn * (&self.den / (rd * d)) * a;
                ScaledCoefficient::Exact(total, self.den.clone())
            }
            (Some((_, inc)), Some(table), Some((rn, rd))) => {
                let one = pow10(self.scale);
                let (p, perr) = self.fixed_prefix(inc, table, k);
                let mut mantissa = round_div(&(rational * &one), &self.den);
                mantissa += round_div(&(rn * p), rd);
                let rho_err = (rn.abs().to_f64().unwrap_or(f64::MAX) / rd.to_f64().unwrap_or(1.0) * perr as f64).ceil();
                ScaledCoefficient::Fixed(mantissa, 2 + rho_err as u64)
            }
            _ => unreachable!("prefix without multiplier"),
        }
    }
}

/// Shared cache of exact coefficients for repeated lookups in one worker.
#[derive(Debug, Default)]
pub struct CoefficientMemo {
    values: HashMap<u64, ExactRational>,
}

impl CoefficientMemo {
    pub fn get(&mut self, params: &SeriesParams, k: u64) -> ExactRational {
        if k == 0 {
            return ExactRational::zero();
        }
        if let Some(v) = self.values.get(&k) {
            return v.clone();
        }
        let v = self.get(params, k / params.base as u64) + params.increment(k);
        self.values.insert(k, v.clone());
        v
    }
}
