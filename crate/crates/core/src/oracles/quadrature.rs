//! Tanh-sinh quadrature of the single-integral representations on (0, 1).
//!
//! The substitution `x = 1/(1 + e^{−2s})`, `s = (π/2) sinh t` gives both
//! `x` and `1 − x` without cancellation, so integrands receive the pair.
//! Evaluation is in `f64`; targets above 14 digits are refused.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::FixedReal;
use crate::sequences::SeriesParams;

/// Highest target (in digits) the `f64` evaluation can honour.
pub const MAX_TARGET_DIGITS: u32 = 14;

/// Which integral representation to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegrandKind {
    /// `∫ x^{c−1}(1−x)/(1−zx^a)^{l+1} · (1/(1−x) + 1/log x) dx`, `c = b+al`.
    DefinitionSingle,
    /// `∫ (B/(1−x^B) − 1/(1−x)) F_l(z,x) dx`.
    CatalanType,
    /// `∫ x^{c−1}(1−x)/(1−zx^a)^{l+1} dx + ∫ (Bx^B/(1−x^B) − x/(1−x)) F_l(z,x) dx`.
    RamanujanType,
    /// The mean of the Catalan- and Ramanujan-type integrands.
    Averaged,
}

/// What to integrate and how hard to try.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub kind: IntegrandKind,
    pub params: SeriesParams,
    /// Requested number of correct decimal digits.
    pub target_digits: u32,
    /// Maximum number of step halvings.
    pub level_cap: u32,
}

impl QuadratureSpec {
    pub fn new(kind: IntegrandKind, params: SeriesParams, target_digits: u32) -> Self {
        Self {
            kind,
            params,
            target_digits,
            level_cap: 12,
        }
    }
}

/// Value with the error estimate behind the returned bound.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub levels: u32,
    pub evaluations: usize,
}

/// Gregory coefficients `|G_n|`, `n = 1..`, giving
/// `1/(1−x) + 1/log x = Σ_{n≥1} |G_n| u^{n−1}` for `u = 1 − x`.
const GREGORY: [f64; 24] = gregory_table();

const fn gregory_table() -> [f64; 24] {
    // G_0 = 1, G_n = −Σ_{k=1}^{n} (−1)^k G_{n−k}/(k+1)
    let mut g = [0f64; 25];
    g[0] = 1.0;
    let mut n = 1;
    while n < 25 {
        let mut acc = 0.0;
        let mut k = 1;
        while k <= n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * g[n - k] / (k as f64 + 1.0);
            k += 1;
        }
        g[n] = -acc;
        n += 1;
    }
    let mut out = [0f64; 24];
    let mut i = 0;
    while i < 24 {
        let v = g[i + 1];
        out[i] = if v < 0.0 { -v } else { v };
        i += 1;
    }
    out
}

/// `1/(1−x) + 1/log x`, by its series in `u = 1 − x` when `u < 1/4`.
fn bracket(x: f64, u: f64) -> f64 {
    if u < 0.25 {
        let mut acc = 0.0;
        for g in GREGORY.iter().rev() {
            acc = acc * u + g;
        }
        acc
    } else {
        1.0 / u + 1.0 / x.ln()
    }
}

/// `1 − z·y^a` for `y ∈ (0,1)`, with `1 − y^a` taken from `expm1` when `z = 1`.
fn one_minus_z_pow(z: f64, log_y: f64, a: f64) -> f64 {
    if z == 1.0 {
        -(a * log_y).exp_m1()
    } else {
        1.0 - z * (a * log_y).exp()
    }
}

struct Integrand {
    kind: IntegrandKind,
    a: f64,
    c: f64,
    l: i32,
    z: f64,
    base: u32,
}

impl Integrand {
    fn new(kind: IntegrandKind, p: &SeriesParams) -> Self {
        Self {
            kind,
            a: p.a() as f64,
            c: (p.b() + p.a() * p.l() as u64) as f64,
            l: p.l() as i32,
            z: p.z().to_f64(),
            base: p.base(),
        }
    }

    /// `y^{c−1}(1−y)/(1−zy^a)^{l+1}` from `log y` and `1 − y`.
    fn weight(&self, log_y: f64, one_minus_y: f64) -> f64 {
        let lead = ((self.c - 1.0) * log_y).exp();
        if self.z == 1.0 && self.l == 0 {
            // (1−y)/(1−y^a) = 1/(1 + y + ⋯ + y^{a−1})
            let y = log_y.exp();
            let mut s = 0.0;
            let mut p = 1.0;
            for _ in 0..self.a as u64 {
                s += p;
                p *= y;
            }
            return lead / s;
        }
        lead * one_minus_y / one_minus_z_pow(self.z, log_y, self.a).powi(self.l + 1)
    }

    /// `F_l(z,x)` with its truncation bound, from `log x`.
    fn f_series(&self, log_x: f64) -> (f64, f64) {
        let mut sum = 0.0;
        let mut scale = 1.0;
        for _ in 1..=64 {
            scale *= self.base as f64;
            let log_y = scale * log_x;
            if log_y < -745.0 {
                return (sum, 0.0);
            }
            let one_minus_y = -log_y.exp_m1();
            // x^{cB^k−1} = y^c / x
            let term = self.weight(log_y, one_minus_y) * (log_y - log_x).exp();
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                // later terms shrink at least geometrically
                return (sum, 2.0 * term.abs());
            }
        }
        (sum, sum.abs())
    }

    /// `K_C(x) = B/(1−x^B) − 1/(1−x) = Σ_{j=1}^{B−1}(B−j)x^{j−1} / Σ_{j=0}^{B−1} x^j`.
    fn catalan_kernel(&self, x: f64) -> f64 {
        let b = self.base;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut p = 1.0;
        for j in 0..b {
            den += p;
            if j + 1 < b {
                num += (b - j - 1) as f64 * p;
            }
            p *= x;
        }
        num / den
    }

    /// Integrand value and an absolute truncation bound at `x` (with `u = 1−x`).
    fn eval(&self, x: f64, u: f64) -> (f64, f64) {
        let log_x = if x < 0.5 { x.ln() } else { (-u).ln_1p() };
        match self.kind {
            IntegrandKind::DefinitionSingle => (self.weight(log_x, u) * bracket(x, u), 0.0),
            IntegrandKind::CatalanType => {
                let (f, e) = self.f_series(log_x);
                let k = self.catalan_kernel(x);
                (k * f, k * e)
            }
            IntegrandKind::RamanujanType => {
                let (f, e) = self.f_series(log_x);
                let k = self.catalan_kernel(x) - (self.base - 1) as f64;
                (self.weight(log_x, u) + k * f, k.abs() * e)
            }
            IntegrandKind::Averaged => {
                let (f, e) = self.f_series(log_x);
                let k = 2.0 * self.catalan_kernel(x) - (self.base - 1) as f64;
                (0.5 * self.weight(log_x, u) + 0.5 * k * f, 0.5 * k.abs() * e)
            }
        }
    }
}

/// Abscissa pair `(x, 1−x)` and weight `dx/dt` at `t`.
fn node(t: f64) -> (f64, f64, f64) {
    let s = 0.5 * PI * t.sinh();
    let x = 1.0 / (1.0 + (-2.0 * s).exp());
    let u = 1.0 / (1.0 + (2.0 * s).exp());
    (x, u, PI * t.cosh() * x * u)
}

/// Largest `t` at which the weight is still representable.
const T_MAX: f64 = 6.5;

/// Runs tanh-sinh on the requested integrand.
pub fn integrate(spec: &QuadratureSpec) -> Result<QuadratureResult> {
    if spec.target_digits < 6 || spec.target_digits > MAX_TARGET_DIGITS {
        return Err(Error::InvalidArgument(format!(
            "quadrature target must be between 6 and {MAX_TARGET_DIGITS} digits, got {}",
            spec.target_digits
        )));
    }
    let p = &spec.params;
    if p.l() == 1 && p.z() == &crate::numerics::ExactRational::one() {
        return Err(Error::InvalidParams("z = 1 with l = 1 is not integrable".into()));
    }
    let f = Integrand::new(spec.kind, p);
    let tol = 10f64.powi(-(spec.target_digits as i32));

    // contribution of the nodes at level `level` (odd multiples of h, or all at level 0)
    let level_sum = |level: u32| -> (f64, f64, f64, usize) {
        let h = 0.5f64.powi(level as i32);
        let n = (T_MAX / h).floor() as i64;
        let ks: Vec<i64> = (-n..=n).filter(|k| level == 0 || k % 2 != 0).collect();
        let vals: Vec<(f64, f64, f64)> = ks
            .par_iter()
            .map(|&k| {
                let (x, u, w) = node(k as f64 * h);
                if w == 0.0 || x == 0.0 || u == 0.0 {
                    return (0.0, 0.0, 0.0);
                }
                let (v, e) = f.eval(x, u);
                (w * v, (w * v).abs(), w * e)
            })
            .collect();
        let mut s = 0.0;
        let mut a = 0.0;
        let mut e = 0.0;
        for (v, av, ev) in vals {
            s += v;
            a += av;
            e += ev;
        }
        (s, a, e, ks.len())
    };

    let (mut sum, mut abs_sum, mut trunc, mut evals) = level_sum(0);
    let mut prev = sum;
    for level in 1..=spec.level_cap {
        let (s, a, e, n) = level_sum(level);
        sum += s;
        abs_sum += a;
        trunc += e;
        evals += n;
        let h = 0.5f64.powi(level as i32);
        let estimate = h * sum;
        let diff = (estimate - prev).abs();
        prev = estimate;
        let rounding = 64.0 * f64::EPSILON * h * abs_sum;
        let error = diff + rounding + h * trunc;
        if level >= 3 && error <= tol * estimate.abs().max(1.0) {
            return Ok(QuadratureResult {
                value: estimate,
                error,
                levels: level,
                evaluations: evals,
            });
        }
        if level == spec.level_cap {
            return Err(Error::NotConverged {
                levels: level,
                estimate,
                error,
            });
        }
    }
    unreachable!("level loop always returns")
}

/// [`integrate`] packaged as a [`FixedReal`] at `scale` whose error bound
/// covers the quadrature estimate.
pub fn quadrature(spec: &QuadratureSpec) -> Result<FixedReal> {
    let r = integrate(spec)?;
    let scale = spec.target_digits + 3;
    let value = FixedReal::from_f64(r.value, scale)?;
    // the estimate itself carries a relative f64 error
    let err = r.error + 4.0 * f64::EPSILON * r.value.abs();
    let ulps = (err * 10f64.powi(scale as i32)).ceil() as u64 + 1;
    Ok(value.with_added_error(ulps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExactRational;

    fn spec(kind: IntegrandKind, a: u64, b: u64, l: u32, z: i64, base: u32) -> QuadratureSpec {
        QuadratureSpec::new(kind, SeriesParams::with_int_z(a, b, l, z, base).unwrap(), 12)
    }

    const GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gregory_coefficients() {
        assert!((GREGORY[0] - 0.5).abs() < 1e-16);
        assert!((GREGORY[1] - 1.0 / 12.0).abs() < 1e-16);
        assert!((GREGORY[2] - 1.0 / 24.0).abs() < 1e-16);
        assert!((GREGORY[3] - 19.0 / 720.0).abs() < 1e-16);
        assert!((bracket(0.9, 0.1) - (10.0 + 1.0 / 0.9f64.ln())).abs() < 1e-13);
    }

    #[test]
    fn euler_gamma_by_all_kinds() {
        for kind in [
            IntegrandKind::DefinitionSingle,
            IntegrandKind::CatalanType,
            IntegrandKind::RamanujanType,
            IntegrandKind::Averaged,
        ] {
            let r = integrate(&spec(kind, 1, 1, 0, 1, 2)).unwrap();
            assert!((r.value - GAMMA).abs() < 1e-11, "{kind:?}: {}", r.value);
            assert!((r.value - GAMMA).abs() <= r.error + 1e-15);
        }
    }

    #[test]
    fn rejects_bad_targets_and_divergent_params() {
        let mut s = spec(IntegrandKind::DefinitionSingle, 1, 1, 0, 1, 2);
        s.target_digits = 20;
        assert!(integrate(&s).is_err());
        s.target_digits = 10;
        s.params = SeriesParams::new(1, 1, 0, ExactRational::fraction(1, 2), 2).unwrap();
        assert!(integrate(&s).is_ok());
    }

    #[test]
    fn level_cap_is_reported() {
        let mut s = spec(IntegrandKind::CatalanType, 1, 1, 0, -1, 3);
        s.level_cap = 1;
        match integrate(&s) {
            Err(Error::NotConverged { levels, .. }) => assert_eq!(levels, 1),
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }
}
