//! Empirical truncation-error estimates.
//!
//! With `|c_k| ≤ C·k^d·(log_B k + 1)` and a weight of order `k^{−p}`, the tail
//! after `N` terms is bounded by `(B−1)·C·(log_B N + 1)·N^{d−p+1}`. `C` is
//! measured on sampled `k ∈ (N/2, N]`.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::digits;
use crate::kernels::WeightKind;
use crate::numerics::FixedReal;
use crate::sequences::{LinearSequence, ScaledCoefficient};

const SAMPLES: u64 = 256;
const SAMPLE_SCALE: u32 = 20;

fn decay(weight: WeightKind) -> i32 {
    match weight {
        WeightKind::Vacca | WeightKind::Complement => 2,
        WeightKind::Addison => 3,
    }
}

fn sample_points(n: u64, base: u32) -> Vec<u64> {
    let n = n.max(base as u64);
    let lo = n / 2 + 1;
    let span = n - lo + 1;
    let mut points: Vec<u64> = (0..SAMPLES.min(span)).map(|i| lo + i * span / SAMPLES.min(span)).collect();
    points.push(n);
    // numbers whose digits are all B−1 have the most prefixes of every residue
    let mut all_top = base as u64 - 1;
    while all_top <= n {
        if all_top >= lo {
            points.push(all_top);
        }
        match all_top.checked_mul(base as u64).and_then(|v| v.checked_add(base as u64 - 1)) {
            Some(v) => all_top = v,
            None => break,
        }
    }
    points.sort_unstable();
    points.dedup();
    points
}

/// Estimated `|Σ_{k>N} c_k w(k)|` as an `f64`.
pub fn tail_bound(seq: &LinearSequence, base: u32, weight: WeightKind, n: u64) -> f64 {
    let coeffs = seq.fixed(base, SAMPLE_SCALE);
    let deg = seq.growth_degree() as i32;
    let c = sample_points(n, base)
        .into_iter()
        .map(|k| {
            let v = match coeffs.value(k) {
                ScaledCoefficient::Exact(num, den) => num.to_f64().unwrap_or(f64::MAX) / den.to_f64().unwrap_or(1.0),
                ScaledCoefficient::Fixed(m, _) => m.to_f64().unwrap_or(f64::MAX) / 1e20,
            };
            v.abs() / ((k as f64).powi(deg) * digits::length(k, base) as f64)
        })
        .fold(0.0, f64::max);
    let nf = n.max(1) as f64;
    let log_n = nf.ln() / (base as f64).ln() + 1.0;
    (base as f64 - 1.0) * c * log_n * nf.powi(deg - decay(weight) + 1)
}

/// A non-negative `f64` rounded up to a `FixedReal` with a few significant digits.
pub fn tail_to_fixed(v: f64, min_scale: u32) -> FixedReal {
    if v <= 0.0 || !v.is_finite() {
        return FixedReal::zero(min_scale);
    }
    let scale = ((-v.log10()).ceil() as i64 + 4).clamp(0, 300) as u32;
    let units = (v * 10f64.powi(scale as i32)).ceil();
    let fixed = FixedReal::from_parts(BigInt::from_f64(units).unwrap_or_default(), scale, 0u32.into());
    if scale < min_scale {
        fixed.rescale(min_scale)
    } else {
        fixed
    }
}
