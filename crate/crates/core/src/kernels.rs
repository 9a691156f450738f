//! Exact rational kernels `Q(k,B)`, `Q̃(k,B)`, `P_B(k)` and the Addison weight.
//!
//! The `*_parts` functions return unreduced numerator/denominator pairs for
//! the summation engines, which only need one rounded division per term.

use num_bigint::BigInt;
use num_traits::One;

use crate::numerics::ExactRational;

/// Kernel used by a summation engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `Q(k,B)`.
    Vacca,
    /// `Q̃(k,B)`.
    Complement,
    /// `P_B(k) / (Bk(Bk+1)⋯(Bk+B))`.
    Addison,
}

fn check(k: u64, base: u32) {
    assert!(k >= 1, "kernel index must be positive");
    assert!(base >= 2, "base must be at least 2");
}

/// `Π_{j=1, j≠skip}^{B−1} (Bk+j)` for each `skip`, via prefix and suffix products.
fn leave_one_out(k: u64, base: u32) -> (Vec<BigInt>, BigInt) {
    let bk = BigInt::from(base as u64) * k;
    let factors: Vec<BigInt> = (1..base).map(|j| &bk + j).collect();
    let n = factors.len();
    let mut prefix = vec![BigInt::one(); n + 1];
    for i in 0..n {
        prefix[i + 1] = &prefix[i] * &factors[i];
    }
    let mut suffix = vec![BigInt::one(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] * &factors[i];
    }
    let out = (0..n).map(|i| &prefix[i] * &suffix[i + 1]).collect();
    (out, prefix[n].clone())
}

/// Unreduced `(numerator, denominator)` of the chosen kernel at `k`.
pub fn weight_parts(kind: WeightKind, k: u64, base: u32) -> (BigInt, BigInt) {
    check(k, base);
    let b = base as u64;
    let bk = BigInt::from(b) * k;
    let (others, product) = leave_one_out(k, base);
    let weighted = |f: &dyn Fn(u64) -> u64| -> BigInt {
        others
            .iter()
            .enumerate()
            .map(|(i, p)| p * f(i as u64 + 1))
            .sum()
    };
    match kind {
        WeightKind::Vacca => (weighted(&|m| m), &bk * product),
        WeightKind::Complement => (weighted(&|m| b - m), (&bk + b) * product),
        WeightKind::Addison => (weighted(&|m| m * (b - m)), &bk * product * (&bk + b)),
    }
}

fn from_parts((n, d): (BigInt, BigInt)) -> ExactRational {
    ExactRational::fraction(n, d)
}

/// `Q(k,B) = Σ_{m=1}^{B−1} m / (Bk(Bk+m))`.
pub fn kernel_q(k: u64, base: u32) -> ExactRational {
    from_parts(weight_parts(WeightKind::Vacca, k, base))
}

/// `Q(k,B)` summed term by term, independent of [`weight_parts`].
pub fn kernel_q_direct(k: u64, base: u32) -> ExactRational {
    check(k, base);
    let bk = base as i64 * k as i64;
    (1..base as i64)
        .map(|m| ExactRational::fraction(m, BigInt::from(bk) * (bk + m)))
        .sum()
}

/// Both closed forms of `Q̃(k,B)`: `(B−1)/(Bk(k+1)) − Q(k,B)` and
/// `Σ_{m=1}^{B−1} (B−m)/((Bk+B)(Bk+m))`.
pub fn kernel_qtilde_forms(k: u64, base: u32) -> (ExactRational, ExactRational) {
    check(k, base);
    let b = base as i64;
    let k = k as i64;
    let split = ExactRational::fraction(b - 1, BigInt::from(b * k) * (k + 1));
    let difference = split - kernel_q_direct(k as u64, base);
    let direct = (1..b)
        .map(|m| ExactRational::fraction(b - m, BigInt::from(b * k + b) * (b * k + m)))
        .sum();
    (difference, direct)
}

/// `Q̃(k,B)`; panics if its two closed forms disagree.
pub fn kernel_qtilde(k: u64, base: u32) -> ExactRational {
    let (difference, direct) = kernel_qtilde_forms(k, base);
    assert_eq!(difference, direct, "Q̃({k},{base}) closed forms disagree");
    difference
}

/// `P_B(k) = (Bk+1)⋯(Bk+B−1) · Σ_{m=1}^{B−1} m(B−m)/(Bk+m)`, an integer.
pub fn kernel_p(k: u64, base: u32) -> ExactRational {
    check(k, base);
    let b = base as u64;
    let (others, _) = leave_one_out(k, base);
    let value: BigInt = others
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let m = i as u64 + 1;
            p * (m * (b - m))
        })
        .sum();
    let p = ExactRational::from_integer(value);
    assert!(p.is_integer(), "P_{base}({k}) is not an integer");
    p
}

/// `P_B(k) / (Bk(Bk+1)⋯(Bk+B))`; panics unless it equals
/// `Q(k,B) − (B−1)/(2Bk(k+1))`.
pub fn addison_weight(k: u64, base: u32) -> ExactRational {
    check(k, base);
    let b = base as u64;
    let bk = BigInt::from(b) * k;
    let mut den = bk.clone();
    for j in 1..=b {
        den *= &bk + j;
    }
    let w = ExactRational::fraction(kernel_p(k, base).numer().clone(), den);
    let correction = ExactRational::fraction(b - 1, BigInt::from(2 * b * k) * (k + 1));
    assert_eq!(
        w,
        kernel_q_direct(k, base) - correction,
        "Addison weight identity fails at k={k}, B={base}"
    );
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::fraction(n, d)
    }

    #[test]
    fn q_examples() {
        assert_eq!(kernel_q(1, 2), q(1, 6));
        assert_eq!(kernel_q(1, 3), q(13, 60));
        assert_eq!(kernel_q(2, 2), q(1, 20));
        assert_eq!(kernel_q(7, 5), kernel_q_direct(7, 5));
    }

    #[test]
    fn qtilde_examples() {
        assert_eq!(kernel_qtilde(1, 2), q(1, 12));
        assert_eq!(kernel_qtilde(2, 2), q(1, 30));
        // 1/3 − 13/60, and directly 2/(6·4) + 1/(6·5)
        assert_eq!(kernel_qtilde(1, 3), q(7, 60));
    }

    #[test]
    fn p_examples() {
        for k in 1..20 {
            assert_eq!(kernel_p(k, 2), q(1, 1));
        }
        assert_eq!(kernel_p(1, 3), q(18, 1));
        assert_eq!(kernel_p(2, 3), q(30, 1));
    }

    #[test]
    fn addison_examples() {
        assert_eq!(addison_weight(1, 2), q(1, 24));
        assert_eq!(addison_weight(1, 3), q(1, 20));
        assert_eq!(addison_weight(2, 2), q(1, 120));
    }

    #[test]
    fn parts_match_exact_kernels() {
        for base in 2..7 {
            for k in 1..30 {
                assert_eq!(from_parts(weight_parts(WeightKind::Vacca, k, base)), kernel_q_direct(k, base));
                assert_eq!(from_parts(weight_parts(WeightKind::Complement, k, base)), kernel_qtilde(k, base));
                assert_eq!(from_parts(weight_parts(WeightKind::Addison, k, base)), addison_weight(k, base));
            }
        }
    }
}
