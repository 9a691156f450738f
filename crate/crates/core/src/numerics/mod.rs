//! Exact rationals and decimal fixed-point reals with error accounting.

pub mod elementary;
pub mod fixed;
pub mod rational;

pub use elementary::{exp, fix_elementary, ln, ln2, ln_rational, pi, pow_rational, Elementary};
pub use fixed::{pow10, round_div, sum_fixed, FixedReal};
pub use rational::{rat_arith, ExactRational, RatOp};

/// Guard digits added to a requested precision for internal summation.
pub const GUARD_DIGITS: u32 = 15;

/// `FixedReal::from_rational`, named after the operation it provides.
pub fn fix_from_rational(x: &ExactRational, scale: u32) -> FixedReal {
    FixedReal::from_rational(x, scale)
}
