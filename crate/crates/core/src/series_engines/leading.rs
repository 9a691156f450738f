//! The integral `I_l = ∫₀¹ x^{b+al−1}(1−x)/(1−z x^a)^{l+1} dx`, evaluated
//! through its coefficient series `Σ_m binom(m+l,l) z^m (1/(am+c) − 1/(am+c+1))`
//! with `c = b + al`.
//!
//! For `|z| = 1` the series is summed in closed form with `ψ`. For `|z| < 1`
//! it is summed directly until the geometric remainder drops below one ulp.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::numerics::{pow10, round_div, ExactRational, FixedReal};
use crate::oracles::special::digamma;
use crate::sequences::SeriesParams;

/// `Σ_{m≥0} (−1)^m/(am+p) = (ψ((p+a)/(2a)) − ψ(p/(2a)))/(2a)`.
fn alternating(a: u64, p: u64, w: u32) -> Result<FixedReal> {
    let hi = digamma(&ExactRational::fraction(p + a, 2 * a), w)?;
    let lo = digamma(&ExactRational::fraction(p, 2 * a), w)?;
    Ok(hi.sub(&lo).mul_rational(&ExactRational::fraction(1, 2 * a)))
}

pub fn leading_integral(params: &SeriesParams, scale: u32) -> Result<FixedReal> {
    let w = scale + 5;
    let (a, l) = (params.a(), params.l());
    let c = params.b() + a * l as u64;
    let z = params.z();

    let value = if z == &ExactRational::one() {
        // l = 0 here; the sum telescopes within residue classes mod a
        if a == 1 {
            FixedReal::from_rational(&ExactRational::fraction(1, c), w)
        } else {
            let hi = digamma(&ExactRational::fraction(c + 1, a), w)?;
            let lo = digamma(&ExactRational::fraction(c, a), w)?;
            hi.sub(&lo).mul_rational(&ExactRational::fraction(1, a))
        }
    } else if z == &ExactRational::from(-1i64) {
        let s0 = alternating(a, c, w)?;
        let s1 = alternating(a, c + 1, w)?;
        if l == 0 {
            s0.sub(&s1)
        } else {
            // (m+1)/(am+p) = 1/a + ((a−p)/a)/(am+p); the constants cancel
            let r0 = ExactRational::fraction(a as i64 - c as i64, a as i64);
            let r1 = ExactRational::fraction(a as i64 - c as i64 - 1, a as i64);
            s0.mul_rational(&r0).sub(&s1.mul_rational(&r1))
        }
    } else {
        geometric(params, c, w)
    };
    Ok(value.rescale(scale))
}

fn geometric(params: &SeriesParams, c: u64, w: u32) -> FixedReal {
    let (a, l) = (params.a(), params.l());
    let z = params.z();
    let zf = z.to_f64().abs();
    let one = pow10(w);
    let mut sum = BigInt::zero();
    let mut zn = BigInt::one();
    let mut zd = BigInt::one();
    let mut m = 0u64;
    let limit = -(w as f64) * std::f64::consts::LN_10;
    loop {
        let y = a * m + c;
        let binom = if l == 0 { 1 } else { m + 1 };
        sum += round_div(&(&zn * &one * binom), &(&zd * y * (y + 1)));
        m += 1;
        if zf == 0.0 {
            break;
        }
        // Σ_{j≥m} (j+1)^l |z|^j ≤ (m+1)^l |z|^m / (1−|z|)²
        let log_rest = l as f64 * ((m + 1) as f64).ln() + m as f64 * zf.ln() - 2.0 * (1.0 - zf).ln();
        if log_rest < limit {
            break;
        }
        zn *= z.numer();
        zd *= z.denom();
    }
    FixedReal::from_parts(sum, w, (m + 1).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::constants;

    fn params(a: u64, b: u64, l: u32, z: i64) -> SeriesParams {
        SeriesParams::with_int_z(a, b, l, z, 2).unwrap()
    }

    #[test]
    fn unit_z_cases() {
        assert!(leading_integral(&params(1, 1, 0, 1), 30).unwrap().contains(&ExactRational::one()));
        let log2 = constants::log2(40);
        let expect = log2.mul_int(&2.into()).sub(&FixedReal::from_integer(1, 40));
        assert!(leading_integral(&params(1, 1, 0, -1), 35).unwrap().agrees_with(&expect.rescale(35)));
        let expect = log2.mul_int(&3.into()).sub(&FixedReal::from_integer(2, 40));
        assert!(leading_integral(&params(1, 1, 1, -1), 35).unwrap().agrees_with(&expect.rescale(35)));
    }

    #[test]
    fn half_of_two_one_alternating() {
        let half = leading_integral(&params(2, 1, 0, -1), 35).unwrap().mul_rational(&ExactRational::fraction(1, 2));
        let expect = constants::pi(40)
            .mul_rational(&ExactRational::fraction(1, 8))
            .sub(&constants::log2(40).mul_rational(&ExactRational::fraction(1, 4)));
        assert!(half.agrees_with(&expect.rescale(35)), "{half}");
    }

    #[test]
    fn geometric_matches_closed_form() {
        // z = 1/2, l = 0, a = b = 1: Σ 2^{−m}/((m+1)(m+2)) = 2 − 2 log 2
        let p = SeriesParams::new(1, 1, 0, ExactRational::fraction(1, 2), 2).unwrap();
        let expect = FixedReal::from_integer(2, 40).sub(&constants::log2(40).mul_int(&2.into()));
        assert!(leading_integral(&p, 35).unwrap().agrees_with(&expect.rescale(35)));
        let zero = SeriesParams::new(3, 2, 1, ExactRational::zero(), 2).unwrap();
        // only m = 0: 1/5 − 1/6
        assert!(leading_integral(&zero, 20).unwrap().contains(&ExactRational::fraction(1, 30)));
    }
}
