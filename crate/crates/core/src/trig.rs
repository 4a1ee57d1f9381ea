//! Cosines and phases of rational multiples of π.
//!
//! Every angle in this crate has the form `num·π/den`. Folding the integer
//! numerator before calling into `libm` makes symmetry-related angles return
//! bit-identical values (`cos(qπ/N) == cos((2N−q)π/N)`,
//! `cos((N−q)π/N) == −cos(qπ/N)`) and right angles return exactly zero, so
//! degenerate energies compare equal without a tolerance.

use num_complex::Complex64;

/// `cos(num·π/den)`; `den` must be positive.
pub fn cos_pi_ratio(num: i64, den: i64) -> f64 {
    debug_assert!(den > 0);
    let mut r = num.rem_euclid(2 * den);
    if r > den {
        r = 2 * den - r;
    }
    // r in [0, den]
    match (2 * r).cmp(&den) {
        core::cmp::Ordering::Equal => 0.0,
        core::cmp::Ordering::Greater => -libm::cos((den - r) as f64 * core::f64::consts::PI / den as f64),
        core::cmp::Ordering::Less => libm::cos(r as f64 * core::f64::consts::PI / den as f64),
    }
}

/// `sin(num·π/den)`.
pub fn sin_pi_ratio(num: i64, den: i64) -> f64 {
    cos_pi_ratio(den - 2 * num, 2 * den)
}

/// `exp(i·num·π/den)`.
pub fn phase(num: i64, den: i64) -> Complex64 {
    Complex64::new(cos_pi_ratio(num, den), sin_pi_ratio(num, den))
}

/// `cot(num·π/den)`; infinite when the angle is a multiple of π.
pub fn cot_pi_ratio(num: i64, den: i64) -> f64 {
    cos_pi_ratio(num, den) / sin_pi_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn matches_libm_within_rounding() {
        for den in 1..40i64 {
            for num in -3 * den..3 * den {
                let x = num as f64 * PI / den as f64;
                assert!((cos_pi_ratio(num, den) - libm::cos(x)).abs() < 1e-14);
                assert!((sin_pi_ratio(num, den) - libm::sin(x)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn symmetric_angles_are_bit_identical() {
        for den in 3..30i64 {
            for q in 0..2 * den {
                assert_eq!(cos_pi_ratio(q, den), cos_pi_ratio(2 * den - q, den));
                assert_eq!(cos_pi_ratio(q + den, den), -cos_pi_ratio(q, den));
            }
        }
    }

    #[test]
    fn right_angles_are_exact_zero() {
        assert_eq!(cos_pi_ratio(3, 6), 0.0);
        assert_eq!(cos_pi_ratio(9, 6), 0.0);
        assert_eq!(sin_pi_ratio(6, 6), 0.0);
        assert!((cot_pi_ratio(-3, 4) - 1.0).abs() < 1e-15);
    }
}
