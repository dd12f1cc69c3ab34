use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{check_finite, is_nonpositive_integer};
use crate::C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(z)` for `Re z >= 1/2`.
fn ln_gamma_right(z: C64) -> C64 {
    let w = z - 1.0;
    let mut a = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (w + i as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (w + 0.5) * t.ln() - t + a.ln()
}

/// A logarithm of `sin(πz)` that stays finite for large `|Im z|`.
fn ln_sin_pi(z: C64) -> C64 {
    let i = C64::i();
    if z.im.abs() < 1.0 {
        return (PI * z).sin().ln();
    }
    let half = C64::new(-std::f64::consts::LN_2, 0.0);
    if z.im > 0.0 {
        -i * PI * z + half + i * (PI / 2.0) + (1.0 - (2.0 * PI * i * z).exp()).ln()
    } else {
        i * PI * z + half - i * (PI / 2.0) + (1.0 - (-2.0 * PI * i * z).exp()).ln()
    }
}

/// A branch of `ln Γ(z)`; the imaginary part is correct modulo `2π`.
pub fn ln_gamma(z: C64) -> Result<C64> {
    check_finite("gamma argument", z)?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(PI.ln() - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

/// `Γ(z)` for complex `z`.
pub fn complex_gamma(z: C64) -> Result<C64> {
    let v = ln_gamma(z)?.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("Γ({z}) overflows")))
    }
}

/// `1/Γ(z)`, equal to zero at the poles of `Γ`.
pub fn recip_gamma(z: C64) -> Result<C64> {
    check_finite("gamma argument", z)?;
    if is_nonpositive_integer(z) {
        return Ok(C64::new(0.0, 0.0));
    }
    let v = (-ln_gamma(z)?).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("1/Γ({z}) overflows")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn integers_and_half() {
        assert!(close(complex_gamma(C64::new(5.0, 0.0)).unwrap(), C64::new(24.0, 0.0), 1e-14));
        let sqrt_pi = PI.sqrt();
        assert!(close(complex_gamma(C64::new(0.5, 0.0)).unwrap(), C64::new(sqrt_pi, 0.0), 1e-14));
        assert!(close(
            complex_gamma(C64::new(-0.5, 0.0)).unwrap(),
            C64::new(-2.0 * sqrt_pi, 0.0),
            1e-14
        ));
    }

    #[test]
    fn poles() {
        assert!(matches!(complex_gamma(C64::new(-3.0, 0.0)), Err(Error::Pole(_))));
        assert_eq!(recip_gamma(C64::new(0.0, 0.0)).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(recip_gamma(C64::new(-7.0, 0.0)).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn large_imaginary_part_log() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let y = 400.0;
        let lg = ln_gamma(C64::new(0.5, y)).unwrap();
        let expect = 0.5 * (PI.ln() - (PI * y - std::f64::consts::LN_2));
        assert!((lg.re - expect).abs() < 1e-10);
        let lg = ln_gamma(C64::new(-0.5, -y)).unwrap();
        // Γ(-1/2 - iy) = Γ(1/2 - iy)/(-1/2 - iy)
        let expect = expect - C64::new(-0.5, -y).norm().ln();
        assert!((lg.re - expect).abs() < 1e-10);
    }
}
