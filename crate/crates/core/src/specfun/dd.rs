//! Complex double-double helpers on top of `twofloat`.

use num_complex::Complex;
use twofloat::TwoFloat;

use crate::C64;

pub(crate) type Cdd = Complex<TwoFloat>;

pub(crate) fn from_c64(z: C64) -> Cdd {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

pub(crate) fn to_c64(z: Cdd) -> C64 {
    C64::new(z.re.hi() + z.re.lo(), z.im.hi() + z.im.lo())
}

pub(crate) fn real(x: f64) -> Cdd {
    Complex::new(TwoFloat::from(x), TwoFloat::from(0.0))
}

/// Modulus estimate, good enough for convergence tests.
pub(crate) fn abs(z: Cdd) -> f64 {
    z.re.hi().hypot(z.im.hi())
}

/// Double-double quotient.
///
/// `twofloat` 0.8's `TwoFloat / TwoFloat` loses the low word (its reciprocal
/// residual is formed without FMA), so the quotient is refined with one
/// Newton correction using the accurate product and sum.
pub(crate) fn div_real(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q0 = TwoFloat::from(a.hi() / b.hi());
    let r = a - q0 * b;
    q0 + r.hi() / b.hi()
}

/// Complex double-double quotient.
pub(crate) fn div(a: Cdd, b: Cdd) -> Cdd {
    let den = b.re * b.re + b.im * b.im;
    let num = a * b.conj();
    Complex::new(div_real(num.re, den), div_real(num.im, den))
}

/// Exact product of two doubles as a double-double.
pub(crate) fn mul_exact(a: f64, b: f64) -> TwoFloat {
    TwoFloat::new_mul(a, b)
}
