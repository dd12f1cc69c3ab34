use super::dd::{self, Cdd};
use super::{check_finite, is_nonpositive_integer, SeriesControl};
use crate::error::{Error, Result};
use crate::C64;

/// Largest tolerated ratio of peak term to sum in the double-double series.
pub(crate) const DD_MAX_LOSS: f64 = 1e16;

/// Kummer's confluent hypergeometric function `M(a, b, z) = ₁F₁(a; b; z)`.
///
/// For `Re z < 0` Kummer's transformation `M(a,b,z) = e^z M(b−a, b, −z)` is
/// applied first to avoid cancellation.
pub fn kummer_m(a: C64, b: C64, z: C64, ctl: &SeriesControl) -> Result<C64> {
    ctl.validate()?;
    check_finite("a", a)?;
    check_finite("b", b)?;
    check_finite("z", z)?;
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("M(a, b, z) has a pole at b = {}", b.re)));
    }
    let (sum, loss) = if z.re < 0.0 && !is_nonpositive_integer(a) {
        let (s, loss) = series(b - a, b, -z, ctl)?;
        (z.exp() * s, loss)
    } else {
        series(a, b, z, ctl)?
    };
    if loss > DD_MAX_LOSS {
        return Err(Error::Convergence(format!(
            "M({a}, {b}, {z}): cancellation of {loss:.1e} exceeds working precision"
        )));
    }
    if sum.re.is_finite() && sum.im.is_finite() {
        Ok(sum)
    } else {
        Err(Error::NonFinite(format!("M({a}, {b}, {z}) overflows")))
    }
}

/// Series sum and cancellation ratio.
pub(crate) fn series(a: C64, b: C64, z: C64, ctl: &SeriesControl) -> Result<(C64, f64)> {
    let (a, b, zz): (Cdd, Cdd, Cdd) = (dd::from_c64(a), dd::from_c64(b), dd::from_c64(z));
    let mut term = dd::real(1.0);
    let mut sum = term;
    let mut max_term = 1.0_f64;
    let mut prev = 1.0_f64;
    for n in 0..ctl.max_terms {
        let nf = dd::real(n as f64);
        term = dd::div(term * (a + nf) * zz, (b + nf) * dd::real(n as f64 + 1.0));
        sum += term;
        let at = dd::abs(term);
        max_term = max_term.max(at);
        if at == 0.0 || (at < prev && at <= 0.01 * ctl.rel_tol * dd::abs(sum)) {
            let s = dd::abs(sum);
            let loss = if s == 0.0 { f64::INFINITY } else { max_term / s };
            return Ok((dd::to_c64(sum), loss));
        }
        prev = at;
    }
    Err(Error::Convergence(format!(
        "Kummer series did not converge in {} terms",
        ctl.max_terms
    )))
}
