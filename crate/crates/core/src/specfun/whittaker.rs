use super::gamma::{complex_gamma, recip_gamma};
use super::kummer::{self, DD_MAX_LOSS};
use super::{check_finite, is_nonpositive_integer, SeriesControl};
use crate::error::{Error, Result};
use crate::C64;

/// Error level above which no route is considered trustworthy.
const ACCEPT: f64 = 1e-8;

/// Whittaker's `W_{k,m}(z)` on the principal branch, `|arg z| < π`.
///
/// When `1/2 ± m − k` is a non-positive integer the asymptotic series
/// terminates and is used as an exact finite sum for every `z`. Otherwise the
/// asymptotic series is used for `|z| >= asymptotic_switch` when it reaches
/// the tolerance, and the two-term Kummer connection formula elsewhere.
pub fn whittaker_w(k: C64, m: C64, z: C64, ctl: &SeriesControl) -> Result<C64> {
    ctl.validate()?;
    check_finite("k", k)?;
    check_finite("m", m)?;
    check_finite("z", z)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain("W_{k,m}(z) is singular at z = 0"));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Branch(format!("z = {} lies on the branch cut", z.re)));
    }
    let a1 = 0.5 + m - k;
    let a2 = 0.5 - m - k;
    if is_nonpositive_integer(a1) || is_nonpositive_integer(a2) {
        return match asymptotic(k, a1, a2, z, ctl) {
            Some((v, _)) => Ok(v),
            None => Err(Error::Convergence("terminating Whittaker sum did not close".into())),
        };
    }
    let mut best: Option<(C64, f64)> = None;
    if z.norm() >= ctl.asymptotic_switch {
        if let Some((v, err)) = asymptotic(k, a1, a2, z, ctl) {
            if err <= ctl.rel_tol * v.norm() {
                return Ok(v);
            }
            best = Some((v, err / v.norm()));
        }
    }
    match connection(k, m, z, ctl) {
        Ok((v, err)) => {
            if best.map_or(true, |(_, e)| err < e) {
                best = Some((v, err));
            }
        }
        Err(e @ Error::Pole(_)) if best.is_none() => return Err(e),
        Err(_) => {}
    }
    match best {
        Some((v, err)) if err <= ACCEPT => Ok(v),
        Some((_, err)) => Err(Error::Convergence(format!(
            "W_{{{k},{m}}}({z}): best estimate has relative error {err:.1e}"
        ))),
        None => Err(Error::Convergence(format!("W_{{{k},{m}}}({z}): no route converged"))),
    }
}

/// Asymptotic series `e^{−z/2} z^k Σ (a1)_n (a2)_n / n! (−z)^{−n}`, summed to
/// its smallest term. Returns the value and an absolute error estimate.
fn asymptotic(k: C64, a1: C64, a2: C64, z: C64, ctl: &SeriesControl) -> Option<(C64, f64)> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0_f64;
    let mut err = f64::INFINITY;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term = term * (a1 + nf) * (a2 + nf) / ((nf + 1.0) * -z);
        let at = term.norm();
        if at == 0.0 {
            err = 0.0;
            break;
        }
        if at > prev && n > 0 {
            err = prev;
            break;
        }
        sum += term;
        err = at;
        if at <= 0.01 * ctl.rel_tol * sum.norm() {
            break;
        }
        prev = at;
    }
    if !err.is_finite() {
        return None;
    }
    let pref = (-0.5 * z + k * z.ln()).exp();
    let v = pref * sum;
    if v.re.is_finite() && v.im.is_finite() {
        Some((v, err * pref.norm() + 1e-16 * v.norm()))
    } else {
        None
    }
}

/// Kummer connection formula; returns the value and a relative error estimate.
fn connection(k: C64, m: C64, z: C64, ctl: &SeriesControl) -> Result<(C64, f64)> {
    let two_m = 2.0 * m;
    if two_m.im == 0.0 && two_m.re.fract() == 0.0 {
        return Err(Error::Pole(format!(
            "connection formula is singular for integer 2m = {}",
            two_m.re
        )));
    }
    let lz = z.ln();
    let big_m = |mm: C64| -> Result<(C64, f64)> {
        let (s, loss) = kummer::series(0.5 + mm - k, 1.0 + 2.0 * mm, z, ctl)?;
        Ok(((-0.5 * z + (0.5 + mm) * lz).exp() * s, loss))
    };
    let (m1, l1) = big_m(m)?;
    let (m2, l2) = big_m(-m)?;
    let c1 = complex_gamma(-two_m)? * recip_gamma(0.5 - m - k)?;
    let c2 = complex_gamma(two_m)? * recip_gamma(0.5 + m - k)?;
    let t1 = c1 * m1;
    let t2 = c2 * m2;
    let v = t1 + t2;
    let loss = l1.max(l2);
    let cancel = (t1.norm() + t2.norm()) / v.norm();
    let err = 1e-32 * loss * ctl.max_terms as f64 + 4e-16 * cancel;
    if !(v.re.is_finite() && v.im.is_finite()) || loss > DD_MAX_LOSS {
        return Err(Error::Convergence(format!("W_{{{k},{m}}}({z}) lost all precision")));
    }
    Ok((v, err))
}
