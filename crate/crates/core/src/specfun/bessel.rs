//! Bessel functions of the first kind, complex order and real argument.
//!
//! Orders with large imaginary part make `|J_ν(x)|` grow like
//! `exp(π|Im ν|/2)`, so the workhorse returns the scaled value
//! `exp(-π|Im ν|/2) J_ν(x)`. Three evaluation routes are used:
//!
//! 1. the ascending series in double-double arithmetic, accepted when the
//!    measured cancellation stays below `1e15`;
//! 2. Hankel's expansion for large `x`, accepted when its terms decrease
//!    monotonically down to the tolerance;
//! 3. otherwise, Taylor-series continuation of Bessel's equation from a
//!    point where the ascending series is well conditioned.

use std::f64::consts::PI;

use num_complex::Complex;
use twofloat::TwoFloat;

use super::dd::{self, Cdd};
use super::gamma::ln_gamma;
use super::{check_finite, SeriesControl};
use crate::error::{Error, Result};
use crate::C64;

const DD_MAX_LOSS: f64 = 1e15;
/// Largest acceptable log-ratio of peak term to leading term when choosing
/// the starting point of the continuation.
const START_LOG_PEAK: f64 = 28.0;
const TAYLOR_MAX_TERMS: usize = 400;

/// `exp(-π|Im ν|/2) J_ν(x)` for complex order `ν` and real `x >= 0`.
pub fn bessel_j_scaled(order: C64, x: f64, ctl: &SeriesControl) -> Result<C64> {
    ctl.validate()?;
    check_finite("Bessel order", order)?;
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("Bessel argument must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        if order == C64::new(0.0, 0.0) {
            return Ok(C64::new(1.0, 0.0));
        }
        if order.re > 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!("J_ν(0) is singular for ν = {order}")));
    }
    if super::is_nonpositive_integer(order) && order.re < 0.0 {
        let n = -order.re;
        let sign = if n % 2.0 == 0.0 { 1.0 } else { -1.0 };
        return Ok(sign * bessel_j_scaled(C64::new(n, 0.0), x, ctl)?);
    }
    if x >= ctl.asymptotic_switch {
        if let Some(v) = hankel(order, x, ctl.rel_tol) {
            return Ok(v);
        }
    }
    if let Some((v, _)) = ascending(order, x, ctl)? {
        return Ok(v);
    }
    continuation(order, x, ctl)
}

/// `J_ν(x)` for complex order `ν` and real `x >= 0`.
///
/// Fails with [`Error::NonFinite`] when the value leaves the `f64` range; use
/// [`bessel_j_scaled`] for orders with large imaginary part.
pub fn bessel_j(order: C64, x: f64, ctl: &SeriesControl) -> Result<C64> {
    let v = bessel_j_scaled(order, x, ctl)?;
    let scale = 0.5 * PI * order.im.abs();
    let out = v * scale.exp();
    if out.re.is_finite() && out.im.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite(format!("J_{order}({x}) overflows")))
    }
}

fn log_prefactor(nu: C64, x: f64) -> Result<C64> {
    Ok(nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)? - 0.5 * PI * nu.im.abs())
}

/// Scaled `J_ν(x)` and `x J'_ν(x)` from the ascending series, or `None` when
/// cancellation is too severe.
fn ascending(nu: C64, x: f64, ctl: &SeriesControl) -> Result<Option<(C64, C64)>> {
    let pref = log_prefactor(nu, x)?;
    let w: Cdd = Complex::new(-dd::mul_exact(x, x) * 0.25, TwoFloat::from(0.0));
    let nu_dd = dd::from_c64(nu);
    let mut term = dd::real(1.0);
    let mut sum = term;
    let mut dsum = nu_dd;
    let mut max_term = 1.0_f64;
    let mut prev = 1.0_f64;
    let mut converged = false;
    for m in 1..=ctl.max_terms {
        let mf = m as f64;
        term = dd::div(term * w, (nu_dd + dd::real(mf)) * dd::real(mf));
        sum += term;
        dsum += term * (nu_dd + dd::real(2.0 * mf));
        let at = dd::abs(term);
        max_term = max_term.max(at);
        if at < prev && at <= 0.01 * ctl.rel_tol * dd::abs(sum) {
            converged = true;
            break;
        }
        prev = at;
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "Bessel series for ν = {nu}, x = {x} needs more than {} terms",
            ctl.max_terms
        )));
    }
    let s = dd::abs(sum);
    if s == 0.0 || max_term / s > DD_MAX_LOSS {
        return Ok(None);
    }
    let p = pref.exp();
    let v = p * dd::to_c64(sum);
    let dv = p * dd::to_c64(dsum);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite(format!("scaled J_{nu}({x}) overflows")));
    }
    Ok(Some((v, dv)))
}

/// Hankel's large-argument expansion, scaled.
fn hankel(nu: C64, x: f64, tol: f64) -> Option<C64> {
    let mu4 = 4.0 * nu * nu;
    let mut term = C64::new(1.0, 0.0);
    let mut p = term;
    let mut q = C64::new(0.0, 0.0);
    let mut converged = false;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu4 - odd * odd) / (8.0 * kf * x);
        if next.norm() >= term.norm() {
            return None;
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.norm() <= 0.1 * tol * (p.norm() + q.norm()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let i = C64::i();
    let omega = x - nu * (PI / 2.0) - PI / 4.0;
    let scale = 0.5 * PI * nu.im.abs();
    let ep = (i * omega - scale).exp();
    let em = (-i * omega - scale).exp();
    let cos = 0.5 * (ep + em);
    let sin = (ep - em) / (2.0 * i);
    Some((2.0 / (PI * x)).sqrt() * (p * cos - q * sin))
}

/// Natural log of the largest ascending-series term relative to the first.
fn log_peak(nu: C64, x: f64) -> f64 {
    let lw = (0.25 * x * x).ln();
    let mut acc = 0.0_f64;
    let mut best = 0.0_f64;
    let mut m = 1usize;
    loop {
        let mf = m as f64;
        let inc = lw - mf.ln() - (nu + mf).norm().ln();
        acc += inc;
        best = best.max(acc);
        if (inc < 0.0 && mf > nu.norm()) || m > 1_000_000 {
            return best;
        }
        m += 1;
    }
}

fn continuation(nu: C64, x: f64, ctl: &SeriesControl) -> Result<C64> {
    // Largest start point with a well-conditioned series.
    let (mut lo, mut hi) = (0.0_f64, x);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if log_peak(nu, mid) <= START_LOG_PEAK {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x0 = lo;
    let start = loop {
        if x0 <= 1e-3 * x || x0 <= 0.0 {
            return Err(Error::Convergence(format!(
                "no well-conditioned start point for J_{nu}({x})"
            )));
        }
        match ascending(nu, x0, ctl)? {
            Some(v) => break v,
            None => x0 *= 0.9,
        }
    };
    let (y0, xdy0) = start;
    transport(nu * nu, x0, x, y0, xdy0 / x0)
}

/// Carries `(y, y')` for `x²y'' + xy' + (x² − ν²)y = 0` from `c` to `target`.
fn transport(nu2: C64, mut c: f64, target: f64, mut y: C64, mut dy: C64) -> Result<C64> {
    let nu_abs = nu2.norm().sqrt();
    while c < target {
        let freq = 1.0 + nu_abs / c;
        let h = (target - c).min(0.5 * c).min(1.5 / freq);
        let c2 = c * c;
        let mut a = [C64::new(0.0, 0.0); 4];
        // a[0..4] hold a_{n-2}, a_{n-1}, a_n, a_{n+1} as n advances.
        a[2] = y;
        a[3] = dy;
        let mut hn = h; // h^{n+1}
        let mut y_new = y + dy * h;
        let mut dy_new = dy;
        let scale = y.norm() + h * dy.norm();
        let mut small = 0;
        let mut n = 0usize;
        loop {
            let nf = n as f64;
            let next = -(c * (nf + 1.0) * (2.0 * nf + 1.0) * a[3]
                + (nf * nf + c2 - nu2) * a[2]
                + 2.0 * c * a[1]
                + a[0])
                / (c2 * (nf + 1.0) * (nf + 2.0));
            a = [a[1], a[2], a[3], next];
            dy_new += (nf + 2.0) * next * hn;
            hn *= h;
            let contrib = next * hn;
            y_new += contrib;
            if contrib.norm() <= 1e-18 * scale.max(y_new.norm()) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            n += 1;
            if n > TAYLOR_MAX_TERMS {
                return Err(Error::Convergence("Bessel continuation step did not converge".into()));
            }
        }
        y = y_new;
        dy = dy_new;
        c += h;
    }
    if y.re.is_finite() && y.im.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite("Bessel continuation overflowed".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.3, 2.0, 17.0, 40.0, 150.0] {
            let j = bessel_j(C64::new(0.5, 0.0), x, &ctl()).unwrap();
            let expect = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((j.re - expect).abs() < 1e-13 * (1.0 + expect.abs()), "x = {x}");
            let j = bessel_j(C64::new(-0.5, 0.0), x, &ctl()).unwrap();
            let expect = (2.0 / (PI * x)).sqrt() * x.cos();
            assert!((j.re - expect).abs() < 1e-13 * (1.0 + expect.abs()), "x = {x}");
        }
    }

    #[test]
    fn routes_agree() {
        let c = ctl();
        for &(nu, x) in &[
            (C64::new(0.5, 3.0), 30.0),
            (C64::new(-0.5, 1.5), 26.0),
            (C64::new(1.5, -0.7), 40.0),
        ] {
            let h = hankel(nu, x, c.rel_tol).unwrap();
            let t = continuation(nu, x, &c).unwrap();
            assert!(rel(h, t) < 1e-11, "ν = {nu}, x = {x}: {h} vs {t}");
        }
    }

    #[test]
    fn zero_argument() {
        let c = ctl();
        assert_eq!(bessel_j(C64::new(0.0, 0.0), 0.0, &c).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(bessel_j(C64::new(0.3, 2.0), 0.0, &c).unwrap(), C64::new(0.0, 0.0));
        assert!(matches!(bessel_j(C64::new(-0.3, 0.0), 0.0, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_integer_reflection() {
        let c = ctl();
        let a = bessel_j(C64::new(-3.0, 0.0), 2.5, &c).unwrap();
        let b = bessel_j(C64::new(3.0, 0.0), 2.5, &c).unwrap();
        assert!(rel(a, -b) < 1e-15);
    }

    #[test]
    fn double_double_division() {
        let q = dd::div_real(TwoFloat::from(1.0), TwoFloat::from(3.0));
        assert!((q * 3.0 - 1.0).hi().abs() < 1e-30);
        let a = dd::from_c64(C64::new(1.0, 1.0));
        let b = dd::from_c64(C64::new(3.0, -7.0));
        let r = dd::div(a, b) * b - a;
        assert!(dd::abs(r) < 1e-30);
    }

    #[test]
    fn large_imaginary_order_is_scaled() {
        let c = ctl();
        assert!(matches!(bessel_j(C64::new(0.5, 1000.0), 10.0, &c), Err(Error::NonFinite(_))));
        let v = bessel_j_scaled(C64::new(0.5, 1000.0), 10.0, &c).unwrap();
        assert!(v.norm().is_finite() && v.norm() > 0.0);
    }
}
