//! Dormand–Prince 5(4) with PI step-size control for complex linear systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Controls for the embedded Runge–Kutta integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OdeControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeControl {
    fn default() -> Self {
        OdeControl { rel_tol: 1e-10, abs_tol: 1e-12, max_steps: 2_000_000 }
    }
}

impl OdeControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("ODE tolerances must be positive"));
        }
        if self.rel_tol < 1e-15 {
            return Err(Error::domain("ODE rel_tol below 1e-15 is not attainable"));
        }
        if self.max_steps == 0 {
            return Err(Error::domain("max_steps must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lin<const N: usize>(y: &[C64; N], h: f64, terms: &[(f64, &[C64; N])]) -> [C64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += k[i] * (h * c);
        }
    }
    out
}

/// Integrates `y' = f(x, y)` from `a` to `b > a` with steps no longer than
/// `h_max`.
pub fn integrate<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    y0: [C64; N],
    h_max: f64,
    ctl: &OdeControl,
) -> Result<([C64; N], OdeStats)>
where
    F: FnMut(f64, &[C64; N]) -> [C64; N],
{
    ctl.validate()?;
    if !(b > a) {
        return Err(Error::domain("integration interval must be non-empty"));
    }
    let span = b - a;
    let h_max = h_max.min(span);
    let beta = 0.04;
    let alpha = 0.2 - 0.75 * beta;
    let mut x = a;
    let mut y = y0;
    let mut k1 = f(x, &y);
    let mut h = (0.01 * span).min(h_max).min(ctl.rel_tol.powf(0.2) * h_max.max(1e-300));
    let mut err_prev = 1e-4_f64;
    let mut stats = OdeStats { accepted: 0, rejected: 0 };
    let mut last_rejected = false;
    while x < b {
        if stats.accepted + stats.rejected >= ctl.max_steps {
            return Err(Error::Tolerance(format!("max_steps = {} exhausted at x = {x}", ctl.max_steps)));
        }
        let mut final_step = false;
        if x + h >= b || x + 1.01 * h >= b {
            h = b - x;
            final_step = true;
        }
        if h <= 1e-14 * span.max(x.abs()) {
            return Err(Error::Tolerance(format!("step size underflow at x = {x}")));
        }
        let k2 = f(x + C2 * h, &lin(&y, h, &[(A21, &k1)]));
        let k3 = f(x + C3 * h, &lin(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(x + C4 * h, &lin(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(x + C5 * h, &lin(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = f(
            x + h,
            &lin(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y_new = lin(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let x_new = if final_step { b } else { x + h };
        let k7 = f(x_new, &y_new);
        let mut err = 0.0_f64;
        for i in 0..N {
            let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
            let sc = ctl.abs_tol + ctl.rel_tol * y[i].norm().max(y_new[i].norm());
            err += (e.norm() / sc).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            return Err(Error::NonFinite(format!("ODE right-hand side blew up near x = {x}")));
        }
        if err <= 1.0 {
            let mut fac = 0.9 * err.max(1e-10).powf(-alpha) * err_prev.powf(beta);
            fac = fac.clamp(0.2, 10.0);
            if last_rejected {
                fac = fac.min(1.0);
            }
            err_prev = err.max(1e-4);
            x = x_new;
            y = y_new;
            k1 = k7;
            stats.accepted += 1;
            last_rejected = false;
            h = (h * fac).min(h_max);
        } else {
            let fac = (0.9 * err.powf(-alpha)).max(0.2);
            h *= fac;
            stats.rejected += 1;
            last_rejected = true;
        }
    }
    Ok((y, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_is_exact_to_tolerance() {
        // y1' = i y2, y2' = i y1 from (1, 0): (cos x, i sin x)
        let ctl = OdeControl::default();
        let (y, stats) = integrate(
            |_, y: &[C64; 2]| [C64::i() * y[1], C64::i() * y[0]],
            0.0,
            20.0,
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            1.0,
            &ctl,
        )
        .unwrap();
        assert!((y[0] - C64::new(20.0_f64.cos(), 0.0)).norm() < 1e-8);
        assert!((y[1] - C64::new(0.0, 20.0_f64.sin())).norm() < 1e-8);
        assert!(stats.accepted > 20);
    }

    #[test]
    fn step_budget() {
        let ctl = OdeControl { max_steps: 5, ..OdeControl::default() };
        let r = integrate(|_, y: &[C64; 1]| [C64::i() * y[0] * 50.0], 0.0, 10.0, [C64::new(1.0, 0.0)], 1.0, &ctl);
        assert!(matches!(r, Err(Error::Tolerance(_))));
    }
}
