//! Reference evolution operator: direct integration of the two-component
//! system and low-order Dyson-series terms by nested quadrature.
//!
//! In `s = t^μ` the negative-chirality system reads
//! `dφ/ds = (s^{δ−1}/μ) P(s) φ` with
//! `P(s) = [[0, k₊ e^{−2ik3 s/μ}], [−k₋ e^{2ik3 s/μ}, 0]]`.
//! For `0 < δ < 1` the factor `s^{δ−1}` is singular at `s = 0`, so the
//! integration runs in `w = s^δ` instead, where the system is regular.

use crate::background::{gamma_coupling, BackgroundParams, TimeWindow, WaveVector};
use crate::error::{Error, Result};
use crate::ode::{self, OdeControl};
use crate::propagator::{Evaluation, Propagator};
use crate::quad::{self, QuadControl};
use crate::C64;

/// `Ω(t) = [[0, γ], [−conj(γ), 0]]`.
pub fn omega_matrix(
    bg: &BackgroundParams,
    k: &WaveVector,
    t_tilde_a: f64,
    t: f64,
) -> Result<[[C64; 2]; 2]> {
    let g = gamma_coupling(bg, k, t_tilde_a, t)?;
    let zero = C64::new(0.0, 0.0);
    Ok([[zero, g], [-g.conj(), zero]])
}

#[derive(Clone, Copy)]
enum Variable {
    /// `w = s^δ`, for `0 < δ < 1`.
    W,
    /// `s` itself.
    S,
}

fn variable_for(delta: f64) -> Variable {
    if delta > 0.0 && delta < 1.0 {
        Variable::W
    } else {
        Variable::S
    }
}

/// `K(t | t_A)` by adaptive Dormand–Prince integration.
///
/// Only the first column is integrated; the second follows from the
/// structure of `Ω`, so the result has the exact `[[a, b], [−b*, a*]]` form.
/// The unitarity defect and step counts are reported as diagnostics.
pub fn evolve_ode(
    bg: &BackgroundParams,
    k: &WaveVector,
    window: &TimeWindow,
    ctl: &OdeControl,
) -> Result<Evaluation> {
    window.validate_for(bg)?;
    k.validate()?;
    ctl.validate()?;
    let kappa = k.kappa();
    if window.t == window.t_a || kappa == 0.0 {
        return Ok(Evaluation::new(Propagator::identity()).with("steps", 0.0));
    }
    let mu = bg.mu;
    let delta = bg.delta();
    let kp = k.k_plus(bg, window.t_tilde_a);
    let km = kp.conj();
    let omega = 2.0 * k.k3 / mu;
    let s_a = bg.s_of_t(window.t_a);
    let s_b = bg.s_of_t(window.t);
    let var = variable_for(delta);
    let (a, b, phase_rate, coupling_rate) = match var {
        Variable::W => (
            s_a.powf(delta),
            s_b.powf(delta),
            omega.abs() / delta * s_b.powf(1.0 - delta),
            kappa / (mu * delta),
        ),
        Variable::S => {
            let peak = if delta >= 1.0 { s_b } else { s_a };
            (s_a, s_b, omega.abs(), kappa * peak.powf(delta - 1.0) / mu)
        }
    };
    let h_max = (0.2 / phase_rate.max(1e-300)).min(1.0 / coupling_rate.max(1e-300));
    let rhs = move |x: f64, y: &[C64; 2]| -> [C64; 2] {
        let (s, g) = match var {
            Variable::W => (x.powf(1.0 / delta), 1.0 / (mu * delta)),
            Variable::S => (x, x.powf(delta - 1.0) / mu),
        };
        let e = C64::from_polar(g, -omega * s);
        [kp * e * y[1], -km * e.conj() * y[0]]
    };
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let (y, stats) = ode::integrate(rhs, a, b, [one, zero], h_max, ctl)?;
    let p = Propagator::new(y[0], -y[1].conj());
    if !p.is_finite() {
        return Err(Error::NonFinite("ODE propagator is not finite".into()));
    }
    Ok(Evaluation::new(p)
        .with("steps", stats.accepted as f64)
        .with("rejected_steps", stats.rejected as f64))
}

#[derive(Clone, Copy, PartialEq)]
enum Kernel {
    /// `σ^{δ−1}` at every level.
    Exact,
    /// `e^{(1−δ)(1−σ)}` at every level but the innermost.
    Approximate,
}

struct Nested<'a> {
    n: usize,
    delta: f64,
    a: f64,
    sigma_a: f64,
    kernel: Kernel,
    qc: &'a QuadControl,
}

impl Nested<'_> {
    fn panels(&self, lo: f64, hi: f64) -> usize {
        let quarter = std::f64::consts::FRAC_PI_2;
        ((self.a.abs() * (hi - lo) / quarter).ceil() as usize).clamp(1, 100_000)
    }

    /// `∫_{σ_A}^{upper} kernel(σ) e^{i a (−1)^level σ} inner(σ) dσ`.
    fn level(&self, level: usize, upper: f64) -> Result<C64> {
        if level > self.n {
            return Ok(C64::new(1.0, 0.0));
        }
        if upper <= self.sigma_a {
            return Ok(C64::new(0.0, 0.0));
        }
        let sign = if level % 2 == 1 { -1.0 } else { 1.0 };
        let phase = sign * self.a;
        let panels = self.panels(self.sigma_a, upper);
        let power_weight = self.kernel == Kernel::Exact || level == self.n;
        let r = if power_weight && self.delta > 0.0 {
            let d = self.delta;
            let (lo, hi) = (self.sigma_a.powf(d), upper.powf(d));
            let bps = quad::uniform_breakpoints(lo, hi, panels);
            quad::integrate(
                |w: f64| {
                    let sigma = w.powf(1.0 / d).min(upper);
                    Ok([C64::from_polar(1.0 / d, phase * sigma) * self.level(level + 1, sigma)?])
                },
                &bps,
                self.qc,
            )?
        } else {
            let d = self.delta;
            let bps = quad::uniform_breakpoints(self.sigma_a, upper, panels);
            quad::integrate(
                |sigma: f64| {
                    let weight = if power_weight {
                        sigma.powf(d - 1.0)
                    } else {
                        ((1.0 - d) * (1.0 - sigma)).exp()
                    };
                    Ok([C64::from_polar(weight, phase * sigma) * self.level(level + 1, sigma)?])
                },
                &bps,
                self.qc,
            )?
        };
        Ok(r.value[0])
    }
}

fn dyson_term(
    bg: &BackgroundParams,
    k: &WaveVector,
    n: usize,
    window: &TimeWindow,
    qc: &QuadControl,
    kernel: Kernel,
) -> Result<C64> {
    window.validate_for(bg)?;
    k.validate()?;
    if n == 0 || n > 3 {
        return Err(Error::Domain(format!("Dyson order must be 1, 2 or 3, got {n}")));
    }
    let delta = bg.delta();
    let s = bg.s_of_t(window.t);
    let c = k.kappa() * s.powf(delta) / bg.mu;
    if c == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let nested = Nested {
        n,
        delta,
        a: 2.0 * k.k3 * s / bg.mu,
        sigma_a: window.sigma_a(bg),
        kernel,
        qc,
    };
    Ok(c.powi(n as i32) * nested.level(1, 1.0)?)
}

/// Dyson coefficient `I_n(s; 1)`, `n ∈ {1, 2, 3}`, for the window's target
/// time `s = t^μ`:
/// `I_n = (κ s^δ/μ)^n ∫_{σ_A < σ_n < … < σ_1 < 1} Π σ_m^{δ−1} e^{i a (−1)^m σ_m} dσ`
/// with `a = 2 k3 s / μ`.
pub fn dyson_in(
    bg: &BackgroundParams,
    k: &WaveVector,
    n: usize,
    window: &TimeWindow,
    qc: &QuadControl,
) -> Result<C64> {
    dyson_term(bg, k, n, window, qc, Kernel::Exact)
}

/// `I_n` with the kernel `σ^{δ−1}` replaced by `e^{(1−δ)(1−σ)}` at all but
/// the innermost level; `n ∈ {1, 2}`.
pub fn approx_in(
    bg: &BackgroundParams,
    k: &WaveVector,
    n: usize,
    window: &TimeWindow,
    qc: &QuadControl,
) -> Result<C64> {
    if n > 2 {
        return Err(Error::Domain(format!("approximate Dyson order must be 1 or 2, got {n}")));
    }
    dyson_term(bg, k, n, window, qc, Kernel::Approximate)
}

/// Partial Dyson sum `1 + Σ_{n ≤ N} diag(I_n, I_n*) Mⁿ` with
/// `M = [[0, k₊/κ], [−k₋/κ, 0]]`, `N ≤ 3`.
pub fn dyson_partial_k(
    bg: &BackgroundParams,
    k: &WaveVector,
    window: &TimeWindow,
    order: usize,
    qc: &QuadControl,
) -> Result<Evaluation> {
    window.validate_for(bg)?;
    if order > 3 {
        return Err(Error::Domain(format!("Dyson order must be at most 3, got {order}")));
    }
    let kappa = k.kappa();
    if order == 0 || kappa == 0.0 || window.t == window.t_a {
        return Ok(Evaluation::new(Propagator::identity()));
    }
    let mut i = [C64::new(0.0, 0.0); 4];
    for (n, slot) in i.iter_mut().enumerate().skip(1).take(order) {
        *slot = dyson_in(bg, k, n, window, qc)?;
    }
    let e = k.k_plus(bg, window.t_tilde_a) / kappa;
    // M² = −1, so odd powers feed k12 and even powers k11.
    let p = Propagator::new(1.0 - i[2], e * (i[1] - i[3]));
    Ok(Evaluation::new(p).with("order", order as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_antihermitian() {
        let bg = BackgroundParams::new(0.7, 0.2).unwrap();
        let k = WaveVector::new(0.3, -1.2, 2.0).unwrap();
        let o = omega_matrix(&bg, &k, 0.1, 1.7).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((o[i][j] + o[j][i].conj()).norm() < 1e-15);
            }
        }
        let k = WaveVector::new(0.0, 1.0, 0.0).unwrap();
        let o = omega_matrix(&BackgroundParams::radiation(), &k, 0.0, 1.0).unwrap();
        assert!((o[0][1] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((o[1][0] + C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rotation_example() {
        let t = (std::f64::consts::PI / 20.0).powi(2);
        let k = WaveVector::new(3.0, 4.0, 0.0).unwrap();
        let w = TimeWindow::from_origin(t).unwrap();
        let p = evolve_ode(&BackgroundParams::radiation(), &k, &w, &OdeControl::default())
            .unwrap()
            .propagator;
        assert!(p.k11.norm() < 1e-9);
        assert!((p.k12 - C64::new(0.8, 0.6)).norm() < 1e-9);
    }

    #[test]
    fn trivial_windows() {
        let bg = BackgroundParams::new(0.8, 0.3).unwrap();
        let w = TimeWindow::new(0.0, 1.0, 1.0).unwrap();
        let k = WaveVector::new(1.0, 2.0, 3.0).unwrap();
        let p = evolve_ode(&bg, &k, &w, &OdeControl::default()).unwrap().propagator;
        assert_eq!(p, Propagator::identity());
        let k = WaveVector::new(0.0, 0.0, 3.0).unwrap();
        let w = TimeWindow::from_origin(4.0).unwrap();
        assert_eq!(evolve_ode(&bg, &k, &w, &OdeControl::default()).unwrap().propagator, Propagator::identity());
        assert_eq!(
            dyson_partial_k(&bg, &k, &w, 3, &QuadControl::default()).unwrap().propagator,
            Propagator::identity()
        );
    }

    #[test]
    fn first_dyson_term_without_phase() {
        let bg = BackgroundParams::new(0.8, 0.3).unwrap();
        let k = WaveVector::new(0.6, 0.8, 0.0).unwrap();
        let w = TimeWindow::from_origin(2.0).unwrap();
        let i1 = dyson_in(&bg, &k, 1, &w, &QuadControl::default()).unwrap();
        let d = bg.delta();
        let expect = bg.s_of_t(2.0).powf(d) / (bg.mu * d);
        assert!((i1 - C64::new(expect, 0.0)).norm() < 1e-12 * expect);
    }

    #[test]
    fn first_dyson_term_radiation() {
        // δ = 1: I_1 = (κ s/μ) ∫_0^1 e^{−iaσ} dσ
        let bg = BackgroundParams::radiation();
        let k = WaveVector::new(0.6, 0.8, 1.3).unwrap();
        let w = TimeWindow::from_origin(2.0).unwrap();
        let i1 = dyson_in(&bg, &k, 1, &w, &QuadControl::default()).unwrap();
        let s = 2.0_f64.sqrt();
        let a = 2.0 * 1.3 * s / 0.5;
        let expect = (s / 0.5) * (1.0 - C64::new(0.0, -a).exp()) / C64::new(0.0, a);
        assert!((i1 - expect).norm() < 1e-12);
    }
}
