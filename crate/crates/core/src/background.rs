//! Background exponents, comoving wave vectors and the derived quantities
//! entering every propagator.
//!
//! Times are dimensionless (in units of an arbitrary reference time) and wave
//! numbers are measured in its inverse.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Power-law exponents `(μ, ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundParams {
    pub mu: f64,
    pub nu: f64,
}

impl BackgroundParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        let bg = BackgroundParams { mu, nu };
        bg.validate()?;
        Ok(bg)
    }

    /// Radiation-like background `μ = ν = 1/2` (`δ = 1`).
    pub fn radiation() -> Self {
        BackgroundParams { mu: 0.5, nu: 0.5 }
    }

    /// Stiff-matter background `μ = 1, ν = 1/2` (`δ = 1/2`).
    pub fn stiff() -> Self {
        BackgroundParams { mu: 1.0, nu: 0.5 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::Domain(format!("mu must be finite and positive, got {}", self.mu)));
        }
        if !self.nu.is_finite() {
            return Err(Error::domain("nu must be finite"));
        }
        Ok(())
    }

    /// `δ = (1 − ν)/μ`.
    pub fn delta(&self) -> f64 {
        (1.0 - self.nu) / self.mu
    }

    /// The time variable `s = t^μ`.
    pub fn s_of_t(&self, t: f64) -> f64 {
        t.powf(self.mu)
    }

    /// `|g(t)| = t^{2(2ν + 1 − μ)}`.
    pub fn metric_det(&self, t: f64) -> f64 {
        t.powf(2.0 * (2.0 * self.nu + 1.0 - self.mu))
    }

    pub fn is_radiation(&self) -> bool {
        self.mu == 0.5 && self.nu == 0.5
    }

    pub fn is_stiff(&self) -> bool {
        self.mu == 1.0 && self.nu == 0.5
    }
}

/// Comoving wave vector `(k1, k2, k3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveVector {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl WaveVector {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        let k = WaveVector { k1, k2, k3 };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k1.is_finite() && self.k2.is_finite() && self.k3.is_finite()) {
            return Err(Error::domain("wave vector components must be finite"));
        }
        if self.k1 == 0.0 && self.k2 == 0.0 && self.k3 == 0.0 {
            return Err(Error::domain("wave vector must be non-zero"));
        }
        Ok(())
    }

    /// Transverse magnitude `κ = √(k1² + k2²)`.
    pub fn kappa(&self) -> f64 {
        self.k1.hypot(self.k2)
    }

    pub fn norm(&self) -> f64 {
        self.kappa().hypot(self.k3)
    }

    /// `sign(k3)`, zero when `k3 = 0`.
    pub fn sign_k3(&self) -> f64 {
        if self.k3 > 0.0 {
            1.0
        } else if self.k3 < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn negated(&self) -> Self {
        WaveVector { k1: -self.k1, k2: -self.k2, k3: -self.k3 }
    }

    /// `k₊ = (k2 + i k1) exp(2i k3 t̃^μ / μ)` for phase reference time `t̃`.
    pub fn k_plus(&self, bg: &BackgroundParams, t_tilde_a: f64) -> C64 {
        let phase = 2.0 * self.k3 * bg.s_of_t(t_tilde_a) / bg.mu;
        C64::new(self.k2, self.k1) * C64::from_polar(1.0, phase)
    }

    /// `k₋ = conj(k₊)`.
    pub fn k_minus(&self, bg: &BackgroundParams, t_tilde_a: f64) -> C64 {
        self.k_plus(bg, t_tilde_a).conj()
    }
}

/// Phase reference time `t̃_A`, initial time `t_A` and target time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub t_tilde_a: f64,
    pub t_a: f64,
    pub t: f64,
}

impl TimeWindow {
    /// Requires `0 <= t̃_A <= t_A <= t`; `t = t_A` denotes the empty evolution.
    pub fn new(t_tilde_a: f64, t_a: f64, t: f64) -> Result<Self> {
        let w = TimeWindow { t_tilde_a, t_a, t };
        w.validate()?;
        Ok(w)
    }

    /// Window starting at the singularity with `t̃_A = t_A = 0`.
    pub fn from_origin(t: f64) -> Result<Self> {
        Self::new(0.0, 0.0, t)
    }

    pub fn validate(&self) -> Result<()> {
        let TimeWindow { t_tilde_a, t_a, t } = *self;
        if !(t_tilde_a.is_finite() && t_a.is_finite() && t.is_finite()) {
            return Err(Error::domain("times must be finite"));
        }
        if !(0.0 <= t_tilde_a && t_tilde_a <= t_a && t_a <= t) {
            return Err(Error::Domain(format!(
                "need 0 <= t_tilde_a <= t_a <= t, got ({t_tilde_a}, {t_a}, {t})"
            )));
        }
        if t <= 0.0 {
            return Err(Error::domain("target time must be positive"));
        }
        Ok(())
    }

    /// Also checks the background-dependent condition `t_A = 0 ⇒ δ > 0`.
    pub fn validate_for(&self, bg: &BackgroundParams) -> Result<()> {
        self.validate()?;
        bg.validate()?;
        if self.t_a == 0.0 && bg.delta() <= 0.0 {
            return Err(Error::Domain(format!(
                "t_a = 0 requires delta > 0, got delta = {}",
                bg.delta()
            )));
        }
        Ok(())
    }

    /// `σ_A = (t_A / t)^μ`.
    pub fn sigma_a(&self, bg: &BackgroundParams) -> f64 {
        (self.t_a / self.t).powf(bg.mu)
    }
}

/// Derived scalars of a `(background, wave vector)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub delta: f64,
    pub kappa: f64,
    /// `η_δ = κ² / (2|k3|^{2δ})`, absent when `k3 = 0`.
    pub eta_delta: Option<f64>,
    pub sign_k3: f64,
}

pub fn derived_params(bg: &BackgroundParams, k: &WaveVector) -> DerivedParams {
    let delta = bg.delta();
    let kappa = k.kappa();
    let eta_delta = (k.k3 != 0.0).then(|| kappa * kappa / (2.0 * k.k3.abs().powf(2.0 * delta)));
    DerivedParams { delta, kappa, eta_delta, sign_k3: k.sign_k3() }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and positive, got {t}")))
    }
}

/// Physical momentum `(k1 t^{−ν}, k2 t^{−ν}, k3 t^{μ−1})`.
pub fn physical_momentum(bg: &BackgroundParams, k: &WaveVector, t: f64) -> Result<[f64; 3]> {
    check_time(t)?;
    let a = t.powf(-bg.nu);
    Ok([k.k1 * a, k.k2 * a, k.k3 * t.powf(bg.mu - 1.0)])
}

/// Negative-chirality coupling `γ(k, t) = k₊ t^{−ν} exp(−2i k3 t^μ / μ)`.
pub fn gamma_coupling(bg: &BackgroundParams, k: &WaveVector, t_tilde_a: f64, t: f64) -> Result<C64> {
    check_time(t)?;
    let phase = -2.0 * k.k3 * bg.s_of_t(t) / bg.mu;
    Ok(k.k_plus(bg, t_tilde_a) * t.powf(-bg.nu) * C64::from_polar(1.0, phase))
}

/// Arguments of the Bessel closed form at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInputs {
    pub s: f64,
    pub sigma_a: f64,
    /// `x(s) = κ s^δ / (μ(1 − δ))`.
    pub x: f64,
    /// `λ(s) = 1/2 + i k3 s / (μ(1 − δ))`.
    pub lambda: C64,
}

pub fn closed_form_inputs(
    bg: &BackgroundParams,
    k: &WaveVector,
    t_a: f64,
    t: f64,
) -> Result<ClosedFormInputs> {
    bg.validate()?;
    let delta = bg.delta();
    if delta >= 1.0 {
        return Err(Error::Domain(format!("closed form needs delta < 1, got {delta}")));
    }
    check_time(t)?;
    if !(t_a >= 0.0 && t_a <= t) {
        return Err(Error::Domain(format!("need 0 <= t_a <= t, got t_a = {t_a}, t = {t}")));
    }
    if t_a == 0.0 && delta <= 0.0 {
        return Err(Error::domain("t_a = 0 requires delta > 0"));
    }
    let s = bg.s_of_t(t);
    let denom = bg.mu * (1.0 - delta);
    Ok(ClosedFormInputs {
        s,
        sigma_a: (t_a / t).powf(bg.mu),
        x: k.kappa() * s.powf(delta) / denom,
        lambda: C64::new(0.5, k.k3 * s / denom),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_special_values() {
        assert_eq!(BackgroundParams::radiation().delta(), 1.0);
        assert_eq!(BackgroundParams::stiff().delta(), 0.5);
    }

    #[test]
    fn physical_momentum_examples() {
        let bg = BackgroundParams::radiation();
        let k = WaveVector::new(1.0, 2.0, 3.0).unwrap();
        assert_eq!(physical_momentum(&bg, &k, 4.0).unwrap(), [0.5, 1.0, 1.5]);
        let bg = BackgroundParams::new(0.7, 0.2).unwrap();
        assert_eq!(physical_momentum(&bg, &k, 1.0).unwrap(), [1.0, 2.0, 3.0]);
        let k = WaveVector::new(0.0, 0.0, 5.0).unwrap();
        assert_eq!(physical_momentum(&BackgroundParams::stiff(), &k, 7.0).unwrap(), [0.0, 0.0, 5.0]);
        assert!(physical_momentum(&bg, &k, 0.0).is_err());
    }

    #[test]
    fn derived_without_k3() {
        let k = WaveVector::new(3.0, 4.0, 0.0).unwrap();
        let d = derived_params(&BackgroundParams::stiff(), &k);
        assert_eq!(d.kappa, 5.0);
        assert_eq!(d.eta_delta, None);
        assert_eq!(d.sign_k3, 0.0);
    }

    #[test]
    fn coupling_examples() {
        let bg = BackgroundParams::new(0.8, 0.3).unwrap();
        let k = WaveVector::new(0.6, -1.1, 0.0).unwrap();
        let g = gamma_coupling(&bg, &k, 0.0, 2.5).unwrap();
        assert!((g - C64::new(-1.1, 0.6) * 2.5_f64.powf(-0.3)).norm() < 1e-15);
        let k = WaveVector::new(0.6, -1.1, 0.9).unwrap();
        let g = gamma_coupling(&bg, &k, 0.4, 2.5).unwrap();
        assert!((g.norm() - k.kappa() * 2.5_f64.powf(-0.3)).abs() < 1e-14);
    }

    #[test]
    fn closed_form_inputs_example() {
        let k = WaveVector::new(0.6, 0.8, 2.0).unwrap();
        let bg = BackgroundParams::stiff();
        let c = closed_form_inputs(&bg, &k, 0.0, 3.0).unwrap();
        assert_eq!(c.sigma_a, 0.0);
        assert!((c.lambda - C64::new(0.5, 12.0)).norm() < 1e-14);
        assert!((c.x - 2.0 * 3.0_f64.sqrt()).abs() < 1e-14);
        assert!(closed_form_inputs(&BackgroundParams::radiation(), &k, 0.0, 3.0).is_err());
    }

    #[test]
    fn window_rules() {
        assert!(TimeWindow::new(0.2, 0.1, 1.0).is_err());
        assert!(TimeWindow::new(0.0, 0.0, 0.0).is_err());
        let w = TimeWindow::new(0.0, 0.0, 1.0).unwrap();
        assert!(w.validate_for(&BackgroundParams::new(1.0, 1.2).unwrap()).is_err());
        assert!(TimeWindow::new(0.0, 0.5, 0.5).is_ok());
    }
}
