//! The Bessel-function closed form of the evolution operator and its
//! short-time and large-time reductions.
//!
//! With `x = κ s^δ/(μ(1−δ))`, `λ = 1/2 + i k3 s/(μ(1−δ))` and
//! `X(z) = x e^{(1−δ)z}`:
//!
//! ```text
//! K11 = 1 + i(1−δ) x ∫₀^{1−σ_A} (1−z)^{δ−1} V(z) dz
//! K12 = (k₊/κ)(1−δ) x e^{−2ik3 s/μ} ∫₀^{1−σ_A} (1−z)^{δ−1} U(z) dz
//! V = i e^{(1−δ)λ* z} R(z)/Z(0),   U = e^{(1−δ)λ z} Z(z)/Z(0)
//! R = J_{−λ}(x) J_λ(X) − J_λ(x) J_{−λ}(X)
//! Z = J_{−λ}(x) J_{−λ*}(X) + J_λ(x) J_{λ*}(X)
//! ```
//!
//! For real arguments `J_{λ*}(X) = conj(J_λ(X))`, so each quadrature node
//! costs two Bessel evaluations. The weight `(1−z)^{δ−1}` is removed by the
//! substitution `w = (1−z)^δ` when `δ > 0`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::background::{closed_form_inputs, BackgroundParams, TimeWindow, WaveVector};
use crate::error::{Error, Result};
use crate::propagator::{Evaluation, Propagator};
use crate::quad::{self, QuadControl};
use crate::specfun::{bessel_j_scaled, SeriesControl};
use crate::C64;

/// Smallest accepted `1 − δ`; the prefactor `x ∝ 1/(1−δ)` and the order
/// `λ` blow up as `δ → 1`.
pub const MIN_ONE_MINUS_DELTA: f64 = 1e-3;

/// Coupling `κ s^δ/(μδ)` above which the short-time form is flagged.
pub const SHORT_TIME_LIMIT: f64 = 0.1;

/// Smallest `2|k3| s/μ` accepted by the asymptotic form.
pub const ASYMPTOTIC_MIN_PHASE: f64 = 10.0;

const MAX_PANELS: usize = 200_000;

/// The closed-form propagator `K(t | t_A)` for `δ < 1`.
///
/// Diagnostics: `quadrature_error_estimate` (absolute, on the matrix
/// entries), `panels`, `unitarity_defect` (the closed form is approximate
/// and not exactly unitary).
pub fn closed_propagator(
    bg: &BackgroundParams,
    k: &WaveVector,
    window: &TimeWindow,
    qc: &QuadControl,
    sc: &SeriesControl,
) -> Result<Evaluation> {
    window.validate_for(bg)?;
    k.validate()?;
    qc.validate()?;
    sc.validate()?;
    let delta = bg.delta();
    // The boundary itself is admitted; the tolerance absorbs rounding in δ.
    if !(1.0 - delta >= MIN_ONE_MINUS_DELTA * (1.0 - 1e-9)) {
        return Err(Error::Domain(format!(
            "closed form needs 1 - delta >= {MIN_ONE_MINUS_DELTA}, got delta = {delta}"
        )));
    }
    let kappa = k.kappa();
    if kappa == 0.0 || window.t == window.t_a {
        return Ok(Evaluation::new(Propagator::identity())
            .with("quadrature_error_estimate", 0.0)
            .with("panels", 0.0));
    }
    let inp = closed_form_inputs(bg, k, window.t_a, window.t)?;
    let (x, lam, s) = (inp.x, inp.lambda, inp.s);
    let one_m = 1.0 - delta;
    let jp = bessel_j_scaled(lam, x, sc)?;
    let jm = bessel_j_scaled(-lam, x, sc)?;
    let z0 = jm * jm.conj() + jp * jp.conj();
    let z0_scale = jm.norm_sqr() + jp.norm_sqr();
    if !(z0.norm() >= 1e-13 * z0_scale) || z0_scale == 0.0 {
        return Err(Error::Domain(format!("Z(0) vanishes at x = {x}, λ = {lam}")));
    }
    let lam_c = lam.conj();
    let z_max = 1.0 - inp.sigma_a;
    let i = C64::i();
    let integrand = |z: f64| -> Result<[C64; 2]> {
        let big_x = x * (one_m * z).exp();
        let bp = bessel_j_scaled(lam, big_x, sc)?;
        let bm = bessel_j_scaled(-lam, big_x, sc)?;
        let r = jm * bp - jp * bm;
        let zz = jm * bm.conj() + jp * bp.conj();
        let v = i * (one_m * lam_c * z).exp() * r / z0;
        let u = (one_m * lam * z).exp() * zz / z0;
        Ok([v, u])
    };
    let freq = 2.0 * k.k3.abs() * s / bg.mu + one_m * x * (one_m * z_max).exp();
    let panels = ((freq * z_max / FRAC_PI_2).ceil() as usize).clamp(1, MAX_PANELS);
    let res = if delta > 0.0 {
        let z_nodes = quad::uniform_breakpoints(0.0, z_max, panels);
        let mut w_nodes: Vec<f64> = z_nodes.iter().map(|z| (1.0 - z).powf(delta)).collect();
        w_nodes.reverse();
        w_nodes[0] = inp.sigma_a.powf(delta);
        *w_nodes.last_mut().unwrap() = 1.0;
        quad::integrate(
            |w: f64| {
                let z = (1.0 - w.powf(1.0 / delta)).max(0.0);
                let [v, u] = integrand(z)?;
                Ok([v / delta, u / delta])
            },
            &w_nodes,
            qc,
        )?
    } else {
        let z_nodes = quad::uniform_breakpoints(0.0, z_max, panels);
        quad::integrate(
            |z: f64| {
                let wgt = (1.0 - z).powf(delta - 1.0);
                let [v, u] = integrand(z)?;
                Ok([v * wgt, u * wgt])
            },
            &z_nodes,
            qc,
        )?
    };
    let pref = one_m * x;
    let e = k.k_plus(bg, window.t_tilde_a) / kappa;
    let k11 = 1.0 + i * pref * res.value[0];
    let k12 = e * pref * C64::from_polar(1.0, -2.0 * k.k3 * s / bg.mu) * res.value[1];
    let p = Propagator::new(k11, k12);
    if !p.is_finite() {
        return Err(Error::NonFinite("closed-form propagator is not finite".into()));
    }
    let mut out = Evaluation::new(p)
        .with("quadrature_error_estimate", pref * res.error)
        .with("panels", panels as f64)
        .with("integrand_evaluations", res.evaluations as f64);
    if delta <= 0.0 {
        out = out.warn(format!(
            "delta = {delta} <= 0: accuracy of the closed form is not quantified here"
        ));
    }
    Ok(out)
}

/// Leading short-time form for `t_A = t̃_A = 0`:
/// `K = [[1, k₊ s^δ/(μδ)], [−k₋ s^δ/(μδ), 1]]`.
pub fn short_time_propagator(bg: &BackgroundParams, k: &WaveVector, t: f64) -> Result<Evaluation> {
    bg.validate()?;
    k.validate()?;
    let delta = bg.delta();
    if delta <= 0.0 {
        return Err(Error::Domain(format!("short-time form needs delta > 0, got {delta}")));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    let g = bg.s_of_t(t).powf(delta) / (bg.mu * delta);
    let p = Propagator::new(C64::new(1.0, 0.0), C64::new(k.k2, k.k1) * g);
    let coupling = k.kappa() * g;
    let mut out = Evaluation::new(p).with("coupling", coupling);
    if coupling > SHORT_TIME_LIMIT {
        out = out.warn(format!(
            "short-time coupling {coupling:.3e} exceeds {SHORT_TIME_LIMIT}; the expansion is unreliable"
        ));
    }
    Ok(out)
}

/// Large-time form for the stiff background (`μ = 1, ν = 1/2`, `t_A = 0`):
///
/// ```text
/// K11 = 1 + √π|η| e^{−2ik3 t}/√(2ik3 t)
/// K12 = (k2 + ik1)/√(−2ik3) · (−i√π sign k3 + e^{−2ik3 t}/√(−2ik3 t))
/// ```
///
/// with `η = κ²/(2k3)`; terms of relative order `η` are dropped.
pub fn asymptotic_propagator(bg: &BackgroundParams, k: &WaveVector, t: f64) -> Result<Evaluation> {
    if !bg.is_stiff() {
        return Err(Error::domain("asymptotic form requires mu = 1, nu = 1/2"));
    }
    k.validate()?;
    if k.k3 == 0.0 {
        return Err(Error::domain("asymptotic form requires k3 != 0"));
    }
    let phase = 2.0 * k.k3.abs() * bg.s_of_t(t) / bg.mu;
    if !(phase >= ASYMPTOTIC_MIN_PHASE) {
        return Err(Error::Domain(format!(
            "asymptotic form needs 2|k3|s/mu >= {ASYMPTOTIC_MIN_PHASE}, got {phase}"
        )));
    }
    let i = C64::i();
    let eta = k.kappa().powi(2) / (2.0 * k.k3);
    let osc = C64::from_polar(1.0, -2.0 * k.k3 * t);
    let sp = PI.sqrt();
    let k11 = 1.0 + sp * eta.abs() * osc / (2.0 * i * k.k3 * t).sqrt();
    let m = -2.0 * i * k.k3;
    let k12 = C64::new(k.k2, k.k1) / m.sqrt() * (-i * sp * k.sign_k3() + osc / (m * t).sqrt());
    Ok(Evaluation::new(Propagator::new(k11, k12)).with("eta", eta))
}

/// Positive-chirality version of a negative-chirality propagator routine:
/// `K⁺(k) = K⁻(−k)`.
pub fn chirality_flip<T, F>(k: &WaveVector, op: F) -> Result<T>
where
    F: FnOnce(&WaveVector) -> Result<T>,
{
    op(&k.negated())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_inputs_give_identity() {
        let bg = BackgroundParams::stiff();
        let qc = QuadControl::default();
        let sc = SeriesControl::default();
        let k = WaveVector::new(0.0, 0.0, 2.0).unwrap();
        let w = TimeWindow::from_origin(3.0).unwrap();
        assert_eq!(closed_propagator(&bg, &k, &w, &qc, &sc).unwrap().propagator, Propagator::identity());
        let k = WaveVector::new(1.0, 0.5, 2.0).unwrap();
        let w = TimeWindow::new(0.0, 3.0, 3.0).unwrap();
        assert_eq!(closed_propagator(&bg, &k, &w, &qc, &sc).unwrap().propagator, Propagator::identity());
    }

    #[test]
    fn delta_range() {
        let qc = QuadControl::default();
        let sc = SeriesControl::default();
        let k = WaveVector::new(1.0, 0.5, 2.0).unwrap();
        let w = TimeWindow::from_origin(1.0).unwrap();
        let r = closed_propagator(&BackgroundParams::radiation(), &k, &w, &qc, &sc);
        assert!(matches!(r, Err(Error::Domain(_))));
        let bg = BackgroundParams::new(0.5, 0.5 + 2e-4).unwrap();
        assert!(matches!(closed_propagator(&bg, &k, &w, &qc, &sc), Err(Error::Domain(_))));
        let bg = BackgroundParams::new(0.8, 1.3).unwrap();
        let w = TimeWindow::new(0.0, 0.5, 1.5).unwrap();
        let out = closed_propagator(&bg, &k, &w, &qc, &sc).unwrap();
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn short_time_entries() {
        let bg = BackgroundParams::new(0.8, 0.4).unwrap();
        let k = WaveVector::new(0.0, 0.3, 1.0).unwrap();
        let out = short_time_propagator(&bg, &k, 0.0).unwrap();
        assert_eq!(out.propagator, Propagator::identity());
        let out = short_time_propagator(&bg, &k, 0.01).unwrap();
        let d = bg.delta();
        let expect = 0.3 * 0.01_f64.powf(0.8 * d) / (0.8 * d);
        assert!((out.propagator.k12 - C64::new(expect, 0.0)).norm() < 1e-16);
        assert!(out.warnings.is_empty());
        assert_eq!(short_time_propagator(&bg, &k, 50.0).unwrap().warnings.len(), 1);
    }

    #[test]
    fn asymptotic_limits() {
        let bg = BackgroundParams::stiff();
        let k = WaveVector::new(0.0, 1e-8, 2.0).unwrap();
        let p = asymptotic_propagator(&bg, &k, 40.0).unwrap().propagator;
        assert!((p.k11 - 1.0).norm() < 1e-15);
        let k = WaveVector::new(0.3, 0.4, -1.5).unwrap();
        let p = asymptotic_propagator(&bg, &k, 1e8).unwrap().propagator;
        let expect = PI.sqrt() * 0.5 / (2.0 * 1.5_f64).sqrt();
        assert!((p.k12.norm() - expect).abs() < 1e-4);
        assert!(asymptotic_propagator(&bg, &k, 1.0).is_err());
    }

    #[test]
    fn flip_is_involution() {
        let k = WaveVector::new(0.3, -0.4, 1.1).unwrap();
        let back = chirality_flip(&k, |k1| chirality_flip(k1, |k2| Ok(*k2))).unwrap();
        assert_eq!(back, k);
    }
}
