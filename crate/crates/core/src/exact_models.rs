//! Exactly solvable backgrounds used as ground truth: the radiation-like
//! model `μ = ν = 1/2` and the stiff-matter model `μ = 1, ν = 1/2`.
//!
//! Fractional powers `(±2ik3 t)^p` are computed as `exp(p Log(±2ik3 t))` with
//! the principal logarithm, matching [`whittaker_w`].

use std::f64::consts::PI;

use serde::Serialize;

use crate::background::{BackgroundParams, TimeWindow, WaveVector};
use crate::closedform::asymptotic_propagator;
use crate::error::{Error, Result};
use crate::propagator::Propagator;
use crate::specfun::{recip_gamma, whittaker_w, SeriesControl};
use crate::C64;

pub use crate::propagator::SpinorPair;

/// Upper end of the short-time regime, in units of `|k3| t`.
pub const SHORT_REGIME_MAX: f64 = 0.05;
/// Lower end of the asymptotic regime, in units of `|k3| t`.
pub const ASYMPTOTIC_REGIME_MIN: f64 = 20.0;

/// Stiff-model parameters: signed `η = κ²/(2k3)` and `k3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StiffParams {
    pub eta: f64,
    pub k3: f64,
}

impl StiffParams {
    pub fn new(k: &WaveVector) -> Result<Self> {
        k.validate()?;
        if k.k3 == 0.0 {
            return Err(Error::domain("stiff model requires k3 != 0"));
        }
        Ok(StiffParams { eta: k.kappa().powi(2) / (2.0 * k.k3), k3: k.k3 })
    }
}

/// Which closed-form expansion of the stiff solutions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StiffRegime {
    /// Leading terms for `|k3| t ≪ 1`.
    Short,
    /// Leading terms for `|k3| t ≫ 1`.
    Asymptotic,
    /// Exact values at `t = 0`.
    Initial,
}

fn check_radiation(bg: &BackgroundParams) -> Result<()> {
    if bg.is_radiation() {
        Ok(())
    } else {
        Err(Error::domain("radiation model requires mu = nu = 1/2"))
    }
}

fn check_branch(j: u8) -> Result<()> {
    if j == 1 || j == 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("solution branch must be 1 or 2, got {j}")))
    }
}

/// `K(t | t_A)` for `μ = ν = 1/2`, with `|k|` the full wave number and
/// `Δ = √t − √t_A`:
///
/// ```text
/// K11 = e^{−2ik3 Δ} (cos 2|k|Δ + i (k3/|k|) sin 2|k|Δ)
/// K12 = (k₊(t̃_A)/|k|) e^{−2ik3(√t + √t_A)} sin 2|k|Δ
/// ```
pub fn rw_propagator(bg: &BackgroundParams, k: &WaveVector, window: &TimeWindow) -> Result<Propagator> {
    check_radiation(bg)?;
    k.validate()?;
    window.validate()?;
    let kn = k.norm();
    let (rt, ra) = (window.t.sqrt(), window.t_a.sqrt());
    let d = rt - ra;
    let (sin, cos) = (2.0 * kn * d).sin_cos();
    let k11 = C64::from_polar(1.0, -2.0 * k.k3 * d) * C64::new(cos, k.k3 / kn * sin);
    let k12 = k.k_plus(bg, window.t_tilde_a) / kn * C64::from_polar(sin, -2.0 * k.k3 * (rt + ra));
    Ok(Propagator::new(k11, k12))
}

/// Initial spinor at `t_A` and the evolved spinor at `t` of the radiation
/// model, branch `j`:
///
/// ```text
/// φ(t_A) = (e^{−4ik3√t_A}, i c_j / k₊),     c_j = (−1)^j |k| sign k3 − k3
/// φ(t)   = (e^{−4ik3√t_A} e^{2i c_j Δ}, i c_j / k₊ · e^{2i d_j Δ}),   d_j = (−1)^j |k| sign k3 + k3
/// ```
pub fn rw_solution_fixture(
    bg: &BackgroundParams,
    k: &WaveVector,
    window: &TimeWindow,
    j: u8,
) -> Result<(SpinorPair, SpinorPair)> {
    check_radiation(bg)?;
    check_branch(j)?;
    k.validate()?;
    window.validate()?;
    if k.k3 == 0.0 {
        return Err(Error::domain("radiation fixture requires k3 != 0"));
    }
    let kp = k.k_plus(bg, window.t_tilde_a);
    if kp.norm() == 0.0 {
        return Err(Error::domain("radiation fixture requires k1, k2 not both zero"));
    }
    let sign = if j == 1 { -1.0 } else { 1.0 };
    let kn = k.norm();
    let c = sign * kn * k.sign_k3() - k.k3;
    let d = sign * kn * k.sign_k3() + k.k3;
    let ra = window.t_a.sqrt();
    let delta = window.t.sqrt() - ra;
    let a = C64::from_polar(1.0, -4.0 * k.k3 * ra);
    let b = C64::i() * c / kp;
    let initial = SpinorPair::new(a, b);
    let evolved = SpinorPair::new(a * C64::from_polar(1.0, 2.0 * c * delta), b * C64::from_polar(1.0, 2.0 * d * delta));
    Ok((initial, evolved))
}

fn cpow(z: C64, p: f64) -> C64 {
    (p * z.ln()).exp()
}

/// Exact stiff-model solutions `φ^{(j)}(k, t)` for `μ = 1, ν = 1/2`,
/// `t̃_A = 0`, built from `W_{κ,1/4}(±2ik3 t)`.
pub fn stiff_solutions(k: &WaveVector, t: f64, j: u8, sc: &SeriesControl) -> Result<SpinorPair> {
    check_branch(j)?;
    let p = StiffParams::new(k)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("time must be finite and positive, got {t}")));
    }
    let i = C64::i();
    let k3 = k.k3;
    let eta = p.eta;
    let quarter = C64::new(0.25, 0.0);
    let base = -2.0 * i * k3 * t;
    let e_minus = C64::from_polar(1.0, -k3 * t);
    let e_plus = e_minus.conj();
    let out = if j == 1 {
        let kp = C64::new(k.k2, k.k1);
        if kp.norm() == 0.0 {
            return Err(Error::domain("branch 1 requires k1, k2 not both zero"));
        }
        let z = 2.0 * i * k3 * t;
        let w1 = whittaker_w(C64::new(-0.25, -eta), quarter, z, sc)?;
        let w2 = whittaker_w(C64::new(0.75, -eta), quarter, z, sc)?;
        SpinorPair::new(
            cpow(base, -0.25) * e_minus * w1,
            (-2.0 * i * k3).sqrt() / kp * cpow(base, -0.75) * e_plus * (i * eta * w1 - w2),
        )
    } else {
        let km = C64::new(k.k2, -k.k1);
        let z = base;
        let w1 = whittaker_w(C64::new(0.25, eta), quarter, z, sc)?;
        let w2 = whittaker_w(C64::new(-0.75, eta), quarter, z, sc)?;
        SpinorPair::new(
            cpow(base, -0.25) * e_minus * w1,
            i * km * k.sign_k3() / (2.0 * i * k3).sqrt()
                * cpow(base, -0.75)
                * e_plus
                * (w1 + (i * eta - 0.5) * w2),
        )
    };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite("stiff solution is not finite".into()))
    }
}

/// Closed-form expansions of the stiff solutions (`t̃_A = 0`).
///
/// Regime preconditions: `Short` needs `|k3| t <= 0.05`, `Asymptotic` needs
/// `|k3| t >= 20`, `Initial` needs `t = 0`. The asymptotic form keeps the
/// factor `(±2ik3 t)^{∓iη}`, whose modulus is `e^{π|η|/2}`.
pub fn stiff_limits(k: &WaveVector, t: f64, regime: StiffRegime, j: u8) -> Result<SpinorPair> {
    check_branch(j)?;
    let p = StiffParams::new(k)?;
    let k3 = k.k3;
    let kt = k3.abs() * t;
    match regime {
        StiffRegime::Short if !(t >= 0.0 && kt <= SHORT_REGIME_MAX) => {
            return Err(Error::Domain(format!("short regime needs |k3| t <= {SHORT_REGIME_MAX}, got {kt}")))
        }
        StiffRegime::Asymptotic if !(kt >= ASYMPTOTIC_REGIME_MIN && kt.is_finite()) => {
            return Err(Error::Domain(format!(
                "asymptotic regime needs |k3| t >= {ASYMPTOTIC_REGIME_MIN}, got {kt}"
            )))
        }
        StiffRegime::Initial if t != 0.0 => {
            return Err(Error::Domain(format!("initial regime needs t = 0, got {t}")))
        }
        _ => {}
    }
    let i = C64::i();
    let eta = p.eta;
    let sg = k.sign_k3();
    let kp = C64::new(k.k2, k.k1);
    let km = kp.conj();
    let sp = PI.sqrt();
    let rg = |z: C64| recip_gamma(z);
    let two_ik3 = 2.0 * i * k3;
    if j == 1 && kp.norm() == 0.0 {
        return Err(Error::domain("branch 1 requires k1, k2 not both zero"));
    }
    let small = if regime == StiffRegime::Initial { 0.0 } else { t };
    let out = match (regime, j) {
        (StiffRegime::Short | StiffRegime::Initial, 1) => {
            let r = 2.0 * (two_ik3 * small).sqrt();
            let pre = sp * C64::from_polar(1.0, PI / 4.0 * sg);
            SpinorPair::new(
                pre * (rg(C64::new(1.0, eta))? - r * rg(C64::new(0.5, eta))?),
                -pre * two_ik3.sqrt() / kp * (rg(C64::new(0.5, eta))? - r * rg(C64::new(0.0, eta))?),
            )
        }
        (StiffRegime::Short | StiffRegime::Initial, _) => {
            let r = 2.0 * (-two_ik3 * small).sqrt();
            SpinorPair::new(
                sp * (rg(C64::new(0.5, -eta))? - r * rg(C64::new(0.0, -eta))?),
                sp * i * km * sg / two_ik3.sqrt()
                    * (rg(C64::new(1.0, -eta))? - r * rg(C64::new(0.5, -eta))?),
            )
        }
        (StiffRegime::Asymptotic, 1) => {
            let z = two_ik3 * t;
            let pre = C64::from_polar(1.0, PI / 4.0 * sg) * (-i * eta * z.ln()).exp();
            SpinorPair::new(
                pre * C64::from_polar(1.0, -2.0 * k3 * t) / z.sqrt(),
                -pre * two_ik3.sqrt() / kp,
            )
        }
        (StiffRegime::Asymptotic, _) => {
            let z = -two_ik3 * t;
            let pre = (i * eta * z.ln()).exp();
            SpinorPair::new(
                pre,
                pre * i * km * sg / two_ik3.sqrt() * C64::from_polar(1.0, 2.0 * k3 * t) / z.sqrt(),
            )
        }
    };
    Ok(out)
}

/// Exact stiff-model propagator `K(t | t_A) = Φ(t) Φ(t_A)⁻¹`, where the
/// columns of `Φ` are the two exact solutions. For `t_A = 0` the exact
/// `t = 0` values are used. A non-zero `t̃_A` rotates `k₊` by
/// `e^{2ik3 t̃_A}`, which is absorbed into `(k1, k2)`.
pub fn stiff_propagator(k: &WaveVector, window: &TimeWindow, sc: &SeriesControl) -> Result<Propagator> {
    window.validate()?;
    StiffParams::new(k)?;
    if k.kappa() == 0.0 || window.t == window.t_a {
        return Ok(Propagator::identity());
    }
    let kp = k.k_plus(&BackgroundParams::stiff(), window.t_tilde_a);
    let kr = WaveVector { k1: kp.im, k2: kp.re, k3: k.k3 };
    let column = |t: f64, j: u8| -> Result<SpinorPair> {
        if t == 0.0 {
            stiff_limits(&kr, 0.0, StiffRegime::Initial, j)
        } else {
            stiff_solutions(&kr, t, j, sc)
        }
    };
    let (a1, a2) = (column(window.t_a, 1)?, column(window.t_a, 2)?);
    let (b1, b2) = (column(window.t, 1)?, column(window.t, 2)?);
    let det = a1.phi1 * a2.phi2 - a2.phi1 * a1.phi2;
    if det.norm() == 0.0 {
        return Err(Error::domain("stiff solutions are linearly dependent"));
    }
    // First row of Φ(t) · Φ(t_A)⁻¹.
    let k11 = (b1.phi1 * a2.phi2 - b2.phi1 * a1.phi2) / det;
    let k12 = (-b1.phi1 * a2.phi1 + b2.phi1 * a1.phi1) / det;
    Ok(Propagator::new(k11, k12))
}

/// One grid point of an asymptotic-match report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchRow {
    pub t: f64,
    pub j: u8,
    /// Largest relative modulus mismatch over the two components.
    pub modulus_error: f64,
    /// `|η| + 1/(|k3| t)`.
    pub budget: f64,
    /// Unwrapped phase of `φ_exact / φ_closed` on the dominant component.
    pub phase_residual: f64,
}

/// Comparison of the closed-form large-time propagation of the `t = 0`
/// stiff data against the exact large-time expansion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticMatchReport {
    pub eta: f64,
    pub rows: Vec<MatchRow>,
    /// Smallest `C` with `modulus_error <= C · budget` on every row.
    pub fitted_c: f64,
    /// Least-squares slope of the phase residual against `ln(2|k3| t)`, per
    /// branch; `None` for a branch that was not evaluated.
    pub phase_slope: [Option<f64>; 2],
    /// The slopes implied by the factors `(±2ik3 t)^{∓iη}`: `[−η, +η]`.
    pub expected_slope: [f64; 2],
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Propagates the `t = 0` data with the large-time closed form (constants of
/// order `η` dropped, so the data are taken at `η → 0`) and compares with the
/// exact expansion on `t_grid` (all points need `|k3| t >= 20`). Branch 1 is
/// skipped when `κ = 0`.
pub fn asymptotic_match_report(k: &WaveVector, t_grid: &[f64]) -> Result<AsymptoticMatchReport> {
    let p = StiffParams::new(k)?;
    if t_grid.len() < 2 {
        return Err(Error::domain("t_grid needs at least two points"));
    }
    let bg = BackgroundParams::stiff();
    let branches: Vec<u8> = if k.kappa() == 0.0 { vec![2] } else { vec![1, 2] };
    let i = C64::i();
    let sg = k.sign_k3();
    let kp = C64::new(k.k2, k.k1);
    let two_ik3 = 2.0 * i * k.k3;
    let sp = PI.sqrt();
    let mut rows = Vec::new();
    let mut slopes = [None, None];
    for &j in &branches {
        let phi0 = if j == 1 {
            let pre = C64::from_polar(1.0, PI / 4.0 * sg);
            SpinorPair::new(pre * sp, -pre * two_ik3.sqrt() / kp)
        } else {
            SpinorPair::new(C64::new(1.0, 0.0), sp * i * kp.conj() * sg / two_ik3.sqrt())
        };
        let dominant = if j == 1 { 1 } else { 0 };
        let mut xs = Vec::with_capacity(t_grid.len());
        let mut ys = Vec::with_capacity(t_grid.len());
        let mut prev: Option<f64> = None;
        for &t in t_grid {
            let kmat = if k.kappa() == 0.0 {
                Propagator::identity()
            } else {
                asymptotic_propagator(&bg, k, t)?.propagator
            };
            let closed = kmat.apply(&phi0);
            let exact = stiff_limits(k, t, StiffRegime::Asymptotic, j)?;
            let pairs = [(closed.phi1, exact.phi1), (closed.phi2, exact.phi2)];
            let modulus_error = pairs
                .iter()
                .filter(|(_, e)| e.norm() > 0.0)
                .map(|(c, e)| (c.norm() - e.norm()).abs() / e.norm())
                .fold(0.0, f64::max);
            let (c, e) = pairs[dominant];
            let mut phase = (e / c).arg();
            if let Some(pv) = prev {
                phase += (2.0 * PI) * ((pv - phase) / (2.0 * PI)).round();
            }
            prev = Some(phase);
            let budget = p.eta.abs() + 1.0 / (k.k3.abs() * t);
            xs.push((2.0 * k.k3.abs() * t).ln());
            ys.push(phase);
            rows.push(MatchRow { t, j, modulus_error, budget, phase_residual: phase });
        }
        slopes[(j - 1) as usize] = Some(fit_slope(&xs, &ys));
    }
    let fitted_c = rows.iter().map(|r| r.modulus_error / r.budget).fold(0.0, f64::max);
    Ok(AsymptoticMatchReport {
        eta: p.eta,
        rows,
        fitted_c,
        phase_slope: slopes,
        expected_slope: [-p.eta, p.eta],
    })
}
