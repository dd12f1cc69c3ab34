use serde::Serialize;

use crate::background::{BackgroundParams, WaveVector};
use crate::error::{Error, Result};
use crate::propagator::SpinorPair;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chirality {
    Negative,
    Positive,
}

impl Chirality {
    /// The `∓` sign: `−1` for negative, `+1` for positive chirality.
    pub fn sign(self) -> f64 {
        match self {
            Chirality::Negative => -1.0,
            Chirality::Positive => 1.0,
        }
    }
}

/// Four-component field value at one spacetime point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BispinorSample {
    pub position: [f64; 3],
    pub t: f64,
    pub components: [C64; 4],
}

/// Rebuilds the bispinor from a reduced Weyl spinor `φ`.
///
/// `ϕ_J = |g|^{−1/4} exp(∓(−1)^J i (k3/μ)(s − s̃_A)) φ_J` with
/// `|g| = t^{2(2ν+1−μ)}`, and the bispinor is `c e^{ik·x} (ϕ, ∓ϕ)`, the upper
/// sign belonging to negative chirality.
#[allow(clippy::too_many_arguments)]
pub fn reconstruct_bispinor(
    bg: &BackgroundParams,
    k: &WaveVector,
    chirality: Chirality,
    phi: &SpinorPair,
    x: [f64; 3],
    t: f64,
    t_tilde_a: f64,
    c_norm: C64,
) -> Result<BispinorSample> {
    bg.validate()?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("time must be finite and positive, got {t}")));
    }
    let sign = chirality.sign();
    let amp = bg.metric_det(t).powf(-0.25);
    let arg = k.k3 / bg.mu * (bg.s_of_t(t) - bg.s_of_t(t_tilde_a));
    // The ∓ is −sign; J = 1 carries (−1)^J = −1.
    let v1 = amp * C64::from_polar(1.0, -sign * arg) * phi.phi1;
    let v2 = amp * C64::from_polar(1.0, sign * arg) * phi.phi2;
    let wave = c_norm * C64::from_polar(1.0, k.k1 * x[0] + k.k2 * x[1] + k.k3 * x[2]);
    let (u1, u2) = (wave * v1, wave * v2);
    Ok(BispinorSample { position: x, t, components: [u1, u2, sign * u1, sign * u2] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_determinants() {
        assert!((BackgroundParams::radiation().metric_det(2.0) - 8.0).abs() < 1e-14);
        assert!((BackgroundParams::stiff().metric_det(2.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn chirality_structure() {
        let bg = BackgroundParams::new(0.7, 0.3).unwrap();
        let k = WaveVector::new(0.2, 0.4, -1.0).unwrap();
        let phi = SpinorPair::new(C64::new(0.3, 0.1), C64::new(-0.2, 0.5));
        let c = C64::new(1.0, 0.0);
        let neg = reconstruct_bispinor(&bg, &k, Chirality::Negative, &phi, [0.1, 0.2, 0.3], 1.5, 0.0, c).unwrap();
        assert_eq!(neg.components[2], -neg.components[0]);
        assert_eq!(neg.components[3], -neg.components[1]);
        let pos = reconstruct_bispinor(&bg, &k, Chirality::Positive, &phi, [0.1, 0.2, 0.3], 1.5, 0.0, c).unwrap();
        assert_eq!(pos.components[2], pos.components[0]);
        assert!(reconstruct_bispinor(&bg, &k, Chirality::Positive, &phi, [0.0; 3], 0.0, 0.0, c).is_err());
    }

    #[test]
    fn stiff_phase_is_removed() {
        // For μ = 1, ν = 1/2 the reduced φ1 carries e^{−ik3 t}; the
        // reconstruction removes it and divides by √t.
        let bg = BackgroundParams::stiff();
        let k = WaveVector::new(0.0, 0.0, 1.3).unwrap();
        let t = 2.0;
        let phi = SpinorPair::new(C64::from_polar(1.0, -1.3 * t), C64::new(0.0, 0.0));
        let b = reconstruct_bispinor(&bg, &k, Chirality::Negative, &phi, [0.0; 3], t, 0.0, C64::new(1.0, 0.0))
            .unwrap();
        assert!((b.components[0] - C64::new(1.0 / t.sqrt(), 0.0)).norm() < 1e-15);
    }
}
