use std::collections::BTreeMap;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::C64;

/// Two-component Weyl spinor `(φ1, φ2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorPair {
    pub phi1: C64,
    pub phi2: C64,
}

impl SpinorPair {
    pub fn new(phi1: C64, phi2: C64) -> Self {
        SpinorPair { phi1, phi2 }
    }

    pub fn norm(&self) -> f64 {
        self.phi1.norm().hypot(self.phi2.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.phi1, self.phi2].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Evolution operator `K = [[k11, k12], [−conj(k12), conj(k11)]]`.
///
/// Only the first row is stored; the second follows from the structure, which
/// is closed under multiplication. Exact propagators are unitary
/// (`|k11|² + |k12|² = 1`); approximations such as the Bessel closed form or
/// truncated Dyson sums are not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Propagator {
    pub k11: C64,
    pub k12: C64,
}

impl Propagator {
    pub fn new(k11: C64, k12: C64) -> Self {
        Propagator { k11, k12 }
    }

    pub fn identity() -> Self {
        Propagator::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn k21(&self) -> C64 {
        -self.k12.conj()
    }

    pub fn k22(&self) -> C64 {
        self.k11.conj()
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [[self.k11, self.k12], [self.k21(), self.k22()]]
    }

    /// `det K = |k11|² + |k12|²`.
    pub fn det(&self) -> f64 {
        self.k11.norm_sqr() + self.k12.norm_sqr()
    }

    /// `| |k11|² + |k12|² − 1 |`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.det() - 1.0).abs()
    }

    pub fn apply(&self, phi: &SpinorPair) -> SpinorPair {
        SpinorPair {
            phi1: self.k11 * phi.phi1 + self.k12 * phi.phi2,
            phi2: self.k21() * phi.phi1 + self.k22() * phi.phi2,
        }
    }

    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &Propagator) -> f64 {
        (self.k11 - other.k11).norm().max((self.k12 - other.k12).norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.k11, self.k12].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Mul for Propagator {
    type Output = Propagator;

    fn mul(self, rhs: Propagator) -> Propagator {
        Propagator {
            k11: self.k11 * rhs.k11 + self.k12 * rhs.k21(),
            k12: self.k11 * rhs.k12 + self.k12 * rhs.k22(),
        }
    }
}

/// A propagator together with solver diagnostics and regime warnings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub propagator: Propagator,
    pub diagnostics: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

impl Evaluation {
    pub fn new(propagator: Propagator) -> Self {
        let mut diagnostics = BTreeMap::new();
        diagnostics.insert("unitarity_defect".to_string(), propagator.unitarity_defect());
        Evaluation { propagator, diagnostics, warnings: Vec::new() }
    }

    pub(crate) fn with(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub(crate) fn warn(mut self, message: impl Into<String>) -> Self {
        self.warnings.push(message.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_full_matrices() {
        let a = Propagator::new(C64::new(0.3, -0.2), C64::new(0.5, 0.7));
        let b = Propagator::new(C64::new(-0.1, 0.9), C64::new(0.2, -0.4));
        let p = (a * b).matrix();
        let (ma, mb) = (a.matrix(), b.matrix());
        for i in 0..2 {
            for j in 0..2 {
                let e = ma[i][0] * mb[0][j] + ma[i][1] * mb[1][j];
                assert!((p[i][j] - e).norm() < 1e-15);
            }
        }
        assert!(((a * b).det() - a.det() * b.det()).abs() < 1e-15);
    }
}
