//! Special functions with complex parameters.
//!
//! Series are summed in double-double complex arithmetic so that moderate
//! cancellation (up to about `1e15`) costs no accuracy in the final `f64`.

mod bessel;
mod dd;
mod gamma;
mod kummer;
mod whittaker;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bessel::{bessel_j, bessel_j_scaled};
pub use gamma::{complex_gamma, ln_gamma, recip_gamma};
pub use kummer::kummer_m;
pub use whittaker::whittaker_w;

/// Truncation controls shared by all series evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeriesControl {
    /// Relative size of the last retained term.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Argument modulus above which asymptotic expansions are tried first.
    pub asymptotic_switch: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 500,
            asymptotic_switch: 25.0,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::domain("series rel_tol must lie in (0, 1)"));
        }
        if self.max_terms < 4 {
            return Err(Error::domain("series max_terms must be at least 4"));
        }
        if !(self.asymptotic_switch > 0.0) {
            return Err(Error::domain("asymptotic_switch must be positive"));
        }
        Ok(())
    }
}

pub(crate) fn is_nonpositive_integer(z: crate::C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

pub(crate) fn check_finite(what: &str, z: crate::C64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} is not finite")))
    }
}
