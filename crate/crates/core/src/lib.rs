//! Spinor propagators for massless Weyl fields on Bianchi I backgrounds with
//! power-law metric `ds² = dt² − t^{2ν}(dx₁² + dx₂²) − t^{2−2μ}dx₃²`.
//!
//! The crate provides:
//!
//! * [`specfun`]: complex gamma, Bessel `J` of complex order, Kummer `M` and
//!   Whittaker `W`;
//! * [`background`]: background parameters, wave vectors and derived scales;
//! * [`oracle`]: the reference ODE integrator and Dyson-series terms;
//! * [`closedform`]: the Bessel-function closed form and its short-time and
//!   asymptotic limits;
//! * [`exact_models`]: the two exactly solvable backgrounds (radiation-like
//!   and stiff);
//! * [`harness`]: request dispatch, sweeps, configuration and validation.

pub mod background;
pub mod closedform;
mod error;
pub mod exact_models;
pub mod harness;
pub mod ode;
pub mod oracle;
mod propagator;
pub mod quad;
pub mod specfun;

pub use num_complex::Complex64 as C64;

pub use background::{BackgroundParams, TimeWindow, WaveVector};
pub use error::{Error, Result};
pub use exact_models::{StiffParams, StiffRegime};
pub use ode::OdeControl;
pub use propagator::{Evaluation, Propagator, SpinorPair};
pub use quad::QuadControl;
pub use specfun::SeriesControl;
