use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::background::{BackgroundParams, TimeWindow, WaveVector};
use crate::closedform::{asymptotic_propagator, closed_propagator, short_time_propagator};
use crate::error::{Error, Result};
use crate::exact_models::{rw_propagator, stiff_propagator};
use crate::ode::OdeControl;
use crate::oracle::{dyson_partial_k, evolve_ode};
use crate::propagator::{Evaluation, Propagator};
use crate::quad::QuadControl;
use crate::specfun::SeriesControl;

/// How to compute the evolution operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Adaptive Runge–Kutta reference integration.
    Ode,
    /// Bessel closed form (`δ < 1`).
    Closed,
    /// Dyson partial sum of the given order (`≤ 3`).
    Dyson(usize),
    /// Exact radiation-like model (`μ = ν = 1/2`).
    Rw,
    /// Exact stiff model (`μ = 1, ν = 1/2`).
    Stiff,
    /// Leading short-time form.
    Short,
    /// Large-time form of the stiff model.
    Asymptotic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Ode => f.write_str("ode"),
            Method::Closed => f.write_str("closed"),
            Method::Dyson(n) => write!(f, "dyson{n}"),
            Method::Rw => f.write_str("rw"),
            Method::Stiff => f.write_str("stiff"),
            Method::Short => f.write_str("short"),
            Method::Asymptotic => f.write_str("asymptotic"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts `ode`, `closed`, `rw`, `stiff`, `short`, `asymptotic`, and
    /// `dysonN` / `dyson:N` with `N ∈ {0, 1, 2, 3}`.
    fn from_str(s: &str) -> Result<Self> {
        let m = match s.trim().to_ascii_lowercase().as_str() {
            "ode" => Method::Ode,
            "closed" => Method::Closed,
            "rw" => Method::Rw,
            "stiff" => Method::Stiff,
            "short" => Method::Short,
            "asymptotic" => Method::Asymptotic,
            other => {
                let order = other
                    .strip_prefix("dyson")
                    .map(|r| r.trim_start_matches(':'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&n| n <= 3);
                match order {
                    Some(n) => Method::Dyson(n),
                    None => {
                        return Err(Error::Config {
                            line: None,
                            field: "method".into(),
                            message: format!(
                                "unknown method `{s}` (expected ode, closed, dyson0..dyson3, rw, stiff, short, asymptotic)"
                            ),
                        })
                    }
                }
            }
        };
        Ok(m)
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Solver controls for every method.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Controls {
    pub ode: OdeControl,
    pub quad: QuadControl,
    pub series: SeriesControl,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionRequest {
    pub background: BackgroundParams,
    pub k: WaveVector,
    pub window: TimeWindow,
    pub method: Method,
    pub controls: Controls,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionResult {
    pub method: Method,
    pub propagator: Propagator,
    pub diagnostics: BTreeMap<String, f64>,
    pub regime_warnings: Vec<String>,
}

fn require_origin(window: &TimeWindow, method: Method) -> Result<()> {
    if window.t_a != 0.0 || window.t_tilde_a != 0.0 {
        return Err(Error::Domain(format!("method {method} requires t_a = t_tilde_a = 0")));
    }
    Ok(())
}

/// Checks method preconditions and evaluates the request.
pub fn evolve(req: &EvolutionRequest) -> Result<EvolutionResult> {
    let EvolutionRequest { background: bg, k, window: w, method, controls: c } = *req;
    bg.validate()?;
    k.validate()?;
    w.validate_for(&bg)?;
    let eval = match method {
        Method::Ode => evolve_ode(&bg, &k, &w, &c.ode)?,
        Method::Closed => closed_propagator(&bg, &k, &w, &c.quad, &c.series)?,
        Method::Dyson(n) => dyson_partial_k(&bg, &k, &w, n, &c.quad)?,
        Method::Rw => Evaluation::new(rw_propagator(&bg, &k, &w)?),
        Method::Stiff => {
            if !bg.is_stiff() {
                return Err(Error::domain("method stiff requires mu = 1, nu = 1/2"));
            }
            Evaluation::new(stiff_propagator(&k, &w, &c.series)?)
        }
        Method::Short => {
            require_origin(&w, method)?;
            short_time_propagator(&bg, &k, w.t)?
        }
        Method::Asymptotic => {
            require_origin(&w, method)?;
            asymptotic_propagator(&bg, &k, w.t)?
        }
    };
    let mut diagnostics = eval.diagnostics;
    diagnostics.insert("unitarity_defect".into(), eval.propagator.unitarity_defect());
    Ok(EvolutionResult {
        method,
        propagator: eval.propagator,
        diagnostics,
        regime_warnings: eval.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in [
            Method::Ode,
            Method::Closed,
            Method::Dyson(2),
            Method::Rw,
            Method::Stiff,
            Method::Short,
            Method::Asymptotic,
        ] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert_eq!("dyson:3".parse::<Method>().unwrap(), Method::Dyson(3));
        assert!("dyson4".parse::<Method>().is_err());
        assert!("magnus".parse::<Method>().is_err());
    }

    #[test]
    fn dispatch_checks_preconditions() {
        let req = EvolutionRequest {
            background: BackgroundParams::radiation(),
            k: WaveVector::new(0.3, 0.2, 1.0).unwrap(),
            window: TimeWindow::new(0.0, 0.5, 2.0).unwrap(),
            method: Method::Short,
            controls: Controls::default(),
        };
        assert!(evolve(&req).is_err());
        let req = EvolutionRequest { method: Method::Stiff, ..req };
        assert!(evolve(&req).is_err());
        let req = EvolutionRequest { method: Method::Rw, ..req };
        let out = evolve(&req).unwrap();
        assert!(out.diagnostics["unitarity_defect"] < 1e-14);
    }
}
