//! Run configuration: a TOML file with one section per control block.
//! Every section and key is optional; an empty file yields the defaults.
//!
//! ```toml
//! [background]
//! mu = 1.0
//! nu = 0.5
//!
//! [wave_vector]
//! k1 = 1.0
//! k2 = 0.0
//! k3 = 1.0
//!
//! [window]
//! t_tilde_a = 0.0
//! t_a = 0.0
//! t = 1.0
//!
//! [method]
//! name = "ode"          # ode | closed | dyson0..dyson3 | rw | stiff | short | asymptotic
//!
//! [ode]                 # rel_tol, abs_tol, max_steps
//! [quad]                # rel_tol, abs_tol, max_subdivisions
//! [series]              # rel_tol, max_terms, asymptotic_switch
//!
//! [sweep]               # grids; an empty grid falls back to the single value above
//! mu = [0.5, 1.0]
//! t = [0.5, 1.0, 2.0]
//! methods = ["ode", "closed"]
//!
//! [validation]
//! profile = "quick"
//! seed = 20161103
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::request::{Controls, EvolutionRequest, Method};
use super::validation::Profile;
use crate::background::{BackgroundParams, TimeWindow, WaveVector};
use crate::error::{Error, Result};
use crate::ode::OdeControl;
use crate::quad::QuadControl;
use crate::specfun::SeriesControl;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BackgroundSection {
    pub mu: f64,
    pub nu: f64,
}

impl Default for BackgroundSection {
    fn default() -> Self {
        BackgroundSection { mu: 1.0, nu: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaveVectorSection {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl Default for WaveVectorSection {
    fn default() -> Self {
        WaveVectorSection { k1: 1.0, k2: 0.0, k3: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowSection {
    pub t_tilde_a: f64,
    pub t_a: f64,
    pub t: f64,
}

impl Default for WindowSection {
    fn default() -> Self {
        WindowSection { t_tilde_a: 0.0, t_a: 0.0, t: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MethodSection {
    pub name: Method,
}

impl Default for MethodSection {
    fn default() -> Self {
        MethodSection { name: Method::Ode }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    pub k3: Vec<f64>,
    pub t: Vec<f64>,
    pub methods: Vec<Method>,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            mu: vec![],
            nu: vec![],
            k1: vec![],
            k2: vec![],
            k3: vec![],
            t: vec![],
            methods: vec![Method::Ode],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidationSection {
    pub profile: Profile,
    pub seed: u64,
}

impl Default for ValidationSection {
    fn default() -> Self {
        ValidationSection { profile: Profile::Quick, seed: 20_161_103 }
    }
}

/// The complete, resolved run configuration.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub background: BackgroundSection,
    pub wave_vector: WaveVectorSection,
    pub window: WindowSection,
    pub method: MethodSection,
    pub ode: OdeControl,
    pub quad: QuadControl,
    pub series: SeriesControl,
    pub sweep: SweepSection,
    pub validation: ValidationSection,
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line of `key` inside `[section]`, if written out in the source.
fn locate(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('[') {
            current = line.trim_matches(|c| c == '[' || c == ']').trim().to_string();
            continue;
        }
        if current == section {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

fn config_error(text: &str, section: &str, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line: locate(text, section, key),
        field: format!("{section}.{key}"),
        message: message.into(),
    }
}

fn field_from_message(msg: &str) -> String {
    // toml reports e.g. "unknown field `foo`, expected one of ..." or
    // "invalid type: ..., expected f64" without naming the key otherwise.
    msg.split('`').nth(1).unwrap_or("").to_string()
}

/// Parses and validates configuration text.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| line_of_offset(text, s.start));
        let message = e.message().trim().to_string();
        Error::Config { line, field: field_from_message(&message), message }
    })?;
    cfg.validate_against(text)?;
    Ok(cfg)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

impl RunConfig {
    fn validate_against(&self, text: &str) -> Result<()> {
        let b = self.background;
        if !(b.mu.is_finite() && b.mu > 0.0) {
            return Err(config_error(text, "background", "mu", "must be finite and positive"));
        }
        if !b.nu.is_finite() {
            return Err(config_error(text, "background", "nu", "must be finite"));
        }
        if let Err(e) = self.wave_vector() {
            return Err(config_error(text, "wave_vector", "k3", e.to_string()));
        }
        if let Err(e) = self.time_window().and_then(|w| w.validate_for(&self.background())) {
            return Err(config_error(text, "window", "t", e.to_string()));
        }
        for (section, check) in [
            ("ode", self.ode.validate()),
            ("quad", self.quad.validate()),
            ("series", self.series.validate()),
        ] {
            if let Err(e) = check {
                return Err(Error::Config {
                    line: text.lines().position(|l| l.trim() == format!("[{section}]")).map(|i| i + 1),
                    field: section.into(),
                    message: e.to_string(),
                });
            }
        }
        let s = &self.sweep;
        for (key, grid) in [("mu", &s.mu), ("nu", &s.nu), ("k1", &s.k1), ("k2", &s.k2), ("k3", &s.k3), ("t", &s.t)] {
            if grid.iter().any(|v| !v.is_finite()) {
                return Err(config_error(text, "sweep", key, "grid values must be finite"));
            }
        }
        if s.mu.iter().any(|&m| m <= 0.0) {
            return Err(config_error(text, "sweep", "mu", "grid values must be positive"));
        }
        if s.t.iter().any(|&t| t <= 0.0) {
            return Err(config_error(text, "sweep", "t", "grid values must be positive"));
        }
        if s.methods.is_empty() {
            return Err(config_error(text, "sweep", "methods", "at least one method is required"));
        }
        Ok(())
    }

    pub fn background(&self) -> BackgroundParams {
        BackgroundParams { mu: self.background.mu, nu: self.background.nu }
    }

    pub fn wave_vector(&self) -> Result<WaveVector> {
        let w = self.wave_vector;
        WaveVector::new(w.k1, w.k2, w.k3)
    }

    pub fn time_window(&self) -> Result<TimeWindow> {
        let w = self.window;
        TimeWindow::new(w.t_tilde_a, w.t_a, w.t)
    }

    pub fn controls(&self) -> Controls {
        Controls { ode: self.ode, quad: self.quad, series: self.series }
    }

    /// The single evolution request described by the config.
    pub fn request(&self) -> Result<EvolutionRequest> {
        Ok(EvolutionRequest {
            background: self.background(),
            k: self.wave_vector()?,
            window: self.time_window()?,
            method: self.method.name,
            controls: self.controls(),
        })
    }

    /// The resolved configuration as TOML.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.ode, OdeControl::default());
        assert_eq!(cfg.series.max_terms, 500);
    }

    #[test]
    fn resolved_config_round_trips() {
        let text = "[background]\nmu = 0.7\nnu = 0.2\n[method]\nname = \"dyson2\"\n[sweep]\nt = [1.0, 2.0]\nmethods = [\"ode\", \"closed\"]\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.method.name, Method::Dyson(2));
        assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn diagnostics_carry_line_and_field() {
        let text = "[background]\nmu = 1.0\n\n[wave_vector]\nk1 = 1.0\nk9 = 2.0\n";
        match parse_config(text) {
            Err(Error::Config { line, field, .. }) => {
                assert_eq!(line, Some(6));
                assert_eq!(field, "k9");
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = "[background]\nnu = 0.5\nmu = -1.0\n";
        match parse_config(text) {
            Err(Error::Config { line, field, .. }) => {
                assert_eq!(line, Some(3));
                assert_eq!(field, "background.mu");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_config("[method]\nname = \"magnus\"\n"), Err(Error::Config { .. })));
        assert!(matches!(parse_config("[ode]\nrel_tol = 0.0\n"), Err(Error::Config { line: Some(1), .. })));
    }
}
