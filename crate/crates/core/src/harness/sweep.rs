//! Parameter sweeps written as CSV.
//!
//! The file starts with `#`-prefixed header lines (`# schema=1`, then the
//! resolved configuration), followed by a CSV header row and one row per grid
//! point in lexicographic order over `(mu, nu, k1, k2, k3, t)`. Floats are
//! written with 17 significant digits so they parse back bit-exactly.

use rayon::prelude::*;

use super::config::RunConfig;
use super::request::{evolve, EvolutionRequest, Method};
use crate::background::{BackgroundParams, TimeWindow, WaveVector};
use crate::error::{Error, Result};
use crate::propagator::Propagator;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "WEYL_BIANCHI_THREADS";

/// A rayon pool honouring `WEYL_BIANCHI_THREADS`.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| Error::Config {
            line: None,
            field: THREADS_ENV.into(),
            message: format!("expected a positive integer, got `{v}`"),
        })?;
        if n == 0 {
            return Err(Error::Config {
                line: None,
                field: THREADS_ENV.into(),
                message: "must be positive".into(),
            });
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Io(e.to_string()))
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct Point {
    mu: f64,
    nu: f64,
    k: [f64; 3],
    t: f64,
}

fn grid(values: &[f64], fallback: f64) -> Vec<f64> {
    if values.is_empty() {
        vec![fallback]
    } else {
        values.to_vec()
    }
}

fn points(cfg: &RunConfig) -> Vec<Point> {
    let s = &cfg.sweep;
    let mut out = Vec::new();
    for &mu in &grid(&s.mu, cfg.background.mu) {
        for &nu in &grid(&s.nu, cfg.background.nu) {
            for &k1 in &grid(&s.k1, cfg.wave_vector.k1) {
                for &k2 in &grid(&s.k2, cfg.wave_vector.k2) {
                    for &k3 in &grid(&s.k3, cfg.wave_vector.k3) {
                        for &t in &grid(&s.t, cfg.window.t) {
                            out.push(Point { mu, nu, k: [k1, k2, k3], t });
                        }
                    }
                }
            }
        }
    }
    out
}

fn header(methods: &[Method], compare: bool) -> Vec<String> {
    let mut h: Vec<String> = ["index", "mu", "nu", "k1", "k2", "k3", "t_tilde_a", "t_a", "t"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for m in methods {
        for col in ["k11_re", "k11_im", "k12_re", "k12_im", "unitarity_defect"] {
            h.push(format!("{m}_{col}"));
        }
    }
    if compare {
        h.push("err_abs_K11".into());
        h.push("err_abs_K12".into());
    }
    h.push("status".into());
    h
}

fn row(index: usize, p: &Point, cfg: &RunConfig, compare: Option<(usize, usize)>) -> Vec<String> {
    let w = cfg.window;
    let mut r = vec![index.to_string()];
    for v in [p.mu, p.nu, p.k[0], p.k[1], p.k[2], w.t_tilde_a, w.t_a, p.t] {
        r.push(fmt_f64(v));
    }
    let mut status = Vec::new();
    let mut results: Vec<Option<Propagator>> = Vec::new();
    for &m in &cfg.sweep.methods {
        let req = WaveVector::new(p.k[0], p.k[1], p.k[2]).and_then(|k| {
            Ok(EvolutionRequest {
                background: BackgroundParams::new(p.mu, p.nu)?,
                k,
                window: TimeWindow::new(w.t_tilde_a, w.t_a, p.t)?,
                method: m,
                controls: cfg.controls(),
            })
        });
        match req.and_then(|req| evolve(&req)) {
            Ok(res) => {
                let k = res.propagator;
                for v in [k.k11.re, k.k11.im, k.k12.re, k.k12.im, k.unitarity_defect()] {
                    r.push(fmt_f64(v));
                }
                for wmsg in &res.regime_warnings {
                    status.push(format!("{m}: warning: {wmsg}"));
                }
                results.push(Some(k));
            }
            Err(e) => {
                r.extend(std::iter::repeat("NaN".to_string()).take(5));
                status.push(format!("{m}: {e}"));
                results.push(None);
            }
        }
    }
    if let Some((a, b)) = compare {
        match (results[a], results[b]) {
            (Some(x), Some(y)) => {
                r.push(fmt_f64((x.k11 - y.k11).norm()));
                r.push(fmt_f64((x.k12 - y.k12).norm()));
            }
            _ => {
                r.push("NaN".into());
                r.push("NaN".into());
            }
        }
    }
    r.push(if status.is_empty() { "ok".into() } else { status.join("; ") });
    r
}

/// Runs the sweep described by `cfg` and returns the CSV text. Failed grid
/// points are reported in the `status` column rather than aborting.
pub fn run_sweep(cfg: &RunConfig) -> Result<String> {
    let methods = &cfg.sweep.methods;
    let ode = methods.iter().position(|&m| m == Method::Ode);
    let closed = methods.iter().position(|&m| m == Method::Closed);
    let compare = ode.zip(closed).map(|(o, c)| (c, o));
    let pts = points(cfg);
    let pool = thread_pool()?;
    let rows: Vec<Vec<String>> =
        pool.install(|| pts.par_iter().enumerate().map(|(i, p)| row(i, p, cfg, compare)).collect());

    let mut out = format!("# schema={SCHEMA_VERSION}\n");
    for line in cfg.to_toml().lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(methods, compare.is_some())).map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    out.push_str(&String::from_utf8(body).map_err(|e| Error::Io(e.to_string()))?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::parse_config;

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn grid_order_is_lexicographic() {
        let cfg = parse_config("[sweep]\nmu = [0.5, 1.0]\nt = [1.0, 2.0, 3.0]\nmethods = [\"rw\"]\n").unwrap();
        let p = points(&cfg);
        assert_eq!(p.len(), 6);
        assert_eq!((p[0].mu, p[0].t), (0.5, 1.0));
        assert_eq!((p[1].mu, p[1].t), (0.5, 2.0));
        assert_eq!((p[3].mu, p[3].t), (1.0, 1.0));
    }
}
