//! Globally adaptive Gauss–Kronrod (7, 15) quadrature for complex
//! vector-valued integrands.

use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Controls for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadControl {
    fn default() -> Self {
        QuadControl { rel_tol: 1e-10, abs_tol: 1e-14, max_subdivisions: 200_000 }
    }
}

impl QuadControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol >= 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be positive"));
        }
        Ok(())
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integral value and error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<const N: usize> {
    pub value: [C64; N],
    pub error: f64,
    pub evaluations: usize,
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [C64; N],
    error: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl<const N: usize> Eq for Panel<N> {}
impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn norm<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn gk15<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: FnMut(f64) -> Result<[C64; N]>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let zero = [C64::new(0.0, 0.0); N];
    let mut k = zero;
    let mut g = zero;
    let fc = f(c)?;
    for n in 0..N {
        k[n] = fc[n] * WGK[7];
        g[n] = fc[n] * WG[3];
    }
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let f1 = f(c - h * x)?;
        let f2 = f(c + h * x)?;
        for n in 0..N {
            let s = f1[n] + f2[n];
            k[n] += s * WGK[j];
            if j % 2 == 1 {
                g[n] += s * WG[j / 2];
            }
        }
    }
    let mut err = 0.0_f64;
    for n in 0..N {
        k[n] *= h;
        g[n] *= h;
        err = err.max((k[n] - g[n]).norm());
    }
    // Kronrod estimates are very pessimistic once the rule has converged.
    let scale = norm(&k).max(f64::MIN_POSITIVE);
    let err = if err > 0.0 {
        let r = (200.0 * err / scale).powf(1.5).min(1.0);
        (scale * r).max(50.0 * f64::EPSILON * scale)
    } else {
        50.0 * f64::EPSILON * scale
    };
    for z in k.iter() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("integrand produced a non-finite value".into()));
        }
    }
    Ok(Panel { a, b, value: k, error: err })
}

/// Integrates over the panels delimited by the sorted `breakpoints`.
pub fn integrate<const N: usize, F>(
    mut f: F,
    breakpoints: &[f64],
    qc: &QuadControl,
) -> Result<QuadResult<N>>
where
    F: FnMut(f64) -> Result<[C64; N]>,
{
    qc.validate()?;
    if breakpoints.len() < 2 {
        return Err(Error::domain("need at least two breakpoints"));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        if !(w[1] >= w[0]) {
            return Err(Error::domain("breakpoints must be sorted"));
        }
        if w[1] > w[0] {
            heap.push(gk15(&mut f, w[0], w[1])?);
            evaluations += 15;
        }
    }
    let mut panels = heap.len();
    loop {
        let mut total = [C64::new(0.0, 0.0); N];
        let mut err = 0.0;
        for p in heap.iter() {
            for n in 0..N {
                total[n] += p.value[n];
            }
            err += p.error;
        }
        let target = qc.abs_tol.max(qc.rel_tol * norm(&total));
        if err <= target || heap.is_empty() {
            return Ok(QuadResult { value: total, error: err, evaluations });
        }
        if panels >= qc.max_subdivisions {
            return Err(Error::Quadrature(format!(
                "error estimate {err:.2e} above target {target:.2e} after {panels} panels"
            )));
        }
        // Bisect the worst panels in a batch to keep the bookkeeping cheap.
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let worst = heap.pop().expect("non-empty heap");
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                return Err(Error::Quadrature("panel width underflow".into()));
            }
            heap.push(gk15(&mut f, worst.a, mid)?);
            heap.push(gk15(&mut f, mid, worst.b)?);
            evaluations += 30;
            panels += 1;
        }
    }
}

/// `n + 1` equally spaced points spanning `[a, b]`.
pub fn uniform_breakpoints(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    let mut v: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    v[n] = b;
    v
}
