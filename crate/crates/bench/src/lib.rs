//! Shared inputs for the criterion benchmarks under `benches/`.

use weyl_bianchi::{BackgroundParams, TimeWindow, WaveVector};

/// A named propagator workload.
pub struct Case {
    pub name: &'static str,
    pub background: BackgroundParams,
    pub k: WaveVector,
    pub window: TimeWindow,
}

/// Workloads of increasing oscillation count, all with `δ < 1` so every
/// method applies.
pub fn propagator_cases() -> Vec<Case> {
    let case = |name, mu, nu, k: (f64, f64, f64), t_a, t| Case {
        name,
        background: BackgroundParams::new(mu, nu).unwrap(),
        k: WaveVector::new(k.0, k.1, k.2).unwrap(),
        window: TimeWindow::new(0.0, t_a, t).unwrap(),
    };
    vec![
        case("weak", 1.0, 0.5, (0.1, 0.05, 1.0), 0.0, 1.0),
        case("moderate", 0.8, 0.4, (1.0, -0.5, 2.0), 0.2, 3.0),
        case("oscillatory", 1.2, 0.3, (2.0, 1.0, -4.0), 0.0, 10.0),
    ]
}
