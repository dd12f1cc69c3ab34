//! Cross-checks between the independent propagator routes.

use weyl_bianchi::closedform::{chirality_flip, closed_propagator, short_time_propagator};
use weyl_bianchi::exact_models::{rw_propagator, stiff_propagator};
use weyl_bianchi::oracle::{approx_in, dyson_in, dyson_partial_k, evolve_ode};
use weyl_bianchi::*;

fn tight_quad() -> QuadControl {
    QuadControl { rel_tol: 1e-13, abs_tol: 1e-18, ..QuadControl::default() }
}

#[test]
fn closed_form_expands_with_approximate_kernel() {
    // K12 − (k₊/κ) Ĩ1 = O(g³) and K11 − (1 − Ĩ2) = O(g⁴).
    let qc = tight_quad();
    let sc = SeriesControl::default();
    let w = TimeWindow::new(0.0, 0.3, 2.0).unwrap();
    for (mu, nu) in [(1.0, 0.5), (1.5, 0.2), (0.8, 0.6)] {
        let bg = BackgroundParams::new(mu, nu).unwrap();
        let mut d12 = Vec::new();
        let mut d11 = Vec::new();
        for g in [1e-2, 1e-3] {
            let k = WaveVector::new(0.6 * g, 0.8 * g, 1.2).unwrap();
            let p = closed_propagator(&bg, &k, &w, &qc, &sc).unwrap().propagator;
            let e = k.k_plus(&bg, 0.0) / k.kappa();
            d12.push((p.k12 - e * approx_in(&bg, &k, 1, &w, &qc).unwrap()).norm());
            d11.push((p.k11 - 1.0 + approx_in(&bg, &k, 2, &w, &qc).unwrap()).norm());
        }
        assert!(d12[1] < 2e-3 * d12[0], "({mu}, {nu}) k12: {d12:?}");
        assert!(d11[1] < 2e-4 * d11[0], "({mu}, {nu}) k11: {d11:?}");
    }
}

#[test]
fn approximate_kernel_is_exact_at_delta_one() {
    let bg = BackgroundParams::radiation();
    let k = WaveVector::new(0.3, -0.2, 0.9).unwrap();
    let w = TimeWindow::new(0.1, 0.4, 3.0).unwrap();
    let qc = tight_quad();
    for n in [1, 2] {
        let a = approx_in(&bg, &k, n, &w, &qc).unwrap();
        let b = dyson_in(&bg, &k, n, &w, &qc).unwrap();
        assert!((a - b).norm() < 1e-12 * b.norm().max(1e-3), "n = {n}: {a} vs {b}");
    }
}

#[test]
fn stiff_propagator_matches_ode() {
    let bg = BackgroundParams::stiff();
    let ctl = OdeControl { rel_tol: 1e-12, abs_tol: 1e-14, ..OdeControl::default() };
    let sc = SeriesControl::default();
    for (k, w) in [
        (WaveVector::new(0.3, 0.4, 1.0).unwrap(), TimeWindow::from_origin(2.5).unwrap()),
        (WaveVector::new(-0.5, 1.0, -0.7).unwrap(), TimeWindow::new(0.0, 0.8, 4.0).unwrap()),
        (WaveVector::new(1.1, 0.2, 2.0).unwrap(), TimeWindow::new(0.0, 1.5, 1.5).unwrap()),
    ] {
        let a = stiff_propagator(&k, &w, &sc).unwrap();
        let b = evolve_ode(&bg, &k, &w, &ctl).unwrap().propagator;
        assert!(a.max_abs_diff(&b) < 1e-8, "{k:?} {w:?}: {}", a.max_abs_diff(&b));
    }
}

#[test]
fn closed_form_is_close_to_ode_at_weak_coupling() {
    let bg = BackgroundParams::new(1.0, 0.3).unwrap();
    let w = TimeWindow::from_origin(1.0).unwrap();
    let k = WaveVector::new(0.05, 0.02, 1.0).unwrap();
    let closed = closed_propagator(&bg, &k, &w, &tight_quad(), &SeriesControl::default()).unwrap();
    let ode = evolve_ode(&bg, &k, &w, &OdeControl::default()).unwrap();
    let d = closed.propagator.max_abs_diff(&ode.propagator);
    assert!(d < 1e-2, "{d}");
    assert!(closed.diagnostics["quadrature_error_estimate"] < 1e-10);
}

#[test]
fn rw_matches_ode_with_reference_shift() {
    let bg = BackgroundParams::radiation();
    let k = WaveVector::new(2.0, -1.0, 3.0).unwrap();
    let w = TimeWindow::new(0.7, 1.2, 6.0).unwrap();
    let ode = evolve_ode(&bg, &k, &w, &OdeControl::default()).unwrap().propagator;
    assert!(ode.max_abs_diff(&rw_propagator(&bg, &k, &w).unwrap()) < 1e-8);
}

#[test]
fn short_time_form_agrees_at_small_times() {
    let bg = BackgroundParams::new(0.8, 0.4).unwrap();
    let k = WaveVector::new(0.5, 0.5, 1.0).unwrap();
    let t = 1e-6;
    let ode = evolve_ode(&bg, &k, &TimeWindow::from_origin(t).unwrap(), &OdeControl::default()).unwrap();
    let short = short_time_propagator(&bg, &k, t).unwrap();
    let c = short.diagnostics["coupling"];
    assert!(short.propagator.max_abs_diff(&ode.propagator) < 10.0 * c * c);
}

#[test]
fn chirality_flip_negates_wave_vector() {
    let bg = BackgroundParams::new(1.2, 0.1).unwrap();
    let k = WaveVector::new(0.4, 0.3, -0.8).unwrap();
    let w = TimeWindow::new(0.0, 0.5, 2.0).unwrap();
    let ctl = OdeControl::default();
    let pos = chirality_flip(&k, |kk| evolve_ode(&bg, kk, &w, &ctl)).unwrap().propagator;
    let direct = evolve_ode(&bg, &k.negated(), &w, &ctl).unwrap().propagator;
    assert_eq!(pos, direct);
    let neg = evolve_ode(&bg, &k, &w, &ctl).unwrap().propagator;
    assert!(pos.max_abs_diff(&neg) > 1e-3);
}

#[test]
fn dyson_partial_sums_approach_ode() {
    let bg = BackgroundParams::new(1.0, 0.5).unwrap();
    let k = WaveVector::new(0.06, 0.08, 1.0).unwrap();
    let w = TimeWindow::from_origin(1.0).unwrap();
    let ode = evolve_ode(&bg, &k, &w, &OdeControl::default()).unwrap().propagator;
    let errs: Vec<f64> = (0..=3)
        .map(|n| dyson_partial_k(&bg, &k, &w, n, &tight_quad()).unwrap().propagator.max_abs_diff(&ode))
        .collect();
    assert!(errs.windows(2).all(|e| e[1] < e[0]), "{errs:?}");
}

#[test]
fn stiff_solution_determinant_is_conserved() {
    use weyl_bianchi::exact_models::stiff_solutions;
    let sc = SeriesControl::default();
    let k = WaveVector::new(0.3, -0.4, 0.8).unwrap();
    let det = |t: f64| {
        let a = stiff_solutions(&k, t, 1, &sc).unwrap();
        let b = stiff_solutions(&k, t, 2, &sc).unwrap();
        a.phi1 * b.phi2 - a.phi2 * b.phi1
    };
    let d0 = det(0.02);
    assert!(d0.norm() > 0.1);
    for t in [0.1, 1.0, 5.0, 20.0, 60.0] {
        assert!((det(t) - d0).norm() < 1e-6 * d0.norm(), "t = {t}: {} vs {d0}", det(t));
    }
}
