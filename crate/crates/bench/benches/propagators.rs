use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use weyl_bianchi::closedform::closed_propagator;
use weyl_bianchi::harness::{parse_config, run_sweep};
use weyl_bianchi::oracle::{dyson_partial_k, evolve_ode};
use weyl_bianchi::{OdeControl, QuadControl, SeriesControl};
use weyl_bianchi_bench::propagator_cases;

fn propagators(c: &mut Criterion) {
    let ode = OdeControl::default();
    let qc = QuadControl::default();
    let sc = SeriesControl::default();
    let mut g = c.benchmark_group("propagator");
    for case in propagator_cases() {
        let (bg, k, w) = (case.background, case.k, case.window);
        g.bench_with_input(BenchmarkId::new("ode", case.name), &(), |b, _| {
            b.iter(|| evolve_ode(black_box(&bg), &k, &w, &ode).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("closed", case.name), &(), |b, _| {
            b.iter(|| closed_propagator(black_box(&bg), &k, &w, &qc, &sc).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("dyson2", case.name), &(), |b, _| {
            b.iter(|| dyson_partial_k(black_box(&bg), &k, &w, 2, &qc).unwrap())
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let cfg = parse_config(
        "[sweep]\nmu = [0.8, 1.0, 1.2]\nnu = [0.3, 0.5]\nt = [0.5, 1.0, 2.0, 4.0]\nmethods = [\"ode\", \"closed\"]\n",
    )
    .unwrap();
    c.bench_function("sweep_24_points", |b| b.iter(|| run_sweep(black_box(&cfg)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = propagators, sweep
}
criterion_main!(benches);
