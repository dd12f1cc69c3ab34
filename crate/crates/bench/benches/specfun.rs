use criterion::{black_box, criterion_group, criterion_main, Criterion};
use weyl_bianchi::specfun::{bessel_j, complex_gamma, kummer_m, whittaker_w};
use weyl_bianchi::{SeriesControl, C64};

fn specfun(c: &mut Criterion) {
    let sc = SeriesControl::default();
    c.bench_function("gamma", |b| b.iter(|| complex_gamma(black_box(C64::new(0.5, 3.0))).unwrap()));
    // Ascending series, Hankel expansion and ODE continuation respectively.
    for (name, order, x) in [
        ("bessel_series", C64::new(0.5, 1.0), 4.0),
        ("bessel_hankel", C64::new(0.5, 0.25), 45.0),
        ("bessel_continuation", C64::new(-0.5, 3.0), 30.0),
    ] {
        c.bench_function(name, |b| b.iter(|| bessel_j(black_box(order), x, &sc).unwrap()));
    }
    c.bench_function("kummer", |b| {
        b.iter(|| kummer_m(black_box(C64::new(-0.25, 0.0)), C64::new(1.5, 0.0), C64::new(0.0, 20.0), &sc).unwrap())
    });
    let m = C64::new(0.25, 0.0);
    for (name, z) in [("whittaker_connection", C64::new(0.0, 8.0)), ("whittaker_asymptotic", C64::new(0.0, 80.0))] {
        c.bench_function(name, |b| b.iter(|| whittaker_w(black_box(C64::new(-0.25, -0.5)), m, z, &sc).unwrap()));
    }
}

criterion_group!(benches, specfun);
criterion_main!(benches);
