use criterion::{criterion_group, criterion_main, Criterion};
use hfk_bench::bundled_companions;
use hfk_core::doubling::{double_hfk, figure8_iterated, iterate_double};
use hfk_core::knot_db;
use hfk_core::meridian::meridian_sum_check;
use hfk_core::skein::skein_interpolate;
use hfk_core::verify::run_suite;
use hfk_core::Clasp;

fn doubling(c: &mut Criterion) {
    let knots = bundled_companions();
    c.bench_function("double_hfk/bundled_t_-12..12", |b| {
        b.iter(|| {
            for k in &knots {
                for t in -12..=12 {
                    for clasp in [Clasp::Positive, Clasp::Negative] {
                        double_hfk(k, t, clasp).unwrap();
                    }
                }
            }
        })
    });
    let figure8 = knot_db::load("figure8").unwrap().companion().unwrap();
    c.bench_function("iterate_double/figure8_n8", |b| {
        b.iter(|| iterate_double(&figure8, 8, 0, Clasp::Positive).unwrap())
    });
    c.bench_function("figure8_iterated/n8", |b| b.iter(|| figure8_iterated(8)));
}

fn derived(c: &mut Criterion) {
    let trefoil = knot_db::load("trefoil_rh").unwrap().companion().unwrap();
    c.bench_function("skein_interpolate/trefoil_rh", |b| {
        b.iter(|| skein_interpolate(&trefoil, 8).unwrap())
    });
    c.bench_function("meridian_sum_check/trefoil_rh_t10", |b| {
        b.iter(|| meridian_sum_check(&trefoil, 10).unwrap())
    });
    let records = vec![knot_db::load("trefoil_rh").unwrap()];
    c.bench_function("verify/trefoil_rh_-8..8", |b| b.iter(|| run_suite(&records, (-8, 8))));
}

criterion_group!(benches, doubling, derived);
criterion_main!(benches);
