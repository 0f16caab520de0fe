use criterion::{black_box, criterion_group, criterion_main, Criterion};
use horoslab::solver::{default_h_grid, sweep_profiles};
use horoslab::tangency::admissible_tangencies;
use horoslab::{area_natural, profile_polyline, tube_for_slab, FamilyParams, Regime, SlabSpec, Window};

fn profiles(c: &mut Criterion) {
    let fp = FamilyParams::new(Regime::EqualOne, 1.0, -0.2).unwrap();
    c.bench_function("profile_polyline h1 400", |b| {
        b.iter(|| profile_polyline(black_box(&fp), -2.0, 2.0, 400, 1e-10).unwrap())
    });
    let fp = FamilyParams::new(Regime::SuperOne, 3.0, -0.05).unwrap();
    c.bench_function("admissible_tangencies onduloid", |b| {
        b.iter(|| admissible_tangencies(black_box(&fp), Window::new(0.0, 5.0).unwrap()).unwrap())
    });
    let fp = FamilyParams::new(Regime::SubOne, 0.5, -0.25).unwrap();
    c.bench_function("area_natural equidistant", |b| {
        b.iter(|| area_natural(black_box(&fp), -1.5, 1.0, 1e-10).unwrap())
    });
}

fn solver(c: &mut Criterion) {
    let slab = SlabSpec::new(1.0, 2.0).unwrap();
    c.bench_function("tube_for_slab h1", |b| b.iter(|| tube_for_slab(Regime::EqualOne, 1.0, black_box(&slab), 1e-10)));
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let grid: Vec<f64> = (0..4).map(|i| 0.1 * 4f64.powi(i)).collect();
    group.bench_function("slab (1,2) 4 volumes", |b| {
        b.iter(|| sweep_profiles(black_box(&slab), &default_h_grid(), &grid, 1e-8).unwrap())
    });
    group.finish();
}

criterion_group!(benches, profiles, solver);
criterion_main!(benches);
