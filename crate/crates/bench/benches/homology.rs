use criterion::{criterion_group, criterion_main, Criterion};
use cubeknot::floer::grading::AlexanderConvention;
use cubeknot::floer::{cube_homology, f2_rank, grid_homology, SparseF2Matrix, Variant};
use cubeknot::{fixtures, lift_grid, Axis, LiftOptions, SegmentKind, SegmentRef};
use rand::{Rng, SeedableRng};

fn homology(c: &mut Criterion) {
    let gt5 = fixtures::gt5_grid();
    c.bench_function("grid_homology gt5 tilde", |b| {
        b.iter(|| grid_homology(&gt5, Variant::Tilde, AlexanderConvention::Normalized).unwrap())
    });

    let u2 = fixtures::u2();
    let stabilized = u2.stabilize(SegmentRef { kind: SegmentKind::XY, index: 0 }).unwrap();
    let stabilized = stabilized.stabilize(SegmentRef { kind: SegmentKind::YZ, index: 1 }).unwrap();
    let mut group = c.benchmark_group("cube_homology");
    group.sample_size(10);
    for (name, cube) in [("u2", &u2), ("u2 stabilized twice", &stabilized)] {
        group.bench_function(name, |b| {
            b.iter(|| cube_homology(cube, Axis::Z, Variant::Tilde, AlexanderConvention::Normalized).unwrap())
        });
    }
    group.finish();
}

fn lifting(c: &mut Criterion) {
    let g = fixtures::gt5_grid().reversed();
    let mut group = c.benchmark_group("lift");
    group.sample_size(10);
    group.bench_function("reversed gt5", |b| b.iter(|| lift_grid(&g, LiftOptions::default()).unwrap()));
    group.finish();
}

fn rank(c: &mut Criterion) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut m = SparseF2Matrix::new(4000);
    for _ in 0..4000 {
        m.push_row((0..6).map(|_| rng.gen_range(0..4000u32)).collect());
    }
    c.bench_function("f2_rank sparse 4000x4000", |b| b.iter(|| f2_rank(&m)));
}

criterion_group!(benches, homology, lifting, rank);
criterion_main!(benches);
