use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lamina::cluster::{exchange_bfs_with, Engine, Quiver};
use lamina::cones::{coverage, RationalCone};
use lamina::exec::Exec;
use lamina::fixtures;
use lamina::lamination::{boundary, closed_word, open_word, twist_orbit};
use lamina::surface::{flip_bfs, TrackedTriangulation};

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn bench(c: &mut Criterion) {
    let markov = Quiver::markov();
    let mut g = c.benchmark_group("exchange_bfs_markov_laurent_5");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exchange_bfs_with(&markov, 5, Engine::Laurent, exec).unwrap())
        });
    }
    g.finish();

    let cones: Vec<RationalCone> = exchange_bfs_with(&Quiver::kronecker(), 30, Engine::Tropical, Exec::Sequential)
        .unwrap()
        .clusters
        .iter()
        .map(|c| RationalCone::new(2, c.gvectors.clone()).unwrap())
        .collect();
    let mut g = c.benchmark_group("coverage_kronecker_r8");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| coverage(&cones, 2, 8, exec, 0).unwrap()));
    }
    g.finish();

    let torus = TrackedTriangulation::new(fixtures::surface("torus").unwrap().1);
    let mut g = c.benchmark_group("flip_bfs_torus_6");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| flip_bfs(&torus, 6, exec).unwrap()));
    }
    g.finish();

    let t = fixtures::surface("annulus").unwrap().1;
    let core = closed_word(t.base(), &["1", "2"]).unwrap();
    let l0 = open_word(t.base(), &["1"], boundary("bo"), boundary("bi")).unwrap();
    let ms: Vec<i64> = (0..=200).collect();
    let mut g = c.benchmark_group("twist_orbit_annulus_200");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| twist_orbit(&t, &core, &l0, &ms, exec).unwrap()));
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench
}
criterion_main!(benches);
