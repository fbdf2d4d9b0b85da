// Same work under both execution strategies. Without the `parallel` feature
// both arms run sequentially, which is the fallback being compared against.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use suzuki_hopf::algebra::build_structure_tables;
use suzuki_hopf::automorphism::{exhaustive_search_with, make_phi, GridPreset};
use suzuki_hopf::hopf::{build_hopf_tables, verify_hopf_with};
use suzuki_hopf::morphism::verify_hopf_morphism_with;
use suzuki_hopf::{AlgebraParams, Exec, Sign};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_hopf");
    g.sample_size(10);
    for (big_n, n) in [(2, 3), (3, 4)] {
        let t = build_structure_tables(&AlgebraParams::new(big_n, n, Sign::Minus, Sign::Plus).unwrap());
        let h = build_hopf_tables(&t);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, t.dim()), &exec, |b, &e| {
                b.iter(|| verify_hopf_with(&t, &h, e))
            });
        }
    }
    g.finish();
}

fn morphism(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_hopf_morphism");
    g.sample_size(10);
    let t = build_structure_tables(&AlgebraParams::new(2, 4, Sign::Plus, Sign::Plus).unwrap());
    let h = build_hopf_tables(&t);
    let f = make_phi(1, 1, t.one(), &t).unwrap().map;
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| verify_hopf_morphism_with(&f, &t, &h, exec)));
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("exhaustive_search");
    g.sample_size(10);
    let t = build_structure_tables(&AlgebraParams::new(1, 2, Sign::Plus, Sign::Plus).unwrap());
    let h = build_hopf_tables(&t);
    let grid = GridPreset::Default.values(&t);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| exhaustive_search_with(&t, &h, &grid, exec)));
    }
    g.finish();
}

criterion_group!(benches, axioms, morphism, search);
criterion_main!(benches);
