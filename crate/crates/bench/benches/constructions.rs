use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use magiclab_core::arrays::{kotzig_array, qmr};
use magiclab_core::families::{label_family_via_qmr, Family};
use magiclab_core::tripartite::label_tripartite;

fn arrays(c: &mut Criterion) {
    let mut g = c.benchmark_group("qmr");
    for (a, b) in [(3, 10), (7, 20), (11, 40), (15, 80)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{a}x{b}")), &(a, b), |bch, &(a, b)| {
            bch.iter(|| qmr(black_box(a), black_box(b)).unwrap())
        });
    }
    g.finish();
    c.bench_function("kotzig 9x31", |bch| bch.iter(|| kotzig_array(black_box(9), black_box(31)).unwrap()));
}

fn labelings(c: &mut Criterion) {
    c.bench_function("tripartite K(3,8,9)", |bch| bch.iter(|| label_tripartite(3, 8, 9).unwrap()));
    c.bench_function("tripartite K(20,30,40)", |bch| bch.iter(|| label_tripartite(20, 30, 40).unwrap()));
    let f = Family::Mkab { m: 4, a: 5, b: 6 };
    c.bench_function("family 4K(5,6)", |bch| bch.iter(|| label_family_via_qmr(black_box(&f)).unwrap()));
}

criterion_group!(benches, arrays, labelings);
criterion_main!(benches);
