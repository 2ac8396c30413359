use criterion::{criterion_group, criterion_main, Criterion};

use magiclab_core::graph::build_cycle;
use magiclab_core::oracle::{oracle_theta_general, oracle_theta_multipartite};
use magiclab_core::{OracleOptions, PartiteSpec};

fn multipartite(c: &mut Criterion) {
    let opts = OracleOptions { jobs: Some(1), ..OracleOptions::default() };
    for sizes in [vec![2, 3, 4], vec![3, 4, 6], vec![2, 2, 9]] {
        let spec = PartiteSpec::new(sizes).unwrap();
        c.bench_function(&format!("oracle {spec}"), |b| {
            b.iter(|| oracle_theta_multipartite(&spec, 16, &opts).unwrap())
        });
    }
}

fn general(c: &mut Criterion) {
    let opts = OracleOptions { jobs: Some(1), ..OracleOptions::default() };
    let g = build_cycle(8).unwrap();
    c.bench_function("oracle C(8)", |b| b.iter(|| oracle_theta_general(&g, 8, &opts).unwrap()));
}

criterion_group!(benches, multipartite, general);
criterion_main!(benches);
