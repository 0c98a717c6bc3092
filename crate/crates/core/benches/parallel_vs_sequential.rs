use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gelfand::corpus;
use gelfand::group::{self, FiniteAbelianGroup};
use gelfand::norms::{self, AlgebraNorm};
use gelfand::spectrum;
use gelfand::verify::{self, VerifyConfig};
use gelfand::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn contraction(c: &mut Criterion) {
    let g = FiniteAbelianGroup::new(vec![2, 3, 4]).unwrap();
    let (a, _) = group::abelian_group_algebra(&g).unwrap();
    let m = spectrum::characters(&a).unwrap();
    let norm = AlgebraNorm::regular_operator();
    let mut grp = c.benchmark_group("verify_contraction Z2xZ3xZ4");
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| norms::verify_contraction_with(&a, &norm, &m, 1000, 0x5EED, exec).unwrap())
        });
    }
    grp.finish();
}

fn random_characters(c: &mut Criterion) {
    let algebras = corpus::random_algebras(200, 0x5EED);
    let mut grp = c.benchmark_group("characters of 200 random algebras");
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| exec.map(&algebras, |r| spectrum::characters(&r.algebra).unwrap().len()))
        });
    }
    grp.finish();
}

fn verify_everything(c: &mut Criterion) {
    let mut grp = c.benchmark_group("verify_all");
    grp.sample_size(10);
    for (name, exec) in MODES {
        let cfg = VerifyConfig { exec, ..Default::default() };
        grp.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| black_box(verify::verify_all(cfg)).pass)
        });
    }
    grp.finish();
}

criterion_group!(benches, contraction, random_characters, verify_everything);
criterion_main!(benches);
