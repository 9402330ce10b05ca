use criterion::{criterion_group, criterion_main, Criterion};
use sclsim::harness::fuzz::check_instance;
use sclsim::superposition::DEFAULT_CAP;
use sclsim::{lockstep_verify, run_scl_sup, run_sup_mo};
use sclsim_bench::{example, intro, random_batch};
use std::hint::black_box;

fn golden(c: &mut Criterion) {
    for (name, p) in [("intro", intro()), ("example", example())] {
        c.bench_function(&format!("sup_mo/{name}"), |b| {
            b.iter(|| run_sup_mo(black_box(&p), DEFAULT_CAP))
        });
        c.bench_function(&format!("scl_sup/{name}"), |b| {
            b.iter(|| run_scl_sup(black_box(&p), DEFAULT_CAP))
        });
        c.bench_function(&format!("lockstep/{name}"), |b| {
            b.iter(|| lockstep_verify(black_box(&p), DEFAULT_CAP))
        });
    }
}

fn random(c: &mut Criterion) {
    let batch = random_batch(32);
    c.bench_function("lockstep/random32", |b| {
        b.iter(|| {
            for p in &batch {
                black_box(lockstep_verify(p, DEFAULT_CAP));
            }
        })
    });
    c.bench_function("fuzz_instance/random32", |b| {
        b.iter(|| {
            for p in &batch {
                black_box(check_instance(p));
            }
        })
    });
}

criterion_group!(benches, golden, random);
criterion_main!(benches);
