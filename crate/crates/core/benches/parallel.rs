use criterion::{criterion_group, criterion_main, Criterion};
use dgla::ce::{ce_cohomological, ce_with_coefficients};
use dgla::lie::examples::sl2;
use dgla::lie::{adjoint_rep, free_lie, pbw_check};
use dgla::par;

fn modes() -> [(&'static str, Option<usize>); 2] {
    [("1 thread", Some(1)), ("default pool", None)]
}

fn run_with<R>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R
where
    R: Send,
{
    match threads {
        Some(n) => par::with_threads(n, f),
        None => f(),
    }
}

fn bench(c: &mut Criterion) {
    let free = free_lie(&[("x".into(), 1), ("y".into(), 1)], 6).unwrap().lie;
    let l = sl2();
    let adj = adjoint_rep(&l);
    let mut g = c.benchmark_group("ce_cohomology_free_two_odd_w6");
    for (name, t) in modes() {
        g.bench_function(name, |b| b.iter(|| run_with(t, || ce_cohomological(&free, 6).homology_dims())));
    }
    g.finish();
    let mut g = c.benchmark_group("ce_coefficients_sl2_adjoint_w3");
    for (name, t) in modes() {
        g.bench_function(name, |b| b.iter(|| run_with(t, || ce_with_coefficients(&l, &adj, 3).homology_dims())));
    }
    g.finish();
    let mut g = c.benchmark_group("pbw_sl2_w4");
    g.sample_size(10);
    for (name, t) in modes() {
        g.bench_function(name, |b| b.iter(|| run_with(t, || pbw_check(&l, 4).unwrap().bijective)));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
