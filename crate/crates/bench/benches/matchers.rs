use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ordmatch::oracle::{naive_multi, naive_search};
use ordmatch::{search_multi, search_nn, search_prefix, AcAutomaton, SinglePatternIndex};
use ordmatch_bench::{patterns, random_walk, uniform, worst_case};

const N: usize = 100_000;

fn single(c: &mut Criterion) {
    let mut group = c.benchmark_group("single");
    group.throughput(Throughput::Elements(N as u64));
    let text = random_walk(N, 1);
    for m in [4, 16, 64] {
        let idx = SinglePatternIndex::new(random_walk(m, 2)).unwrap();
        group.bench_with_input(BenchmarkId::new("kmp-prefix", m), &idx, |b, idx| {
            b.iter(|| search_prefix(&text, idx))
        });
        group.bench_with_input(BenchmarkId::new("kmp-nn", m), &idx, |b, idx| {
            b.iter(|| search_nn(&text, idx))
        });
        group.bench_with_input(BenchmarkId::new("naive", m), &idx, |b, idx| {
            b.iter(|| naive_search(&text, idx.pattern()))
        });
    }
    group.finish();
}

fn adversarial(c: &mut Criterion) {
    let mut group = c.benchmark_group("adversarial");
    group.throughput(Throughput::Elements(N as u64));
    for m in [8, 64] {
        let (text, pattern) = worst_case(N, m);
        let idx = SinglePatternIndex::new(pattern).unwrap();
        group.bench_with_input(BenchmarkId::new("kmp-prefix", m), &idx, |b, idx| {
            b.iter(|| search_prefix(&text, idx))
        });
        group.bench_with_input(BenchmarkId::new("kmp-nn", m), &idx, |b, idx| {
            b.iter(|| search_nn(&text, idx))
        });
    }
    let text = uniform(N, 3, 5);
    let idx = SinglePatternIndex::new(vec![1, 2, 1, 2, 1, 3]).unwrap();
    group.bench_function("kmp-nn/small-alphabet", |b| {
        b.iter(|| search_nn(&text, &idx))
    });
    group.finish();
}

fn multi(c: &mut Criterion) {
    let mut group = c.benchmark_group("multi");
    group.throughput(Throughput::Elements(N as u64));
    let text = random_walk(N, 7);
    for w in [4, 32] {
        let ps = patterns(w, 4, 12, 8);
        group.bench_with_input(BenchmarkId::new("build", w), &ps, |b, ps| {
            b.iter(|| AcAutomaton::new(ps.clone()).unwrap())
        });
        let ac = AcAutomaton::new(ps.clone()).unwrap();
        group.bench_with_input(BenchmarkId::new("ac", w), &ac, |b, ac| {
            b.iter(|| search_multi(&text, ac))
        });
        group.bench_with_input(BenchmarkId::new("naive", w), &ps, |b, ps| {
            b.iter(|| naive_multi(&text, ps, ordmatch::OutputMode::LongestOnly))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = single, adversarial, multi
}
criterion_main!(benches);
