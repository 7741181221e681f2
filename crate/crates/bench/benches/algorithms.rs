use std::hint::black_box;

use brinseq::compute::{search_shortest_with, SearchOptions};
use brinseq::{
    abstract_tau, apply, behaviourally_congruent, behaviourally_equivalent, compile_table,
    computes_check, evaluate_family, extract, parse_family, restrict_to_core, to_first_canonical,
    to_second_canonical, use_family, IoConvention,
};
use brinseq_bench::{countdown, decrement, jump_ladder, majority, nested, non_core_mix, parity};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical");
    for n in [4, 16, 64] {
        let t = jump_ladder(n);
        g.bench_with_input(BenchmarkId::new("first", n), &t, |b, t| {
            b.iter(|| to_first_canonical(black_box(t)))
        });
        g.bench_with_input(BenchmarkId::new("second", n), &t, |b, t| {
            b.iter(|| to_second_canonical(black_box(t)))
        });
    }
    g.finish();
}

fn behaviour(c: &mut Criterion) {
    let mut g = c.benchmark_group("behaviour");
    for depth in [2, 6, 12] {
        let t = nested(depth);
        g.bench_with_input(BenchmarkId::new("extract", depth), &t, |b, t| {
            b.iter(|| extract(black_box(t)))
        });
        let u = to_second_canonical(&t).to_term();
        g.bench_with_input(
            BenchmarkId::new("equivalent", depth),
            &(t.clone(), u.clone()),
            |b, (t, u)| b.iter(|| behaviourally_equivalent(black_box(t), black_box(u))),
        );
        g.bench_with_input(
            BenchmarkId::new("congruent", depth),
            &(t, u),
            |b, (t, u)| b.iter(|| behaviourally_congruent(black_box(t), black_box(u))),
        );
    }
    g.finish();
}

fn interaction(c: &mut Criterion) {
    let mut g = c.benchmark_group("interaction");
    for bits in [2, 4, 6] {
        let thread = extract(&countdown(bits));
        let foci: Vec<String> = (1..=bits).map(|i| format!("aux:{i}=1")).collect();
        let family = evaluate_family(&parse_family(&format!("{{{}}}", foci.join(","))).unwrap());
        g.bench_with_input(
            BenchmarkId::new("use", bits),
            &(&thread, &family),
            |b, (t, u)| b.iter(|| use_family(black_box(t), black_box(u)).unwrap()),
        );
        g.bench_with_input(
            BenchmarkId::new("apply", bits),
            &(&thread, &family),
            |b, (t, u)| b.iter(|| apply(black_box(t), black_box(u)).unwrap()),
        );
        let used = use_family(&thread, &family).unwrap();
        g.bench_with_input(BenchmarkId::new("abstract", bits), &used, |b, t| {
            b.iter(|| abstract_tau(black_box(t)))
        });
    }
    g.finish();
}

fn compute(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute");
    for n in [2, 4, 6] {
        let f = parity(n);
        g.bench_with_input(BenchmarkId::new("compile", n), &f, |b, f| {
            b.iter(|| compile_table(black_box(f)))
        });
        let t = compile_table(&f);
        g.bench_with_input(BenchmarkId::new("computes", n), &(t, f), |b, (t, f)| {
            b.iter(|| computes_check(black_box(t), black_box(f), 0).unwrap())
        });
        let mix = non_core_mix(n);
        let conv = IoConvention::new(n, 1, 0);
        g.bench_with_input(BenchmarkId::new("restrict", n), &mix, |b, t| {
            b.iter(|| restrict_to_core(black_box(t), &conv).unwrap())
        });
    }
    let d = decrement(4);
    let conv = IoConvention::new(0, 0, 4);
    g.bench_function("restrict/decrement", |b| {
        b.iter(|| restrict_to_core(black_box(&d), &conv).unwrap())
    });
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for (name, f, len) in [
        ("parity1", parity(1), 3),
        ("majority2", majority(2), 4),
        ("parity2", parity(2), 5),
    ] {
        g.bench_function(name, |b| {
            b.iter(|| search_shortest_with(black_box(&f), 0, len, &SearchOptions::default()))
        });
    }
    g.finish();
}

criterion_group!(benches, canonical, behaviour, interaction, compute, search);
criterion_main!(benches);
