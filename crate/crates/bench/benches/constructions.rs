use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use distlat::embeddings::{dilworth_decompose, enumerate_correspondence};
use distlat::intervals::{construct_d, remove, rival_extract};
use distlat::oracle::{random_digraph, random_poset, random_sublattice, rng};
use distlat::representations::terminal_lattice;
use distlat::{ChainProduct, Interval, IntervalFamily, Poset};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("transitive_closure");
    let mut r = rng(1);
    for n in [16, 64, 256] {
        let g = random_digraph(n, 4.0 / n as f64, &mut r);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| g.transitive_closure())
        });
    }
    group.finish();
}

fn terminal(c: &mut Criterion) {
    let mut group = c.benchmark_group("terminal_lattice");
    for sizes in [vec![4, 5], vec![3, 3, 3], vec![6, 6]] {
        let p = ChainProduct::new(sizes.clone()).unwrap();
        let fam = IntervalFamily::from_intervals(p, [Interval::new(2, 1, 3, 2)]).unwrap();
        let d = construct_d(&fam);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{sizes:?}")),
            &d,
            |b, d| b.iter(|| terminal_lattice(black_box(d)).unwrap()),
        );
    }
    group.finish();
}

fn rival(c: &mut Criterion) {
    let mut group = c.benchmark_group("rival_extract");
    let mut r = rng(2);
    for sizes in [vec![3, 3], vec![4, 5], vec![3, 3, 3]] {
        let p = ChainProduct::new(sizes.clone()).unwrap();
        let l = random_sublattice(&p, &mut r);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{sizes:?}")),
            &l,
            |b, l| b.iter(|| remove(&rival_extract(black_box(l))).unwrap()),
        );
    }
    group.finish();
}

fn dilworth(c: &mut Criterion) {
    let mut group = c.benchmark_group("dilworth");
    let mut r = rng(3);
    for n in [8, 32, 64] {
        let p = random_poset(n, 0.2, &mut r);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| dilworth_decompose(black_box(p)))
        });
    }
    group.finish();
}

fn correspondence(c: &mut Criterion) {
    let mut group = c.benchmark_group("correspondence");
    group.sample_size(10);
    let cases = [
        ("antichain2_in_2x2", Poset::antichain(2), vec![2, 2]),
        ("chain3_in_2x2", Poset::chain(3), vec![2, 2]),
    ];
    for (name, p, sizes) in cases {
        let target = ChainProduct::new(sizes).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| enumerate_correspondence(black_box(&p), &target).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closure, terminal, rival, dilworth, correspondence);
criterion_main!(benches);
