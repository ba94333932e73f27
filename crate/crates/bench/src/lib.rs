//! Criterion benchmarks for the hot paths: group closure, q-rationals,
//! word evaluation and the property sweeps.

use criterion::{black_box, BenchmarkId, Criterion};
use qmodular::cert::{self, DEFAULT_SEED};
use qmodular::grp::{self, Generator};
use qmodular::qrat::{self, Fraction};
use qmodular::CycRing;

pub fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [3u64, 4, 5] {
        let gens = Generator::rs(&CycRing::new(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &gens, |b, gens| {
            b.iter(|| grp::closure(black_box(gens), cert::DEFAULT_CAP))
        });
    }
    group.finish();
}

pub fn q_rationals(c: &mut Criterion) {
    let f = Fraction::new(355, 113).unwrap();
    c.bench_function("q_rational 355/113", |b| b.iter(|| qrat::q_rational(black_box(&f))));
    c.bench_function("jones 355/113", |b| b.iter(|| qrat::jones(black_box(&f))));
}

pub fn word_eval(c: &mut Criterion) {
    let words = cert::sample_words(DEFAULT_SEED, 100);
    let ring = CycRing::new(7);
    c.bench_function("eval 100 words at zeta7", |b| {
        b.iter(|| {
            for w in &words {
                black_box(w.eval_in(&ring).unwrap());
            }
        })
    });
}

pub fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    group.bench_function("vanishing tables, s <= 30", |b| b.iter(|| cert::vanishing_tables(30)));
    let words = cert::sample_words(DEFAULT_SEED, 100);
    group.bench_function("divisibility laws, 100 words", |b| {
        b.iter(|| cert::divisibility_laws(black_box(&words)))
    });
    group.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    closure(c);
    q_rationals(c);
    word_eval(c);
    sweeps(c);
}
