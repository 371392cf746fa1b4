use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use episturm::returns::{returns_closed_form, returns_oracle, Side};
use episturm::{pal, DirectivePal, DirectiveWord, Morphism, Shift, Word};

const DL: &str = "a->ababac,b->ababa,c->ab";

fn pal_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("pal");
    for len in [8usize, 12, 16] {
        let u: Word = "abcacbbac".chars().cycle().take(len).collect::<String>().parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(len), &u, |b, u| b.iter(|| pal(black_box(u))));
    }
    group.finish();
    let u: Word = "acababab".parse().unwrap();
    c.bench_function("directive_pal_locate", |b| {
        b.iter(|| {
            let d = DirectiveWord::periodic(Word::empty(), "abbcaabcc".parse().unwrap()).unwrap();
            DirectivePal::new(d).locate(black_box(&u)).unwrap()
        })
    });
}

fn language(c: &mut Criterion) {
    let sigma: Morphism = DL.parse().unwrap();
    let shift = Shift::new(&sigma).unwrap();
    let mut group = c.benchmark_group("language");
    for n in [10usize, 30, 100] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| shift.window(n).unwrap()));
    }
    group.finish();
    c.bench_function("rauzy_graph_30", |b| b.iter(|| shift.rauzy_graph(30).unwrap()));
}

fn returns(c: &mut Criterion) {
    let sigma: Morphism = DL.parse().unwrap();
    let mut group = c.benchmark_group("returns");
    for u in ["ab", "acababab", "acabababacab"] {
        let u: Word = u.parse().unwrap();
        group.bench_with_input(BenchmarkId::new("closed_form", u.len()), &u, |b, u| {
            b.iter(|| returns_closed_form(&sigma, u).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", u.len()), &u, |b, u| {
            b.iter(|| returns_oracle(&sigma, u, Side::Left).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pal_closure, language, returns);
criterion_main!(benches);
