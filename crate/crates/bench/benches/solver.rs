use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sgc_core::reduce::{complete_expansion, multipartite_expansion};
use sgc_core::solve::{list_colorable, mn_chromatic_number, zero_free_chromatic_number};
use sgc_core::{ListAssignment, SimpleGraph};

fn cycle(n: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::new(n, &edges).unwrap()
}

fn solver(c: &mut Criterion) {
    let c7 = complete_expansion(&cycle(7));
    c.bench_function("zero_free_chromatic_number/expansion of C7", |b| {
        b.iter(|| zero_free_chromatic_number(black_box(&c7)))
    });
    c.bench_function("mn_chromatic_number/expansion of C7", |b| {
        b.iter(|| mn_chromatic_number(black_box(&c7)))
    });

    let pe = multipartite_expansion(&[2, 2, 2, 1]).unwrap();
    let lists = ListAssignment::zero_free(
        (0..pe.vertex_count())
            .map(|v| {
                let a = v as i32 % 4 + 1;
                vec![a, -a, a % 4 + 1, -(a % 4 + 1), (a + 1) % 4 + 1, -((a + 1) % 4 + 1)]
            })
            .collect(),
    )
    .unwrap();
    c.bench_function("list_colorable/parts 2,2,2,1 lists of 6", |b| {
        b.iter(|| list_colorable(black_box(pe.graph()), black_box(&lists)).unwrap())
    });
}

criterion_group!(benches, solver);
criterion_main!(benches);
