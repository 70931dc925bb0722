use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sgc_core::choose::{is_t_choosable, CanonicalStream, SearchLimits, Universe, UniverseCap};
use sgc_core::reduce::multipartite_expansion;
use sgc_core::ListMode;

fn choose(c: &mut Criterion) {
    let u = Universe::new(3, ListMode::ZeroFree).unwrap();
    c.bench_function("canonical stream/n=4 t=2 cap 3", |b| {
        b.iter(|| CanonicalStream::new(black_box(4), 2, u).unwrap().count())
    });

    let k3 = multipartite_expansion(&[3]).unwrap();
    let limits = SearchLimits {
        cap: UniverseCap(6),
        budget: u64::MAX,
        seed: None,
    };
    c.bench_function("is_t_choosable/negative K3 t=2 exact", |b| {
        b.iter(|| is_t_choosable(black_box(k3.graph()), 2, limits).unwrap())
    });

    let mut group = c.benchmark_group("is_t_choosable/k=2");
    group.sample_size(10);
    let pe = multipartite_expansion(&[2, 2, 1]).unwrap();
    let limits = SearchLimits {
        cap: UniverseCap(3),
        budget: u64::MAX,
        seed: None,
    };
    group.bench_function("parts 2,2,1 t=4 cap 3", |b| {
        b.iter(|| is_t_choosable(black_box(pe.graph()), 4, limits).unwrap())
    });
    group.finish();
}

criterion_group!(benches, choose);
criterion_main!(benches);
