use criterion::{criterion_group, criterion_main, Criterion};

use dodeca_core::cosets::low_index_classes;
use dodeca_core::cubecomplex::{cubulate, npc_report};
use dodeca_core::dodecomplex::appendix::{six_cover, special_cover};
use dodeca_core::dodecomplex::DodecahedralComplex;
use dodeca_core::fpgroup::{builtin_presentation, Space};
use dodeca_core::homology::cover_homology;
use dodeca_core::hypersurface::{disk_surfaces, specialness};
use dodeca_core::pipeline::double_cover_actions;

fn benches(c: &mut Criterion) {
    let ws = builtin_presentation(Space::Ws);
    let s = special_cover().action;
    let x = DodecahedralComplex::cover(Space::Ws, &s);
    let cubes = cubulate(&x);

    c.bench_function("low index 5", |b| b.iter(|| low_index_classes(&ws, 5).unwrap()));
    c.bench_function("homology degree 60", |b| b.iter(|| cover_homology(&ws, &s.as_table())));
    c.bench_function("cubulate degree 60", |b| b.iter(|| cubulate(&x)));
    c.bench_function("npc degree 60", |b| b.iter(|| npc_report(&cubes)));
    c.bench_function("disk surfaces degree 60", |b| b.iter(|| disk_surfaces(&x)));
    c.bench_function("specialness degree 60", |b| b.iter(|| specialness(&cubes)));
    let six = six_cover().action;
    c.bench_function("doubles of the six-sheeted cover", |b| b.iter(|| double_cover_actions(Space::Ws, &six).unwrap()));
}

criterion_group! {
    name = pipeline;
    config = Criterion::default().sample_size(10);
    targets = benches
}
criterion_main!(pipeline);
