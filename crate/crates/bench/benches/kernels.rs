use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use uqmn::crystal::SignTable;
use uqmn::hw_maps::{psi_ab, PsiFactory, Variant};
use uqmn::linalg;
use uqmn::straightening::{self, ThreeColumn};

fn bareiss_rank(c: &mut Criterion) {
    // Largest weight block of ψ_{2,1} on the 2x3 grid.
    let map = psi_ab(2, 3, 2, 1, Variant::Generic).unwrap();
    let block = map.blocks.values().max_by_key(|b| b.rows.len() * b.cols.len()).unwrap();
    c.bench_function("bareiss_rank/psi21_2x3_block", |b| b.iter(|| linalg::rank(black_box(&block.entries))));
}

fn psi_construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi_ab");
    g.sample_size(20);
    for (a, b) in [(1, 1), (2, 1), (2, 2)] {
        g.bench_function(format!("2x2/{a}{b}"), |bch| bch.iter(|| psi_ab(2, 2, a, b, Variant::Generic).unwrap()));
    }
    g.bench_function("2x3/21", |bch| bch.iter(|| psi_ab(2, 3, 2, 1, Variant::Generic).unwrap()));
    g.finish();
}

fn sign_table(c: &mut Criterion) {
    c.bench_function("sign_table/2x3_K3", |b| b.iter(|| SignTable::build(2, 3, black_box(3)).unwrap()));
    c.bench_function("sign_table/3x3_K4", |b| b.iter(|| SignTable::build(3, 3, black_box(4)).unwrap()));
}

fn three_column(c: &mut Criterion) {
    let mut g = c.benchmark_group("straightening");
    g.sample_size(10);
    let mut factory = PsiFactory::new(2, 2, Variant::Special22).unwrap();
    let tc = ThreeColumn::new(&mut factory, 2, 2, 1).unwrap();
    let w = straightening::central_weights(5, 2, 2)[0].clone();
    g.bench_function("threecol/221_central", |b| b.iter(|| tc.quotient_at(black_box(&w))));
    g.bench_function("threecol/221_build", |b| {
        b.iter(|| {
            let mut f = PsiFactory::new(2, 2, Variant::Special22).unwrap();
            ThreeColumn::new(&mut f, 2, 2, 1).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, bareiss_rank, psi_construction, sign_table, three_column);
criterion_main!(benches);
