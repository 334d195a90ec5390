use criterion::{black_box, criterion_group, criterion_main, Criterion};

use omegatt::computads::{free_computad, typecheck, Cell};
use omegatt::corpus;
use omegatt::homcat::hom_factor;
use omegatt::metaops::{op_cell, suspend_cell};
use omegatt::name::Name;
use omegatt::oplib::{comp_cell, compose, eh_computad};
use omegatt::{DimSet, Tree};

fn trees(c: &mut Criterion) {
    c.bench_function("enumerate trees up to 6 nodes", |b| b.iter(|| Tree::enumerate(black_box(6))));
    let t = Tree::comp(3, 1, 3).unwrap();
    let w = DimSet::of(&[1, 2, 3]);
    c.bench_function("op tree B(3,1,3)", |b| b.iter(|| black_box(&t).op(&w)));
}

fn cells(c: &mut Criterion) {
    let t = comp_cell(3, 1, 3).unwrap();
    let home = free_computad(Tree::comp(3, 1, 3).unwrap().scheme().carrier());
    c.bench_function("typecheck comp(3,1,3)", |b| b.iter(|| typecheck(&home, black_box(&t)).unwrap()));
    let w = DimSet::of(&[1, 3]);
    c.bench_function("op cell comp(3,1,3)", |b| b.iter(|| op_cell(&w, black_box(&t))));
    c.bench_function("suspend cell comp(3,1,3)", |b| b.iter(|| suspend_cell(black_box(&t))));
}

fn hom(c: &mut Criterion) {
    let bc = eh_computad();
    let (a, b) = (Cell::var(Name::from("a"), 2), Cell::var(Name::from("b"), 2));
    let ab = compose(&bc.computad, &a, 1, &b).unwrap();
    c.bench_function("hom factor comp1(a,b)", |bench| bench.iter(|| hom_factor(&bc, black_box(&ab)).unwrap()));
    c.bench_function("loop corpus depth 2", |bench| bench.iter(|| corpus::eh_loops(black_box(2))));
}

criterion_group!(benches, trees, cells, hom);
criterion_main!(benches);
