use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use operadica::arc::{build_ac3, ArchetypeSet};
use operadica::braid::{BraidWord, GarsideNF};
use operadica::classes::{build_class_poset, classify_classes};
use operadica::fractions::groups::{Family, GroupContext};
use operadica::homology::{dense_snf_oracle, reduced_homology, smith_normal_form, SparseMatrix};
use operadica::operad::builtins;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
    let letters = (0..len).map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    BraidWord::new(n, letters).unwrap()
}

fn garside(c: &mut Criterion) {
    let mut g = c.benchmark_group("garside");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for len in [10, 40, 160] {
        let w = random_word(&mut rng, 6, len);
        g.bench_with_input(BenchmarkId::new("from_word", len), &w, |b, w| b.iter(|| GarsideNF::from_word(black_box(w))));
    }
    g.finish();
}

fn thompson(c: &mut Criterion) {
    let ctx = GroupContext::new(Family::F).unwrap();
    let a = ctx.word("x0^-1 x2 x0").unwrap();
    let b = ctx.word("x3").unwrap();
    c.bench_function("thompson/eq conjugation", |bench| bench.iter(|| ctx.equal(black_box(&a), black_box(&b)).unwrap()));
    c.bench_function("thompson/word length 8", |bench| {
        bench.iter(|| ctx.word(black_box("x0 x1^-1 x2 x0^-1 x3 x1 x0^2")).unwrap())
    });
}

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("snf");
    let a = ArchetypeSet::monochromatic_binary();
    for l in [7, 8] {
        let cx = build_ac3(&a, &a.uniform_word("c", l).unwrap()).complex(3, 1 << 22).unwrap();
        g.bench_with_input(BenchmarkId::new("matching complex homology", l), &cx, |b, cx| {
            b.iter(|| reduced_homology(black_box(cx), 2).unwrap())
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let dense: Vec<Vec<i64>> = (0..60)
        .map(|_| (0..60).map(|_| if rng.gen_bool(0.1) { rng.gen_range(-2..=2) } else { 0 }).collect())
        .collect();
    let m = SparseMatrix::from_dense(&dense);
    g.bench_function("sparse 60x60", |b| b.iter(|| smith_normal_form(black_box(&m))));
    g.bench_function("dense oracle 60x60", |b| b.iter(|| dense_snf_oracle(black_box(&m))));
    g.finish();
}

fn classes(c: &mut Criterion) {
    let mut g = c.benchmark_group("classes");
    g.sample_size(10);
    let op = builtins::cube(1, &[vec![2, 3]], None).unwrap();
    g.bench_function("cube {2,3} poset to 6", |b| {
        b.iter(|| classify_classes(&build_class_poset(black_box(&op), 6).unwrap()))
    });
    g.finish();
}

criterion_group!(kernels, garside, thompson, snf, classes);
criterion_main!(kernels);
