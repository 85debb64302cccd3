use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tambara_bench::{fold_pair, group, induction};
use tambara_core::bispan::{compose, Bispan};
use tambara_core::biset::u_apply_object;
use tambara_core::tambara::{check_axioms, AxiomOptions, FixedPointFunctor, Transformed};
use tambara_core::{dependent_product, GSet, TabRing, Universe, Verify};

fn exponential(c: &mut Criterion) {
    for name in ["c2", "c3", "s3"] {
        let (f, p) = fold_pair(&group(name));
        c.bench_function(&format!("dependent_product fold {name}"), |b| {
            b.iter(|| dependent_product(black_box(&f), black_box(&p)).unwrap())
        });
    }
}

fn bisets(c: &mut Criterion) {
    let u = induction("s3", "c2");
    let x = GSet::regular(u.right_group());
    for verify in [Verify::Eager, Verify::Fast] {
        c.bench_function(&format!("u_apply_object ind s3<-c2 regular {verify:?}"), |b| {
            b.iter(|| u_apply_object(&u, black_box(&x), verify).unwrap())
        });
    }
}

fn bispans(c: &mut Criterion) {
    let (f, p) = fold_pair(&group("c3"));
    let first = Bispan::gen_t(&p);
    let second = Bispan::gen_n(&f);
    c.bench_function("compose N_f after T_p on c3", |b| {
        b.iter(|| compose(black_box(&second), black_box(&first)).unwrap())
    });
}

fn tambara(c: &mut Criterion) {
    let mut g = c.benchmark_group("axioms");
    g.sample_size(10);
    let opts = AxiomOptions { max_cases: usize::MAX, ..Default::default() };
    let c2 = group("c2");
    let universe = Universe::standard(&c2, 3);
    let t = FixedPointFunctor::new(&c2, TabRing::zmod(4).unwrap());
    g.bench_function("fixed point Z/4 on c2 up to 3", |b| b.iter(|| check_axioms(&t, &universe, &opts)));
    let u = induction("s3", "c2");
    let ts = FixedPointFunctor::new(u.left_group(), TabRing::zmod(4).unwrap());
    g.bench_function("transformed by ind s3<-c2, c2 up to 3", |b| {
        b.iter(|| {
            let tu = Transformed::with_verify(ts.clone(), &u, Verify::Fast).unwrap();
            check_axioms(&tu, &universe, &opts)
        })
    });
    g.finish();
}

criterion_group!(benches, exponential, bisets, bispans, tambara);
criterion_main!(benches);
