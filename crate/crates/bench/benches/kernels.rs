use criterion::{black_box, criterion_group, criterion_main, Criterion};
use crossfam::constructions::thm2_pair;
use crossfam::covers::compute_covers;
use crossfam::search::{brute_force_max, maximality_scan};
use crossfam::{enumerate_k_subsets, Params, Subset};
use rand::SeedableRng;

fn intersection_kernel(c: &mut Criterion) {
    let subs: Vec<Subset> = enumerate_k_subsets(100, 3).unwrap().take(2000).collect();
    c.bench_function("isect_2000x2000", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for a in &subs {
                for x in &subs {
                    acc += a.isect(black_box(x)) as u64;
                }
            }
            acc
        })
    });
}

fn brute_force_sweep(c: &mut Criterion) {
    let params = Params::new(5, 2, 1, 1).unwrap();
    c.bench_function("brute_force_5_2_1_1", |b| {
        b.iter(|| brute_force_max(black_box(&params), false, Some(1)).unwrap())
    });
}

fn cover_search(c: &mut Criterion) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let fams: Vec<_> = (0..10)
        .map(|_| crossfam::corpus::random_family(&mut rng, 10, 4, 7))
        .collect();
    c.bench_function("compute_covers_10x", |b| {
        b.iter(|| {
            for fam in &fams {
                black_box(compute_covers(black_box(fam), 2).unwrap());
            }
        })
    });
}

fn maximality(c: &mut Criterion) {
    let pair = thm2_pair(40, 3, 1, 1, None).unwrap();
    c.bench_function("maximality_scan_40_3", |b| {
        b.iter(|| maximality_scan(black_box(&pair), Some(1)).unwrap())
    });
}

criterion_group!(
    benches,
    intersection_kernel,
    brute_force_sweep,
    cover_search,
    maximality
);
criterion_main!(benches);
