//! The acceptance gate: nine criteria, one pass line each (run with
//! `--nocapture` to see them). Every tolerance is exact.

use crossfam::bounds::{self, BoundGrid, LemmaId};
use crossfam::certify::{chain_certificate, greedy_sequences, CertificateKind};
use crossfam::constructions::{
    cross_pair, h1, m1, star_pair, thm2_pair, thm3_cycle_pair, thm3_singleton_pair,
};
use crossfam::corpus::{random_chain_instance, random_family, random_s_almost_pair};
use crossfam::covers::{compute_covers, compute_covers_bounded, exhaustive_covers};
use crossfam::predicates::{common_core, is_cross_t, is_s_almost_cross_t, FamilyPair};
use crossfam::search::{brute_force_max, maximality_scan, naive_oracle_max};
use crossfam::{binomial, enumerate_k_subsets, BigCount, Params, SetFamily, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn product(pair: &FamilyPair) -> BigCount {
    pair.f.size() * pair.g.size()
}

/// A1: every construction on the grid hits its size formula exactly and
/// passes its claimed predicate.
#[test]
fn a1_construction_identities() {
    let mut points = 0u32;
    for t in 1u32..=3 {
        for k in t + 1..=t + 3 {
            for s in 1u32..=3 {
                for n in k + 1..=20 {
                    let (nl, kl, tl, sl) = (n as u64, k as u64, t as u64, s as u64);
                    if let Ok(pair) = star_pair(n, k, t) {
                        let expect = binomial(nl - tl, kl - tl);
                        assert_eq!(product(&pair), &expect * &expect);
                        assert!(is_cross_t(&pair).holds);
                        points += 1;
                    }
                    if let Ok(pair) = thm2_pair(n, k, t, s, None) {
                        assert_eq!(product(&pair), bounds::g1(nl, kl, tl, sl).unwrap());
                        assert!(is_s_almost_cross_t(&pair).holds, "n={n} k={k} t={t} s={s}");
                        assert!(!is_cross_t(&pair).holds);
                        points += 1;
                    }
                    if let Ok(pair) = cross_pair(n, k, t) {
                        assert_eq!(product(&pair), bounds::g4(nl, kl, tl).unwrap());
                        assert!(is_cross_t(&pair).holds);
                        assert!(common_core(&pair).len() < t, "n={n} k={k} t={t}");
                        points += 1;
                    }
                    if k == t + 1 {
                        if let Ok(pair) = thm3_singleton_pair(n, t, s, None) {
                            assert_eq!(product(&pair), bounds::g2(nl, tl, sl).unwrap());
                            assert!(is_s_almost_cross_t(&pair).holds);
                            assert!(!is_cross_t(&pair).holds);
                            points += 1;
                        }
                        if let Ok(pair) = thm3_cycle_pair(n, t, s) {
                            assert_eq!(product(&pair), bounds::g3(nl, tl, sl).unwrap());
                            assert!(is_s_almost_cross_t(&pair).holds);
                            assert!(!is_cross_t(&pair).holds);
                            points += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(points > 500, "grid unexpectedly sparse: {points}");
    println!("A1: pass ({points} construction identities verified exactly)");
}

/// A2: the binomial-inequality lemmas hold with zero counterexamples over
/// the full acceptance grid.
#[test]
fn a2_lemma_suite() {
    let grid = BoundGrid::acceptance();
    let mut points = 0u64;
    for lemma in LemmaId::ALL {
        let report = bounds::check_lemma(lemma, &grid, false).unwrap();
        assert!(
            report.verified(),
            "lemma {} refuted: {:?}",
            report.lemma_id,
            report.counterexamples
        );
        points += report.points_checked;
    }
    println!("A2: pass ({points} inequality instances, zero counterexamples)");
}

/// A3: the optimized search and the naive oracle agree in value and witness.
#[test]
fn a3_oracle_equivalence() {
    let mut cases = 0;
    for (n, k, t, s) in [(4, 2, 1, 1), (4, 2, 1, 2), (5, 2, 1, 1), (5, 2, 1, 2)] {
        for constrained in [false, true] {
            let params = Params::new(n, k, t, s).unwrap();
            let fast = brute_force_max(&params, constrained, Some(2)).unwrap();
            let slow = naive_oracle_max(&params, constrained).unwrap();
            assert!(
                fast.agrees_with(&slow),
                "(n,k,t,s)=({n},{k},{t},{s}) constrained={constrained}"
            );
            assert!(is_s_almost_cross_t(&fast.witness).holds);
            if constrained {
                assert!(common_core(&fast.witness).len() < t);
            }
            cases += 1;
        }
    }
    println!("A3: pass ({cases} instances, value and witness identical)");
}

/// A4: branch-and-bound covers equal the size-ascending enumerator.
#[test]
fn a4_cover_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..50 {
        let n = rng.gen_range(5..=10u32);
        let k = rng.gen_range(2..=4u32.min(n - 1));
        let fam = random_family(&mut rng, n, k, 6);
        let t = rng.gen_range(1..=k);
        let fast = compute_covers(&fam, t).unwrap();
        let slow = exhaustive_covers(&fam, t).unwrap();
        assert_eq!(fast, slow, "case {case}: n={n} k={k} t={t}");
    }
    // Fixed instances.
    let x = Subset::interval(5, 1, 5).unwrap();
    let w = Subset::from_elements(5, &[1]).unwrap();
    let star = h1(5, &x, &w, 2).unwrap();
    assert_eq!(compute_covers(&star, 1).unwrap().tau, 1);
    let y = Subset::from_elements(5, &[1, 2]).unwrap();
    let r = compute_covers(&m1(5, &y, 2, 1).unwrap(), 1).unwrap();
    assert_eq!(r.tau, 2);
    assert_eq!(r.min_covers, vec![y]);
    println!("A4: pass (50 seeded families + fixed instances match the oracle)");
}

/// A5: the greedy decomposition meets its exact small case and the universal
/// length bound on seeded pairs. Properties (a)(b)(c) are asserted inside
/// every run.
#[test]
fn a5_greedy_sequences() {
    let all: Vec<Subset> = enumerate_k_subsets(4, 2).unwrap().collect();
    let complete = SetFamily::new(4, 2, all).unwrap();
    let pair = FamilyPair::new(complete.clone(), complete, 1, 6).unwrap();
    let seq = greedy_sequences(&pair, None).unwrap();
    assert_eq!(seq.m, 6);
    assert_eq!(seq.bound, BigCount::from(6u32));
    assert!(seq.leftover.is_empty());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let t = rng.gen_range(1..=2u32);
        let k = rng.gen_range(t + 1..=4u32);
        let n = rng.gen_range(2 * k..=10);
        let s = rng.gen_range(1..=3u32);
        let pair = random_s_almost_pair(&mut rng, n, k, t, s).unwrap();
        let seq = greedy_sequences(&pair, None).unwrap();
        assert!(seq.within_bound(), "case {case}: m={} bound={}", seq.m, seq.bound);
    }
    println!("A5: pass (m = 6 exactly; 100 seeded runs within the bound)");
}

/// A6: the counting certificate exists, un-widened, on every seeded input.
#[test]
fn a6_chain_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..1000 {
        let inst = random_chain_instance(&mut rng);
        let cert = chain_certificate(&inst.f, &inst.h, &inst.g1, inst.t, inst.s)
            .unwrap()
            .unwrap_or_else(|| panic!("case {case}: refutation"));
        assert!(cert.lhs <= cert.rhs, "case {case}");
        assert_ne!(cert.kind, CertificateKind::Widened, "case {case}");
    }
    println!("A6: pass (1000 certificates, none widened, zero refutations)");
}

/// A7: the threshold-scale pair is maximal and has covering numbers (1, 2).
#[test]
fn a7_threshold_scale_maximality() {
    let pair = thm2_pair(100, 3, 1, 1, None).unwrap();
    assert_eq!(pair.f.len(), 292);
    assert_eq!(pair.g.len(), 4852);
    let verdict = maximality_scan(&pair, Some(4)).unwrap();
    assert!(verdict.holds, "addable: {:?}", verdict.violations);

    let rf = compute_covers_bounded(&pair.f, 1, 3).unwrap().unwrap();
    assert_eq!(rf.tau, 1);
    assert_eq!(rf.min_covers, vec![Subset::from_elements(100, &[1]).unwrap()]);
    let rg = compute_covers_bounded(&pair.g, 1, 3).unwrap().unwrap();
    assert_eq!(rg.tau, 2);
    let expect: Vec<Subset> = [[1, 2], [1, 3], [1, 4]]
        .iter()
        .map(|e| Subset::from_elements(100, e).unwrap())
        .collect();
    assert_eq!(rg.min_covers, expect);
    println!("A7: pass (maximal at n = 100; covering numbers (1, 2))");
}

/// A8: the crossover between the two size formulas happens exactly at
/// t = s + 2.
#[test]
fn a8_crossover_boundary() {
    let mut points = 0;
    for t in 1u64..=5 {
        for s in 1u64..=4 {
            for extra in [0u64, 10] {
                let n = 5 * s * (t + 1) * (t + 1) + extra;
                let g2 = bounds::g2(n, t, s).unwrap();
                let g3 = bounds::g3(n, t, s).unwrap();
                if t >= s + 2 {
                    assert!(g2 > g3, "t={t} s={s} n={n}: {g2} vs {g3}");
                } else {
                    assert!(g2 < g3, "t={t} s={s} n={n}: {g2} vs {g3}");
                }
                points += 1;
            }
        }
    }
    println!("A8: pass ({points} boundary points, both directions exact)");
}

/// A9: searches and scans serialize to identical bytes under 1 or 4 threads.
#[test]
fn a9_thread_determinism() {
    for (n, k, t, s) in [(4, 2, 1, 1), (4, 2, 1, 2), (5, 2, 1, 1), (5, 2, 1, 2)] {
        for constrained in [false, true] {
            let params = Params::new(n, k, t, s).unwrap();
            let one = brute_force_max(&params, constrained, Some(1)).unwrap();
            let four = brute_force_max(&params, constrained, Some(4)).unwrap();
            assert_eq!(
                serde_json::to_string(&one.to_json()).unwrap(),
                serde_json::to_string(&four.to_json()).unwrap()
            );
        }
    }
    let pair = thm2_pair(100, 3, 1, 1, None).unwrap();
    let one = maximality_scan(&pair, Some(1)).unwrap();
    let four = maximality_scan(&pair, Some(4)).unwrap();
    assert_eq!(
        serde_json::to_string(&one.to_json()).unwrap(),
        serde_json::to_string(&four.to_json()).unwrap()
    );
    println!("A9: pass (bit-identical JSON across thread counts)");
}
