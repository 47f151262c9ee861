//! Seeded random instance generators used by the oracle-equivalence and
//! certificate test suites. Everything here is deterministic given the RNG
//! state; tests seed a ChaCha stream and replay it.

use crate::family::{Result, SetFamily, Subset};
use crate::predicates::{t_disjoint_members, FamilyPair};
use rand::seq::SliceRandom;
use rand::Rng;

/// A uniformly random k-subset of [n].
pub fn random_subset<R: Rng>(rng: &mut R, n: u32, k: u32) -> Subset {
    let mut pool: Vec<u32> = (1..=n).collect();
    pool.shuffle(rng);
    pool.truncate(k as usize);
    Subset::from_elements(n, &pool).expect("sampled elements are in range and distinct")
}

/// A non-empty family of at most `max_members` distinct random k-subsets.
pub fn random_family<R: Rng>(rng: &mut R, n: u32, k: u32, max_members: usize) -> SetFamily {
    let target = rng.gen_range(1..=max_members.max(1));
    let mut fam = SetFamily::new(n, k, vec![]).expect("valid shape");
    // Distinct k-subsets may run out before the target; bail after enough tries.
    let mut tries = 0;
    while fam.len() < target && tries < 16 * max_members {
        let cand = random_subset(rng, n, k);
        if !fam.contains(&cand) {
            fam.insert(cand).expect("candidate fits the family");
        }
        tries += 1;
    }
    if fam.is_empty() {
        fam.insert(random_subset(rng, n, k))
            .expect("first member always fits");
    }
    fam
}

/// A random pair that satisfies the s-almost cross-t property, produced by
/// sampling two families and repairing: while some member is t-disjoint with
/// more than s partners, drop the worst offender. Removal strictly shrinks
/// the pair, and singleton/singleton pairs always satisfy the property (one
/// partner, s >= 1), so this terminates with both sides non-empty.
pub fn random_s_almost_pair<R: Rng>(
    rng: &mut R,
    n: u32,
    k: u32,
    t: u32,
    s: u32,
) -> Result<FamilyPair> {
    let max_members = 8;
    let mut f = random_family(rng, n, k, max_members);
    let mut g = random_family(rng, n, k, max_members);
    loop {
        // Worst offender: (count, side, member), larger count first; ties
        // resolved toward F then the lexicographically smaller member.
        let mut worst: Option<(usize, bool, Subset)> = None;
        for (own, other, is_f) in [(&f, &g, true), (&g, &f, false)] {
            for m in own.iter() {
                let count = other.iter().filter(|p| p.isect(m) < t).count();
                if count > s as usize && worst.as_ref().is_none_or(|w| count > w.0) {
                    worst = Some((count, is_f, m.clone()));
                }
            }
        }
        let Some((_, is_f, m)) = worst else { break };
        let (own, other) = if is_f { (&f, &g) } else { (&g, &f) };
        if own.len() > 1 {
            let repaired = without(own, &m);
            if is_f {
                f = repaired;
            } else {
                g = repaired;
            }
        } else {
            // The offender is the side's last member; shed one of its
            // t-disjoint partners instead. An offending count above s >= 1
            // means the other side has at least two members.
            let partner = other
                .iter()
                .find(|p| p.isect(&m) < t)
                .expect("offender has a disjoint partner")
                .clone();
            let repaired = without(other, &partner);
            if is_f {
                g = repaired;
            } else {
                f = repaired;
            }
        }
    }
    let pair = FamilyPair::new(f, g, t, s)?;
    debug_assert!(crate::predicates::is_s_almost_cross_t(&pair).holds);
    Ok(pair)
}

fn without(fam: &SetFamily, m: &Subset) -> SetFamily {
    let sets = fam.iter().filter(|x| *x != m).cloned().collect();
    SetFamily::new(fam.n(), fam.k(), sets).expect("removal preserves the shape")
}

/// A valid input for the single-step certificate: a family F, an anchor set H
/// with |H ∩ G1| < t, and a reference set G1 that at most s members of F are
/// t-disjoint with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInstance {
    pub f: SetFamily,
    pub h: Subset,
    pub g1: Subset,
    pub t: u32,
    pub s: u32,
}

pub fn random_chain_instance<R: Rng>(rng: &mut R) -> ChainInstance {
    let t = rng.gen_range(1..=3u32);
    let k = rng.gen_range(t + 1..=(t + 2).min(5));
    let n = rng.gen_range(2 * k..=12);
    let s = rng.gen_range(1..=3u32);
    let g1 = random_subset(rng, n, k);

    // H: non-empty, below-t overlap with G1. Resample until the overlap
    // constraint holds; drawing from outside G1 is always possible (n >= 2k),
    // so this terminates quickly.
    let h = loop {
        let size = rng.gen_range(1..=k);
        let cand = random_subset(rng, n, size);
        if cand.isect(&g1) < t {
            break cand;
        }
    };

    // F: members meeting G1 in >= t elements are always safe; allow at most
    // s that are t-disjoint with it.
    let mut f = SetFamily::new(n, k, vec![]).expect("valid shape");
    let target = rng.gen_range(1..=10usize);
    let mut disjoint_budget = rng.gen_range(0..=s) as usize;
    let mut tries = 0;
    while f.len() < target && tries < 200 {
        tries += 1;
        let cand = random_subset(rng, n, k);
        if f.contains(&cand) {
            continue;
        }
        if cand.isect(&g1) < t {
            if disjoint_budget == 0 {
                continue;
            }
            disjoint_budget -= 1;
        }
        f.insert(cand).expect("candidate fits the family");
    }
    if f.is_empty() {
        // Guaranteed-safe member: a k-set containing t elements of G1.
        let mut elems: Vec<u32> = g1.iter().take(t as usize).collect();
        let mut e = 1;
        while elems.len() < k as usize {
            if !g1.contains(e) && !elems.contains(&e) {
                elems.push(e);
            }
            e += 1;
        }
        f.insert(Subset::from_elements(n, &elems).expect("in range"))
            .expect("first member always fits");
    }
    debug_assert!(
        t_disjoint_members(&f, &g1, t).expect("same universe").len() <= s as usize
    );
    ChainInstance { f, h, g1, t, s }
}
