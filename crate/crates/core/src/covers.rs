//! t-covers, the covering number tau_t, the family of all minimum t-covers,
//! and their union.
//!
//! The production path is a branch-and-bound search over elements ordered by
//! descending member frequency; `exhaustive_covers` is the independent
//! size-ascending enumerator kept as its oracle. t-covers range over
//! arbitrary subsets of [n], not only k-subsets.

use crate::family::{enumerate_k_subsets, Error, Result, SetFamily, Subset};
use serde::Serialize;
use std::collections::BTreeSet;

/// The covering number together with all minimum t-covers and their union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub tau: u32,
    pub min_covers: Vec<Subset>,
    pub cover_union: Subset,
}

impl CoverResult {
    fn from_covers(covers: BTreeSet<Subset>, n: u32) -> CoverResult {
        let tau = covers.iter().next().expect("non-empty").len();
        let mut cover_union = Subset::empty(n);
        for c in &covers {
            cover_union = cover_union.union(c);
        }
        CoverResult {
            tau,
            min_covers: covers.into_iter().collect(),
            cover_union,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tau": self.tau,
            "covers": self.min_covers,
            "union": self.cover_union,
        })
    }
}

/// True iff every member of the family meets T in at least t elements.
pub fn is_t_cover(tset: &Subset, fam: &SetFamily, t: u32) -> Result<bool> {
    if fam.is_empty() {
        return Err(Error::Precondition("empty family has no t-covers".into()));
    }
    if tset.universe() != fam.n() {
        return Err(Error::InvalidSubset("universe mismatch".into()));
    }
    Ok(fam.iter().all(|f| f.isect(tset) >= t))
}

/// Computes tau_t and all minimum t-covers by branch and bound.
pub fn compute_covers(fam: &SetFamily, t: u32) -> Result<CoverResult> {
    Ok(compute_covers_bounded(fam, t, fam.n())?.expect("the ground set itself is a t-cover"))
}

/// As `compute_covers`, but gives up (returns None) if tau_t exceeds
/// `max_size`. Large-n scans only ever need small covers.
pub fn compute_covers_bounded(
    fam: &SetFamily,
    t: u32,
    max_size: u32,
) -> Result<Option<CoverResult>> {
    if fam.is_empty() {
        return Err(Error::Precondition("empty family has no t-covers".into()));
    }
    if t > fam.k() {
        return Err(Error::Precondition(format!(
            "t={t} exceeds member size k={}",
            fam.k()
        )));
    }
    let n = fam.n();
    // Branching order: elements by descending frequency across members.
    let mut freq = vec![0u32; n as usize + 1];
    for m in fam.iter() {
        for e in m.iter() {
            freq[e as usize] += 1;
        }
    }
    // tau_t >= t: a t-cover meets some member in at least t elements.
    for budget in t..=max_size {
        let mut covers = BTreeSet::new();
        branch(fam, t, &freq, &mut Subset::empty(n), budget, &mut covers);
        if !covers.is_empty() {
            return Ok(Some(CoverResult::from_covers(covers, n)));
        }
    }
    Ok(None)
}

/// Extends the partial cover toward every t-cover of size exactly `budget`.
/// Any t-cover must take at least one further element from a deficient
/// member, so branching over that member's missing elements is complete.
fn branch(
    fam: &SetFamily,
    t: u32,
    freq: &[u32],
    partial: &mut Subset,
    budget: u32,
    covers: &mut BTreeSet<Subset>,
) {
    let size = partial.len();
    // Most-deficient member gives the strongest lower bound for pruning.
    let mut worst: Option<(&Subset, u32)> = None;
    for m in fam.iter() {
        let have = m.isect(partial);
        if have < t {
            let deficiency = t - have;
            if worst.is_none_or(|(_, d)| deficiency > d) {
                worst = Some((m, deficiency));
            }
        }
    }
    let Some((member, deficiency)) = worst else {
        if size == budget {
            covers.insert(partial.clone());
        } else {
            // A cover strictly below the current budget would have been found
            // at a smaller budget; extend it in every way to the exact size.
            let missing: Vec<u32> = (1..=partial.universe())
                .filter(|&e| !partial.contains(e))
                .collect();
            extend_to_size(partial, &missing, 0, budget, covers);
        }
        return;
    };
    if size + deficiency > budget {
        return;
    }
    let mut candidates: Vec<u32> = member.iter().filter(|&e| !partial.contains(e)).collect();
    candidates.sort_by(|&a, &b| {
        freq[b as usize]
            .cmp(&freq[a as usize])
            .then(a.cmp(&b))
    });
    for e in candidates {
        partial.insert(e);
        branch(fam, t, freq, partial, budget, covers);
        partial.remove(e);
    }
}

fn extend_to_size(
    partial: &mut Subset,
    pool: &[u32],
    from: usize,
    budget: u32,
    covers: &mut BTreeSet<Subset>,
) {
    if partial.len() == budget {
        covers.insert(partial.clone());
        return;
    }
    for i in from..pool.len() {
        partial.insert(pool[i]);
        extend_to_size(partial, pool, i + 1, budget, covers);
        partial.remove(pool[i]);
    }
}

/// Independent oracle: enumerate every subset of [n] in size-ascending order
/// and collect all covers of the first size that admits one. Shares no search
/// code with `compute_covers`; the cover test is a direct loop.
pub fn exhaustive_covers(fam: &SetFamily, t: u32) -> Result<CoverResult> {
    if fam.is_empty() {
        return Err(Error::Precondition("empty family has no t-covers".into()));
    }
    let n = fam.n();
    for size in 0..=n {
        let mut covers = BTreeSet::new();
        for cand in enumerate_k_subsets(n, size)? {
            let mut ok = true;
            for m in fam.iter() {
                let mut meet = 0;
                for e in cand.iter() {
                    if m.contains(e) {
                        meet += 1;
                    }
                }
                if meet < t {
                    ok = false;
                    break;
                }
            }
            if ok {
                covers.insert(cand);
            }
        }
        if !covers.is_empty() {
            return Ok(CoverResult::from_covers(covers, n));
        }
    }
    unreachable!("the ground set covers any family with t <= k")
}
