//! Exhaustive product-maximization over family pairs at tiny parameters, a
//! deliberately naive oracle for it, and the large-n maximality scan.
//!
//! The optimized sweep indexes the C(n,k) k-subsets in lexicographic order
//! and represents a family as a bitmask over those indices; per-index
//! disjointness masks turn the pair predicate into popcount arithmetic.

use crate::family::{enumerate_k_subsets, BigCount, Error, Params, Result, SetFamily, Subset};
use crate::predicates::{require_s_almost, ClosureState, FamilyPair, Side, Verdict, Violation, ViolationDetail};
use rayon::prelude::*;
use std::cmp::Ordering;

/// Outcome of an exhaustive pair search: the exact maximum of |F||G| and the
/// lexicographically smallest pair achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub max_product: BigCount,
    pub witness: FamilyPair,
    pub pairs_examined: u64,
    pub core_constraint: bool,
    /// Wall time, filled by callers that measure; excluded from JSON when
    /// absent so that deterministic outputs stay byte-comparable.
    pub elapsed_ms: Option<u64>,
}

impl SearchResult {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "max_product": self.max_product.to_string(),
            "witness": self.witness.to_json(),
            "pairs_examined": self.pairs_examined,
            "core_constraint": self.core_constraint,
        });
        if let Some(ms) = self.elapsed_ms {
            v["elapsed_ms"] = serde_json::json!(ms);
        }
        v
    }

    /// Equality on the mathematically meaningful parts: the exact maximum and
    /// the canonical witness. Counters and timing may differ between engines.
    pub fn agrees_with(&self, other: &SearchResult) -> bool {
        self.max_product == other.max_product && self.witness == other.witness
    }
}

/// Thread-count resolution: explicit argument, then the CROSSFAM_THREADS
/// environment variable, then rayon's default.
pub fn resolve_threads(explicit: Option<usize>) -> Option<usize> {
    explicit.or_else(|| {
        std::env::var("CROSSFAM_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
            .filter(|&t| t > 0)
    })
}

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match resolve_threads(threads) {
        None => Ok(job()),
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
            .install(job)),
    }
}

/// Lexicographic order on families encoded as index bitmasks, where bit i is
/// the i-th k-subset in lexicographic order. Matches comparing the sorted
/// member lists, including the prefix rule.
fn family_mask_cmp(mut a: u32, mut b: u32) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (false, false) => {}
        }
        let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
        if ia != ib {
            return ia.cmp(&ib);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// (product, F, G) candidates ordered best-first: larger product, then
/// lexicographically smaller F, then smaller G.
fn better(a: (u64, u32, u32), b: (u64, u32, u32)) -> (u64, u32, u32) {
    match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => match family_mask_cmp(a.1, b.1) {
            Ordering::Less => a,
            Ordering::Greater => b,
            Ordering::Equal => {
                if family_mask_cmp(a.2, b.2) != Ordering::Greater {
                    a
                } else {
                    b
                }
            }
        },
    }
}

const BRUTE_CAP: usize = 16;
const NAIVE_CAP: usize = 12;

/// Exact maximum of |F||G| over non-empty pairs satisfying the s-almost
/// cross-t property, optionally restricted to pairs whose common core has
/// fewer than t elements. Parallel over the F space with a deterministic
/// reduction; the thread count never changes the result.
pub fn brute_force_max(
    params: &Params,
    core_constraint: bool,
    threads: Option<usize>,
) -> Result<SearchResult> {
    let (n, k, t, s) = (params.n, params.k, params.t, params.s);
    let subs: Vec<Subset> = enumerate_k_subsets(n, k)?.collect();
    let count = subs.len();
    if count > BRUTE_CAP {
        return Err(Error::CapExceeded(format!(
            "search space has C({n},{k}) = {count} k-subsets, above the cap of {BRUTE_CAP}"
        )));
    }
    // disj[i]: bitmask of indices t-disjoint with subset i.
    let disj: Vec<u32> = subs
        .iter()
        .map(|a| {
            let mut mask = 0u32;
            for (j, b) in subs.iter().enumerate() {
                if a.isect(b) < t {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    // cores[m]: intersection of the members selected by mask m.
    let cores: Option<Vec<Subset>> = core_constraint.then(|| {
        let full = Subset::interval(n, 1, n).expect("ground set");
        let mut cores = vec![full; 1usize << count];
        for m in 1..(1usize << count) {
            let low = m.trailing_zeros() as usize;
            cores[m] = cores[m & (m - 1)].intersection(&subs[low]);
        }
        cores
    });

    let full_mask: u32 = if count == 32 { u32::MAX } else { (1u32 << count) - 1 };
    let (examined, best) = with_pool(threads, || {
        (1..=full_mask)
            .into_par_iter()
            .map(|fmask| {
                // G members are individually constrained by F alone.
                let mut allowed = 0u32;
                for (j, &dj) in disj.iter().enumerate() {
                    if (dj & fmask).count_ones() <= s {
                        allowed |= 1 << j;
                    }
                }
                let f_indices: Vec<usize> =
                    (0..count).filter(|&i| fmask >> i & 1 == 1).collect();
                let mut examined = 0u64;
                let mut best: Option<(u64, u32, u32)> = None;
                let mut gmask = allowed;
                while gmask != 0 {
                    examined += 1;
                    let ok = f_indices
                        .iter()
                        .all(|&i| (disj[i] & gmask).count_ones() <= s)
                        && cores.as_ref().is_none_or(|c| {
                            c[fmask as usize].isect(&c[gmask as usize]) < t
                        });
                    if ok {
                        let product =
                            fmask.count_ones() as u64 * gmask.count_ones() as u64;
                        let cand = (product, fmask, gmask);
                        best = Some(match best {
                            None => cand,
                            Some(b) => better(cand, b),
                        });
                    }
                    gmask = (gmask - 1) & allowed;
                }
                (examined, best)
            })
            .reduce(
                || (0u64, None),
                |a, b| {
                    let best = match (a.1, b.1) {
                        (None, x) | (x, None) => x,
                        (Some(x), Some(y)) => Some(better(x, y)),
                    };
                    (a.0 + b.0, best)
                },
            )
    })?;

    let Some((product, fmask, gmask)) = best else {
        return Err(Error::Precondition(
            "no non-empty pair satisfies the constraints".into(),
        ));
    };
    let pick = |mask: u32| -> Result<SetFamily> {
        let sets = (0..count)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| subs[i].clone())
            .collect();
        SetFamily::new(n, k, sets)
    };
    Ok(SearchResult {
        max_product: BigCount::from(product),
        witness: FamilyPair::new(pick(fmask)?, pick(gmask)?, t, s)?,
        pairs_examined: examined,
        core_constraint,
        elapsed_ms: None,
    })
}

/// Same contract as `brute_force_max`, implemented with none of its
/// machinery: member lists as sorted integer vectors, intersection sizes by
/// scanning, every non-empty family pair visited, no pruning. Sequential.
pub fn naive_oracle_max(params: &Params, core_constraint: bool) -> Result<SearchResult> {
    let (n, k, t, s) = (params.n, params.k, params.t, params.s);
    let members = naive_k_sets(n, k);
    if members.len() > NAIVE_CAP {
        return Err(Error::CapExceeded(format!(
            "search space has {} k-subsets, above the oracle cap of {NAIVE_CAP}",
            members.len()
        )));
    }
    let mut families: Vec<Vec<Vec<u32>>> = Vec::new();
    let total = members.len();
    for pick in 1u32..(1u32 << total) {
        let fam: Vec<Vec<u32>> = (0..total)
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| members[i].clone())
            .collect();
        families.push(fam);
    }

    let mut examined = 0u64;
    type Best<'a> = Option<(u64, &'a Vec<Vec<u32>>, &'a Vec<Vec<u32>>)>;
    let mut best: Best = None;
    for flist in &families {
        for glist in &families {
            examined += 1;
            if !naive_pair_ok(flist, glist, t, s)
                || (core_constraint && naive_core(flist, glist).len() >= t as usize)
            {
                continue;
            }
            let product = (flist.len() * glist.len()) as u64;
            let replace = match &best {
                None => true,
                Some((p, bf, bg)) => {
                    product > *p || (product == *p && (flist, glist) < (*bf, *bg))
                }
            };
            if replace {
                best = Some((product, flist, glist));
            }
        }
    }
    let Some((product, flist, glist)) = best else {
        return Err(Error::Precondition(
            "no non-empty pair satisfies the constraints".into(),
        ));
    };
    let build = |list: &[Vec<u32>]| -> Result<SetFamily> {
        let sets = list
            .iter()
            .map(|e| Subset::from_elements(n, e))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, k, sets)
    };
    Ok(SearchResult {
        max_product: BigCount::from(product),
        witness: FamilyPair::new(build(flist)?, build(glist)?, t, s)?,
        pairs_examined: examined,
        core_constraint,
        elapsed_ms: None,
    })
}

fn naive_k_sets(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(n: u32, k: u32, from: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k as usize {
            out.push(current.clone());
            return;
        }
        for e in from..=n {
            current.push(e);
            recurse(n, k, e + 1, current, out);
            current.pop();
        }
    }
    recurse(n, k, 1, &mut current, &mut out);
    out
}

fn naive_inter(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

fn naive_pair_ok(flist: &[Vec<u32>], glist: &[Vec<u32>], t: u32, s: u32) -> bool {
    for f in flist {
        let disjoint = glist.iter().filter(|g| naive_inter(f, g) < t as usize).count();
        if disjoint > s as usize {
            return false;
        }
    }
    for g in glist {
        let disjoint = flist.iter().filter(|f| naive_inter(f, g) < t as usize).count();
        if disjoint > s as usize {
            return false;
        }
    }
    true
}

fn naive_core(flist: &[Vec<u32>], glist: &[Vec<u32>]) -> Vec<u32> {
    let mut core = flist[0].clone();
    for m in flist.iter().chain(glist.iter()) {
        core.retain(|e| m.contains(e));
    }
    core
}

/// Full addability scan over every k-subset against both sides. Equivalent to
/// `is_maximal` but reports all addable candidates (capped) and parallelizes
/// over the candidate space; the thread count never changes the verdict.
pub fn maximality_scan(pair: &FamilyPair, threads: Option<usize>) -> Result<Verdict> {
    require_s_almost(pair)?;
    let (n, k) = (pair.params.n, pair.params.k);
    let state = ClosureState::new(pair);
    let candidates: Vec<Subset> = enumerate_k_subsets(n, k)?.collect();
    let found: Vec<Vec<Violation>> = with_pool(threads, || {
        candidates
            .par_iter()
            .map(|candidate| {
                let mut hits = Vec::new();
                for side in [Side::F, Side::G] {
                    if state.addable(candidate, side) {
                        hits.push(Violation {
                            member: candidate.clone(),
                            detail: ViolationDetail::Addable { side },
                        });
                    }
                }
                hits
            })
            .collect()
    })?;
    let violations: Vec<Violation> = found.into_iter().flatten().collect();
    Ok(Verdict::from_violations(violations, false))
}
