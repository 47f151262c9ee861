//! Constructors for the named families and extremal pairs: the stars H1/H2,
//! the threshold families M1/M2, and the canonical extremal pairs built from
//! them. Canonical anchors are always the lexicographically smallest valid
//! sets; a seed switches the free choices to seeded-random selections.

use crate::family::{
    binomial, enumerate_k_subsets, BigCount, Error, Params, Result, SetFamily, Subset,
};
use crate::predicates::FamilyPair;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// H1(X, W; k): the k-subsets of X containing W.
pub fn h1(n: u32, x: &Subset, w: &Subset, k: u32) -> Result<SetFamily> {
    check_anchors(n, x, w)?;
    if !(w.len() <= k && k <= x.len()) {
        return Err(Error::Precondition(format!(
            "need |W| <= k <= |X|, got |W|={} k={k} |X|={}",
            w.len(),
            x.len()
        )));
    }
    let rest: Vec<u32> = x.iter().filter(|&e| !w.contains(e)).collect();
    let mut sets = Vec::new();
    for choice in enumerate_k_subsets(rest.len() as u32, k - w.len())? {
        let mut m = w.clone();
        for i in choice.iter() {
            m.insert(rest[i as usize - 1]);
        }
        sets.push(m);
    }
    SetFamily::new(n, k, sets)
}

/// H2(X, W; k): the k-subsets of [n] meeting X exactly in W.
pub fn h2(n: u32, x: &Subset, w: &Subset, k: u32) -> Result<SetFamily> {
    check_anchors(n, x, w)?;
    if k < w.len() {
        return Err(Error::Precondition(format!(
            "need k >= |W|, got k={k} |W|={}",
            w.len()
        )));
    }
    if n - x.len() < k - w.len() {
        return Err(Error::Precondition(
            "no room outside X for the remaining elements".into(),
        ));
    }
    let outside: Vec<u32> = (1..=n).filter(|&e| !x.contains(e)).collect();
    let mut sets = Vec::new();
    for choice in enumerate_k_subsets(outside.len() as u32, k - w.len())? {
        let mut m = w.clone();
        for i in choice.iter() {
            m.insert(outside[i as usize - 1]);
        }
        sets.push(m);
    }
    SetFamily::new(n, k, sets)
}

/// M1(Y; k, t): the k-subsets of [n] meeting Y in at least t elements.
pub fn m1(n: u32, y: &Subset, k: u32, t: u32) -> Result<SetFamily> {
    if y.universe() != n {
        return Err(Error::Precondition("Y must live over [n]".into()));
    }
    if t > k || k > n || t > y.len() {
        return Err(Error::Precondition(format!(
            "need t <= k <= n and t <= |Y|, got n={n} k={k} t={t} |Y|={}",
            y.len()
        )));
    }
    let inside: Vec<u32> = y.elements();
    let outside: Vec<u32> = (1..=n).filter(|&e| !y.contains(e)).collect();
    let mut sets = Vec::new();
    for take in t..=y.len().min(k) {
        if k - take > outside.len() as u32 {
            continue;
        }
        for inner in enumerate_k_subsets(inside.len() as u32, take)? {
            for outer in enumerate_k_subsets(outside.len() as u32, k - take)? {
                let mut m = Subset::empty(n);
                for i in inner.iter() {
                    m.insert(inside[i as usize - 1]);
                }
                for i in outer.iter() {
                    m.insert(outside[i as usize - 1]);
                }
                sets.push(m);
            }
        }
    }
    SetFamily::new(n, k, sets)
}

/// M2(X, W; t): the (t+1)-subsets of X meeting W in exactly t-1 elements.
pub fn m2(n: u32, x: &Subset, w: &Subset, t: u32) -> Result<SetFamily> {
    check_anchors(n, x, w)?;
    if w.len() != t {
        return Err(Error::Precondition(format!(
            "need |W| = t, got |W|={} t={t}",
            w.len()
        )));
    }
    let inside: Vec<u32> = w.elements();
    let outside: Vec<u32> = x.iter().filter(|&e| !w.contains(e)).collect();
    let mut sets = Vec::new();
    if t >= 1 && outside.len() >= 2 {
        for inner in enumerate_k_subsets(inside.len() as u32, t - 1)? {
            for outer in enumerate_k_subsets(outside.len() as u32, 2)? {
                let mut m = Subset::empty(n);
                for i in inner.iter() {
                    m.insert(inside[i as usize - 1]);
                }
                for i in outer.iter() {
                    m.insert(outside[i as usize - 1]);
                }
                sets.push(m);
            }
        }
    }
    SetFamily::new(n, t + 1, sets)
}

fn check_anchors(n: u32, x: &Subset, w: &Subset) -> Result<()> {
    if x.universe() != n || w.universe() != n {
        return Err(Error::Precondition("anchors must live over [n]".into()));
    }
    if !w.is_subset_of(x) {
        return Err(Error::Precondition("need W ⊆ X".into()));
    }
    Ok(())
}

/// The pair F = G = H1([n], {1..t}; k): both families the same t-star.
pub fn star_pair(n: u32, k: u32, t: u32) -> Result<FamilyPair> {
    let params = Params::new(n, k, t, 1)?;
    let x = Subset::interval(n, 1, n)?;
    let w = Subset::interval(n, 1, t)?;
    let star = h1(n, &x, &w, k)?;
    FamilyPair::new(star.clone(), star, params.t, params.s)
}

fn seeded_pick(pool: &[Subset], count: usize, seed: Option<u64>) -> Vec<Subset> {
    match seed {
        None => pool[..count].to_vec(),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<Subset> =
                pool.choose_multiple(&mut rng, count).cloned().collect();
            picked.sort();
            picked
        }
    }
}

/// The pair of the first almost-but-not-cross construction:
/// F = H1([n],W;k) \ A and G = H1([n],W;k) ∪ B with X = {1..k+1}, W = {1..t},
/// A a (C(n-k-1,k-t) - s)-subset of H2(X,W;k) and B a min{t,s}-subset of
/// C(X,k) \ H1(X,W;k). Canonical choices are lexicographically first;
/// `variant_seed` randomizes them.
pub fn thm2_pair(n: u32, k: u32, t: u32, s: u32, variant_seed: Option<u64>) -> Result<FamilyPair> {
    let params = Params::new(n, k, t, s)?;
    if k < t + 1 {
        return Err(Error::Precondition("need k >= t+1".into()));
    }
    if n < k + 1 {
        return Err(Error::Precondition("need n >= k+1".into()));
    }
    let room = binomial((n - k - 1) as u64, (k - t) as u64);
    if room < BigCount::from(s) {
        return Err(Error::Precondition(format!(
            "need C(n-k-1, k-t) >= s, got {room} < {s}"
        )));
    }
    let x = Subset::interval(n, 1, k + 1)?;
    let w = Subset::interval(n, 1, t)?;
    let big_x = Subset::interval(n, 1, n)?;
    let star = h1(n, &big_x, &w, k)?;
    let h2_fam = h2(n, &x, &w, k)?;
    let a_size = h2_fam.len() - s as usize;
    let a = SetFamily::new(n, k, seeded_pick(h2_fam.sets(), a_size, variant_seed))?;
    let f = star.minus(&a);

    let b_pool: Vec<Subset> = h1(n, &x, &Subset::empty(n), k)?
        .sets()
        .iter()
        .filter(|m| !w.is_subset_of(m))
        .cloned()
        .collect();
    let b_size = t.min(s) as usize;
    let b = SetFamily::new(n, k, seeded_pick(&b_pool, b_size, variant_seed.map(|v| v ^ 1)))?;
    let g = star.union_family(&b)?;
    FamilyPair::new(f, g, params.t, params.s)
}

/// The singleton pair: F = {Y} with Y = {1..t+1} and
/// G = M1(Y; t+1, t) ∪ C, C an s-subset of the complement.
pub fn thm3_singleton_pair(n: u32, t: u32, s: u32, variant_seed: Option<u64>) -> Result<FamilyPair> {
    let params = Params::new(n, t + 1, t, s)?;
    // Room condition for C: sum_{i=0}^{t-1} C(t+1,i) C(n-t-1, t-i+1) >= s.
    let mut room = BigCount::from(0u32);
    for i in 0..t {
        room += binomial((t + 1) as u64, i as u64)
            * binomial((n - t - 1) as u64, (t - i + 1) as u64);
    }
    if room < BigCount::from(s) {
        return Err(Error::Precondition(format!(
            "no room for the s extra members: {room} < {s}"
        )));
    }
    let y = Subset::interval(n, 1, t + 1)?;
    let f = SetFamily::new(n, t + 1, vec![y.clone()])?;
    let m1_fam = m1(n, &y, t + 1, t)?;
    let c_pool: Vec<Subset> = enumerate_k_subsets(n, t + 1)?
        .filter(|m| !m1_fam.contains(m))
        .take(if variant_seed.is_some() {
            usize::MAX
        } else {
            s as usize
        })
        .collect();
    let c = SetFamily::new(n, t + 1, seeded_pick(&c_pool, s as usize, variant_seed))?;
    let g = m1_fam.union_family(&c)?;
    FamilyPair::new(f, g, params.t, params.s)
}

/// The canonical 2-regular selection for the cycle pair: with
/// Z\W = z_1 < ... < z_{s+2}, member i is {z_i, z_{i+1 mod s+2}} plus the
/// t-1 smallest elements of W.
pub fn cycle_selection(n: u32, z: &Subset, w: &Subset, t: u32) -> Result<SetFamily> {
    let zs: Vec<u32> = z.iter().filter(|&e| !w.contains(e)).collect();
    let core: Vec<u32> = w.iter().take((t - 1) as usize).collect();
    let mut sets = Vec::new();
    for i in 0..zs.len() {
        let mut m = Subset::from_elements(n, &core)?;
        m.insert(zs[i]);
        m.insert(zs[(i + 1) % zs.len()]);
        sets.push(m);
    }
    SetFamily::new(n, t + 1, sets)
}

/// The cycle pair: F = H1(Z,W;t+1) with Z = {1..t+s+2}, W = {1..t}, and
/// G = H1([n],W;t+1) ∪ D where D is the canonical cycle selection.
pub fn thm3_cycle_pair(n: u32, t: u32, s: u32) -> Result<FamilyPair> {
    let params = Params::new(n, t + 1, t, s)?;
    if n < t + s + 2 {
        return Err(Error::Precondition(format!(
            "need n >= t+s+2, got n={n} t={t} s={s}"
        )));
    }
    let z = Subset::interval(n, 1, t + s + 2)?;
    let w = Subset::interval(n, 1, t)?;
    let big = Subset::interval(n, 1, n)?;
    let f = h1(n, &z, &w, t + 1)?;
    let d = cycle_selection(n, &z, &w, t)?;
    let g = h1(n, &big, &w, t + 1)?.union_family(&d)?;
    FamilyPair::new(f, g, params.t, params.s)
}

/// True iff every element of Z\W lies in exactly two members of the
/// selection: the acceptance test for any (not only canonical) choice of D.
pub fn is_two_regular_selection(d: &SetFamily, z: &Subset, w: &Subset) -> bool {
    z.iter()
        .filter(|&e| !w.contains(e))
        .all(|e| d.iter().filter(|m| m.contains(e)).count() == 2)
}

/// The cross-t-intersecting pair of Hilton-Milner type:
/// F = H1([n], Y; k) and G = M1(Y; k, t) with Y = {1..t+1}.
pub fn cross_pair(n: u32, k: u32, t: u32) -> Result<FamilyPair> {
    let params = Params::new(n, k, t, 1)?;
    if k < t + 1 {
        return Err(Error::Precondition("need k >= t+1".into()));
    }
    let y = Subset::interval(n, 1, t + 1)?;
    let big = Subset::interval(n, 1, n)?;
    let f = h1(n, &big, &y, k)?;
    let g = m1(n, &y, k, t)?;
    FamilyPair::new(f, g, params.t, params.s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    H1,
    H2,
    M1,
    M2,
    StarPair,
    Thm2Pair,
    Thm3SingletonPair,
    Thm3CyclePair,
    CrossPair,
}

/// A serializable recipe for any named construction. Anchors default to the
/// canonical (lexicographically smallest) choices when omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: Kind,
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant_seed: Option<u64>,
}

/// Either a single family or a pair, depending on the construction kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Constructed {
    Family(SetFamily),
    Pair(FamilyPair),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Constructed> {
        let Params { n, k, t, s } = self.params;
        let anchor = |v: &Option<Vec<u32>>, default_hi: u32| -> Result<Subset> {
            match v {
                Some(e) => Subset::from_elements(n, e),
                None => Subset::interval(n, 1, default_hi),
            }
        };
        Ok(match self.kind {
            Kind::H1 => {
                let x = anchor(&self.x, n)?;
                let w = anchor(&self.w, t)?;
                Constructed::Family(h1(n, &x, &w, k)?)
            }
            Kind::H2 => {
                let x = anchor(&self.x, k + 1)?;
                let w = anchor(&self.w, t)?;
                Constructed::Family(h2(n, &x, &w, k)?)
            }
            Kind::M1 => {
                let y = anchor(&self.y, t + 1)?;
                Constructed::Family(m1(n, &y, k, t)?)
            }
            Kind::M2 => {
                let x = anchor(&self.x, k + 1)?;
                let w = anchor(&self.w, t)?;
                Constructed::Family(m2(n, &x, &w, t)?)
            }
            Kind::StarPair => Constructed::Pair(star_pair(n, k, t)?),
            Kind::Thm2Pair => Constructed::Pair(thm2_pair(n, k, t, s, self.variant_seed)?),
            Kind::Thm3SingletonPair => {
                Constructed::Pair(thm3_singleton_pair(n, t, s, self.variant_seed)?)
            }
            Kind::Thm3CyclePair => Constructed::Pair(thm3_cycle_pair(n, t, s)?),
            Kind::CrossPair => Constructed::Pair(cross_pair(n, k, t)?),
        })
    }
}
