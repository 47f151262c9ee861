//! Ground-set subsets, k-subset enumeration, intersection arithmetic, and
//! exact binomial coefficients. Everything else in the crate is built on
//! these types.
//!
//! Elements are 1-based: the ground set [n] is {1, ..., n}. Subsets carry a
//! fixed-width bit representation sized to n, so intersection sizes cost one
//! popcount per 64 elements of the universe. The canonical order on subsets
//! and families is lexicographic on the sorted element lists.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision nonnegative counter for binomials and size products.
pub type BigCount = BigUint;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// The parameter tuple (n, k, t, s): ground-set size, member size,
/// intersection threshold, and disjointness allowance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub s: u32,
}

impl Params {
    pub fn new(n: u32, k: u32, t: u32, s: u32) -> Result<Self> {
        if !(1 <= t && t <= k && k <= n) {
            return Err(Error::InvalidParams(format!(
                "need 1 <= t <= k <= n, got n={n} k={k} t={t}"
            )));
        }
        if s < 1 {
            return Err(Error::InvalidParams("need s >= 1".into()));
        }
        Ok(Params { n, k, t, s })
    }
}

/// A subset of the ground set [n], stored as an indicator bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: u32,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(universe: u32) -> Self {
        let nwords = (universe as usize).div_ceil(64);
        Subset {
            universe,
            words: vec![0; nwords.max(1)],
        }
    }

    /// Builds a subset from 1-based element labels. Rejects out-of-range
    /// elements and duplicates.
    pub fn from_elements(universe: u32, elements: &[u32]) -> Result<Self> {
        let mut s = Subset::empty(universe);
        for &e in elements {
            if e < 1 || e > universe {
                return Err(Error::InvalidSubset(format!(
                    "element {e} outside [1, {universe}]"
                )));
            }
            if s.contains(e) {
                return Err(Error::InvalidSubset(format!("duplicate element {e}")));
            }
            s.insert(e);
        }
        Ok(s)
    }

    /// The full interval {lo, ..., hi} as a subset of [universe].
    pub fn interval(universe: u32, lo: u32, hi: u32) -> Result<Self> {
        let elems: Vec<u32> = (lo..=hi).collect();
        Subset::from_elements(universe, &elems)
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: u32) -> bool {
        debug_assert!(1 <= e && e <= self.universe);
        let b = (e - 1) as usize;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: u32) {
        debug_assert!(1 <= e && e <= self.universe);
        let b = (e - 1) as usize;
        self.words[b / 64] |= 1 << (b % 64);
    }

    pub fn remove(&mut self, e: u32) {
        debug_assert!(1 <= e && e <= self.universe);
        let b = (e - 1) as usize;
        self.words[b / 64] &= !(1 << (b % 64));
    }

    /// Ascending 1-based element labels.
    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as u32 * 64 + b + 1)
                }
            })
        })
    }

    /// Intersection size with a same-universe subset. Hot path: one AND and
    /// one popcount per word.
    #[inline]
    pub fn isect(&self, other: &Subset) -> u32 {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Subset {
            universe: self.universe,
            words,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Subset {
            universe: self.universe,
            words,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        Subset {
            universe: self.universe,
            words,
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    /// Lexicographic order on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(None)?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// Checked intersection size: rejects subsets over different universes.
pub fn intersection_size(a: &Subset, b: &Subset) -> Result<u32> {
    if a.universe() != b.universe() {
        return Err(Error::InvalidSubset(format!(
            "universe mismatch: {} vs {}",
            a.universe(),
            b.universe()
        )));
    }
    Ok(a.isect(b))
}

/// An ordered, duplicate-free collection of equal-size subsets of [n].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: u32,
    k: u32,
    sets: Vec<Subset>,
}

impl SetFamily {
    /// Validates, sorts lexicographically, and rejects duplicates and
    /// wrong-size members.
    pub fn new(n: u32, k: u32, mut sets: Vec<Subset>) -> Result<Self> {
        for s in &sets {
            if s.universe() != n {
                return Err(Error::InvalidFamily(format!(
                    "member over universe {} in family over [{}]",
                    s.universe(),
                    n
                )));
            }
            if s.len() != k {
                return Err(Error::InvalidFamily(format!(
                    "member {s:?} has size {}, expected {k}",
                    s.len()
                )));
            }
        }
        sets.sort();
        if sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidFamily("duplicate member".into()));
        }
        Ok(SetFamily { n, k, sets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.sets.iter()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    /// Inserts a member, keeping lexicographic order. No-op on duplicates.
    pub fn insert(&mut self, s: Subset) -> Result<()> {
        if s.universe() != self.n || s.len() != self.k {
            return Err(Error::InvalidFamily(format!(
                "member {s:?} does not fit family over [{}] with k={}",
                self.n, self.k
            )));
        }
        if let Err(pos) = self.sets.binary_search(&s) {
            self.sets.insert(pos, s);
        }
        Ok(())
    }

    /// Members of `self` not in `other`, preserving order.
    pub fn minus(&self, other: &SetFamily) -> SetFamily {
        let sets = self
            .sets
            .iter()
            .filter(|s| !other.contains(s))
            .cloned()
            .collect();
        SetFamily {
            n: self.n,
            k: self.k,
            sets,
        }
    }

    pub fn union_family(&self, other: &SetFamily) -> Result<SetFamily> {
        let mut sets = self.sets.clone();
        sets.extend(other.sets.iter().cloned());
        sets.sort();
        sets.dedup();
        SetFamily::new(self.n, self.k, sets)
    }

    pub fn size(&self) -> BigCount {
        BigCount::from(self.sets.len())
    }

    /// JSON form: {"n": 8, "k": 3, "sets": [[1,2,3], ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "sets": self.sets.iter().map(|s| s.elements()).collect::<Vec<_>>(),
        })
    }

    /// Parses the family JSON format, rejecting duplicates, out-of-range
    /// elements, and wrong-size members.
    pub fn from_json(v: &serde_json::Value) -> Result<SetFamily> {
        #[derive(Deserialize)]
        struct Raw {
            n: u32,
            k: u32,
            sets: Vec<Vec<u32>>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let sets = raw
            .sets
            .iter()
            .map(|e| Subset::from_elements(raw.n, e))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(raw.n, raw.k, sets)
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SetFamily", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("sets", &self.sets)?;
        st.end()
    }
}

/// Exact binomial coefficient C(n, r); zero when r > n.
pub fn binomial(n: u64, r: u64) -> BigCount {
    if r > n {
        return BigCount::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigCount::one();
    for i in 0..r {
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

/// Signed-index binomial: zero when r < 0 or r > n. Used by the bound
/// functions, whose lower indices can go negative at the edge of their
/// hypothesis ranges.
pub fn binomial_i(n: i64, r: i64) -> BigCount {
    if r < 0 || n < 0 || r > n {
        return BigCount::zero();
    }
    binomial(n as u64, r as u64)
}

/// Streams all k-subsets of [n] in lexicographic order.
pub fn enumerate_k_subsets(n: u32, k: u32) -> Result<KSubsets> {
    if k > n {
        return Err(Error::InvalidParams(format!(
            "cannot enumerate {k}-subsets of [{n}]"
        )));
    }
    Ok(KSubsets {
        n,
        k,
        current: (1..=k).collect(),
        done: false,
    })
}

pub struct KSubsets {
    n: u32,
    k: u32,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset::from_elements(self.n, &self.current).expect("valid by construction");
        // Advance to the lexicographic successor.
        let k = self.k as usize;
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (self.k - 1 - i as u32) {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        if self.k == 0 {
            self.done = true;
        }
        Some(out)
    }
}
