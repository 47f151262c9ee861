//! Exact evaluation of the bound functions f1, f2, f3 and the construction
//! products g1..g4, the theorem hypothesis thresholds, and exhaustive
//! verification of the binomial-coefficient lemmas over parameter grids.
//!
//! Everything here is exact integer arithmetic; rational inequalities are
//! cleared to cross-multiplied integer form.

use crate::family::{binomial, binomial_i, BigCount, Error, Result};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;

fn pow(base: u64, exp: u64) -> BigCount {
    BigCount::from(base).pow(exp as u32)
}

/// f1(n,k,t,s,x) = (k-t+1)^{x-t} C(x,t) C(n-x,k-x)
///                + sum_{i=0}^{x-t-1} s (k-t+1)^i C(x,t).
pub fn f1(n: u64, k: u64, t: u64, s: u64, x: u64) -> Result<BigCount> {
    if !(t <= x && x <= k && k <= n) {
        return Err(Error::Precondition(format!(
            "f1 needs t <= x <= k <= n, got n={n} k={k} t={t} x={x}"
        )));
    }
    let cxt = binomial(x, t);
    let mut value = pow(k - t + 1, x - t) * &cxt * binomial(n - x, k - x);
    for i in 0..x.saturating_sub(t) {
        value += BigCount::from(s) * pow(k - t + 1, i) * &cxt;
    }
    Ok(value)
}

/// f2(n,k,t,s) = C(n-t-1,k-t-1) + (k-t)(k-t+1) C(n-t-2,k-t-2) + s(k-t+1).
pub fn f2(n: u64, k: u64, t: u64, s: u64) -> Result<BigCount> {
    if !(t < k && k <= n) {
        return Err(Error::Precondition(format!(
            "f2 needs t+1 <= k <= n, got n={n} k={k} t={t}"
        )));
    }
    Ok(binomial_i(n as i64 - t as i64 - 1, k as i64 - t as i64 - 1)
        + BigCount::from((k - t) * (k - t + 1))
            * binomial_i(n as i64 - t as i64 - 2, k as i64 - t as i64 - 2)
        + BigCount::from(s * (k - t + 1)))
}

/// f3(n,k,t,s,x) = C(n-t,k-t) - C(n-x,k-t) + (k-x+1)^2 C(n-t-2,k-t-2) + 2s.
pub fn f3(n: u64, k: u64, t: u64, s: u64, x: u64) -> Result<BigCount> {
    if !(t + 2 <= x && x <= k && k <= n) {
        return Err(Error::Precondition(format!(
            "f3 needs t+2 <= x <= k <= n, got n={n} k={k} t={t} x={x}"
        )));
    }
    let value = BigInt::from(binomial(n - t, k - t)) - BigInt::from(binomial(n - x, k - t))
        + BigInt::from(pow(k - x + 1, 2))
            * BigInt::from(binomial_i(n as i64 - t as i64 - 2, k as i64 - t as i64 - 2))
        + BigInt::from(2 * s);
    value
        .try_into()
        .map_err(|_| Error::Precondition("f3 value is negative".into()))
}

/// g1(n,k,t,s) = (C(n-t,k-t) - C(n-k-1,k-t) + s)(C(n-t,k-t) + min{t,s}).
pub fn g1(n: u64, k: u64, t: u64, s: u64) -> Result<BigCount> {
    if !(t <= k && k < n) {
        return Err(Error::Precondition(format!(
            "g1 needs t <= k < n, got n={n} k={k} t={t}"
        )));
    }
    let left = binomial(n - t, k - t) - binomial_i(n as i64 - k as i64 - 1, k as i64 - t as i64)
        + BigCount::from(s);
    let right = binomial(n - t, k - t) + BigCount::from(t.min(s));
    Ok(left * right)
}

/// g2(n,t,s) = (t+1)(n-t) + s - t.
pub fn g2(n: u64, t: u64, s: u64) -> Result<BigCount> {
    if t >= n {
        return Err(Error::Precondition(format!("g2 needs t < n, got n={n} t={t}")));
    }
    let value = BigInt::from((t + 1) * (n - t)) + BigInt::from(s) - BigInt::from(t);
    value
        .try_into()
        .map_err(|_| Error::Precondition("g2 value is negative".into()))
}

/// g3(n,t,s) = (s+2)(n-t) + (s+2)^2.
pub fn g3(n: u64, t: u64, s: u64) -> Result<BigCount> {
    if t >= n {
        return Err(Error::Precondition(format!("g3 needs t < n, got n={n} t={t}")));
    }
    Ok(BigCount::from((s + 2) * (n - t) + (s + 2) * (s + 2)))
}

/// g4(n,k,t) = (t+1) C(n-t-1,k-t-1) C(n-t-1,k-t) + C(n-t-1,k-t-1)^2.
pub fn g4(n: u64, k: u64, t: u64) -> Result<BigCount> {
    if !(t < k && k <= n) {
        return Err(Error::Precondition(format!(
            "g4 needs t+1 <= k <= n, got n={n} k={k} t={t}"
        )));
    }
    let a = binomial_i(n as i64 - t as i64 - 1, k as i64 - t as i64 - 1);
    let b = binomial(n - t - 1, k - t);
    Ok(BigCount::from(t + 1) * &a * b + &a * &a)
}

/// The minimum-n hypotheses of the main results, exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// (t+1)(2(k-t+1)^2 + 7s)
    pub thm1: u64,
    /// (t+1)^2 (2(k-t+1)^2 + 7s)
    pub thm2: u64,
    /// 5s(t+1)^2
    pub thm3: u64,
    /// max{k-t, t+1} (t+1)(2(k-t+1)^2 + 7s)
    pub cor61: u64,
    /// (k-t)(k-t+1) + t
    pub lemma71: u64,
}

pub fn thresholds(k: u64, t: u64, s: u64) -> Result<Thresholds> {
    if k < t {
        return Err(Error::Precondition("need k >= t".into()));
    }
    let base = 2 * (k - t + 1) * (k - t + 1) + 7 * s;
    Ok(Thresholds {
        thm1: (t + 1) * base,
        thm2: (t + 1) * (t + 1) * base,
        thm3: 5 * s * (t + 1) * (t + 1),
        cor61: (k - t).max(t + 1) * (t + 1) * base,
        lemma71: (k - t) * (k - t + 1) + t,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaId {
    L71,
    L72,
    L73,
    L74,
    L75,
    L76,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::L71,
        LemmaId::L72,
        LemmaId::L73,
        LemmaId::L74,
        LemmaId::L75,
        LemmaId::L76,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::L71 => "7.1",
            LemmaId::L72 => "7.2",
            LemmaId::L73 => "7.3",
            LemmaId::L74 => "7.4",
            LemmaId::L75 => "7.5",
            LemmaId::L76 => "7.6",
        }
    }

    pub fn parse(s: &str) -> Result<LemmaId> {
        match s {
            "7.1" => Ok(LemmaId::L71),
            "7.2" => Ok(LemmaId::L72),
            "7.3" => Ok(LemmaId::L73),
            "7.4" => Ok(LemmaId::L74),
            "7.5" => Ok(LemmaId::L75),
            "7.6" => Ok(LemmaId::L76),
            other => Err(Error::InvalidParams(format!("unknown lemma id {other:?}"))),
        }
    }
}

/// Inclusive parameter ranges for a lemma sweep. n is probed at each lemma's
/// exact hypothesis threshold plus the listed offsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundGrid {
    pub k: (u64, u64),
    pub t: (u64, u64),
    pub s: (u64, u64),
    pub ell: (u64, u64),
    pub n_offsets: Vec<u64>,
}

impl BoundGrid {
    /// The acceptance sweep: k <= 8, t <= 4, s <= 3, ell <= 3,
    /// n at threshold + {0, 1, 7, 50, 300}.
    pub fn acceptance() -> BoundGrid {
        BoundGrid {
            k: (1, 8),
            t: (1, 4),
            s: (1, 3),
            ell: (1, 3),
            n_offsets: vec![0, 1, 7, 50, 300],
        }
    }
}

/// One evaluated inequality instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: BTreeMap<String, u64>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub points_checked: u64,
    pub counterexamples: Vec<CheckRecord>,
    /// All evaluated instances; populated only on request (drives the CSV).
    #[serde(skip)]
    pub records: Vec<CheckRecord>,
}

impl LemmaReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct Sink {
    report: LemmaReport,
    collect_records: bool,
}

impl Sink {
    fn push(
        &mut self,
        check: &str,
        params: &[(&str, u64)],
        lhs: BigInt,
        rhs: BigInt,
        pass: bool,
    ) {
        self.report.points_checked += 1;
        if pass && !self.collect_records {
            return;
        }
        let rec = CheckRecord {
            check: check.to_string(),
            params: params
                .iter()
                .map(|&(name, v)| (name.to_string(), v))
                .collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        };
        if !pass {
            self.report.counterexamples.push(rec.clone());
        }
        if self.collect_records {
            self.report.records.push(rec);
        }
    }
}

fn big(v: BigCount) -> BigInt {
    BigInt::from(v)
}

/// Evaluates every statement inequality of the named lemma over the grid,
/// restricted to the lemma's hypotheses. Counterexamples are expected to be
/// empty.
pub fn check_lemma(lemma: LemmaId, grid: &BoundGrid, collect_records: bool) -> Result<LemmaReport> {
    let mut sink = Sink {
        report: LemmaReport {
            lemma_id: lemma.name().to_string(),
            points_checked: 0,
            counterexamples: vec![],
            records: vec![],
        },
        collect_records,
    };
    match lemma {
        LemmaId::L71 => check_l71(grid, &mut sink)?,
        LemmaId::L72 => check_l72(grid, &mut sink)?,
        LemmaId::L73 => check_l73(grid, &mut sink)?,
        LemmaId::L74 => check_l74(grid, &mut sink)?,
        LemmaId::L75 => check_l75(grid, &mut sink)?,
        LemmaId::L76 => check_l76(grid, &mut sink)?,
    }
    if sink.report.points_checked == 0 {
        return Err(Error::Precondition(
            "grid is empty after applying the lemma's hypotheses".into(),
        ));
    }
    Ok(sink.report)
}

fn ks_ts(grid: &BoundGrid, min_gap: u64) -> Vec<(u64, u64)> {
    let mut out = vec![];
    for t in grid.t.0..=grid.t.1 {
        for k in grid.k.0.max(t + min_gap)..=grid.k.1 {
            out.push((k, t));
        }
    }
    out
}

/// 7.1: (k-t+1)^{j-i} C(n-j,k-j) <= C(n-i,k-i) for t <= i <= j <= k,
/// under k >= t+1 and n >= (k-t)(k-t+1)+t.
fn check_l71(grid: &BoundGrid, sink: &mut Sink) -> Result<()> {
    for (k, t) in ks_ts(grid, 1) {
        let thr = thresholds(k, t, 1)?.lemma71;
        for &off in &grid.n_offsets {
            let n = thr + off;
            if n < k {
                continue;
            }
            for i in t..=k {
                for j in i..=k {
                    let lhs = big(pow(k - t + 1, j - i) * binomial(n - j, k - j));
                    let rhs = big(binomial(n - i, k - i));
                    let pass = lhs <= rhs;
                    sink.push(
                        "7.1",
                        &[("n", n), ("k", k), ("t", t), ("i", i), ("j", j)],
                        lhs,
                        rhs,
                        pass,
                    );
                }
            }
        }
    }
    Ok(())
}

/// 7.2: under k >= t+1 and n >= ell(t+1)(2(k-t+1)^2+7s):
/// (i) f1 strictly decreasing in x on {t..k-1};
/// (ii) 6 f1(n,k,t,s,k-1) > 7 ell s C(k,t) C(2k-2t+2,k-t+1).
fn check_l72(grid: &BoundGrid, sink: &mut Sink) -> Result<()> {
    for (k, t) in ks_ts(grid, 1) {
        for s in grid.s.0..=grid.s.1 {
            for ell in grid.ell.0..=grid.ell.1 {
                let thr = ell * thresholds(k, t, s)?.thm1;
                for &off in &grid.n_offsets {
                    let n = thr + off;
                    for x in t..k {
                        let lhs = big(f1(n, k, t, s, x)?);
                        let rhs = big(f1(n, k, t, s, x + 1)?);
                        let pass = lhs > rhs;
                        sink.push(
                            "7.2(i)",
                            &[("n", n), ("k", k), ("t", t), ("s", s), ("ell", ell), ("x", x)],
                            lhs,
                            rhs,
                            pass,
                        );
                    }
                    let lhs = big(f1(n, k, t, s, k - 1)?) * 6;
                    let rhs = big(BigCount::from(7 * ell * s)
                        * binomial(k, t)
                        * binomial(2 * k - 2 * t + 2, k - t + 1));
                    let pass = lhs > rhs;
                    sink.push(
                        "7.2(ii)",
                        &[("n", n), ("k", k), ("t", t), ("s", s), ("ell", ell)],
                        lhs,
                        rhs,
                        pass,
                    );
                }
            }
        }
    }
    Ok(())
}

/// 7.3: under n >= 5s(t+1)^2:
/// (i) g2 > (t+1)(n-t) - t;
/// (ii) g3 > max{2n, ((t+1)(s+2)+s)^2};
/// (iii) g2 > g3 iff t >= s+2 (both directions).
fn check_l73(grid: &BoundGrid, sink: &mut Sink) -> Result<()> {
    for t in grid.t.0..=grid.t.1 {
        for s in grid.s.0..=grid.s.1 {
            let thr = thresholds(t, t, s)?.thm3;
            for &off in &grid.n_offsets {
                let n = thr + off;
                if n <= t {
                    continue;
                }
                let g2v = big(g2(n, t, s)?);
                let g3v = big(g3(n, t, s)?);

                let rhs = BigInt::from((t + 1) * (n - t)) - BigInt::from(t);
                let pass = g2v > rhs;
                sink.push("7.3(i)", &[("n", n), ("t", t), ("s", s)], g2v.clone(), rhs, pass);

                let sq = BigInt::from((t + 1) * (s + 2) + s);
                let rhs = BigInt::from(2 * n).max(&sq * &sq);
                let pass = g3v > rhs;
                sink.push("7.3(ii)", &[("n", n), ("t", t), ("s", s)], g3v.clone(), rhs, pass);

                let (check, lhs, rhs, pass) = if t >= s + 2 {
                    ("7.3(iii) g2>g3", g2v, g3v.clone(), true)
                } else {
                    ("7.3(iii) g2<g3", g3v.clone(), g2v, true)
                };
                let pass = pass && lhs > rhs;
                sink.push(check, &[("n", n), ("t", t), ("s", s)], lhs, rhs, pass);
            }
        }
    }
    Ok(())
}

fn l74_grid_points(grid: &BoundGrid) -> Result<Vec<(u64, u64, u64, u64)>> {
    let mut out = vec![];
    for (k, t) in ks_ts(grid, 2) {
        for s in grid.s.0..=grid.s.1 {
            let thr = thresholds(k, t, s)?.thm2;
            for &off in &grid.n_offsets {
                out.push((thr + off, k, t, s));
            }
        }
    }
    Ok(out)
}

/// 7.4: under k >= t+2 and n >= (t+1)^2(2(k-t+1)^2+7s):
/// (i) g1 > f1(t+1)^2; (ii) g1 > f1(t) f1(t+2);
/// (iii) 7(t+1) g1 > 6 f1(t+1)(C(n-t,k-t)+s);
/// (iv) g1 > f2 (C(n-t,k-t) + t(k-t) C(n-t-1,k-t-1) + s).
fn check_l74(grid: &BoundGrid, sink: &mut Sink) -> Result<()> {
    for (n, k, t, s) in l74_grid_points(grid)? {
        let g1v = big(g1(n, k, t, s)?);
        let p = [("n", n), ("k", k), ("t", t), ("s", s)];

        let f1t1 = big(f1(n, k, t, s, t + 1)?);
        let rhs = &f1t1 * &f1t1;
        sink.push("7.4(i)", &p, g1v.clone(), rhs.clone(), g1v > rhs);

        let rhs = big(f1(n, k, t, s, t)?) * big(f1(n, k, t, s, t + 2)?);
        sink.push("7.4(ii)", &p, g1v.clone(), rhs.clone(), g1v > rhs);

        let lhs = &g1v * BigInt::from(7 * (t + 1));
        let rhs: BigInt = f1t1 * 6 * (big(binomial(n - t, k - t)) + BigInt::from(s));
        sink.push("7.4(iii)", &p, lhs.clone(), rhs.clone(), lhs > rhs);

        let rhs = big(f2(n, k, t, s)?)
            * (big(binomial(n - t, k - t))
                + BigInt::from(t * (k - t)) * big(binomial(n - t - 1, k - t - 1))
                + BigInt::from(s));
        sink.push("7.4(iv)", &p, g1v.clone(), rhs.clone(), g1v > rhs);
    }
    Ok(())
}

/// 7.5: same hypotheses as 7.4:
/// (i) f3(k) >= f3(x) for x in {t+2..k};
/// (ii) f3(k)(C(n-t,k-t) + t(k-t) C(n-t-2,k-t-2) + s) < g1.
fn check_l75(grid: &BoundGrid, sink: &mut Sink) -> Result<()> {
    for (n, k, t, s) in l74_grid_points(grid)? {
        let f3k = big(f3(n, k, t, s, k)?);
        for x in t + 2..=k {
            let rhs = big(f3(n, k, t, s, x)?);
            let pass = f3k >= rhs;
            sink.push(
                "7.5(i)",
                &[("n", n), ("k", k), ("t", t), ("s", s), ("x", x)],
                f3k.clone(),
                rhs,
                pass,
            );
        }
        let lhs = &f3k
            * (big(binomial(n - t, k - t))
                + BigInt::from(t * (k - t))
                    * big(binomial_i(n as i64 - t as i64 - 2, k as i64 - t as i64 - 2))
                + BigInt::from(s));
        let rhs = big(g1(n, k, t, s)?);
        let pass = lhs < rhs;
        sink.push(
            "7.5(ii)",
            &[("n", n), ("k", k), ("t", t), ("s", s)],
            lhs,
            rhs,
            pass,
        );
    }
    Ok(())
}

/// 7.6: same hypotheses as 7.4:
/// (i) g1 > (C(n-t,k-t) - C(n-k-1,k-t))(C(n-t,k-t) + t);
/// (ii) g1 < g4 when k <= 2t and (k,t) != (4,2).
fn check_l76(grid: &BoundGrid, sink: &mut Sink) -> Result<()> {
    for (n, k, t, s) in l74_grid_points(grid)? {
        let g1v = big(g1(n, k, t, s)?);
        let p = [("n", n), ("k", k), ("t", t), ("s", s)];

        let rhs = (big(binomial(n - t, k - t))
            - big(binomial_i(n as i64 - k as i64 - 1, k as i64 - t as i64)))
            * (big(binomial(n - t, k - t)) + BigInt::from(t));
        sink.push("7.6(i)", &p, g1v.clone(), rhs.clone(), g1v > rhs);

        if k <= 2 * t && (k, t) != (4, 2) {
            let rhs = big(g4(n, k, t)?);
            sink.push("7.6(ii)", &p, g1v.clone(), rhs.clone(), g1v < rhs);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_examples() {
        assert_eq!(f1(10, 3, 1, 1, 1).unwrap(), BigCount::from(36u32));
        assert_eq!(f1(10, 3, 1, 1, 2).unwrap(), BigCount::from(50u32));
        assert!(f1(10, 3, 2, 1, 1).is_err()); // x < t
    }

    #[test]
    fn f1_at_t_is_star_size() {
        for n in 10..=30u64 {
            for t in 1..=3 {
                for k in t + 1..=t + 3 {
                    for s in 1..=3 {
                        assert_eq!(f1(n, k, t, s, t).unwrap(), binomial(n - t, k - t));
                    }
                }
            }
        }
    }

    #[test]
    fn f2_f3_examples() {
        assert_eq!(f2(10, 3, 1, 1).unwrap(), BigCount::from(17u32));
        assert_eq!(f3(10, 3, 1, 1, 3).unwrap(), BigCount::from(18u32));
        assert!(f3(10, 3, 1, 1, 2).is_err()); // x < t+2
    }

    #[test]
    fn g_examples() {
        assert_eq!(g1(8, 3, 1, 1).unwrap(), BigCount::from(352u32));
        assert_eq!(g2(20, 1, 1).unwrap(), BigCount::from(38u32));
        assert_eq!(g3(20, 1, 1).unwrap(), BigCount::from(66u32));
        assert_eq!(g4(10, 3, 1).unwrap(), BigCount::from(512u32));
    }

    #[test]
    fn threshold_examples() {
        let th = thresholds(3, 1, 1).unwrap();
        assert_eq!(th.thm1, 50);
        assert_eq!(th.thm2, 100);
        assert_eq!(th.thm3, 20);
        assert_eq!(thresholds(2, 1, 1).unwrap().thm1, 30);
        assert_eq!(thresholds(4, 2, 1).unwrap().lemma71, 8);
    }

    #[test]
    fn lemma71_spot_check() {
        // (n,k,t,i,j) = (12,4,2,2,3): 3 C(9,1) = 27 <= C(10,2) = 45.
        let lhs = pow(3, 1) * binomial(9, 1);
        assert_eq!(lhs, BigCount::from(27u32));
        assert_eq!(binomial(10, 2), BigCount::from(45u32));
        let grid = BoundGrid {
            k: (4, 4),
            t: (2, 2),
            s: (1, 1),
            ell: (1, 1),
            n_offsets: vec![4], // threshold 8 + 4 = 12
        };
        let report = check_lemma(LemmaId::L71, &grid, false).unwrap();
        assert!(report.verified());
    }

    #[test]
    fn lemma73_crossover_directions() {
        // t=1, s=1 at n=20: t <= s+1, so g2 < g3 (38 < 66).
        let grid = BoundGrid {
            k: (1, 1),
            t: (1, 1),
            s: (1, 1),
            ell: (1, 1),
            n_offsets: vec![0],
        };
        let report = check_lemma(LemmaId::L73, &grid, true).unwrap();
        assert!(report.verified());
        assert!(report.records.iter().any(|r| r.check == "7.3(iii) g2<g3"));
        // t=4, s=1: t >= s+2, direction flips.
        let grid = BoundGrid {
            t: (4, 4),
            ..grid
        };
        let report = check_lemma(LemmaId::L73, &grid, true).unwrap();
        assert!(report.verified());
        assert!(report.records.iter().any(|r| r.check == "7.3(iii) g2>g3"));
    }

    #[test]
    fn small_sweeps_verify() {
        let grid = BoundGrid {
            k: (1, 5),
            t: (1, 3),
            s: (1, 2),
            ell: (1, 2),
            n_offsets: vec![0, 1, 7],
        };
        for lemma in LemmaId::ALL {
            let report = check_lemma(lemma, &grid, false).unwrap();
            assert!(
                report.verified(),
                "lemma {} has counterexamples: {:?}",
                report.lemma_id,
                report.counterexamples
            );
            assert!(report.points_checked > 0);
        }
    }

    #[test]
    fn unknown_lemma_rejected() {
        assert!(LemmaId::parse("7.9").is_err());
        assert_eq!(LemmaId::parse("7.4").unwrap(), LemmaId::L74);
    }
}
