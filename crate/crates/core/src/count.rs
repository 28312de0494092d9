//! Counting restricted subsets of `{1, …, n}`.
//!
//! `S_n` is the number of subsets of `{1, …, n}` in which no two elements
//! differ by a member of `Q`; `S_{n,k}` refines it by subset size.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::binomial::binomial;
use crate::error::{capacity, Result};
use crate::json::big_uint;
use crate::qset::QSet;

/// Largest `n` accepted by [`count_subsets_oracle`]; subsets are `u32` masks.
pub const ORACLE_N_CAP: usize = 28;

/// Largest `q` accepted by [`count_subsets_fast`]. The state is the occupancy
/// of the last `q` positions, so the worst case is `2^q` live states.
pub const FAST_Q_CAP: u32 = 30;

/// Subset counts `S_0..=S_{n_max}` and optionally the triangle `S_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub n_max: usize,
    pub totals: Vec<BigUint>,
    /// `triangle[n][k]` for `0 ≤ k ≤ n`.
    pub triangle: Option<Vec<Vec<BigUint>>>,
}

impl CountTable {
    pub fn total(&self, n: usize) -> &BigUint {
        &self.totals[n]
    }

    /// `S_{n,k}`, zero outside the stored triangle. Panics without a triangle.
    pub fn refined(&self, n: usize, k: usize) -> BigUint {
        let tri = self.triangle.as_ref().expect("table has no triangle");
        tri.get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Totals as `u64`, for tests on small tables.
    pub fn totals_u64(&self) -> Vec<u64> {
        self.totals
            .iter()
            .map(|v| v.to_u64().expect("count fits in u64"))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let totals: Vec<Value> = self.totals.iter().map(big_uint).collect();
        let triangle = self.triangle.as_ref().map(|tri| {
            tri.iter()
                .map(|row| Value::Array(row.iter().map(big_uint).collect()))
                .collect::<Vec<_>>()
        });
        json!({ "n_max": self.n_max, "totals": totals, "triangle": triangle })
    }

    /// Text output in the style of the classic `rcl` program: one `S_n` per
    /// line, or with a triangle one row `S_{n,0} S_{n,1} …` per line stopped
    /// at the first zero entry.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.triangle {
            None => {
                for v in &self.totals {
                    out.push_str(&v.to_string());
                    out.push('\n');
                }
            }
            Some(tri) => {
                for row in tri {
                    let cells: Vec<String> = row
                        .iter()
                        .take_while(|v| !v.is_zero())
                        .map(BigUint::to_string)
                        .collect();
                    out.push_str(&cells.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// Validity test on a subset mask (bit `i - 1` set iff `i` is in the subset):
/// for every element `x`, the subset shifted so that `x` sits at the origin
/// must share no bit with `Q`'s mask.
fn subset_is_allowed(s: u32, qmask: u32) -> bool {
    let mut ss = s;
    while ss != 0 {
        let low = ss.trailing_zeros();
        let above = ss >> low >> 1;
        if above & qmask != 0 {
            return false;
        }
        ss = above << low << 1;
    }
    true
}

/// Brute-force count over every subset of `{1, …, n_max}`.
///
/// Each subset is tested once, at its smallest admissible `n` (its largest
/// element), and then credited to every `n` above that, since an allowed
/// subset of `{1..n}` stays allowed in `{1..m}` for `m > n`.
pub fn count_subsets_oracle(q: &QSet, n_max: usize, with_triangle: bool) -> Result<CountTable> {
    if n_max > ORACLE_N_CAP {
        return Err(capacity("n_max", n_max as u64, ORACLE_N_CAP as u64));
    }
    // Differences larger than n_max cannot occur.
    let qmask: u32 = q
        .diffs()
        .iter()
        .filter(|&&d| (d as usize) < 32)
        .fold(0, |m, &d| m | 1 << (d - 1));
    let width = n_max + 1;

    // hits[n][k]: allowed subsets whose largest element is n, of size k.
    // Subsets are split into disjoint ranges by their largest element.
    let hits: Vec<Vec<u64>> = (1..=n_max)
        .into_par_iter()
        .map(|top| {
            let mut row = vec![0u64; width];
            let lo = 1u32 << (top - 1);
            let hi = (1u32 << top) - 1;
            for s in lo..=hi {
                if subset_is_allowed(s, qmask) {
                    row[s.count_ones() as usize] += 1;
                }
            }
            row
        })
        .collect();

    let mut table = vec![vec![BigUint::zero(); width]; width];
    let mut running = vec![0u64; width];
    running[0] = 1; // the empty subset
    for n in 0..=n_max {
        if n >= 1 {
            for (k, &h) in hits[n - 1].iter().enumerate() {
                running[k] += h;
            }
        }
        for k in 0..=n {
            table[n][k] = BigUint::from(running[k]);
        }
        table[n].truncate(n + 1);
    }
    Ok(finish(n_max, table, with_triangle))
}

fn finish(n_max: usize, table: Vec<Vec<BigUint>>, with_triangle: bool) -> CountTable {
    let totals = table.iter().map(|row| row.iter().sum()).collect();
    CountTable {
        n_max,
        totals,
        triangle: with_triangle.then_some(table),
    }
}

/// Dynamic-programming count whose state is the occupancy of the last `q`
/// positions. Agrees with [`count_subsets_oracle`] wherever both run.
pub fn count_subsets_fast(q: &QSet, n_max: usize, with_triangle: bool) -> Result<CountTable> {
    let qq = q.q();
    if qq > FAST_Q_CAP {
        return Err(capacity("q", qq, FAST_Q_CAP));
    }
    let qmask = q.mask();
    let window = if qq == 0 { 0 } else { (1u64 << qq) - 1 };

    // state -> counts by subset size
    let mut states: BTreeMap<u64, Vec<BigUint>> = BTreeMap::new();
    states.insert(0, vec![BigUint::from(1u32)]);
    let mut table = Vec::with_capacity(n_max + 1);
    table.push(vec![BigUint::from(1u32)]);

    for n in 1..=n_max {
        let mut next: BTreeMap<u64, Vec<BigUint>> = BTreeMap::new();
        for (state, counts) in &states {
            let skip = (state << 1) & window;
            add_into(next.entry(skip).or_default(), counts, 0);
            if state & qmask == 0 {
                let take = ((state << 1) | 1) & window;
                add_into(next.entry(take).or_default(), counts, 1);
            }
        }
        states = next;
        let mut row = vec![BigUint::zero(); n + 1];
        for counts in states.values() {
            for (k, c) in counts.iter().enumerate() {
                row[k] += c;
            }
        }
        table.push(row);
    }
    Ok(finish(n_max, table, with_triangle))
}

fn add_into(dst: &mut Vec<BigUint>, src: &[BigUint], shift: usize) {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, BigUint::zero());
    }
    for (k, c) in src.iter().enumerate() {
        dst[k + shift] += c;
    }
}

/// `S_{n,k}` for `Q = {1, …, q}`: `C(n + q(1 - k), k)`, zero when the top is
/// below `k` or `k < 0`.
pub fn run_closed_form(q: u32, n: i64, k: i64) -> BigUint {
    assert!(q >= 1, "run closed form needs q >= 1");
    let top = n + i64::from(q) * (1 - k);
    binomial(top, k)
        .to_biguint()
        .expect("binomial with the zero convention is nonnegative")
}

/// `S_n` for `Q = {1, …, q}` from `S_n = S_{n-1} + S_{n-q-1} + δ_{n+q,0}`.
///
/// The impulse sits at `n = -q`, so the recursion is run from there with
/// zero below; only `n ≥ 0` is returned.
pub fn run_totals_by_recursion(q: u32, n_max: usize) -> Vec<BigUint> {
    let q = q as usize;
    // s[i] holds S_{i - q}
    let mut s: Vec<BigUint> = Vec::with_capacity(n_max + q + 1);
    for i in 0..=n_max + q {
        let mut v = BigUint::zero();
        if i >= 1 {
            v += &s[i - 1];
        }
        if i > q {
            v += &s[i - q - 1];
        }
        if i == 0 {
            v += 1u32;
        }
        s.push(v);
    }
    s.split_off(q)
}
