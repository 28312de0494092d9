//! Strongly restricted permutations, `π(i) − i ∈ D`, and their links to
//! restricted combinations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::count_subsets_oracle;
use crate::error::{capacity, Error, Result};
use crate::genfunc::Poly;
use crate::qset::QSet;
use crate::report::Report;

/// Largest `n` for exhaustive enumeration.
pub const PERM_BRUTE_CAP: usize = 24;
/// Largest `n` for the sliding-window count.
pub const PERM_DP_CAP: usize = 4096;
/// Largest `max D − min D` the sliding window supports.
pub const PERM_WINDOW_CAP: i64 = 60;

/// Allowed values of `π(i) − i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DisplacementSet {
    values: Vec<i64>,
}

impl DisplacementSet {
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut values: Vec<i64> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        DisplacementSet { values }
    }

    /// Parses a comma-separated list such as `-2,0,4`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>().map_err(|e| Error::Parse {
                    token: t.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DisplacementSet::new(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    fn span(&self) -> (i64, i64) {
        (
            self.values.first().copied().unwrap_or(0).min(0),
            self.values.last().copied().unwrap_or(0).max(0),
        )
    }
}

impl fmt::Display for DisplacementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Calls `visit` with every permutation of `1..=n` (one-line notation) whose
/// displacements lie in `d`.
pub fn for_each_restricted_permutation(
    d: &DisplacementSet,
    n: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    if n > PERM_BRUTE_CAP {
        return Err(capacity("n", n as u64, PERM_BRUTE_CAP as u64));
    }
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n + 1];
    place(d, 1, &mut perm, &mut used, &mut visit);
    Ok(())
}

fn place(d: &DisplacementSet, i: usize, perm: &mut [usize], used: &mut [bool], visit: &mut impl FnMut(&[usize])) {
    let n = perm.len();
    if i > n {
        visit(perm);
        return;
    }
    for &delta in d.values() {
        let v = i as i64 + delta;
        if v < 1 || v > n as i64 || used[v as usize] {
            continue;
        }
        used[v as usize] = true;
        perm[i - 1] = v as usize;
        place(d, i + 1, perm, used, visit);
        used[v as usize] = false;
    }
}

pub fn excedances(perm: &[usize]) -> usize {
    perm.iter().enumerate().filter(|&(i, &v)| v > i + 1).count()
}

/// Counts by exhaustive enumeration, indexed by number of excedances.
pub fn count_restricted_permutations_brute(d: &DisplacementSet, n: usize) -> Result<Vec<BigUint>> {
    let mut by_k = vec![0u64; n + 1];
    for_each_restricted_permutation(d, n, |p| by_k[excedances(p)] += 1)?;
    Ok(by_k.into_iter().map(BigUint::from).collect())
}

/// Counts by a left-to-right scan over positions, remembering which values
/// in the reachable window are already taken. Indexed by number of
/// excedances.
pub fn count_restricted_permutations_by_excedance(d: &DisplacementSet, n: usize) -> Result<Vec<BigUint>> {
    if n > PERM_DP_CAP {
        return Err(capacity("n", n as u64, PERM_DP_CAP as u64));
    }
    let (lo, hi) = d.span();
    if hi - lo > PERM_WINDOW_CAP {
        return Err(capacity("displacement span", (hi - lo) as u64, PERM_WINDOW_CAP as u64));
    }
    // Bit b of a state is value i + lo + b, for the current position i.
    let mut states: HashMap<(u64, usize), BigUint> = HashMap::from([((0, 0), BigUint::one())]);
    for i in 1..=n as i64 {
        let mut next: HashMap<(u64, usize), BigUint> = HashMap::new();
        for ((mask, k), count) in states {
            for &delta in d.values() {
                let v = i + delta;
                let bit = 1u64 << (delta - lo);
                if v < 1 || v > n as i64 || mask & bit != 0 {
                    continue;
                }
                let taken = mask | bit;
                // Value i + lo is out of reach from here on.
                if i + lo >= 1 && taken & 1 == 0 {
                    continue;
                }
                let key = (taken >> 1, k + usize::from(delta > 0));
                *next.entry(key).or_default() += &count;
            }
        }
        states = next;
    }
    let mut by_k = vec![BigUint::zero(); n + 1];
    for ((_, k), c) in states {
        by_k[k] += c;
    }
    Ok(by_k)
}

/// `P^D_n`, the number of permutations of `1..=n` with displacements in `d`.
pub fn count_restricted_permutations(d: &DisplacementSet, n: usize) -> Result<BigUint> {
    Ok(count_restricted_permutations_by_excedance(d, n)?.into_iter().sum())
}

/// `f^{(t)}_n = f^{(t)}_{n−1} + f^{(t)}_{n−t} + δ_{n,0}`, zero for `n < 0`.
pub fn bonacci(t: usize, n: i64) -> BigUint {
    assert!(t >= 2, "bonacci order must be at least 2");
    if n < 0 {
        return BigUint::zero();
    }
    let n = n as usize;
    let mut f: Vec<BigUint> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = if i == 0 { BigUint::one() } else { f[i - 1].clone() };
        if i >= t {
            v += &f[i - t];
        }
        f.push(v);
    }
    f.pop().expect("n + 1 terms")
}

/// The polynomial analogue with `x` weighting the order-`t` term.
pub fn bonacci_poly(t: usize, n: i64) -> Poly {
    assert!(t >= 2, "bonacci order must be at least 2");
    if n < 0 {
        return Poly::zero();
    }
    let n = n as usize;
    let mut f: Vec<Poly> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = if i == 0 { Poly::one() } else { f[i - 1].clone() };
        if i >= t {
            v = &v + &f[i - t].shift_up(1);
        }
        f.push(v);
    }
    f.pop().expect("n + 1 terms")
}

/// Closed form for `P^{{−m,0,jm}}_n`, or for its `k`-excedance refinement.
pub fn permutation_closed_form(m: usize, j: usize, n: usize, k: Option<usize>) -> BigUint {
    assert!(m >= 1 && j >= 1, "m and j must be positive");
    let (i, r) = ((n / m) as i64, n % m);
    match k {
        None => bonacci(j + 1, i).pow((m - r) as u32) * bonacci(j + 1, i + 1).pow(r as u32),
        Some(k) => {
            let p = &bonacci_poly(j + 1, i).pow((m - r) as u32) * &bonacci_poly(j + 1, i + 1).pow(r as u32);
            p.coeff(k).to_biguint().expect("coefficients are nonnegative")
        }
    }
}

/// Closed form for `S_n` with `Q = {m, 2m, …, (t−1)m}`, writing `n = lm + r`.
///
/// Negative `n` is accepted as long as no bonacci index goes negative.
pub fn multiples_closed_form(m: usize, t: usize, n: i64) -> Result<BigUint> {
    if m == 0 || t < 2 {
        return Err(Error::Precondition(format!("need m >= 1 and t >= 2, got m={m}, t={t}")));
    }
    let (l, r) = (n.div_euclid(m as i64), n.rem_euclid(m as i64) as usize);
    let first = l + t as i64 - 1;
    if first < 0 {
        return Err(Error::Precondition(format!(
            "n={n} needs the bonacci number at index {first}"
        )));
    }
    Ok(bonacci(t, first).pow((m - r) as u32) * bonacci(t, first + 1).pow(r as u32))
}

/// Compares `P^{{−m,0,jm}}_{n+jm,k}` (enumerated) with `S_{n,k}` for
/// `Q = {m, …, jm}` (enumerated) for `n ≤ n_max`.
pub fn verify_theorem_bij(m: usize, j: usize, n_max: usize) -> Result<Report> {
    let q = QSet::new((1..=j).map(|i| (i * m) as u32))?;
    let d = DisplacementSet::new([-(m as i64), 0, (j * m) as i64]);
    let subsets = count_subsets_oracle(&q, n_max, true)?;
    let mut report = Report::new(format!("P^{d}_(n+{}) = S^{q}_n by excedances", j * m));
    for n in 0..=n_max {
        let size = n + j * m;
        let mut by_k = vec![0u64; size + 1];
        for_each_restricted_permutation(&d, size, |p| {
            let up = p.iter().enumerate().filter(|&(i, &v)| v == i + 1 + j * m).count();
            let k = excedances(p);
            assert_eq!(k, up, "every excedance is a +jm displacement");
            by_k[k] += 1;
        })?;
        for (k, &c) in by_k.iter().enumerate() {
            report.compare(&[("n", n as i64), ("k", k as i64)], subsets.refined(n, k), c);
        }
    }
    Ok(report)
}

/// Permutations of `1..=n+1` made of `k` disjoint adjacent transpositions in
/// which every `m` consecutive entries span at most `m`.
pub fn count_swap_window_permutations(m: usize, n: usize, k: usize) -> Result<BigUint> {
    assert!(m >= 2, "window must be at least 2");
    let d = DisplacementSet::new([-1, 0, 1]);
    let mut count = 0u64;
    for_each_restricted_permutation(&d, n + 1, |p| {
        if excedances(p) == k && windows_ok(p, m) {
            count += 1;
        }
    })?;
    Ok(BigUint::from(count))
}

fn windows_ok(p: &[usize], m: usize) -> bool {
    p.windows(m).all(|w| {
        let hi = w.iter().max().expect("window is nonempty");
        let lo = w.iter().min().expect("window is nonempty");
        hi - lo <= m
    })
}

/// Compares the swap-window permutation counts with `S_{n,k}` for `Q = {1, m}`.
pub fn verify_swap_window(m: usize, n_max: usize) -> Result<Report> {
    let q = QSet::new([1, m as u32])?;
    let subsets = count_subsets_oracle(&q, n_max, true)?;
    let mut report = Report::new(format!("swap-window permutations = S^{q}"));
    for n in 0..=n_max {
        for k in 0..=n {
            let perms = count_swap_window_permutations(m, n, k)?;
            report.compare(&[("n", n as i64), ("k", k as i64)], subsets.refined(n, k), perms);
        }
    }
    Ok(report)
}

/// Compares both closed forms with enumeration for `n ≤ n_max`.
pub fn verify_closed_forms(m: usize, j: usize, n_max: usize) -> Result<Report> {
    let d = DisplacementSet::new([-(m as i64), 0, (j * m) as i64]);
    let q = QSet::new((1..=j).map(|i| (i * m) as u32))?;
    let subsets = count_subsets_oracle(&q, n_max, false)?;
    let mut report = Report::new(format!("closed forms for P^{d} and S^{q}"));
    for n in 0..=n_max {
        let brute = count_restricted_permutations_brute(&d, n)?;
        let total: BigUint = brute.iter().sum();
        report.compare(&[("n", n as i64)], total, permutation_closed_form(m, j, n, None));
        for (k, c) in brute.iter().enumerate() {
            let closed = permutation_closed_form(m, j, n, Some(k));
            report.compare(&[("n", n as i64), ("k", k as i64)], c.clone(), closed);
        }
        let s = multiples_closed_form(m, j + 1, n as i64)?;
        report.compare(&[("S n", n as i64)], subsets.totals[n].clone(), s);
    }
    Ok(report)
}
