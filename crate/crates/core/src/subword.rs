//! Equivalence classes of binary words under the positions of a subword.
//!
//! Two words of length `n` are equivalent when a fixed subword `ω` occurs in
//! exactly the same positions of both. The shifts `j` at which `ω` cannot
//! overlap itself form a difference set `Q`, and when `q = l − 1` the classes
//! are counted by `S^Q_{n−q}`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{capacity, Error, Result};
use crate::genfunc::{Poly, RationalGF};
use crate::qset::QSet;
use crate::report::Report;

/// Longest subword accepted.
pub const SUBWORD_LEN_CAP: usize = 63;

/// Largest word length for [`count_equivalence_classes`].
pub const CLASS_N_CAP: usize = 26;

/// A binary word `b_l … b_1`, stored with `b_1` as bit 0 of `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subword {
    len: usize,
    value: u64,
}

impl Subword {
    pub fn new(len: usize, value: u64) -> Result<Self> {
        if len == 0 {
            return Err(Error::Precondition("a subword has at least one bit".into()));
        }
        if len > SUBWORD_LEN_CAP {
            return Err(capacity("subword length", len as u64, SUBWORD_LEN_CAP as u64));
        }
        if value >> len != 0 {
            return Err(Error::Precondition(format!("{value} does not fit in {len} bits")));
        }
        Ok(Subword { len, value })
    }

    /// Parses a 0/1 string, leftmost character first.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut value = 0u64;
        for (i, ch) in text.chars().enumerate() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(Error::Parse {
                        token: ch.to_string(),
                        reason: format!("subwords are 0/1 strings (position {})", i + 1),
                    })
                }
            };
            if i >= SUBWORD_LEN_CAP {
                return Err(capacity("subword length", text.len() as u64, SUBWORD_LEN_CAP as u64));
            }
            value = (value << 1) | bit;
        }
        if text.is_empty() {
            return Err(Error::Parse {
                token: String::new(),
                reason: "empty subword".into(),
            });
        }
        Subword::new(text.chars().count(), value)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn low_mask(bits: usize) -> u64 {
        if bits >= 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        }
    }

    pub fn flipped(&self) -> Subword {
        Subword {
            len: self.len,
            value: !self.value & Self::low_mask(self.len),
        }
    }

    pub fn reversed(&self) -> Subword {
        let value = self.value.reverse_bits() >> (64 - self.len);
        Subword { len: self.len, value }
    }
}

impl fmt::Display for Subword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.len).rev() {
            write!(f, "{}", (self.value >> i) & 1)?;
        }
        Ok(())
    }
}

/// `j ∈ Q` iff `⌊ω/2^j⌋ ≠ ω mod 2^{l−j}`, for `1 ≤ j < l`. The flag is
/// `q = l − 1`.
pub fn qset_from_subword(w: &Subword) -> (QSet, bool) {
    let l = w.len;
    let q = QSet::new((1..l).filter(|&j| {
        (w.value >> j) != (w.value & Subword::low_mask(l - j))
    }).map(|j| j as u32))
    .expect("shifts are positive and below 64");
    let admissible = q.q() as usize + 1 == l;
    (q, admissible)
}

/// Whether every period of `w` exceeds `l/2`. Periods are exactly the shifts
/// in `{1, …, l−1}` missing from the derived `Q`. With a period `p ≤ l/2`,
/// copies of `w` at distance `l` overlap into a further copy, and the class
/// counts fall below `S^Q_{n−q}`.
pub fn has_no_short_period(w: &Subword) -> bool {
    let (q, _) = qset_from_subword(w);
    q.complement().first().is_none_or(|&p| 2 * p as usize > w.len)
}

/// Class counts for words of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCounts {
    pub total: u64,
    /// `by_size[k]`: classes whose occurrence set has `k` elements.
    pub by_size: Vec<u64>,
}

fn occurrences(word: u64, n: usize, w: &Subword) -> u64 {
    let mask = Subword::low_mask(w.len);
    let mut set = 0u64;
    for i in 0..=n - w.len {
        if (word >> i) & mask == w.value {
            set |= 1 << i;
        }
    }
    set
}

/// Counts classes of the `2^n` words of length `n` by their occurrence sets.
pub fn count_equivalence_classes(w: &Subword, n: usize) -> Result<ClassCounts> {
    if n > CLASS_N_CAP {
        return Err(capacity("n", n as u64, CLASS_N_CAP as u64));
    }
    if n < w.len {
        return Ok(ClassCounts { total: 1, by_size: vec![1] });
    }
    // Words are split on their top bits so each task scans a contiguous block.
    let split = n.min(8);
    let block = n - split;
    let classes: HashSet<u64> = (0u64..1 << split)
        .into_par_iter()
        .map(|hi| {
            let mut seen = HashSet::new();
            for lo in 0u64..1 << block {
                seen.insert(occurrences((hi << block) | lo, n, w));
            }
            seen
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut by_size = vec![0u64; n - w.len + 2];
    for set in &classes {
        by_size[set.count_ones() as usize] += 1;
    }
    while by_size.len() > 1 && by_size.last() == Some(&0) {
        by_size.pop();
    }
    Ok(ClassCounts {
        total: classes.len() as u64,
        by_size,
    })
}

/// `c / ((1−x)c − x)` with `c = 1 + Σ x^{q_i}`.
pub fn wellbased_gf(q: &QSet) -> Result<RationalGF> {
    if !q.is_well_based() {
        return Err(Error::Precondition(format!("{q} is not well based")));
    }
    let c = Poly::from_terms(
        std::iter::once((0, 1)).chain(q.diffs().iter().map(|&d| (d as usize, 1))),
    );
    let den = (&Poly::from_i64s(&[1, -1]) * &c) - Poly::from_i64s(&[0, 1]);
    RationalGF::new(c, den)
}

/// `(1 − Σ x^{p_i}) / ((1−x)(1 + Σ x^{q_i}) − x)` for the `Q` of `w`.
pub fn equivalence_gf(w: &Subword) -> Result<RationalGF> {
    let (q, admissible) = qset_from_subword(w);
    if !admissible {
        return Err(Error::Precondition(format!(
            "{w} gives {q} with q = {} but l - 1 = {}",
            q.q(),
            w.len - 1
        )));
    }
    let num = Poly::from_terms(
        std::iter::once((0, 1)).chain(q.complement().iter().map(|&p| (p as usize, -1))),
    );
    let c = Poly::from_terms(
        std::iter::once((0, 1)).chain(q.diffs().iter().map(|&d| (d as usize, 1))),
    );
    let den = (&Poly::from_i64s(&[1, -1]) * &c) - Poly::from_i64s(&[0, 1]);
    RationalGF::new(num, den)
}

/// Values `0 < Λ ≤ bound` reachable as nonnegative combinations of `parts`.
pub fn nonnegative_combinations(parts: &[u32], bound: u32) -> Vec<u32> {
    let mut reach = vec![false; bound as usize + 1];
    reach[0] = true;
    for v in 1..=bound as usize {
        reach[v] = parts.iter().any(|&p| p as usize <= v && reach[v - p as usize]);
    }
    (1..=bound).filter(|&v| reach[v as usize]).collect()
}

/// A pair `p_i < p_j` of non-members with `p_j − p_i ∈ Q`.
pub fn difference_obstruction(q: &QSet) -> Option<(u32, u32)> {
    let p = q.complement();
    p.iter()
        .enumerate()
        .flat_map(|(i, &a)| p[i + 1..].iter().map(move |&b| (a, b)))
        .find(|&(a, b)| q.contains(b - a))
}

/// Every word of length `q + 1` whose derived set is `Q`.
pub fn subwords_for_qset(q: &QSet) -> Result<Vec<Subword>> {
    let l = q.q() as usize + 1;
    if l > 24 {
        return Err(capacity("q + 1", l as u64, 24u64));
    }
    Ok((0u64..1 << l)
        .map(|v| Subword::new(l, v).expect("fits"))
        .filter(|w| qset_from_subword(w).0 == *q)
        .collect())
}

/// Well-basedness of the derived `Q`, no nonnegative combination of the
/// non-members up to `q` inside `Q`, and flip/reverse invariance.
pub fn verify_subword_qset_properties(w: &Subword) -> Report {
    let (q, _) = qset_from_subword(w);
    let mut report = Report::new(format!("subword {w} gives well-based {q}"));
    report.compare(&[("well_based", 1)], 1, i64::from(q.is_well_based()));
    for lambda in nonnegative_combinations(q.complement(), q.q()) {
        report.compare(&[("lambda", i64::from(lambda))], 0, i64::from(q.contains(lambda)));
    }
    for (tag, v) in [(1, w.flipped()), (2, w.reversed()), (3, w.flipped().reversed())] {
        report.compare(&[("variant", tag)], 1, i64::from(qset_from_subword(&v).0 == q));
    }
    report
}

/// Class counts against `S^Q_{n−q}` and the series of [`equivalence_gf`].
pub fn verify_equivalence_classes(w: &Subword, n_max: usize) -> Result<Report> {
    let (q, admissible) = qset_from_subword(w);
    let qq = q.q() as usize;
    let mut report = Report::new(format!("classes for {w} = S^{q}_(n-{qq})"));
    if !admissible {
        return Err(Error::Precondition(format!("{w} is not admissible")));
    }
    let s = crate::count::count_subsets_fast(&q, n_max.saturating_sub(qq), true)?;
    let series = equivalence_gf(w)?.series(n_max);
    for n in 0..=n_max {
        let classes = count_equivalence_classes(w, n)?;
        report.compare(&[("n", n as i64)], series[n].clone(), classes.total);
        if n < qq {
            report.compare(&[("n", n as i64)], 1, classes.total);
            continue;
        }
        let m = n - qq;
        report.compare(&[("n", n as i64)], s.totals[m].clone(), classes.total);
        for k in 0..=m {
            let got = classes.by_size.get(k).copied().unwrap_or(0);
            report.compare(&[("n", n as i64), ("k", k as i64)], s.refined(m, k), got);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn w(s: &str) -> Subword {
        Subword::parse(s).unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(w("10010").to_string(), "10010");
        assert_eq!(w("0110").value(), 6);
        assert_eq!(w("1101").reversed().to_string(), "1011");
        assert_eq!(w("1101").flipped().to_string(), "0010");
        assert!(Subword::parse("10a").is_err());
        assert!(Subword::parse("").is_err());
    }

    #[test]
    fn listed_subwords() {
        let listed = [
            ("1", "{}"),
            ("10", "{1}"),
            ("100", "{1,2}"),
            ("1000", "{1,2,3}"),
            ("1010", "{1,3}"),
            ("10000", "{1,2,3,4}"),
            ("10010", "{1,2,4}"),
            ("100000", "{1,2,3,4,5}"),
            ("100010", "{1,2,3,5}"),
            ("100100", "{1,2,4,5}"),
            ("100110", "{1,2,3,5}"),
            ("101010", "{1,3,5}"),
        ];
        for (s, expected) in listed {
            let (q, admissible) = qset_from_subword(&w(s));
            assert_eq!(q.to_string(), expected, "{s}");
            assert!(admissible, "{s}");
        }
        assert!(!qset_from_subword(&w("11")).1);
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(count_equivalence_classes(&w("10"), 2).unwrap().total, 2);
        assert_eq!(count_equivalence_classes(&w("10"), 1).unwrap().total, 1);
        assert_eq!(count_equivalence_classes(&w("1"), 5).unwrap().total, 32);
        let s = crate::count::count_subsets_oracle(&QSet::parse("1,2,4").unwrap(), 8, false).unwrap();
        let e = count_equivalence_classes(&w("10010"), 12).unwrap();
        assert_eq!(BigInt::from(e.total), BigInt::from(s.totals[8].clone()));
    }

    #[test]
    fn generating_functions() {
        let g = wellbased_gf(&QSet::parse("1").unwrap()).unwrap();
        assert_eq!(g, RationalGF::from_i64s(&[1, 1], &[1, -1, -1]).unwrap());
        let g = wellbased_gf(&QSet::parse("1,2").unwrap()).unwrap();
        assert_eq!(g, RationalGF::from_i64s(&[1, 1, 1], &[1, -1, 0, -1]).unwrap());
        assert!(wellbased_gf(&QSet::parse("2,3").unwrap()).is_err());
        assert_eq!(equivalence_gf(&w("1")).unwrap(), RationalGF::from_i64s(&[1], &[1, -2]).unwrap());
        assert_eq!(equivalence_gf(&w("10")).unwrap(), RationalGF::from_i64s(&[1], &[1, -1, -1]).unwrap());
        assert_eq!(equivalence_gf(&w("10010")).unwrap().num(), &Poly::from_i64s(&[1, 0, 0, -1]));
        assert!(equivalence_gf(&w("11")).is_err());
    }

    #[test]
    fn well_based_series_match_counts() {
        for mask in 1u32..1 << 7 {
            let q = QSet::new((1..=7).filter(|d| mask >> (d - 1) & 1 == 1)).unwrap();
            if !q.is_well_based() {
                continue;
            }
            let s = crate::count::count_subsets_fast(&q, 20, false).unwrap();
            let series = wellbased_gf(&q).unwrap().series(20);
            for n in 0..=20 {
                assert_eq!(series[n], BigInt::from(s.totals[n].clone()), "{q} n={n}");
            }
        }
    }

    #[test]
    fn property_reports() {
        for s in ["10010", "101010", "100110", "1"] {
            let r = verify_subword_qset_properties(&w(s));
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn unrealizable_well_based_sets() {
        for s in ["1,2,5", "1,2,3,5,7"] {
            let q = QSet::parse(s).unwrap();
            assert!(q.is_well_based());
            assert!(difference_obstruction(&q).is_some());
            assert!(subwords_for_qset(&q).unwrap().is_empty(), "{s}");
        }
    }

    #[test]
    fn signed_combinations_can_land_in_q() {
        let (q, admissible) = qset_from_subword(&w("101001010"));
        assert!(admissible);
        assert_eq!(q.complement(), &[5, 7]);
        assert_eq!(difference_obstruction(&q), Some((5, 7)));
    }

    #[test]
    fn classes_match_counts() {
        for s in ["1", "10", "100", "1000", "10010", "100010", "100110"] {
            assert!(has_no_short_period(&w(s)));
            let r = verify_equivalence_classes(&w(s), 14).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn short_periods_lose_classes() {
        // 10101010 holds 1010 at positions 1, 3 and 5, so {1, 5} is no class.
        assert!(!has_no_short_period(&w("1010")));
        let e = count_equivalence_classes(&w("1010"), 8).unwrap();
        assert_eq!(e.total, 10);
        let s = crate::count::count_subsets_oracle(&QSet::parse("1,3").unwrap(), 5, false).unwrap();
        assert_eq!(s.totals_u64()[5], 11);
        let r = verify_equivalence_classes(&w("101010"), 14).unwrap();
        assert!(!r.passed());
    }
}
