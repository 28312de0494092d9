//! Difference sets and their combs.
//!
//! A difference set `Q` lists the forbidden pairwise differences of a subset
//! of `{1, …, n}`. Its comb is the length-`q + 1` tile whose cell 0 and every
//! cell `j ∈ Q` are tooth cells; the remaining cells are gaps.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A set of disallowed differences together with its derived data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSet {
    diffs: Vec<u32>,
    complement: Vec<u32>,
}

impl QSet {
    /// Builds a set from arbitrary positive elements; duplicates are dropped.
    pub fn new<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self> {
        let set: BTreeSet<u32> = elems.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::Parse {
                token: "0".into(),
                reason: "differences must be positive".into(),
            });
        }
        let diffs: Vec<u32> = set.into_iter().collect();
        let q = diffs.last().copied().unwrap_or(0);
        let complement = (1..=q).filter(|j| diffs.binary_search(j).is_err()).collect();
        Ok(QSet { diffs, complement })
    }

    pub fn empty() -> Self {
        QSet {
            diffs: Vec::new(),
            complement: Vec::new(),
        }
    }

    /// `{1, …, q}`.
    pub fn run(q: u32) -> Self {
        QSet {
            diffs: (1..=q).collect(),
            complement: Vec::new(),
        }
    }

    /// Parses a comma-separated list such as `1,2,4`; `-` denotes the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "-" {
            return Ok(Self::empty());
        }
        if text.is_empty() {
            return Err(Error::Parse {
                token: String::new(),
                reason: "empty input (use `-` for the empty set)".into(),
            });
        }
        let mut elems = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            let value: i64 = token.parse().map_err(|_| Error::Parse {
                token: token.to_string(),
                reason: "not an integer".into(),
            })?;
            if value <= 0 {
                return Err(Error::Parse {
                    token: token.to_string(),
                    reason: "differences must be positive".into(),
                });
            }
            let value = u32::try_from(value).map_err(|_| Error::Parse {
                token: token.to_string(),
                reason: "value too large".into(),
            })?;
            elems.push(value);
        }
        Self::new(elems)
    }

    pub fn diffs(&self) -> &[u32] {
        &self.diffs
    }

    /// Largest element, 0 for the empty set.
    pub fn q(&self) -> u32 {
        self.diffs.last().copied().unwrap_or(0)
    }

    /// Elements of `{1, …, q}` not in the set, ascending.
    pub fn complement(&self) -> &[u32] {
        &self.complement
    }

    /// Size of the complement.
    pub fn a(&self) -> usize {
        self.complement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn contains(&self, d: u32) -> bool {
        self.diffs.binary_search(&d).is_ok()
    }

    /// Bit `d - 1` is set iff `d ∈ Q`. Requires `q ≤ 64`.
    pub fn mask(&self) -> u64 {
        assert!(self.q() <= 64, "difference mask needs q <= 64");
        self.diffs.iter().fold(0u64, |m, &d| m | 1u64 << (d - 1))
    }

    /// Well-based test in the shifted-difference form: `1 ∈ Q`, and for every
    /// element `q_j` and every `Δ` in `1..q_j` some element satisfies
    /// `q_j = q_i + Δ` unless `Δ` is itself an element.
    pub fn is_well_based_by_shifts(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        if !self.contains(1) {
            return false;
        }
        self.diffs.iter().all(|&qj| {
            (1..qj).all(|delta| self.contains(delta) || self.contains(qj - delta))
        })
    }

    /// Well-based test in the complement form: no `p_i + p_j` lies in `Q`.
    pub fn is_well_based_by_complement(&self) -> bool {
        let p = &self.complement;
        p.iter()
            .all(|&pi| p.iter().all(|&pj| !self.contains(pi + pj)))
    }

    /// Evaluates both well-based definitions and checks that they agree.
    pub fn is_well_based(&self) -> bool {
        let by_shifts = self.is_well_based_by_shifts();
        let by_complement = self.is_well_based_by_complement();
        assert_eq!(
            by_shifts, by_complement,
            "well-based definitions disagree for {self}"
        );
        by_complement
    }

    pub fn comb(&self) -> Comb {
        Comb::from_qset(self)
    }

    pub fn to_json(&self) -> Value {
        json!({ "diffs": self.diffs, "q": self.q(), "complement": self.complement })
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.diffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

/// A comb: teeth of widths `w_1..w_t` separated by gaps `g_1..g_{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comb {
    teeth: Vec<u32>,
    gaps: Vec<u32>,
    pattern: Vec<bool>,
}

impl Comb {
    /// Cell `j` of the comb is a tooth cell iff `j = 0` or `j ∈ Q`.
    pub fn from_qset(q: &QSet) -> Self {
        let len = q.q() as usize + 1;
        let mut pattern = vec![false; len];
        pattern[0] = true;
        for &d in q.diffs() {
            pattern[d as usize] = true;
        }
        Self::from_pattern(pattern).expect("comb pattern from a QSet is well formed")
    }

    /// Builds a comb from explicit widths; `gaps.len()` must be `teeth.len() - 1`.
    pub fn from_widths(teeth: &[u32], gaps: &[u32]) -> Result<Self> {
        if teeth.is_empty() || gaps.len() + 1 != teeth.len() {
            return Err(Error::Precondition(format!(
                "a comb with {} teeth needs {} gaps, got {}",
                teeth.len(),
                teeth.len().saturating_sub(1),
                gaps.len()
            )));
        }
        if teeth.iter().chain(gaps).any(|&w| w == 0) {
            return Err(Error::Precondition(
                "teeth and gaps must have positive length".into(),
            ));
        }
        let mut pattern = Vec::new();
        for (i, &w) in teeth.iter().enumerate() {
            pattern.extend(std::iter::repeat_n(true, w as usize));
            if let Some(&g) = gaps.get(i) {
                pattern.extend(std::iter::repeat_n(false, g as usize));
            }
        }
        Ok(Comb {
            teeth: teeth.to_vec(),
            gaps: gaps.to_vec(),
            pattern,
        })
    }

    fn from_pattern(pattern: Vec<bool>) -> Result<Self> {
        if pattern.first() != Some(&true) || pattern.last() != Some(&true) {
            return Err(Error::Precondition(
                "comb pattern must start and end with a tooth cell".into(),
            ));
        }
        let mut teeth = Vec::new();
        let mut gaps = Vec::new();
        let mut i = 0;
        while i < pattern.len() {
            let bit = pattern[i];
            let start = i;
            while i < pattern.len() && pattern[i] == bit {
                i += 1;
            }
            let run = (i - start) as u32;
            if bit {
                teeth.push(run);
            } else {
                gaps.push(run);
            }
        }
        Ok(Comb {
            teeth,
            gaps,
            pattern,
        })
    }

    pub fn teeth(&self) -> &[u32] {
        &self.teeth
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Cell occupancy, `pattern()[j]` is true iff cell `j` is a tooth cell.
    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    /// Total length `q + 1`.
    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn q(&self) -> u32 {
        self.pattern.len() as u32 - 1
    }

    /// Width of the rightmost tooth.
    pub fn r(&self) -> u32 {
        *self.teeth.last().expect("a comb has at least one tooth")
    }

    /// `q + 1 - r`.
    pub fn s(&self) -> u32 {
        self.q() + 1 - self.r()
    }

    /// The widths in `(w_1, g_1, w_2, …, w_t)` order.
    pub fn widths(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.teeth.len() + self.gaps.len());
        for (i, &w) in self.teeth.iter().enumerate() {
            out.push(w);
            if let Some(&g) = self.gaps.get(i) {
                out.push(g);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "teeth": self.teeth, "gaps": self.gaps, "length": self.len(), "r": self.r(), "s": self.s() })
    }

    pub fn to_qset(&self) -> QSet {
        QSet::new(
            self.pattern
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, &b)| b)
                .map(|(j, _)| j as u32),
        )
        .expect("tooth cells beyond 0 are positive")
    }
}

impl fmt::Display for Comb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.widths().iter().map(u32::to_string).collect();
        write!(f, "({})-comb", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let q = QSet::parse("1,2,4").unwrap();
        assert_eq!(q.diffs(), &[1, 2, 4]);
        assert_eq!(q.q(), 4);
        assert_eq!(q.complement(), &[3]);

        let e = QSet::parse("-").unwrap();
        assert!(e.is_empty());
        assert_eq!(e.q(), 0);
        assert!(e.complement().is_empty());

        let d = QSet::parse("4,1,1").unwrap();
        assert_eq!(d.diffs(), &[1, 4]);
        assert_eq!(d.complement(), &[2, 3]);
    }

    #[test]
    fn parse_errors_name_the_token() {
        for (text, token) in [("1,x,3", "x"), ("0", "0"), ("2,-3", "-3"), ("1,,2", "")] {
            match QSet::parse(text) {
                Err(Error::Parse { token: t, .. }) => assert_eq!(t, token, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(QSet::parse("").is_err());
    }

    #[test]
    fn comb_examples() {
        let c = QSet::parse("1,4").unwrap().comb();
        assert_eq!(c.widths(), vec![2, 2, 1]);
        assert_eq!(c.r(), 1);
        assert_eq!(c.s(), 4);
        let c = QSet::parse("1,5").unwrap().comb();
        assert_eq!(c.widths(), vec![2, 3, 1]);
        let c = QSet::parse("2").unwrap().comb();
        assert_eq!(c.widths(), vec![1, 1, 1]);
        let c = QSet::empty().comb();
        assert_eq!(c.widths(), vec![1]);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn comb_to_qset_examples() {
        let c = Comb::from_widths(&[2, 1], &[2]).unwrap();
        assert_eq!(c.to_qset().diffs(), &[1, 4]);
        let c = Comb::from_widths(&[2, 1], &[3]).unwrap();
        assert_eq!(c.to_qset().diffs(), &[1, 5]);
        let c = Comb::from_widths(&[2], &[]).unwrap();
        assert_eq!(c.to_qset().diffs(), &[1]);
        assert!(Comb::from_widths(&[2, 1], &[]).is_err());
        assert!(Comb::from_widths(&[2, 0], &[1]).is_err());
    }

    #[test]
    fn well_based_examples() {
        for s in ["1,2,4", "1,3,5", "1,2,3", "1,2,5", "1", "-"] {
            assert!(QSet::parse(s).unwrap().is_well_based(), "{s}");
        }
        for s in ["2,3", "2", "1,3,4", "1,2,6"] {
            assert!(!QSet::parse(s).unwrap().is_well_based(), "{s}");
        }
    }

    #[test]
    fn size_three_well_based_sets() {
        // A size-3 well-based set has q ≤ 5, so {1..12} is more than enough.
        let mut found = Vec::new();
        for a in 1..=12u32 {
            for b in a + 1..=12 {
                for c in b + 1..=12 {
                    let q = QSet::new([a, b, c]).unwrap();
                    if q.is_well_based() {
                        found.push(q.diffs().to_vec());
                    }
                }
            }
        }
        assert_eq!(
            found,
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5], vec![1, 3, 5]]
        );
    }

    fn arb_qset(max_q: u32) -> impl Strategy<Value = QSet> {
        proptest::collection::btree_set(1..=max_q, 0..max_q as usize)
            .prop_map(|s| QSet::new(s).unwrap())
    }

    proptest! {
        #[test]
        fn comb_round_trip(q in arb_qset(9)) {
            let comb = q.comb();
            prop_assert_eq!(comb.to_qset(), q.clone());
            prop_assert_eq!(comb.len() as u32, q.q() + 1);
            let total: u32 = comb.teeth().iter().sum::<u32>() + comb.gaps().iter().sum::<u32>();
            prop_assert_eq!(total, q.q() + 1);
            for (j, &bit) in comb.pattern().iter().enumerate().skip(1) {
                prop_assert_eq!(bit, q.contains(j as u32));
            }
        }

        #[test]
        fn well_based_definitions_agree(q in arb_qset(10)) {
            prop_assert_eq!(q.is_well_based_by_shifts(), q.is_well_based_by_complement());
        }

        #[test]
        fn complement_partitions_range(q in arb_qset(12)) {
            let mut all: Vec<u32> = q.diffs().iter().chain(q.complement()).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (1..=q.q()).collect::<Vec<_>>());
        }
    }
}
