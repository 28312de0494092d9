//! Compositions into restricted part sets, and the comb families whose
//! restricted combinations they count.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::count_subsets_fast;
use crate::digraph::build_digraph;
use crate::error::{Error, Result};
use crate::qset::{Comb, QSet};
use crate::report::Report;

/// Finitely many parts plus arithmetic families `first + j·step`, `j ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartSet {
    finite: BTreeSet<u64>,
    families: Vec<(u64, u64)>,
}

impl PartSet {
    pub fn new<I: IntoIterator<Item = u64>>(finite: I, families: Vec<(u64, u64)>) -> Result<Self> {
        let finite: BTreeSet<u64> = finite.into_iter().collect();
        if finite.contains(&0) || families.iter().any(|&(a, d)| a == 0 || d == 0) {
            return Err(Error::Precondition("parts and steps must be positive".into()));
        }
        Ok(PartSet { finite, families })
    }

    pub fn finite(&self) -> &BTreeSet<u64> {
        &self.finite
    }

    pub fn families(&self) -> &[(u64, u64)] {
        &self.families
    }

    /// All parts up to `bound`, failing if any part is listed twice.
    pub fn expand(&self, bound: u64) -> Result<Vec<u64>> {
        let mut seen: BTreeSet<u64> = self.finite.range(..=bound).copied().collect();
        for &(first, step) in &self.families {
            let mut part = first;
            while part <= bound {
                if !seen.insert(part) {
                    return Err(Error::Precondition(format!("part {part} is listed twice in {self}")));
                }
                part += step;
            }
        }
        Ok(seen.into_iter().collect())
    }
}

impl fmt::Display for PartSet {
    /// `1, 5, 6, 8+3j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.finite.iter().map(u64::to_string).collect();
        items.extend(self.families.iter().map(|(a, d)| format!("{a}+{d}j")));
        write!(f, "{}", items.join(", "))
    }
}

/// Compositions of `0..=n_max` into parts from `p`:
/// `B_n = δ_{n,0} + Σ_i B_{n−m_i}`.
pub fn composition_counts(p: &PartSet, n_max: usize) -> Result<Vec<BigUint>> {
    let parts = p.expand(n_max as u64)?;
    let mut b: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut v = if n == 0 { BigUint::one() } else { BigUint::zero() };
        for &m in parts.iter().take_while(|&&m| m as usize <= n) {
            v += &b[n - m as usize];
        }
        b.push(v);
    }
    Ok(b)
}

pub fn count_compositions(p: &PartSet, n: usize) -> Result<BigUint> {
    Ok(composition_counts(p, n)?.pop().expect("n + 1 terms"))
}

/// The comb families with known part sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `(l,g,r;t)`-combs: `t − 1` teeth of width `l` and gaps `g`, then `r`.
    Per { l: u32, g: u32, r: u32, t: u32 },
    /// `(l,g,m,h,r;t)`-combs: teeth alternate `l, m`, gaps alternate `g, h`.
    Per2 { l: u32, g: u32, m: u32, h: u32, r: u32, t: u32 },
    /// `Q = {1, …, q} − {p}` with `2p > q`.
    Compwb { p: u32, q: u32 },
    /// Sets whose digraph has a single arc into the inner cycle.
    Min1arc(QSet),
}

fn hypothesis(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis(what.to_string()))
    }
}

/// `{1, q+1} ∪ {q+1+p : p an empty cell of the comb}`.
fn lemma_parts(q: &QSet) -> Result<PartSet> {
    let qq = u64::from(q.q());
    let gaps = q.complement().iter().map(|&p| qq + 1 + u64::from(p));
    PartSet::new([1, qq + 1].into_iter().chain(gaps), Vec::new())
}

fn periodic_comb(pattern_teeth: &[u32], pattern_gaps: &[u32], r: u32, t: u32) -> Result<QSet> {
    let teeth: Vec<u32> = (0..t - 1)
        .map(|i| pattern_teeth[i as usize % pattern_teeth.len()])
        .chain([r])
        .collect();
    let gaps: Vec<u32> = (0..t - 1)
        .map(|i| pattern_gaps[i as usize % pattern_gaps.len()])
        .collect();
    Ok(Comb::from_widths(&teeth, &gaps)?.to_qset())
}

/// The restricted-difference set of a family instance and the parts of the
/// compositions that count its restricted combinations.
pub fn family_parts(family: &Family) -> Result<(QSet, PartSet)> {
    match *family {
        Family::Per { l, g, r, t } => {
            hypothesis(t >= 1, "t >= 1")?;
            hypothesis(r >= 2, "q = (t-1)(l+g)+r-1 > 0 with r > 1")?;
            if t > 1 {
                hypothesis(g > 0 && l >= g, "l >= g > 0")?;
                hypothesis(r + 1 >= (t - 1) * (l + g), "r >= (t-1)(l+g)-1")?;
            }
            let q = periodic_comb(&[l], &[g], r, t)?;
            let parts = lemma_parts(&q)?;
            Ok((q, parts))
        }
        Family::Per2 { l, g, m, h, r, t } => {
            hypothesis(g >= 1 && m >= 1 && h >= 1 && t >= 1, "g, m, h, t positive")?;
            hypothesis(r >= 2 || t > 1, "q > 0")?;
            if t > 1 {
                let s = if t % 2 == 1 {
                    (t - 1) / 2 * (l + g + m + h)
                } else {
                    t / 2 * (l + g) + (t / 2 - 1) * (m + h)
                };
                hypothesis(r + 1 >= s, "r >= s-1 for the offset s of the last tooth")?;
            }
            let cond_i = l >= g + m + h;
            let cond_ii = l >= g && l >= h && m + 1 >= l + g;
            hypothesis(cond_i || cond_ii, "(i) l >= g+m+h or (ii) l >= g,h and m >= l-1+g")?;
            let q = periodic_comb(&[l, m], &[g, h], r, t)?;
            let parts = lemma_parts(&q)?;
            Ok((q, parts))
        }
        Family::Compwb { p, q } => {
            hypothesis(p >= 1 && p < q, "1 <= p < q")?;
            hypothesis(2 * p > q, "2p > q")?;
            let set = QSet::new((1..=q).filter(|&d| d != p))?;
            let parts = PartSet::new([1], vec![(u64::from(q) + 1, u64::from(p))])?;
            Ok((set, parts))
        }
        Family::Min1arc(ref set) => {
            let parts = min1arc_parts(set)?;
            Ok((set.clone(), parts))
        }
    }
}

/// Whether `θ | ⌊θ / 2^{p}⌋` is all ones below its leading one, with `θ` the
/// comb pattern including cell 0.
pub fn shifted_union_is_full(q: &QSet, p: u32) -> bool {
    let theta = (q.mask() << 1) | 1;
    let v = theta | (theta >> p);
    (v & (v + 1)) == 0
}

fn min1arc_parts(set: &QSet) -> Result<PartSet> {
    let p = set.complement();
    let a = p.len();
    let q = set.q();
    let r = set.comb().r();
    hypothesis(a >= 2, "a >= 2")?;
    hypothesis(p[a - 1] + r == q, "p_a = q - r")?;
    for &pi in &p[..a - 1] {
        hypothesis(
            shifted_union_is_full(set, pi),
            &format!("pattern OR pattern shifted by {pi} is all ones"),
        )?;
    }
    let case_a = q == 2 * r + 1;
    let case_b = q > 2 * r + 1 && 1 <= p[a - 2] && p[a - 2] <= r;
    hypothesis(case_a || case_b, "(a) q = 2r+1 or (b) q > 2r+1 and 1 <= p_(a-1) <= r")?;
    let (q, step) = (u64::from(q), u64::from(q - r));
    let finite = [1, q + 1]
        .into_iter()
        .chain(p[..a - 1].iter().map(|&pi| q + 1 + u64::from(pi)));
    PartSet::new(finite, vec![(q + 1 + step, step)])
}

/// Part set read off a comb whose metatiles hold at most two combs.
pub fn two_comb_parts(comb: &Comb) -> Result<PartSet> {
    hypothesis(comb.q() > 0, "q > 0")?;
    hypothesis(
        2 * comb.r() >= comb.q(),
        "finitely many metatiles (2r >= q)",
    )?;
    let g = build_digraph(comb)?;
    let bound = u64::from(comb.q() + 1) * (g.nodes().len() as u64 + 1);
    if let Some(m) = g.enumerate_metatiles(bound).iter().find(|m| m.combs > 2) {
        return Err(Error::Hypothesis(format!(
            "metatile {} holds {} combs",
            m.word, m.combs
        )));
    }
    lemma_parts(&comb.to_qset())
}

/// Compares `S_n` with the compositions of `n + q` into `parts`.
pub fn verify_composition_correspondence(q: &QSet, parts: &PartSet, n_max: usize) -> Result<Report> {
    let qq = q.q() as usize;
    let s = count_subsets_fast(q, n_max, false)?;
    let c = composition_counts(parts, n_max + qq)?;
    let mut report = Report::new(format!("S^{q}_n = compositions of n+{qq} into {parts}"));
    for n in 0..=n_max {
        report.compare(&[("n", n as i64)], s.totals[n].clone(), c[n + qq].clone());
    }
    Ok(report)
}
