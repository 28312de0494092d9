//! Self-starting linear recursions for tiling counts, instantiated from the
//! cycle data of a metatile digraph.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::digraph::{build_digraph, classify_structure, Cycle, CycleStructure, StructureClass};
use crate::error::{Error, Result};
use crate::qset::QSet;
use crate::report::Report;
use crate::tiling::count_tilings;
use crate::transfer::transfer_matrix_gf;

/// `B_n = Σ e·[n = a] + Σ c·B_{n−d}` with `B_{n<0} = 0`.
///
/// Terms with the same offset are merged and zero coefficients dropped, so
/// both lists are sorted by offset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Recurrence {
    /// `(d, c)` with `d ≥ 1`.
    pub shifts: Vec<(u64, i64)>,
    /// `(a, e)`.
    pub sources: Vec<(u64, i64)>,
}

/// The bivariate analogue over `(n, k)`, with `B_{n,k} = 0` whenever
/// `n < 0`, `k < 0` or `n < k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiRecurrence {
    /// `(dn, dk, c)`.
    pub shifts: Vec<(u64, u64, i64)>,
    /// `(a, b, e)`.
    pub sources: Vec<(u64, u64, i64)>,
}

/// Accumulates terms of both recursions at once; a term is given by the
/// total length and comb count it shifts by.
#[derive(Default)]
struct Builder {
    shifts: BTreeMap<(u64, u64), i64>,
    sources: BTreeMap<(u64, u64), i64>,
}

impl Builder {
    fn shift(&mut self, parts: &[&Cycle], c: i64) {
        *self.shifts.entry(total(parts)).or_default() += c;
    }

    fn source(&mut self, parts: &[&Cycle], e: i64) {
        *self.sources.entry(total(parts)).or_default() += e;
    }

    fn finish(self) -> (Recurrence, BiRecurrence) {
        let uni = |m: &BTreeMap<(u64, u64), i64>| -> Vec<(u64, i64)> {
            let mut merged: BTreeMap<u64, i64> = BTreeMap::new();
            for (&(n, _), &c) in m {
                *merged.entry(n).or_default() += c;
            }
            merged.into_iter().filter(|&(_, c)| c != 0).collect()
        };
        let bi = |m: &BTreeMap<(u64, u64), i64>| -> Vec<(u64, u64, i64)> {
            m.iter()
                .filter(|&(_, &c)| c != 0)
                .map(|(&(n, k), &c)| (n, k, c))
                .collect()
        };
        (
            Recurrence {
                shifts: uni(&self.shifts),
                sources: uni(&self.sources),
            },
            BiRecurrence {
                shifts: bi(&self.shifts),
                sources: bi(&self.sources),
            },
        )
    }
}

fn total(parts: &[&Cycle]) -> (u64, u64) {
    parts
        .iter()
        .fold((0, 0), |(n, k), c| (n + c.length, k + c.combs))
}

fn expect_class(cs: &CycleStructure, class: StructureClass) -> Result<()> {
    if cs.class == class {
        Ok(())
    } else {
        Err(Error::WrongClass {
            expected: match class {
                StructureClass::CommonNode => "common-node",
                _ => "four-inner-two-errant",
            },
            actual: cs.class.to_string(),
        })
    }
}

/// Recursions for a digraph with a common node.
pub fn recurrence_common_node(cs: &CycleStructure) -> Result<(Recurrence, BiRecurrence)> {
    expect_class(cs, StructureClass::CommonNode)?;
    let mut b = Builder::default();
    b.source(&[], 1);
    for l in &cs.inner {
        b.shift(&[l], 1);
        b.source(&[l], -1);
    }
    for o in &cs.outer {
        b.shift(&[o], 1);
        for l in &cs.inner {
            b.shift(&[o, l], -1);
        }
    }
    for c in &cs.circuits {
        b.shift(&[c], 1);
    }
    Ok(b.finish())
}

/// Recursions for a digraph with four inner cycles of which two are errant
/// loops.
///
/// `cs.inner` must hold the two cycles through the pseudo-common node
/// followed by the loops attached to them, and `cs.circuits[i]` the circuit
/// that shares a stretch with `cs.inner[i]`.
pub fn recurrence_four_inner_two_errant(cs: &CycleStructure) -> Result<(Recurrence, BiRecurrence)> {
    expect_class(cs, StructureClass::FourInnerTwoErrant)?;
    if cs.inner.len() != 4 || cs.circuits.len() != 2 || cs.errant.len() != 2 {
        return Err(Error::Hypothesis(format!(
            "expected 4 inner cycles, 2 circuits and 2 errant loops, found {}, {} and {}",
            cs.inner.len(),
            cs.circuits.len(),
            cs.errant.len()
        )));
    }
    let l: Vec<&Cycle> = cs.inner.iter().collect();
    let pairs = [[l[0], l[3]], [l[1], l[2]], [l[2], l[3]]];
    let mut b = Builder::default();
    b.source(&[], 1);
    for r in &l {
        b.shift(&[r], 1);
        b.source(&[r], -1);
    }
    for p in &pairs {
        b.source(p, 1);
        b.shift(p, -1);
    }
    for o in &cs.outer {
        b.shift(&[o], 1);
        for p in &pairs {
            b.shift(&[o, p[0], p[1]], 1);
        }
        for r in &l {
            b.shift(&[o, r], -1);
        }
    }
    for (i, c) in cs.circuits.iter().enumerate() {
        b.shift(&[c], 1);
        b.shift(&[c, l[3 - i]], -1);
    }
    Ok(b.finish())
}

/// Dispatches on the structure class.
pub fn recurrence_for(cs: &CycleStructure) -> Result<(Recurrence, BiRecurrence)> {
    match cs.class {
        StructureClass::CommonNode => recurrence_common_node(cs),
        StructureClass::FourInnerTwoErrant => recurrence_four_inner_two_errant(cs),
        _ => Err(Error::WrongClass {
            expected: "common-node or four-inner-two-errant",
            actual: cs.class.to_string(),
        }),
    }
}

/// Checks the recursion for `Q` against the transfer-matrix series and the
/// tiling oracle, totals and refined counts, for `n ≤ n_max`.
pub fn verify_recurrence(q: &QSet, n_max: usize) -> Result<Report> {
    let g = build_digraph(&q.comb())?;
    let cs = classify_structure(&g);
    let (uni, bi) = recurrence_for(&cs)?;
    let tm = transfer_matrix_gf(&g)?;
    let tiles = count_tilings(&q.comb(), n_max)?;
    let (u, b, t) = (uni.evaluate(n_max), bi.evaluate(n_max), tm.triangle(n_max));
    let t_uni = tm.at_y_one()?.series(n_max);
    let mut report = Report::new(format!("{} recursion for {q}", cs.class));
    for n in 0..=n_max {
        let oracle = BigInt::from(tiles.b[n].clone());
        report.compare(&[("n", n as i64)], oracle.clone(), u[n].clone());
        report.compare(&[("n", n as i64)], oracle, t_uni[n].clone());
        for k in 0..=n {
            let at = [("n", n as i64), ("k", k as i64)];
            let oracle = BigInt::from(tiles.refined(n, k));
            report.compare(&at, oracle.clone(), b[n].get(k).cloned().unwrap_or_default());
            report.compare(&at, oracle, t[n][k].clone());
        }
    }
    Ok(report)
}

impl Recurrence {
    /// `B_0..=B_{n_max}` by forward evaluation.
    pub fn evaluate(&self, n_max: usize) -> Vec<BigInt> {
        let mut b: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max as u64 {
            let mut v = BigInt::zero();
            for &(a, e) in &self.sources {
                if a == n {
                    v += e;
                }
            }
            for &(d, c) in &self.shifts {
                if d <= n {
                    v += &b[(n - d) as usize] * c;
                }
            }
            b.push(v);
        }
        b
    }

    pub fn to_json(&self) -> Value {
        json!({ "sources": self.sources, "shifts": self.shifts })
    }
}

impl BiRecurrence {
    /// `B_{n,k}` for `n ≤ n_max` and `k ≤ n`.
    pub fn evaluate(&self, n_max: usize) -> Vec<Vec<BigInt>> {
        let mut b: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max as u64 {
            let mut row = Vec::with_capacity(n as usize + 1);
            for k in 0..=n {
                let mut v = BigInt::zero();
                for &(a, bk, e) in &self.sources {
                    if a == n && bk == k {
                        v += e;
                    }
                }
                for &(dn, dk, c) in &self.shifts {
                    if dn <= n && dk <= k && k - dk <= n - dn {
                        v += &b[(n - dn) as usize][(k - dk) as usize] * c;
                    }
                }
                row.push(v);
            }
            b.push(row);
        }
        b
    }

    /// The univariate recursion obtained by ignoring comb counts.
    pub fn to_univariate(&self) -> Recurrence {
        let merge = |terms: &[(u64, u64, i64)]| {
            let mut m: BTreeMap<u64, i64> = BTreeMap::new();
            for &(n, _, c) in terms {
                *m.entry(n).or_default() += c;
            }
            m.into_iter().filter(|&(_, c)| c != 0).collect()
        };
        Recurrence {
            shifts: merge(&self.shifts),
            sources: merge(&self.sources),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "sources": self.sources, "shifts": self.shifts })
    }
}

/// Writes `c·sym` with its sign, omitting a unit coefficient.
fn term(f: &mut fmt::Formatter<'_>, first: bool, c: i64, sym: &str) -> fmt::Result {
    let sign = if c < 0 { " - " } else if first { "" } else { " + " };
    let sign = if first && c < 0 { "-" } else { sign };
    match c.unsigned_abs() {
        1 => write!(f, "{sign}{sym}"),
        m => write!(f, "{sign}{m}{sym}"),
    }
}

impl fmt::Display for Recurrence {
    /// `B_n = δ_{n,0} - δ_{n,3} + B_{n-1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_n = ")?;
        let mut first = true;
        for &(a, e) in &self.sources {
            term(f, first, e, &format!("δ_{{n,{a}}}"))?;
            first = false;
        }
        for &(d, c) in &self.shifts {
            term(f, first, c, &format!("B_{{n-{d}}}"))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for BiRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{{n,k}} = ")?;
        let mut first = true;
        for &(a, b, e) in &self.sources {
            term(f, first, e, &format!("δ_{{n,{a}}}δ_{{k,{b}}}"))?;
            first = false;
        }
        for &(dn, dk, c) in &self.shifts {
            let k = if dk == 0 { "k".to_string() } else { format!("k-{dk}") };
            term(f, first, c, &format!("B_{{n-{dn},{k}}}"))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
