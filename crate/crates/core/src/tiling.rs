//! Exhaustive restricted-overlap tilings of an `n`-board by squares and a comb.
//!
//! A square, and cell 0 of every comb, must cover an otherwise uncovered cell
//! and is never overlapped afterwards. Comb cells `1..=q` may sit on top of
//! such cells of other combs. This module stays a plain backtracking
//! enumerator; it is the independent reference for everything built on the
//! metatile digraph.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::count::count_subsets_oracle;
use crate::error::{capacity, Result};
use crate::qset::{Comb, QSet};
use crate::report::Report;

/// Largest board length accepted by [`count_tilings`].
pub const TILING_N_CAP: usize = 40;

/// `B_0..=B_{n_max}` and the refinement `B_{n,k}` by number of combs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCountTable {
    pub n_max: usize,
    pub b: Vec<BigUint>,
    /// `b_k[n][k]` for `0 ≤ k ≤ n`.
    pub b_k: Vec<Vec<BigUint>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Uncovered,
    /// A square or a comb's cell 0.
    Protected,
    /// Covered by this many non-leftmost comb cells.
    Shared(u8),
}

struct Board<'a> {
    cells: Vec<Cell>,
    teeth: &'a [usize],
}

impl Board<'_> {
    /// Counts completions by number of combs placed, with the leftmost
    /// uncovered cell at or after `from`.
    fn count(&mut self, from: usize, combs: usize, out: &mut [u64]) {
        let Some(p) = (from..self.cells.len()).find(|&i| self.cells[i] == Cell::Uncovered) else {
            out[combs] += 1;
            return;
        };
        self.cells[p] = Cell::Protected;
        self.count(p + 1, combs, out);
        if self.comb_fits(p) {
            self.place_comb(p);
            self.count(p + 1, combs + 1, out);
            self.lift_comb(p);
        }
        self.cells[p] = Cell::Uncovered;
    }

    fn comb_fits(&self, p: usize) -> bool {
        let last = *self.teeth.last().expect("comb has a tooth");
        p + last < self.cells.len()
            && self
                .teeth
                .iter()
                .skip(1)
                .all(|&j| self.cells[p + j] != Cell::Protected)
    }

    fn place_comb(&mut self, p: usize) {
        for &j in self.teeth.iter().skip(1) {
            let c = &mut self.cells[p + j];
            *c = match *c {
                Cell::Uncovered => Cell::Shared(1),
                Cell::Shared(m) => Cell::Shared(m + 1),
                Cell::Protected => unreachable!("checked by comb_fits"),
            };
        }
    }

    fn lift_comb(&mut self, p: usize) {
        for &j in self.teeth.iter().skip(1) {
            let c = &mut self.cells[p + j];
            *c = match *c {
                Cell::Shared(1) => Cell::Uncovered,
                Cell::Shared(m) => Cell::Shared(m - 1),
                _ => unreachable!("comb cell was placed"),
            };
        }
    }
}

/// Tiling counts of a single `n`-board, indexed by number of combs.
fn count_board(teeth: &[usize], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    let mut board = Board {
        cells: vec![Cell::Uncovered; n],
        teeth,
    };
    board.count(0, 0, &mut out);
    out
}

/// Counts restricted-overlap tilings of every board length up to `n_max`.
pub fn count_tilings(comb: &Comb, n_max: usize) -> Result<TilingCountTable> {
    if n_max > TILING_N_CAP {
        return Err(capacity("n_max", n_max as u64, TILING_N_CAP as u64));
    }
    let teeth: Vec<usize> = comb
        .pattern()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(j, _)| j)
        .collect();
    let rows: Vec<Vec<u64>> = (0..=n_max)
        .into_par_iter()
        .map(|n| count_board(&teeth, n))
        .collect();
    let b_k: Vec<Vec<BigUint>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigUint::from(v)).collect())
        .collect();
    let b = b_k.iter().map(|r| r.iter().sum()).collect();
    Ok(TilingCountTable { n_max, b, b_k })
}

impl TilingCountTable {
    pub fn refined(&self, n: usize, k: usize) -> BigUint {
        self.b_k
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }
}

/// Checks `S_n = B_{n+q}` and `S_{n,k} = B_{n+q,k}` for `0 ≤ n ≤ n_max`,
/// both sides by brute force.
pub fn verify_s_equals_b(q: &QSet, n_max: usize) -> Result<Report> {
    let qq = q.q() as usize;
    let subsets = count_subsets_oracle(q, n_max, true)?;
    let tilings = count_tilings(&q.comb(), n_max + qq)?;
    let mut report = Report::new(format!("S = B for Q = {q}"));
    for n in 0..=n_max {
        let at = [("n", n as i64)];
        report.compare(&at, subsets.totals[n].clone(), tilings.b[n + qq].clone());
        for k in 0..=n + qq {
            let at = [("n", n as i64), ("k", k as i64)];
            report.compare(&at, subsets.refined(n, k), tilings.refined(n + qq, k));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QSet {
        QSet::parse(s).unwrap()
    }

    fn totals(t: &TilingCountTable) -> Vec<u64> {
        t.b.iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn dominoes_give_fibonacci() {
        // Squares and dominoes: 1, 1, 2, 3, 5.
        let t = count_tilings(&q("1").comb(), 4).unwrap();
        assert_eq!(totals(&t), vec![1, 1, 2, 3, 5]);
        assert_eq!(t.refined(4, 2), BigUint::from(1u32));
        assert_eq!(t.refined(4, 1), BigUint::from(3u32));
    }

    #[test]
    fn squares_only_up_to_q() {
        for s in ["1", "2", "1,4", "2,3,6", "1,5", "3"] {
            let qs = q(s);
            let t = count_tilings(&qs.comb(), qs.q() as usize).unwrap();
            assert!(t.b.iter().all(|v| *v == BigUint::from(1u32)), "{s}");
        }
    }

    #[test]
    fn degenerate_comb_is_a_second_square() {
        let t = count_tilings(&QSet::empty().comb(), 8).unwrap();
        assert_eq!(totals(&t), (0..=8).map(|n| 1u64 << n).collect::<Vec<_>>());
        assert!(verify_s_equals_b(&QSet::empty(), 8).unwrap().passed());
    }

    #[test]
    fn overlap_of_two_combs() {
        // A comb at 3 puts its cell 1 on cell 4, the last tooth of a comb at 0.
        let comb = q("1,4").comb();
        let t = count_tilings(&comb, 9).unwrap();
        // B_{n+4} = S_n for Q = {1,4}: 1, 2, 3, 5, 8, 11
        assert_eq!(&totals(&t)[4..], &[1, 2, 3, 5, 8, 11]);
    }

    #[test]
    fn theorem_equalities() {
        for s in ["1,4", "2,4"] {
            let r = verify_s_equals_b(&q(s), 12).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn cap() {
        assert!(count_tilings(&q("1").comb(), TILING_N_CAP + 1).is_err());
    }
}
