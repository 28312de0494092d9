//! Walk-counting generating functions read off the digraph by linear algebra.
//!
//! With arc weights `x^increment · y^combs` collected in a matrix `A`, the
//! walks from the zero node back to itself have generating function
//! `[(I − A)^{-1}]_{00}`, i.e. the `(0,0)` minor of `I − A` over its
//! determinant. Both are computed by fraction-free elimination over
//! integer polynomials in `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::genfunc::{Poly, RationalGF};
use crate::json::big_int;

/// Integer polynomial in `x` and `y`, keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: BigInt, dx: u32, dy: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(dx, dy, c);
        p
    }

    fn add_term(&mut self, dx: u32, dy: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((dx, dy)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// The coefficient of `x^dx` as a polynomial in `y`.
    pub fn x_coeff(&self, dx: u32) -> Poly {
        let mut c = vec![BigInt::zero(); 1 + self.max_y_degree() as usize];
        for (&(ex, ey), v) in self.terms.range((dx, 0)..=(dx, u32::MAX)) {
            debug_assert_eq!(ex, dx);
            c[ey as usize] = v.clone();
        }
        Poly::new(c)
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(dx, _)| dx).max()
    }

    fn max_y_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, dy)| dy).max().unwrap_or(0)
    }

    /// Substitutes `y = 1`.
    pub fn at_y_one(&self) -> Poly {
        let mut c = vec![BigInt::zero(); 1 + self.x_degree().unwrap_or(0) as usize];
        for (&(dx, _), v) in &self.terms {
            c[dx as usize] += v;
        }
        Poly::new(c)
    }

    /// Leading term in lexicographic order, `x` before `y`.
    fn leading(&self) -> Option<((u32, u32), &BigInt)> {
        self.terms.iter().next_back().map(|(&k, v)| (k, v))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let ((lx, ly), lc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some(((rx, ry), rc)) = rem.leading() {
            if rx < lx || ry < ly {
                return None;
            }
            if !(rc % lc).is_zero() {
                return None;
            }
            let c = rc / lc;
            let t = BiPoly::monomial(c, rx - lx, ry - ly);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(dx, dy), c)| json!([dx, dy, big_int(c)]))
                .collect(),
        )
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                out.add_term(ax + bx, ay + by, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    /// Ascending powers, as in `1-x-x^2y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(dx, dy), c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let constant = dx == 0 && dy == 0;
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (var, d) in [("x", dx), ("y", dy)] {
                match d {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    _ => write!(f, "{var}^{d}")?,
                }
            }
        }
        Ok(())
    }
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn determinant(mut m: Vec<Vec<BiPoly>>) -> BiPoly {
    let n = m.len();
    if n == 0 {
        return BiPoly::one();
    }
    let mut sign_flip = false;
    let mut prev = BiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return BiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}

/// A ratio of bivariate polynomials whose denominator has constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiRational {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl BiRational {
    /// Coefficients of `x^0..=x^n_max`, each a polynomial in `y`.
    pub fn series(&self, n_max: usize) -> Vec<Poly> {
        let den: Vec<Poly> = (0..=n_max as u32).map(|i| self.den.x_coeff(i)).collect();
        let mut out: Vec<Poly> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut c = self.num.x_coeff(n as u32);
            for i in 1..=n {
                if !den[i].is_zero() {
                    c = &c - &(&den[i] * &out[n - i]);
                }
            }
            out.push(c);
        }
        out
    }

    /// Series coefficient of `x^n y^k`, for every `n ≤ n_max` and `k ≤ n`.
    pub fn triangle(&self, n_max: usize) -> Vec<Vec<BigInt>> {
        self.series(n_max)
            .iter()
            .enumerate()
            .map(|(n, p)| (0..=n).map(|k| p.coeff(k)).collect())
            .collect()
    }

    /// The univariate function obtained at `y = 1`.
    pub fn at_y_one(&self) -> Result<RationalGF> {
        RationalGF::new(self.num.at_y_one(), self.den.at_y_one())
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

impl fmt::Display for BiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Generating function of walks `0 → 0`, with `x` marking length and `y`
/// marking combs.
pub fn transfer_matrix_gf(g: &Digraph) -> Result<BiRational> {
    let n = g.nodes().len();
    let mut m = vec![vec![BiPoly::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BiPoly::one();
    }
    for arc in g.arcs() {
        let w = BiPoly::monomial(-BigInt::one(), arc.increment, arc.combs);
        m[arc.source][arc.target] = &m[arc.source][arc.target] + &w;
    }
    let minor: Vec<Vec<BiPoly>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    let den = determinant(m);
    let num = determinant(minor);
    if den.coeff(0, 0) != BigInt::one() || den.x_coeff(0) != Poly::one() {
        return Err(Error::Precondition(format!(
            "transfer determinant {den} does not start with 1"
        )));
    }
    Ok(BiRational { num, den })
}
