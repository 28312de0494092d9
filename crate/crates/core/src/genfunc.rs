//! Exact univariate polynomials and rational generating functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::big_int;
use crate::recurrence::Recurrence;

/// Polynomial in `x` with arbitrary-precision integer coefficients; index is
/// the power of `x`. Trailing zeros are always trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from `(power, coefficient)` terms; like powers add.
    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (p, c) in terms {
            if coeffs.len() <= p {
                coeffs.resize(p + 1, BigInt::zero());
            }
            coeffs[p] += c;
        }
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Sum of coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `x^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Poly> {
        if let Some(p) = (0..k.min(self.coeffs.len())).find(|&p| !self.coeffs[p].is_zero()) {
            return Err(Error::Precondition(format!(
                "coefficient of x^{p} is {} so the polynomial is not divisible by x^{k}",
                self.coeffs[p]
            )));
        }
        Ok(Poly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(big_int).collect())
    }
}

fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

impl Poly {
    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| int_gcd(&g, c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Poly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `self / d` when the division is exact over the integers.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); r.len().saturating_sub(dd)];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            if !(&r[i] % d.lead()).is_zero() {
                return None;
            }
            let c = &r[i] / d.lead();
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            quot[i - dd] = c;
        }
        r.iter().all(Zero::is_zero).then(|| Poly::new(quot))
    }

    /// `lc(d)^{deg a − deg d + 1} · a mod d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("nonzero divisor");
        let mut r = self.clone();
        while let Some(dr) = r.degree().filter(|&dr| dr >= dd) {
            let lr = r.lead().clone();
            r = &r.scale(d.lead()) - &d.shift_up(dr - dd).scale(&lr);
        }
        r
    }
}

/// Greatest common divisor up to a unit, as a primitive polynomial.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = std::mem::replace(&mut b, r);
    }
    a
}

impl fmt::Display for Poly {
    /// Ascending powers, e.g. `1+x+x^2+2x^4-x^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let unit = mag.is_one();
            match p {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if p == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A ratio of integer polynomials whose denominator has constant term `+1`.
///
/// Fractions are kept as produced, without cancelling common factors;
/// compare them with [`rational_equal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    num: Poly,
    den: Poly,
}

impl RationalGF {
    /// Normalizes the sign so the denominator's constant term is `+1`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let c0 = den.coeff(0);
        if c0.is_one() {
            Ok(RationalGF { num, den })
        } else if (-&c0).is_one() {
            Ok(RationalGF {
                num: -&num,
                den: -&den,
            })
        } else {
            Err(Error::Precondition(format!(
                "denominator constant term must be a unit, got {c0}"
            )))
        }
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(Poly::from_i64s(num), Poly::from_i64s(den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// First `n_max + 1` Taylor coefficients by exact long division.
    pub fn series(&self, n_max: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        let den = self.den.coeffs();
        for n in 0..=n_max {
            let mut v = self.num.coeff(n);
            for (i, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() {
                    v -= d * &out[n - i];
                }
            }
            out.push(v);
        }
        out
    }

    /// Cancels the common factor of numerator and denominator.
    pub fn reduced(&self) -> RationalGF {
        if self.num.is_zero() {
            return RationalGF { num: Poly::zero(), den: Poly::one() };
        }
        let g = poly_gcd(&self.num, &self.den);
        if g.degree() == Some(0) {
            return self.clone();
        }
        let num = self.num.div_exact(&g).expect("gcd divides the numerator");
        let den = self.den.div_exact(&g).expect("gcd divides the denominator");
        RationalGF::new(num, den).expect("a factor of a unit-constant polynomial has unit constant term")
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Exact equality of two fractions by cross-multiplication.
pub fn rational_equal(f: &RationalGF, g: &RationalGF) -> bool {
    &f.num * &g.den == &g.num * &f.den
}

/// First `n_max + 1` coefficients of `f`.
pub fn series_coefficients(f: &RationalGF, n_max: usize) -> Vec<BigInt> {
    f.series(n_max)
}

/// `Σ e x^a / (1 − Σ c x^d)` for a self-starting recursion.
pub fn recurrence_to_gf(r: &Recurrence) -> RationalGF {
    let num = Poly::from_terms(r.sources.iter().map(|&(a, e)| (a as usize, e)));
    let den = Poly::from_terms(
        std::iter::once((0, 1)).chain(r.shifts.iter().map(|&(d, c)| (d as usize, -c))),
    );
    RationalGF::new(num, den).expect("denominator has constant term 1")
}

/// Turns the generating function of `B_n` into that of `S_n = B_{n+q}`:
/// `x^{-q} (G_B(x) - (1 - x^q)/(1 - x))`.
///
/// Requires the first `q + 1` coefficients of `gb` to equal 1.
pub fn s_gf_from_b_gf(gb: &RationalGF, q: usize) -> Result<RationalGF> {
    let head = gb.series(q);
    if let Some((n, c)) = head.iter().enumerate().find(|(_, c)| !c.is_one()) {
        return Err(Error::Precondition(format!(
            "coefficient {n} of the tiling series is {c}, expected 1 for all n <= {q}"
        )));
    }
    let ones = Poly::new(vec![BigInt::one(); q]);
    let shifted = &gb.num - &(&gb.den * &ones);
    RationalGF::new(shifted.shift_down(q)?, gb.den.clone())
}

/// Convenience for small coefficient checks in tests and reports.
pub fn series_i64(f: &RationalGF, n_max: usize) -> Vec<i64> {
    f.series(n_max)
        .iter()
        .map(|c| c.to_i64().expect("coefficient fits in i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recurrences_to_fractions() {
        use crate::digraph::{build_digraph, classify_structure};
        use crate::qset::QSet;
        use crate::recurrence::recurrence_for;

        let fib = Recurrence {
            shifts: vec![(1, 1), (2, 1)],
            sources: vec![(0, 1)],
        };
        assert_eq!(recurrence_to_gf(&fib).to_string(), "(1)/(1-x-x^2)");

        let expected = [
            ("1,4", "(1-x^3-x^5)/(1-x-x^3+x^4-2x^5+x^6-x^7)"),
            (
                "1,5",
                "(1-x^2-x^3-x^4+x^5+x^9)/(1-x-x^2+2x^5-2x^6+x^9-x^10+x^11)",
            ),
        ];
        for (q, text) in expected {
            let g = build_digraph(&QSet::parse(q).unwrap().comb()).unwrap();
            let (r, _) = recurrence_for(&classify_structure(&g)).unwrap();
            let f = recurrence_to_gf(&r);
            assert_eq!(f.to_string(), text);
            assert_eq!(f.series(40), r.evaluate(40));
        }

        let reduced = [
            ("1,4", "(1+x+x^2+x^3+2x^4+x^6)/(1-x-x^3+x^4-2x^5+x^6-x^7)"),
            (
                "1,5",
                "(1+2x+2x^2+2x^3+2x^4+4x^5+3x^6+2x^7+x^8+x^9)/(1-x^2-x^3-x^4+x^5-x^6-x^7-x^8-x^10)",
            ),
        ];
        for (q, text) in reduced {
            let set = QSet::parse(q).unwrap();
            let g = build_digraph(&set.comb()).unwrap();
            let (r, _) = recurrence_for(&classify_structure(&g)).unwrap();
            let gs = s_gf_from_b_gf(&recurrence_to_gf(&r), set.q() as usize).unwrap();
            assert_eq!(gs.reduced().to_string(), text);
        }
    }

    fn g14_b() -> RationalGF {
        RationalGF::from_i64s(&[1, 0, 0, -1, 0, -1], &[1, -1, 0, -1, 1, -2, 1, -1]).unwrap()
    }

    #[test]
    fn display_ascending() {
        let p = Poly::from_i64s(&[1, 1, 1, 1, 2, 0, 1]);
        assert_eq!(p.to_string(), "1+x+x^2+x^3+2x^4+x^6");
        let p = Poly::from_i64s(&[1, -1, 0, -1, 1, -2, 1, -1]);
        assert_eq!(p.to_string(), "1-x-x^3+x^4-2x^5+x^6-x^7");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_i64s(&[-3]).to_string(), "-3");
    }

    #[test]
    fn series_examples() {
        let f = RationalGF::from_i64s(&[1], &[1, -2]).unwrap();
        assert_eq!(series_i64(&f, 4), vec![1, 2, 4, 8, 16]);
        let f = RationalGF::from_i64s(&[1, 1], &[1, -1, -1]).unwrap();
        assert_eq!(series_i64(&f, 4), vec![1, 2, 3, 5, 8]);
        let f = RationalGF::from_i64s(&[1], &[1]).unwrap();
        assert_eq!(series_i64(&f, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn sign_normalization() {
        let f = RationalGF::from_i64s(&[1], &[-1, 2]).unwrap();
        assert_eq!(f.den().coeff(0), BigInt::one());
        assert_eq!(series_i64(&f, 3), vec![-1, -2, -4, -8]);
        assert!(RationalGF::from_i64s(&[1], &[2, 1]).is_err());
        assert!(RationalGF::from_i64s(&[1], &[0, 1]).is_err());
    }

    #[test]
    fn equality_examples() {
        let a = RationalGF::from_i64s(&[1, 1], &[1, 0, -1]).unwrap();
        let b = RationalGF::from_i64s(&[1], &[1, -1]).unwrap();
        assert!(rational_equal(&a, &b));
        let g14 = RationalGF::from_i64s(&[1, 1, 1, 1, 2, 0, 1], &[1, -1, 0, -1, 1, -2, 1, -1])
            .unwrap();
        let g15 = RationalGF::from_i64s(
            &[1, 2, 2, 2, 2, 4, 3, 2, 1, 1],
            &[1, 0, -1, -1, -1, 1, -1, -1, -1, 0, -1],
        )
        .unwrap();
        assert!(!rational_equal(&g14, &g15));
    }

    #[test]
    fn b_to_s_examples() {
        let s = s_gf_from_b_gf(&g14_b(), 4).unwrap();
        assert_eq!(s.num().to_string(), "1+x+x^2+x^3+2x^4+x^6");
        assert_eq!(s.den().to_string(), "1-x-x^3+x^4-2x^5+x^6-x^7");

        let fib = RationalGF::from_i64s(&[1], &[1, -1, -1]).unwrap();
        let s = s_gf_from_b_gf(&fib, 1).unwrap();
        assert!(rational_equal(
            &s,
            &RationalGF::from_i64s(&[1, 1], &[1, -1, -1]).unwrap()
        ));
        // F_{n+2}
        assert_eq!(series_i64(&s, 6), vec![1, 2, 3, 5, 8, 13, 21]);

        let bad = RationalGF::from_i64s(&[1], &[1, -2]).unwrap();
        assert!(s_gf_from_b_gf(&bad, 2).is_err());
    }

    #[test]
    fn shift_preserves_tail() {
        let gb = g14_b();
        let s = s_gf_from_b_gf(&gb, 4).unwrap();
        let b = gb.series(44);
        let sv = s.series(40);
        for n in 0..=40 {
            assert_eq!(sv[n], b[n + 4]);
        }
    }

    #[test]
    fn reduction() {
        let a = Poly::from_i64s(&[1, -1]);
        let b = Poly::from_i64s(&[2, 0, 1]);
        let f = RationalGF::new(&a * &b, &a * &Poly::from_i64s(&[1, 3, -2])).unwrap();
        assert_eq!(f.reduced().to_string(), "(2+x^2)/(1+3x-2x^2)");
        assert_eq!(poly_gcd(&Poly::from_i64s(&[4, 8]), &Poly::from_i64s(&[6, 12])).to_string(), "1+2x");
        assert_eq!(Poly::from_i64s(&[1, 2]).div_exact(&Poly::from_i64s(&[0, 2])), None);
    }

    proptest! {
        #[test]
        fn reduced_is_equal(a in proptest::collection::vec(-3i64..4, 1..4),
                            b in proptest::collection::vec(-3i64..4, 0..4),
                            c in proptest::collection::vec(-3i64..4, 0..4)) {
            let mut common = vec![1i64];
            common.extend(a);
            let mut den = vec![1i64];
            den.extend(c);
            let (common, num, den) = (Poly::from_i64s(&common), Poly::from_i64s(&b), Poly::from_i64s(&den));
            let f = RationalGF::new(&num * &common, &den * &common).unwrap();
            let r = f.reduced();
            prop_assert!(rational_equal(&f, &r));
            prop_assert!(r.den().degree() <= den.degree());
            prop_assert!(poly_gcd(r.num(), r.den()).degree() <= Some(0) || r.num().is_zero());
        }

        #[test]
        fn ring_laws(a in proptest::collection::vec(-5i64..5, 0..6),
                     b in proptest::collection::vec(-5i64..5, 0..6),
                     c in proptest::collection::vec(-5i64..5, 0..6)) {
            let (a, b, c) = (Poly::from_i64s(&a), Poly::from_i64s(&b), Poly::from_i64s(&c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn series_times_den_is_num(num in proptest::collection::vec(-4i64..4, 0..5),
                                   tail in proptest::collection::vec(-3i64..3, 0..5)) {
            let mut den = vec![1i64];
            den.extend(tail);
            let f = RationalGF::from_i64s(&num, &den).unwrap();
            let s = Poly::new(f.series(12));
            let prod = &s * f.den();
            for i in 0..=12 {
                prop_assert_eq!(prod.coeff(i), f.num().coeff(i));
            }
        }
    }
}
