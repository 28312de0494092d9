//! Exact binomial coefficients and the three product identities used in the
//! four-inner-cycle recursion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, taken as zero when `k < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Which product identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// Two-factor identity in `(j1, j2, j4)`.
    Db,
    /// Its relabelled variant in `(j1, j2, j3)`.
    Dbv,
    /// Three-factor identity in `(j1, j2, j3, j4)`.
    Bi,
}

impl Identity {
    pub fn arity(self) -> usize {
        match self {
            Identity::Db | Identity::Dbv => 3,
            Identity::Bi => 4,
        }
    }
}

/// Both sides of an identity, evaluated exactly.
pub fn identity_sides(which: Identity, j: &[i64]) -> (BigInt, BigInt) {
    assert_eq!(j.len(), which.arity(), "wrong number of arguments");
    assert!(j.iter().all(|&x| x >= 1), "arguments must be positive");
    let b = binomial;
    match which {
        Identity::Db => {
            let (j1, j2, j4) = (j[0], j[1], j[2]);
            let lhs = b(j1 + j2, j1) * b(j2 + j4 - 1, j4);
            let rhs = b(j1 + j2 - 1, j1 - 1) * (b(j2 + j4 - 1, j4) - b(j2 + j4 - 2, j4 - 1))
                + b(j1 + j2 - 1, j1) * b(j2 + j4 - 2, j4)
                + b(j1 + j2, j1) * b(j2 + j4 - 2, j4 - 1);
            (lhs, rhs)
        }
        Identity::Dbv => {
            let (j1, j2, j3) = (j[0], j[1], j[2]);
            let lhs = b(j1 + j2, j1) * b(j1 + j3 - 1, j3);
            let rhs = b(j1 + j2 - 1, j1) * (b(j1 + j3 - 1, j3) - b(j1 + j3 - 2, j3 - 1))
                + b(j1 + j2 - 1, j1 - 1) * b(j1 + j3 - 2, j3)
                + b(j1 + j2, j1) * b(j1 + j3 - 2, j3 - 1);
            (lhs, rhs)
        }
        Identity::Bi => {
            let (j1, j2, j3, j4) = (j[0], j[1], j[2], j[3]);
            let a0 = b(j1 + j2, j1);
            let a1 = b(j1 + j2 - 1, j1 - 1);
            let a2 = b(j1 + j2 - 1, j1);
            let c0 = b(j1 + j3 - 1, j3);
            let c1 = b(j1 + j3 - 2, j3);
            let c2 = b(j1 + j3 - 2, j3 - 1);
            let d0 = b(j2 + j4 - 1, j4);
            let d1 = b(j2 + j4 - 2, j4);
            let d2 = b(j2 + j4 - 2, j4 - 1);
            let lhs = &a0 * &c0 * &d0;
            let rhs = &a1 * &c1 * &d0 + &a2 * &c0 * &d1 + &a0 * &c2 * &d0 + &a0 * &c0 * &d2
                - &a1 * &c1 * &d2
                - &a2 * &c2 * &d1
                - &a0 * &c2 * &d2;
            (lhs, rhs)
        }
    }
}

/// True iff the identity holds at the given arguments.
pub fn check_binomial_identity(which: Identity, j: &[i64]) -> bool {
    let (lhs, rhs) = identity_sides(which, j);
    lhs == rhs
}
