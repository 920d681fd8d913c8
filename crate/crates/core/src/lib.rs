//! Exact computational algebra over the integers: unbounded-integer lattices,
//! weighted free Lie rings with Lyndon bases, truncated free associative
//! rings, free group words with Magnus expansion, a nilpotent-quotient
//! algorithm for finitely presented Lie rings, and dimension-quotient
//! certificates.
//!
//! Everything is `no_std` + `alloc`; all arithmetic is exact (`BigInt`), all
//! values are immutable after construction and all operations are pure, so
//! concurrent reads are safe.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dimquot;
pub mod expr;
pub mod freeassoc;
pub mod freelie;
pub mod groupword;
pub mod intlat;
pub mod nilquot;
pub mod serre;
pub mod weights;

pub use num_bigint::BigInt;

use num_traits::{One, Zero};

/// Exact `base^exp` for unbounded integers.
pub fn int_pow(base: &BigInt, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Generalized binomial coefficient `C(k, i)` with `k` an arbitrary integer,
/// exact over Z (the division by `i!` is always exact).
pub fn binomial(k: &BigInt, i: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..i {
        num *= k - BigInt::from(t);
        den *= BigInt::from(t + 1);
    }
    if num.is_zero() {
        return BigInt::zero();
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_and_binomial() {
        assert_eq!(int_pow(&BigInt::from(3), 12), BigInt::from(531441));
        assert_eq!(binomial(&BigInt::from(7), 3), BigInt::from(35));
        assert_eq!(binomial(&BigInt::from(-2), 3), BigInt::from(-4));
        assert_eq!(binomial(&BigInt::from(2), 5), BigInt::from(0));
    }
}
