//! Weight sequences forcing permutation-only substitutions: sequences
//! `c_0 > c_1 > ... > c_d` for which `n_0 c_0 + ... + n_d c_d = c_0 + ... + c_d`
//! has `(1, ..., 1)` as its only solution over the nonnegative integers.
//!
//! Nonnegative solutions are the right convention here: a substitution count
//! of zero is meaningful, so sequences containing a zero entry (infinite
//! search space) are rejected as unsupported.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::int_pow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightsError {
    TooSmall { d: u32 },
    ZeroEntry,
}

impl fmt::Display for WeightsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightsError::TooSmall { d } => write!(f, "need d >= 2, got {d}"),
            WeightsError::ZeroEntry => write!(f, "zero entries make the solution search unbounded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSequence {
    pub d: u32,
    pub c: Vec<BigInt>,
}

impl WeightSequence {
    pub fn new(c: Vec<BigInt>) -> Self {
        WeightSequence { d: (c.len() as u32).saturating_sub(1), c }
    }

    pub fn sum(&self) -> BigInt {
        self.c.iter().sum()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        WeightSequence { d: self.d, c: self.c.iter().map(|x| x * k).collect() }
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `c_i = d^(d+1) - d^i` for `i = 0..=d`.
pub fn lemma_sequence(d: u32) -> Result<WeightSequence, WeightsError> {
    if d < 2 {
        return Err(WeightsError::TooSmall { d });
    }
    let base = BigInt::from(d);
    let top = int_pow(&base, d as u64 + 1);
    Ok(WeightSequence {
        d,
        c: (0..=d as u64).map(|i| &top - int_pow(&base, i)).collect(),
    })
}

/// The tighter variant `c_i = 2^(d+1) - 2^i`.
pub fn improved_sequence(d: u32) -> Result<WeightSequence, WeightsError> {
    if d < 2 {
        return Err(WeightsError::TooSmall { d });
    }
    let two = BigInt::from(2);
    let top = int_pow(&two, d as u64 + 1);
    Ok(WeightSequence {
        d,
        c: (0..=d as u64).map(|i| &top - int_pow(&two, i)).collect(),
    })
}

/// Exhaustively decides whether `(1,...,1)` is the unique nonnegative
/// solution of `sum n_i c_i = sum c_i`. The search is finite because every
/// `n_i` is bounded by `sum c_j / c_i`.
pub fn verify_uniqueness(seq: &WeightSequence) -> Result<bool, WeightsError> {
    let solutions = solve(seq, Some(2))?;
    Ok(solutions.len() == 1 && solutions[0].iter().all(|n| *n == BigInt::from(1)))
}

/// All nonnegative solutions of `sum n_i c_i = sum c_i`, up to `limit` of
/// them when given (early exit for uniqueness checks).
pub fn solve(seq: &WeightSequence, limit: Option<usize>) -> Result<Vec<Vec<BigInt>>, WeightsError> {
    use num_traits::Zero;
    if seq.c.iter().any(|c| c.is_zero()) {
        return Err(WeightsError::ZeroEntry);
    }
    let target = seq.sum();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(seq.c.len());
    search(&seq.c, &target, &mut current, &mut out, limit);
    Ok(out)
}

fn search(
    c: &[BigInt],
    remaining: &BigInt,
    current: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    limit: Option<usize>,
) {
    use num_traits::Zero;
    if let Some(l) = limit {
        if out.len() >= l {
            return;
        }
    }
    if current.len() == c.len() {
        if remaining.is_zero() {
            out.push(current.clone());
        }
        return;
    }
    let i = current.len();
    // with strictly positive entries the residual bounds n_i directly
    let max_n = remaining / &c[i];
    let mut n = BigInt::zero();
    while n <= max_n {
        let used = &n * &c[i];
        let rest = remaining - &used;
        // remaining positions must be able to absorb the rest exactly; the
        // zero tuple absorbs only zero, so prune when rest exceeds capacity
        let capacity: BigInt = c[i + 1..].iter().map(|cj| &rest / cj * cj).sum::<BigInt>();
        let feasible = if i + 1 == c.len() { rest.is_zero() } else { rest <= capacity };
        if feasible {
            current.push(n.clone());
            search(c, &rest, current, out, limit);
            current.pop();
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lemma_values() {
        let s = lemma_sequence(3).unwrap();
        assert_eq!(
            s.c,
            vec![BigInt::from(80), BigInt::from(78), BigInt::from(72), BigInt::from(54)]
        );
        let s = lemma_sequence(2).unwrap();
        assert_eq!(s.c, vec![BigInt::from(7), BigInt::from(6), BigInt::from(4)]);
        assert!(lemma_sequence(1).is_err());
    }

    #[test]
    fn strictly_decreasing() {
        for d in 2..=6 {
            let s = lemma_sequence(d).unwrap();
            assert!(s.c.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn improved_values() {
        let s = improved_sequence(3).unwrap();
        assert_eq!(
            s.c,
            vec![BigInt::from(15), BigInt::from(14), BigInt::from(12), BigInt::from(8)]
        );
    }

    #[test]
    fn negative_controls() {
        let bad = WeightSequence::new(vec![BigInt::from(1), BigInt::from(1)]);
        assert!(!verify_uniqueness(&bad).unwrap());
        let bad = WeightSequence::new(vec![BigInt::from(2), BigInt::from(1)]);
        assert!(!verify_uniqueness(&bad).unwrap());
        // (0,3) solves 0*2 + 3*1 = 3
        let sols = solve(&bad, None).unwrap();
        assert!(sols.contains(&vec![BigInt::from(0), BigInt::from(3)]));
    }

    #[test]
    fn zero_entry_rejected() {
        let z = WeightSequence::new(vec![BigInt::from(3), BigInt::from(0)]);
        assert_eq!(verify_uniqueness(&z).unwrap_err(), WeightsError::ZeroEntry);
    }

    #[test]
    fn small_lemma_sequences_pass() {
        for d in 2..=4 {
            assert!(verify_uniqueness(&lemma_sequence(d).unwrap()).unwrap());
            assert!(verify_uniqueness(&improved_sequence(d).unwrap()).unwrap());
        }
    }

    #[test]
    fn scaling_preserves_uniqueness() {
        let s = improved_sequence(2).unwrap();
        for k in 2..4 {
            assert!(verify_uniqueness(&s.scaled(&BigInt::from(k))).unwrap());
        }
    }
}
