//! Free group words in syllable form, free reduction, letter-substitution
//! homomorphisms and the Magnus expansion into a truncated power-series ring.
//!
//! Words are sequences of `(letter, exponent)` syllables with unbounded
//! exponents, so power notation never expands into repeated letters; the
//! Magnus expansion of a power goes through exact binomial coefficients.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binomial;
use crate::freeassoc::{AssocElement, AssocRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    UnknownGenerator(String),
    /// Substituting a multi-letter image into a huge power would expand.
    ExponentTooLarge,
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            WordError::ExponentTooLarge => write!(f, "exponent too large to expand"),
        }
    }
}

/// Alphabet of a free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlphabet {
    names: Vec<String>,
}

impl GroupAlphabet {
    pub fn new(names: Vec<String>) -> Self {
        GroupAlphabet { names }
    }

    pub fn of(names: &[&str]) -> Self {
        GroupAlphabet { names: names.iter().map(|s| String::from(*s)).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize, WordError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| WordError::UnknownGenerator(name.into()))
    }

    /// Matching power-series alphabet for Magnus expansion.
    pub fn series_ring(&self, max_degree: u32) -> AssocRing {
        AssocRing::new(self.names.iter().map(|n| (n.clone(), 1)).collect(), max_degree)
    }
}

/// A word in syllable form; reduced means no zero exponents and no adjacent
/// syllables on the same letter.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupWord {
    syllables: Vec<(u16, BigInt)>,
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.syllables.iter()).finish()
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(i: usize) -> Self {
        GroupWord { syllables: vec![(i as u16, BigInt::one())] }
    }

    pub fn power_of(i: usize, e: impl Into<BigInt>) -> Self {
        let e = e.into();
        if e.is_zero() {
            GroupWord::identity()
        } else {
            GroupWord { syllables: vec![(i as u16, e)] }
        }
    }

    pub fn from_syllables(sylls: Vec<(u16, BigInt)>) -> Self {
        free_reduce_raw(sylls)
    }

    pub fn syllables(&self) -> &[(u16, BigInt)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Reduced word length counting multiplicities (|exponent| summed).
    pub fn length(&self) -> BigInt {
        self.syllables.iter().map(|(_, e)| e.abs()).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut sylls = self.syllables.clone();
        sylls.extend(other.syllables.iter().cloned());
        free_reduce_raw(sylls)
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            syllables: self.syllables.iter().rev().map(|(l, e)| (*l, -e)).collect(),
        }
    }

    pub fn pow(&self, e: &BigInt) -> Result<Self, WordError> {
        if e.is_zero() || self.is_identity() {
            return Ok(GroupWord::identity());
        }
        if self.syllables.len() == 1 {
            let (l, k) = &self.syllables[0];
            return Ok(GroupWord::from_syllables(vec![(*l, k * e)]));
        }
        let n = e.abs().to_u32().ok_or(WordError::ExponentTooLarge)?;
        if n > 4096 {
            return Err(WordError::ExponentTooLarge);
        }
        let base = if e.is_negative() { self.inverse() } else { self.clone() };
        let mut acc = GroupWord::identity();
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Group commutator `a^-1 b^-1 a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Left-normed iterated commutator of two or more words.
    pub fn commutator_chain(parts: &[Self]) -> Self {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = GroupWord::commutator(&acc, p);
        }
        acc
    }

    /// Conjugate `b^-1 a b`.
    pub fn conjugate(&self, by: &Self) -> Self {
        by.inverse().mul(self).mul(by)
    }

    pub fn format(&self, alphabet: &GroupAlphabet) -> String {
        if self.is_identity() {
            return "1".into();
        }
        let mut out = String::new();
        for (n, (l, e)) in self.syllables.iter().enumerate() {
            if n > 0 {
                out.push('.');
            }
            out.push_str(alphabet.name(*l as usize));
            if !e.is_one() {
                out.push_str(&alloc::format!("^{e}"));
            }
        }
        out
    }
}

/// Fully reduced canonical representative: merges adjacent syllables on the
/// same letter and drops trivial ones.
pub fn free_reduce(w: &GroupWord) -> GroupWord {
    free_reduce_raw(w.syllables.clone())
}

fn free_reduce_raw(sylls: Vec<(u16, BigInt)>) -> GroupWord {
    let mut out: Vec<(u16, BigInt)> = Vec::with_capacity(sylls.len());
    for (l, e) in sylls {
        if e.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((tl, te)) if *tl == l => {
                *te += e;
                if te.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((l, e)),
        }
    }
    GroupWord { syllables: out }
}

/// A homomorphism of free groups given by images of the letters.
pub struct LetterMap {
    images: Vec<GroupWord>,
}

impl LetterMap {
    pub fn new(images: Vec<GroupWord>) -> Self {
        LetterMap { images }
    }

    /// Identity on every letter of the alphabet.
    pub fn identity(alphabet: &GroupAlphabet) -> Self {
        LetterMap { images: (0..alphabet.len()).map(GroupWord::generator).collect() }
    }

    /// Identity except the named letter, which is sent to 1.
    pub fn kill(alphabet: &GroupAlphabet, letter: usize) -> Self {
        let mut m = LetterMap::identity(alphabet);
        m.images[letter] = GroupWord::identity();
        m
    }

    pub fn set(mut self, letter: usize, image: GroupWord) -> Self {
        self.images[letter] = image;
        self
    }

    /// Homomorphic image, freely reduced.
    pub fn apply(&self, w: &GroupWord) -> Result<GroupWord, WordError> {
        let mut acc = GroupWord::identity();
        for (l, e) in w.syllables() {
            let img = self
                .images
                .get(*l as usize)
                .ok_or_else(|| WordError::UnknownGenerator(alloc::format!("#{l}")))?;
            acc = acc.mul(&img.pow(e)?);
        }
        Ok(acc)
    }
}

/// Magnus expansion: each letter `g` maps to `1 + x_g`, inverses to the
/// truncated geometric series, powers through exact binomials. The result is
/// multiplicative and has constant term 1.
pub fn magnus_expand(ring: &AssocRing, w: &GroupWord) -> AssocElement {
    let mut acc = AssocElement::one();
    for (l, e) in w.syllables() {
        acc = ring.mul(&acc, &magnus_power(ring, *l as usize, e));
    }
    acc
}

/// `(1 + x_l)^e` truncated: sum of `C(e, k) x_l^k`.
fn magnus_power(ring: &AssocRing, letter: usize, e: &BigInt) -> AssocElement {
    let mut out = AssocElement::one();
    let mut word: Vec<u16> = Vec::new();
    for k in 1..=ring.max_weight() as u64 {
        word.push(letter as u16);
        let c = binomial(e, k);
        out.add_term(word.clone(), &c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let x = GroupWord::generator(0);
        assert!(x.mul(&x.inverse()).is_identity());
        let xy = GroupWord::generator(0).mul(&GroupWord::generator(1));
        assert!(xy.mul(&xy.inverse()).is_identity());
        let c = GroupWord::commutator(&GroupWord::generator(0), &GroupWord::generator(1));
        assert_eq!(free_reduce(&c), c);
        assert_eq!(c.length(), BigInt::from(4));
    }

    #[test]
    fn big_powers_stay_syllabic() {
        let p = GroupWord::power_of(0, BigInt::from(3).pow(12));
        assert_eq!(p.syllables().len(), 1);
        let q = p.mul(&GroupWord::power_of(0, -BigInt::from(3).pow(12)));
        assert!(q.is_identity());
    }

    #[test]
    fn retraction_kills_normal_closure() {
        let alphabet = GroupAlphabet::of(&["a", "b"]);
        let kill = LetterMap::kill(&alphabet, 0);
        // conjugates of a die, b survives
        let w = GroupWord::generator(0)
            .conjugate(&GroupWord::generator(1))
            .mul(&GroupWord::generator(0).inverse().conjugate(&GroupWord::generator(1).inverse()));
        assert!(kill.apply(&w).unwrap().is_identity());
        assert!(!kill.apply(&GroupWord::generator(1)).unwrap().is_identity());
    }

    #[test]
    fn magnus_basics() {
        let alphabet = GroupAlphabet::of(&["x", "y"]);
        let ring = alphabet.series_ring(3);
        let m = magnus_expand(&ring, &GroupWord::generator(0));
        assert_eq!(m.constant_term(), BigInt::one());
        assert_eq!(m.coeff(&[0]), BigInt::one());
        assert_eq!(m.num_terms(), 2);

        // inverse series: product is 1 up to truncation
        let w = GroupWord::generator(0);
        let prod = ring.mul(&magnus_expand(&ring, &w.inverse()), &magnus_expand(&ring, &w));
        assert_eq!(prod, AssocElement::one());
    }

    #[test]
    fn magnus_commutator_leading_term() {
        let alphabet = GroupAlphabet::of(&["x", "y"]);
        let ring = alphabet.series_ring(2);
        let c = GroupWord::commutator(&GroupWord::generator(0), &GroupWord::generator(1));
        let m = magnus_expand(&ring, &c);
        let deg2 = ring.weight_part(&m, 2);
        assert_eq!(deg2, ring.commutator(&ring.letter(0), &ring.letter(1)));
    }

    #[test]
    fn magnus_power_binomials() {
        let alphabet = GroupAlphabet::of(&["x"]);
        let ring = alphabet.series_ring(4);
        let m = magnus_expand(&ring, &GroupWord::power_of(0, 7));
        assert_eq!(m.coeff(&[0]), BigInt::from(7));
        assert_eq!(m.coeff(&[0, 0]), BigInt::from(21));
        assert_eq!(m.coeff(&[0, 0, 0]), BigInt::from(35));
    }
}
