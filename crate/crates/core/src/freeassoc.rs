//! Weighted free associative ring over Z, truncated by total weight.
//!
//! Elements are sparse integer combinations of words over the generator
//! alphabet; every product discards terms beyond the truncation weight.
//! Lie elements embed through the `ab - ba` expansion of brackets, and the
//! left-normed bracketing of words gives the Dynkin-style projector back
//! into the free Lie ring.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::freelie::{LieElement, LieRing};
use crate::intlat::{self, IntMatrix, Lattice, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssocError {
    NotDegreeOne,
    WeightOutOfRange { weight: u32, max: u32 },
}

impl fmt::Display for AssocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssocError::NotDegreeOne => write!(f, "expected an element of degree 1"),
            AssocError::WeightOutOfRange { weight, max } => {
                write!(f, "weight {weight} outside configured range 1..={max}")
            }
        }
    }
}

pub type Word = Vec<u16>;

/// Sparse integer combination of words from one alphabet.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AssocElement {
    terms: BTreeMap<Word, BigInt>,
}

impl AssocElement {
    pub fn zero() -> Self {
        AssocElement::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigInt::one());
        AssocElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[u16]) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        AssocElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return AssocElement::zero();
        }
        AssocElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&[])
    }
}

impl fmt::Debug for AssocElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Free associative ring on a weighted alphabet, truncated above `max_weight`.
pub struct AssocRing {
    letters: Vec<(String, u32)>,
    max_weight: u32,
}

impl AssocRing {
    pub fn new(letters: Vec<(String, u32)>, max_weight: u32) -> Self {
        assert!(letters.iter().all(|(_, w)| *w >= 1));
        AssocRing { letters, max_weight }
    }

    /// Alphabet matching a free Lie ring's generators.
    pub fn envelope_of(ring: &LieRing, max_weight: u32) -> Self {
        AssocRing {
            letters: ring.generators().iter().map(|g| (g.name.clone(), g.weight)).collect(),
            max_weight,
        }
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn letter_name(&self, i: usize) -> &str {
        &self.letters[i].0
    }

    pub fn word_weight(&self, w: &[u16]) -> u32 {
        w.iter().map(|&l| self.letters[l as usize].1).sum()
    }

    pub fn letter(&self, i: usize) -> AssocElement {
        if self.letters[i].1 > self.max_weight {
            return AssocElement::zero();
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![i as u16], BigInt::one());
        AssocElement { terms }
    }

    /// Concatenation product, truncated by weight.
    pub fn mul(&self, a: &AssocElement, b: &AssocElement) -> AssocElement {
        let mut out = AssocElement::zero();
        for (wa, ca) in a.terms() {
            let weight_a = self.word_weight(wa);
            for (wb, cb) in b.terms() {
                if weight_a + self.word_weight(wb) > self.max_weight {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, &(ca * cb));
            }
        }
        out
    }

    pub fn commutator(&self, a: &AssocElement, b: &AssocElement) -> AssocElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    pub fn product(&self, factors: &[AssocElement]) -> AssocElement {
        let mut acc = AssocElement::one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Exact equality of normalized term maps.
    pub fn verify_identity(&self, lhs: &AssocElement, rhs: &AssocElement) -> bool {
        lhs == rhs
    }

    /// The part of `e` of total weight exactly `w`.
    pub fn weight_part(&self, e: &AssocElement, w: u32) -> AssocElement {
        AssocElement {
            terms: e
                .terms()
                .filter(|(word, _)| self.word_weight(word) == w)
                .map(|(word, c)| (word.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest weight with a nonzero part, 0 for constants.
    pub fn top_weight(&self, e: &AssocElement) -> u32 {
        e.terms().map(|(w, _)| self.word_weight(w)).max().unwrap_or(0)
    }

    /// Smallest positive weight with a nonzero part.
    pub fn lowest_positive_weight(&self, e: &AssocElement) -> Option<u32> {
        e.terms()
            .map(|(w, _)| self.word_weight(w))
            .filter(|&w| w > 0)
            .min()
    }

    /// Expansion of a Lie element in the enveloping ring: brackets become
    /// `ab - ba` recursively. The Lie ring must share this alphabet.
    pub fn lie_expand(&self, lie: &LieRing, e: &LieElement) -> AssocElement {
        debug_assert_eq!(lie.generators().len(), self.letters.len());
        let mut memo: BTreeMap<usize, AssocElement> = BTreeMap::new();
        let mut out = AssocElement::zero();
        for (i, c) in e.terms() {
            let exp = self.lie_expand_basis(lie, &mut memo, i);
            for (w, d) in exp.terms() {
                out.add_term(w.clone(), &(d * c));
            }
        }
        out
    }

    fn lie_expand_basis(
        &self,
        lie: &LieRing,
        memo: &mut BTreeMap<usize, AssocElement>,
        idx: usize,
    ) -> AssocElement {
        if let Some(hit) = memo.get(&idx) {
            return hit.clone();
        }
        let node = lie.basis_elem(idx);
        let res = match node.factorization() {
            None => self.letter(node.word[0] as usize),
            Some((l, r)) => {
                let a = self.lie_expand_basis(lie, memo, l);
                let b = self.lie_expand_basis(lie, memo, r);
                self.commutator(&a, &b)
            }
        };
        memo.insert(idx, res.clone());
        res
    }

    /// Left-normed bracketing of each word, extended linearly: composed with
    /// `lie_expand` it multiplies a homogeneous degree-d Lie element by d.
    pub fn dynkin_bracketing(&self, lie: &LieRing, e: &AssocElement) -> LieElement {
        let mut cache = lie.new_cache();
        let mut out = LieElement::zero();
        for (w, c) in e.terms() {
            if w.is_empty() {
                continue;
            }
            let mut acc = lie.generator(w[0] as usize);
            for &l in &w[1..] {
                acc = lie.bracket_with(&mut cache, &acc, &lie.generator(l as usize));
            }
            for (t, d) in acc.terms() {
                out.add_term(t, &(d * c));
            }
        }
        out
    }

    /// All words of the given weight, sorted degree-lexicographically; the
    /// coordinate layout of weight-graded lattices.
    pub fn words_of_weight(&self, w: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.words_rec(w, &mut word, &mut out);
        out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        out
    }

    fn words_rec(&self, remaining: u32, word: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for l in 0..self.letters.len() as u16 {
            let lw = self.letters[l as usize].1;
            if lw > remaining {
                continue;
            }
            word.push(l);
            self.words_rec(remaining - lw, word, out);
            word.pop();
        }
    }

    pub fn word_index(&self, w: u32) -> BTreeMap<Word, usize> {
        self.words_of_weight(w)
            .into_iter()
            .enumerate()
            .map(|(i, word)| (word, i))
            .collect()
    }

    /// Coordinates of a weight-homogeneous element in the given word layout.
    pub fn component_row(&self, words: &BTreeMap<Word, usize>, e: &AssocElement) -> SparseVec {
        SparseVec::from_pairs(
            e.terms()
                .map(|(word, c)| (*words.get(word).expect("word in component"), c.clone()))
                .collect(),
        )
    }

    pub fn format_element(&self, e: &AssocElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (w, c)) in e.terms().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() || w.is_empty() {
                out.push_str(&alloc::format!("{mag}"));
                if !w.is_empty() {
                    out.push('*');
                }
            }
            for (k, l) in w.iter().enumerate() {
                if k > 0 {
                    out.push('.');
                }
                out.push_str(&self.letters[*l as usize].0);
            }
        }
        out
    }
}

/// Generating rows for the weight-`d` component of the symmetric product of
/// the two-sided ideals generated by degree-1 elements.
pub struct SymmetricProduct {
    pub degree: u32,
    pub rows: Vec<AssocElement>,
    pub lattice: Lattice,
    words: BTreeMap<Word, usize>,
}

impl SymmetricProduct {
    pub fn contains(&self, ring: &AssocRing, e: &AssocElement) -> bool {
        intlat::contains(&self.lattice, &ring.component_row(&self.words, e))
    }

    /// Integer coefficients over `rows` reproducing `e`, when `e` lies in
    /// the component.
    pub fn express(&self, ring: &AssocRing, e: &AssocElement) -> Option<Vec<BigInt>> {
        let dim = self.words.len();
        let mut m = IntMatrix::new(dim);
        for r in &self.rows {
            m.push_row(ring.component_row(&self.words, r));
        }
        intlat::express_in_rows(&m, &ring.component_row(&self.words, e))
    }
}

/// Weight-`d` component of the symmetric ideal product: one factor per ideal
/// in every ordering, padded by generator letters in all gaps when `d`
/// exceeds the number of ideals. Below the minimal degree the lattice is
/// zero.
pub fn symmetric_product_component(
    ring: &AssocRing,
    leading: &[AssocElement],
    d: u32,
) -> Result<SymmetricProduct, AssocError> {
    if d < 1 || d > ring.max_weight() {
        return Err(AssocError::WeightOutOfRange { weight: d, max: ring.max_weight() });
    }
    for xi in leading {
        if !xi.terms().all(|(w, _)| w.len() == 1) {
            return Err(AssocError::NotDegreeOne);
        }
    }
    let words = ring.word_index(d);
    let dim = words.len();
    let n = leading.len() as u32;
    let mut rows_elems: Vec<AssocElement> = Vec::new();
    if n > 0 && d >= n {
        let extra = (d - n) as usize;
        let mut order: Vec<usize> = (0..leading.len()).collect();
        loop {
            let mut sizes = vec![0usize; leading.len() + 1];
            compose_rec(ring, &order, leading, extra, 0, &mut sizes, &mut rows_elems);
            if !crate::freelie::next_permutation(&mut order) {
                break;
            }
        }
    }
    let mut m = IntMatrix::new(dim);
    for r in &rows_elems {
        m.push_row(ring.component_row(&words, &ring.weight_part(r, d)));
    }
    Ok(SymmetricProduct {
        degree: d,
        rows: rows_elems,
        lattice: intlat::hnf(&m),
        words,
    })
}

// compositions of the padding budget into the n+1 gaps
fn compose_rec(
    ring: &AssocRing,
    order: &[usize],
    leading: &[AssocElement],
    remaining: usize,
    gap: usize,
    sizes: &mut [usize],
    out: &mut Vec<AssocElement>,
) {
    if gap == sizes.len() - 1 {
        sizes[gap] = remaining;
        emit_padded(ring, order, leading, sizes, out);
        return;
    }
    for s in 0..=remaining {
        sizes[gap] = s;
        compose_rec(ring, order, leading, remaining - s, gap + 1, sizes, out);
    }
}

fn emit_padded(
    ring: &AssocRing,
    order: &[usize],
    leading: &[AssocElement],
    sizes: &[usize],
    out: &mut Vec<AssocElement>,
) {
    let total: usize = sizes.iter().sum();
    let letters = ring.letter_count();
    let mut choice = vec![0u16; total];
    loop {
        let mut factors: Vec<AssocElement> = Vec::new();
        let mut k = 0;
        for (gap, &sz) in sizes.iter().enumerate() {
            for _ in 0..sz {
                factors.push(ring.letter(choice[k] as usize));
                k += 1;
            }
            if gap < order.len() {
                factors.push(leading[order[gap]].clone());
            }
        }
        out.push(ring.product(&factors));
        if total == 0 {
            return;
        }
        let mut i = 0;
        loop {
            if i == total {
                return;
            }
            choice[i] += 1;
            if (choice[i] as usize) < letters {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::Generator;

    fn ring2() -> AssocRing {
        AssocRing::new(vec![("x".into(), 1), ("y".into(), 1)], 4)
    }

    #[test]
    fn unit_and_noncommutativity() {
        let r = ring2();
        let x = r.letter(0);
        let y = r.letter(1);
        assert_eq!(r.mul(&AssocElement::one(), &x), x);
        assert_ne!(r.mul(&x, &y), r.mul(&y, &x));
    }

    #[test]
    fn bilinearity() {
        let r = ring2();
        let x = r.letter(0);
        let y = r.letter(1);
        let lhs = r.mul(&x.add(&y), &x.sub(&y));
        let mut expect = AssocElement::zero();
        expect.add_term(vec![0, 0], &BigInt::one());
        expect.add_term(vec![0, 1], &(-BigInt::one()));
        expect.add_term(vec![1, 0], &BigInt::one());
        expect.add_term(vec![1, 1], &(-BigInt::one()));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn truncation() {
        let r = AssocRing::new(vec![("x".into(), 1)], 2);
        let x = r.letter(0);
        let xx = r.mul(&x, &x);
        assert!(r.mul(&xx, &x).is_zero());
    }

    #[test]
    fn lie_expand_bracket() {
        let lie = LieRing::new(vec![Generator::new("x", 1), Generator::new("y", 1)], 4);
        let r = AssocRing::envelope_of(&lie, 4);
        let b = lie.bracket(&lie.generator(0), &lie.generator(1));
        let e = r.lie_expand(&lie, &b);
        assert_eq!(e, r.commutator(&r.letter(0), &r.letter(1)));
    }

    #[test]
    fn dynkin_degree_identity() {
        let lie = LieRing::new(
            vec![Generator::new("x", 1), Generator::new("y", 1), Generator::new("z", 1)],
            4,
        );
        let r = AssocRing::envelope_of(&lie, 4);
        let e = lie.bracket(
            &lie.bracket(&lie.generator(0), &lie.generator(1)),
            &lie.bracket(&lie.generator(0), &lie.generator(2)),
        );
        let back = r.dynkin_bracketing(&lie, &r.lie_expand(&lie, &e));
        assert_eq!(back, e.scale(&BigInt::from(4)));
    }

    #[test]
    fn symmetric_product_minimal_degree() {
        let r = AssocRing::new(vec![("a".into(), 1), ("b".into(), 1)], 3);
        let prod = symmetric_product_component(&r, &[r.letter(0), r.letter(1)], 2).unwrap();
        assert_eq!(prod.lattice.rank(), 2);
        let below = symmetric_product_component(&r, &[r.letter(0), r.letter(1)], 1).unwrap();
        assert!(below.lattice.is_zero());
    }

    #[test]
    fn symmetric_product_with_padding() {
        let r = AssocRing::new(vec![("a".into(), 1), ("b".into(), 1)], 3);
        let prod = symmetric_product_component(&r, &[r.letter(0), r.letter(1)], 3).unwrap();
        let m = r.product(&[r.letter(0), r.letter(0), r.letter(1)]);
        assert!(prod.contains(&r, &m));
        let pure = r.product(&[r.letter(0), r.letter(0), r.letter(0)]);
        assert!(!prod.contains(&r, &pure));
    }

    #[test]
    fn express_round_trip() {
        let r = AssocRing::new(vec![("a".into(), 1), ("b".into(), 1)], 2);
        let prod = symmetric_product_component(&r, &[r.letter(0), r.letter(1)], 2).unwrap();
        let target = r.commutator(&r.letter(0), &r.letter(1));
        let coeffs = prod.express(&r, &target).unwrap();
        let mut acc = AssocElement::zero();
        for (c, row) in coeffs.iter().zip(&prod.rows) {
            acc = acc.add(&row.scale(c));
        }
        assert_eq!(acc, target);
    }
}
