//! Weighted free Lie rings over Z on a Lyndon-word basis.
//!
//! Generators carry positive weights; the ring is truncated at a fixed
//! maximal weight, so every product is finite and exact. The basis consists
//! of the standard bracketings of Lyndon words over the generator alphabet,
//! ordered by (weight, degree, lexicographic word). Brackets of basis
//! elements are normalized back onto the basis by the classical rewriting of
//! non-standard bracketings through the Jacobi identity.
//!
//! On top of the ring live the graded lattices used throughout: components
//! of one-generator ideals, their symmetric brackets over all orderings, and
//! intersections.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::expr::LieEval;
use crate::intlat::{self, IntMatrix, Lattice, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    WeightOutOfRange { weight: u32, max: u32 },
    UnknownGenerator(String),
    /// Substitution images must be homogeneous of degree 1.
    BadSubstitutionImage,
    /// Ideal generators must be weight-homogeneous degree-1 elements.
    MixedWeightGenerator,
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::WeightOutOfRange { weight, max } => {
                write!(f, "weight {weight} outside configured range 1..={max}")
            }
            LieError::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            LieError::BadSubstitutionImage => write!(f, "substitution image is not of degree 1"),
            LieError::MixedWeightGenerator => write!(f, "ideal generator mixes weights"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Generator { name: name.into(), weight }
    }
}

const LETTER: usize = usize::MAX;

/// One Lyndon basis element: its word, standard factorization and grading.
#[derive(Clone, Debug)]
pub struct HallBasisElement {
    pub word: Vec<u16>,
    /// Indices of the standard factorization, `LETTER` sentinel for letters.
    left: usize,
    right: usize,
    pub weight: u32,
    pub degree: u32,
}

impl HallBasisElement {
    pub fn is_letter(&self) -> bool {
        self.left == LETTER
    }

    /// Standard factorization `(left, right)` as basis indices.
    pub fn factorization(&self) -> Option<(usize, usize)> {
        if self.is_letter() {
            None
        } else {
            Some((self.left, self.right))
        }
    }
}

/// Sparse integer combination of basis elements, keyed by basis index.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<usize, BigInt>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn single(idx: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(idx, BigInt::one());
        LieElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: usize) -> BigInt {
        self.terms.get(&idx).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, idx: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.terms.iter() {
            out.add_term(*i, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.terms.iter() {
            out.add_term(*i, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LieElement {
            terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self.terms.iter().map(|(i, c)| (*i, c * k)).collect(),
        }
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

type Cache = BTreeMap<(usize, usize), LieElement>;

/// A weighted free Lie ring over Z, truncated above `max_weight`.
pub struct LieRing {
    gens: Vec<Generator>,
    max_weight: u32,
    basis: Vec<HallBasisElement>,
    index: BTreeMap<Vec<u16>, usize>,
    /// Start of each weight block in `basis`; block `w` is
    /// `weight_start[w-1]..weight_start[w]`.
    weight_start: Vec<usize>,
}

impl LieRing {
    pub fn new(gens: Vec<Generator>, max_weight: u32) -> Self {
        assert!(max_weight >= 1);
        assert!(gens.iter().all(|g| g.weight >= 1));
        assert!(gens.len() < u16::MAX as usize);

        let mut words: Vec<Vec<u16>> = Vec::new();
        let mut stack: Vec<u16> = Vec::new();
        enumerate_lyndon(&gens, max_weight, &mut stack, 0, &mut words);

        let weight_of = |w: &[u16]| -> u32 { w.iter().map(|&g| gens[g as usize].weight).sum() };
        words.sort_by(|a, b| {
            (weight_of(a), a.len(), a.as_slice()).cmp(&(weight_of(b), b.len(), b.as_slice()))
        });

        let mut index = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            index.insert(w.clone(), i);
        }

        let mut basis: Vec<HallBasisElement> = Vec::with_capacity(words.len());
        for w in &words {
            let (left, right) = if w.len() == 1 {
                (LETTER, LETTER)
            } else {
                let split = standard_split(w);
                (index[&w[..split].to_vec()], index[&w[split..].to_vec()])
            };
            basis.push(HallBasisElement {
                weight: weight_of(w),
                degree: w.len() as u32,
                word: w.clone(),
                left,
                right,
            });
        }

        let mut starts = vec![0usize; max_weight as usize + 2];
        let mut acc = 0usize;
        for w in 1..=max_weight as usize {
            starts[w] = acc;
            acc += basis.iter().filter(|b| b.weight as usize == w).count();
        }
        starts[max_weight as usize + 1] = acc;

        LieRing { gens, max_weight, basis, index, weight_start: starts }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn basis(&self) -> &[HallBasisElement] {
        &self.basis
    }

    pub fn basis_elem(&self, idx: usize) -> &HallBasisElement {
        &self.basis[idx]
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, LieError> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| LieError::UnknownGenerator(name.into()))
    }

    /// Basis index range of the weight-`w` graded component.
    pub fn weight_block(&self, w: u32) -> core::ops::Range<usize> {
        if w == 0 || w > self.max_weight {
            return 0..0;
        }
        self.weight_start[w as usize]..self.weight_start[w as usize + 1]
    }

    pub fn basis_count_at_weight(&self, w: u32) -> usize {
        self.weight_block(w).len()
    }

    /// The generator as an element; zero if its weight exceeds the cutoff.
    pub fn generator(&self, idx: usize) -> LieElement {
        let w = vec![idx as u16];
        match self.index.get(&w) {
            Some(&i) => LieElement::single(i),
            None => LieElement::zero(),
        }
    }

    /// Homogeneous weight of an element, `None` for zero or mixed weights.
    pub fn homogeneous_weight(&self, e: &LieElement) -> Option<u32> {
        let mut it = e.terms().map(|(i, _)| self.basis[i].weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut cache = Cache::new();
        self.bracket_with(&mut cache, a, b)
    }

    /// Bracket reusing a normalization cache across calls.
    pub fn bracket_with(&self, cache: &mut Cache, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let prod = self.bracket_basis(cache, i, j);
                if prod.is_zero() {
                    continue;
                }
                let k = ca * cb;
                for (t, c) in prod.terms() {
                    out.add_term(t, &(c * &k));
                }
            }
        }
        out
    }

    /// Fresh empty cache for a sequence of related bracket computations.
    pub fn new_cache(&self) -> Cache {
        Cache::new()
    }

    fn bracket_basis(&self, cache: &mut Cache, i: usize, j: usize) -> LieElement {
        if i == j {
            return LieElement::zero();
        }
        if self.basis[i].weight + self.basis[j].weight > self.max_weight {
            return LieElement::zero();
        }
        if let Some(hit) = cache.get(&(i, j)) {
            return hit.clone();
        }
        let res = if self.basis[i].word > self.basis[j].word {
            self.bracket_basis(cache, j, i).neg()
        } else {
            // word(i) < word(j): either a standard bracketing, or rewrite by
            // Jacobi through the standard factorization of i.
            let standard = self.basis[i].is_letter()
                || self.basis[self.basis[i].right].word >= self.basis[j].word;
            if standard {
                let mut w = self.basis[i].word.clone();
                w.extend_from_slice(&self.basis[j].word);
                LieElement::single(*self.index.get(&w).expect("concatenation is a basis word"))
            } else {
                let (a, b) = (self.basis[i].left, self.basis[i].right);
                // [[a,b],j] = [[a,j],b] + [a,[b,j]]
                let aj = self.bracket_basis(cache, a, j);
                let bj = self.bracket_basis(cache, b, j);
                let mut out = LieElement::zero();
                for (t, c) in aj.terms() {
                    let p = self.bracket_basis(cache, t, b);
                    for (u, d) in p.terms() {
                        out.add_term(u, &(d * c));
                    }
                }
                for (t, c) in bj.terms() {
                    let p = self.bracket_basis(cache, a, t);
                    for (u, d) in p.terms() {
                        out.add_term(u, &(d * c));
                    }
                }
                out
            }
        };
        cache.insert((i, j), res.clone());
        res
    }

    /// Left-normed bracket of a sequence of elements.
    pub fn bracket_chain(&self, cache: &mut Cache, parts: &[LieElement]) -> LieElement {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = self.bracket_with(cache, &acc, p);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Applies the ring homomorphism determined by `map` on generators;
    /// generators absent from `map` are sent to themselves. Images must be
    /// homogeneous of degree 1.
    pub fn substitute(
        &self,
        e: &LieElement,
        map: &BTreeMap<usize, LieElement>,
    ) -> Result<LieElement, LieError> {
        for img in map.values() {
            if !img.terms().all(|(i, _)| self.basis[i].is_letter()) {
                return Err(LieError::BadSubstitutionImage);
            }
        }
        let mut cache = Cache::new();
        let mut memo: BTreeMap<usize, LieElement> = BTreeMap::new();
        let mut out = LieElement::zero();
        for (i, c) in e.terms() {
            let img = self.substitute_basis(&mut cache, &mut memo, map, i);
            for (t, d) in img.terms() {
                out.add_term(t, &(d * c));
            }
        }
        Ok(out)
    }

    fn substitute_basis(
        &self,
        cache: &mut Cache,
        memo: &mut BTreeMap<usize, LieElement>,
        map: &BTreeMap<usize, LieElement>,
        idx: usize,
    ) -> LieElement {
        if let Some(hit) = memo.get(&idx) {
            return hit.clone();
        }
        let node = &self.basis[idx];
        let res = if node.is_letter() {
            let g = node.word[0] as usize;
            match map.get(&g) {
                Some(img) => img.clone(),
                None => LieElement::single(idx),
            }
        } else {
            let l = self.substitute_basis(cache, memo, map, node.left);
            let r = self.substitute_basis(cache, memo, map, node.right);
            self.bracket_with(cache, &l, &r)
        };
        memo.insert(idx, res.clone());
        res
    }

    /// Coordinates of a weight-homogeneous element inside its weight block.
    pub fn component_row(&self, e: &LieElement, w: u32) -> SparseVec {
        let block = self.weight_block(w);
        SparseVec::from_pairs(
            e.terms()
                .map(|(i, c)| {
                    debug_assert!(block.contains(&i), "element not homogeneous of weight {w}");
                    (i - block.start, c.clone())
                })
                .collect(),
        )
    }

    pub fn row_to_element(&self, row: &SparseVec, w: u32) -> LieElement {
        let block = self.weight_block(w);
        let mut out = LieElement::zero();
        for (c, v) in row.iter() {
            out.add_term(block.start + c, v);
        }
        out
    }

    /// Weight-`d` component of the ideal generated by a degree-1 element,
    /// spanned by iterated brackets with the ring generators.
    pub fn ideal_component(&self, gen: &LieElement, d: u32) -> Result<Lattice, LieError> {
        if d < 1 || d > self.max_weight {
            return Err(LieError::WeightOutOfRange { weight: d, max: self.max_weight });
        }
        if !gen.terms().all(|(i, _)| self.basis[i].is_letter()) {
            return Err(LieError::MixedWeightGenerator);
        }
        let w0 = match self.homogeneous_weight(gen) {
            Some(w) => w,
            None if gen.is_zero() => return Ok(Lattice::zero(self.basis_count_at_weight(d))),
            None => return Err(LieError::MixedWeightGenerator),
        };
        let mut cache = Cache::new();
        let mut pending: BTreeMap<u32, Vec<LieElement>> = BTreeMap::new();
        if w0 <= d {
            pending.entry(w0).or_default().push(gen.clone());
        }
        let mut rows = IntMatrix::new(self.basis_count_at_weight(d));
        for w in w0..=d {
            let Some(elems) = pending.remove(&w) else { continue };
            // reduce each level to a lattice basis before bracketing on;
            // the span of the next level is unchanged and stays small
            let mut level_rows = IntMatrix::new(self.basis_count_at_weight(w));
            for e in &elems {
                level_rows.push_row(self.component_row(e, w));
            }
            let reduced = intlat::hnf(&level_rows);
            let elems: Vec<LieElement> =
                reduced.basis().rows().iter().map(|r| self.row_to_element(r, w)).collect();
            if w == d {
                for e in &elems {
                    rows.push_row(self.component_row(e, d));
                }
                break;
            }
            for e in &elems {
                for (g, gd) in self.gens.iter().enumerate() {
                    if w + gd.weight > d {
                        continue;
                    }
                    let b = self.bracket_with(&mut cache, e, &self.generator(g));
                    if !b.is_zero() {
                        pending.entry(w + gd.weight).or_default().push(b);
                    }
                }
            }
        }
        Ok(intlat::hnf(&rows))
    }

    /// Weight-`d` component of the symmetric bracket
    /// `sum over orderings of [I_0, ..., I_n]` of the listed ideals.
    pub fn symmetric_bracket_component(
        &self,
        ideal_gens: &[LieElement],
        d: u32,
    ) -> Result<Lattice, LieError> {
        if d < 1 || d > self.max_weight {
            return Err(LieError::WeightOutOfRange { weight: d, max: self.max_weight });
        }
        let dim = self.basis_count_at_weight(d);
        let n = ideal_gens.len();
        let min_weights: Vec<u32> = ideal_gens
            .iter()
            .map(|g| self.homogeneous_weight(g).ok_or(LieError::MixedWeightGenerator))
            .collect::<Result<_, _>>()?;
        if min_weights.iter().sum::<u32>() > d {
            return Ok(Lattice::zero(dim));
        }

        // spanning elements of each ideal's graded components, up to weight
        // d - (sum of the other ideals' minimal weights)
        let total_min: u32 = min_weights.iter().sum();
        let mut spans: Vec<BTreeMap<u32, Vec<LieElement>>> = Vec::with_capacity(n);
        for (i, g) in ideal_gens.iter().enumerate() {
            let cap = d - (total_min - min_weights[i]);
            let mut per: BTreeMap<u32, Vec<LieElement>> = BTreeMap::new();
            for w in min_weights[i]..=cap {
                let lat = self.ideal_component(g, w)?;
                let elems: Vec<LieElement> =
                    lat.basis().rows().iter().map(|r| self.row_to_element(r, w)).collect();
                if !elems.is_empty() {
                    per.insert(w, elems);
                }
            }
            if per.is_empty() {
                return Ok(Lattice::zero(dim));
            }
            spans.push(per);
        }

        let mut cache = Cache::new();
        let mut rows = IntMatrix::new(dim);
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            self.symmetric_rows_rec(&order, &spans, d, &mut cache, &mut rows, &mut Vec::new(), 0);
            if !next_permutation(&mut order) {
                break;
            }
        }
        Ok(intlat::hnf(&rows))
    }

    fn symmetric_rows_rec(
        &self,
        order: &[usize],
        spans: &[BTreeMap<u32, Vec<LieElement>>],
        remaining: u32,
        cache: &mut Cache,
        rows: &mut IntMatrix,
        prefix: &mut Vec<LieElement>,
        pos: usize,
    ) {
        if pos == order.len() {
            if remaining == 0 {
                let b = self.bracket_chain(cache, prefix);
                if !b.is_zero() {
                    let d = self.homogeneous_weight(&b).unwrap();
                    rows.push_row(self.component_row(&b, d));
                }
            }
            return;
        }
        let ideal = order[pos];
        let tail_min: u32 = order[pos + 1..]
            .iter()
            .map(|&i| spans[i].keys().next().copied().unwrap_or(u32::MAX))
            .sum();
        for (&w, elems) in &spans[ideal] {
            if w > remaining || remaining - w < tail_min {
                continue;
            }
            for e in elems {
                prefix.push(e.clone());
                self.symmetric_rows_rec(order, spans, remaining - w, cache, rows, prefix, pos + 1);
                prefix.pop();
            }
        }
    }

    /// Weight-`d` component of the intersection of the listed ideals.
    pub fn intersection_component(
        &self,
        ideal_gens: &[LieElement],
        d: u32,
    ) -> Result<Lattice, LieError> {
        let mut it = ideal_gens.iter();
        let first = match it.next() {
            Some(g) => g,
            None => return Ok(Lattice::full(self.basis_count_at_weight(d))),
        };
        let mut acc = self.ideal_component(first, d)?;
        for g in it {
            let next = self.ideal_component(g, d)?;
            acc = intlat::intersect(&acc, &next).expect("equal ambient dimensions");
        }
        Ok(acc)
    }

    pub fn format_element(&self, e: &LieElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (i, c)) in e.terms().enumerate() {
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
            if !mag.is_one() {
                out.push_str(&alloc::format!("{mag}*"));
            }
            out.push_str(&self.format_basis(i));
        }
        out
    }

    pub fn format_basis(&self, idx: usize) -> String {
        let node = &self.basis[idx];
        if node.is_letter() {
            return self.gens[node.word[0] as usize].name.clone();
        }
        // flatten left-normed chains for readability
        let mut chain: Vec<usize> = Vec::new();
        let mut cur = idx;
        while !self.basis[cur].is_letter() {
            chain.push(self.basis[cur].right);
            cur = self.basis[cur].left;
        }
        chain.push(cur);
        chain.reverse();
        let mut out = String::from("[");
        for (n, part) in chain.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            out.push_str(&self.format_basis(*part));
        }
        out.push(']');
        out
    }
}

impl LieEval for LieRing {
    type Elem = LieElement;

    fn zero_elem(&self) -> LieElement {
        LieElement::zero()
    }

    fn gen_elem(&self, idx: usize) -> LieElement {
        self.generator(idx)
    }

    fn add_elem(&self, a: &LieElement, b: &LieElement) -> LieElement {
        a.add(b)
    }

    fn scale_elem(&self, k: &BigInt, a: &LieElement) -> LieElement {
        a.scale(k)
    }

    fn bracket_elem(&self, a: &LieElement, b: &LieElement) -> LieElement {
        self.bracket(a, b)
    }
}

/// The rank-`n` ring on `x_0..x_{n-1}` of weight 1 together with the ideal
/// generators `x_0, ..., x_{n-1}, -(x_0+...+x_{n-1})`: the free model of the
/// one-relation ring on `n+1` generators summing to zero, with the last
/// generator eliminated.
pub fn standard_ideal_ring(n: usize, max_weight: u32) -> (LieRing, Vec<LieElement>) {
    let gens: Vec<Generator> =
        (0..n).map(|i| Generator::new(alloc::format!("x{i}"), 1)).collect();
    let ring = LieRing::new(gens, max_weight);
    let mut ideal_gens: Vec<LieElement> = (0..n).map(|i| ring.generator(i)).collect();
    let mut alias = LieElement::zero();
    for i in 0..n {
        alias = alias.sub(&ring.generator(i));
    }
    ideal_gens.push(alias);
    (ring, ideal_gens)
}

/// Elementary divisors of (intersection / symmetric bracket) of the standard
/// ideals `I_0..I_n` at one weight: torsion divisors first, one 0 per free
/// factor.
pub fn homotopy_quotient(n: usize, d: u32) -> Result<Vec<BigInt>, LieError> {
    let (ring, ideals) = standard_ideal_ring(n, d);
    let inter = ring.intersection_component(&ideals, d)?;
    let sym = ring.symmetric_bracket_component(&ideals, d)?;
    Ok(intlat::quotient_invariants(&inter, &sym).expect("symmetric bracket lies in intersection"))
}

/// Order of `e`'s class in (intersection / symmetric bracket) at weight `d`.
pub fn class_order_in_homotopy_quotient(
    ring: &LieRing,
    ideals: &[LieElement],
    e: &LieElement,
    d: u32,
) -> Result<Option<BigInt>, LieError> {
    let sym = ring.symmetric_bracket_component(ideals, d)?;
    Ok(intlat::coset_order(&sym, &ring.component_row(e, d)))
}

fn enumerate_lyndon(
    gens: &[Generator],
    max_weight: u32,
    word: &mut Vec<u16>,
    weight: u32,
    out: &mut Vec<Vec<u16>>,
) {
    for g in 0..gens.len() as u16 {
        let w2 = weight + gens[g as usize].weight;
        if w2 > max_weight {
            continue;
        }
        word.push(g);
        if is_lyndon(word) {
            out.push(word.clone());
        }
        enumerate_lyndon(gens, max_weight, word, w2, out);
        word.pop();
    }
}

/// A word is Lyndon when it is strictly smaller than all its proper rotations.
fn is_lyndon(w: &[u16]) -> bool {
    let n = w.len();
    if n == 1 {
        return true;
    }
    for s in 1..n {
        let rotation = w[s..].iter().chain(w[..s].iter());
        match rotation.cmp(w.iter()) {
            core::cmp::Ordering::Greater => continue,
            _ => return false,
        }
    }
    true
}

/// Split position of the standard factorization: the lexicographically
/// smallest proper suffix is the right factor.
fn standard_split(w: &[u16]) -> usize {
    let mut best = 1;
    for s in 2..w.len() {
        if w[s..] < w[best..] {
            best = s;
        }
    }
    best
}

/// In-place lexicographic successor; false when wrapped around.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.sort_unstable();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
