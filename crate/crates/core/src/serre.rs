//! The degree-2p torsion element of the free Lie ring built from constrained
//! shuffles, the simplicial face calculus certifying it as a cycle, and its
//! free-group lifts.
//!
//! The element lives in the free Lie ring on `x_0..x_{2p-2}`: a signed sum
//! over shuffles of left-normed brackets of the pair brackets
//! `[x_i, x_{2p-2}]` and `[x_i, x_j]`, using `x_{2p-2}` twice per term and
//! omitting `x_{2p-1}` entirely.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::freelie::{Generator, LieElement, LieRing};
use crate::groupword::{GroupAlphabet, GroupWord, LetterMap};
use crate::intlat::{self, IntMatrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SerreError {
    NotPrime(u32),
}

impl fmt::Display for SerreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SerreError::NotPrime(p) => write!(f, "{p} is not prime"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A block-increasing permutation with its parity sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Vec<u8>,
    pub sign: i8,
}

fn parity(perm: &[u8]) -> i8 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn block_shuffles(len: usize, chain_end: usize) -> Vec<Shuffle> {
    // permutations of 0..len with each block (2i, 2i+1) increasing and the
    // odd positions 1, 3, ..., chain_end forming an increasing chain
    let mut out = Vec::new();
    let mut perm: Vec<u8> = (0..len as u8).collect();
    loop {
        let blocks_ok = (0..len / 2).all(|i| perm[2 * i] < perm[2 * i + 1]);
        let chain_ok = (1..=chain_end)
            .step_by(2)
            .zip((3..=chain_end).step_by(2))
            .all(|(a, b)| perm[a] < perm[b]);
        if blocks_ok && chain_ok {
            out.push(Shuffle { sign: parity(&perm), perm: perm.clone() });
        }
        if !next_perm_u8(&mut perm) {
            break;
        }
    }
    out
}

fn next_perm_u8(perm: &mut [u8]) -> bool {
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

/// The shuffles indexing the terms of the degree-2p element: permutations of
/// `{0..2p-3}` with increasing blocks and chain on positions `1,3,..,2p-5`.
pub fn enumerate_shuffles(p: u32) -> Result<Vec<Shuffle>, SerreError> {
    if !is_prime(p) {
        return Err(SerreError::NotPrime(p));
    }
    let len = 2 * p as usize - 2;
    let chain_end = if p >= 3 { 2 * p as usize - 5 } else { 0 };
    Ok(block_shuffles(len, chain_end))
}

/// The shuffles of the symmetric-product cycle upstairs: permutations of
/// `{0..2p-1}` with increasing blocks and chain on all odd positions (which
/// forces the last entry to be `2p-1`).
pub fn lift_shuffles(p: u32) -> Result<Vec<Shuffle>, SerreError> {
    if !is_prime(p) {
        return Err(SerreError::NotPrime(p));
    }
    let len = 2 * p as usize;
    Ok(block_shuffles(len, len - 1))
}

/// Free Lie ring hosting the degree-2p element: `x_0..x_{2p-2}`, weight 1.
pub fn element_ring(p: u32) -> LieRing {
    let gens: Vec<Generator> =
        (0..2 * p - 1).map(|i| Generator::new(alloc::format!("x{i}"), 1)).collect();
    LieRing::new(gens, 2 * p)
}

/// Pair-symbol form of each term: sign and the p pair factors of the
/// left-normed bracket.
pub fn element_pair_terms(p: u32) -> Result<Vec<(i8, Vec<(u8, u8)>)>, SerreError> {
    let shuffles = enumerate_shuffles(p)?;
    let top = (2 * p - 2) as u8;
    Ok(shuffles
        .into_iter()
        .map(|s| {
            let mut factors = Vec::with_capacity(p as usize);
            factors.push((s.perm[0], top));
            factors.push((s.perm[1], top));
            for k in 1..p as usize - 1 {
                factors.push((s.perm[2 * k], s.perm[2 * k + 1]));
            }
            (s.sign, factors)
        })
        .collect())
}

/// The signed sum of left-normed brackets of pair brackets, normalized onto
/// the Lyndon basis of `ring` (which must be `element_ring(p)`).
pub fn serre_element(p: u32, ring: &LieRing) -> Result<LieElement, SerreError> {
    let terms = element_pair_terms(p)?;
    let mut cache = ring.new_cache();
    let mut out = LieElement::zero();
    for (sign, factors) in terms {
        let parts: Vec<LieElement> = factors
            .iter()
            .map(|(a, b)| ring.bracket(&ring.generator(*a as usize), &ring.generator(*b as usize)))
            .collect();
        let b = ring.bracket_chain(&mut cache, &parts);
        let signed = if sign < 0 { b.neg() } else { b };
        out = out.add(&signed);
    }
    Ok(out)
}

/// A degenerate-free simplicial generator `(i1 i2)` with `i1 < i2 < level`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SimplicialPair {
    pub i1: u8,
    pub i2: u8,
}

/// Face map on a pair at the given level; `None` is the zero element.
pub fn face(j: u8, pair: SimplicialPair, level: u8) -> Option<SimplicialPair> {
    debug_assert!(j <= level && pair.i1 < pair.i2 && pair.i2 < level);
    let (a, b) = if pair.i2 < j {
        (pair.i1, pair.i2)
    } else if pair.i1 < j {
        (pair.i1, pair.i2 - 1)
    } else {
        if pair.i1 == 0 {
            return None;
        }
        (pair.i1 - 1, pair.i2 - 1)
    };
    (a < b && b < level - 1).then_some(SimplicialPair { i1: a, i2: b })
}

/// Sparse integer combination of (symmetric pair multiset) x (pair) tensors,
/// all at one simplicial level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairTensor {
    pub level: u8,
    terms: BTreeMap<(Vec<SimplicialPair>, SimplicialPair), BigInt>,
}

impl PairTensor {
    pub fn zero(level: u8) -> Self {
        PairTensor { level, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<SimplicialPair>, SimplicialPair), &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mut sym: Vec<SimplicialPair>, leg: SimplicialPair, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        sym.sort();
        let entry = self.terms.entry((sym, leg)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    /// Diagonal face: applied to every factor; a term dies when any factor
    /// degenerates.
    pub fn face(&self, j: u8) -> PairTensor {
        let mut out = PairTensor::zero(self.level - 1);
        'term: for ((sym, leg), c) in &self.terms {
            let mut new_sym = Vec::with_capacity(sym.len());
            for q in sym {
                match face(j, *q, self.level) {
                    Some(q2) => new_sym.push(q2),
                    None => continue 'term,
                }
            }
            let Some(new_leg) = face(j, *leg, self.level) else { continue };
            out.add_term(new_sym, new_leg, c);
        }
        out
    }
}

/// The symmetric-product cycle with its last factor split off as a tensor
/// leg, at level 2p.
pub fn lift_cycle(p: u32) -> Result<PairTensor, SerreError> {
    let shuffles = lift_shuffles(p)?;
    let mut out = PairTensor::zero(2 * p as u8);
    for s in shuffles {
        let mut sym = Vec::with_capacity(p as usize - 1);
        for k in 0..p as usize - 1 {
            sym.push(SimplicialPair { i1: s.perm[2 * k], i2: s.perm[2 * k + 1] });
        }
        let leg = SimplicialPair {
            i1: s.perm[2 * p as usize - 2],
            i2: s.perm[2 * p as usize - 1],
        };
        out.add_term(sym, leg, &BigInt::from(s.sign));
    }
    Ok(out)
}

/// Image of a left-normed bracket of pair symbols under
/// `[b1,..,bp] -> b2..bp (x) b1 - b1 b3..bp (x) b2`.
fn bracket_to_tensor(factors: &[SimplicialPair], level: u8) -> PairTensor {
    let mut out = PairTensor::zero(level);
    let mut rest: Vec<SimplicialPair> = factors[2..].to_vec();
    let mut sym1 = vec![factors[1]];
    sym1.extend(rest.iter().copied());
    out.add_term(sym1, factors[0], &BigInt::one());
    let mut sym2 = vec![factors[0]];
    sym2.append(&mut rest);
    out.add_term(sym2, factors[1], &-BigInt::one());
    out
}

pub struct CycleReport {
    pub p: u32,
    /// Face indices whose application vanishes (all of `0..=2p` except one).
    pub zero_faces: Vec<u8>,
    /// The unique non-vanishing face index, when exactly one exists.
    pub boundary_face: Option<u8>,
    pub boundary_terms: usize,
    /// Boundary recombines into pair brackets whose x-image equals the
    /// element, up to this global sign.
    pub matches_element: bool,
    pub sign: i8,
}

impl CycleReport {
    pub fn passed(&self) -> bool {
        self.boundary_face == Some(self.expected_boundary_face()) && self.matches_element
    }

    pub fn expected_boundary_face(&self) -> u8 {
        2 * self.p as u8 - 1
    }
}

/// Applies every face to the lifted cycle, locates the unique non-vanishing
/// boundary face, recombines the boundary into left-normed pair brackets and
/// compares the bracket image with the shuffle element.
pub fn verify_cycle(p: u32) -> Result<CycleReport, SerreError> {
    verify_cycle_of(p, &lift_cycle(p)?)
}

pub fn verify_cycle_of(p: u32, beta: &PairTensor) -> Result<CycleReport, SerreError> {
    let level = 2 * p as u8;
    let mut zero_faces = Vec::new();
    let mut nonzero: Vec<(u8, PairTensor)> = Vec::new();
    for j in 0..=level {
        let d = beta.face(j);
        if d.is_zero() {
            zero_faces.push(j);
        } else {
            nonzero.push((j, d));
        }
    }
    let (boundary_face, boundary) = match nonzero.as_slice() {
        [(j, d)] => (Some(*j), Some(d.clone())),
        _ => (None, None),
    };

    let mut matches = false;
    let mut sign = 0i8;
    if let Some(boundary) = &boundary {
        if let Some(s) = boundary_matches_element(p, boundary) {
            matches = true;
            sign = s;
        }
    }

    Ok(CycleReport {
        p,
        zero_faces,
        boundary_face,
        boundary_terms: boundary.as_ref().map_or(0, |b| b.num_terms()),
        matches_element: matches,
        sign,
    })
}

/// Solves for an integer combination of left-normed pair brackets whose
/// tensor image is the boundary, maps it to Lie brackets and compares with
/// the shuffle element. Returns the global sign on success.
fn boundary_matches_element(p: u32, boundary: &PairTensor) -> Option<i8> {
    // candidate pair symbols: everything appearing in the boundary
    let mut symbols: Vec<SimplicialPair> = Vec::new();
    for ((sym, leg), _) in boundary.terms() {
        for q in sym.iter().chain(core::iter::once(leg)) {
            if !symbols.contains(q) {
                symbols.push(*q);
            }
        }
    }
    symbols.sort();

    // candidate brackets: ordered (b1, b2) pairs with a sorted rest multiset
    let mut candidates: Vec<Vec<SimplicialPair>> = Vec::new();
    let rest_size = p as usize - 2;
    let mut rest_choice = vec![0usize; rest_size];
    loop {
        let rest: Vec<SimplicialPair> = rest_choice.iter().map(|&i| symbols[i]).collect();
        if rest_choice.windows(2).all(|w| w[0] <= w[1]) {
            for b1 in 0..symbols.len() {
                for b2 in 0..symbols.len() {
                    if b1 == b2 {
                        continue;
                    }
                    let mut f = vec![symbols[b1], symbols[b2]];
                    f.extend(rest.iter().copied());
                    candidates.push(f);
                }
            }
        }
        if rest_size == 0 {
            break;
        }
        let mut i = 0;
        loop {
            if i == rest_size {
                return finish_match(p, boundary, &candidates);
            }
            rest_choice[i] += 1;
            if rest_choice[i] < symbols.len() {
                break;
            }
            rest_choice[i] = 0;
            i += 1;
        }
    }
    finish_match(p, boundary, &candidates)
}

fn finish_match(p: u32, boundary: &PairTensor, candidates: &[Vec<SimplicialPair>]) -> Option<i8> {
    let level = boundary.level;
    // coordinates over all tensor keys
    let mut keys: BTreeMap<(Vec<SimplicialPair>, SimplicialPair), usize> = BTreeMap::new();
    let mut images: Vec<PairTensor> = Vec::new();
    for c in candidates {
        let img = bracket_to_tensor(c, level);
        for (k, _) in img.terms() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
        images.push(img);
    }
    for (k, _) in boundary.terms() {
        let next = keys.len();
        keys.entry(k.clone()).or_insert(next);
    }
    let dim = keys.len();
    let row_of = |t: &PairTensor| -> SparseVec {
        SparseVec::from_pairs(t.terms().map(|(k, c)| (keys[k], c.clone())).collect())
    };
    let mut m = IntMatrix::new(dim);
    for img in &images {
        m.push_row(row_of(img));
    }
    let coeffs = intlat::express_in_rows(&m, &row_of(boundary))?;

    // bracket image in the free Lie ring on x_0..x_{2p-2}
    let ring = element_ring(p);
    let mut cache = ring.new_cache();
    let mut image = LieElement::zero();
    for (c, factors) in coeffs.iter().zip(candidates) {
        if c.is_zero() {
            continue;
        }
        let parts: Vec<LieElement> = factors
            .iter()
            .map(|q| {
                ring.bracket(&ring.generator(q.i1 as usize), &ring.generator(q.i2 as usize))
            })
            .collect();
        let b = ring.bracket_chain(&mut cache, &parts);
        image = image.add(&b.scale(c));
    }
    let elem = serre_element(p, &ring).ok()?;
    if image == elem {
        Some(1)
    } else if image == elem.neg() {
        Some(-1)
    } else {
        None
    }
}

/// The free-group lift for p = 2 over `x_0, x_1, x_2` (with
/// `x_3 = (x_0 x_1 x_2)^-1` in the one-relator model):
/// `[[x_0,x_2],[x_0 x_1,x_2]]`.
pub fn lift_p2() -> (GroupAlphabet, GroupWord) {
    let alphabet = GroupAlphabet::of(&["x0", "x1", "x2"]);
    let x0 = GroupWord::generator(0);
    let x1 = GroupWord::generator(1);
    let x2 = GroupWord::generator(2);
    let w = GroupWord::commutator(
        &GroupWord::commutator(&x0, &x2),
        &GroupWord::commutator(&x0.mul(&x1), &x2),
    );
    (alphabet, w)
}

/// The four retractions killing one normal closure each in the one-relator
/// free group on `x_0..x_3`.
pub fn lift_p2_retractions(alphabet: &GroupAlphabet) -> Vec<LetterMap> {
    let mut maps = Vec::new();
    for i in 0..3 {
        maps.push(LetterMap::kill(alphabet, i));
    }
    // killing the eliminated generator imposes x0 x1 x2 = 1
    let x0 = GroupWord::generator(0);
    let x1 = GroupWord::generator(1);
    maps.push(LetterMap::identity(alphabet).set(2, x0.mul(&x1).inverse()));
    maps
}

fn z_alphabet() -> GroupAlphabet {
    GroupAlphabet::of(&["z0", "z1", "z2", "z3", "z4"])
}

fn comm3_conj(a: &GroupWord, b: &GroupWord, c: &GroupWord, by: &GroupWord) -> GroupWord {
    GroupWord::commutator(&GroupWord::commutator(a, b), &c.conjugate(by))
}

/// Stored lift of the p = 3 element to the free group on `z_0..z_4`: the
/// product of fourteen bracket factors.
pub fn lift_p3() -> (GroupAlphabet, GroupWord) {
    let alphabet = z_alphabet();
    let z: Vec<GroupWord> = (0..5).map(GroupWord::generator).collect();
    let c = |a: usize, b: usize| GroupWord::commutator(&z[a], &z[b]);
    // each factor is [[za,zb],[zc,zd],[ze,zf]^[za,zb]] up to inversion
    let factor = |ab: (usize, usize), cd: (usize, usize), ef: (usize, usize), inv: bool| {
        let lead = c(ab.0, ab.1);
        let f = comm3_conj(&lead, &c(cd.0, cd.1), &c(ef.0, ef.1), &lead);
        if inv {
            f.inverse()
        } else {
            f
        }
    };
    let w = [
        factor((0, 4), (2, 4), (1, 3), true),
        factor((1, 4), (2, 4), (0, 3), false),
        factor((1, 4), (2, 3), (0, 4), true),
        factor((0, 4), (2, 3), (1, 4), false),
        factor((2, 4), (0, 4), (1, 3), false),
        factor((2, 4), (1, 4), (0, 3), true),
        factor((2, 3), (1, 4), (0, 4), false),
        factor((2, 3), (0, 4), (1, 4), true),
        factor((3, 4), (1, 4), (0, 2), false),
        factor((3, 4), (0, 4), (1, 2), true),
        factor((3, 4), (2, 4), (0, 1), true),
        factor((1, 4), (3, 4), (0, 2), true),
        factor((0, 4), (3, 4), (1, 2), false),
        factor((2, 4), (3, 4), (0, 1), false),
    ]
    .into_iter()
    .fold(GroupWord::identity(), |acc, f| acc.mul(&f));
    (alphabet, w)
}

/// Stored 4-torsion representative in the same coordinates: the product of
/// fifteen doubly nested commutators.
pub fn lift_p4() -> (GroupAlphabet, GroupWord) {
    let alphabet = z_alphabet();
    let z: Vec<GroupWord> = (0..5).map(GroupWord::generator).collect();
    let c = |a: usize, b: usize| GroupWord::commutator(&z[a], &z[b]);
    let cc = |ab: (usize, usize), cd: (usize, usize)| {
        GroupWord::commutator(&c(ab.0, ab.1), &c(cd.0, cd.1))
    };
    let pair = |x: GroupWord, y: GroupWord| GroupWord::commutator(&x, &y);

    let factors: Vec<GroupWord> = vec![
        pair(cc((3, 1), (3, 2)), cc((4, 0), (4, 2))),
        pair(cc((4, 1), (4, 2)), cc((3, 0), (3, 2))),
        pair(
            GroupWord::commutator(&cc((4, 1), (4, 2)), &cc((4, 0), (4, 2))),
            cc((3, 2), (3, 1)),
        ),
        pair(
            cc((3, 1), (3, 2)),
            GroupWord::commutator(&cc((4, 2), (4, 0)), &cc((4, 2), (4, 1))),
        ),
        pair(cc((3, 2), (3, 1)), cc((4, 2), (4, 0))),
        pair(cc((4, 2), (4, 1)), cc((3, 2), (3, 0))),
        pair(cc((4, 2), (3, 0)), cc((4, 2), (3, 1))),
        pair(cc((4, 1), (3, 2)), cc((4, 2), (3, 0))),
        pair(cc((4, 2), (3, 1)), cc((4, 0), (3, 2))),
        pair(cc((4, 0), (3, 2)), cc((4, 1), (3, 2))),
        pair(cc((4, 2), (3, 1)), cc((4, 3), (2, 0))),
        pair(cc((4, 3), (2, 1)), cc((4, 2), (3, 0))),
        pair(cc((4, 3), (2, 0)), cc((4, 1), (3, 2))),
        pair(cc((4, 0), (3, 2)), cc((4, 3), (2, 1))),
        pair(cc((4, 3), (2, 0)), cc((4, 3), (2, 1))),
    ];
    let w = factors.into_iter().fold(GroupWord::identity(), |acc, f| acc.mul(&f));
    (alphabet, w)
}

/// The six retractions of the free group on `z_0..z_4` onto the quotients
/// killing one simplicial normal closure each: kill `z_0`, merge `z_i` into
/// `z_{i-1}` for `i = 1..4`, kill `z_4`.
pub fn z_retractions(alphabet: &GroupAlphabet) -> Vec<LetterMap> {
    let mut maps = Vec::new();
    maps.push(LetterMap::kill(alphabet, 0));
    for i in 1..=4 {
        maps.push(LetterMap::identity(alphabet).set(i, GroupWord::generator(i - 1)));
    }
    maps.push(LetterMap::kill(alphabet, 4));
    maps
}

/// True when the word maps to the identity under every listed retraction.
pub fn vanishes_under_all(w: &GroupWord, maps: &[LetterMap]) -> bool {
    maps.iter().all(|m| m.apply(w).map(|img| img.is_identity()).unwrap_or(false))
}

pub fn format_pair(q: &SimplicialPair) -> String {
    alloc::format!("({} {})", q.i1, q.i2)
}
