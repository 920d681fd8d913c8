//! Nilpotent quotients of finitely presented Lie rings over Z.
//!
//! A presentation consists of weighted generators and relators; the quotient
//! by the ideal spanned by all brackets of weight above `c`, together with
//! the relator ideal, is computed class by class. Each step extends the
//! current consistent presentation by a central layer: every non-defining
//! table entry (commutator, torsion relation, generator image) receives a
//! tail in the new layer, every weight-(k+1) bracket pair and presentation
//! generator contributes a fresh symbol, and the Jacobi instances, the
//! torsion-bracket compatibilities and the relators then cut the layer down
//! by an integer echelon reduction. Eliminated symbols are folded back into
//! the tables; surviving symbols become pc generators, pinned as definitions
//! by the entry that introduced them.
//!
//! Inhomogeneous relators (sides of different weights) are the interesting
//! case: they are re-evaluated at every class, so torsion and collapses keep
//! propagating downward as the class grows.
//!
//! The [`oracle`] submodule computes the same quotient by brute force in the
//! truncated free ring (relator-ideal lattice over the full Lyndon basis),
//! feasible only for small free covers; the two paths are compared in tests.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::expr::{LieEval, LieExpr, Relator};
use crate::freelie::{Generator, LieRing};
use crate::intlat::{self, IntMatrix, Lattice, SparseVec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiePresentation {
    pub gens: Vec<Generator>,
    pub relators: Vec<Relator>,
}

impl LiePresentation {
    pub fn new(gens: Vec<Generator>, relators: Vec<Relator>) -> Self {
        LiePresentation { gens, relators }
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct NqLimits {
    pub max_pc_gens: usize,
    pub max_coeff_bits: u64,
}

impl Default for NqLimits {
    fn default() -> Self {
        NqLimits { max_pc_gens: 20_000, max_coeff_bits: 1 << 20 }
    }
}

#[derive(Debug, Clone)]
pub enum NqError {
    /// A configured cap was exceeded; carries the last completed class.
    Resource { class_reached: u32, detail: String },
    /// Internal invariant violation (a genuine bug, surfaced loudly).
    Internal(String),
}

impl fmt::Display for NqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NqError::Resource { class_reached, detail } => {
                write!(f, "resource limit after class {class_reached}: {detail}")
            }
            NqError::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

/// What pins a pc generator: the image of a presentation generator, a
/// commutator entry, or the tail it was introduced as.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcDef {
    Image(usize),
    Comm(usize, usize),
    CommTail(usize, usize),
    PowerTail(usize),
    ImageTail(usize),
}

#[derive(Clone, Debug)]
pub struct PcGen {
    pub weight: u32,
    /// 0 for infinite order; otherwise `order * gen = power tail`.
    pub order: BigInt,
    pub def: PcDef,
}

/// Consistent weighted polycyclic-style presentation of `L / γ_{class+1}`.
#[derive(Clone)]
pub struct NilpotentPresentation {
    pres: LiePresentation,
    class: u32,
    gens: Vec<PcGen>,
    power_tails: Vec<SparseVec>,
    power_exact: Vec<bool>,
    comm: BTreeMap<(usize, usize), SparseVec>,
    comm_exact: BTreeSet<(usize, usize)>,
    images: Vec<SparseVec>,
    image_exact: Vec<bool>,
}

/// Extension symbols introduced when passing from class k to k+1.
#[derive(Clone, Debug)]
enum ExtSym {
    CommTail(usize, usize),
    PowerTail(usize),
    ImageTail(usize),
    Image(usize),
    Comm(usize, usize),
}

enum ColStatus {
    Free,
    Torsion { order: BigInt, rest: SparseVec },
    Eliminated { rest: SparseVec },
}

pub fn nilpotent_quotient(
    pres: &LiePresentation,
    class: u32,
    limits: &NqLimits,
) -> Result<NilpotentPresentation, NqError> {
    assert!(class >= 1);
    let mut nq = NilpotentPresentation {
        pres: pres.clone(),
        class: 0,
        gens: Vec::new(),
        power_tails: Vec::new(),
        power_exact: Vec::new(),
        comm: BTreeMap::new(),
        comm_exact: BTreeSet::new(),
        images: vec![SparseVec::new(); pres.gens.len()],
        image_exact: vec![false; pres.gens.len()],
    };
    for _ in 0..class {
        nq = nq.extend(limits)?;
    }
    Ok(nq)
}

/// `expr` lies in the span of weight >= n brackets modulo the relator ideal,
/// decided in the class n-1 quotient.
pub fn in_gamma(
    expr: &LieExpr,
    n: u32,
    pres: &LiePresentation,
    limits: &NqLimits,
) -> Result<bool, NqError> {
    assert!(n >= 2);
    let nq = nilpotent_quotient(pres, n - 1, limits)?;
    Ok(nq.image(expr).is_zero())
}

impl NilpotentPresentation {
    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn presentation(&self) -> &LiePresentation {
        &self.pres
    }

    pub fn pc_gens(&self) -> &[PcGen] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn power_tail(&self, i: usize) -> &SparseVec {
        &self.power_tails[i]
    }

    pub fn comm_entry(&self, i: usize, j: usize) -> SparseVec {
        debug_assert!(i > j);
        self.comm.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Collected normal form: torsion coefficients reduced into `[0, order)`
    /// with tails propagated rightward.
    pub fn normalize(&self, row: &SparseVec) -> SparseVec {
        // fast path: already collected
        let reduced = row.iter().all(|(c, v)| {
            let order = &self.gens[c].order;
            order.is_zero() || (!v.is_negative() && v < order)
        });
        if reduced {
            return row.clone();
        }
        let mut m: BTreeMap<usize, BigInt> = row.iter().map(|(c, v)| (c, v.clone())).collect();
        self.normalize_map(&mut m);
        SparseVec::from_pairs(m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    fn normalize_map(&self, m: &mut BTreeMap<usize, BigInt>) {
        let mut cursor = 0usize;
        while let Some((&c, v)) = m.range(cursor..).next() {
            let v = v.clone();
            cursor = c + 1;
            if v.is_zero() {
                m.remove(&c);
                continue;
            }
            let order = &self.gens[c].order;
            if order.is_zero() {
                continue;
            }
            let q = v.div_floor(order);
            if q.is_zero() {
                continue;
            }
            let r = &v - &q * order;
            if r.is_zero() {
                m.remove(&c);
            } else {
                m.insert(c, r);
            }
            for (tc, tv) in self.power_tails[c].iter() {
                debug_assert!(tc > c);
                let e = m.entry(tc).or_insert_with(BigInt::zero);
                *e += tv * &q;
            }
        }
    }

    fn comm_row(&self, i: usize, j: usize) -> SparseVec {
        match self.comm_ref(i, j) {
            Some((row, 1)) => row.clone(),
            Some((row, _)) => row.neg(),
            None => SparseVec::new(),
        }
    }

    fn comm_ref(&self, i: usize, j: usize) -> Option<(&SparseVec, i8)> {
        if i == j {
            return None;
        }
        if i > j {
            self.comm.get(&(i, j)).map(|r| (r, 1))
        } else {
            self.comm.get(&(j, i)).map(|r| (r, -1))
        }
    }

    pub fn bracket_rows(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (i, ca) in a.iter() {
            let wi = self.gens[i].weight;
            for (j, cb) in b.iter() {
                if wi + self.gens[j].weight > self.class {
                    continue;
                }
                let Some((row, sign)) = self.comm_ref(i, j) else { continue };
                let k = if sign < 0 { -(ca * cb) } else { ca * cb };
                if k.is_zero() {
                    continue;
                }
                for (t, v) in row.iter() {
                    let e = acc.entry(t).or_insert_with(BigInt::zero);
                    *e += v * &k;
                }
            }
        }
        self.normalize_map(&mut acc);
        SparseVec::from_pairs(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn image(&self, expr: &LieExpr) -> SparseVec {
        self.eval(expr)
    }

    /// Lattice of the additive relations (the torsion rows), for order
    /// computations.
    fn relation_lattice(&self) -> Lattice {
        let mut m = IntMatrix::new(self.gens.len());
        for (i, g) in self.gens.iter().enumerate() {
            if g.order.is_zero() {
                continue;
            }
            let mut row = self.power_tails[i].neg();
            row = SparseVec::single(i, g.order.clone()).add(&row);
            m.push_row(row);
        }
        intlat::hnf(&m)
    }

    /// Least k >= 1 with k * row = 0 in the quotient, 0 for infinite order.
    /// The zero class is the only class of order 1.
    pub fn order_of_row(&self, row: &SparseVec) -> BigInt {
        match intlat::coset_order(&self.relation_lattice(), row) {
            Some(k) => k,
            None => BigInt::zero(),
        }
    }

    pub fn order_in_quotient(&self, expr: &LieExpr) -> BigInt {
        self.order_of_row(&self.image(expr))
    }

    /// Elementary divisors of the weight-k layer: nontrivial torsion first,
    /// one 0 per free factor.
    pub fn divisors_at_class(&self, k: u32) -> Vec<BigInt> {
        let idx: Vec<usize> =
            (0..self.gens.len()).filter(|&i| self.gens[i].weight == k).collect();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut m = IntMatrix::new(idx.len());
        for &i in &idx {
            if self.gens[i].order.is_zero() {
                continue;
            }
            // tail entries of the same weight stay in the layer
            let mut pairs = vec![(pos[&i], self.gens[i].order.clone())];
            for (tc, tv) in self.power_tails[i].iter() {
                if let Some(&p) = pos.get(&tc) {
                    pairs.push((p, -tv));
                }
            }
            m.push_row(SparseVec::from_pairs(pairs));
        }
        let sub = intlat::hnf(&m);
        intlat::quotient_invariants(&Lattice::full(idx.len()), &sub)
            .expect("layer relations live in the layer")
    }

    /// Re-derives every defining identity: Jacobi on all triples, torsion
    /// bracket compatibility, and the relators.
    pub fn check_consistency(&self) -> Result<(), String> {
        for i in 0..self.gens.len() {
            for j in 0..i {
                for l in 0..j {
                    let w = self.gens[i].weight + self.gens[j].weight + self.gens[l].weight;
                    if w > self.class {
                        continue;
                    }
                    if !self.jacobi_row(i, j, l).is_zero() {
                        return Err(alloc::format!("jacobi({i},{j},{l}) nonzero"));
                    }
                }
            }
        }
        for i in 0..self.gens.len() {
            if self.gens[i].order.is_zero() {
                continue;
            }
            for j in 0..self.gens.len() {
                if self.gens[i].weight + self.gens[j].weight > self.class {
                    continue;
                }
                // the diagonal instance [a_i, order*a_i] = 0 is a real
                // constraint, not a formality
                if !self.power_compat_row(i, j).is_zero() {
                    return Err(alloc::format!("torsion bracket compat ({i},{j}) nonzero"));
                }
            }
        }
        for (t, r) in self.pres.relators.iter().enumerate() {
            if !r.value_in(self).is_zero() {
                return Err(alloc::format!("relator {t} has nonzero image"));
            }
        }
        Ok(())
    }

    fn jacobi_row(&self, i: usize, j: usize, l: usize) -> SparseVec {
        let ei = SparseVec::unit(i);
        let ej = SparseVec::unit(j);
        let el = SparseVec::unit(l);
        let a = self.bracket_rows(&self.bracket_rows(&ei, &ej), &el);
        let b = self.bracket_rows(&self.bracket_rows(&ej, &el), &ei);
        let c = self.bracket_rows(&self.bracket_rows(&el, &ei), &ej);
        self.normalize(&a.add(&b).add(&c))
    }

    fn power_compat_row(&self, i: usize, j: usize) -> SparseVec {
        // [order_i * a_i, a_j] = order_i * [a_i, a_j]
        let lhs = self.bracket_rows(&self.power_tails[i], &SparseVec::unit(j));
        let rhs = self.comm_row(i, j).scale(&self.gens[i].order);
        self.normalize(&lhs.sub(&rhs))
    }

    fn max_bits(&self) -> u64 {
        let mut bits = 0;
        for r in self.comm.values() {
            bits = bits.max(r.max_bits());
        }
        for r in self.power_tails.iter().chain(self.images.iter()) {
            bits = bits.max(r.max_bits());
        }
        for g in &self.gens {
            bits = bits.max(g.order.bits());
        }
        bits
    }

    /// One central extension step, from class k to k+1.
    fn extend(&self, limits: &NqLimits) -> Result<NilpotentPresentation, NqError> {
        let k = self.class;
        let new_class = k + 1;
        let n_old = self.gens.len();

        // 1. extension symbols, tails first so the echelon prefers
        //    eliminating bookkeeping over definitions
        let mut ext: Vec<ExtSym> = Vec::new();
        for (&(i, j), _) in self.comm.iter() {
            if !self.comm_exact.contains(&(i, j)) {
                ext.push(ExtSym::CommTail(i, j));
            }
        }
        for i in 0..n_old {
            if !self.gens[i].order.is_zero() && !self.power_exact[i] {
                ext.push(ExtSym::PowerTail(i));
            }
        }
        for (g, gen) in self.pres.gens.iter().enumerate() {
            if gen.weight <= k && !self.image_exact[g] {
                ext.push(ExtSym::ImageTail(g));
            }
        }
        for (g, gen) in self.pres.gens.iter().enumerate() {
            if gen.weight == new_class {
                ext.push(ExtSym::Image(g));
            }
        }
        for i in 0..n_old {
            for j in 0..i {
                if self.gens[i].weight + self.gens[j].weight == new_class {
                    ext.push(ExtSym::Comm(i, j));
                }
            }
        }
        let n_ext = ext.len();

        // 2. provisional presentation carrying the free central layer
        let mut work = self.clone();
        work.class = new_class;
        for (t, sym) in ext.iter().enumerate() {
            let col = n_old + t;
            work.gens.push(PcGen {
                weight: new_class,
                order: BigInt::zero(),
                def: match sym {
                    ExtSym::CommTail(i, j) => PcDef::CommTail(*i, *j),
                    ExtSym::PowerTail(i) => PcDef::PowerTail(*i),
                    ExtSym::ImageTail(g) => PcDef::ImageTail(*g),
                    ExtSym::Image(g) => PcDef::Image(*g),
                    ExtSym::Comm(i, j) => PcDef::Comm(*i, *j),
                },
            });
            work.power_tails.push(SparseVec::new());
            work.power_exact.push(false);
            match sym {
                ExtSym::CommTail(i, j) => {
                    let e = work.comm.entry((*i, *j)).or_default();
                    *e = e.add(&SparseVec::unit(col));
                }
                ExtSym::PowerTail(i) => {
                    work.power_tails[*i] = work.power_tails[*i].add(&SparseVec::unit(col));
                }
                ExtSym::ImageTail(g) => {
                    work.images[*g] = work.images[*g].add(&SparseVec::unit(col));
                }
                ExtSym::Image(g) => {
                    work.images[*g] = SparseVec::unit(col);
                }
                ExtSym::Comm(i, j) => {
                    work.comm.insert((*i, *j), SparseVec::unit(col));
                }
            }
        }

        // 3. constraints: everything that must vanish in the extension
        let mut constraints: Vec<SparseVec> = Vec::new();
        let mut push = |row: SparseVec| -> Result<(), NqError> {
            if row.is_zero() {
                return Ok(());
            }
            if let Some((c, _)) = row.leading() {
                if c < n_old {
                    return Err(NqError::Internal(
                        "consistency defect outside the new layer".to_string(),
                    ));
                }
            }
            constraints.push(SparseVec::from_pairs(
                row.iter().map(|(c, v)| (c - n_old, v.clone())).collect(),
            ));
            Ok(())
        };

        let comm_zero = |a: usize, b: usize| work.comm_ref(a, b).map_or(true, |(r, _)| r.is_zero());
        for i in 0..n_old {
            for j in 0..i {
                let wij = work.gens[i].weight + work.gens[j].weight;
                if wij >= new_class {
                    continue;
                }
                for l in 0..j {
                    if wij + work.gens[l].weight > new_class {
                        continue;
                    }
                    if comm_zero(i, j) && comm_zero(j, l) && comm_zero(i, l) {
                        continue;
                    }
                    push(work.jacobi_row(i, j, l))?;
                }
            }
        }
        for i in 0..n_old {
            if work.gens[i].order.is_zero() {
                continue;
            }
            for j in 0..n_old {
                if work.gens[i].weight + work.gens[j].weight > new_class {
                    continue;
                }
                push(work.power_compat_row(i, j))?;
            }
        }
        for r in &self.pres.relators {
            push(r.value_in(&work))?;
        }

        // 4. echelon reduction of the layer
        let mut m = IntMatrix::new(n_ext);
        for c in constraints {
            m.push_row(c);
        }
        let layer = intlat::row_echelon(&m);

        let mut status: Vec<ColStatus> = (0..n_ext).map(|_| ColStatus::Free).collect();
        for row in &layer {
            let (col, pivot) = row.leading().map(|(c, v)| (c, v.clone())).unwrap();
            let rest = SparseVec::from_pairs(
                row.iter().filter(|(c, _)| *c != col).map(|(c, v)| (c, v.clone())).collect(),
            );
            status[col] = if pivot.is_one() {
                ColStatus::Eliminated { rest }
            } else {
                ColStatus::Torsion { order: pivot, rest }
            };
        }

        // 5. final generator indices for surviving symbols
        let mut final_idx = vec![usize::MAX; n_ext];
        let mut next = n_old;
        for (c, st) in status.iter().enumerate() {
            if !matches!(st, ColStatus::Eliminated { .. }) {
                final_idx[c] = next;
                next += 1;
            }
        }
        let n_new = next;
        if n_new > limits.max_pc_gens {
            return Err(NqError::Resource {
                class_reached: k,
                detail: alloc::format!("{n_new} pc generators exceed cap {}", limits.max_pc_gens),
            });
        }

        // resolve ext columns into the final generator space
        let mut resolved = vec![SparseVec::new(); n_ext];
        for c in (0..n_ext).rev() {
            resolved[c] = match &status[c] {
                ColStatus::Free | ColStatus::Torsion { .. } => SparseVec::unit(final_idx[c]),
                ColStatus::Eliminated { rest } => {
                    let mut acc = SparseVec::new();
                    for (c2, v) in rest.iter() {
                        acc = acc.axpy(&-v, &resolved[c2]);
                    }
                    acc
                }
            };
        }
        let map_row = |row: &SparseVec| -> SparseVec {
            let mut acc = SparseVec::from_pairs(
                row.iter().filter(|(c, _)| *c < n_old).map(|(c, v)| (c, v.clone())).collect(),
            );
            for (c, v) in row.iter() {
                if c >= n_old {
                    acc = acc.axpy(v, &resolved[c - n_old]);
                }
            }
            acc
        };

        // 6. assemble the extended presentation
        let mut out = NilpotentPresentation {
            pres: self.pres.clone(),
            class: new_class,
            gens: self.gens.clone(),
            power_tails: work.power_tails[..n_old].iter().map(&map_row).collect(),
            power_exact: self.power_exact.clone(),
            comm: BTreeMap::new(),
            comm_exact: self.comm_exact.clone(),
            images: work.images.iter().map(&map_row).collect(),
            image_exact: self.image_exact.clone(),
        };
        for (c, sym) in ext.iter().enumerate() {
            let (order, rest) = match &status[c] {
                ColStatus::Free => (BigInt::zero(), SparseVec::new()),
                ColStatus::Torsion { order, rest } => (order.clone(), rest.clone()),
                ColStatus::Eliminated { .. } => continue,
            };
            out.gens.push(work.gens[n_old + c].clone());
            let tail = {
                let mut acc = SparseVec::new();
                for (c2, v) in rest.iter() {
                    acc = acc.axpy(&-v, &resolved[c2]);
                }
                acc
            };
            out.gens.last_mut().unwrap().order = order;
            out.power_tails.push(tail);
            out.power_exact.push(false);
            match sym {
                ExtSym::CommTail(i, j) | ExtSym::Comm(i, j) => {
                    out.comm_exact.insert((*i, *j));
                }
                ExtSym::PowerTail(i) => {
                    out.power_exact[*i] = true;
                }
                ExtSym::ImageTail(g) | ExtSym::Image(g) => {
                    out.image_exact[*g] = true;
                }
            }
        }
        for (&(i, j), row) in work.comm.iter() {
            out.comm.insert((i, j), map_row(row));
        }

        // normal forms throughout (new torsion may reduce folded entries)
        let comm_keys: Vec<(usize, usize)> = out.comm.keys().cloned().collect();
        for key in comm_keys {
            let row = out.comm[&key].clone();
            let n = out.normalize(&row);
            out.comm.insert(key, n);
        }
        for i in 0..out.power_tails.len() {
            out.power_tails[i] = out.normalize(&out.power_tails[i]);
        }
        for g in 0..out.images.len() {
            out.images[g] = out.normalize(&out.images[g]);
        }

        let bits = out.max_bits();
        if bits > limits.max_coeff_bits {
            return Err(NqError::Resource {
                class_reached: k,
                detail: alloc::format!("coefficients reach {bits} bits, cap {}", limits.max_coeff_bits),
            });
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, g) in self.gens.iter().enumerate() {
            s.push_str(&alloc::format!(
                "a{} weight {} order {}\n",
                i + 1,
                g.weight,
                g.order
            ));
        }
        s
    }
}

impl LieEval for NilpotentPresentation {
    type Elem = SparseVec;

    fn zero_elem(&self) -> SparseVec {
        SparseVec::new()
    }

    fn gen_elem(&self, idx: usize) -> SparseVec {
        self.images[idx].clone()
    }

    fn add_elem(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.normalize(&a.add(b))
    }

    fn scale_elem(&self, k: &BigInt, a: &SparseVec) -> SparseVec {
        self.normalize(&a.scale(k))
    }

    fn bracket_elem(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.bracket_rows(a, b)
    }
}

/// Brute-force construction of the same quotient inside the truncated free
/// ring: the relator ideal as one lattice over the full Lyndon basis.
pub mod oracle {
    use super::*;
    use crate::freelie::LieElement;

    pub struct FreeCover {
        pub ring: LieRing,
        pub lattice: Lattice,
        class: u32,
    }

    pub fn free_cover_quotient(
        pres: &LiePresentation,
        class: u32,
        max_basis: usize,
    ) -> Result<FreeCover, NqError> {
        let ring = LieRing::new(pres.gens.clone(), class);
        let dim = ring.basis().len();
        if dim > max_basis {
            return Err(NqError::Resource {
                class_reached: 0,
                detail: alloc::format!("free cover has {dim} basis elements, cap {max_basis}"),
            });
        }
        let elem_row = |e: &LieElement| -> SparseVec {
            SparseVec::from_pairs(e.terms().map(|(i, c)| (i, c.clone())).collect())
        };
        let mut rows = IntMatrix::new(dim);
        let mut level: Vec<LieElement> = pres
            .relators
            .iter()
            .map(|r| r.value_in(&ring))
            .filter(|e| !e.is_zero())
            .collect();
        let mut cache = ring.new_cache();
        while !level.is_empty() {
            // reduce the level before bracketing on: same span, fewer rows
            let mut lm = IntMatrix::new(dim);
            for e in &level {
                lm.push_row(elem_row(e));
            }
            let reduced = intlat::hnf(&lm);
            let elems: Vec<LieElement> = reduced
                .basis()
                .rows()
                .iter()
                .map(|r| {
                    let mut e = LieElement::zero();
                    for (i, c) in r.iter() {
                        e.add_term(i, c);
                    }
                    e
                })
                .collect();
            let mut next = Vec::new();
            for e in &elems {
                rows.push_row(elem_row(e));
                for g in 0..pres.gens.len() {
                    let b = ring.bracket_with(&mut cache, e, &ring.generator(g));
                    if !b.is_zero() {
                        next.push(b);
                    }
                }
            }
            level = next;
        }
        Ok(FreeCover { ring, lattice: intlat::hnf(&rows), class })
    }

    impl FreeCover {
        pub fn class(&self) -> u32 {
            self.class
        }

        fn reduce(&self, v: &SparseVec) -> SparseVec {
            let mut rest = v.clone();
            for row in self.lattice.basis().rows() {
                let (col, pv) = row.leading().unwrap();
                let val = rest.get(col);
                if val.is_zero() {
                    continue;
                }
                let q = val.div_floor(pv);
                if !q.is_zero() {
                    rest = rest.axpy(&-q, row);
                }
            }
            rest
        }

        pub fn image(&self, expr: &LieExpr) -> SparseVec {
            let e = self.ring.eval(expr);
            self.reduce(&SparseVec::from_pairs(
                e.terms().map(|(i, c)| (i, c.clone())).collect(),
            ))
        }

        pub fn order_in_quotient(&self, expr: &LieExpr) -> BigInt {
            let e = self.ring.eval(expr);
            let row = SparseVec::from_pairs(e.terms().map(|(i, c)| (i, c.clone())).collect());
            match intlat::coset_order(&self.lattice, &row) {
                Some(k) => k,
                None => BigInt::zero(),
            }
        }

        /// Layer invariants at weight k: the quotient of the weight-k block
        /// by the projection of the relator ideal plus all deeper blocks.
        pub fn divisors_at_class(&self, k: u32) -> Vec<BigInt> {
            let block = self.ring.weight_block(k);
            let dim_total = self.ring.basis().len();
            let mut m = IntMatrix::new(dim_total);
            for r in self.lattice.basis().rows() {
                m.push_row(r.clone());
            }
            for b in block.end..dim_total {
                m.push_row(SparseVec::unit(b));
            }
            let h = intlat::hnf(&m);
            let mut proj = IntMatrix::new(block.len());
            for row in h.basis().rows() {
                let (col, _) = row.leading().unwrap();
                if col < block.start || col >= block.end {
                    continue;
                }
                proj.push_row(SparseVec::from_pairs(
                    row.iter()
                        .filter(|(c, _)| *c < block.end)
                        .map(|(c, v)| (c - block.start, v.clone()))
                        .collect(),
                ));
            }
            let sub = intlat::hnf(&proj);
            intlat::quotient_invariants(&Lattice::full(block.len()), &sub)
                .expect("projected relations live in the layer")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free2() -> LiePresentation {
        LiePresentation::new(
            vec![Generator::new("x", 1), Generator::new("y", 1)],
            vec![],
        )
    }

    #[test]
    fn free_rank2_class2() {
        let nq = nilpotent_quotient(&free2(), 2, &NqLimits::default()).unwrap();
        assert_eq!(nq.num_gens(), 3);
        assert!(nq.pc_gens().iter().all(|g| g.order.is_zero()));
        // [a2, a1] = a3
        let b = nq.bracket_rows(&SparseVec::unit(1), &SparseVec::unit(0));
        assert_eq!(b, SparseVec::unit(2).neg().scale(&BigInt::from(-1)));
        nq.check_consistency().unwrap();
    }

    #[test]
    fn order_four_from_inhomogeneous_relator() {
        // 2x = [x, y] forces 2[x,y] = 0 and x of order 4 at class 2
        let pres = LiePresentation::new(
            vec![Generator::new("x", 1), Generator::new("y", 1)],
            vec![Relator {
                lhs: LieExpr::scaled(2, LieExpr::gen(0)),
                rhs: LieExpr::bracket(vec![LieExpr::gen(0), LieExpr::gen(1)]),
            }],
        );
        let nq = nilpotent_quotient(&pres, 2, &NqLimits::default()).unwrap();
        nq.check_consistency().unwrap();
        let x = LieExpr::gen(0);
        assert_eq!(nq.order_in_quotient(&x), BigInt::from(4));

        let cover = oracle::free_cover_quotient(&pres, 2, 2000).unwrap();
        assert_eq!(cover.order_in_quotient(&x), BigInt::from(4));
        for k in 1..=2 {
            assert_eq!(nq.divisors_at_class(k), cover.divisors_at_class(k));
        }
    }

    #[test]
    fn relators_have_zero_image() {
        let pres = LiePresentation::new(
            vec![Generator::new("x", 1), Generator::new("y", 1)],
            vec![Relator {
                lhs: LieExpr::scaled(2, LieExpr::gen(0)),
                rhs: LieExpr::bracket(vec![LieExpr::gen(0), LieExpr::gen(1)]),
            }],
        );
        let nq = nilpotent_quotient(&pres, 3, &NqLimits::default()).unwrap();
        let v = pres.relators[0].value_in(&nq);
        assert!(v.is_zero());
    }

    #[test]
    fn self_bracket_is_zero() {
        let nq = nilpotent_quotient(&free2(), 3, &NqLimits::default()).unwrap();
        let g = nq.gen_elem(0);
        assert!(nq.bracket_rows(&g, &g).is_zero());
    }

    #[test]
    fn weighted_generator_enters_at_its_weight() {
        let pres = LiePresentation::new(
            vec![Generator::new("x", 1), Generator::new("y", 3)],
            vec![],
        );
        let nq = nilpotent_quotient(&pres, 2, &NqLimits::default()).unwrap();
        // y is invisible below weight 3
        assert!(nq.image(&LieExpr::gen(1)).is_zero());
        let nq = nilpotent_quotient(&pres, 3, &NqLimits::default()).unwrap();
        assert!(!nq.image(&LieExpr::gen(1)).is_zero());
        nq.check_consistency().unwrap();
    }
}
