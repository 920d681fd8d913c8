//! Exact unbounded-integer matrices and row lattices: Hermite and Smith
//! normal forms, membership certificates, intersections and quotient
//! invariants.
//!
//! Rows are kept sparse (sorted index/value pairs). Hermite normal forms are
//! canonical: pivot columns strictly increase, pivots are positive, and every
//! entry above a pivot is reduced into `[0, pivot)`, so two spanning sets of
//! the same lattice always produce identical bases.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    DimensionMismatch { expected: usize, got: usize },
    NotSubLattice,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DimensionMismatch { expected, got } => {
                write!(f, "ambient dimension mismatch: expected {expected}, got {got}")
            }
            LatticeError::NotSubLattice => write!(f, "basis row is not a member of the ambient lattice"),
        }
    }
}

/// Sparse integer vector: sorted `(column, value)` pairs, no explicit zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(c, v)| (c, v))).finish()
    }
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, BigInt::one())] }
    }

    pub fn single(col: usize, value: BigInt) -> Self {
        if value.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(col, value)] }
        }
    }

    /// Builds from unsorted pairs, merging duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, BigInt)>) -> Self {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, BigInt)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(row: &[BigInt]) -> Self {
        SparseVec {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, ncols: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); ncols];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn get(&self, col: usize) -> BigInt {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries.iter().map(|(c, v)| (*c, v))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (*c, v * k)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (*c, -v)).collect(),
        }
    }

    /// `self + k * other`, by sorted merge.
    pub fn axpy(&self, k: &BigInt, other: &Self) -> Self {
        if k.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            match (self.entries.get(i), other.entries.get(j)) {
                (Some((ca, va)), Some((cb, vb))) => {
                    if ca < cb {
                        out.push((*ca, va.clone()));
                        i += 1;
                    } else if cb < ca {
                        out.push((*cb, vb * k));
                        j += 1;
                    } else {
                        let v = va + vb * k;
                        if !v.is_zero() {
                            out.push((*ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, vb * k));
                    j += 1;
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&BigInt::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-BigInt::one(), other)
    }

    /// Largest entry magnitude in bits, for resource accounting.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|(_, v)| v.bits()).max().unwrap_or(0)
    }
}

/// A matrix of exact integers, stored as sparse rows of a fixed width.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: Vec<SparseVec>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(ncols: usize) -> Self {
        IntMatrix { rows: Vec::new(), ncols }
    }

    pub fn from_rows(rows: Vec<SparseVec>, ncols: usize) -> Self {
        for r in &rows {
            debug_assert!(r.max_col().map_or(true, |c| c < ncols));
        }
        IntMatrix { rows, ncols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        IntMatrix {
            rows: rows
                .iter()
                .map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(c, v)| (c, BigInt::from(*v))).collect()))
                .collect(),
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n).map(SparseVec::unit).collect(),
            ncols: n,
        }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        debug_assert!(row.max_col().map_or(true, |c| c < self.ncols));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i].get(j)
    }

    /// `v * self` for a sparse coefficient vector over the rows.
    pub fn left_mul(&self, coeffs: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (r, k) in coeffs.iter() {
            acc = acc.axpy(k, &self.rows[r]);
        }
        acc
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows());
        IntMatrix {
            rows: self.rows.iter().map(|r| other.left_mul(r)).collect(),
            ncols: other.ncols,
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter() {
                cols[c].push((i, v.clone()));
            }
        }
        IntMatrix {
            rows: cols.into_iter().map(SparseVec::from_pairs).collect(),
            ncols: self.rows.len(),
        }
    }
}

/// Incremental row echelonization over Z: the working form of HNF.
///
/// Each pivot column holds one row whose leading entry is positive; inserting
/// a row reduces it against existing pivots with exact gcd steps.
struct Echelon {
    pivots: Vec<(usize, SparseVec, SparseVec)>, // (col, row, companion) sorted by col
    track: bool,
    kernel: Vec<SparseVec>,
}

impl Echelon {
    fn new(track: bool) -> Self {
        Echelon { pivots: Vec::new(), track, kernel: Vec::new() }
    }

    fn find(&self, col: usize) -> Result<usize, usize> {
        self.pivots.binary_search_by_key(&col, |(c, _, _)| *c)
    }

    fn insert(&mut self, mut row: SparseVec, mut companion: SparseVec) {
        loop {
            let Some((col, val)) = row.leading().map(|(c, v)| (c, v.clone())) else {
                if self.track && !companion.is_zero() {
                    self.kernel.push(companion);
                }
                return;
            };
            match self.find(col) {
                Err(pos) => {
                    if val.is_negative() {
                        row = row.neg();
                        companion = companion.neg();
                    }
                    self.pivots.insert(pos, (col, row, companion));
                    return;
                }
                Ok(pos) => {
                    let pv = self.pivots[pos].1.leading().unwrap().1.clone();
                    if (&val % &pv).is_zero() {
                        let q = -(&val / &pv);
                        row = row.axpy(&q, &self.pivots[pos].1);
                        if self.track {
                            companion = companion.axpy(&q, &self.pivots[pos].2);
                        }
                    } else {
                        // gcd combine: replace the pivot by the gcd row and
                        // continue with the complementary combination.
                        let ext = pv.extended_gcd(&val);
                        let (g, s, t) = (ext.gcd, ext.x, ext.y);
                        let new_pivot = self.pivots[pos].1.scale(&s).axpy(&t, &row);
                        let new_row = row.scale(&(&pv / &g)).axpy(&-(&val / &g), &self.pivots[pos].1);
                        let (new_pc, new_rc) = if self.track {
                            (
                                self.pivots[pos].2.scale(&s).axpy(&t, &companion),
                                companion.scale(&(&pv / &g)).axpy(&-(&val / &g), &self.pivots[pos].2),
                            )
                        } else {
                            (SparseVec::new(), SparseVec::new())
                        };
                        self.pivots[pos].1 = new_pivot;
                        self.pivots[pos].2 = new_pc;
                        row = new_row;
                        companion = new_rc;
                    }
                }
            }
        }
    }

    /// Reduces entries above each pivot into `[0, pivot)`, producing the
    /// canonical HNF rows (sorted by pivot column).
    fn canonicalize(&mut self) {
        for k in 0..self.pivots.len() {
            let (col, pivot_val) = {
                let (c, row, _) = &self.pivots[k];
                (*c, row.leading().unwrap().1.clone())
            };
            for j in 0..k {
                let entry = self.pivots[j].1.get(col);
                if entry.is_zero() {
                    continue;
                }
                let q = -entry.div_floor(&pivot_val);
                if q.is_zero() {
                    continue;
                }
                let (prow, pcomp) = {
                    let (_, r, c) = &self.pivots[k];
                    (r.clone(), c.clone())
                };
                let (_, jrow, jcomp) = &mut self.pivots[j];
                *jrow = jrow.axpy(&q, &prow);
                if self.track {
                    *jcomp = jcomp.axpy(&q, &pcomp);
                }
            }
        }
    }

    fn into_rows(mut self) -> (Vec<SparseVec>, Vec<SparseVec>, Vec<SparseVec>) {
        self.canonicalize();
        let mut rows = Vec::with_capacity(self.pivots.len());
        let mut comps = Vec::with_capacity(self.pivots.len());
        for (_, r, c) in self.pivots {
            rows.push(r);
            comps.push(c);
        }
        (rows, comps, self.kernel)
    }
}

/// A sublattice of `Z^ambient_dim`, held as a canonical row HNF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { basis: IntMatrix::new(ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice { basis: IntMatrix::identity(ambient_dim) }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.nrows() == 0
    }
}

/// Row Hermite normal form of the span of `m`'s rows. Canonical: equal row
/// spans yield identical bases; zero rows are dropped.
pub fn hnf(m: &IntMatrix) -> Lattice {
    let mut ech = Echelon::new(false);
    for row in m.rows() {
        ech.insert(row.clone(), SparseVec::new());
    }
    let (rows, _, _) = ech.into_rows();
    Lattice { basis: IntMatrix::from_rows(rows, m.ncols()) }
}

/// HNF together with expressions of each basis row as a combination of the
/// input rows, and a generating set for the left kernel of `m`.
pub struct HnfTransform {
    pub lattice: Lattice,
    /// `combos[i] * m == lattice.basis[i]` (sparse coefficients over rows of `m`).
    pub combos: Vec<SparseVec>,
    /// Rows `k` with `k * m == 0`, spanning the left kernel lattice.
    pub kernel: Vec<SparseVec>,
}

pub fn hnf_with_transform(m: &IntMatrix) -> HnfTransform {
    let mut ech = Echelon::new(true);
    for (i, row) in m.rows().iter().enumerate() {
        ech.insert(row.clone(), SparseVec::unit(i));
    }
    let (rows, combos, kernel) = ech.into_rows();
    HnfTransform {
        lattice: Lattice { basis: IntMatrix::from_rows(rows, m.ncols()) },
        combos,
        kernel,
    }
}

/// Row echelon form without the canonical above-pivot reduction: same pivot
/// columns and pivot values as the HNF, cheaper for large systems where only
/// the triangular structure matters.
pub fn row_echelon(m: &IntMatrix) -> Vec<SparseVec> {
    let mut ech = Echelon::new(false);
    let mut rows: Vec<&SparseVec> = m.rows().iter().collect();
    rows.sort_by_key(|r| r.nnz());
    for row in rows {
        ech.insert(row.clone(), SparseVec::new());
    }
    ech.pivots.into_iter().map(|(_, r, _)| r).collect()
}

/// Integer coefficients over the HNF basis reproducing `v` exactly, or `None`
/// when `v` is not in the lattice. The zero vector always yields an empty
/// certificate of zeros.
pub fn member(l: &Lattice, v: &SparseVec) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if let Some(c) = v.max_col() {
        if c >= l.ambient_dim() {
            return Err(LatticeError::DimensionMismatch { expected: l.ambient_dim(), got: c + 1 });
        }
    }
    let mut rest = v.clone();
    let mut coeffs = Vec::with_capacity(l.rank());
    for row in l.basis.rows() {
        let (col, pv) = row.leading().expect("basis rows are nonzero");
        let val = rest.get(col);
        if val.is_zero() {
            coeffs.push(BigInt::zero());
            continue;
        }
        if !(&val % pv).is_zero() {
            return Ok(None);
        }
        let q = &val / pv;
        rest = rest.axpy(&-&q, row);
        coeffs.push(q);
    }
    if rest.is_zero() {
        Ok(Some(coeffs))
    } else {
        Ok(None)
    }
}

pub fn contains(l: &Lattice, v: &SparseVec) -> bool {
    matches!(member(l, v), Ok(Some(_)))
}

/// Expresses `v` as an integer combination of the (possibly redundant)
/// spanning rows of `m`, when `v` lies in their span.
pub fn express_in_rows(m: &IntMatrix, v: &SparseVec) -> Option<Vec<BigInt>> {
    let t = hnf_with_transform(m);
    let coeffs = member(&t.lattice, v).ok()??;
    let mut acc = SparseVec::new();
    for (c, combo) in coeffs.iter().zip(&t.combos) {
        acc = acc.axpy(c, combo);
    }
    Some(acc.to_dense(m.nrows()))
}

/// Intersection of two row lattices of equal ambient dimension.
pub fn intersect(a: &Lattice, b: &Lattice) -> Result<Lattice, LatticeError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(LatticeError::DimensionMismatch { expected: a.ambient_dim(), got: b.ambient_dim() });
    }
    let ra = a.rank();
    let mut stacked = IntMatrix::new(a.ambient_dim());
    for r in a.basis.rows() {
        stacked.push_row(r.clone());
    }
    for r in b.basis.rows() {
        stacked.push_row(r.clone());
    }
    let t = hnf_with_transform(&stacked);
    // Each left-kernel row (x | y) satisfies x*A = -y*B, so x*A lies in both.
    let mut gens = IntMatrix::new(a.ambient_dim());
    for k in &t.kernel {
        let x_part = SparseVec::from_pairs(
            k.iter().filter(|(c, _)| *c < ra).map(|(c, v)| (c, v.clone())).collect(),
        );
        let vec = a.basis.left_mul(&x_part);
        if !vec.is_zero() {
            gens.push_row(vec);
        }
    }
    Ok(hnf(&gens))
}

/// Smith normal form data: `u * m * v` is diagonal with the stated divisors.
pub struct SnfResult {
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Dense working state for the Smith reduction.
struct SnfWork {
    m: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    nr: usize,
    nc: usize,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.m {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.nc {
            let t = &self.m[src][j] * k;
            self.m[dst][j] += t;
        }
        for j in 0..self.nr {
            let t = &self.u[src][j] * k;
            self.u[dst][j] += t;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.nr {
            let t = &self.m[i][src] * k;
            self.m[i][dst] += t;
        }
        for i in 0..self.nc {
            let t = &self.v[i][src] * k;
            self.v[i][dst] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.nc {
            self.m[i][j] = -self.m[i][j].clone();
        }
        for j in 0..self.nr {
            self.u[i][j] = -self.u[i][j].clone();
        }
    }

    /// Position of the entry of smallest nonzero magnitude in the trailing
    /// submatrix, scanning deterministically.
    fn smallest(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_val: Option<BigInt> = None;
        for i in k..self.nr {
            for j in k..self.nc {
                if self.m[i][j].is_zero() {
                    continue;
                }
                let a = self.m[i][j].abs();
                if best_val.as_ref().map_or(true, |b| &a < b) {
                    best = Some((i, j));
                    best_val = Some(a);
                }
            }
        }
        best
    }
}

/// Smith normal form over Z with unimodular transforms.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let nr = m.nrows();
    let nc = m.ncols();
    let mut w = SnfWork {
        m: (0..nr).map(|i| m.row(i).to_dense(nc)).collect(),
        u: (0..nr)
            .map(|i| {
                let mut r = vec![BigInt::zero(); nr];
                r[i] = BigInt::one();
                r
            })
            .collect(),
        v: (0..nc)
            .map(|i| {
                let mut r = vec![BigInt::zero(); nc];
                r[i] = BigInt::one();
                r
            })
            .collect(),
        nr,
        nc,
    };

    let n = nr.min(nc);
    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = w.smallest(k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            // clear column k
            let mut dirty = false;
            for i in k + 1..nr {
                if w.m[i][k].is_zero() {
                    continue;
                }
                let q = -w.m[i][k].div_floor(&w.m[k][k]);
                w.add_row(i, k, &q);
                if !w.m[i][k].is_zero() {
                    w.swap_rows(i, k);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // clear row k
            for j in k + 1..nc {
                if w.m[k][j].is_zero() {
                    continue;
                }
                let q = -w.m[k][j].div_floor(&w.m[k][k]);
                w.add_col(j, k, &q);
                if !w.m[k][j].is_zero() {
                    w.swap_cols(j, k);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // force divisibility of the trailing block by the pivot
            let mut fixed = true;
            'scan: for i in k + 1..nr {
                for j in k + 1..nc {
                    if !(&w.m[i][j] % &w.m[k][k]).is_zero() {
                        w.add_row(k, i, &BigInt::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if w.m[k][k].is_negative() {
            w.negate_row(k);
        }
        k += 1;
    }

    let mut divisors = Vec::new();
    for i in 0..n {
        if w.m[i][i].is_zero() {
            break;
        }
        divisors.push(w.m[i][i].clone());
    }
    let rank = divisors.len();
    SnfResult {
        divisors,
        rank,
        u: IntMatrix::from_rows(w.u.iter().map(|r| SparseVec::from_dense(r)).collect(), nr),
        v: IntMatrix::from_rows(w.v.iter().map(|r| SparseVec::from_dense(r)).collect(), nc),
    }
}

/// Elementary divisors of the abelian group `ambient / sub`: the nontrivial
/// torsion divisors first, then one `0` per free factor. Fails when `sub` is
/// not contained in `ambient`.
pub fn quotient_invariants(ambient: &Lattice, sub: &Lattice) -> Result<Vec<BigInt>, LatticeError> {
    if ambient.ambient_dim() != sub.ambient_dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: ambient.ambient_dim(),
            got: sub.ambient_dim(),
        });
    }
    let mut coords = IntMatrix::new(ambient.rank());
    for row in sub.basis.rows() {
        let c = member(ambient, row)?.ok_or(LatticeError::NotSubLattice)?;
        coords.push_row(SparseVec::from_dense(&c));
    }
    let s = snf(&coords);
    let mut out: Vec<BigInt> = s.divisors.iter().filter(|d| !d.is_one()).cloned().collect();
    for _ in 0..ambient.rank() - s.rank {
        out.push(BigInt::zero());
    }
    Ok(out)
}

/// Smallest `k >= 1` with `k*v` in the lattice, or `None` when no multiple
/// lands there (infinite order in the quotient).
///
/// The subgroup generated by `v` modulo the lattice is cyclic, so the order
/// equals the index of the lattice inside its extension by `v`: the ratio of
/// the pivot products of the two HNF bases.
pub fn coset_order(l: &Lattice, v: &SparseVec) -> Option<BigInt> {
    if v.is_zero() {
        return Some(BigInt::one());
    }
    let mut m = IntMatrix::new(l.ambient_dim());
    for r in l.basis.rows() {
        m.push_row(r.clone());
    }
    m.push_row(v.clone());
    let extended = hnf(&m);
    if extended.rank() > l.rank() {
        return None;
    }
    let mut num = BigInt::one();
    for r in l.basis.rows() {
        num *= r.leading().unwrap().1;
    }
    let mut den = BigInt::one();
    for r in extended.basis.rows() {
        den *= r.leading().unwrap().1;
    }
    debug_assert!((&num % &den).is_zero());
    Some(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_pairs(v.iter().enumerate().map(|(c, x)| (c, BigInt::from(*x))).collect())
    }

    #[test]
    fn hnf_identity() {
        let l = hnf(&IntMatrix::from_i64(&[&[1, 0], &[0, 1]]));
        assert_eq!(l.basis(), &IntMatrix::identity(2));
    }

    #[test]
    fn hnf_small() {
        let l = hnf(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(l.basis(), &IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn hnf_zero_rows() {
        let l = hnf(&IntMatrix::from_i64(&[&[0, 0]]));
        assert_eq!(l.rank(), 0);
        assert_eq!(l.ambient_dim(), 2);
    }

    #[test]
    fn snf_examples() {
        let s = snf(&IntMatrix::identity(3));
        assert_eq!(s.divisors, vec![BigInt::one(); 3]);

        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = snf(&m);
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(4)]);
        // u * m * v == diag(divisors)
        let d = s.u.mul(&m).mul(&s.v);
        assert_eq!(d.get(0, 0), BigInt::from(2));
        assert_eq!(d.get(1, 1), BigInt::from(4));
        assert_eq!(d.get(0, 1), BigInt::zero());
        assert_eq!(d.get(1, 0), BigInt::zero());

        let s = snf(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]]));
        assert!(s.divisors.is_empty());
    }

    #[test]
    fn member_examples() {
        let l = hnf(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(member(&l, &sv(&[0, 0])).unwrap(), Some(vec![BigInt::zero(); 2]));
        assert_eq!(
            member(&l, &sv(&[2, 4])).unwrap(),
            Some(vec![BigInt::one(), BigInt::one()])
        );
        assert_eq!(member(&l, &sv(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn member_dimension_error() {
        let l = hnf(&IntMatrix::from_i64(&[&[2, 0]]));
        let v = SparseVec::from_pairs(vec![(5, BigInt::one())]);
        assert!(member(&l, &v).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = hnf(&IntMatrix::from_i64(&[&[2, 0]]));
        let b = hnf(&IntMatrix::from_i64(&[&[3, 0]]));
        let c = intersect(&a, &b).unwrap();
        assert_eq!(c.basis(), &IntMatrix::from_i64(&[&[6, 0]]));

        let a = hnf(&IntMatrix::from_i64(&[&[1, 0]]));
        let b = hnf(&IntMatrix::from_i64(&[&[0, 1]]));
        assert!(intersect(&a, &b).unwrap().is_zero());

        let l = hnf(&IntMatrix::from_i64(&[&[2, 1], &[0, 3]]));
        assert_eq!(intersect(&l, &l).unwrap(), l);
    }

    #[test]
    fn quotient_examples() {
        let ambient = Lattice::full(2);
        let sub = hnf(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(
            quotient_invariants(&ambient, &sub).unwrap(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert!(quotient_invariants(&ambient, &ambient).unwrap().is_empty());

        let not_sub = hnf(&IntMatrix::from_i64(&[&[1, 1]]));
        let sub2 = hnf(&IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(
            quotient_invariants(&sub2, &not_sub).unwrap_err(),
            LatticeError::NotSubLattice
        );
    }

    #[test]
    fn coset_orders() {
        let l = hnf(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(coset_order(&l, &sv(&[1, 0])), Some(BigInt::from(2)));
        assert_eq!(coset_order(&l, &sv(&[1, 1])), Some(BigInt::from(4)));
        assert_eq!(coset_order(&l, &sv(&[0, 0])), Some(BigInt::one()));
        let half = hnf(&IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(coset_order(&half, &sv(&[0, 1])), None);
    }

    #[test]
    fn express_in_redundant_rows() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 4], &[2, 4]]);
        let v = sv(&[4, 4]);
        let c = express_in_rows(&m, &v).unwrap();
        let mut acc = SparseVec::new();
        for (i, k) in c.iter().enumerate() {
            acc = acc.axpy(k, m.row(i));
        }
        assert_eq!(acc, v);
    }
}
