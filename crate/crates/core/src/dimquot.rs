//! Dimension-quotient verdicts: membership below the augmentation filtration
//! certified at leading associative degree, non-membership in the lower
//! central series decided by nilpotent quotients, and the catalog of worked
//! examples.
//!
//! A certificate rewrites the associative expansion of the element as an
//! integer combination of ordered products of relator images, one product
//! per summand, with the declared weights of the replaced generators adding
//! up to at least the target filtration degree. Searching for one is exact
//! integer lattice membership; verifying one is an independent re-expansion.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::expr::{LieExpr, Relator};
use crate::freeassoc::{AssocElement, AssocRing};
use crate::freelie::{Generator, LieElement, LieRing};
use crate::intlat::{self, IntMatrix};
use crate::nilquot::{self, LiePresentation, NqError, NqLimits};
use crate::weights::{self, WeightSequence, WeightsError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertError {
    /// The presentation's relators are not of the substitution shape.
    UnsupportedRelators(&'static str),
    /// The element is not expressible over the free letters.
    BadElement(&'static str),
    /// Lattice membership failed: no certificate at this scaling.
    NoCertificate,
    TooLarge { tuples: usize },
}

impl fmt::Display for CertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertError::UnsupportedRelators(s) => write!(f, "unsupported relator shape: {s}"),
            CertError::BadElement(s) => write!(f, "unsupported element: {s}"),
            CertError::NoCertificate => write!(f, "no certificate exists at this scaling"),
            CertError::TooLarge { tuples } => write!(f, "search space too large ({tuples} tuples)"),
        }
    }
}

/// One substitution factor derived from a relator `L(x) = b * y`.
#[derive(Clone, Debug)]
pub struct CertFactor {
    pub relator_idx: usize,
    /// Presentation index of the replaced generator.
    pub y_gen: usize,
    /// Its declared weight.
    pub weight: u32,
    /// The left side as a degree-1 form over the free letters.
    pub x_side: Vec<(usize, BigInt)>,
    /// The scalar on the replaced generator.
    pub denom: BigInt,
}

/// The substitution data extracted from a presentation: free letters (after
/// eliminating linear alias relations) and one factor per relator.
pub struct CertScheme {
    /// Presentation indices of the free letters, in order.
    pub letters: Vec<usize>,
    pub factors: Vec<CertFactor>,
    /// Eliminated generators resolved over the free letters.
    elim: BTreeMap<usize, Vec<(usize, BigInt)>>,
}

fn linear_form(e: &LieExpr, acc: &mut BTreeMap<usize, BigInt>, scale: &BigInt) -> bool {
    match e {
        LieExpr::Zero => true,
        LieExpr::Gen(i) => {
            let c = acc.entry(*i).or_insert_with(BigInt::zero);
            *c += scale;
            true
        }
        LieExpr::Scaled(k, inner) => linear_form(inner, acc, &(scale * k)),
        LieExpr::Sum(ts) => ts.iter().all(|t| linear_form(t, acc, scale)),
        LieExpr::Bracket(_) => false,
    }
}

fn as_linear(e: &LieExpr) -> Option<BTreeMap<usize, BigInt>> {
    let mut acc = BTreeMap::new();
    if linear_form(e, &mut acc, &BigInt::one()) {
        acc.retain(|_, v| !v.is_zero());
        Some(acc)
    } else {
        None
    }
}

impl CertScheme {
    /// Reads the presentation's relators as alias relations (`linear = 0`)
    /// and substitution relations (`linear = b * y`).
    pub fn extract(pres: &LiePresentation) -> Result<CertScheme, CertError> {
        let mut alias_rows: Vec<BTreeMap<usize, BigInt>> = Vec::new();
        let mut raw_factors: Vec<(usize, usize, BigInt, BTreeMap<usize, BigInt>)> = Vec::new();
        for (idx, r) in pres.relators.iter().enumerate() {
            let lhs = as_linear(&r.lhs).ok_or(CertError::UnsupportedRelators("bracket on left side"))?;
            match &r.rhs {
                LieExpr::Zero => alias_rows.push(lhs),
                LieExpr::Gen(y) => raw_factors.push((idx, *y, BigInt::one(), lhs)),
                LieExpr::Scaled(b, inner) => match inner.as_ref() {
                    LieExpr::Gen(y) => raw_factors.push((idx, *y, b.clone(), lhs)),
                    _ => return Err(CertError::UnsupportedRelators("right side not a scaled generator")),
                },
                _ => return Err(CertError::UnsupportedRelators("right side not a scaled generator")),
            }
        }
        let mut replaced: Vec<usize> = raw_factors.iter().map(|(_, y, _, _)| *y).collect();
        replaced.sort_unstable();
        replaced.dedup();
        if replaced.len() != raw_factors.len() {
            return Err(CertError::UnsupportedRelators("a generator is replaced twice"));
        }

        // letters: generators that are never replaced
        let letters: Vec<usize> =
            (0..pres.gens.len()).filter(|g| !replaced.contains(g)).collect();

        // eliminate one unit-coefficient letter per alias relation
        let mut elim: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        for row in &alias_rows {
            let mut row = row.clone();
            // substitute known eliminations first
            loop {
                let hit = row.keys().find(|g| elim.contains_key(g)).copied();
                let Some(g) = hit else { break };
                let c = row.remove(&g).unwrap();
                for (l, k) in &elim[&g] {
                    let e = row.entry(*l).or_insert_with(BigInt::zero);
                    *e += &c * k;
                }
                row.retain(|_, v| !v.is_zero());
            }
            let target = row
                .iter()
                .rev()
                .find(|(g, c)| letters.contains(g) && c.abs().is_one())
                .map(|(g, _)| *g)
                .ok_or(CertError::UnsupportedRelators("alias relation without unit pivot"))?;
            let pivot = row.remove(&target).unwrap();
            // target = -pivot^-1 * rest, pivot is +-1
            let expansion: Vec<(usize, BigInt)> = row
                .into_iter()
                .map(|(g, c)| (g, if pivot.is_one() { -c } else { c }))
                .collect();
            elim.insert(target, expansion);
        }
        // close eliminations transitively
        let keys: Vec<usize> = elim.keys().copied().collect();
        for _ in 0..keys.len() {
            for g in &keys {
                let mut row = elim[g].clone();
                let mut changed = false;
                let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (l, c) in row.drain(..) {
                    if let Some(sub) = elim.get(&l) {
                        if l != *g {
                            changed = true;
                            for (l2, k) in sub {
                                let e = out.entry(*l2).or_insert_with(BigInt::zero);
                                *e += &c * k;
                            }
                            continue;
                        }
                    }
                    let e = out.entry(l).or_insert_with(BigInt::zero);
                    *e += c;
                }
                if changed {
                    elim.insert(*g, out.into_iter().filter(|(_, v)| !v.is_zero()).collect());
                }
            }
        }
        let free: Vec<usize> =
            letters.iter().copied().filter(|g| !elim.contains_key(g)).collect();

        let resolve = |row: &BTreeMap<usize, BigInt>| -> Result<Vec<(usize, BigInt)>, CertError> {
            let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (g, c) in row {
                if free.contains(g) {
                    let e = out.entry(*g).or_insert_with(BigInt::zero);
                    *e += c;
                } else if let Some(sub) = elim.get(g) {
                    for (l, k) in sub {
                        let e = out.entry(*l).or_insert_with(BigInt::zero);
                        *e += c * k;
                    }
                } else {
                    return Err(CertError::UnsupportedRelators("replaced generator on left side"));
                }
            }
            Ok(out.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        };

        let mut factors = Vec::with_capacity(raw_factors.len());
        for (idx, y, denom, lhs) in raw_factors {
            factors.push(CertFactor {
                relator_idx: idx,
                y_gen: y,
                weight: pres.gens[y].weight,
                x_side: resolve(&lhs)?,
                denom,
            });
        }
        Ok(CertScheme { letters: free, factors, elim })
    }

    /// Free-letter alphabet as an associative ring truncated at `deg`.
    pub fn assoc_ring(&self, pres: &LiePresentation, deg: u32) -> AssocRing {
        AssocRing::new(
            self.letters.iter().map(|&g| (pres.gens[g].name.clone(), 1)).collect(),
            deg,
        )
    }

    fn letter_pos(&self, g: usize) -> Option<usize> {
        self.letters.iter().position(|&l| l == g)
    }

    /// Degree-1 element of the letter alphabet for a linear form.
    fn form_elem(&self, ring: &AssocRing, form: &[(usize, BigInt)]) -> AssocElement {
        let mut out = AssocElement::zero();
        for (g, c) in form {
            let pos = self.letter_pos(*g).expect("form over free letters");
            out = out.add(&ring.letter(pos).scale(c));
        }
        out
    }

    /// The element as a Lie element over the free letters (alias relations
    /// substituted), then expanded associatively.
    pub fn expand_element(
        &self,
        pres: &LiePresentation,
        omega: &LieExpr,
        deg: u32,
    ) -> Result<(AssocRing, AssocElement), CertError> {
        let lie = LieRing::new(
            self.letters.iter().map(|&g| Generator::new(pres.gens[g].name.clone(), 1)).collect(),
            deg,
        );
        let assoc = self.assoc_ring(pres, deg);
        let elem = self.eval_lie(pres, &lie, omega)?;
        let target = assoc.lie_expand(&lie, &elem);
        Ok((assoc, target))
    }

    fn eval_lie(
        &self,
        pres: &LiePresentation,
        lie: &LieRing,
        e: &LieExpr,
    ) -> Result<LieElement, CertError> {
        Ok(match e {
            LieExpr::Zero => LieElement::zero(),
            LieExpr::Gen(g) => {
                if let Some(pos) = self.letter_pos(*g) {
                    lie.generator(pos)
                } else if let Some(sub) = self.elim.get(g) {
                    let mut acc = LieElement::zero();
                    for (l, c) in sub {
                        let pos = self.letter_pos(*l).ok_or(CertError::BadElement("unresolved alias"))?;
                        acc = acc.add(&lie.generator(pos).scale(c));
                    }
                    acc
                } else {
                    let _ = pres;
                    return Err(CertError::BadElement("element uses a replaced generator"));
                }
            }
            LieExpr::Scaled(k, inner) => self.eval_lie(pres, lie, inner)?.scale(k),
            LieExpr::Sum(ts) => {
                let mut acc = LieElement::zero();
                for t in ts {
                    acc = acc.add(&self.eval_lie(pres, lie, t)?);
                }
                acc
            }
            LieExpr::Bracket(ts) => {
                let mut acc = self.eval_lie(pres, lie, &ts[0])?;
                for t in &ts[1..] {
                    acc = lie.bracket(&acc, &self.eval_lie(pres, lie, t)?);
                }
                acc
            }
        })
    }
}

/// Bracket degree of an expression; `None` when inhomogeneous.
pub fn bracket_degree(e: &LieExpr) -> Option<u32> {
    match e {
        LieExpr::Zero => None,
        LieExpr::Gen(_) => Some(1),
        LieExpr::Scaled(_, inner) => bracket_degree(inner),
        LieExpr::Sum(ts) => {
            let ds: Vec<Option<u32>> = ts.iter().map(bracket_degree).collect();
            let first = ds.first()?.clone()?;
            ds.iter().all(|d| *d == Some(first)).then_some(first)
        }
        LieExpr::Bracket(ts) => {
            let mut total = 0;
            for t in ts {
                total += bracket_degree(t)?;
            }
            Some(total)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertSummand {
    pub coeff: BigInt,
    /// Scheme factor indices, in product order.
    pub factors: Vec<usize>,
    /// Declared weights of the replaced generators, as claimed.
    pub claimed_weights: Vec<u32>,
}

/// A verified-refutable decomposition witnessing membership at filtration
/// degree `n`.
#[derive(Clone, Debug)]
pub struct DeltaCertificate {
    pub n: u32,
    pub degree: u32,
    pub summands: Vec<CertSummand>,
}

impl DeltaCertificate {
    pub fn total_terms(&self) -> usize {
        self.summands.len()
    }
}

/// Product of the factors' x-sides with the accumulated denominator.
fn tuple_product(
    scheme: &CertScheme,
    ring: &AssocRing,
    tuple: &[usize],
) -> (AssocElement, BigInt) {
    let mut acc = AssocElement::one();
    let mut den = BigInt::one();
    for &f in tuple {
        let factor = &scheme.factors[f];
        acc = ring.mul(&acc, &scheme.form_elem(ring, &factor.x_side));
        den *= &factor.denom;
    }
    (acc, den)
}

/// Searches for a certificate for `omega` at degree `n`: lattice membership
/// of the expansion in the span of ordered relator-image products of total
/// declared weight at least `n`.
pub fn delta_certificate_search(
    pres: &LiePresentation,
    omega: &LieExpr,
    n: u32,
) -> Result<DeltaCertificate, CertError> {
    let scheme = CertScheme::extract(pres)?;
    let deg = bracket_degree(omega).ok_or(CertError::BadElement("inhomogeneous element"))?;
    let (ring, target) = scheme.expand_element(pres, omega, deg)?;

    // ordered factor tuples with enough declared weight
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::with_capacity(deg as usize);
    collect_tuples(&scheme, deg, n, 0, &mut current, &mut tuples);
    if tuples.len() > 1_000_000 {
        return Err(CertError::TooLarge { tuples: tuples.len() });
    }
    if tuples.is_empty() {
        return Err(CertError::NoCertificate);
    }

    let mut dens: Vec<BigInt> = Vec::with_capacity(tuples.len());
    let mut prods: Vec<AssocElement> = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let (p, d) = tuple_product(&scheme, &ring, t);
        prods.push(p);
        dens.push(d);
    }
    let mut lcm = BigInt::one();
    for d in &dens {
        lcm = lcm.lcm(d);
    }

    let words = ring.word_index(deg);
    let mut m = IntMatrix::new(words.len());
    for (p, d) in prods.iter().zip(&dens) {
        m.push_row(ring.component_row(&words, &p.scale(&(&lcm / d))));
    }
    let coeffs = intlat::express_in_rows(&m, &ring.component_row(&words, &target.scale(&lcm)))
        .ok_or(CertError::NoCertificate)?;

    let mut summands = Vec::new();
    for (c, t) in coeffs.into_iter().zip(tuples) {
        if c.is_zero() {
            continue;
        }
        let claimed = t.iter().map(|&f| scheme.factors[f].weight).collect();
        summands.push(CertSummand { coeff: c, factors: t, claimed_weights: claimed });
    }
    Ok(DeltaCertificate { n, degree: deg, summands })
}

fn collect_tuples(
    scheme: &CertScheme,
    deg: u32,
    n: u32,
    weight_so_far: u32,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == deg as usize {
        if weight_so_far >= n {
            out.push(current.clone());
        }
        return;
    }
    let slots_left = deg - current.len() as u32;
    let max_weight: u32 = scheme.factors.iter().map(|f| f.weight).max().unwrap_or(0);
    if weight_so_far + slots_left * max_weight < n {
        return;
    }
    for f in 0..scheme.factors.len() {
        current.push(f);
        collect_tuples(scheme, deg, n, weight_so_far + scheme.factors[f].weight, current, out);
        current.pop();
    }
}

/// Re-expands every summand exactly and re-checks the weight accounting,
/// independently of how the certificate was found.
pub fn verify_certificate(
    pres: &LiePresentation,
    omega: &LieExpr,
    cert: &DeltaCertificate,
) -> bool {
    let Ok(scheme) = CertScheme::extract(pres) else { return false };
    let Some(deg) = bracket_degree(omega) else { return false };
    if deg != cert.degree {
        return false;
    }
    let Ok((ring, target)) = scheme.expand_element(pres, omega, deg) else { return false };

    let mut lcm = BigInt::one();
    let mut parts: Vec<(AssocElement, BigInt)> = Vec::new();
    for s in &cert.summands {
        if s.factors.len() != deg as usize || s.claimed_weights.len() != s.factors.len() {
            return false;
        }
        let mut total = 0u32;
        for (&f, &w) in s.factors.iter().zip(&s.claimed_weights) {
            let Some(factor) = scheme.factors.get(f) else { return false };
            if factor.weight != w {
                return false;
            }
            total += w;
        }
        if total < cert.n {
            return false;
        }
        let (p, d) = tuple_product(&scheme, &ring, &s.factors);
        lcm = lcm.lcm(&d);
        parts.push((p.scale(&s.coeff), d));
    }
    let mut acc = AssocElement::zero();
    for (p, d) in parts {
        acc = acc.add(&p.scale(&(&lcm / &d)));
    }
    acc == target.scale(&lcm)
}

/// Tuple enumeration at the heart of the depth argument: with weights from a
/// verified sequence, the only substitution counts filling the budget while
/// reaching the target weight form a permutation.
pub struct SubstitutionReport {
    pub p: u32,
    pub c: WeightSequence,
    pub target_weight: BigInt,
    pub tuples: Vec<Vec<BigInt>>,
    pub only_permutation: bool,
}

pub fn substitution_analysis(p: u32, c: &WeightSequence) -> Result<SubstitutionReport, WeightsError> {
    // budget sum(n_i c_i) <= sum(c_i) and weight 2p + sum(n_i c_i) >= n with
    // n = 2p + sum(c_i) pinch to equality
    let tuples = weights::solve(c, None)?;
    let ones = tuples.len() == 1 && tuples[0].iter().all(|x| x.is_one());
    Ok(SubstitutionReport {
        p,
        target_weight: BigInt::from(2 * p) + c.sum(),
        c: c.clone(),
        tuples,
        only_permutation: ones,
    })
}

/// A catalog entry: presentation, element, target degree and expectations.
pub struct ExampleRecord {
    pub name: &'static str,
    pub pres: LiePresentation,
    pub omega: LieExpr,
    pub n: u32,
    pub prime: u32,
    pub has_certificate: bool,
    /// Expected order of the element's class in the class-(n-1) quotient;
    /// `None` reports the computed order without asserting it.
    pub expected_order: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaStage {
    Certified { summands: usize },
    /// Membership holds by the construction of the presentation; no product
    /// certificate is defined for it.
    AssertedByConstruction,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub name: String,
    pub n: u32,
    pub prime: u32,
    pub class_used: u32,
    pub delta: DeltaStage,
    pub image_nonzero: bool,
    pub order: BigInt,
    pub order_matches: bool,
    pub confirmed: bool,
}

pub fn run_record(rec: &ExampleRecord, limits: &NqLimits) -> Result<VerdictReport, NqError> {
    let delta = if rec.has_certificate {
        match delta_certificate_search(&rec.pres, &rec.omega, rec.n) {
            Ok(cert) => {
                if verify_certificate(&rec.pres, &rec.omega, &cert) {
                    DeltaStage::Certified { summands: cert.summands.len() }
                } else {
                    DeltaStage::Failed("certificate failed verification".into())
                }
            }
            Err(e) => DeltaStage::Failed(alloc::format!("{e}")),
        }
    } else {
        DeltaStage::AssertedByConstruction
    };

    let class_used = rec.n - 1;
    let nq = nilquot::nilpotent_quotient(&rec.pres, class_used, limits)?;
    let image = nq.image(&rec.omega);
    let image_nonzero = !image.is_zero();
    let order = nq.order_of_row(&image);
    let order_matches = match rec.expected_order {
        Some(k) => order == BigInt::from(k),
        None => true,
    };
    let delta_ok = !matches!(delta, DeltaStage::Failed(_));
    Ok(VerdictReport {
        name: rec.name.into(),
        n: rec.n,
        prime: rec.prime,
        class_used,
        confirmed: delta_ok && image_nonzero && order_matches,
        delta,
        image_nonzero,
        order,
        order_matches,
    })
}

fn pow(base: u32, exp: u64) -> BigInt {
    crate::int_pow(&BigInt::from(base), exp)
}

fn gen(name: &str, w: u32) -> Generator {
    Generator::new(name, w)
}

fn rel(lhs: LieExpr, rhs: LieExpr) -> Relator {
    Relator { lhs, rhs }
}

fn g(i: usize) -> LieExpr {
    LieExpr::gen(i)
}

fn br(args: Vec<LieExpr>) -> LieExpr {
    LieExpr::bracket(args)
}

fn sc(k: BigInt, e: LieExpr) -> LieExpr {
    LieExpr::scaled(k, e)
}

/// The three-relator variant of the first known counterexample at degree 4:
/// `e0, e1, e2, z` with powers of two pushed into brackets with `z`.
pub fn rips_example() -> ExampleRecord {
    let gens = vec![gen("e0", 1), gen("e1", 1), gen("e2", 1), gen("z", 1)];
    let relators = vec![
        // 4 e0 = [z, e1 + 2 e2]
        rel(sc(pow(2, 2), g(0)), br(vec![g(3), LieExpr::sum(vec![g(1), sc(2.into(), g(2))])])),
        // 16 e1 = [z, -e0 + 4 e2]
        rel(
            sc(pow(2, 4), g(1)),
            br(vec![g(3), LieExpr::sum(vec![sc((-1).into(), g(0)), sc(4.into(), g(2))])]),
        ),
        // 64 e2 = [z, -2 e0 - 4 e1]
        rel(
            sc(pow(2, 6), g(2)),
            br(vec![g(3), LieExpr::sum(vec![sc((-2).into(), g(0)), sc((-4).into(), g(1))])]),
        ),
    ];
    let omega = LieExpr::sum(vec![
        sc(pow(2, 5), br(vec![g(0), g(1)])),
        sc(pow(2, 6), br(vec![g(0), g(2)])),
        sc(pow(2, 7), br(vec![g(1), g(2)])),
    ]);
    ExampleRecord {
        name: "rips",
        pres: LiePresentation::new(gens, relators),
        omega,
        n: 4,
        prime: 2,
        has_certificate: false,
        expected_order: Some(2),
    }
}

/// Four weight-1 generators summing to zero, with scaled copies of
/// increasing weight; the nested square-bracket element sits at degree 10.
pub fn p2_delta10_example() -> ExampleRecord {
    let gens = vec![
        gen("x0", 1),
        gen("x1", 1),
        gen("x2", 1),
        gen("x3", 1),
        gen("y0", 1),
        gen("y1", 2),
        gen("y2", 3),
        gen("y3", 4),
    ];
    let relators = vec![
        rel(LieExpr::sum(vec![g(0), g(1), g(2), g(3)]), LieExpr::Zero),
        rel(g(0), sc(pow(2, 7), g(4))),
        rel(sc(pow(2, 1), g(1)), g(5)),
        rel(sc(pow(2, 2), g(2)), g(6)),
        rel(sc(pow(2, 3), g(3)), g(7)),
    ];
    let omega = br(vec![br(vec![g(0), g(2)]), br(vec![g(1), g(2)])]);
    ExampleRecord {
        name: "p2_delta10",
        pres: LiePresentation::new(gens, relators),
        omega,
        n: 10,
        prime: 2,
        has_certificate: true,
        expected_order: Some(2),
    }
}

/// Pair coordinates with the three redundant letters eliminated; degree 9.
pub fn p2_delta9_example() -> ExampleRecord {
    let gens = vec![
        gen("x01", 1),
        gen("x02", 1),
        gen("x12", 1),
        gen("y01", 2),
        gen("y02", 3),
        gen("y03", 4),
        gen("y12", 5),
        gen("y13", 6),
        gen("y23", 7),
    ];
    let neg = |e: LieExpr| sc((-1).into(), e);
    let relators = vec![
        rel(sc(pow(2, 1), g(0)), g(3)),
        rel(sc(pow(2, 2), g(1)), g(4)),
        rel(sc(pow(2, 3), g(2)), g(6)),
        rel(
            sc(pow(2, 4), LieExpr::sum(vec![neg(g(0)), neg(g(1))])),
            sc(pow(2, 3), g(5)),
        ),
        rel(
            sc(pow(2, 4), LieExpr::sum(vec![g(0), neg(g(2))])),
            sc(pow(2, 2), g(7)),
        ),
        rel(
            sc(pow(2, 4), LieExpr::sum(vec![g(1), g(2)])),
            sc(pow(2, 1), g(8)),
        ),
    ];
    let omega = sc(pow(2, 4), br(vec![g(1), g(2)]));
    ExampleRecord {
        name: "p2_delta9",
        pres: LiePresentation::new(gens, relators),
        omega,
        n: 9,
        prime: 2,
        has_certificate: true,
        expected_order: Some(2),
    }
}

/// Six pair coordinates with their three linear relations kept; degree 8.
pub fn p2_delta8_example() -> ExampleRecord {
    let gens = vec![
        gen("x01", 1),
        gen("x02", 1),
        gen("x03", 1),
        gen("x12", 1),
        gen("x13", 1),
        gen("x23", 1),
        gen("y01", 2),
        gen("y02", 3),
        gen("y03", 4),
        gen("y12", 4),
        gen("y13", 5),
        gen("y23", 6),
    ];
    let neg = |e: LieExpr| sc((-1).into(), e);
    let relators = vec![
        rel(LieExpr::sum(vec![g(0), g(1), g(2)]), LieExpr::Zero),
        rel(LieExpr::sum(vec![neg(g(0)), g(3), g(4)]), LieExpr::Zero),
        rel(LieExpr::sum(vec![neg(g(1)), neg(g(3)), g(5)]), LieExpr::Zero),
        rel(g(0), g(6)),
        rel(sc(pow(2, 1), g(1)), g(7)),
        rel(sc(pow(2, 2), g(3)), g(9)),
        rel(sc(pow(2, 3), g(2)), g(8)),
        rel(sc(pow(2, 4), g(4)), g(10)),
        rel(sc(pow(2, 5), g(5)), g(11)),
    ];
    let omega = sc(pow(2, 5), br(vec![g(1), g(3)]));
    ExampleRecord {
        name: "p2_delta8",
        pres: LiePresentation::new(gens, relators),
        omega,
        n: 8,
        prime: 2,
        has_certificate: true,
        expected_order: Some(2),
    }
}

/// Distinct negative shifts folded into the pair coordinates; every scaled
/// copy has weight 2 and the element sits at degree 4.
pub fn p2_delta4_example() -> ExampleRecord {
    let gens = vec![
        gen("x01", 1),
        gen("x02", 1),
        gen("x12", 1),
        gen("y01", 2),
        gen("y02", 2),
        gen("y03", 2),
        gen("y12", 2),
        gen("y13", 2),
        gen("y23", 2),
    ];
    let neg = |e: LieExpr| sc((-1).into(), e);
    let relators = vec![
        rel(sc(pow(2, 2), g(0)), g(3)),
        rel(sc(pow(2, 4), g(1)), g(4)),
        rel(sc(pow(2, 6), g(2)), g(6)),
        rel(
            sc(pow(2, 6), LieExpr::sum(vec![neg(g(0)), sc((-2).into(), g(1))])),
            sc(pow(2, 6), g(5)),
        ),
        rel(
            sc(pow(2, 5), LieExpr::sum(vec![g(0), sc((-4).into(), g(2))])),
            sc(pow(2, 4), g(7)),
        ),
        rel(
            sc(pow(2, 5), LieExpr::sum(vec![g(1), sc(2.into(), g(2))])),
            sc(pow(2, 2), g(8)),
        ),
    ];
    let omega = sc(pow(2, 5), br(vec![g(1), g(2)]));
    // No product certificate exists at these constants (exact lattice
    // refutation), and only the non-membership claim is asserted; the
    // computed order is reported. 2-torsion is still present (4*omega).
    ExampleRecord {
        name: "p2_delta4",
        pres: LiePresentation::new(gens, relators),
        omega,
        n: 4,
        prime: 2,
        has_certificate: false,
        expected_order: None,
    }
}

/// The compact 3-torsion example: four letters, four weight-2 and six
/// weight-3 scaled copies, binomial relations on four index pairs.
pub fn p3_delta7_example() -> ExampleRecord {
    let mut gens = vec![gen("e0", 1), gen("e1", 1), gen("e2", 1), gen("e3", 1)];
    for i in 0..4 {
        gens.push(gen(&alloc::format!("y{i}"), 2));
    }
    let pair_names = ["y01", "y02", "y03", "y12", "y13", "y23"];
    for name in pair_names {
        gens.push(gen(name, 3));
    }
    let ypair = |i: usize, j: usize| -> usize {
        8 + pair_names
            .iter()
            .position(|n| *n == alloc::format!("y{i}{j}"))
            .unwrap()
    };
    let mut relators = Vec::new();
    for i in 0..4usize {
        relators.push(rel(sc(pow(3, 2 * i as u64), g(i)), g(4 + i)));
    }
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 3), (2, 3)] {
        relators.push(rel(
            LieExpr::sum(vec![
                sc(pow(3, (12 - i) as u64), g(j)),
                sc(pow(3, (12 - j) as u64), g(i)),
            ]),
            sc(pow(3, (12 - 2 * i - 2 * j) as u64), g(ypair(i, j))),
        ));
    }
    let omega = sc(pow(3, 9), br(vec![g(2), g(1), g(0)]));
    ExampleRecord {
        name: "p3_delta7",
        pres: LiePresentation::new(gens, relators),
        omega,
        n: 7,
        prime: 3,
        has_certificate: true,
        expected_order: Some(3),
    }
}

pub fn catalog() -> Vec<ExampleRecord> {
    vec![
        rips_example(),
        p2_delta10_example(),
        p2_delta9_example(),
        p2_delta8_example(),
        p2_delta4_example(),
        p3_delta7_example(),
    ]
}

pub fn find_example(name: &str) -> Option<ExampleRecord> {
    catalog().into_iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_certificate() {
        // [x0, x1] with relators x0 = y0, x1 = y1 at n = 2
        let pres = LiePresentation::new(
            vec![gen("x0", 1), gen("x1", 1), gen("y0", 1), gen("y1", 1)],
            vec![rel(g(0), g(2)), rel(g(1), g(3))],
        );
        let omega = br(vec![g(0), g(1)]);
        let cert = delta_certificate_search(&pres, &omega, 2).unwrap();
        assert!(verify_certificate(&pres, &omega, &cert));
        // x0x1 - x1x0: two summands
        assert_eq!(cert.summands.len(), 2);
    }

    #[test]
    fn tampering_refutes() {
        let pres = LiePresentation::new(
            vec![gen("x0", 1), gen("x1", 1), gen("y0", 1), gen("y1", 2)],
            vec![rel(g(0), g(2)), rel(sc(2.into(), g(1)), g(3))],
        );
        let omega = sc(2.into(), br(vec![g(0), g(1)]));
        let mut cert = delta_certificate_search(&pres, &omega, 3).unwrap();
        assert!(verify_certificate(&pres, &omega, &cert));
        let good = cert.summands[0].coeff.clone();
        cert.summands[0].coeff = &good + 1;
        assert!(!verify_certificate(&pres, &omega, &cert));
        cert.summands[0].coeff = good;
        cert.summands[0].claimed_weights[0] += 1;
        assert!(!verify_certificate(&pres, &omega, &cert));
    }

    #[test]
    fn substitution_analysis_examples() {
        let c = weights::lemma_sequence(3).unwrap();
        let rep = substitution_analysis(2, &c).unwrap();
        assert!(rep.only_permutation);
        let weak = WeightSequence::new(vec![1.into(), 1.into(), 1.into(), 1.into()]);
        let rep = substitution_analysis(2, &weak).unwrap();
        assert!(!rep.only_permutation);
        assert!(rep.tuples.len() > 1);
    }

    #[test]
    fn catalog_names() {
        let names: Vec<&str> = catalog().iter().map(|r| r.name).collect();
        assert_eq!(
            names,
            vec!["rips", "p2_delta10", "p2_delta9", "p2_delta8", "p2_delta4", "p3_delta7"]
        );
        assert!(find_example("p3_delta7").is_some());
        assert!(find_example("nope").is_none());
    }

    #[test]
    fn scheme_extraction_on_catalog() {
        for rec in catalog() {
            let scheme = CertScheme::extract(&rec.pres);
            if rec.has_certificate {
                let s = scheme.expect(rec.name);
                assert!(!s.factors.is_empty());
            }
        }
        // bracket right sides are not substitution relators
        assert!(CertScheme::extract(&rips_example().pres).is_err());
    }
}
