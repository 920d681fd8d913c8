use dimquot_core::freeassoc::*;
use dimquot_core::freelie::{Generator, LieRing};
use dimquot_core::groupword::*;
use dimquot_core::BigInt;
use proptest::prelude::*;

fn ring3() -> AssocRing {
    AssocRing::new(vec![("x".into(), 1), ("y".into(), 1), ("z".into(), 1)], 6)
}

fn arb_elem() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    proptest::collection::vec(
        (proptest::collection::vec(0u16..3, 0..3), -4i64..=4),
        1..4,
    )
}

fn build(r: &AssocRing, spec: &[(Vec<u16>, i64)]) -> AssocElement {
    let mut e = AssocElement::zero();
    for (w, c) in spec {
        if r.word_weight(w) <= r.max_weight() {
            e.add_term(w.clone(), &BigInt::from(*c));
        }
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        let r = ring3();
        let (ea, eb, ec) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(r.mul(&r.mul(&ea, &eb), &ec), r.mul(&ea, &r.mul(&eb, &ec)));
    }

    #[test]
    fn lie_expand_respects_bracket(a in arb_lie(), b in arb_lie()) {
        let lie = LieRing::new(
            vec![Generator::new("x", 1), Generator::new("y", 1), Generator::new("z", 1)],
            6,
        );
        let r = AssocRing::envelope_of(&lie, 6);
        let ea = lie_build(&lie, &a);
        let eb = lie_build(&lie, &b);
        let lhs = r.lie_expand(&lie, &lie.bracket(&ea, &eb));
        let rhs = r.commutator(&r.lie_expand(&lie, &ea), &r.lie_expand(&lie, &eb));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn magnus_is_multiplicative(u in arb_word(), v in arb_word()) {
        let alphabet = GroupAlphabet::of(&["x", "y", "z"]);
        let ring = alphabet.series_ring(4);
        let wu = word(&u);
        let wv = word(&v);
        let lhs = magnus_expand(&ring, &wu.mul(&wv));
        let rhs = ring.mul(&magnus_expand(&ring, &wu), &magnus_expand(&ring, &wv));
        prop_assert_eq!(lhs, rhs);
        // inverse cancels up to truncation
        let one = ring.mul(&magnus_expand(&ring, &wu.inverse()), &magnus_expand(&ring, &wu));
        prop_assert_eq!(one, AssocElement::one());
    }
}

fn arb_lie() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 1..3)
}

fn lie_build(ring: &LieRing, spec: &[(usize, usize, i64)]) -> dimquot_core::freelie::LieElement {
    let mut e = dimquot_core::freelie::LieElement::zero();
    for (a, b, c) in spec {
        let t = if a == b {
            ring.generator(*a)
        } else {
            ring.bracket(&ring.generator(*a), &ring.generator(*b))
        };
        e = e.add(&t.scale(&BigInt::from(*c)));
    }
    e
}

fn arb_word() -> impl Strategy<Value = Vec<(u16, i8)>> {
    proptest::collection::vec((0u16..3, prop_oneof![Just(1i8), Just(-1i8)]), 0..6)
}

fn word(spec: &[(u16, i8)]) -> GroupWord {
    GroupWord::from_syllables(spec.iter().map(|(l, e)| (*l, BigInt::from(*e))).collect())
}

#[test]
fn dynkin_projector_scales_by_degree() {
    let lie = LieRing::new(
        vec![Generator::new("x", 1), Generator::new("y", 1), Generator::new("z", 1)],
        4,
    );
    let r = AssocRing::envelope_of(&lie, 4);
    let x = lie.generator(0);
    let y = lie.generator(1);
    let z = lie.generator(2);
    let samples = vec![
        (1u32, x.clone()),
        (2, lie.bracket(&x, &y)),
        (3, lie.bracket(&lie.bracket(&x, &y), &z)),
        (4, lie.bracket(&lie.bracket(&x, &y), &lie.bracket(&x, &z))),
        (4, lie.bracket(&lie.bracket(&lie.bracket(&x, &y), &z), &x)),
    ];
    for (d, e) in samples {
        let back = r.dynkin_bracketing(&lie, &r.lie_expand(&lie, &e));
        assert_eq!(back, e.scale(&BigInt::from(d)), "degree {d}");
    }
}

#[test]
fn commutator_words_have_no_low_magnus_terms() {
    // nested commutator words of class k expand to 1 + (degree >= k)
    let alphabet = GroupAlphabet::of(&["x", "y", "z"]);
    let ring = alphabet.series_ring(4);
    let x = GroupWord::generator(0);
    let y = GroupWord::generator(1);
    let z = GroupWord::generator(2);
    let samples = vec![
        (2u32, GroupWord::commutator(&x, &y)),
        (3, GroupWord::commutator(&GroupWord::commutator(&x, &y), &z)),
        (3, GroupWord::commutator(&GroupWord::commutator(&y, &z), &x)),
        (4, GroupWord::commutator(&GroupWord::commutator(&GroupWord::commutator(&x, &y), &z), &y)),
        (4, GroupWord::commutator(&GroupWord::commutator(&x, &y), &GroupWord::commutator(&x, &z))),
    ];
    for (k, w) in samples {
        let m = magnus_expand(&ring, &w);
        let mut low = m.clone();
        low.add_term(vec![], &BigInt::from(-1));
        for d in 1..k {
            assert!(ring.weight_part(&low, d).is_zero(), "class {k} word has degree-{d} part");
        }
        assert!(!ring.weight_part(&low, k).is_zero(), "class {k} word vanishes at degree {k}");
    }
}

#[test]
fn power_expansion_is_binomial() {
    // g^k - 1 = k(g-1) + C(k,2)(g-1)^2 + ... as a truncated expansion
    let alphabet = GroupAlphabet::of(&["g"]);
    let ring = alphabet.series_ring(5);
    for k in [2i64, 3, 7, 16, 1024] {
        let m = magnus_expand(&ring, &GroupWord::power_of(0, k));
        for d in 0..=5u64 {
            let word = vec![0u16; d as usize];
            assert_eq!(m.coeff(&word), dimquot_core::binomial(&BigInt::from(k), d));
        }
    }
}

#[test]
fn symmetric_product_padding_matches_brute_force() {
    // at one degree above minimal, generator paddings span the same lattice
    // as products of arbitrary monomials around the leading factors
    let r = AssocRing::new(vec![("a".into(), 1), ("b".into(), 1)], 4);
    let xi = vec![r.letter(0), r.letter(1), r.letter(0).add(&r.letter(1))];
    let fast = symmetric_product_component(&r, &xi, 4).unwrap();

    // brute force: all products u0 xi_{p0} u1 xi_{p1} u2 xi_{p2} u3 where the
    // u's run over all words with one letter in total
    let words1: Vec<AssocElement> = vec![AssocElement::one(), r.letter(0), r.letter(1)];
    let mut rows = dimquot_core::intlat::IntMatrix::new(r.word_index(4).len());
    let index = r.word_index(4);
    let mut perms = vec![
        vec![0usize, 1, 2], vec![0, 2, 1], vec![1, 0, 2],
        vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0],
    ];
    for p in perms.drain(..) {
        for u0 in &words1 {
            for u1 in &words1 {
                for u2 in &words1 {
                    for u3 in &words1 {
                        let prod = r.product(&[
                            u0.clone(), xi[p[0]].clone(), u1.clone(), xi[p[1]].clone(),
                            u2.clone(), xi[p[2]].clone(), u3.clone(),
                        ]);
                        let part = r.weight_part(&prod, 4);
                        if !part.is_zero() {
                            rows.push_row(r.component_row(&index, &part));
                        }
                    }
                }
            }
        }
    }
    let brute = dimquot_core::intlat::hnf(&rows);
    assert_eq!(&fast.lattice, &brute);
}
