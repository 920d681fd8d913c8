use dimquot_core::freelie::*;
use dimquot_core::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;

/// Necklace count of Lyndon words on q letters of length d.
fn witt(q: u64, d: u64) -> u64 {
    fn moebius(mut n: u64) -> i64 {
        let mut m = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    }
    let mut total = 0i64;
    for e in 1..=d {
        if d % e == 0 {
            total += moebius(e) * (q.pow((d / e) as u32) as i64);
        }
    }
    (total / d as i64) as u64
}

/// Brute-force weighted Lyndon count: enumerate every word of the given
/// weight and keep those strictly smaller than all rotations.
fn weighted_lyndon_count(weights: &[u32], w: u32) -> usize {
    fn rec(weights: &[u32], remaining: u32, word: &mut Vec<u16>, out: &mut usize) {
        if remaining == 0 {
            let n = word.len();
            let lyndon = (1..n).all(|s| {
                let rot: Vec<u16> = word[s..].iter().chain(word[..s].iter()).copied().collect();
                rot.as_slice() > word.as_slice()
            });
            if lyndon && n > 0 {
                *out += 1;
            }
            return;
        }
        for l in 0..weights.len() as u16 {
            let lw = weights[l as usize];
            if lw <= remaining {
                word.push(l);
                rec(weights, remaining - lw, word, out);
                word.pop();
            }
        }
    }
    let mut out = 0;
    rec(weights, w, &mut Vec::new(), &mut out);
    out
}

#[test]
fn basis_counts_match_necklace_formula() {
    for q in 2..=5usize {
        let gens: Vec<Generator> =
            (0..q).map(|i| Generator::new(format!("g{i}"), 1)).collect();
        let max = if q <= 3 { 8 } else { 6 };
        let ring = LieRing::new(gens, max);
        for d in 1..=max {
            assert_eq!(
                ring.basis_count_at_weight(d) as u64,
                witt(q as u64, d as u64),
                "q={q} d={d}"
            );
        }
    }
}

#[test]
fn weighted_counts_match_enumeration() {
    // the 14-generator weighted alphabet of the compact 3-torsion example
    let mut gens = Vec::new();
    let mut weights = Vec::new();
    for i in 0..4 {
        gens.push(Generator::new(format!("e{i}"), 1));
        weights.push(1);
    }
    for i in 0..4 {
        gens.push(Generator::new(format!("u{i}"), 2));
        weights.push(2);
    }
    for i in 0..6 {
        gens.push(Generator::new(format!("v{i}"), 3));
        weights.push(3);
    }
    let ring = LieRing::new(gens, 3);
    for w in 1..=3 {
        assert_eq!(
            ring.basis_count_at_weight(w),
            weighted_lyndon_count(&weights, w),
            "weight {w}"
        );
    }

    // a mixed-weight alphabet
    let gens = vec![
        Generator::new("a", 1),
        Generator::new("b", 2),
        Generator::new("c", 2),
        Generator::new("d", 3),
    ];
    let ring = LieRing::new(gens, 8);
    for w in 1..=8 {
        assert_eq!(
            ring.basis_count_at_weight(w),
            weighted_lyndon_count(&[1, 2, 2, 3], w),
            "weight {w}"
        );
    }
}

fn arb_element(ring_gens: usize, max_coeff: i64) -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0..ring_gens, -max_coeff..=max_coeff), 1..3)
}

fn build(ring: &LieRing, spec: &[(usize, i64)]) -> LieElement {
    let mut e = LieElement::zero();
    for (g, c) in spec {
        e = e.add(&ring.generator(*g).scale(&BigInt::from(*c)));
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_grading_and_antisymmetry(
        a in arb_element(3, 4),
        b in arb_element(3, 4),
    ) {
        let ring = LieRing::new(
            vec![Generator::new("x", 1), Generator::new("y", 2), Generator::new("z", 1)],
            8,
        );
        let ea = build(&ring, &a);
        let eb = build(&ring, &b);
        let ab = ring.bracket(&ea, &eb);
        prop_assert!(ring.bracket(&ea, &ea).is_zero());
        prop_assert!(ab.add(&ring.bracket(&eb, &ea)).is_zero());
        if let (Some(wa), Some(wb), Some(wab)) = (
            ring.homogeneous_weight(&ea),
            ring.homogeneous_weight(&eb),
            ring.homogeneous_weight(&ab),
        ) {
            prop_assert_eq!(wa + wb, wab);
        }
    }

    #[test]
    fn jacobi_on_random_triples(
        a in arb_element(3, 3),
        b in arb_element(3, 3),
        c in arb_element(3, 3),
    ) {
        let ring = LieRing::new(
            vec![Generator::new("x", 1), Generator::new("y", 1), Generator::new("z", 1)],
            6,
        );
        let (ea, eb, ec) = (build(&ring, &a), build(&ring, &b), build(&ring, &c));
        let ab = ring.bracket(&ea, &eb);
        let bc = ring.bracket(&eb, &ec);
        let ca = ring.bracket(&ec, &ea);
        let j = ring
            .bracket(&ab, &ec)
            .add(&ring.bracket(&bc, &ea))
            .add(&ring.bracket(&ca, &eb));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in arb_element(3, 3),
        b in arb_element(3, 3),
        img in proptest::collection::vec((0..3usize, -2i64..=2), 3),
    ) {
        let ring = LieRing::new(
            vec![Generator::new("x", 1), Generator::new("y", 1), Generator::new("z", 1)],
            6,
        );
        let mut map = BTreeMap::new();
        for (g, (t, c)) in img.iter().enumerate() {
            map.insert(g, ring.generator(*t).scale(&BigInt::from(*c)));
        }
        let (ea, eb) = (build(&ring, &a), build(&ring, &b));
        let lhs = ring.substitute(&ring.bracket(&ea, &eb), &map).unwrap();
        let rhs = ring.bracket(
            &ring.substitute(&ea, &map).unwrap(),
            &ring.substitute(&eb, &map).unwrap(),
        );
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn ideal_component_matches_lower_component_brackets() {
    // generator-bracket spanning equals the span of [lower component, any
    // basis element]
    let ring = LieRing::new(
        vec![Generator::new("a", 1), Generator::new("b", 1), Generator::new("c", 1)],
        5,
    );
    let gen = ring.generator(0);
    for d in 2..=5u32 {
        let fast = ring.ideal_component(&gen, d).unwrap();
        // brute force: [I_w, basis of weight d - w] for all w < d
        let mut rows = dimquot_core::intlat::IntMatrix::new(ring.basis_count_at_weight(d));
        if let Some(w0) = ring.homogeneous_weight(&gen) {
            for w in w0..d {
                let lower = ring.ideal_component(&gen, w).unwrap();
                for row in lower.basis().rows() {
                    let u = ring.row_to_element(row, w);
                    for idx in ring.weight_block(d - w) {
                        let v = LieElement::single(idx);
                        let p = ring.bracket(&u, &v);
                        if !p.is_zero() {
                            rows.push_row(ring.component_row(&p, d));
                        }
                    }
                }
            }
        }
        let brute = dimquot_core::intlat::hnf(&rows);
        assert_eq!(fast, brute, "degree {d}");
    }
}

#[test]
fn ideal_ranks_at_degree4() {
    // rank of the one-generator ideal component equals the span of all
    // basis brackets containing the generator
    let ring = LieRing::new(
        vec![Generator::new("a", 1), Generator::new("b", 1), Generator::new("c", 1)],
        4,
    );
    let lat = ring.ideal_component(&ring.generator(0), 4).unwrap();
    // complement: Lyndon words in {b, c} only
    let without: usize = {
        let sub = LieRing::new(vec![Generator::new("b", 1), Generator::new("c", 1)], 4);
        sub.basis_count_at_weight(4)
    };
    assert_eq!(lat.rank(), ring.basis_count_at_weight(4) - without);
}
