use dimquot_core::intlat::*;
use dimquot_core::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec(-max_entry..=max_entry, c),
            r,
        )
        .prop_map(move |rows| {
            let refs: Vec<SparseVec> = rows
                .iter()
                .map(|row| {
                    SparseVec::from_pairs(
                        row.iter().enumerate().map(|(j, v)| (j, BigInt::from(*v))).collect(),
                    )
                })
                .collect();
            IntMatrix::from_rows(refs, c)
        })
    })
}

/// Unimodular row operations: swaps, negations, and additions.
fn apply_unimodular(m: &IntMatrix, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut rows: Vec<SparseVec> = m.rows().to_vec();
    let n = rows.len();
    for (a, b, k) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            rows[a] = rows[a].neg();
        } else {
            let add = rows[b].scale(&BigInt::from(*k));
            rows[a] = rows[a].add(&add);
        }
    }
    IntMatrix::from_rows(rows, m.ncols())
}

fn det(m: &Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn dense(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.nrows()).map(|i| m.row(i).to_dense(m.ncols())).collect()
}

/// gcd of all k x k minors, zero when all vanish.
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    use num_integer::Integer;
    let rows: Vec<usize> = (0..m.nrows()).collect();
    let cols: Vec<usize> = (0..m.ncols()).collect();
    let mut acc = BigInt::zero();
    for rsel in combinations(&rows, k) {
        for csel in combinations(&cols, k) {
            let sub: Vec<Vec<BigInt>> =
                rsel.iter().map(|&i| csel.iter().map(|&j| m.get(i, j)).collect()).collect();
            acc = acc.gcd(&det(&sub));
        }
    }
    acc
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_is_canonical_under_row_ops(
        m in small_matrix(4, 8),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6),
    ) {
        let transformed = apply_unimodular(&m, &ops);
        prop_assert_eq!(hnf(&m), hnf(&transformed));
    }

    #[test]
    fn snf_divisor_chain_and_minor_gcds(m in small_matrix(5, 6)) {
        let s = snf(&m);
        for w in s.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        // transform identity
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                if i == j && i < s.rank {
                    prop_assert_eq!(d.get(i, j), s.divisors[i].clone());
                } else {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
        }
        // unimodular transforms
        prop_assert!(det(&dense(&s.u)).abs().is_one());
        prop_assert!(det(&dense(&s.v)).abs().is_one());
        // product of divisors = gcd of rank-sized minors
        if s.rank > 0 {
            let prod: BigInt = s.divisors.iter().product();
            prop_assert_eq!(prod, minor_gcd(&m, s.rank));
        }
    }

    #[test]
    fn member_agrees_with_bounded_search(
        m in small_matrix(3, 4),
        v in proptest::collection::vec(-6i64..=6, 3),
    ) {
        let lat = hnf(&m);
        if lat.ambient_dim() != 3 {
            return Ok(());
        }
        let target = SparseVec::from_pairs(
            v.iter().enumerate().map(|(j, x)| (j, BigInt::from(*x))).collect(),
        );
        let got = member(&lat, &target).unwrap();
        // exhaustive search over small coefficient boxes
        let r = lat.rank();
        let mut found = false;
        let mut coeffs = vec![0i64; r];
        'outer: loop {
            let mut acc = SparseVec::new();
            for (i, c) in coeffs.iter().enumerate() {
                acc = acc.axpy(&BigInt::from(*c), lat.basis().row(i));
            }
            if acc == target {
                found = true;
                break;
            }
            let mut i = 0;
            loop {
                if i == r {
                    break 'outer;
                }
                coeffs[i] += 1;
                if coeffs[i] <= 8 {
                    break;
                }
                coeffs[i] = -8;
                i += 1;
            }
            if r == 0 {
                break;
            }
        }
        if found {
            prop_assert!(got.is_some());
        }
        if let Some(cert) = got {
            let mut acc = SparseVec::new();
            for (c, row) in cert.iter().zip(lat.basis().rows()) {
                acc = acc.axpy(c, row);
            }
            prop_assert_eq!(acc, target);
            if cert.iter().all(|c| c.abs() <= BigInt::from(8)) {
                prop_assert!(found);
            }
        }
    }

    #[test]
    fn intersection_properties(a in small_matrix(3, 5), b in small_matrix(3, 5)) {
        if a.ncols() != b.ncols() {
            return Ok(());
        }
        let la = hnf(&a);
        let lb = hnf(&b);
        let inter = intersect(&la, &lb).unwrap();
        for row in inter.basis().rows() {
            prop_assert!(contains(&la, row));
            prop_assert!(contains(&lb, row));
        }
        // any common small combination is a member of the intersection
        for i in 0..la.rank().min(2) {
            for j in 0..lb.rank().min(2) {
                for k in 1..=3i64 {
                    let v = la.basis().row(i).scale(&BigInt::from(k));
                    if v == lb.basis().row(j).scale(&BigInt::from(k)) && contains(&lb, &v) {
                        prop_assert!(contains(&inter, &v));
                    }
                }
            }
        }
        // idempotence
        prop_assert_eq!(intersect(&la, &la).unwrap(), la);
    }

    #[test]
    fn quotient_invariants_match_direct_snf(m in small_matrix(3, 5)) {
        let sub = hnf(&m);
        let ambient = Lattice::full(sub.ambient_dim());
        let inv = quotient_invariants(&ambient, &sub).unwrap();
        let s = snf(sub.basis());
        let expect: Vec<BigInt> = s
            .divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .chain((0..sub.ambient_dim() - s.rank).map(|_| BigInt::zero()))
            .collect();
        prop_assert_eq!(inv, expect);
    }
}
