use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use quadbir_core::lattice::cycles::{CycleExpression, CycleSymbol, RelationSet};
use quadbir_core::lattice::{
    discriminant_group, reduce_cycle, smith_normal_form, verify_mult_by_5, GramLattice, IntMatrix,
};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

fn symmetric() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(-20i64..=20, n * n).prop_map(move |v| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    m[(i, j)] = v[i * n + j].into();
                    m[(j, i)] = v[i * n + j].into();
                }
            }
            m
        })
    })
}

fn expression() -> impl Strategy<Value = CycleExpression> {
    proptest::collection::vec(-50i64..=50, CycleSymbol::ALL.len()).prop_map(|cs| {
        CycleExpression::from_terms(CycleSymbol::ALL.iter().copied().zip(cs.into_iter().map(BigInt::from)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn smith_form_is_correct(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
        prop_assert!(diag.last().is_none_or(|x| !x.is_negative()));
    }

    #[test]
    fn discriminant_order_is_determinant(m in symmetric()) {
        let det = m.determinant().unwrap();
        prop_assume!(!det.is_zero());
        let g = discriminant_group(&GramLattice::unlabeled(m).unwrap()).unwrap();
        prop_assert_eq!(g.order(), det.abs());
    }

    #[test]
    fn reduction_is_linear(a in expression(), b in expression(), c in -7i64..=7) {
        let ra = reduce_cycle(&a).unwrap();
        let rb = reduce_cycle(&b).unwrap();
        prop_assert_eq!(reduce_cycle(&(a.clone() + b.clone())).unwrap(), ra.clone() + rb);
        prop_assert_eq!(reduce_cycle(&(c * a)).unwrap(), c * ra);
    }

    #[test]
    fn reduction_is_idempotent(a in expression()) {
        let once = reduce_cycle(&a).unwrap();
        prop_assert!(once.is_reduced());
        prop_assert_eq!(reduce_cycle(&once).unwrap(), once);
    }
}

#[test]
fn relation_set_is_consistent() {
    for set in [RelationSet::standard(), RelationSet::standard().swapped()] {
        let reducer = set.compile().unwrap();
        for rel in set.relations() {
            assert_eq!(reducer.reduce(&rel.lhs).unwrap(), reducer.reduce(&rel.rhs).unwrap(), "{rel}");
        }
    }
}

type Coords = [i64; 5];

fn add(a: Coords, b: Coords, s: i64) -> Coords {
    std::array::from_fn(|i| a[i] + s * b[i])
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Forward substitution through the relations in basis `(H^2, H_S, d, d', delta)`,
/// then Cramer's rule for `x H'^2 + y H_T + c (H_T + delta + delta') = H_S + d + d'`.
#[test]
fn multiplier_agrees_with_direct_linear_algebra() {
    let h2: Coords = [1, 0, 0, 0, 0];
    let hs: Coords = [0, 1, 0, 0, 0];
    let dd: Coords = [0, 0, 1, 1, 0];
    // E^2 = -5H^2 + d + d' + 4H_S
    let e2 = add(add(add([0; 5], h2, -5), dd, 1), hs, 4);
    // H'^2 = 9H^2 - 6H_S + E^2
    let hp2 = add(add(add([0; 5], h2, 9), hs, -6), e2, 1);
    // H_T = 3H'^2 - 3H^2 + H_S
    let ht = add(add(add([0; 5], hp2, 3), h2, -3), hs, 1);
    // H^2 = 9H'^2 - 6H_T + E'^2 and E'^2 = -5H'^2 + sigma + 4H_T
    let sigma = add(add(h2, hp2, -4), ht, 2);
    let image = add(ht, sigma, 1);
    let generator = add(hs, dd, 1);

    assert_eq!(hp2, [4, -2, 1, 1, 0]);
    assert_eq!(ht, [9, -5, 3, 3, 0]);
    assert_eq!(sigma, [3, -2, 2, 2, 0]);

    let cols = [hp2, ht, image];
    let a: [[i64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i]));
    let det = det3(a);
    assert_ne!(det, 0);
    let solve = |j: usize| {
        let mut m = a;
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = generator[i];
        }
        let num = det3(m);
        assert_eq!(num % det, 0);
        num / det
    };
    let (x, y, c) = (solve(0), solve(1), solve(2));
    assert_eq!((x, y, c), (12, -12, 5));
    let check = add(add(add([0; 5], hp2, x), ht, y), image, c);
    assert_eq!(check, generator);

    let lib = verify_mult_by_5().unwrap();
    assert!(lib.holds);
    assert_eq!(lib.multiplier, BigInt::from(c.rem_euclid(12)));
}
