use jacobiws::linear::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::sync::Arc;

/// Rank by plain dense elimination.
fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..ncols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn to_dense(row: &SparseRow, ncols: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); ncols];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

fn sparse(v: &[Rational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-3i64..4, 1i64..3), c), r)
            .prop_map(|m| m.into_iter().map(|row| row.into_iter().map(|(n, d)| rat(n, d)).collect()).collect())
    })
}

proptest! {
    #[test]
    fn rref_matches_dense_elimination(m in arb_matrix()) {
        let ncols = m[0].len();
        let red = rref(m.iter().map(|r| sparse(r)), ncols);
        prop_assert_eq!(red.rank(), dense_rank(m.clone()));
        prop_assert_eq!(rank(&m), dense_rank(m.clone()));
        // reduced form: unit pivots, pivot columns cleared, increasing pivots
        for (i, row) in red.rows.iter().enumerate() {
            prop_assert_eq!(row[0].0, red.pivots[i]);
            prop_assert!(row[0].1.is_one());
            for (j, other) in red.rows.iter().enumerate() {
                if i != j {
                    prop_assert!(other.iter().all(|(c, _)| *c != red.pivots[i]));
                }
            }
        }
        prop_assert!(red.pivots.windows(2).all(|w| w[0] < w[1]));
        // same row space
        let mut stacked: Vec<Vec<Rational>> = red.rows.iter().map(|r| to_dense(r, ncols)).collect();
        let k = stacked.len();
        stacked.extend(m.iter().cloned());
        prop_assert_eq!(dense_rank(stacked), k);
    }

    #[test]
    fn solve_linear_solutions_check(m in arb_matrix(), x in prop::collection::vec(-3i64..4, 7)) {
        let ncols = m[0].len();
        let xs: Vec<Rational> = x[..ncols].iter().map(|&v| int(v)).collect();
        let rhs: Vec<Rational> = m.iter().map(|row| row.iter().zip(&xs).map(|(a, b)| a * b).sum()).collect();
        let columns: Vec<Vec<Rational>> = (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect();
        let a = solve_linear(&columns, &rhs).expect("consistent system");
        for (i, row) in m.iter().enumerate() {
            let lhs: Rational = row.iter().zip(&a).map(|(p, q)| p * q).sum();
            prop_assert_eq!(&lhs, &rhs[i]);
        }
    }
}

#[test]
fn lincomb_arithmetic() {
    let mut a: LinComb<&str> = LinComb::from_terms([("x", int(2)), ("y", int(-1))]);
    let b = LinComb::from_terms([("y", int(-1)), ("z", rat(1, 2))]);
    assert_eq!(a.sub(&a), LinComb::new());
    a.axpy(&int(-1), &b);
    assert_eq!(a.get(&"y"), int(0));
    assert_eq!(a.len(), 2);
    assert_eq!(a.to_string(), "2*[x] + -1/2*[z]");
    assert!(LinComb::<&str>::new().is_zero());
    assert_eq!(LinComb::<&str>::new().to_string(), "0");
    let doubled = b.scaled(&int(2));
    assert_eq!(doubled.get(&"z"), int(1));
    assert!(b.scaled(&int(0)).is_zero());
}

fn space() -> QuotientSpace<&'static str> {
    // a = b, c = 2a + d; leftmost pivots a, b leave basis {c, d}
    let rels = vec![
        LinComb::from_terms([("a", int(1)), ("b", int(-1))]),
        LinComb::from_terms([("c", int(1)), ("a", int(-2)), ("d", int(-1))]),
    ];
    QuotientSpace::new(vec!["a", "b", "c", "d"], &rels).unwrap()
}

#[test]
fn quotient_space_reduction() {
    let q = space();
    assert_eq!(q.dim(), 2);
    assert_eq!(q.rank(), 2);
    assert_eq!(q.basis_keys(), vec!["c", "d"]);
    let a = q.reduce(&LinComb::basis("a")).unwrap();
    assert_eq!(a, vec![rat(1, 2), rat(-1, 2)]);
    assert_eq!(q.reduce(&LinComb::basis("b")).unwrap(), a);
    assert_eq!(q.from_coords(&a), LinComb::from_terms([("c", rat(1, 2)), ("d", rat(-1, 2))]));
    assert!(matches!(q.reduce(&LinComb::basis("e")), Err(LinearError::UnknownKey(_))));
    assert!(q.rref().dump().lines().all(|l| l.split(' ').count() == 3));
}

#[test]
fn unknown_relation_key_is_rejected() {
    let rel = LinComb::from_terms([("a", int(1)), ("zz", int(1))]);
    assert!(QuotientSpace::new(vec!["a"], &[rel]).is_err());
}

#[test]
fn functional_solve_and_errors() {
    let q = Arc::new(space());
    let f = solve_functional(
        q.clone(),
        &[(LinComb::basis("a"), int(3)), (LinComb::basis("c"), int(7))],
    )
    .unwrap();
    assert_eq!(f.values, vec![int(7), int(1)]);
    assert_eq!(f.eval(&LinComb::basis("b")).unwrap(), int(3));
    assert_eq!(f.eval(&LinComb::basis("c")).unwrap(), int(7));

    let err = solve_functional(q.clone(), &[(LinComb::basis("a"), int(1))]).unwrap_err();
    match err {
        LinearError::Underdetermined(free) => assert_eq!(free, vec!["d".to_string()]),
        e => panic!("unexpected {e}"),
    }

    let cons = vec![
        (LinComb::basis("a"), int(1)),
        (LinComb::basis("d"), int(0)),
        (LinComb::basis("b"), int(2)),
    ];
    match solve_functional(q.clone(), &cons).unwrap_err() {
        LinearError::Inconsistent(cert) => {
            // the certificate combination must vanish but carry the stated value
            let mut combo = vec![Rational::zero(); q.dim()];
            let mut value = Rational::zero();
            for (i, c) in &cert.combination {
                let r = q.reduce(&cons[*i].0).unwrap();
                for (x, y) in combo.iter_mut().zip(r) {
                    *x += c * y;
                }
                value += c * &cons[*i].1;
            }
            assert!(combo.iter().all(Zero::is_zero));
            assert_eq!(value, cert.value);
            assert!(!value.is_zero());
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn functional_dimension_check() {
    let q = Arc::new(space());
    assert!(matches!(Functional::new(q, vec![int(1)]), Err(LinearError::Dimension { expected: 2, got: 1 })));
}
