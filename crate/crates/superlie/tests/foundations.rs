use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use superlie::foundations::{integer_coords, integer_span_basis, inverse, kernel, rank, solve_linear, EchelonBasis};
use superlie::{GroupElement, Scalar, SparseMatrix, SparseVector, SymmetricGroupForm};

fn rat() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rat(), rat()).prop_map(|(re, im)| Scalar::complex(re, im))
}

fn small_int_matrix(n: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), n)
        .prop_map(|rows| SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_none());
        }
    }

    #[test]
    fn scalar_strings_round_trip(a in scalar()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn form_symmetry(g in proptest::collection::vec(-4i64..=4, 6), a in proptest::collection::vec(-5i64..=5, 3), b in proptest::collection::vec(-5i64..=5, 3)) {
        let rows = [[g[0], g[1], g[2]], [g[1], g[3], g[4]], [g[2], g[4], g[5]]];
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let f = SymmetricGroupForm::from_ints(&refs).unwrap();
        let (a, b) = (GroupElement::new(a), GroupElement::new(b));
        prop_assert_eq!(f.eval(&a, &b).unwrap(), f.eval(&b, &a).unwrap());
        // bilinear in the first slot
        let sum = &a + &b;
        prop_assert_eq!(f.eval(&sum, &b).unwrap(), f.eval(&a, &b).unwrap() + f.eval(&b, &b).unwrap());
    }

    #[test]
    fn solve_linear_solutions_solve(m in small_int_matrix(4), x in proptest::collection::vec(-3i64..=3, 4)) {
        let x = SparseVector::from_dense(&x.iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>());
        let rhs = m.mul_vec(&x);
        let y = solve_linear(&m, &rhs).expect("rhs is in the image");
        prop_assert_eq!(m.mul_vec(&y), rhs);
    }

    #[test]
    fn rank_nullity(m in small_int_matrix(5)) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m.rows_vec(), 5) + k.len(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        if k.is_empty() {
            let inv = inverse(&m).unwrap();
            prop_assert_eq!(m.mul(&inv), SparseMatrix::identity(5));
        } else {
            prop_assert!(inverse(&m).is_none());
        }
    }

    #[test]
    fn echelon_membership_matches_rank(vs in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 1..5)) {
        let vs: Vec<SparseVector> = vs.iter().map(|v| SparseVector::from_dense(&v.iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>())).collect();
        let e = EchelonBasis::from_vectors(&vs);
        prop_assert_eq!(e.rank(), rank(&vs, 4));
        for v in &vs {
            prop_assert!(e.contains(v));
        }
        let sum = vs.iter().fold(SparseVector::new(), |acc, v| acc.add(v));
        prop_assert!(e.contains(&sum));
    }

    #[test]
    fn integer_span_coordinates(vs in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..5), cs in proptest::collection::vec(-3i64..=3, 5)) {
        let q = |v: &Vec<i64>| v.iter().map(|&c| BigRational::from_integer(c.into())).collect::<Vec<_>>();
        let basis = integer_span_basis(&vs.iter().map(q).collect::<Vec<_>>());
        let mut target = vec![0i64; 3];
        for (v, c) in vs.iter().zip(&cs) {
            for k in 0..3 {
                target[k] += c * v[k];
            }
        }
        let coords = integer_coords(&basis, &q(&target)).expect("integer combination of the span");
        let mut back = vec![BigRational::from_integer(0.into()); 3];
        for (b, c) in basis.iter().zip(&coords) {
            for k in 0..3 {
                back[k] += &b[k] * BigRational::from_integer((*c).into());
            }
        }
        prop_assert_eq!(back, q(&target));
    }
}

#[test]
fn zeta_powers() {
    assert_eq!(Scalar::zeta_pow(1), Scalar::zeta());
    assert_eq!(Scalar::zeta_pow(2), Scalar::int(-1));
    assert_eq!(Scalar::zeta_pow(-1), Scalar::zeta_pow(3));
    assert!(Scalar::zeta_pow(4).is_one());
    assert_eq!("-1/2+3/4*i".parse::<Scalar>().unwrap().to_string(), "-1/2+3/4*i");
    assert!("1/0".parse::<Scalar>().is_err());
}

#[test]
fn box_windows() {
    assert_eq!(GroupElement::box_window(2, 1).len(), 9);
    assert_eq!(GroupElement::box_window(1, 3).len(), 7);
}
