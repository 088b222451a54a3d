use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superlie::affinize::{AffinizedAlgebra, CocycleTorus, GradedLoopElement};
use superlie::liesuper::{is_zero_weight, weight_decomposition, Weight};
use superlie::matrixsuper::{
    check_twist_map, pi_projection, sl_superalgebra, twisted_affinize, twisted_type, verify_twisted, Index, SlPresentation, Star,
    SuperIndexSet, TorusElement, TorusMatrix, TwistMap, TwistedAlgebra, TwistedElement,
};
use superlie::{GroupElement, Scalar, SparseVector, Status};

fn g(c: &[i64]) -> GroupElement {
    GroupElement::new(c.to_vec())
}

fn random_entry(rng: &mut ChaCha8Rng, rank: usize) -> TorusElement {
    let mut a = TorusElement::default();
    for _ in 0..rng.gen_range(1..=2) {
        let tau = GroupElement::new((0..rank).map(|_| rng.gen_range(-2..=2)).collect());
        a.add_term(&tau, &Scalar::int(rng.gen_range(-3..=3)));
    }
    a
}

fn random_matrix(rng: &mut ChaCha8Rng, idx: &SuperIndexSet, rank: usize, parity: Option<u8>) -> TorusMatrix {
    let mut m = TorusMatrix::square(idx);
    for _ in 0..4 {
        let (r, c) = (rng.gen_range(0..idx.len()), rng.gen_range(0..idx.len()));
        if parity.is_some_and(|p| (idx.parity(r) + idx.parity(c)) % 2 != p) {
            continue;
        }
        m.add_entry(r, c, &random_entry(rng, rank));
    }
    m
}

fn fixtures() -> Vec<(SuperIndexSet, CocycleTorus, Star)> {
    vec![
        (SuperIndexSet::new(1, 1, true, false).unwrap(), CocycleTorus::trivial(1), Star::identity(1)),
        (SuperIndexSet::new(1, 1, false, true).unwrap(), CocycleTorus::constant(2, Scalar::int(-1)).unwrap(), Star { flips: vec![true, false] }),
        (SuperIndexSet::new(2, 1, true, true).unwrap(), CocycleTorus::trivial(1), Star { flips: vec![true] }),
    ]
}

#[test]
fn index_sets() {
    let idx = SuperIndexSet::new(2, 1, true, true).unwrap();
    let labels: Vec<String> = (0..idx.len()).map(|k| idx.label(k)).collect();
    assert_eq!(labels, ["0", "1", "2", "1bar", "2bar", "0'", "1'", "1bar'"]);
    assert_eq!(idx.parities(), [0, 0, 0, 0, 0, 1, 1, 1]);
    assert_eq!((idx.i_size(), idx.j_size()), (5, 3));
    for k in 0..idx.len() {
        assert_eq!(idx.bar(idx.bar(k)), k);
        assert_eq!(idx.parity(idx.bar(k)), idx.parity(k));
    }
    assert_eq!(idx.bar(0), 0);
    assert_eq!(idx.bar(5), 5);
    assert_eq!(idx.index(idx.bar(1)), Index::IBar(1));
    assert!(SuperIndexSet::new(0, 0, false, false).is_err());
}

#[test]
fn supertraces() {
    let idx = SuperIndexSet::new(1, 1, true, false).unwrap();
    let a = TorusElement::monomial(Scalar::int(3), g(&[1]));
    let mut m = TorusMatrix::unit(&idx, 0, 0, a.clone());
    m.add_entry(3, 3, &a);
    m.add_entry(0, 4, &a);
    assert!(m.supertrace(&idx).unwrap().is_zero());
    assert_eq!(m.trace().unwrap(), a.scale(&Scalar::int(2)));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = CocycleTorus::constant(2, Scalar::int(-1)).unwrap();
    for _ in 0..30 {
        let x = random_matrix(&mut rng, &idx, 2, None);
        let y = random_matrix(&mut rng, &idx, 2, None);
        assert!(x.supercommutator(&y, &idx, &q).unwrap().supertrace(&idx).unwrap().is_zero());
    }
}

#[test]
fn diamond_transpose() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (idx, torus, star) in fixtures() {
        let rank = torus.rank();
        for _ in 0..20 {
            let x = random_matrix(&mut rng, &idx, rank, None);
            let y = random_matrix(&mut rng, &idx, rank, None);
            assert_eq!(x.diamond(&idx, &star).diamond(&idx, &star), x);
            // (XY)^dia = Y^dia X^dia
            let lhs = x.mul(&y, &torus).unwrap().diamond(&idx, &star);
            let rhs = y.diamond(&idx, &star).mul(&x.diamond(&idx, &star), &torus).unwrap();
            assert_eq!(lhs, rhs);
            // str(X^dia) = str(X)^*
            assert_eq!(x.diamond(&idx, &star).supertrace(&idx).unwrap(), x.supertrace(&idx).unwrap().star(&star));
        }
    }
}

#[test]
fn sharp_squares_to_parity_sign() {
    let idx = SuperIndexSet::new(1, 1, true, false).unwrap();
    let star = Star::identity(1);
    let a = TorusElement::monomial(Scalar::one(), g(&[1]));
    for r in 0..idx.len() {
        for c in 0..idx.len() {
            let e = TorusMatrix::unit(&idx, r, c, a.clone());
            let twice = e.sharp(&idx, &star).sharp(&idx, &star);
            let want = if idx.parity(r) == idx.parity(c) { e.clone() } else { e.scale(&Scalar::int(-1)) };
            assert_eq!(twice, want, "e({}, {})", idx.label(r), idx.label(c));
            assert_eq!(twice.sharp(&idx, &star).sharp(&idx, &star), e);
        }
    }
}

#[test]
fn sharp_is_an_automorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (idx, torus, star) in fixtures() {
        let rank = torus.rank();
        for _ in 0..25 {
            let (p, q) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8));
            let x = random_matrix(&mut rng, &idx, rank, Some(p));
            let y = random_matrix(&mut rng, &idx, rank, Some(q));
            let lhs = x.supercommutator(&y, &idx, &torus).unwrap().sharp(&idx, &star);
            let rhs = x.sharp(&idx, &star).supercommutator(&y.sharp(&idx, &star), &idx, &torus).unwrap();
            assert_eq!(lhs, rhs);
            let f = x.form(&y, &idx, &torus).unwrap();
            assert_eq!(x.sharp(&idx, &star).form(&y.sharp(&idx, &star), &idx, &torus).unwrap(), f);
        }
    }
}

#[test]
fn twist_map_matches_matrix_sharp() {
    for (idx, torus, star) in fixtures() {
        let sl = sl_superalgebra(&idx).unwrap();
        let map = TwistMap::sharp(&sl, star.clone());
        let l = AffinizedAlgebra::new(sl.algebra.clone(), torus).unwrap();
        for x in l.window_basis(1) {
            let want = sl.to_torus_matrix(&x).sharp(&idx, &star);
            assert_eq!(sl.to_torus_matrix(&map.apply(&x)), want);
            if !x.loop_part.is_empty() {
                assert_eq!(sl.from_torus_matrix(&sl.to_torus_matrix(&x)).unwrap(), x);
            }
        }
        let r = check_twist_map(&l, &map, 1).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}

#[test]
fn balanced_index_sets_are_rejected() {
    let idx = SuperIndexSet::new(1, 1, false, false).unwrap();
    assert!(idx.is_balanced());
    assert!(sl_superalgebra(&idx).is_err());
    assert_eq!(twisted_type(&idx), "C(1,1)");
    assert_eq!(twisted_type(&SuperIndexSet::new(1, 1, true, false).unwrap()), "BC(1,1)");
    assert_eq!(twisted_type(&SuperIndexSet::new(1, 1, false, true).unwrap()), "BC(1,1)");
}

fn sl12() -> SlPresentation {
    // I = {0}, J = {1', 1bar'}
    sl_superalgebra(&SuperIndexSet::new(0, 1, true, false).unwrap()).unwrap()
}

#[test]
fn sl12_roots() {
    let sl = sl12();
    assert_eq!(sl.dim(), 8);
    let datum = weight_decomposition(&sl.algebra).unwrap();
    let diff = |a: usize, b: usize| sl.epsilon(a).sub(&sl.epsilon(b));
    let mut want: Vec<Weight> = vec![vec![Scalar::zero(); 2]];
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                want.push(sl.weight(&diff(a, b)));
            }
        }
    }
    want.sort();
    let got: Vec<Weight> = datum.weights().cloned().collect();
    assert_eq!(got, want);

    // eps - delta_1 is odd and one-dimensional; delta_1 - delta_2 is even
    let odd = datum.find(&sl.weight(&diff(0, 1))).unwrap();
    assert_eq!((odd.space.len(), odd.even, odd.odd), (1, false, true));
    let even = datum.find(&sl.weight(&diff(1, 2))).unwrap();
    assert!(even.even && !even.odd);

    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if a != b && c != d {
                        let (x, y) = (diff(a, b), diff(c, d));
                        assert_eq!(datum.pair(&sl.weight(&x), &sl.weight(&y)), sl.gl_pair(&x, &y));
                    }
                }
            }
        }
    }
    // (eps - delta_1) is isotropic, (delta_1 - delta_2) has norm -2
    assert!(sl.gl_pair(&diff(0, 1), &diff(0, 1)).is_zero());
    assert_eq!(sl.gl_pair(&diff(1, 2), &diff(1, 2)), Scalar::int(-2));
}

fn small_twisted(zero: bool, zero_prime: bool) -> TwistedAlgebra {
    let sl = sl_superalgebra(&SuperIndexSet::new(1, 1, zero, zero_prime).unwrap()).unwrap();
    let map = TwistMap::sharp(&sl, Star::identity(1));
    twisted_affinize(sl, CocycleTorus::trivial(1), map).unwrap()
}

#[test]
fn projection_to_fixed_cartan() {
    let t = small_twisted(true, false);
    let sigma = t.sigma();
    let n = sigma.nrows();
    let h = t.loop_algebra().datum().cartan.len();
    // a pure degree is fixed
    let mut tau = vec![Scalar::zero(); n];
    tau[h + 1] = Scalar::int(3);
    assert_eq!(pi_projection(&sigma, &tau), tau);
    assert!(is_zero_weight(&pi_projection(&sigma, &vec![Scalar::zero(); n])));
    // pi(eps_i - eps_r) = (eps_i - eps_r + eps_rbar - eps_ibar) / 2
    let sl = t.sl();
    let idx = &sl.idx;
    let ext = |w: Weight| {
        let mut w = w;
        w.resize(n, Scalar::zero());
        w
    };
    for (i, r) in [(0, 1), (1, 2), (0, 3), (3, 1)] {
        let a = sl.epsilon(i).sub(&sl.epsilon(r));
        let mut want = a.clone();
        want.axpy(&Scalar::one(), &sl.epsilon(idx.bar(r)));
        want.axpy(&Scalar::int(-1), &sl.epsilon(idx.bar(i)));
        let want = want.scale(&Scalar::frac(1, 2));
        assert_eq!(pi_projection(&sigma, &ext(sl.weight(&a))), ext(sl.weight(&want)));
    }
}

#[test]
fn twisted_brackets_and_form() {
    let t = small_twisted(true, false);
    let basis = t.window_basis(1, 2);
    let (c, d) = (TwistedElement::c_unit(), TwistedElement::d_unit());
    assert_eq!(t.form(&c, &d).unwrap(), Scalar::one());
    assert!(t.form(&c, &c).unwrap().is_zero());
    assert!(t.form(&d, &d).unwrap().is_zero());
    for (_, x) in &basis {
        t.check_grading(x).unwrap();
        let Some(&j) = x.parts.keys().next() else { continue };
        assert_eq!(t.bracket(&d, x).unwrap(), x.scale(&Scalar::int(j)));
        assert!(t.bracket(&c, x).unwrap().is_zero());
    }
    // [x t^i, y t^-i] picks up i (x,y) c
    let hit = basis.iter().find_map(|(_, x)| {
        let i = *x.parts.keys().next()?;
        if i == 0 {
            return None;
        }
        basis.iter().find_map(|(_, y)| {
            let f = t.form(x, y).ok()?;
            (y.parts.keys().next() == Some(&-i) && !f.is_zero()).then(|| (i, f, t.bracket(x, y).unwrap()))
        })
    });
    let (i, f, b) = hit.expect("a pairing across opposite degrees");
    assert_eq!(b.c, Scalar::int(i) * f);
}

#[test]
fn zero_degree_window_is_the_fixed_cartan() {
    let t = small_twisted(false, true);
    let zero: Vec<_> = t.window_basis(0, 0).into_iter().filter(|(w, _)| is_zero_weight(w)).collect();
    assert_eq!(zero.len(), t.sigma_cartan().len() + 2 + 2);
    assert!(zero.iter().all(|(_, x)| t.in_cartan(x)));
}

#[test]
fn twisted_affinizations_verify() {
    for (zero, zero_prime) in [(true, false), (false, true)] {
        let t = small_twisted(zero, zero_prime);
        let r = verify_twisted(&t, 1, 2, 40, 1).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.status("twisted.ears.s4_root_strings"), Some(Status::Pass));
    }
}

#[test]
fn sharp_squared_is_not_a_twist() {
    let sl = sl_superalgebra(&SuperIndexSet::new(1, 1, true, false).unwrap()).unwrap();
    let map = TwistMap::sharp(&sl, Star::identity(1)).power(2);
    let l = AffinizedAlgebra::new(sl.algebra.clone(), CocycleTorus::trivial(1)).unwrap();
    let r = check_twist_map(&l, &map, 1).unwrap();
    assert_eq!(r.status("twisted.map_order_four"), Some(Status::Fail));
    assert!(twisted_affinize(sl, CocycleTorus::trivial(1), map).is_err());
}

#[test]
fn loop_elements_round_trip() {
    let sl = sl12();
    let x = GradedLoopElement::loop_term(SparseVector::basis(0).add(&SparseVector::basis(7)), g(&[2]));
    assert_eq!(sl.from_torus_matrix(&sl.to_torus_matrix(&x)).unwrap(), x);
}
