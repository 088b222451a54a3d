use superlie::liesuper::{structural_root_checks, verify_eals, verify_form, verify_superalgebra, weight_decomposition};
use superlie::osp12::*;
use superlie::{Scalar, SparseVector};

fn v(i: usize) -> SparseVector {
    SparseVector::basis(i)
}

#[test]
fn standard_algebra_and_form() {
    let l = osp12_standard();
    assert!(verify_superalgebra(&l).passed());
    assert!(verify_form(&l).unwrap().passed());
    let eals = verify_eals(&l);
    assert!(eals.passed(), "{eals}");
    let d = weight_decomposition(&l).unwrap();
    let alpha = vec![Scalar::int(2)];
    assert_eq!(d.t_of(&alpha), v(H).scale(&Scalar::frac(-1, 4)));
    assert_eq!(d.norm(&alpha), Scalar::frac(-1, 2));
    assert_eq!(d.h_of(&alpha).unwrap(), v(H));
    let s = structural_root_checks(&l, &d);
    assert!(s.passed(), "{s}");
}

#[test]
fn relations_from_the_triple() {
    let l = osp12_standard();
    let xx = l.br(&v(F_PLUS), &v(F_PLUS));
    let yy = l.br(&v(F_MINUS), &v(F_MINUS));
    assert_eq!(l.br(&xx, &yy), v(H).scale(&Scalar::int(-8)));
    assert_eq!(l.br(&v(H), &xx), xx.scale(&Scalar::int(4)));
    assert!(l.br(&xx, &v(F_PLUS)).is_zero());
}

#[test]
fn scrambled_sums_decompose() {
    let cases: &[&[i64]] = &[&[2, 0], &[4, 2, 2], &[0, 0, 0], &[6, 4, 0, 2]];
    for (seed, lams) in cases.iter().enumerate() {
        for top in [0u8, 1] {
            let mods: Vec<_> = lams.iter().enumerate().map(|(k, &l)| irreducible_module(l, (top + k as u8) % 2).unwrap()).collect();
            let (m, _) = scramble(&direct_sum(&mods), seed as u64);
            let d = decompose(&m).unwrap();
            let mut want = lams.to_vec();
            want.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(d.lambdas(), want);
            assert!(d.certificate.passed());
        }
    }
}

#[test]
fn g0_submodule_matches_closure() {
    let m = irreducible_module(4, 0).unwrap();
    let t = generated_g0_submodule(&m, &v(0), &Scalar::int(4)).unwrap();
    assert_eq!(t.len(), 2);
    let z = irreducible_module(0, 0).unwrap();
    assert!(generated_g0_submodule(&z, &v(0), &Scalar::zero()).unwrap().is_empty());
    assert!(generated_g0_submodule(&m, &v(0), &Scalar::int(-2)).is_err());
}

mod props {
    use proptest::prelude::*;
    use superlie::osp12::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn decompose_inverts_scramble(lams in proptest::collection::vec((0i64..=3).prop_map(|l| 2 * l), 1..4), seed in any::<u64>(), top in 0u8..2) {
            let mods: Vec<_> = lams.iter().map(|&l| irreducible_module(l, top).unwrap()).collect();
            let (m, _) = scramble(&direct_sum(&mods), seed);
            prop_assert!(m.check_representation().passed());
            let d = decompose(&m).unwrap();
            let mut want = lams.clone();
            want.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(d.lambdas(), want);
            prop_assert!(d.certificate.passed());
        }

        #[test]
        fn irreducible_spectra(half in 0i64..=7, top in 0u8..2) {
            let lambda = 2 * half;
            let m = irreducible_module(lambda, top).unwrap();
            prop_assert_eq!(m.dim() as i64, lambda + 1);
            let spec = h_spectrum(&m).unwrap();
            let want: Vec<_> = (0..=lambda).map(|k| superlie::Scalar::int(lambda - 2 * k)).collect();
            let mut got = spec.clone();
            got.sort();
            let mut w = want.clone();
            w.sort();
            prop_assert_eq!(got, w);
        }
    }
}
