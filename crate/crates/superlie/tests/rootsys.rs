use proptest::prelude::*;

use superlie::document::{builtin, Document};
use superlie::liesuper::weight_decomposition;
use superlie::osp12::osp12_standard;
use superlie::rootsys::{classify, RootSupersystem};
use superlie::{GroupElement, Scalar, Status, SymmetricGroupForm};

fn g(c: &[i64]) -> GroupElement {
    GroupElement::new(c.to_vec())
}

fn osp() -> RootSupersystem {
    weight_decomposition(&osp12_standard()).unwrap().to_supersystem().unwrap()
}

fn sl12() -> RootSupersystem {
    let Document::Algebra(d) = builtin("sl12").unwrap() else { unreachable!() };
    weight_decomposition(&d.to_algebra().unwrap()).unwrap().to_supersystem().unwrap()
}

fn allowed() -> Vec<Scalar> {
    [0, 1, -1, 2, -2].iter().map(|&k| Scalar::int(k)).chain([Scalar::frac(1, 2), Scalar::frac(-1, 2)]).collect()
}

#[test]
fn osp_system() {
    let s = osp();
    assert_eq!(s.len(), 5);
    assert_eq!(s.real_roots().len(), 4);
    assert!(s.nonsingular_roots().is_empty());
    assert!(s.check_axioms().passed());
    assert!(s.reflections_preserve().is_ok());
}

#[test]
fn sl12_system() {
    let s = sl12();
    assert_eq!(s.len(), 7);
    assert_eq!(s.real_roots().len(), 2);
    assert_eq!(s.nonsingular_roots().len(), 4);
    assert_eq!(s.radical_roots().len(), 1);
    let r = s.check_axioms();
    assert!(r.passed(), "{r}");
    assert!(s.reflections_preserve().is_ok());
}

#[test]
fn ratios_and_strings() {
    for s in [osp(), sl12()] {
        for a in s.roots().iter().filter(|a| !a.is_zero()) {
            let ks = s.ratio_set(a);
            assert!(ks.iter().all(|k| allowed().contains(k)), "{a}: {ks:?}");
        }
        for a in s.real_roots() {
            for b in s.roots() {
                let st = s.root_string(a, b).unwrap();
                assert_eq!(Scalar::int(st.p - st.q), s.cartan_number(a, b).unwrap());
                assert_eq!(st.members.len() as i64, st.p + st.q + 1);
                assert!(st.members.iter().all(|m| s.contains(m)));
            }
        }
    }
}

#[test]
fn every_deletion_breaks_an_axiom() {
    for s in [osp(), sl12()] {
        assert!(s.mutation_survivors().is_empty());
    }
}

#[test]
fn deleting_a_root_is_reported() {
    let s = osp();
    let rest: Vec<_> = s.roots().iter().filter(|r| **r != g(&[-1])).cloned().collect();
    let m = classify(&rest, s.form()).unwrap();
    assert_eq!(m.check_axioms().status("ears.s2_symmetric"), Some(Status::Fail));
}

#[test]
fn affine_window_skips_boundary() {
    // A1 affine pattern: alpha in {0, +-1} plus any multiple of delta
    let form = SymmetricGroupForm::from_ints(&[&[2, 0], &[0, 0]]).unwrap();
    let roots: Vec<_> = (-1..=1).flat_map(|a| (-3..=3).map(move |l| g(&[a, l]))).collect();
    let s = classify(&roots, &form).unwrap();
    // unwindowed, the string of (0,3) through (1,1) is cut off at (1,4)
    assert_eq!(s.check_axioms().status("ears.s4_root_strings"), Some(Status::Fail));
    let inside = |x: &GroupElement| x.coords[1].abs() <= 3;
    let r = s.check_axioms_in(Some(&inside));
    assert!(r.passed(), "{r}");
    assert_eq!(s.radical_roots().len(), 7);
}

proptest! {
    #[test]
    fn classify_is_idempotent(
        pts in proptest::collection::vec((-3i64..=3, -3i64..=3), 0..12),
        f in (-2i64..=2, -2i64..=2, -2i64..=2),
    ) {
        let form = SymmetricGroupForm::from_ints(&[&[f.0, f.1], &[f.1, f.2]]).unwrap();
        let mut roots: Vec<_> = pts.iter().map(|&(a, b)| g(&[a, b])).collect();
        roots.push(g(&[0, 0]));
        let s = classify(&roots, &form).unwrap();
        let t = classify(s.roots(), &form).unwrap();
        prop_assert_eq!(&s, &t);
        let parts = s.real_roots().len() + s.radical_roots().len() + s.nonsingular_roots().len();
        prop_assert_eq!(parts, s.len());
    }

    #[test]
    fn symmetric_closure_passes_s2(pts in proptest::collection::vec((-3i64..=3, -3i64..=3), 1..8)) {
        let form = SymmetricGroupForm::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        let roots: Vec<_> = pts.iter().flat_map(|&(a, b)| [g(&[a, b]), g(&[-a, -b])]).chain([g(&[0, 0])]).collect();
        let s = classify(&roots, &form).unwrap();
        prop_assert_eq!(s.check_axioms().status("ears.s2_symmetric"), Some(Status::Pass));
    }
}
