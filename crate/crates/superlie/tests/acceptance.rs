//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any of them fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superlie::affinize::{affinized_roots, verify_affinized, AffinizedAlgebra, CocycleTorus};
use superlie::document::{builtin, Document};
use superlie::liesuper::{structural_root_checks, verify_eals, verify_form, verify_superalgebra, weight_decomposition, LieSuperalgebra, Weight};
use superlie::matrixsuper::{sl_superalgebra, twisted_affinize, twisted_type, verify_twisted, Star, SuperIndexSet, TwistMap};
use superlie::osp12::{decompose, direct_sum, h_spectrum, irreducible_module, osp12_standard, scramble, E_MINUS, E_PLUS, F_MINUS, F_PLUS, H};
use superlie::osp12::Osp12Module;
use superlie::rootsys::RootSupersystem;
use superlie::{GroupElement, Scalar, SparseVector, Status};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn sl(i: usize, j: usize, zero: bool, zero_prime: bool) -> LieSuperalgebra {
    sl_superalgebra(&SuperIndexSet::new(i, j, zero, zero_prime).unwrap()).unwrap().algebra
}

fn sl12() -> LieSuperalgebra {
    let Document::Algebra(d) = builtin("sl12").unwrap() else { unreachable!() };
    d.to_algebra().unwrap()
}

/// Algebras that are expected to pass the EALS suite, with their even parts.
fn eals_fixtures() -> Vec<(&'static str, LieSuperalgebra)> {
    let base = vec![("osp12", osp12_standard()), ("sl12", sl12()), ("sl32", sl(1, 1, true, false)), ("sl23", sl(1, 1, false, true)), ("sl3", sl(1, 0, true, false))];
    let mut out = Vec::new();
    for (name, l) in base {
        let e = l.even_part();
        out.push((name, l));
        out.push((name, e));
    }
    out
}

fn bv(i: usize) -> SparseVector {
    SparseVector::basis(i)
}

fn osp_ground_truth() -> Outcome {
    let l = osp12_standard();
    let r = verify_superalgebra(&l);
    ensure!(r.passed(), "{}", r.to_json());
    let r = verify_form(&l).map_err(|e| e.to_string())?;
    ensure!(r.passed(), "{}", r.to_json());
    let br = |x: &SparseVector, y: &SparseVector| l.bracket(x, y).map_err(|e| e.to_string());
    let fpp = br(&bv(F_PLUS), &bv(F_PLUS))?;
    let fmm = br(&bv(F_MINUS), &bv(F_MINUS))?;
    ensure!(br(&fpp, &fmm)? == bv(H).scale(&Scalar::int(-8)), "[[F+,F+],[F-,F-]] != -8H");
    ensure!(br(&bv(H), &fpp)? == fpp.scale(&Scalar::int(4)), "[H,[F+,F+]] != 4[F+,F+]");
    ensure!(br(&fpp, &bv(F_PLUS))?.is_zero(), "[[F+,F+],F+] != 0");
    // [F+,F+] and [F-,F-] are nonzero multiples of the even root vectors
    ensure!(fpp.indices().eq([E_PLUS]) && fmm.indices().eq([E_MINUS]), "odd squares leave the even root spaces");
    Ok(())
}

/// Eigenvalues of `h` on the indices of one parity, halved.
fn half_spectrum(m: &Osp12Module, parity: u8) -> Result<Vec<Scalar>, String> {
    let idx = m.indices_of_parity(parity);
    let s = superlie::osp12::spectrum_on(m.act_h(), &idx, true).map_err(|e| e.to_string())?;
    Ok(s.iter().map(|x| x * &Scalar::frac(1, 2)).collect())
}

fn irreducibles() -> Outcome {
    for lambda in (0..=20).step_by(2) {
        for top in [0u8, 1] {
            let m = irreducible_module(lambda, top).map_err(|e| e.to_string())?;
            let r = m.check_representation();
            ensure!(r.passed(), "V({lambda}) top parity {top}: {}", r.to_json());
            ensure!(m.dim() as i64 == lambda + 1 && m.dim() % 2 == 1, "V({lambda}) has dimension {}", m.dim());
            let spec = h_spectrum(&m).map_err(|e| e.to_string())?;
            let want: Vec<Scalar> = (0..=lambda).map(|k| Scalar::int(lambda - 2 * k)).collect();
            ensure!(spec == want, "V({lambda}) h-spectrum {spec:?}");
            // even-index vectors carry lambda/2, lambda/2 - 2, ..., the others lambda/2 - 1, ...
            let u: Vec<Scalar> = (0..=lambda / 2).map(|i| Scalar::int(lambda / 2 - 2 * i)).collect();
            let w: Vec<Scalar> = (0..lambda / 2).map(|i| Scalar::int(lambda / 2 - 1 - 2 * i)).collect();
            let (same, other) = (half_spectrum(&m, top)?, half_spectrum(&m, 1 - top)?);
            ensure!(same == u && other == w, "V({lambda}) half spectra {same:?} / {other:?}");
        }
    }
    Ok(())
}

fn complete_reducibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for trial in 0..100u64 {
        let mut lams: Vec<i64> = Vec::new();
        let mut mods = Vec::new();
        let budget = rng.gen_range(1..=120);
        let mut total = 0;
        loop {
            let l = 2 * rng.gen_range(0..=10);
            if total + l + 1 > budget && !lams.is_empty() {
                break;
            }
            if total + l + 1 > 120 {
                continue;
            }
            total += l + 1;
            lams.push(l);
            mods.push(irreducible_module(l, rng.gen_range(0..2)).unwrap());
        }
        let (m, _) = scramble(&direct_sum(&mods), trial);
        let d = decompose(&m).map_err(|e| format!("trial {trial} {lams:?}: {e}"))?;
        ensure!(d.certificate.passed(), "trial {trial}: {}", d.certificate.to_json());
        lams.sort_unstable_by(|a, b| b.cmp(a));
        ensure!(d.lambdas() == lams, "trial {trial}: recovered {:?}, expected {lams:?}", d.lambdas());
    }
    Ok(())
}

fn supersystem(l: &LieSuperalgebra) -> RootSupersystem {
    weight_decomposition(l).unwrap().to_supersystem().unwrap()
}

fn ears_axioms() -> Outcome {
    let allowed: BTreeSet<Scalar> = [0, 1, -1, 2, -2].iter().map(|&k| Scalar::int(k)).chain([Scalar::frac(1, 2), Scalar::frac(-1, 2)]).collect();
    for (name, s) in [("osp12", supersystem(&osp12_standard())), ("sl12", supersystem(&sl12()))] {
        let r = s.check_axioms();
        ensure!(r.passed(), "{name}: {}", r.to_json());
        for a in s.roots().iter().filter(|a| !a.is_zero()) {
            let ks = s.ratio_set(a);
            ensure!(ks.iter().all(|k| allowed.contains(k)), "{name}: ratio set of {a} is {ks:?}");
        }
        for a in s.real_roots() {
            for b in s.roots() {
                let st = s.root_string(a, b).map_err(|e| e.to_string())?;
                let at = |k: i64| &b.clone() + &a.scale(k);
                ensure!((-st.p..=st.q).all(|k| s.contains(&at(k))), "{name}: string of {b} through {a} has a gap");
                ensure!(!s.contains(&at(-st.p - 1)) && !s.contains(&at(st.q + 1)), "{name}: string of {b} through {a} is not maximal");
                let want = &(&Scalar::int(2) * &s.pair(b, a)) * &s.norm(a).inv().unwrap();
                ensure!(Scalar::int(st.p - st.q) == want, "{name}: p - q for {b} through {a}");
                for k in -st.p..=st.q {
                    let refl = s.reflect(a, &at(k)).map_err(|e| e.to_string())?;
                    ensure!(s.contains(&refl), "{name}: reflection of {} leaves the system", at(k));
                }
            }
        }
        s.reflections_preserve()?;
        let survivors = s.mutation_survivors();
        ensure!(survivors.is_empty(), "{name}: deleting {survivors:?} breaks no axiom");
    }
    Ok(())
}

fn structural_roots() -> Outcome {
    let mut checked = 0;
    for (name, l) in eals_fixtures() {
        if !verify_eals(&l).passed() {
            continue;
        }
        checked += 1;
        let d = weight_decomposition(&l).map_err(|e| e.to_string())?;
        let r = structural_root_checks(&l, &d);
        ensure!(r.passed(), "{name}: {}", r.to_json());
    }
    ensure!(checked == eals_fixtures().len(), "only {checked} fixtures pass the EALS suite");
    Ok(())
}

fn untwisted_affinization() -> Outcome {
    let tori = |rank: usize| [CocycleTorus::trivial(rank), CocycleTorus::constant(rank, Scalar::int(-1)).unwrap()];
    for (name, base) in [("osp12", osp12_standard()), ("sl12", sl12())] {
        let weights: Vec<Weight> = weight_decomposition(&base).unwrap().weights().cloned().collect();
        for rank in [1, 2] {
            for torus in tori(rank) {
                let a = AffinizedAlgebra::new(base.clone(), torus).map_err(|e| e.to_string())?;
                let r = verify_affinized(&a, 3, 500, 17).map_err(|e| e.to_string())?;
                ensure!(r.passed(), "{name} rank {rank}: {}", r.to_json());
                for c in ["affinized.jacobi", "affinized.form_invariance", "affinized.form_even", "affinized.form_nondegenerate", "affinized.axiom1_witnesses", "affinized.axiom2_nilpotent", "affinized.root_list"] {
                    ensure!(r.status(c) == Some(Status::Pass), "{name} rank {rank}: {c} is {:?}", r.status(c));
                }
                let (roots, _) = affinized_roots(&a, 3).map_err(|e| e.to_string())?;
                let got: BTreeSet<(Weight, GroupElement)> = roots.iter().map(|x| (x.alpha.clone(), x.lambda.clone())).collect();
                let want: BTreeSet<(Weight, GroupElement)> =
                    weights.iter().flat_map(|w| GroupElement::box_window(rank, 3).into_iter().map(move |l| (w.clone(), l))).collect();
                ensure!(got == want, "{name} rank {rank}: root list differs from base roots plus window degrees");
            }
        }
    }
    Ok(())
}

fn twisted_construction() -> Outcome {
    let balanced = SuperIndexSet::new(1, 1, false, false).unwrap();
    ensure!(twisted_type(&balanced) == "C(1,1)", "label without zero indices: {}", twisted_type(&balanced));
    for (zero, zero_prime) in [(true, false), (false, true)] {
        let idx = SuperIndexSet::new(1, 1, zero, zero_prime).unwrap();
        ensure!(twisted_type(&idx) == "BC(1,1)", "label with zero indices: {}", twisted_type(&idx));
        let slp = sl_superalgebra(&idx).map_err(|e| e.to_string())?;
        let map = TwistMap::sharp(&slp, Star::identity(1));
        let t = twisted_affinize(slp, CocycleTorus::trivial(1), map).map_err(|e| e.to_string())?;
        let r = verify_twisted(&t, 1, 2, 200, 5).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{}: {}", twisted_type(&idx), r.to_json());
        for c in ["twisted.map_order_four", "twisted.map_preserves_form", "twisted.pairing_pattern", "twisted.pi_families", "twisted.zero_space_is_cartan", "twisted.ears.s4_root_strings"] {
            ensure!(r.status(c) == Some(Status::Pass), "{c} is {:?}", r.status(c));
        }
    }
    Ok(())
}

fn cross_module() -> Outcome {
    let mut checked = 0;
    for (name, l) in eals_fixtures() {
        if !verify_eals(&l).passed() {
            continue;
        }
        checked += 1;
        let d = weight_decomposition(&l).map_err(|e| e.to_string())?;
        let r = d.to_supersystem().map_err(|e| e.to_string())?.check_axioms();
        ensure!(r.passed(), "{name}: {}", r.to_json());
        let e = l.even_part();
        ensure!(e.parities().iter().all(|&p| p == 0), "{name}: even part has odd elements");
        let r = verify_eals(&e);
        ensure!(r.passed(), "{name} even part: {}", r.to_json());
    }
    ensure!(checked == eals_fixtures().len(), "only {checked} fixtures pass the EALS suite");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("osp12_ground_truth", osp_ground_truth, 1),
        ("irreducible_modules", irreducibles, 5),
        ("complete_reducibility", complete_reducibility, 60),
        ("ears_axioms_and_mutations", ears_axioms, 5),
        ("structural_root_facts", structural_roots, 120),
        ("untwisted_affinization", untwisted_affinization, 120),
        ("twisted_construction", twisted_construction, 120),
        ("eals_roots_form_ears", cross_module, 120),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let out = out.and_then(|()| {
            if took > Duration::from_secs(*limit) {
                Err(format!("took {took:?}, limit {limit} s"))
            } else {
                Ok(())
            }
        });
        match out {
            Ok(()) => println!("[pass] {}. {name} ({} ms)", k + 1, took.as_millis()),
            Err(e) => {
                failed += 1;
                println!("[fail] {}. {name} ({} ms): {e}", k + 1, took.as_millis());
            }
        }
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
