use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::LieSuperalgebra;
use super::form::verify_form;
use super::verify_superalgebra;
use crate::error::{Error, Result};
use crate::foundations::{inverse, Scalar, SparseMatrix, SparseVector};
use crate::report::Report;
use crate::rootsys::{FunctionalLattice, RootSupersystem};

/// A weight functional on the Cartan, as its values on the Cartan basis.
pub type Weight = Vec<Scalar>;

pub fn format_weight(w: &[Scalar]) -> String {
    let parts: Vec<String> = w.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn weight_add(a: &[Scalar], b: &[Scalar]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn weight_scale(a: &[Scalar], k: &Scalar) -> Weight {
    a.iter().map(|x| x * k).collect()
}

pub fn weight_neg(a: &[Scalar]) -> Weight {
    weight_scale(a, &Scalar::int(-1))
}

pub fn is_zero_weight(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub weight: Weight,
    /// Basis indices spanning the weight space.
    pub space: Vec<usize>,
    pub even: bool,
    pub odd: bool,
    /// The Cartan element representing the weight through the form.
    pub t: SparseVector,
}

/// Roots of an algebra with respect to its declared Cartan, the vectors
/// `t_alpha`, and the transferred form `(alpha, beta) = (t_alpha, t_beta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan: Vec<usize>,
    /// Sorted lexicographically by weight.
    pub roots: Vec<Root>,
    gram_inv: SparseMatrix,
}

impl RootDatum {
    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.roots.iter().map(|r| &r.weight)
    }

    pub fn find(&self, w: &[Scalar]) -> Option<&Root> {
        self.roots.binary_search_by(|r| r.weight.as_slice().cmp(w)).ok().map(|k| &self.roots[k])
    }

    pub fn contains(&self, w: &[Scalar]) -> bool {
        self.find(w).is_some()
    }

    pub fn is_even_root(&self, w: &[Scalar]) -> bool {
        self.find(w).is_some_and(|r| r.even)
    }

    pub fn is_odd_root(&self, w: &[Scalar]) -> bool {
        self.find(w).is_some_and(|r| r.odd)
    }

    pub fn even_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.even)
    }

    pub fn odd_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.odd)
    }

    /// The transferred form on weights.
    pub fn pair(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let bv = SparseVector::from_dense(b);
        self.gram_inv.mul_vec(&bv).dot(&SparseVector::from_dense(a))
    }

    pub fn norm(&self, a: &[Scalar]) -> Scalar {
        self.pair(a, a)
    }

    pub fn is_real(&self, a: &[Scalar]) -> bool {
        !self.norm(a).is_zero()
    }

    /// `t_alpha` in algebra coordinates.
    pub fn t_of(&self, a: &[Scalar]) -> SparseVector {
        let c = self.gram_inv.mul_vec(&SparseVector::from_dense(a));
        c.reindex(|k| self.cartan[k])
    }

    /// `h_alpha = 2 t_alpha / (alpha, alpha)` for a real weight.
    pub fn h_of(&self, a: &[Scalar]) -> Option<SparseVector> {
        let n = self.norm(a);
        let k = Scalar::int(2) * n.inv()?;
        Some(self.t_of(a).scale(&k))
    }

    /// Roots orthogonal to every root.
    pub fn is_radical(&self, a: &[Scalar]) -> bool {
        self.roots.iter().all(|r| self.pair(a, &r.weight).is_zero())
    }

    /// Inverse of the Cartan block of the Gram matrix.
    pub fn cartan_gram_inverse(&self) -> &SparseMatrix {
        &self.gram_inv
    }

    /// A Z-basis of the span of the roots with the transferred form.
    pub fn lattice(&self) -> Result<FunctionalLattice> {
        let ws: Vec<Weight> = self.roots.iter().map(|r| r.weight.clone()).collect();
        FunctionalLattice::new(&ws, &self.gram_inv)
    }

    /// The roots as an extended affine root supersystem candidate in their Z-span.
    pub fn to_supersystem(&self) -> Result<RootSupersystem> {
        let ws: Vec<Weight> = self.roots.iter().map(|r| r.weight.clone()).collect();
        RootSupersystem::from_functionals(&ws, &self.gram_inv)
    }
}

/// Verifies the declared weight basis and assembles the root datum.
pub fn weight_decomposition(l: &LieSuperalgebra) -> Result<RootDatum> {
    let (Some(cartan), Some(weights)) = (l.cartan(), l.weights()) else {
        return Err(Error::Precondition("Cartan and weights must be declared".into()));
    };
    let g = l.gram().ok_or_else(|| Error::Precondition("algebra has no bilinear form".into()))?;
    if cartan.is_empty() {
        return Err(Error::Precondition("Cartan subalgebra is empty".into()));
    }
    for &h in cartan {
        if l.parity(h) != 0 || !is_zero_weight(&weights[h]) {
            return Err(Error::Precondition(format!("Cartan element {} must be even of weight 0", l.label(h))));
        }
    }
    for (hk, &h) in cartan.iter().enumerate() {
        let hv = SparseVector::basis(h);
        for (b, wt) in weights.iter().enumerate() {
            let lhs = l.br(&hv, &SparseVector::basis(b));
            let rhs = SparseVector::single(b, wt[hk].clone());
            if lhs != rhs {
                return Err(Error::NotWeightBasis(format!(
                    "[{}, {}] = {} but the declared weight gives {}",
                    l.label(h),
                    l.label(b),
                    l.format_vector(&lhs),
                    l.format_vector(&rhs)
                )));
            }
        }
    }
    let gh = g.submatrix(cartan, cartan);
    let gram_inv = inverse(&gh).ok_or_else(|| Error::Precondition("form is degenerate on the Cartan".into()))?;

    let mut spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (b, wt) in weights.iter().enumerate() {
        spaces.entry(wt.clone()).or_default().push(b);
    }
    let mut datum = RootDatum { cartan: cartan.to_vec(), roots: Vec::new(), gram_inv };
    let roots = spaces
        .into_iter()
        .map(|(weight, space)| {
            let even = space.iter().any(|&b| l.parity(b) == 0);
            let odd = space.iter().any(|&b| l.parity(b) == 1);
            let t = datum.t_of(&weight);
            Root { weight, space, even, odd, t }
        })
        .collect();
    datum.roots = roots;
    Ok(datum)
}

fn nilpotent_on_basis(l: &LieSuperalgebra, x: &SparseVector, bound: usize) -> Option<usize> {
    for b in 0..l.dim() {
        let mut y = SparseVector::basis(b);
        let mut k = 0;
        while !y.is_zero() {
            if k >= bound {
                return Some(b);
            }
            y = l.br(x, &y);
            k += 1;
        }
    }
    None
}

/// Basis pair `(x, y)` with `x` in the parity-`p` part of the `alpha` space,
/// `y` in that of the `-alpha` space, and `0 != [x, y]` in the Cartan;
/// lexicographic in the two basis indices.
pub fn sl2_witness(l: &LieSuperalgebra, datum: &RootDatum, root: &Root, p: u8) -> Option<(usize, usize)> {
    let neg = datum.find(&weight_neg(&root.weight))?;
    let cartan = &datum.cartan;
    for &x in root.space.iter().filter(|&&x| l.parity(x) == p) {
        for &y in neg.space.iter().filter(|&&y| l.parity(y) == p) {
            let b = l.br(&SparseVector::basis(x), &SparseVector::basis(y));
            if !b.is_zero() && b.indices().all(|k| cartan.contains(&k)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Prerequisites (superalgebra, form, weight decomposition), then the two
/// axioms of an extended affine Lie superalgebra.
pub fn verify_eals(l: &LieSuperalgebra) -> Report {
    let mut r = Report::new();
    let sup = verify_superalgebra(l);
    if !sup.passed() {
        let w = sup.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ");
        r.fail("eals.prerequisites", "superalgebra axioms", w);
        return r;
    }
    match verify_form(l) {
        Ok(f) if f.passed() => {}
        Ok(f) => {
            let w = f.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ");
            r.fail("eals.prerequisites", "form axioms", w);
            return r;
        }
        Err(e) => {
            r.fail("eals.prerequisites", "form axioms", e.to_string());
            return r;
        }
    }
    let datum = match weight_decomposition(l) {
        Ok(d) => d,
        Err(e) => {
            r.fail("eals.prerequisites", "weight decomposition", e.to_string());
            return r;
        }
    };
    r.pass("eals.prerequisites", "superalgebra, form and weight decomposition verified");
    r.extend(eals_axioms(l, &datum));
    r
}

/// The axiom checks proper, for an algebra whose prerequisites hold.
pub fn eals_axioms(l: &LieSuperalgebra, datum: &RootDatum) -> Report {
    let mut r = Report::new();
    let w = datum
        .roots
        .iter()
        .find(|a| {
            let n = datum.find(&weight_neg(&a.weight));
            !(n.is_some_and(|n| (!a.even || n.even) && (!a.odd || n.odd)))
        })
        .map(|a| format_weight(&a.weight));
    r.record("eals.roots_symmetric", "R_0 = -R_0 and R_1 = -R_1", w);

    let mut witnesses = Vec::new();
    let mut missing = None;
    for a in datum.roots.iter().filter(|a| !is_zero_weight(&a.weight)) {
        for p in [0u8, 1] {
            let present = if p == 0 { a.even } else { a.odd };
            if !present {
                continue;
            }
            match sl2_witness(l, datum, a, p) {
                Some(pair) => witnesses.push((a, pair)),
                None => {
                    missing.get_or_insert_with(|| format!("root {} parity {p}", format_weight(&a.weight)));
                }
            }
        }
    }
    let detail = format!("{} witness pairs", witnesses.len());
    let listing: Vec<String> =
        witnesses.iter().map(|(a, (x, y))| format!("{}:({},{})", format_weight(&a.weight), l.label(*x), l.label(*y))).collect();
    match missing {
        Some(m) => r.fail("eals.axiom1_witnesses", detail, m),
        None => r.pass("eals.axiom1_witnesses", format!("{detail}: {}", listing.join(" "))),
    }

    // [x, y] = (x, y) t_alpha whenever [x, y] lies in the Cartan
    let mut w = None;
    'outer: for a in &datum.roots {
        let Some(neg) = datum.find(&weight_neg(&a.weight)) else { continue };
        for &x in &a.space {
            for &y in &neg.space {
                let xv = SparseVector::basis(x);
                let yv = SparseVector::basis(y);
                let b = l.br(&xv, &yv);
                if !b.indices().all(|k| datum.cartan.contains(&k)) {
                    continue;
                }
                let f = l.form(&xv, &yv).unwrap();
                let expect = a.t.scale(&f);
                if b != expect {
                    w = Some(format!(
                        "[{}, {}] = {} but (x,y) t = {}",
                        l.label(x),
                        l.label(y),
                        l.format_vector(&b),
                        l.format_vector(&expect)
                    ));
                    break 'outer;
                }
            }
        }
    }
    r.record("eals.bracket_is_form_times_t", "[x_a, x_-a] = (x_a, x_-a) t_a", w);

    let bound = l.dim();
    let mut w = None;
    let mut count = 0;
    'nil: for a in datum.roots.iter().filter(|a| datum.is_real(&a.weight)) {
        for &x in &a.space {
            count += 1;
            if let Some(b) = nilpotent_on_basis(l, &SparseVector::basis(x), bound) {
                w = Some(format!("ad_{} does not kill {} within {bound} steps", l.label(x), l.label(b)));
                break 'nil;
            }
        }
    }
    r.record("eals.axiom2_nilpotent", format!("{count} real root vectors, exponent bound {bound}"), w);
    r
}

/// Exhaustive checks of the structural facts about roots of an extended
/// affine Lie superalgebra over its finite root set.
pub fn structural_root_checks(_l: &LieSuperalgebra, datum: &RootDatum) -> Report {
    let mut r = Report::new();
    let fw = |w: &[Scalar]| format_weight(w);
    let two = Scalar::int(2);
    let nonzero: Vec<&Root> = datum.roots.iter().filter(|a| !is_zero_weight(&a.weight)).collect();
    let real: Vec<&Root> = nonzero.iter().copied().filter(|a| datum.is_real(&a.weight)).collect();

    let w = real
        .iter()
        .find(|a| a.odd && !datum.is_even_root(&weight_scale(&a.weight, &two)))
        .map(|a| fw(&a.weight));
    r.record("roots.odd_real_double_is_even", "odd real alpha has 2 alpha even", w);

    let w = real.iter().find(|a| datum.is_odd_root(&weight_scale(&a.weight, &two))).map(|a| fw(&a.weight));
    r.record("roots.real_double_not_odd", "2 alpha is never odd for real alpha", w);

    let w = real
        .iter()
        .find(|a| !datum.contains(&weight_scale(&a.weight, &two)) && !a.even)
        .map(|a| fw(&a.weight));
    r.record("roots.real_without_double_is_even", "real alpha with 2 alpha not a root is even", w);

    let mut w = None;
    'iso: for a in datum.even_roots().filter(|a| !datum.is_real(&a.weight)) {
        for b in datum.even_roots() {
            if !datum.pair(&a.weight, &b.weight).is_zero() {
                w = Some(format!("({}, {}) != 0", fw(&a.weight), fw(&b.weight)));
                break 'iso;
            }
        }
    }
    r.record("roots.isotropic_even_orthogonal", "isotropic even roots are orthogonal to even roots", w);

    let w = nonzero
        .iter()
        .find(|a| a.even && !datum.is_real(&a.weight) && !datum.is_radical(&a.weight))
        .map(|a| fw(&a.weight));
    r.record("roots.no_even_nonsingular", "no even root is nonsingular", w);

    let zero_even = datum.roots.iter().find(|a| is_zero_weight(&a.weight)).is_none_or(|z| !z.odd);
    if zero_even {
        let w = nonzero
            .iter()
            .find(|a| a.even && a.odd && !datum.is_radical(&a.weight))
            .map(|a| fw(&a.weight));
        r.record("roots.even_odd_disjoint", "no non-radical root is both even and odd", w);
    } else {
        r.skip("roots.even_odd_disjoint", "zero weight space has odd elements");
    }

    let mut w = None;
    'pm: for a in &datum.roots {
        for b in &datum.roots {
            if datum.pair(&a.weight, &b.weight).is_zero() {
                continue;
            }
            let plus = weight_add(&b.weight, &a.weight);
            let minus = weight_add(&b.weight, &weight_neg(&a.weight));
            if !datum.contains(&plus) && !datum.contains(&minus) {
                w = Some(format!("alpha {} beta {}", fw(&a.weight), fw(&b.weight)));
                break 'pm;
            }
        }
    }
    r.record("roots.nonorthogonal_sum_or_difference", "(alpha,beta) != 0 gives beta +- alpha in R", w);
    r
}
