//! Extended affine root supersystems over Z^n: classification, reflections,
//! root strings and the axioms S1-S5.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundations::{integer_coords, integer_span_basis, GroupElement, Scalar, SparseMatrix, SparseVector, SymmetricGroupForm};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSupersystem {
    rank: usize,
    #[serde(skip)]
    form: SymmetricGroupForm,
    roots: Vec<GroupElement>,
    radical: Vec<GroupElement>,
    real: Vec<GroupElement>,
    nonsingular: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootString {
    pub p: i64,
    pub q: i64,
    /// `beta + k alpha` for `k = -p..=q`.
    pub members: Vec<GroupElement>,
}

/// Degrees a windowed check may look at; `None` means the full (finite) set.
pub type Window<'a> = Option<&'a dyn Fn(&GroupElement) -> bool>;

fn inside(w: Window<'_>, g: &GroupElement) -> bool {
    w.is_none_or(|f| f(g))
}

/// A Z-basis (Hermite normal form) of the span of finitely many rational
/// functionals, with the form they inherit.
#[derive(Clone, Debug)]
pub struct FunctionalLattice {
    basis: Vec<Vec<BigRational>>,
    pub form: SymmetricGroupForm,
}

fn rational(w: &[Scalar]) -> Result<Vec<BigRational>> {
    w.iter()
        .map(|c| c.to_rational().cloned().ok_or_else(|| Error::Field(format!("non-rational weight entry {c}"))))
        .collect()
}

impl FunctionalLattice {
    /// `g` gives the form on functionals: `(a, b) = a^T g b`.
    pub fn new(ws: &[Vec<Scalar>], g: &SparseMatrix) -> Result<Self> {
        let ws_q: Vec<Vec<BigRational>> = ws.iter().map(|w| rational(w)).collect::<Result<_>>()?;
        let basis = integer_span_basis(&ws_q);
        let bs: Vec<SparseVector> = basis
            .iter()
            .map(|b| SparseVector::from_dense(&b.iter().cloned().map(Scalar::from_rational).collect::<Vec<_>>()))
            .collect();
        let gram: Vec<Vec<Scalar>> = bs.iter().map(|a| bs.iter().map(|b| g.mul_vec(b).dot(a)).collect()).collect();
        let form = SymmetricGroupForm::new(gram)?;
        Ok(FunctionalLattice { basis, form })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Inverse of [`Self::coords`].
    pub fn functional(&self, g: &GroupElement) -> Vec<Scalar> {
        let dim = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![Scalar::zero(); dim];
        for (b, &c) in self.basis.iter().zip(&g.coords) {
            if c != 0 {
                for (o, x) in out.iter_mut().zip(b) {
                    *o += &(&Scalar::from_rational(x.clone()) * &Scalar::int(c));
                }
            }
        }
        out
    }

    pub fn coords(&self, w: &[Scalar]) -> Result<GroupElement> {
        integer_coords(&self.basis, &rational(w)?)
            .map(GroupElement::new)
            .ok_or_else(|| Error::Invalid("functional outside the integer span of the roots".into()))
    }
}

pub fn classify(roots: &[GroupElement], form: &SymmetricGroupForm) -> Result<RootSupersystem> {
    RootSupersystem::classify(roots, form)
}

impl RootSupersystem {
    /// Sorts and deduplicates the roots, then splits them into radical, real
    /// and nonsingular parts. The radical is taken in the Z-span of the roots.
    pub fn classify(roots: &[GroupElement], form: &SymmetricGroupForm) -> Result<Self> {
        let rank = form.rank();
        if let Some(r) = roots.iter().find(|r| r.rank() != rank) {
            return Err(Error::Dimension(format!("root {r} has rank {} but the form has rank {rank}", r.rank())));
        }
        let set: BTreeSet<GroupElement> = roots.iter().cloned().collect();
        let roots: Vec<GroupElement> = set.into_iter().collect();
        let mut s = RootSupersystem {
            rank,
            form: form.clone(),
            roots,
            radical: Vec::new(),
            real: Vec::new(),
            nonsingular: Vec::new(),
        };
        for a in &s.roots {
            if !s.norm(a).is_zero() {
                s.real.push(a.clone());
            } else if s.roots.iter().all(|b| s.pair(a, b).is_zero()) {
                s.radical.push(a.clone());
            } else {
                s.nonsingular.push(a.clone());
            }
        }
        Ok(s)
    }

    /// Re-expresses functionals in a Z-basis of their span, with the form
    /// `(a, b) = a^T G b` for `G` the given (inverse Cartan Gram) matrix.
    pub fn from_functionals(ws: &[Vec<Scalar>], g: &SparseMatrix) -> Result<Self> {
        let lat = FunctionalLattice::new(ws, g)?;
        let roots: Vec<GroupElement> = ws.iter().map(|w| lat.coords(w)).collect::<Result<_>>()?;
        Self::classify(&roots, &lat.form)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &SymmetricGroupForm {
        &self.form
    }

    pub fn roots(&self) -> &[GroupElement] {
        &self.roots
    }

    pub fn radical_roots(&self) -> &[GroupElement] {
        &self.radical
    }

    pub fn real_roots(&self) -> &[GroupElement] {
        &self.real
    }

    pub fn nonsingular_roots(&self) -> &[GroupElement] {
        &self.nonsingular
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.roots.binary_search(a).is_ok()
    }

    pub fn pair(&self, a: &GroupElement, b: &GroupElement) -> Scalar {
        self.form.eval(a, b).expect("ranks checked at classification")
    }

    pub fn norm(&self, a: &GroupElement) -> Scalar {
        self.pair(a, a)
    }

    pub fn is_real(&self, a: &GroupElement) -> bool {
        !self.norm(a).is_zero()
    }

    /// `2(alpha, beta)/(alpha, alpha)` for real `alpha`.
    pub fn cartan_number(&self, alpha: &GroupElement, beta: &GroupElement) -> Result<Scalar> {
        let n = self.norm(alpha);
        let inv = n.inv().ok_or_else(|| Error::Precondition(format!("{alpha} is not a real root")))?;
        Ok(Scalar::int(2) * self.pair(alpha, beta) * inv)
    }

    fn integral_cartan_number(&self, alpha: &GroupElement, beta: &GroupElement) -> Result<i64> {
        let c = self.cartan_number(alpha, beta)?;
        c.to_i64()
            .ok_or_else(|| Error::Precondition(format!("2({alpha},{beta})/({alpha},{alpha}) = {c} is not an integer")))
    }

    pub fn reflect(&self, alpha: &GroupElement, beta: &GroupElement) -> Result<GroupElement> {
        let c = self.integral_cartan_number(alpha, beta)?;
        Ok(beta - &alpha.scale(c))
    }

    fn scan_cap(&self) -> i64 {
        4 * self.roots.len().max(1) as i64
    }

    /// The alpha-string through beta. Fails on a gap, an unbounded string
    /// (past the scan cap) or a wrong `p - q`.
    pub fn root_string(&self, alpha: &GroupElement, beta: &GroupElement) -> Result<RootString> {
        self.root_string_in(alpha, beta, None)?
            .ok_or_else(|| Error::Invalid("string leaves the window".into()))
    }

    /// Window-relative string; `Ok(None)` when the string or its two
    /// bounding positions leave the window.
    pub fn root_string_in(&self, alpha: &GroupElement, beta: &GroupElement, w: Window<'_>) -> Result<Option<RootString>> {
        if !self.is_real(alpha) {
            return Err(Error::Precondition(format!("{alpha} is not a real root")));
        }
        if !self.contains(beta) {
            return Err(Error::Precondition(format!("{beta} is not a root")));
        }
        let cap = self.scan_cap();
        let at = |k: i64| beta + &alpha.scale(k);
        let mut q = 0;
        while self.contains(&at(q + 1)) {
            q += 1;
            if q > cap {
                return Err(Error::Invalid(format!("string of {alpha} through {beta} exceeds scan cap {cap}")));
            }
        }
        let mut p = 0;
        while self.contains(&at(-p - 1)) {
            p += 1;
            if p > cap {
                return Err(Error::Invalid(format!("string of {alpha} through {beta} exceeds scan cap {cap}")));
            }
        }
        if !(-p - 1..=q + 1).all(|k| inside(w, &at(k))) {
            return Ok(None);
        }
        for k in (q + 2..=cap).chain(-cap..=-p - 2) {
            let g = at(k);
            if !inside(w, &g) {
                continue;
            }
            if self.contains(&g) {
                return Err(Error::Invalid(format!("string of {alpha} through {beta} has a gap before {g}")));
            }
        }
        let c = self.integral_cartan_number(alpha, beta)?;
        if p - q != c {
            return Err(Error::Invalid(format!("p - q = {} but 2(beta,alpha)/(alpha,alpha) = {c}", p - q)));
        }
        Ok(Some(RootString { p, q, members: (-p..=q).map(at).collect() }))
    }

    /// All rational `k` with `k alpha` a root, sorted.
    pub fn ratio_set(&self, alpha: &GroupElement) -> Vec<Scalar> {
        let Some(pc) = alpha.coords.iter().position(|&c| c != 0) else {
            return Vec::new();
        };
        let mut out = BTreeSet::new();
        for b in &self.roots {
            let k = Scalar::frac(b.coords[pc], alpha.coords[pc]);
            let parallel = alpha.coords.iter().zip(&b.coords).all(|(&a, &c)| Scalar::int(c) == &k * &Scalar::int(a));
            if parallel {
                out.insert(k);
            }
        }
        out.into_iter().collect()
    }

    /// The ratio set, or an error naming a ratio outside `{0, +-1, +-2, +-1/2}`.
    pub fn ratio_check(&self, alpha: &GroupElement) -> Result<Vec<Scalar>> {
        if !self.is_real(alpha) {
            return Err(Error::Precondition(format!("{alpha} is not a real root")));
        }
        let allowed: Vec<Scalar> = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
            .iter()
            .map(|&(p, q)| Scalar::frac(p, q))
            .collect();
        let ks = self.ratio_set(alpha);
        if let Some(k) = ks.iter().find(|k| !allowed.contains(k)) {
            return Err(Error::Invalid(format!("{k} * {alpha} is a root")));
        }
        Ok(ks)
    }

    pub fn check_axioms(&self) -> Report {
        self.check_axioms_in(None)
    }

    /// Axioms S1-S5. With a window, S2/S4/S5 are checked only where every
    /// element they look at lies in the window; skipped instances are counted.
    pub fn check_axioms_in(&self, w: Window<'_>) -> Report {
        let mut r = Report::new();
        let zero = GroupElement::zero(self.rank);

        let basis = integer_span_basis(
            &self
                .roots
                .iter()
                .map(|a| a.coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
                .collect::<Vec<_>>(),
        );
        let has_zero = self.contains(&zero);
        r.record(
            "ears.s1_zero_and_span",
            format!("0 in R; span of R has rank {} in Z^{}", basis.len(), self.rank),
            (!has_zero).then(|| "0 is not a root".to_string()),
        );

        let mut skipped = 0;
        let mut wit = None;
        for a in &self.roots {
            let n = -a;
            if !inside(w, &n) {
                skipped += 1;
                continue;
            }
            if !self.contains(&n) {
                wit = Some(format!("{a} in R but {n} is not"));
                break;
            }
        }
        r.record("ears.s2_symmetric", format!("R = -R ({skipped} outside window)"), wit);

        let mut wit = None;
        's3: for a in &self.real {
            for b in &self.roots {
                let c = self.cartan_number(a, b).unwrap();
                if c.to_integer().is_none() {
                    wit = Some(format!("2({a},{b})/({a},{a}) = {c}"));
                    break 's3;
                }
            }
        }
        r.record("ears.s3_integral", "2(alpha,beta)/(alpha,alpha) is an integer", wit);

        let mut wit = None;
        let mut checked = 0;
        let mut skipped = 0;
        's4: for a in &self.real {
            for b in &self.roots {
                match self.root_string_in(a, b, w) {
                    Ok(Some(_)) => checked += 1,
                    Ok(None) => skipped += 1,
                    Err(e) => {
                        wit = Some(format!("alpha {a}, beta {b}: {e}"));
                        break 's4;
                    }
                }
            }
        }
        r.record("ears.s4_root_strings", format!("{checked} strings checked, {skipped} leave the window"), wit);

        let mut wit = None;
        let mut checked = 0;
        let mut skipped = 0;
        's5: for a in &self.nonsingular {
            for b in &self.roots {
                if self.pair(a, b).is_zero() {
                    continue;
                }
                let plus = b + a;
                let minus = b - a;
                if self.contains(&plus) || self.contains(&minus) {
                    checked += 1;
                } else if inside(w, &plus) && inside(w, &minus) {
                    wit = Some(format!("alpha {a}, beta {b}: neither beta-alpha nor beta+alpha is a root"));
                    break 's5;
                } else {
                    skipped += 1;
                }
            }
        }
        r.record("ears.s5_nonsingular_link", format!("{checked} pairs checked, {skipped} leave the window"), wit);
        r
    }

    /// Whether `r_alpha` maps R onto R for every real alpha.
    pub fn reflections_preserve(&self) -> Result<(), String> {
        for a in &self.real {
            let mut image = BTreeSet::new();
            for b in &self.roots {
                let rb = self.reflect(a, b).map_err(|e| e.to_string())?;
                if !self.contains(&rb) {
                    return Err(format!("r_{a}({b}) = {rb} is not a root"));
                }
                if self.reflect(a, &rb).map_err(|e| e.to_string())? != *b {
                    return Err(format!("r_{a} is not an involution at {b}"));
                }
                image.insert(rb);
            }
            if image.len() != self.roots.len() {
                return Err(format!("r_{a} is not a bijection"));
            }
        }
        Ok(())
    }

    /// Removes each nonzero root in turn and re-checks the axioms. Returns
    /// the roots whose removal left every axiom passing.
    pub fn mutation_survivors(&self) -> Vec<GroupElement> {
        let mut out = Vec::new();
        for a in self.roots.iter().filter(|a| !a.is_zero()) {
            let rest: Vec<GroupElement> = self.roots.iter().filter(|b| *b != a).cloned().collect();
            let s = Self::classify(&rest, &self.form).expect("same rank");
            if s.check_axioms().passed() {
                out.push(a.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: &[i64]) -> GroupElement {
        GroupElement::new(c.to_vec())
    }

    fn osp() -> RootSupersystem {
        let roots: Vec<_> = (-2..=2).map(|k| g(&[k])).collect();
        classify(&roots, &SymmetricGroupForm::from_ints(&[&[2]]).unwrap()).unwrap()
    }

    #[test]
    fn osp_strings_and_ratios() {
        let s = osp();
        let a = g(&[1]);
        let st = s.root_string(&a, &a).unwrap();
        assert_eq!((st.p, st.q), (3, 1));
        let st = s.root_string(&a, &g(&[0])).unwrap();
        assert_eq!((st.p, st.q), (2, 2));
        assert_eq!(s.ratio_check(&g(&[2])).unwrap(), vec![
            Scalar::int(-1),
            Scalar::frac(-1, 2),
            Scalar::zero(),
            Scalar::frac(1, 2),
            Scalar::one()
        ]);
        assert_eq!(s.reflect(&a, &g(&[2])).unwrap(), g(&[-2]));
    }

    #[test]
    fn short_string() {
        let roots = vec![g(&[-1]), g(&[0]), g(&[1])];
        let s = classify(&roots, &SymmetricGroupForm::from_ints(&[&[2]]).unwrap()).unwrap();
        let st = s.root_string(&g(&[1]), &g(&[1])).unwrap();
        assert_eq!((st.p, st.q), (2, 0));
    }
}
