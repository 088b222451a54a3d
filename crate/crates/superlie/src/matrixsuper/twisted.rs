use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sl::{check_twist_map, SlPresentation, TwistMap};
use super::SuperIndexSet;
use crate::affinize::{sampled_identity_checks, AffinizedAlgebra, CocycleTorus, GradedLoopElement, LinearOps};
use crate::error::{Error, Result};
use crate::foundations::{inverse, kernel, rank, EchelonBasis, GroupElement, Scalar, SparseMatrix, SparseVector, SymmetricGroupForm};
use crate::liesuper::{format_weight, is_zero_weight, weight_neg, Weight};
use crate::report::Report;
use crate::rootsys::{FunctionalLattice, RootSupersystem};

/// `sum_i x_i (x) t^i + c c + d d` with `x_i` in the `zeta^i`-eigenspace of `#`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwistedElement {
    pub parts: BTreeMap<i64, GradedLoopElement>,
    pub c: Scalar,
    pub d: Scalar,
}

impl TwistedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(i: i64, x: GradedLoopElement) -> Self {
        let mut out = Self::zero();
        out.add_part(i, &Scalar::one(), &x);
        out
    }

    pub fn c_unit() -> Self {
        TwistedElement { c: Scalar::one(), ..Self::zero() }
    }

    pub fn d_unit() -> Self {
        TwistedElement { d: Scalar::one(), ..Self::zero() }
    }

    pub fn add_part(&mut self, i: i64, k: &Scalar, x: &GradedLoopElement) {
        let e = self.parts.entry(i).or_default();
        e.axpy(k, x);
        if e.is_zero() {
            self.parts.remove(&i);
        }
    }

    pub fn axpy(&mut self, k: &Scalar, o: &TwistedElement) {
        for (&i, x) in &o.parts {
            self.add_part(i, k, x);
        }
        self.c += &(k * &o.c);
        self.d += &(k * &o.d);
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero();
        out.axpy(k, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn format(&self, l: &AffinizedAlgebra) -> String {
        let mut parts: Vec<String> = self.parts.iter().map(|(i, x)| format!("[{}] t^{i}", x.format(l.base()))).collect();
        if !self.c.is_zero() {
            parts.push(format!("({}) c", self.c));
        }
        if !self.d.is_zero() {
            parts.push(format!("({}) d", self.d));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn te_axpy(a: &TwistedElement, k: &Scalar, b: &TwistedElement) -> TwistedElement {
    let mut out = a.clone();
    out.axpy(k, b);
    out
}

/// Root spaces of `sl` with equal restriction to the fixed Cartan, with the
/// eigenvectors of `#` (eigenvalue `zeta^k` at position `k`) spanning them.
#[derive(Clone, Debug)]
struct PiClass {
    key: Weight,
    indices: Vec<usize>,
    eig: [Vec<SparseVector>; 4],
}

#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    sl: SlPresentation,
    l: AffinizedAlgebra,
    map: TwistMap,
    /// Basis of the fixed points of `#` on the Cartan of `sl`.
    sigma_cartan: Vec<SparseVector>,
    classes: Vec<PiClass>,
    map_report: Report,
}

/// A root `pi(alpha) + i delta` with values on [`TwistedAlgebra::cartan_basis`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedRoot {
    pub values: Weight,
    pub degree: i64,
    pub even: bool,
    pub odd: bool,
    pub space: Vec<TwistedElement>,
}

impl TwistedRoot {
    pub fn label(&self) -> String {
        format_weight(&self.values)
    }
}

fn zeta_class(i: i64) -> usize {
    i.rem_euclid(4) as usize
}

/// BC(I.,J.) when 0 or 0' is present, C(I.,J.) otherwise.
pub fn twisted_type(idx: &SuperIndexSet) -> String {
    let kind = if idx.zero || idx.zero_prime { "BC" } else { "C" };
    format!("{kind}({},{})", idx.i_dot, idx.j_dot)
}

/// `pi(alpha)(h_b) = 1/4 sum_k alpha(sigma^k h_b)` for `sigma` given by its
/// columns in the basis the functional is evaluated on.
pub fn pi_projection(sigma: &SparseMatrix, alpha: &[Scalar]) -> Weight {
    let n = alpha.len();
    let a = SparseVector::from_dense(alpha);
    let mut acc = vec![Scalar::zero(); n];
    let mut p = SparseMatrix::identity(n);
    for _ in 0..4 {
        let t = p.transpose().mul_vec(&a);
        for (i, x) in t.iter() {
            acc[i] += x;
        }
        p = sigma.mul(&p);
    }
    let q = Scalar::frac(1, 4);
    acc.iter().map(|x| x * &q).collect()
}

/// Builds the twisted algebra; fails unless `map` passes [`check_twist_map`].
pub fn twisted_affinize(sl: SlPresentation, torus: CocycleTorus, map: TwistMap) -> Result<TwistedAlgebra> {
    TwistedAlgebra::new(sl, torus, map)
}

impl TwistedAlgebra {
    pub fn new(sl: SlPresentation, torus: CocycleTorus, map: TwistMap) -> Result<Self> {
        let l = AffinizedAlgebra::new(sl.algebra.clone(), torus)?;
        let map_report = check_twist_map(&l, &map, 1)?;
        if !map_report.passed() {
            let names: Vec<String> =
                map_report.failures().map(|c| format!("{} ({})", c.name, c.witness.clone().unwrap_or_default())).collect();
            return Err(Error::Precondition(format!("twist map fails {}", names.join(", "))));
        }
        let cartan = l.datum().cartan.clone();
        let sub = map.s0.submatrix(&cartan, &cartan);
        let fixed = kernel(&sub.sub(&SparseMatrix::identity(cartan.len())));
        let sigma_cartan: Vec<SparseVector> = fixed.iter().map(|v| v.reindex(|i| cartan[i])).collect();

        let mut by_key: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for root in &l.datum().roots {
            let key = key_of(&sigma_cartan, &cartan, &root.weight);
            by_key.entry(key).or_default().extend(root.space.iter().copied());
        }
        let mut classes = Vec::new();
        for (key, mut indices) in by_key {
            indices.sort_unstable();
            let s = map.s0.submatrix(&indices, &indices);
            let id = SparseMatrix::identity(indices.len());
            let eig: [Vec<SparseVector>; 4] = std::array::from_fn(|k| {
                kernel(&s.lin_comb(&-Scalar::zeta_pow(k as i64), &id)).iter().map(|v| v.reindex(|i| indices[i])).collect()
            });
            classes.push(PiClass { key, indices, eig });
        }
        Ok(TwistedAlgebra { sl, l, map, sigma_cartan, classes, map_report })
    }

    pub fn loop_algebra(&self) -> &AffinizedAlgebra {
        &self.l
    }

    pub fn sl(&self) -> &SlPresentation {
        &self.sl
    }

    pub fn map(&self) -> &TwistMap {
        &self.map
    }

    pub fn rank(&self) -> usize {
        self.l.rank()
    }

    pub fn sigma_cartan(&self) -> &[SparseVector] {
        &self.sigma_cartan
    }

    /// `alpha` restricted to the fixed Cartan.
    pub fn pi_key(&self, alpha: &[Scalar]) -> Weight {
        key_of(&self.sigma_cartan, &self.l.datum().cartan, alpha)
    }

    /// `#` restricted to the Cartan `h + V + V^dag` of the loop algebra, by columns.
    pub fn sigma(&self) -> SparseMatrix {
        let cartan = &self.l.datum().cartan;
        let h = cartan.len();
        let n = self.rank();
        let mut out = SparseMatrix::identity(h + 2 * n);
        let sub = self.map.s0.submatrix(cartan, cartan);
        for i in 0..h {
            for j in 0..h {
                out.set(i, j, sub.get(i, j));
            }
        }
        out
    }

    pub fn bracket(&self, x: &TwistedElement, y: &TwistedElement) -> Result<TwistedElement> {
        let mut out = TwistedElement::zero();
        for (&i, a) in &x.parts {
            for (&j, b) in &y.parts {
                out.add_part(i + j, &Scalar::one(), &self.l.bracket(a, b)?);
                if i + j == 0 && i != 0 {
                    out.c += &(Scalar::int(i) * self.l.form(a, b)?);
                }
            }
        }
        if !x.d.is_zero() {
            for (&j, b) in &y.parts {
                out.add_part(j, &(&x.d * &Scalar::int(j)), b);
            }
        }
        if !y.d.is_zero() {
            for (&i, a) in &x.parts {
                out.add_part(i, &-(&y.d * &Scalar::int(i)), a);
            }
        }
        Ok(out)
    }

    pub fn form(&self, x: &TwistedElement, y: &TwistedElement) -> Result<Scalar> {
        let mut out = &x.c * &y.d + &x.d * &y.c;
        for (&i, a) in &x.parts {
            if let Some(b) = y.parts.get(&-i) {
                out += self.l.form(a, b)?;
            }
        }
        Ok(out)
    }

    pub fn parity(&self, x: &TwistedElement) -> Option<u8> {
        let mut ps: BTreeSet<u8> = x.parts.values().filter_map(|a| self.l.parity(a)).collect();
        if !x.c.is_zero() || !x.d.is_zero() {
            ps.insert(0);
        }
        match ps.len() {
            0 => Some(0),
            1 => ps.into_iter().next(),
            _ => None,
        }
    }

    /// Each `x_i` lies in the `zeta^i`-eigenspace.
    pub fn check_grading(&self, x: &TwistedElement) -> Result<()> {
        for (&i, a) in &x.parts {
            if self.map.apply(a) != a.scale(&Scalar::zeta_pow(i)) {
                return Err(Error::Invalid(format!("degree {i} component is not in the zeta^{i}-eigenspace")));
            }
        }
        Ok(())
    }

    /// `h (x) 1` for the fixed Cartan, then `v_k`, `d_k` (in degree 0), then `c`, `d`.
    pub fn cartan_basis(&self) -> Vec<TwistedElement> {
        let n = self.rank();
        let zero = GroupElement::zero(n);
        let mut out: Vec<TwistedElement> = self
            .sigma_cartan
            .iter()
            .map(|h| TwistedElement::term(0, GradedLoopElement::loop_term(h.clone(), zero.clone())))
            .collect();
        out.extend((0..n).map(|k| TwistedElement::term(0, GradedLoopElement::v_unit(k))));
        out.extend((0..n).map(|k| TwistedElement::term(0, GradedLoopElement::d_unit(k))));
        out.push(TwistedElement::c_unit());
        out.push(TwistedElement::d_unit());
        out
    }

    fn values(&self, key: &[Scalar], tau: &GroupElement, i: i64) -> Weight {
        let mut out = key.to_vec();
        out.extend((0..self.rank()).map(|_| Scalar::zero()));
        out.extend(tau.coords.iter().map(|&c| Scalar::int(c)));
        out.push(Scalar::zero());
        out.push(Scalar::int(i));
        out
    }

    /// Eigen-basis of the loop algebra window: `(k, key, tau, x)` with `x^# = zeta^k x`
    /// of weight `pi = key + tau`.
    fn loop_eigenbasis(&self, radius: i64) -> Vec<(usize, Weight, GroupElement, GradedLoopElement)> {
        let n = self.rank();
        let mut out = Vec::new();
        for tau in GroupElement::box_window(n, radius) {
            let shift = if self.map.star.sign(&tau).is_one() { 0 } else { 2 };
            for class in &self.classes {
                for k in 0..4 {
                    for v in &class.eig[(k + shift) % 4] {
                        out.push((k, class.key.clone(), tau.clone(), GradedLoopElement::loop_term(v.clone(), tau.clone())));
                    }
                }
            }
        }
        let zk = vec![Scalar::zero(); self.sigma_cartan.len()];
        for k in 0..n {
            out.push((0, zk.clone(), GroupElement::zero(n), GradedLoopElement::v_unit(k)));
            out.push((0, zk.clone(), GroupElement::zero(n), GradedLoopElement::d_unit(k)));
        }
        out
    }

    /// Window basis: loop degrees `|tau_k| <= radius`, `t`-degrees `|i| <= degrees`,
    /// each element with the root it is expected to have.
    pub fn window_basis(&self, radius: i64, degrees: i64) -> Vec<(Weight, TwistedElement)> {
        let eb = self.loop_eigenbasis(radius);
        let mut out = Vec::new();
        for i in -degrees..=degrees {
            for (k, key, tau, x) in &eb {
                if *k == zeta_class(i) {
                    out.push((self.values(key, tau, i), TwistedElement::term(i, x.clone())));
                }
            }
        }
        let z = GroupElement::zero(self.rank());
        let zk = vec![Scalar::zero(); self.sigma_cartan.len()];
        out.push((self.values(&zk, &z, 0), TwistedElement::c_unit()));
        out.push((self.values(&zk, &z, 0), TwistedElement::d_unit()));
        out
    }

    /// Whether `x` lies in `(h^sigma (x) 1) + V + V^dag + Fc + Fd`.
    pub fn in_cartan(&self, x: &TwistedElement) -> bool {
        let cartan = &self.l.datum().cartan;
        x.parts.iter().all(|(&i, a)| {
            i == 0
                && a.loop_part.iter().all(|(tau, v)| {
                    tau.is_zero() && v.indices().all(|j| cartan.contains(&j)) && self.map.s0.mul_vec(v) == *v
                })
        })
    }

    fn cartan_gram(&self) -> Result<SparseMatrix> {
        let cb = self.cartan_basis();
        let mut g = SparseMatrix::zeros(cb.len(), cb.len());
        for (i, x) in cb.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                g.set(i, j, self.form(x, y)?);
            }
        }
        Ok(g)
    }
}

fn key_of(sigma_cartan: &[SparseVector], cartan: &[usize], alpha: &[Scalar]) -> Weight {
    sigma_cartan
        .iter()
        .map(|u| {
            u.iter().fold(Scalar::zero(), |acc, (i, c)| {
                let pos = cartan.iter().position(|&h| h == i).expect("fixed vectors live on the Cartan");
                acc + c * &alpha[pos]
            })
        })
        .collect()
}

fn first_ratio(b: &TwistedElement, x: &TwistedElement) -> Option<Scalar> {
    for (i, xa) in &x.parts {
        let ba = b.parts.get(i);
        for (l, xv) in &xa.loop_part {
            if let Some((j, c)) = xv.iter().next() {
                let bv = ba.and_then(|a| a.loop_part.get(l)).map(|v| v.get(j)).unwrap_or_default();
                return Some(bv * c.inv()?);
            }
        }
        if let Some((k, c)) = xa.v.iter().next() {
            return Some(ba.map(|a| a.v.get(k)).unwrap_or_default() * c.inv()?);
        }
        if let Some((k, c)) = xa.d.iter().next() {
            return Some(ba.map(|a| a.d.get(k)).unwrap_or_default() * c.inv()?);
        }
    }
    if !x.c.is_zero() {
        return Some(&b.c * &x.c.inv()?);
    }
    if !x.d.is_zero() {
        return Some(&b.d * &x.d.inv()?);
    }
    None
}

/// Roots of the window computed from brackets with the Cartan; the report
/// compares them with the labels `pi(alpha) + i delta` the basis was built with.
pub fn twisted_roots(t: &TwistedAlgebra, radius: i64, degrees: i64) -> Result<(Vec<TwistedRoot>, Report)> {
    let cartan = t.cartan_basis();
    let mut spaces: BTreeMap<Weight, Vec<TwistedElement>> = BTreeMap::new();
    let mut w_eigen = None;
    let mut w_label = None;
    for (expected, x) in t.window_basis(radius, degrees) {
        let mut vals = Vec::with_capacity(cartan.len());
        for c in &cartan {
            let b = t.bracket(c, &x)?;
            let v = if b.is_zero() {
                Scalar::zero()
            } else {
                match first_ratio(&b, &x) {
                    Some(r) if b == x.scale(&r) => r,
                    _ => {
                        w_eigen.get_or_insert_with(|| format!("{} is not a weight vector", x.format(&t.l)));
                        Scalar::zero()
                    }
                }
            };
            vals.push(v);
        }
        if vals != expected && w_label.is_none() {
            w_label = Some(format!("{} has weight {} not {}", x.format(&t.l), format_weight(&vals), format_weight(&expected)));
        }
        spaces.entry(vals).or_default().push(x);
    }
    let mut r = Report::new();
    r.record("twisted.weight_vectors", "window basis vectors are weight vectors of the Cartan", w_eigen);
    r.record("twisted.weights_match_projection", "each weight is pi(alpha) + i delta as constructed", w_label);
    let roots = spaces
        .into_iter()
        .map(|(values, space)| {
            let degree = values.last().and_then(Scalar::to_i64).unwrap_or(0);
            let even = space.iter().any(|x| t.parity(x) == Some(0));
            let odd = space.iter().any(|x| t.parity(x) == Some(1));
            TwistedRoot { values, degree, even, odd, space }
        })
        .collect();
    Ok((roots, r))
}

/// The five expected families (the degree-only family and the four
/// half-sum families) restricted to the fixed Cartan, with loop degrees in
/// the box. Returns the set and the number of family members that coincide
/// with a bare degree.
pub fn pi_family_union(t: &TwistedAlgebra, radius: i64) -> (BTreeSet<(Weight, GroupElement)>, usize) {
    let idx = &t.sl.idx;
    let is = idx.i_positions();
    let js = idx.j_positions();
    let half = Scalar::frac(1, 2);
    let e = |k: usize| SparseVector::basis(k);
    let combo = |a: usize, b: usize| -> SparseVector {
        // (a - b) + (bar b - bar a), halved
        let mut v = e(a).sub(&e(b));
        v.axpy(&Scalar::one(), &e(idx.bar(b)));
        v.axpy(&Scalar::int(-1), &e(idx.bar(a)));
        v.scale(&half)
    };
    let mut members: Vec<SparseVector> = Vec::new();
    for &i in &is {
        for &r in &is {
            if i != r {
                members.push(combo(i, r));
            }
        }
    }
    for &j in &js {
        for &s in &js {
            if j != s {
                members.push(combo(j, s));
            }
        }
    }
    for &i in &is {
        for &j in &js {
            members.push(combo(i, j));
            members.push(combo(j, i));
        }
    }
    let mut keys: BTreeSet<Weight> = BTreeSet::new();
    keys.insert(vec![Scalar::zero(); t.sigma_cartan.len()]);
    let mut degenerate = 0;
    for m in &members {
        let k = t.pi_key(&t.sl.weight(m));
        if is_zero_weight(&k) {
            degenerate += 1;
        }
        keys.insert(k);
    }
    let mut out = BTreeSet::new();
    for tau in GroupElement::box_window(t.rank(), radius) {
        for k in &keys {
            out.insert((k.clone(), tau.clone()));
        }
    }
    (out, degenerate)
}

fn random_homogeneous(rng: &mut ChaCha8Rng, pools: &[Vec<TwistedElement>; 2]) -> TwistedElement {
    let p = if pools[1].is_empty() { 0 } else { rng.gen_range(0..2) };
    let pool = &pools[p];
    let mut out = TwistedElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = Scalar::int([-2, -1, 1, 2, 3][rng.gen_range(0..5)]);
        out.axpy(&c, &pool[rng.gen_range(0..pool.len())]);
    }
    if out.is_zero() {
        out = pool[0].clone();
    }
    out
}

/// Windowed verification of the twisted construction: the map checks, the
/// eigenspace decomposition and its pairing pattern, the projected roots
/// against the five expected families, and the extended affine axioms on the
/// window `|tau_k| <= radius`, `|i| <= degrees`.
pub fn verify_twisted(t: &TwistedAlgebra, radius: i64, degrees: i64, samples: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new();
    r.param("torus_window", radius);
    r.param("degree_window", degrees);
    r.param("samples", samples);
    r.param("seed", seed);
    r.param("type", twisted_type(&t.sl.idx));
    r.extend(t.map_report.clone());

    // eigenspaces
    let w = t.classes.iter().find_map(|c| {
        let mut span = EchelonBasis::new();
        let mut total = 0;
        for v in c.eig.iter().flatten() {
            span.insert(v.clone());
            total += 1;
        }
        (span.rank() != c.indices.len() || total != c.indices.len())
            .then(|| format!("class {}: eigenvectors span {} of {}", format_weight(&c.key), span.rank(), c.indices.len()))
    });
    r.record("twisted.eigenspace_direct_sum", "the four eigenspaces of # span each weight class", w);

    // (form1) on the loop algebra window
    let eb = t.loop_eigenbasis(radius);
    let mut w = None;
    'pair: for (k1, key1, tau1, x) in &eb {
        let mut hit = false;
        for (k2, key2, tau2, y) in &eb {
            let f = t.l.form(x, y)?;
            if f.is_zero() {
                continue;
            }
            let ok = (k1 + k2) % 4 == 0 && *key2 == weight_neg(key1) && *tau2 == -tau1;
            if !ok {
                w = Some(format!("({}, {}) = {f}", x.format(t.l.base()), y.format(t.l.base())));
                break 'pair;
            }
            hit = true;
        }
        if !hit {
            w = Some(format!("{} pairs trivially with the window", x.format(t.l.base())));
            break;
        }
    }
    r.record(
        "twisted.pairing_pattern",
        "x in [i]l^pi(a) pairs with [j]l^pi(b) iff i+j in 4Z and pi(a)+pi(b) = 0",
        w,
    );

    // pi(R) against the expected families
    let actual: BTreeSet<(Weight, GroupElement)> = GroupElement::box_window(t.rank(), radius)
        .into_iter()
        .flat_map(|tau| t.classes.iter().map(move |c| (c.key.clone(), tau.clone())))
        .collect();
    let (families, degenerate) = pi_family_union(t, radius);
    let w = actual
        .symmetric_difference(&families)
        .next()
        .map(|(k, tau)| format!("{} + {tau} in only one of the two sets", format_weight(k)));
    r.record(
        "twisted.pi_families",
        format!("{} projected roots; {degenerate} family members coincide with a bare degree", actual.len()),
        w,
    );
    let w = t
        .l
        .datum()
        .roots
        .iter()
        .find(|x| !is_zero_weight(&x.weight) && is_zero_weight(&t.pi_key(&x.weight)))
        .map(|x| format!("pi({}) = 0", format_weight(&x.weight)));
    r.record("twisted.pi_nonzero", "pi(alpha) != 0 for nonzero alpha", w);

    // roots
    let (roots, rr) = twisted_roots(t, radius, degrees)?;
    r.extend(rr);
    let h0 = t.sigma_cartan.len() + 2 * t.rank() + 2;
    let zero = roots.iter().find(|x| is_zero_weight(&x.values));
    let w = match zero {
        None => Some("no zero weight space".to_string()),
        Some(z) if z.space.len() != h0 || !z.space.iter().all(|x| t.in_cartan(x)) => {
            Some(format!("zero weight space has dimension {} not {h0}", z.space.len()))
        }
        _ => None,
    };
    r.record("twisted.zero_space_is_cartan", format!("zero weight space = h^sigma + Fc + Fd, dimension {h0}"), w);

    // grading of brackets
    let basis: Vec<TwistedElement> = t.window_basis(radius, degrees).into_iter().map(|(_, x)| x).collect();
    let mut w = None;
    'grade: for x in &basis {
        for y in &basis {
            let (Some(&i), Some(&j)) = (x.parts.keys().next(), y.parts.keys().next()) else { continue };
            let b = t.bracket(x, y)?;
            let bad = b.parts.keys().any(|&k| k != i + j) || !b.d.is_zero() || (i + j != 0 && !b.c.is_zero());
            if bad || t.check_grading(&b).is_err() {
                w = Some(format!("[{}, {}] = {}", x.format(&t.l), y.format(&t.l), b.format(&t.l)));
                break 'grade;
            }
        }
    }
    r.record("twisted.grading", "brackets respect the t-degree and the eigenspace grading", w);

    // nondegeneracy
    let gram_rows: Vec<SparseVector> = basis
        .iter()
        .map(|x| {
            SparseVector::from_pairs(basis.iter().enumerate().filter_map(|(j, y)| t.form(x, y).ok().filter(|c| !c.is_zero()).map(|c| (j, c))))
        })
        .collect();
    let rk = rank(&gram_rows, basis.len());
    r.record(
        "twisted.form_nondegenerate",
        format!("window Gram rank {rk} of {}", basis.len()),
        (rk != basis.len()).then(|| format!("rank {rk} < {}", basis.len())),
    );

    // sampled identities
    let mut pools: [Vec<TwistedElement>; 2] = [Vec::new(), Vec::new()];
    for x in &basis {
        pools[t.parity(x).unwrap_or(0) as usize].push(x.clone());
    }
    sampled_identity_checks(
        &mut r,
        "twisted",
        samples,
        seed,
        |rng| random_homogeneous(rng, &pools),
        |x, y| t.bracket(x, y),
        |x, y| t.form(x, y),
        |x| t.parity(x).unwrap_or(0),
        LinearOps { axpy: te_axpy, is_zero: TwistedElement::is_zero },
        |x| x.format(&t.l),
    );

    // axiom (1)
    let by_values: BTreeMap<&Weight, &TwistedRoot> = roots.iter().map(|x| (&x.values, x)).collect();
    let mut w = None;
    let mut count = 0;
    'ax1: for root in roots.iter().filter(|x| !is_zero_weight(&x.values)) {
        let neg = weight_neg(&root.values);
        let Some(opp) = by_values.get(&neg) else {
            w = Some(format!("{}: the negative is not a root", root.label()));
            break;
        };
        for p in [0u8, 1] {
            let xs: Vec<&TwistedElement> = root.space.iter().filter(|x| t.parity(x) == Some(p)).collect();
            if xs.is_empty() {
                continue;
            }
            let mut found = false;
            'search: for x in &xs {
                for y in opp.space.iter().filter(|y| t.parity(y) == Some(p)) {
                    if t.form(x, y)?.is_zero() {
                        continue;
                    }
                    let b = t.bracket(x, y)?;
                    if !b.is_zero() && t.in_cartan(&b) {
                        found = true;
                        break 'search;
                    }
                }
            }
            if !found {
                w = Some(format!("{}: no parity-{p} pair with bracket in the Cartan", root.label()));
                break 'ax1;
            }
            count += 1;
        }
    }
    r.record("twisted.axiom1_witnesses", format!("{count} witnesses [x t^i, y t^-i] = [x,y] (x) 1 + i(x,y)c"), w);

    // transferred form on the Cartan functionals
    let g = t.cartan_gram()?;
    let ginv = inverse(&g).ok_or_else(|| Error::Invalid("form on the twisted Cartan is degenerate".into()))?;
    let pair = |a: &[Scalar], b: &[Scalar]| ginv.mul_vec(&SparseVector::from_dense(b)).dot(&SparseVector::from_dense(a));

    // axiom (2)
    let bound = t.sl.dim() + 2;
    let mut w = None;
    let mut count = 0;
    'ax2: for root in roots.iter().filter(|x| !pair(&x.values, &x.values).is_zero()) {
        for x in &root.space {
            count += 1;
            for b in &basis {
                let mut y = b.clone();
                let mut k = 0;
                while !y.is_zero() {
                    if k > bound {
                        w = Some(format!("ad {} not nilpotent on {}", x.format(&t.l), b.format(&t.l)));
                        break 'ax2;
                    }
                    y = t.bracket(x, &y)?;
                    k += 1;
                }
            }
        }
    }
    r.record("twisted.axiom2_nilpotent", format!("{count} real root vectors on {} window vectors, bound {bound}", basis.len()), w);

    // window-relative root supersystem check
    let ws: Vec<Weight> = roots.iter().map(|x| x.values.clone()).collect();
    let lat = FunctionalLattice::new(&ws, &ginv)?;
    let coords: Vec<GroupElement> = ws.iter().map(|x| lat.coords(x)).collect::<Result<_>>()?;
    let form: SymmetricGroupForm = lat.form.clone();
    let sys = RootSupersystem::classify(&coords, &form)?;
    let m = t.sigma_cartan.len();
    let n = t.rank();
    let inside = |gr: &GroupElement| {
        let f = lat.functional(gr);
        let small = |x: &Scalar, b: i64| x.to_i64().is_some_and(|v| v.abs() <= b);
        f[m + n..m + 2 * n].iter().all(|x| small(x, radius)) && small(&f[m + 2 * n + 1], degrees)
    };
    r.extend_prefixed("twisted", sys.check_axioms_in(Some(&inside)));
    Ok(r)
}
