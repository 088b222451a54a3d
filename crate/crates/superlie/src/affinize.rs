//! Loop superalgebras `g (x) A` over a commutative 2-cocycle torus `A`,
//! extended by the degree space `V = Q (x) Z^n` and its dual `V^dag`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundations::{rank, GroupElement, Scalar, SparseMatrix, SparseVector, SymmetricGroupForm};
use crate::liesuper::{format_weight, is_zero_weight, sign, verify_eals, weight_decomposition, LieSuperalgebra, RootDatum, Weight};
use crate::report::Report;
use crate::rootsys::RootSupersystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cocycle {
    /// `theta(l, m) = prod q_ij^(l_i m_j)` for a symmetric matrix of nonzero `q_ij`.
    Bimultiplicative(Vec<Vec<Scalar>>),
    /// Explicit values on a finite set of degree pairs.
    Table(BTreeMap<(GroupElement, GroupElement), Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTorus {
    rank: usize,
    cocycle: Cocycle,
}

impl CocycleTorus {
    pub fn trivial(rank: usize) -> Self {
        Self::constant(rank, Scalar::one()).expect("1 is nonzero")
    }

    /// Every `q_ij` equal to `q`.
    pub fn constant(rank: usize, q: Scalar) -> Result<Self> {
        Self::bimultiplicative(vec![vec![q; rank]; rank])
    }

    pub fn bimultiplicative(q: Vec<Vec<Scalar>>) -> Result<Self> {
        let rank = q.len();
        if q.iter().any(|r| r.len() != rank) {
            return Err(Error::Dimension("q must be square".into()));
        }
        if q.iter().flatten().any(Scalar::is_zero) {
            return Err(Error::Invalid("q entries must be nonzero".into()));
        }
        Ok(CocycleTorus { rank, cocycle: Cocycle::Bimultiplicative(q) })
    }

    pub fn table(rank: usize, entries: BTreeMap<(GroupElement, GroupElement), Scalar>) -> Result<Self> {
        if let Some(((a, b), _)) = entries.iter().find(|((a, b), _)| a.rank() != rank || b.rank() != rank) {
            return Err(Error::Dimension(format!("degrees {a}, {b} in a torus of rank {rank}")));
        }
        Ok(CocycleTorus { rank, cocycle: Cocycle::Table(entries) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn theta(&self, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
        if a.rank() != self.rank || b.rank() != self.rank {
            return Err(Error::Dimension(format!("degrees {a}, {b} in a torus of rank {}", self.rank)));
        }
        match &self.cocycle {
            Cocycle::Bimultiplicative(q) => {
                let mut out = Scalar::one();
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        let e = a.coords[i] * b.coords[j];
                        if e != 0 && !q[i][j].is_one() {
                            out *= &q[i][j].powi(e).expect("q entries are nonzero");
                        }
                    }
                }
                Ok(out)
            }
            Cocycle::Table(t) => t.get(&(a.clone(), b.clone())).cloned().ok_or_else(|| Error::Window(format!("({a}, {b})"))),
        }
    }
}

/// `t^a t^b = theta(a, b) t^(a+b)`.
pub fn torus_mul(t: &CocycleTorus, a: &GroupElement, b: &GroupElement) -> Result<(Scalar, GroupElement)> {
    Ok((t.theta(a, b)?, a + b))
}

/// Normalization, symmetry and the cocycle identity on all pairs and triples
/// from `window`. Table triples whose sums leave the table are counted as
/// skipped.
pub fn verify_cocycle(t: &CocycleTorus, window: &[GroupElement]) -> Report {
    let mut r = Report::new();
    if let Cocycle::Bimultiplicative(q) = &t.cocycle {
        let w = (0..t.rank)
            .flat_map(|i| (0..t.rank).map(move |j| (i, j)))
            .find(|&(i, j)| q[i][j] != q[j][i])
            .map(|(i, j)| format!("q[{i}][{j}] = {} but q[{j}][{i}] = {}", q[i][j], q[j][i]));
        r.record("cocycle.q_symmetric", "bimultiplicative with a symmetric q", w);
    }
    let zero = GroupElement::zero(t.rank);
    let w = match t.theta(&zero, &zero) {
        Ok(v) if v.is_one() => None,
        Ok(v) => Some(format!("theta(0,0) = {v}")),
        Err(e) => Some(e.to_string()),
    };
    r.record("cocycle.normalized", "theta(0,0) = 1", w);

    let mut w = None;
    let mut skipped = 0;
    'sym: for a in window {
        for b in window {
            match (t.theta(a, b), t.theta(b, a)) {
                (Ok(x), Ok(y)) if x != y => {
                    w = Some(format!("theta({a},{b}) = {x} but theta({b},{a}) = {y}"));
                    break 'sym;
                }
                (Ok(_), Ok(_)) => {}
                _ => skipped += 1,
            }
        }
    }
    r.record("cocycle.symmetric", format!("theta(a,b) = theta(b,a); {skipped} pairs outside the table"), w);

    let mut w = None;
    let mut skipped = 0;
    'coc: for a in window {
        for b in window {
            for c in window {
                let lhs = t.theta(a, b).and_then(|x| Ok(x * t.theta(&(a + b), c)?));
                let rhs = t.theta(b, c).and_then(|x| Ok(x * t.theta(a, &(b + c))?));
                match (lhs, rhs) {
                    (Ok(x), Ok(y)) if x != y => {
                        w = Some(format!("a={a}, b={b}, c={c}: {x} != {y}"));
                        break 'coc;
                    }
                    (Ok(_), Ok(_)) => {}
                    _ => skipped += 1,
                }
            }
        }
    }
    r.record(
        "cocycle.identity",
        format!("theta(a,b) theta(a+b,c) = theta(b,c) theta(a,b+c); {skipped} triples outside the table"),
        w,
    );
    r
}

/// A finitely supported element of `g (x) A + V + V^dag`: loop components by
/// degree, then coordinates in the bases `{lambda_k}` of `V` and `{d_k}` of `V^dag`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedLoopElement {
    pub loop_part: BTreeMap<GroupElement, SparseVector>,
    pub v: SparseVector,
    pub d: SparseVector,
}

impl GradedLoopElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x (x) t^lambda`.
    pub fn loop_term(x: SparseVector, lambda: GroupElement) -> Self {
        let mut out = Self::zero();
        out.add_loop(&lambda, &Scalar::one(), &x);
        out
    }

    pub fn basis_term(b: usize, lambda: GroupElement) -> Self {
        Self::loop_term(SparseVector::basis(b), lambda)
    }

    pub fn v_unit(k: usize) -> Self {
        GradedLoopElement { v: SparseVector::basis(k), ..Self::zero() }
    }

    pub fn d_unit(k: usize) -> Self {
        GradedLoopElement { d: SparseVector::basis(k), ..Self::zero() }
    }

    /// `sum lambda_k v_k`.
    pub fn from_degree(lambda: &GroupElement) -> Self {
        let v = SparseVector::from_pairs(lambda.coords.iter().enumerate().map(|(k, &c)| (k, Scalar::int(c))));
        GradedLoopElement { v, ..Self::zero() }
    }

    pub fn add_loop(&mut self, lambda: &GroupElement, c: &Scalar, x: &SparseVector) {
        let e = self.loop_part.entry(lambda.clone()).or_default();
        e.axpy(c, x);
        if e.is_zero() {
            self.loop_part.remove(lambda);
        }
    }

    pub fn axpy(&mut self, c: &Scalar, o: &GradedLoopElement) {
        for (l, x) in &o.loop_part {
            self.add_loop(l, c, x);
        }
        self.v.axpy(c, &o.v);
        self.d.axpy(c, &o.d);
    }

    pub fn add(&self, o: &GradedLoopElement) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), o);
        out
    }

    pub fn sub(&self, o: &GradedLoopElement) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::int(-1), o);
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.axpy(c, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_empty() && self.v.is_zero() && self.d.is_zero()
    }

    pub fn component(&self, lambda: &GroupElement) -> Option<&SparseVector> {
        self.loop_part.get(lambda)
    }

    pub fn degrees(&self) -> impl Iterator<Item = &GroupElement> {
        self.loop_part.keys()
    }

    /// Common parity of all components (`V`, `V^dag` are even).
    pub fn parity(&self, base: &LieSuperalgebra) -> Option<u8> {
        let mut ps = self.loop_part.values().flat_map(|x| x.indices().map(|i| base.parity(i))).collect::<BTreeSet<_>>();
        if !self.v.is_zero() || !self.d.is_zero() {
            ps.insert(0);
        }
        match ps.len() {
            0 => Some(0),
            1 => ps.into_iter().next(),
            _ => None,
        }
    }

    pub fn format(&self, base: &LieSuperalgebra) -> String {
        let mut parts = Vec::new();
        for (l, x) in &self.loop_part {
            parts.push(format!("({}) t^{l}", base.format_vector(x)));
        }
        for (k, c) in self.v.iter() {
            parts.push(format!("({c}) v{}", k + 1));
        }
        for (k, c) in self.d.iter() {
            parts.push(format!("({c}) d{}", k + 1));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug)]
pub struct AffinizedAlgebra {
    base: LieSuperalgebra,
    torus: CocycleTorus,
    datum: RootDatum,
}

/// A root `alpha + lambda` with a basis of its weight space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineRoot {
    pub alpha: Weight,
    pub lambda: GroupElement,
    pub even: bool,
    pub odd: bool,
    pub space: Vec<GradedLoopElement>,
}

impl AffineRoot {
    pub fn label(&self) -> String {
        format!("{}+{}", format_weight(&self.alpha), self.lambda)
    }
}

impl AffinizedAlgebra {
    /// Requires `base` to pass `verify_eals`.
    pub fn new(base: LieSuperalgebra, torus: CocycleTorus) -> Result<Self> {
        let r = verify_eals(&base);
        if !r.passed() {
            let names: Vec<String> = r.failures().map(|c| c.name.clone()).collect();
            return Err(Error::Precondition(format!("base algebra fails {}", names.join(", "))));
        }
        let datum = weight_decomposition(&base)?;
        Ok(AffinizedAlgebra { base, torus, datum })
    }

    pub fn base(&self) -> &LieSuperalgebra {
        &self.base
    }

    pub fn torus(&self) -> &CocycleTorus {
        &self.torus
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.torus.rank
    }

    fn base_form(&self, x: &SparseVector, y: &SparseVector) -> Scalar {
        self.base.form(x, y).expect("verified base has a form")
    }

    /// The bracket `[x t^l, y t^m] = theta(l,m) [x,y] t^(l+m) + delta_{l+m,0} sum_k l_k theta(l,m) f(x,y) v_k`,
    /// `[d, x t^m] = d(m) x t^m = -[x t^m, d]`, with `V` central and `[V^dag, V^dag] = 0`.
    pub fn bracket(&self, x: &GradedLoopElement, y: &GradedLoopElement) -> Result<GradedLoopElement> {
        let mut out = GradedLoopElement::zero();
        for (l, a) in &x.loop_part {
            for (m, b) in &y.loop_part {
                let th = self.torus.theta(l, m)?;
                let ab = self.base.bracket(a, b)?;
                let sum = l + m;
                if !ab.is_zero() {
                    out.add_loop(&sum, &th, &ab);
                }
                if sum.is_zero() {
                    let f = self.base_form(a, b);
                    if !f.is_zero() {
                        let c = th * f;
                        for (k, &lk) in l.coords.iter().enumerate() {
                            if lk != 0 {
                                out.v.add_at(k, &(&c * &Scalar::int(lk)));
                            }
                        }
                    }
                }
            }
        }
        let deg = |d: &SparseVector, m: &GroupElement| -> Scalar {
            d.iter().fold(Scalar::zero(), |acc, (k, c)| acc + c * &Scalar::int(m.coords[k]))
        };
        if !x.d.is_zero() {
            for (m, b) in &y.loop_part {
                let c = deg(&x.d, m);
                if !c.is_zero() {
                    out.add_loop(m, &c, b);
                }
            }
        }
        if !y.d.is_zero() {
            for (l, a) in &x.loop_part {
                let c = deg(&y.d, l);
                if !c.is_zero() {
                    out.add_loop(l, &-c, a);
                }
            }
        }
        Ok(out)
    }

    /// `(x t^l, y t^m) = theta(l,m) delta_{l+m,0} f(x,y)` and `(v, d) = (d, v) = d(v)`.
    pub fn form(&self, x: &GradedLoopElement, y: &GradedLoopElement) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (l, a) in &x.loop_part {
            let m = -l;
            if let Some(b) = y.loop_part.get(&m) {
                let f = self.base_form(a, b);
                if !f.is_zero() {
                    out += self.torus.theta(l, &m)? * f;
                }
            }
        }
        out += x.v.dot(&y.d);
        out += x.d.dot(&y.v);
        Ok(out)
    }

    pub fn parity(&self, x: &GradedLoopElement) -> Option<u8> {
        x.parity(&self.base)
    }

    /// `h (x) 1` for the Cartan basis of the base, then `v_k`, then `d_k`.
    pub fn cartan_basis(&self) -> Vec<GradedLoopElement> {
        let n = self.rank();
        let zero = GroupElement::zero(n);
        let mut out: Vec<GradedLoopElement> =
            self.datum.cartan.iter().map(|&h| GradedLoopElement::basis_term(h, zero.clone())).collect();
        out.extend((0..n).map(GradedLoopElement::v_unit));
        out.extend((0..n).map(GradedLoopElement::d_unit));
        out
    }

    /// Values of `alpha + lambda` on [`Self::cartan_basis`].
    pub fn root_values(&self, alpha: &[Scalar], lambda: &GroupElement) -> Vec<Scalar> {
        let mut out = alpha.to_vec();
        out.extend((0..self.rank()).map(|_| Scalar::zero()));
        out.extend(lambda.coords.iter().map(|&c| Scalar::int(c)));
        out
    }

    /// `b (x) t^lambda` for every base basis element and `lambda` in the box,
    /// followed by the `v_k` and `d_k`.
    pub fn window_basis(&self, radius: i64) -> Vec<GradedLoopElement> {
        let mut out = Vec::new();
        for l in GroupElement::box_window(self.rank(), radius) {
            for b in 0..self.base.dim() {
                out.push(GradedLoopElement::basis_term(b, l.clone()));
            }
        }
        out.extend((0..self.rank()).map(GradedLoopElement::v_unit));
        out.extend((0..self.rank()).map(GradedLoopElement::d_unit));
        out
    }

    /// `t_{alpha + lambda} = t_alpha (x) 1 + lambda`.
    pub fn t_of(&self, alpha: &[Scalar], lambda: &GroupElement) -> GradedLoopElement {
        let t = self.datum.t_of(alpha);
        let mut out = GradedLoopElement::from_degree(lambda);
        if !t.is_zero() {
            out.add_loop(&GroupElement::zero(self.rank()), &Scalar::one(), &t);
        }
        out
    }
}

pub fn loop_bracket(a: &AffinizedAlgebra, x: &GradedLoopElement, y: &GradedLoopElement) -> Result<GradedLoopElement> {
    a.bracket(x, y)
}

pub fn loop_form(a: &AffinizedAlgebra, x: &GradedLoopElement, y: &GradedLoopElement) -> Result<Scalar> {
    a.form(x, y)
}

/// Weight spaces of the window (degrees with `|lambda_i| <= radius`),
/// computed from the brackets with the Cartan generators. The report records
/// any window basis vector that fails to be a weight vector.
pub fn affinized_roots(a: &AffinizedAlgebra, radius: i64) -> Result<(Vec<AffineRoot>, Report)> {
    let cartan = a.cartan_basis();
    let nh = a.datum.cartan.len();
    let n = a.rank();
    let mut spaces: BTreeMap<(Weight, GroupElement), Vec<GradedLoopElement>> = BTreeMap::new();
    let mut w = None;
    for x in a.window_basis(radius) {
        let mut vals = Vec::with_capacity(cartan.len());
        for c in &cartan {
            let b = a.bracket(c, &x)?;
            let val = if b.is_zero() {
                Scalar::zero()
            } else {
                let ratio = first_ratio(&b, &x);
                match ratio {
                    Some(r) if b == x.scale(&r) => r,
                    _ => {
                        w.get_or_insert_with(|| format!("{} is not a weight vector", x.format(&a.base)));
                        Scalar::zero()
                    }
                }
            };
            vals.push(val);
        }
        let alpha: Weight = vals[..nh].to_vec();
        if vals[nh..nh + n].iter().any(|v| !v.is_zero()) {
            w.get_or_insert_with(|| format!("V acts nontrivially on {}", x.format(&a.base)));
        }
        let lam: Option<Vec<i64>> = vals[nh + n..].iter().map(Scalar::to_i64).collect();
        let Some(lam) = lam else {
            w.get_or_insert_with(|| format!("non-integral degree on {}", x.format(&a.base)));
            continue;
        };
        spaces.entry((alpha, GroupElement::new(lam))).or_default().push(x);
    }
    let mut report = Report::new();
    report.record("affinized.weight_vectors", "window basis vectors are weight vectors of the Cartan", w);
    let roots = spaces
        .into_iter()
        .map(|((alpha, lambda), space)| {
            let even = space.iter().any(|x| a.parity(x) == Some(0));
            let odd = space.iter().any(|x| a.parity(x) == Some(1));
            AffineRoot { alpha, lambda, even, odd, space }
        })
        .collect();
    Ok((roots, report))
}

fn first_ratio(b: &GradedLoopElement, x: &GradedLoopElement) -> Option<Scalar> {
    for (l, xv) in &x.loop_part {
        if let Some((i, c)) = xv.iter().next() {
            let bv = b.loop_part.get(l)?;
            return Some(bv.get(i) * c.inv()?);
        }
    }
    if let Some((k, c)) = x.v.iter().next() {
        return Some(b.v.get(k) * c.inv()?);
    }
    if let Some((k, c)) = x.d.iter().next() {
        return Some(b.d.get(k) * c.inv()?);
    }
    None
}

fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    pools: &[Vec<GradedLoopElement>; 2],
) -> GradedLoopElement {
    let p = if pools[1].is_empty() { 0 } else { rng.gen_range(0..2) };
    let pool = &pools[p];
    let terms = rng.gen_range(1..=3);
    let mut out = GradedLoopElement::zero();
    for _ in 0..terms {
        let c = Scalar::int([-2, -1, 1, 2, 3][rng.gen_range(0..5)]);
        out.axpy(&c, &pool[rng.gen_range(0..pool.len())]);
    }
    if out.is_zero() {
        out = pool[0].clone();
    }
    out
}

/// Sampled identity checks on `samples` random homogeneous triples from the
/// window. Shared by both affinizations; `bracket`, `form`, `parity` define
/// the algebra. Window errors count as skipped samples.
pub(crate) fn sampled_identity_checks<E: Clone>(
    r: &mut Report,
    prefix: &str,
    samples: usize,
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng) -> E,
    bracket: impl Fn(&E, &E) -> Result<E>,
    form: impl Fn(&E, &E) -> Result<Scalar>,
    parity: impl Fn(&E) -> u8,
    ops: LinearOps<E>,
    describe: impl Fn(&E) -> String,
) {
    let names = ["antisymmetry", "jacobi", "form_supersymmetry", "form_even", "form_invariance"];
    if samples == 0 {
        for n in names {
            r.skip(format!("{prefix}.{n}"), "sampling disabled");
        }
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wit: [Option<String>; 5] = Default::default();
    let mut skipped = 0;
    for _ in 0..samples {
        let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let (px, py) = (parity(&x), parity(&y));
        let s = sign(px, py);
        let res: Result<[bool; 5]> = (|| {
            let xy = bracket(&x, &y)?;
            let yx = bracket(&y, &x)?;
            let anti = (ops.is_zero)(&(ops.axpy)(&xy, &s, &yx));
            let lhs = bracket(&x, &bracket(&y, &z)?)?;
            let t1 = bracket(&xy, &z)?;
            let t2 = bracket(&y, &bracket(&x, &z)?)?;
            let jac = (ops.is_zero)(&(ops.axpy)(&(ops.axpy)(&lhs, &Scalar::int(-1), &t1), &-s.clone(), &t2));
            let fxy = form(&x, &y)?;
            let fyx = form(&y, &x)?;
            let sup = fxy == &s * &fyx;
            let even = px == py || fxy.is_zero();
            let inv = form(&xy, &z)? == form(&x, &bracket(&y, &z)?)?;
            Ok([anti, jac, sup, even, inv])
        })();
        match res {
            Ok(oks) => {
                for (k, ok) in oks.iter().enumerate() {
                    if !ok && wit[k].is_none() {
                        wit[k] = Some(format!("x = {}, y = {}, z = {}", describe(&x), describe(&y), describe(&z)));
                    }
                }
            }
            Err(Error::Window(_)) => skipped += 1,
            Err(e) => {
                wit[0].get_or_insert_with(|| e.to_string());
            }
        }
    }
    for (k, n) in names.iter().enumerate() {
        r.record(format!("{prefix}.{n}"), format!("{samples} sampled triples, {skipped} outside the cocycle table"), wit[k].take());
    }
}

/// Linear operations a sampled check needs on an element type.
pub(crate) struct LinearOps<E> {
    /// `a + c b`
    pub axpy: fn(&E, &Scalar, &E) -> E,
    pub is_zero: fn(&E) -> bool,
}

fn gle_axpy(a: &GradedLoopElement, c: &Scalar, b: &GradedLoopElement) -> GradedLoopElement {
    let mut out = a.clone();
    out.axpy(c, b);
    out
}

/// Windowed verification of the extended affine axioms for the affinization.
pub fn verify_affinized(a: &AffinizedAlgebra, radius: i64, samples: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new();
    r.param("window", radius);
    r.param("samples", samples);
    r.param("seed", seed);
    r.param("torus_rank", a.rank());
    let n = a.rank();
    let window = GroupElement::box_window(n, radius);

    let cv = verify_cocycle(&a.torus, &GroupElement::box_window(n, radius.min(1)));
    r.extend(cv);

    // roots from brackets, compared with {alpha + lambda}
    let (roots, rr) = affinized_roots(a, radius)?;
    r.extend(rr);
    let got: BTreeSet<(Weight, GroupElement)> = roots.iter().map(|x| (x.alpha.clone(), x.lambda.clone())).collect();
    let want: BTreeSet<(Weight, GroupElement)> = a
        .datum
        .roots
        .iter()
        .flat_map(|al| window.iter().map(move |l| (al.weight.clone(), l.clone())))
        .collect();
    let w = got.symmetric_difference(&want).next().map(|(al, l)| format!("{}+{l}", format_weight(al)));
    r.record("affinized.root_list", format!("{} roots alpha+lambda in the window", got.len()), w);
    let w = roots.iter().find_map(|x| {
        let base = a.datum.find(&x.alpha)?;
        let dim = if is_zero_weight(&x.alpha) && x.lambda.is_zero() { base.space.len() + 2 * n } else { base.space.len() };
        (x.space.len() != dim).then(|| format!("{} has dimension {} not {dim}", x.label(), x.space.len()))
    });
    r.record("affinized.weight_space_dims", "dim l^(alpha+lambda) = dim g^alpha", w);

    // grading on pairs of window basis elements
    let basis = a.window_basis(radius);
    let mut w = None;
    'grade: for x in &basis {
        for y in &basis {
            let (Some(l), Some(m)) = (x.degrees().next(), y.degrees().next()) else { continue };
            let b = match a.bracket(x, y) {
                Ok(b) => b,
                Err(Error::Window(_)) => continue,
                Err(e) => return Err(e),
            };
            let sum = l + m;
            if b.degrees().any(|d| *d != sum) || !b.d.is_zero() || (!sum.is_zero() && !b.v.is_zero()) {
                w = Some(format!("[{}, {}] = {}", x.format(&a.base), y.format(&a.base), b.format(&a.base)));
                break 'grade;
            }
        }
    }
    r.record("affinized.grading", "loop degrees add and V appears only in degree 0", w);

    // form on the window block
    let gram_rows: Vec<SparseVector> = basis
        .iter()
        .map(|x| {
            SparseVector::from_pairs(
                basis.iter().enumerate().filter_map(|(j, y)| a.form(x, y).ok().filter(|c| !c.is_zero()).map(|c| (j, c))),
            )
        })
        .collect();
    let rk = rank(&gram_rows, basis.len());
    r.record(
        "affinized.form_nondegenerate",
        format!("window Gram rank {rk} of {}", basis.len()),
        (rk != basis.len()).then(|| format!("rank {rk} < {}", basis.len())),
    );

    // sampled identities
    let mut pools: [Vec<GradedLoopElement>; 2] = [Vec::new(), Vec::new()];
    for x in &basis {
        let p = a.parity(x).unwrap_or(0);
        pools[p as usize].push(x.clone());
    }
    sampled_identity_checks(
        &mut r,
        "affinized",
        samples,
        seed,
        |rng| random_homogeneous(rng, &pools),
        |x, y| a.bracket(x, y),
        |x, y| a.form(x, y),
        |x| a.parity(x).unwrap_or(0),
        LinearOps { axpy: gle_axpy, is_zero: GradedLoopElement::is_zero },
        |x| x.format(&a.base),
    );

    // axiom (1): x in g^alpha_i, y in g^-alpha_i with f(x,y) = 1 and [x,y] in h
    let mut w = None;
    let mut count = 0;
    'ax1: for root in &roots {
        if is_zero_weight(&root.alpha) && root.lambda.is_zero() {
            continue;
        }
        let base_root = a.datum.find(&root.alpha).expect("root list checked");
        let Some(neg) = a.datum.find(&crate::liesuper::weight_neg(&root.alpha)) else {
            w = Some(format!("{}: -alpha is not a root", root.label()));
            break;
        };
        for p in [0u8, 1] {
            if (p == 0 && !root.even) || (p == 1 && !root.odd) {
                continue;
            }
            let pair = base_root.space.iter().filter(|&&x| a.base.parity(x) == p).find_map(|&x| {
                neg.space.iter().filter(|&&y| a.base.parity(y) == p).find_map(|&y| {
                    let (xv, yv) = (SparseVector::basis(x), SparseVector::basis(y));
                    let f = a.base_form(&xv, &yv);
                    let b = a.base.br(&xv, &yv);
                    (!f.is_zero() && b.indices().all(|k| a.datum.cartan.contains(&k))).then(|| (x, y, f))
                })
            });
            let Some((x, y, f)) = pair else {
                w = Some(format!("{}: no parity-{p} pair", root.label()));
                break 'ax1;
            };
            let l = &root.lambda;
            let ml = -l;
            let c = (a.torus.theta(l, &ml)? * f).inv().expect("nonzero");
            let xl = GradedLoopElement::basis_term(x, l.clone());
            let yl = GradedLoopElement::loop_term(SparseVector::single(y, c), ml);
            let got = a.bracket(&xl, &yl)?;
            let want = a.t_of(&root.alpha, l);
            if got != want || got.is_zero() {
                w = Some(format!("{}: [x t^l, y t^-l] = {} but t = {}", root.label(), got.format(&a.base), want.format(&a.base)));
                break 'ax1;
            }
            count += 1;
        }
    }
    r.record("affinized.axiom1_witnesses", format!("{count} witnesses with bracket t_alpha (x) 1 + lambda"), w);

    // axiom (2): ad-nilpotency of real root vectors on the window
    let bound = a.base.dim() + 2;
    let mut w = None;
    let mut count = 0;
    'ax2: for root in roots.iter().filter(|x| a.datum.is_real(&x.alpha)) {
        for x in &root.space {
            count += 1;
            for b in &basis {
                let mut y = b.clone();
                let mut k = 0;
                while !y.is_zero() {
                    if k > bound {
                        w = Some(format!("ad {} not nilpotent on {}", x.format(&a.base), b.format(&a.base)));
                        break 'ax2;
                    }
                    y = match a.bracket(x, &y) {
                        Ok(v) => v,
                        Err(Error::Window(_)) => break,
                        Err(e) => return Err(e),
                    };
                    k += 1;
                }
            }
        }
    }
    r.record("affinized.axiom2_nilpotent", format!("{count} real root vectors on {} window vectors, bound {bound}", basis.len()), w);

    // window-relative root supersystem check
    let lat = a.datum.lattice()?;
    let fr = lat.rank();
    let mut gram = vec![vec![Scalar::zero(); fr + n]; fr + n];
    for (i, row) in lat.form.gram().iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            gram[i][j] = c.clone();
        }
    }
    let form = SymmetricGroupForm::new(gram)?;
    let mut coords = Vec::with_capacity(roots.len());
    for x in &roots {
        let mut c = lat.coords(&x.alpha)?.coords;
        c.extend_from_slice(&x.lambda.coords);
        coords.push(GroupElement::new(c));
    }
    let sys = RootSupersystem::classify(&coords, &form)?;
    let inside = |g: &GroupElement| g.coords[fr..].iter().all(|c| c.abs() <= radius);
    let ears = sys.check_axioms_in(Some(&inside));
    r.extend_prefixed("affinized", ears);
    Ok(r)
}

/// Gram matrix of the form on a list of elements.
pub fn gram_of(a: &AffinizedAlgebra, xs: &[GradedLoopElement]) -> Result<SparseMatrix> {
    let mut g = SparseMatrix::zeros(xs.len(), xs.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            g.set(i, j, a.form(x, y)?);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_examples() {
        let t = CocycleTorus::trivial(2);
        let (c, s) = torus_mul(&t, &GroupElement::new(vec![1, 2]), &GroupElement::new(vec![3, -1])).unwrap();
        assert!(c.is_one());
        assert_eq!(s, GroupElement::new(vec![4, 1]));
        let q = CocycleTorus::bimultiplicative(vec![
            vec![Scalar::one(), Scalar::int(-1)],
            vec![Scalar::int(-1), Scalar::one()],
        ])
        .unwrap();
        let (c, _) = torus_mul(&q, &GroupElement::unit(2, 0), &GroupElement::unit(2, 1)).unwrap();
        assert_eq!(c, Scalar::int(-1));
        let (c, _) = torus_mul(&q, &GroupElement::zero(2), &GroupElement::new(vec![5, 7])).unwrap();
        assert!(c.is_one());
    }

    #[test]
    fn table_normalization() {
        let z = GroupElement::zero(1);
        let mut t = BTreeMap::new();
        t.insert((z.clone(), z.clone()), Scalar::int(2));
        let torus = CocycleTorus::table(1, t).unwrap();
        let r = verify_cocycle(&torus, std::slice::from_ref(&z));
        assert_eq!(r.status("cocycle.normalized"), Some(crate::report::Status::Fail));
        assert!(torus.theta(&z, &GroupElement::unit(1, 0)).is_err());
    }
}
