use serde::{Deserialize, Serialize};

use super::{osp12_standard, E_MINUS, E_PLUS, F_MINUS, F_PLUS, H};
use crate::error::{Error, Result};
use crate::foundations::{kernel, span_contains, EchelonBasis, Scalar, SparseMatrix, SparseVector};
use crate::liesuper::sign;
use crate::report::Report;

/// A finite-dimensional osp(1,2)-module given by the actions of `e, f, h`
/// on a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Osp12Module {
    parity: Vec<u8>,
    e: SparseMatrix,
    f: SparseMatrix,
    h: SparseMatrix,
    #[serde(skip)]
    ee: Option<SparseMatrix>,
    #[serde(skip)]
    ff: Option<SparseMatrix>,
}

impl Osp12Module {
    pub fn new(parity: Vec<u8>, e: SparseMatrix, f: SparseMatrix, h: SparseMatrix) -> Result<Self> {
        let n = parity.len();
        for (name, m) in [("e", &e), ("f", &f), ("h", &h)] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Dimension(format!("{name} is {}x{} for dimension {n}", m.nrows(), m.ncols())));
            }
        }
        if let Some(p) = parity.iter().find(|&&p| p > 1) {
            return Err(Error::Invalid(format!("parity {p} is not 0 or 1")));
        }
        let two = Scalar::int(2);
        let ee = Some(e.mul(&e).scale(&two));
        let ff = Some(f.mul(&f).scale(&two));
        Ok(Osp12Module { parity, e, f, h, ee, ff })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn act_e(&self) -> &SparseMatrix {
        &self.e
    }

    pub fn act_f(&self) -> &SparseMatrix {
        &self.f
    }

    pub fn act_h(&self) -> &SparseMatrix {
        &self.h
    }

    /// Action of `[e, e]`, that is `2 e^2`.
    pub fn act_ee(&self) -> SparseMatrix {
        self.ee.clone().unwrap_or_else(|| self.e.mul(&self.e).scale(&Scalar::int(2)))
    }

    /// Action of `[f, f]`, that is `2 f^2`.
    pub fn act_ff(&self) -> SparseMatrix {
        self.ff.clone().unwrap_or_else(|| self.f.mul(&self.f).scale(&Scalar::int(2)))
    }

    pub fn e(&self, v: &SparseVector) -> SparseVector {
        self.e.mul_vec(v)
    }

    pub fn f(&self, v: &SparseVector) -> SparseVector {
        self.f.mul_vec(v)
    }

    pub fn h(&self, v: &SparseVector) -> SparseVector {
        self.h.mul_vec(v)
    }

    pub fn indices_of_parity(&self, p: u8) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == p).collect()
    }

    fn parity_witness(&self, name: &str, m: &SparseMatrix, shift: u8) -> Option<String> {
        m.entries()
            .find(|&(r, c, _)| self.parity[r] != (self.parity[c] + shift) % 2)
            .map(|(r, c, _)| format!("{name} has entry ({r}, {c}) of the wrong parity"))
    }

    /// The defining relations `[h,e] = 2e`, `[h,f] = -2f`, `ef + fe = h` and the
    /// parities of the three maps. These generate all relations of osp(1,2).
    pub fn check_representation(&self) -> Report {
        let mut r = Report::new();
        let two = Scalar::int(2);
        let w = self
            .parity_witness("e", &self.e, 1)
            .or_else(|| self.parity_witness("f", &self.f, 1))
            .or_else(|| self.parity_witness("h", &self.h, 0));
        r.record("module.parity", "e, f odd and h even", w);
        let he = self.h.mul(&self.e).sub(&self.e.mul(&self.h));
        let w = (he != self.e.scale(&two)).then(|| "he - eh != 2e".to_string());
        r.record("module.relation_he", "[h,e] = 2e", w);
        let hf = self.h.mul(&self.f).sub(&self.f.mul(&self.h));
        let w = (hf != self.f.scale(&-two)).then(|| "hf - fh != -2f".to_string());
        r.record("module.relation_hf", "[h,f] = -2f", w);
        let ef = self.e.mul(&self.f).add(&self.f.mul(&self.e));
        let w = (ef != self.h).then(|| "ef + fe != h".to_string());
        r.record("module.relation_ef", "[e,f] = h", w);
        r
    }

    /// `rho([a,b]) = rho(a) rho(b) - (-1)^{|a||b|} rho(b) rho(a)` for all 25
    /// pairs of basis elements of osp(1,2).
    pub fn check_all_pairs(&self) -> Report {
        let l = osp12_standard();
        let mut rho: Vec<SparseMatrix> = vec![SparseMatrix::zeros(0, 0); 5];
        rho[E_PLUS] = self.act_ee();
        rho[E_MINUS] = self.act_ff();
        rho[H] = self.h.clone();
        rho[F_PLUS] = self.e.clone();
        rho[F_MINUS] = self.f.clone();
        let n = self.dim();
        let mut w = None;
        'pairs: for a in 0..5 {
            for b in 0..5 {
                let br = l.br(&SparseVector::basis(a), &SparseVector::basis(b));
                let mut lhs = SparseMatrix::zeros(n, n);
                for (k, c) in br.iter() {
                    lhs = lhs.lin_comb(c, &rho[k]);
                }
                let s = -sign(l.parity(a), l.parity(b));
                let rhs = rho[a].mul(&rho[b]).lin_comb(&s, &rho[b].mul(&rho[a]));
                if lhs != rhs {
                    w = Some(format!("({}, {})", l.label(a), l.label(b)));
                    break 'pairs;
                }
            }
        }
        let mut r = Report::new();
        r.record("module.all_pairs", "representation property on all basis pairs", w);
        r
    }
}

/// The irreducible module of highest weight `lambda` on `v_0, ..., v_lambda`
/// with `v_0` of parity `top_parity`.
pub fn irreducible_module(lambda: i64, top_parity: u8) -> Result<Osp12Module> {
    if lambda < 0 || lambda % 2 != 0 {
        return Err(Error::Precondition(format!("highest weight {lambda} must be even and nonnegative")));
    }
    if top_parity > 1 {
        return Err(Error::Invalid(format!("parity {top_parity} is not 0 or 1")));
    }
    let n = (lambda + 1) as usize;
    let parity = (0..n).map(|i| (top_parity + i as u8) % 2).collect();
    let mut e = SparseMatrix::zeros(n, n);
    let mut f = SparseMatrix::zeros(n, n);
    let mut h = SparseMatrix::zeros(n, n);
    for i in 0..n {
        let ii = i as i64;
        h.set(i, i, Scalar::int(lambda - 2 * ii));
        if i + 1 < n {
            f.set(i + 1, i, Scalar::one());
        }
        if i > 0 {
            let c = if i % 2 == 0 { -ii } else { lambda - (ii - 1) };
            e.set(i - 1, i, Scalar::int(c));
        }
    }
    Osp12Module::new(parity, e, f, h)
}

/// Sorted (descending) eigenvalues of `h` restricted to the given indices,
/// with multiplicity. Requires `h` to be diagonalizable over Q with even
/// integer eigenvalues; with `symmetric`, also requires `mu` and `-mu` to
/// have equal multiplicities.
pub fn spectrum_on(h: &SparseMatrix, idx: &[usize], symmetric: bool) -> Result<Vec<Scalar>> {
    spectrum_within(h, idx, symmetric, idx.len() as i64 + 1)
}

/// As [`spectrum_on`], searching eigenvalues up to `2 * bound` in absolute
/// value. Needed when the restriction is much smaller than the module it
/// came from.
pub fn spectrum_within(h: &SparseMatrix, idx: &[usize], symmetric: bool, bound: i64) -> Result<Vec<Scalar>> {
    let m = h.submatrix(idx, idx);
    let n = idx.len();
    let mut out: Vec<(i64, usize)> = Vec::new();
    let mut total = 0;
    let mut mu = 0i64;
    while total < n && mu <= 2 * bound {
        for v in if mu == 0 { vec![0] } else { vec![mu, -mu] } {
            let shifted = m.lin_comb(&Scalar::int(-v), &SparseMatrix::identity(n));
            let k = kernel(&shifted).len();
            if k > 0 {
                out.push((v, k));
                total += k;
            }
        }
        mu += 2;
    }
    if total < n {
        return Err(Error::Invalid(format!(
            "h is not diagonalizable with even integer eigenvalues ({total} of {n} dimensions accounted for)"
        )));
    }
    if symmetric {
        for &(v, k) in &out {
            let opp = out.iter().find(|&&(w, _)| w == -v).map_or(0, |&(_, k)| k);
            if opp != k {
                return Err(Error::Invalid(format!("eigenvalue {v} has multiplicity {k} but {} has {opp}", -v)));
            }
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out.into_iter().flat_map(|(v, k)| std::iter::repeat_n(Scalar::int(v), k)).collect())
}

/// Eigenvalues of `h` with multiplicity, sorted descending.
pub fn h_spectrum(m: &Osp12Module) -> Result<Vec<Scalar>> {
    let all: Vec<usize> = (0..m.dim()).collect();
    spectrum_on(m.act_h(), &all, true)
}

/// Smallest `k` with `f^k y = 0`, or `None` if it exceeds the dimension.
pub fn top_chain_length(m: &Osp12Module, y: &SparseVector) -> Option<usize> {
    let mut v = y.clone();
    for k in 0..=m.dim() {
        if v.is_zero() {
            return Some(k);
        }
        v = m.f(&v);
    }
    None
}

fn f_chain(m: &Osp12Module, x: SparseVector) -> Result<Vec<SparseVector>> {
    let mut out = Vec::new();
    let mut v = x;
    while !v.is_zero() {
        if out.len() > m.dim() {
            return Err(Error::Invalid("f is not nilpotent on the generated chain".into()));
        }
        let next = m.f(&v);
        out.push(v);
        v = next;
    }
    Ok(out)
}

/// The span `T` of `f^{2k} (e u)` and `f^{2k+1} (f(e u) - (lambda_u + 2) u)`,
/// checked against the closure of `{f u}` under `[e,e]`, `[f,f]` and `h`.
/// Returns an echelon basis of `T`.
pub fn generated_g0_submodule(m: &Osp12Module, u: &SparseVector, lambda_u: &Scalar) -> Result<Vec<SparseVector>> {
    let two = Scalar::int(2);
    if *lambda_u == -two.clone() {
        return Err(Error::Precondition("eigenvalue -2 is excluded".into()));
    }
    if m.h(u) != u.scale(lambda_u) {
        return Err(Error::Precondition(format!("u is not an h-eigenvector of eigenvalue {lambda_u}")));
    }
    let (ee, ff) = (m.act_ee(), m.act_ff());
    if !ee.mul_vec(u).is_zero() {
        return Err(Error::Precondition("[e,e] u != 0".into()));
    }
    let mut ps = u.indices().map(|i| m.parity()[i]);
    if let Some(p) = ps.next() {
        if !ps.all(|q| q == p) {
            return Err(Error::Precondition("u is not homogeneous".into()));
        }
    }
    let eu = m.e(u);
    let s = m.f(&eu).sub(&u.scale(&(lambda_u + &two)));
    let mut t = EchelonBasis::new();
    for (k, v) in f_chain(m, eu)?.into_iter().enumerate() {
        if k % 2 == 0 {
            t.insert(v);
        }
    }
    for (k, v) in f_chain(m, s)?.into_iter().enumerate() {
        if k % 2 == 1 {
            t.insert(v);
        }
    }
    let mut closure = EchelonBasis::new();
    let mut frontier = vec![m.f(u)];
    while let Some(v) = frontier.pop() {
        if closure.insert(v.clone()) {
            frontier.extend([ee.mul_vec(&v), ff.mul_vec(&v), m.h(&v)]);
        }
    }
    let tv: Vec<SparseVector> = t.vectors().cloned().collect();
    let cv: Vec<SparseVector> = closure.vectors().cloned().collect();
    if !(span_contains(&tv, &cv) && span_contains(&cv, &tv)) {
        return Err(Error::Invalid(format!(
            "T has dimension {} but the generated submodule has dimension {}",
            tv.len(),
            cv.len()
        )));
    }
    Ok(tv)
}
