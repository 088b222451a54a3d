use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::module::{spectrum_within, Osp12Module};
use crate::error::{Error, Result};
use crate::foundations::{kernel, kernel_of_rows, kernel_with_free_columns, EchelonBasis, Scalar, SparseMatrix, SparseVector};
use crate::report::Report;

/// An irreducible summand `V(lambda)` with basis `b_k = f^k b_0`, `k = 0..=lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub lambda: i64,
    pub top_parity: u8,
    pub basis: Vec<SparseVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    /// Sorted by highest weight, descending.
    pub summands: Vec<Summand>,
    pub certificate: Report,
}

impl Decomposition {
    pub fn lambdas(&self) -> Vec<i64> {
        self.summands.iter().map(|s| s.lambda).collect()
    }
}

/// Block-diagonal sum.
pub fn direct_sum(mods: &[Osp12Module]) -> Osp12Module {
    let n: usize = mods.iter().map(Osp12Module::dim).sum();
    let mut parity = Vec::with_capacity(n);
    let (mut e, mut f, mut h) = (SparseMatrix::zeros(n, n), SparseMatrix::zeros(n, n), SparseMatrix::zeros(n, n));
    let mut off = 0;
    for m in mods {
        parity.extend_from_slice(m.parity());
        for (dst, src) in [(&mut e, m.act_e()), (&mut f, m.act_f()), (&mut h, m.act_h())] {
            for (r, c, x) in src.entries() {
                dst.set(off + r, off + c, x.clone());
            }
        }
        off += m.dim();
    }
    Osp12Module::new(parity, e, f, h).expect("blocks have matching shapes")
}

/// A seeded random parity-preserving change of basis: a permutation of the
/// basis followed by `dim` elementary shears between basis vectors of equal
/// parity (coefficients in `{+-1, +-2}`). Returns the module in the new
/// basis and the matrix `P` whose columns are the new basis vectors.
pub fn scramble(m: &Osp12Module, seed: u64) -> (Osp12Module, SparseMatrix) {
    let n = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let parity: Vec<u8> = perm.iter().map(|&o| m.parity()[o]).collect();
    let mut p = SparseMatrix::zeros(n, n);
    let mut pinv = SparseMatrix::zeros(n, n);
    for (i, &o) in perm.iter().enumerate() {
        p.set(o, i, Scalar::one());
        pinv.set(i, o, Scalar::one());
    }
    if n > 1 {
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j || parity[i] != parity[j] {
                continue;
            }
            let c = Scalar::int([-2, -1, 1, 2][rng.gen_range(0..4)]);
            // P <- P (I + c E_ij): column j += c column i
            for r in 0..n {
                let x = p.get(r, i);
                if !x.is_zero() {
                    p.add_at(r, j, &(&c * &x));
                }
            }
            // P^-1 <- (I - c E_ij) P^-1: row i -= c row j
            let rj = pinv.row(j);
            let mut ri = pinv.row(i);
            ri.axpy(&-c, &rj);
            pinv.set_row(i, ri);
        }
    }
    let conj = |a: &SparseMatrix| pinv.mul(&a.mul(&p));
    let out = Osp12Module::new(parity, conj(m.act_e()), conj(m.act_f()), conj(m.act_h())).expect("shapes preserved");
    (out, p)
}

fn chain(m: &Osp12Module, x: SparseVector, cap: usize) -> Result<Vec<SparseVector>> {
    let mut out = Vec::new();
    let mut v = x;
    while !v.is_zero() {
        if out.len() > cap {
            return Err(Error::Invalid("f is not nilpotent".into()));
        }
        let next = m.f(&v);
        out.push(v);
        v = next;
    }
    Ok(out)
}

/// Checks that `b_k = f^k b_0` spans a copy of `V(lambda)`: `f b_k = b_{k+1}`,
/// `h b_k = (lambda - 2k) b_k` and `e b_k` as in the irreducible module.
fn chain_certificate(m: &Osp12Module, s: &Summand) -> Option<String> {
    let n = s.basis.len();
    if n as i64 != s.lambda + 1 {
        return Some(format!("chain of length {n} for highest weight {}", s.lambda));
    }
    for (k, b) in s.basis.iter().enumerate() {
        let ki = k as i64;
        let next = s.basis.get(k + 1).cloned().unwrap_or_default();
        if m.f(b) != next {
            return Some(format!("f b_{k} != b_{}", k + 1));
        }
        if m.h(b) != b.scale(&Scalar::int(s.lambda - 2 * ki)) {
            return Some(format!("b_{k} is not an h-eigenvector of eigenvalue {}", s.lambda - 2 * ki));
        }
        let want = if k == 0 {
            SparseVector::new()
        } else {
            let c = if k % 2 == 0 { -ki } else { s.lambda - (ki - 1) };
            s.basis[k - 1].scale(&Scalar::int(c))
        };
        if m.e(b) != want {
            return Some(format!("e b_{k} does not match the irreducible action"));
        }
    }
    None
}

/// Splits a module into irreducible summands. Top vectors of the even part
/// under `span{[e,e],[f,f],h}` give, for top weight `mu`, the two chains
/// generated by `e w` and `f(e w) - (mu + 2) w`; odd vectors killed by
/// `h, [e,e], [f,f]` give trivial lines `f(e v) - 2v`. A maximal independent
/// subfamily of these summands is kept and certified.
pub fn decompose(m: &Osp12Module) -> Result<Decomposition> {
    let rep = m.check_representation();
    if !rep.passed() {
        let names: Vec<String> = rep.failures().map(|c| c.name.clone()).collect();
        return Err(Error::Precondition(format!("not a representation: {}", names.join(", "))));
    }
    let n = m.dim();
    let ee = m.act_ee();
    let ff = m.act_ff();
    let even = m.indices_of_parity(0);
    let odd = m.indices_of_parity(1);

    // highest weight vectors of the even part
    let k_local = kernel_with_free_columns(ee.submatrix(&even, &even).rows_vec(), even.len());
    let k: Vec<SparseVector> = k_local.iter().map(|(_, v)| v.reindex(|i| even[i])).collect();
    let free: Vec<usize> = k_local.iter().map(|&(c, _)| even[c]).collect();
    let r = k.len();
    let mut hk = SparseMatrix::zeros(r, r);
    for (j, kj) in k.iter().enumerate() {
        let hv = m.h(kj);
        for (i, &fi) in free.iter().enumerate() {
            hk.set(i, j, hv.get(fi));
        }
    }
    let all: Vec<usize> = (0..r).collect();
    // top weights are bounded by the module dimension, not by r
    let spec = spectrum_within(&hk, &all, false, n as i64 + 1).map_err(|e| Error::Invalid(format!("h on top vectors: {e}")))?;
    let mut eigen: Vec<i64> = spec.iter().map(|s| s.to_i64().unwrap()).collect();
    eigen.dedup();
    let mut tops: Vec<(i64, SparseVector)> = Vec::new();
    for &mu in &eigen {
        let shifted = hk.lin_comb(&Scalar::int(-mu), &SparseMatrix::identity(r));
        for c in kernel(&shifted) {
            let mut w = SparseVector::new();
            for (j, x) in c.iter() {
                w.axpy(x, &k[j]);
            }
            tops.push((mu, w));
        }
    }

    let mut candidates: Vec<(i64, SparseVector)> = Vec::new();
    for (mu, w) in &tops {
        let ew = m.e(w);
        let x2 = m.f(&ew).sub(&w.scale(&Scalar::int(mu + 2)));
        candidates.push((mu + 2, ew));
        candidates.push((*mu, x2));
    }
    let stacked: Vec<SparseVector> = [m.act_h(), &ee, &ff]
        .iter()
        .flat_map(|a| a.submatrix(&odd, &odd).rows_vec())
        .collect();
    for v in kernel_of_rows(stacked, odd.len()) {
        let v = v.reindex(|i| odd[i]);
        let x = m.f(&m.e(&v)).sub(&v.scale(&Scalar::int(2)));
        candidates.push((0, x));
    }

    let mut span = EchelonBasis::new();
    let mut summands = Vec::new();
    for (lambda, x) in candidates {
        if x.is_zero() {
            continue;
        }
        let top_parity = m.parity()[x.leading().unwrap().0];
        let basis = chain(m, x, n)?;
        if basis.len() as i64 != lambda + 1 {
            return Err(Error::Invalid(format!(
                "top vector of weight {lambda} has an f-chain of length {}",
                basis.len()
            )));
        }
        let before = span.rank();
        for b in &basis {
            span.insert(b.clone());
        }
        let gained = span.rank() - before;
        if gained == 0 {
            continue;
        }
        if gained != basis.len() {
            return Err(Error::Invalid(format!("summand of weight {lambda} meets the others in a proper subspace")));
        }
        summands.push(Summand { lambda, top_parity, basis });
    }
    summands.sort_by(|a, b| b.lambda.cmp(&a.lambda));

    let mut cert = Report::new();
    let total: usize = summands.iter().map(|s| s.basis.len()).sum();
    cert.record(
        "decompose.direct_sum",
        format!("{} summands, rank {} of {n}", summands.len(), span.rank()),
        (span.rank() != n || total != n).then(|| format!("summands span rank {} with total dimension {total}", span.rank())),
    );
    let w = summands.iter().find_map(|s| chain_certificate(m, s).map(|w| format!("V({}): {w}", s.lambda)));
    cert.record("decompose.summands_invariant", "each summand is a copy of the irreducible module", w);
    let w = summands.iter().find(|s| s.basis.len() % 2 == 0).map(|s| format!("V({}) has even dimension", s.lambda));
    cert.record("decompose.odd_dimension", "every summand has odd dimension", w);
    let w = summands.iter().find_map(|s| {
        let spec: Vec<i64> = (0..s.basis.len() as i64).map(|k| s.lambda - 2 * k).collect();
        let distinct = spec.windows(2).all(|p| p[0] > p[1]);
        let symmetric = spec.iter().zip(spec.iter().rev()).all(|(a, b)| *a == -b);
        (!(distinct && symmetric)).then(|| format!("V({}) spectrum {spec:?}", s.lambda))
    });
    cert.record("decompose.summands_irreducible", "h spectrum on each summand is symmetric with multiplicity one", w);
    if !cert.passed() {
        let names: Vec<String> = cert.failures().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect();
        return Err(Error::Invalid(names.join("; ")));
    }
    Ok(Decomposition { summands, certificate: cert })
}
