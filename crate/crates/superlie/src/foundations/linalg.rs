use std::collections::BTreeMap;

use super::{Scalar, SparseMatrix, SparseVector};

/// Reduced row echelon form of a list of rows.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows, each with a leading 1 at the matching entry of `pivots`.
    pub rows: Vec<SparseVector>,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Columns are scanned left to right and the pivot
/// is the lowest-indexed unused row with a nonzero entry in that column.
pub fn rref(mut rows: Vec<SparseVector>, ncols: usize) -> Rref {
    let mut used = vec![false; rows.len()];
    let mut order = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (0..rows.len()).find(|&r| !used[r] && rows[r].get_ref(c).is_some()) else {
            continue;
        };
        used[p] = true;
        let inv = rows[p].get(c).inv().unwrap();
        rows[p] = rows[p].scale(&inv);
        let prow = rows[p].clone();
        for r in 0..rows.len() {
            if r == p {
                continue;
            }
            if let Some(x) = rows[r].get_ref(c) {
                let x = -x.clone();
                rows[r].axpy(&x, &prow);
            }
        }
        order.push(p);
        pivots.push(c);
    }
    let out_rows = order.iter().map(|&p| std::mem::take(&mut rows[p])).collect();
    Rref { rows: out_rows, pivots }
}

pub fn rank(rows: &[SparseVector], ncols: usize) -> usize {
    let mut b = EchelonBasis::new();
    for r in rows {
        b.insert(r.clone());
    }
    debug_assert!(b.rank() <= ncols);
    b.rank()
}

/// Basis of the null space `{x : M x = 0}`; one vector per free column,
/// carrying a 1 at that column.
pub fn kernel(m: &SparseMatrix) -> Vec<SparseVector> {
    kernel_of_rows(m.rows_vec(), m.ncols())
}

pub fn kernel_of_rows(rows: Vec<SparseVector>, ncols: usize) -> Vec<SparseVector> {
    kernel_with_free_columns(rows, ncols).into_iter().map(|(_, v)| v).collect()
}

/// Kernel vectors paired with their free column. A vector of the kernel is
/// determined by its values at the free columns.
pub fn kernel_with_free_columns(rows: Vec<SparseVector>, ncols: usize) -> Vec<(usize, SparseVector)> {
    let r = rref(rows, ncols);
    let pivot_of: BTreeMap<usize, usize> = r.pivots.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_of.contains_key(c)) {
        let mut v = SparseVector::basis(free);
        for (k, &pc) in r.pivots.iter().enumerate() {
            let x = r.rows[k].get(free);
            if !x.is_zero() {
                v.set(pc, -x);
            }
        }
        out.push((free, v));
    }
    out
}

/// Exact solution of `M x = rhs` with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve_linear(m: &SparseMatrix, rhs: &SparseVector) -> Option<SparseVector> {
    let n = m.ncols();
    assert!(rhs.max_index().is_none_or(|i| i < m.nrows()), "rhs longer than matrix");
    let rows: Vec<SparseVector> = (0..m.nrows())
        .map(|i| {
            let mut r = m.row(i);
            r.set(n, rhs.get(i));
            r
        })
        .collect();
    let r = rref(rows, n + 1);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = SparseVector::new();
    for (k, &pc) in r.pivots.iter().enumerate() {
        x.set(pc, r.rows[k].get(n));
    }
    Some(x)
}

pub fn inverse(m: &SparseMatrix) -> Option<SparseMatrix> {
    let n = m.nrows();
    if n != m.ncols() {
        return None;
    }
    let rows: Vec<SparseVector> = (0..n)
        .map(|i| {
            let mut r = m.row(i);
            r.set(n + i, Scalar::one());
            r
        })
        .collect();
    let r = rref(rows, 2 * n);
    if r.pivots.len() < n || r.pivots[n - 1] >= n {
        return None;
    }
    let inv_rows = r.rows.iter().map(|row| row.filter(|j| j >= n).reindex(|j| j - n)).collect();
    Some(SparseMatrix::from_rows(inv_rows, n))
}

/// Coordinates with respect to a fixed family of independent vectors.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    ncols: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl CoordinateSystem {
    /// Fails when the family is linearly dependent.
    pub fn new(vectors: &[SparseVector], ncols: usize) -> Option<Self> {
        let rows: Vec<SparseVector> = vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut r = v.clone();
                r.set(ncols + k, Scalar::one());
                r
            })
            .collect();
        let r = rref(rows, ncols + vectors.len());
        if r.pivots.iter().filter(|&&p| p < ncols).count() < vectors.len() {
            return None;
        }
        Some(CoordinateSystem { ncols, rows: r.rows, pivots: r.pivots })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `x` with `v = sum x_k vectors[k]`, or `None` outside the span.
    pub fn coords(&self, v: &SparseVector) -> Option<SparseVector> {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = w.get_ref(p) {
                let c = -c.clone();
                w.axpy(&c, row);
            }
        }
        if w.indices().any(|i| i < self.ncols) {
            return None;
        }
        Some(w.reindex(|i| i - self.ncols).neg())
    }
}

/// Incrementally built echelon basis of a subspace. Each stored row has
/// leading coefficient 1 and no entries before its pivot.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseVector>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVector>>(vs: I) -> Self {
        let mut b = Self::new();
        for v in vs {
            b.insert(v.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &SparseVector> {
        self.rows.values()
    }

    /// Residual of `v` after elimination against the stored rows.
    pub fn reduce(&self, mut v: SparseVector) -> SparseVector {
        let mut cursor = 0usize;
        loop {
            let next = v.iter().map(|(i, _)| i).find(|&i| i >= cursor && self.rows.contains_key(&i));
            let Some(k) = next else { break };
            let c = -v.get(k);
            v.axpy(&c, &self.rows[&k]);
            cursor = k + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.inv().unwrap();
        self.rows.insert(p, r.scale(&inv));
        true
    }
}

/// Whether the span of `a` contains the span of `b`.
pub fn span_contains(a: &[SparseVector], b: &[SparseVector]) -> bool {
    let basis = EchelonBasis::from_vectors(a);
    b.iter().all(|v| basis.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_examples() {
        let v = SparseVector::from_dense(&[Scalar::int(4), Scalar::int(0), Scalar::frac(1, 3)]);
        assert_eq!(solve_linear(&SparseMatrix::identity(3), &v), Some(v.clone()));
        let m = SparseMatrix::from_ints(&[&[2]]);
        let x = solve_linear(&m, &SparseVector::single(0, Scalar::int(3))).unwrap();
        assert_eq!(x.get(0), Scalar::frac(3, 2));
        let z = SparseMatrix::zeros(2, 2);
        assert_eq!(solve_linear(&z, &SparseVector::basis(1)), None);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = SparseMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = SparseMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), SparseMatrix::identity(2));
        assert!(inverse(&SparseMatrix::from_ints(&[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn coordinates_recover_combination() {
        let a = SparseVector::from_dense(&[Scalar::int(1), Scalar::int(1), Scalar::int(0)]);
        let b = SparseVector::from_dense(&[Scalar::int(0), Scalar::int(2), Scalar::int(1)]);
        let cs = CoordinateSystem::new(&[a.clone(), b.clone()], 3).unwrap();
        let v = a.scale(&Scalar::frac(1, 3)).add(&b.scale(&Scalar::int(-2)));
        let x = cs.coords(&v).unwrap();
        assert_eq!(x.get(0), Scalar::frac(1, 3));
        assert_eq!(x.get(1), Scalar::int(-2));
        assert!(cs.coords(&SparseVector::basis(0)).is_none());
        assert!(CoordinateSystem::new(&[a.clone(), a], 3).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(SparseVector::from_dense(&[Scalar::int(0), Scalar::int(1), Scalar::int(1)])));
        assert!(b.insert(SparseVector::from_dense(&[Scalar::int(1), Scalar::int(1), Scalar::int(0)])));
        assert!(!b.insert(SparseVector::from_dense(&[Scalar::int(1), Scalar::int(2), Scalar::int(1)])));
        assert_eq!(b.rank(), 2);
        assert!(!b.contains(&SparseVector::basis(2)));
    }
}
