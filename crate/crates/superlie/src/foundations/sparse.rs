use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Scalar;

/// Finitely supported vector indexed by `usize`; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SparseVector {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVector {
    pub fn new() -> Self {
        SparseVector { entries: BTreeMap::new() }
    }

    pub fn basis(i: usize) -> Self {
        Self::single(i, Scalar::one())
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        let mut v = Self::new();
        v.set(i, c);
        v
    }

    pub fn from_dense(d: &[Scalar]) -> Self {
        let mut v = Self::new();
        for (i, c) in d.iter().enumerate() {
            v.set(i, c.clone());
        }
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); n];
        for (&i, c) in &self.entries {
            d[i] = c.clone();
        }
        d
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get_ref(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn set(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn add_at(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &SparseVector) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_at(i, &(c * x));
        }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.axpy(&Scalar::int(-1), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::new();
        }
        SparseVector { entries: self.entries.iter().map(|(&i, x)| (i, x * c)).collect() }
    }

    pub fn neg(&self) -> SparseVector {
        self.scale(&Scalar::int(-1))
    }

    /// Bilinear pairing `sum_i a_i b_i` (no conjugation).
    pub fn dot(&self, other: &SparseVector) -> Scalar {
        let (small, large) =
            if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = Scalar::zero();
        for (i, x) in small.iter() {
            if let Some(y) = large.get_ref(i) {
                acc += &(x * y);
            }
        }
        acc
    }

    /// Entry-wise image under an index map; colliding images are summed.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVector {
        SparseVector::from_pairs(self.iter().map(|(i, c)| (f(i), c.clone())))
    }

    /// Restriction to indices satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SparseVector {
        SparseVector {
            entries: self.entries.iter().filter(|(&i, _)| keep(i)).map(|(&i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> SparseVector {
        SparseVector::from_pairs(self.iter().map(|(i, c)| (i, f(c))))
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("{c}*b{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromIterator<(usize, Scalar)> for SparseVector {
    fn from_iter<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        SparseVector::from_pairs(iter)
    }
}

/// Sparse `rows x cols` matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: BTreeMap<usize, SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(d: &[Vec<Scalar>]) -> Self {
        let rows = d.len();
        let cols = d.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (i, r) in d.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            m.set_row(i, SparseVector::from_dense(r));
        }
        m
    }

    pub fn from_ints(d: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = d.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn from_rows(rows: Vec<SparseVector>, cols: usize) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n, cols);
        for (i, r) in rows.into_iter().enumerate() {
            m.set_row(i, r);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[SparseVector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data.get(&i).map(|r| r.get(j)).unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        let row = self.data.entry(i).or_default();
        row.set(j, c);
        if row.is_zero() {
            self.data.remove(&i);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        let row = self.data.entry(i).or_default();
        row.add_at(j, c);
        if row.is_zero() {
            self.data.remove(&i);
        }
    }

    pub fn set_row(&mut self, i: usize, r: SparseVector) {
        assert!(i < self.rows);
        assert!(r.max_index().is_none_or(|m| m < self.cols), "row entry out of range");
        if r.is_zero() {
            self.data.remove(&i);
        } else {
            self.data.insert(i, r);
        }
    }

    pub fn row(&self, i: usize) -> SparseVector {
        self.data.get(&i).cloned().unwrap_or_default()
    }

    pub fn row_ref(&self, i: usize) -> Option<&SparseVector> {
        self.data.get(&i)
    }

    pub fn rows_vec(&self) -> Vec<SparseVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> SparseVector {
        self.data
            .iter()
            .filter_map(|(&i, r)| r.get_ref(j).map(|c| (i, c.clone())))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().flat_map(|(&i, r)| r.iter().map(move |(j, c)| (i, j, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.data.values().map(SparseVector::nnz).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (i, j, c) in self.entries() {
            t.set(j, i, c.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (&i, r) in &self.data {
            out.set(i, r.dot(v));
        }
        out
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = SparseMatrix::zeros(self.rows, o.cols);
        for (&i, r) in &self.data {
            let mut acc = SparseVector::new();
            for (k, a) in r.iter() {
                if let Some(orow) = o.data.get(&k) {
                    acc.axpy(a, orow);
                }
            }
            if !acc.is_zero() {
                out.data.insert(i, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(&Scalar::one(), o)
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(&Scalar::int(-1), o)
    }

    /// `self + c * o`.
    pub fn lin_comb(&self, c: &Scalar, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        let mut out = self.clone();
        for (&i, r) in &o.data {
            let row = out.data.entry(i).or_default();
            row.axpy(c, r);
            if row.is_zero() {
                out.data.remove(&i);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (&i, r) in &self.data {
            let s = r.scale(c);
            if !s.is_zero() {
                out.data.insert(i, s);
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.entries().all(|(i, j, c)| &self.get(j, i) == c)
    }

    /// Principal submatrix on the listed indices, reindexed to `0..idx.len()`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                let c = self.get(i, j);
                if !c.is_zero() {
                    m.set(a, b, c);
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_dense(self.cols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_never_stored() {
        let mut v = SparseVector::basis(3);
        v.add_at(3, &Scalar::int(-1));
        assert!(v.is_zero());
        let mut m = SparseMatrix::identity(2);
        m.set(0, 0, Scalar::zero());
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.sub(&m).nnz(), 0);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        let b = SparseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), SparseMatrix::from_ints(&[&[2, 1], &[1, 0]]));
        assert_eq!(a.transpose().get(1, 0), Scalar::int(2));
        let v = SparseVector::from_dense(&[Scalar::int(1), Scalar::int(1)]);
        assert_eq!(a.mul_vec(&v).to_dense(2), vec![Scalar::int(3), Scalar::int(1)]);
    }
}
