use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundations::{Field, Scalar, SparseMatrix, SparseVector};
use crate::report::Report;

/// A finite-dimensional Lie superalgebra on a homogeneous basis, given by
/// structure constants `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSuperalgebra {
    pub field: Field,
    labels: Vec<String>,
    parity: Vec<u8>,
    structure: BTreeMap<(usize, usize), SparseVector>,
    gram: Option<SparseMatrix>,
    cartan: Option<Vec<usize>>,
    weights: Option<Vec<Vec<Scalar>>>,
}

pub(crate) fn sign(p: u8, q: u8) -> Scalar {
    if p & q & 1 == 1 {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

impl LieSuperalgebra {
    pub fn new(labels: Vec<String>, parity: Vec<u8>) -> Result<Self> {
        if labels.len() != parity.len() {
            return Err(Error::Dimension(format!("{} labels but {} parities", labels.len(), parity.len())));
        }
        if let Some(p) = parity.iter().find(|&&p| p > 1) {
            return Err(Error::Invalid(format!("parity {p} is not 0 or 1")));
        }
        Ok(LieSuperalgebra {
            field: Field::Q,
            labels,
            parity,
            structure: BTreeMap::new(),
            gram: None,
            cartan: None,
            weights: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn gram(&self) -> Option<&SparseMatrix> {
        self.gram.as_ref()
    }

    pub fn cartan(&self) -> Option<&[usize]> {
        self.cartan.as_deref()
    }

    pub fn weights(&self) -> Option<&[Vec<Scalar>]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, i: usize) -> Option<&[Scalar]> {
        self.weights.as_ref().map(|w| w[i].as_slice())
    }

    pub fn structure(&self) -> impl Iterator<Item = ((usize, usize), &SparseVector)> {
        self.structure.iter().map(|(&k, v)| (k, v))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::Index { index: i, dim: self.dim() });
        }
        Ok(())
    }

    fn check_vector(&self, v: &SparseVector) -> Result<()> {
        match v.max_index() {
            Some(m) if m >= self.dim() => Err(Error::Index { index: m, dim: self.dim() }),
            _ => Ok(()),
        }
    }

    /// Sets `c_ij` exactly as given; `[b_j, b_i]` is left untouched.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVector) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_vector(&v)?;
        if v.is_zero() {
            self.structure.remove(&(i, j));
        } else {
            self.structure.insert((i, j), v);
        }
        Ok(())
    }

    /// Sets `c_ij` and the anti-supercommuting partner `c_ji`.
    pub fn set_bracket_pair(&mut self, i: usize, j: usize, v: SparseVector) -> Result<()> {
        let s = -sign(self.parity[i], self.parity[j]);
        let w = v.scale(&s);
        self.set_bracket(i, j, v)?;
        if i != j {
            self.set_bracket(j, i, w)?;
        }
        Ok(())
    }

    pub fn set_gram(&mut self, gram: SparseMatrix) -> Result<()> {
        if gram.nrows() != self.dim() || gram.ncols() != self.dim() {
            return Err(Error::Dimension(format!(
                "gram is {}x{} for an algebra of dimension {}",
                gram.nrows(),
                gram.ncols(),
                self.dim()
            )));
        }
        self.gram = Some(gram);
        Ok(())
    }

    pub fn clear_gram(&mut self) {
        self.gram = None;
    }

    /// Declares the Cartan subalgebra and the weight of each basis element
    /// (its values on the Cartan basis elements, in `cartan` order).
    pub fn set_cartan(&mut self, cartan: Vec<usize>, weights: Vec<Vec<Scalar>>) -> Result<()> {
        for &h in &cartan {
            self.check_index(h)?;
        }
        if weights.len() != self.dim() {
            return Err(Error::Dimension(format!("{} weights for dimension {}", weights.len(), self.dim())));
        }
        if let Some(w) = weights.iter().find(|w| w.len() != cartan.len()) {
            return Err(Error::Dimension(format!("weight of length {} for a Cartan of size {}", w.len(), cartan.len())));
        }
        self.cartan = Some(cartan);
        self.weights = Some(weights);
        Ok(())
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Option<&SparseVector> {
        self.structure.get(&(i, j))
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &SparseVector, y: &SparseVector) -> Result<SparseVector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let mut out = SparseVector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(c) = self.structure.get(&(i, j)) {
                    out.axpy(&(a * b), c);
                }
            }
        }
        Ok(out)
    }

    /// `[x, y]` for in-range vectors; panics otherwise.
    pub fn br(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        self.bracket(x, y).expect("bracket arguments in range")
    }

    /// `ad_x` as a matrix acting on coordinate columns.
    pub fn ad(&self, x: &SparseVector) -> SparseMatrix {
        let cols: Vec<SparseVector> = (0..self.dim()).map(|j| self.br(x, &SparseVector::basis(j))).collect();
        SparseMatrix::from_columns(&cols, self.dim())
    }

    pub fn form(&self, x: &SparseVector, y: &SparseVector) -> Option<Scalar> {
        let g = self.gram.as_ref()?;
        Some(g.mul_vec(y).dot(x))
    }

    /// The common parity of the support, if any.
    pub fn homogeneous_parity(&self, v: &SparseVector) -> Option<u8> {
        let mut it = v.indices().map(|i| self.parity[i]);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn format_vector(&self, v: &SparseVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("({c})*{}", self.labels[i]) })
            .collect();
        parts.join(" + ")
    }

    fn all_scalars(&self) -> impl Iterator<Item = &Scalar> {
        let s = self.structure.values().flat_map(|v| v.iter().map(|(_, c)| c));
        let g = self.gram.iter().flat_map(|g| g.entries().map(|(_, _, c)| c));
        let w = self.weights.iter().flat_map(|w| w.iter().flatten());
        s.chain(g).chain(w)
    }

    /// Restriction to the even basis elements.
    pub fn even_part(&self) -> LieSuperalgebra {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.parity[i] == 0).collect();
        let mut new_index = vec![usize::MAX; self.dim()];
        for (n, &o) in keep.iter().enumerate() {
            new_index[o] = n;
        }
        let mut out = LieSuperalgebra {
            field: self.field,
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            parity: vec![0; keep.len()],
            structure: BTreeMap::new(),
            gram: None,
            cartan: None,
            weights: None,
        };
        for (&(i, j), v) in &self.structure {
            if self.parity[i] == 0 && self.parity[j] == 0 {
                let w = v.filter(|k| self.parity[k] == 0).reindex(|k| new_index[k]);
                if !w.is_zero() {
                    out.structure.insert((new_index[i], new_index[j]), w);
                }
            }
        }
        if let Some(g) = &self.gram {
            out.gram = Some(g.submatrix(&keep, &keep));
        }
        if let (Some(c), Some(w)) = (&self.cartan, &self.weights) {
            if c.iter().all(|&h| self.parity[h] == 0) {
                out.cartan = Some(c.iter().map(|&h| new_index[h]).collect());
                out.weights = Some(keep.iter().map(|&i| w[i].clone()).collect());
            }
        }
        out
    }
}

/// Grading, anti-supercommutativity and the super Jacobi identity on all basis triples.
pub fn verify_superalgebra(l: &LieSuperalgebra) -> Report {
    let mut r = Report::new();
    let n = l.dim();

    let bad = l.all_scalars().find(|c| !l.field.contains(c));
    r.record("superalgebra.field", format!("coefficients in {}", l.field), bad.map(|c| c.to_string()));

    let mut w = None;
    'grading: for (&(i, j), v) in &l.structure {
        for k in v.indices() {
            if l.parity[k] != (l.parity[i] + l.parity[j]) % 2 {
                w = Some(format!("[{}, {}] has a component on {}", l.labels[i], l.labels[j], l.labels[k]));
                break 'grading;
            }
        }
    }
    r.record("superalgebra.grading", "brackets respect parity", w);

    let mut w = None;
    'anti: for i in 0..n {
        for j in i..n {
            let a = l.bracket_basis(i, j).cloned().unwrap_or_default();
            let b = l.bracket_basis(j, i).cloned().unwrap_or_default();
            let res = a.add(&b.scale(&sign(l.parity[i], l.parity[j])));
            if !res.is_zero() {
                w = Some(format!("({}, {}) residual {}", l.labels[i], l.labels[j], l.format_vector(&res)));
                break 'anti;
            }
        }
    }
    r.record("superalgebra.antisymmetry", "[x,y] = -(-1)^{|x||y|}[y,x]", w);

    let basis: Vec<SparseVector> = (0..n).map(SparseVector::basis).collect();
    let mut w = None;
    'jac: for i in 0..n {
        for j in 0..n {
            let bij = l.br(&basis[i], &basis[j]);
            for k in 0..n {
                let lhs = l.br(&basis[i], &l.br(&basis[j], &basis[k]));
                let t1 = l.br(&bij, &basis[k]);
                let t2 = l.br(&basis[j], &l.br(&basis[i], &basis[k])).scale(&sign(l.parity[i], l.parity[j]));
                let res = lhs.sub(&t1).sub(&t2);
                if !res.is_zero() {
                    w = Some(format!(
                        "({}, {}, {}) residual {}",
                        l.labels[i],
                        l.labels[j],
                        l.labels[k],
                        l.format_vector(&res)
                    ));
                    break 'jac;
                }
            }
        }
    }
    r.record("superalgebra.jacobi", format!("super Jacobi on {} basis triples", n * n * n), w);
    r
}
