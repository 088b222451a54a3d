use super::algebra::{sign, LieSuperalgebra};
use crate::error::{Error, Result};
use crate::foundations::{CoordinateSystem, Field, Scalar, SparseMatrix, SparseVector};

/// Parity of a matrix unit `e_rc` over an index set with the given parities.
pub fn entry_parity(index_parity: &[u8], r: usize, c: usize) -> u8 {
    (index_parity[r] + index_parity[c]) % 2
}

/// Homogeneous parity of a matrix, `None` if mixed or zero.
pub fn matrix_parity(m: &SparseMatrix, index_parity: &[u8]) -> Option<u8> {
    let mut it = m.entries().map(|(r, c, _)| entry_parity(index_parity, r, c));
    let first = it.next()?;
    it.all(|p| p == first).then_some(first)
}

/// `[A, B] = AB - (-1)^{|A||B|} BA`.
pub fn supercommutator(a: &SparseMatrix, pa: u8, b: &SparseMatrix, pb: u8) -> SparseMatrix {
    a.mul(b).lin_comb(&-sign(pa, pb), &b.mul(a))
}

/// `str(X) = sum_i (-1)^{|i|} x_ii`.
pub fn supertrace(m: &SparseMatrix, index_parity: &[u8]) -> Scalar {
    (0..m.nrows()).filter(|&i| !m.get(i, i).is_zero()).fold(Scalar::zero(), |acc, i| {
        let x = m.get(i, i);
        if index_parity[i] == 1 {
            acc - x
        } else {
            acc + x
        }
    })
}

pub(crate) fn flatten(m: &SparseMatrix) -> SparseVector {
    let n = m.ncols();
    SparseVector::from_pairs(m.entries().map(|(r, c, x)| (r * n + c, x.clone())))
}

/// The span of homogeneous square matrices as a Lie superalgebra under the
/// supercommutator, with the supertrace form `(x, y) = str(xy)`. The span
/// must be closed under the bracket.
pub fn from_matrices(
    labels: Vec<String>,
    mats: &[SparseMatrix],
    index_parity: &[u8],
    field: Field,
) -> Result<LieSuperalgebra> {
    let n = index_parity.len();
    if let Some(m) = mats.iter().find(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::Dimension(format!("{}x{} matrix over {n} indices", m.nrows(), m.ncols())));
    }
    let parity: Vec<u8> = mats
        .iter()
        .enumerate()
        .map(|(k, m)| matrix_parity(m, index_parity).ok_or_else(|| Error::Invalid(format!("basis matrix {k} is zero or inhomogeneous"))))
        .collect::<Result<_>>()?;
    let flat: Vec<SparseVector> = mats.iter().map(flatten).collect();
    let cs = CoordinateSystem::new(&flat, n * n).ok_or_else(|| Error::Invalid("basis matrices are dependent".into()))?;
    let mut l = LieSuperalgebra::new(labels, parity.clone())?;
    l.field = field;
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            let b = supercommutator(&mats[i], parity[i], &mats[j], parity[j]);
            let x = cs
                .coords(&flatten(&b))
                .ok_or_else(|| Error::Invalid(format!("bracket of basis {i} and {j} leaves the span")))?;
            l.set_bracket(i, j, x)?;
        }
    }
    let mut g = SparseMatrix::zeros(mats.len(), mats.len());
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            g.set(i, j, supertrace(&mats[i].mul(&mats[j]), index_parity));
        }
    }
    l.set_gram(g)?;
    Ok(l)
}

impl LieSuperalgebra {
    /// Reads weights off `[h, b] = wt_b(h) b`; errors if some basis element
    /// is not an eigenvector of some Cartan element.
    pub fn infer_weights(&mut self, cartan: Vec<usize>) -> Result<()> {
        let mut weights = vec![Vec::with_capacity(cartan.len()); self.dim()];
        for &h in &cartan {
            let hv = SparseVector::basis(h);
            for (b, w) in weights.iter_mut().enumerate() {
                let v = self.bracket(&hv, &SparseVector::basis(b))?;
                let c = v.get(b);
                if v != SparseVector::single(b, c.clone()) {
                    return Err(Error::NotWeightBasis(format!(
                        "[{}, {}] = {}",
                        self.label(h),
                        self.label(b),
                        self.format_vector(&v)
                    )));
                }
                w.push(c);
            }
        }
        self.set_cartan(cartan, weights)
    }
}
