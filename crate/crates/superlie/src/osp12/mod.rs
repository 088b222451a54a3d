//! osp(1,2): the standard algebra, super triples, the irreducible modules and
//! the decomposition of finite-dimensional modules into irreducibles.

mod decompose;
mod module;

pub use decompose::{decompose, direct_sum, scramble, Decomposition, Summand};
pub use module::{generated_g0_submodule, h_spectrum, irreducible_module, spectrum_on, spectrum_within, top_chain_length, Osp12Module};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundations::{EchelonBasis, Field, Scalar, SparseMatrix, SparseVector};
use crate::liesuper::{from_matrices, LieSuperalgebra};

pub const E_PLUS: usize = 0;
pub const E_MINUS: usize = 1;
pub const H: usize = 2;
pub const F_PLUS: usize = 3;
pub const F_MINUS: usize = 4;

/// The five 3x3 matrices `E+, E-, H, F+, F-` over indices of parity `(0, 1, 1)`.
pub fn osp12_matrices() -> Vec<SparseMatrix> {
    vec![
        SparseMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 2, 0]]),
        SparseMatrix::from_ints(&[&[0, 0, 0], &[0, 0, -8], &[0, 0, 0]]),
        SparseMatrix::from_ints(&[&[0, 0, 0], &[0, -2, 0], &[0, 0, 2]]),
        SparseMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[1, 0, 0]]),
        SparseMatrix::from_ints(&[&[0, 0, 2], &[-2, 0, 0], &[0, 0, 0]]),
    ]
}

pub const OSP12_INDEX_PARITY: [u8; 3] = [0, 1, 1];

/// osp(1,2) on the basis `(E+, E-, H, F+, F-)` with the supertrace form and
/// Cartan `span{H}`.
pub fn osp12_standard() -> LieSuperalgebra {
    let labels = ["E+", "E-", "H", "F+", "F-"].iter().map(|s| s.to_string()).collect();
    let mut l = from_matrices(labels, &osp12_matrices(), &OSP12_INDEX_PARITY, Field::Q).expect("osp(1,2) closes");
    l.infer_weights(vec![H]).expect("standard basis is a weight basis");
    l
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    /// `x, y` odd.
    Osp,
    /// `x, y` even.
    Sl2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2SuperTriple {
    pub x: SparseVector,
    pub y: SparseVector,
    pub h: SparseVector,
    pub kind: TripleKind,
}

impl Sl2SuperTriple {
    /// `(1/4 [x,x], -1/4 [y,y], 1/2 h)` for an osp triple.
    pub fn even_triple(&self, l: &LieSuperalgebra) -> Option<(SparseVector, SparseVector, SparseVector)> {
        if self.kind != TripleKind::Osp {
            return None;
        }
        let q = Scalar::frac(1, 4);
        Some((
            l.br(&self.x, &self.x).scale(&q),
            l.br(&self.y, &self.y).scale(&-q),
            self.h.scale(&Scalar::frac(1, 2)),
        ))
    }
}

fn check_relations(l: &LieSuperalgebra, x: &SparseVector, y: &SparseVector, h: &SparseVector) -> Result<()> {
    let two = Scalar::int(2);
    let checks = [
        ("[h,x] = 2x", l.bracket(h, x)?, x.scale(&two)),
        ("[h,y] = -2y", l.bracket(h, y)?, y.scale(&-two.clone())),
        ("[x,y] = h", l.bracket(x, y)?, h.clone()),
    ];
    for (name, got, want) in checks {
        if got != want {
            return Err(Error::Invalid(format!(
                "{name} fails: got {}, expected {}",
                l.format_vector(&got),
                l.format_vector(&want)
            )));
        }
    }
    Ok(())
}

/// Span of the subalgebra generated by `gens`.
pub fn generated_subalgebra(l: &LieSuperalgebra, gens: &[SparseVector]) -> EchelonBasis {
    let mut basis = EchelonBasis::new();
    let mut frontier: Vec<SparseVector> = gens.iter().filter(|g| basis.insert((*g).clone())).cloned().collect();
    while let Some(v) = frontier.pop() {
        for g in gens {
            let b = l.br(g, &v);
            if basis.insert(b.clone()) {
                frontier.push(b);
            }
        }
    }
    basis
}

/// Checks the triple relations, equal homogeneous parity, generation of the
/// whole algebra and, for odd `x, y`, the derived sl2 triple and
/// `[[x,x],x] = 0`.
pub fn verify_triple(l: &LieSuperalgebra, x: &SparseVector, y: &SparseVector, h: &SparseVector) -> Result<Sl2SuperTriple> {
    if x.is_zero() || y.is_zero() || h.is_zero() {
        return Err(Error::Precondition("triple elements must be nonzero".into()));
    }
    let px = l.homogeneous_parity(x).ok_or_else(|| Error::Invalid("x is not homogeneous".into()))?;
    let py = l.homogeneous_parity(y).ok_or_else(|| Error::Invalid("y is not homogeneous".into()))?;
    if px != py {
        return Err(Error::Invalid("x and y have different parities".into()));
    }
    check_relations(l, x, y, h)?;
    let span = generated_subalgebra(l, &[x.clone(), y.clone(), h.clone()]);
    if span.rank() != l.dim() {
        return Err(Error::Invalid(format!("triple generates a subalgebra of dimension {} < {}", span.rank(), l.dim())));
    }
    let kind = if px == 1 { TripleKind::Osp } else { TripleKind::Sl2 };
    let t = Sl2SuperTriple { x: x.clone(), y: y.clone(), h: h.clone(), kind };
    if let Some((e, f, hh)) = t.even_triple(l) {
        check_relations(l, &e, &f, &hh).map_err(|e| Error::Invalid(format!("derived sl2 triple: {e}")))?;
        let xxx = l.br(&l.br(x, x), x);
        if !xxx.is_zero() {
            return Err(Error::Invalid(format!("[[x,x],x] = {}", l.format_vector(&xxx))));
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: usize) -> SparseVector {
        SparseVector::basis(i)
    }

    #[test]
    fn standard_brackets() {
        let l = osp12_standard();
        assert_eq!(l.br(&b(H), &b(F_PLUS)), b(F_PLUS).scale(&Scalar::int(2)));
        assert_eq!(l.br(&b(F_PLUS), &b(F_MINUS)), b(H));
        assert_eq!(l.br(&b(F_PLUS), &b(F_PLUS)), b(E_PLUS));
        assert_eq!(l.br(&b(F_MINUS), &b(F_MINUS)), b(E_MINUS));
        assert_eq!(l.gram().unwrap().get(H, H), Scalar::int(-8));
    }

    #[test]
    fn triples() {
        let l = osp12_standard();
        let t = verify_triple(&l, &b(F_PLUS), &b(F_MINUS), &b(H)).unwrap();
        assert_eq!(t.kind, TripleKind::Osp);
        assert!(verify_triple(&l, &b(F_PLUS), &b(F_PLUS), &b(H)).is_err());
        let even = l.even_part();
        let (e, f, h) = t.even_triple(&l).unwrap();
        // the even part keeps the indices of E+, E-, H
        let s = verify_triple(&even, &e, &f, &h).unwrap();
        assert_eq!(s.kind, TripleKind::Sl2);
    }
}
