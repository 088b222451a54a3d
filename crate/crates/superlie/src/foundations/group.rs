use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// Element of Z^n in the fixed standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement { coords }
    }

    pub fn zero(rank: usize) -> Self {
        GroupElement { coords: vec![0; rank] }
    }

    pub fn unit(rank: usize, k: usize) -> Self {
        let mut g = Self::zero(rank);
        g.coords[k] = 1;
        g
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        GroupElement { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn max_abs(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// All elements of the box `[-radius, radius]^rank`, lexicographic.
    pub fn box_window(rank: usize, radius: i64) -> Vec<GroupElement> {
        let mut out = vec![GroupElement::zero(0)];
        for _ in 0..rank {
            let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
            for g in &out {
                for c in -radius..=radius {
                    let mut coords = g.coords.clone();
                    coords.push(c);
                    next.push(GroupElement { coords });
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, o: &GroupElement) -> GroupElement {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        GroupElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, o: &GroupElement) -> GroupElement {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        GroupElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.scale(-1)
    }
}

/// Symmetric Scalar-valued form on Z^n given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricGroupForm {
    gram: Vec<Vec<Scalar>>,
}

impl SymmetricGroupForm {
    pub fn new(gram: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("gram row {i} has length {}", row.len())));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid(format!("gram not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymmetricGroupForm { gram })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Scalar::zero() }).collect())
            .collect();
        SymmetricGroupForm { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.rank() != self.rank() {
            return Err(Error::Dimension(format!(
                "element of rank {} against form of rank {}",
                a.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `coords(a) * gram`, the row vector pairing `a` against the basis.
    pub fn row(&self, a: &GroupElement) -> Result<Vec<Scalar>> {
        self.check(a)?;
        let n = self.rank();
        let mut out = vec![Scalar::zero(); n];
        for (i, &c) in a.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = Scalar::int(c);
            for j in 0..n {
                if !self.gram[i][j].is_zero() {
                    out[j] += &(&c * &self.gram[i][j]);
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
        self.check(b)?;
        let row = self.row(a)?;
        Ok(row
            .iter()
            .zip(&b.coords)
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| r * &Scalar::int(c))
            .sum())
    }

    pub fn is_radical(&self, a: &GroupElement) -> Result<bool> {
        Ok(self.row(a)?.iter().all(Scalar::is_zero))
    }
}

pub fn form_eval(f: &SymmetricGroupForm, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
    f.eval(a, b)
}

pub fn radical_member(f: &SymmetricGroupForm, a: &GroupElement) -> Result<bool> {
    f.is_radical(a)
}

/// A Z-basis (in Hermite normal form) of the subgroup of Q^n spanned by `vectors`.
pub fn integer_span_basis(vectors: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let Some(n) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut den = BigInt::one();
    for v in vectors {
        for x in v {
            den = den.lcm(x.denom());
        }
    }
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..n {
        loop {
            // repeated Euclid on column `col` among the remaining rows
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            nz.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)));
            let p = nz[0];
            if nz.len() == 1 {
                let mut row = rows.swap_remove(p);
                if row[col].is_negative() {
                    row.iter_mut().for_each(|x| *x = -x.clone());
                }
                basis.push(row);
                break;
            }
            let pivot = rows[p].clone();
            for &r in &nz[1..] {
                let q = rows[r][col].div_floor(&pivot[col]);
                for k in col..n {
                    let t = &q * &pivot[k];
                    rows[r][k] -= t;
                }
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // reduce entries above pivots into [0, pivot)
    for i in 0..basis.len() {
        let pc = basis[i].iter().position(|x| !x.is_zero()).unwrap();
        for j in 0..i {
            let q = basis[j][pc].div_floor(&basis[i][pc]);
            if !q.is_zero() {
                let bi = basis[i].clone();
                for k in 0..n {
                    let t = &q * &bi[k];
                    basis[j][k] -= t;
                }
            }
        }
    }
    let den = BigRational::from_integer(den);
    basis.into_iter().map(|r| r.into_iter().map(|x| BigRational::from_integer(x) / &den).collect()).collect()
}

/// Integer coordinates of `v` in an echelon Z-basis produced by [`integer_span_basis`].
pub fn integer_coords(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<i64>> {
    let mut rest = v.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let pc = b.iter().position(|x| !x.is_zero())?;
        let q = &rest[pc] / &b[pc];
        if !q.is_integer() {
            return None;
        }
        for k in 0..rest.len() {
            rest[k] = &rest[k] - &q * &b[k];
        }
        out.push(i64::try_from(q.to_integer()).ok()?);
    }
    rest.iter().all(Zero::is_zero).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn form_examples() {
        let f = SymmetricGroupForm::from_ints(&[&[2]]).unwrap();
        let a = GroupElement::new(vec![1]);
        assert_eq!(form_eval(&f, &a, &a).unwrap(), Scalar::int(2));
        assert!(form_eval(&f, &GroupElement::zero(1), &a).unwrap().is_zero());
        let g = SymmetricGroupForm::from_ints(&[&[1, 0], &[0, -1]]).unwrap();
        let b = GroupElement::new(vec![1, 1]);
        assert!(form_eval(&g, &b, &b).unwrap().is_zero());
        assert!(form_eval(&g, &b, &a).is_err());
    }

    #[test]
    fn radical_examples() {
        let z = SymmetricGroupForm::from_ints(&[&[0]]).unwrap();
        assert!(radical_member(&z, &GroupElement::new(vec![5])).unwrap());
        let t = SymmetricGroupForm::from_ints(&[&[2]]).unwrap();
        assert!(!radical_member(&t, &GroupElement::new(vec![1])).unwrap());
        let h = SymmetricGroupForm::from_ints(&[&[1, 0], &[0, 0]]).unwrap();
        assert!(radical_member(&h, &GroupElement::new(vec![0, 3])).unwrap());
    }

    #[test]
    fn asymmetric_gram_rejected() {
        assert!(SymmetricGroupForm::from_ints(&[&[1, 2], &[0, 1]]).is_err());
    }

    #[test]
    fn span_basis_of_even_lattice() {
        let vs = vec![vec![r(2, 1), r(0, 1)], vec![r(0, 1), r(4, 1)], vec![r(2, 1), r(2, 1)]];
        let b = integer_span_basis(&vs);
        assert_eq!(b, vec![vec![r(2, 1), r(0, 1)], vec![r(0, 1), r(2, 1)]]);
        assert_eq!(integer_coords(&b, &vs[2]), Some(vec![1, 1]));
        assert_eq!(integer_coords(&b, &[r(1, 1), r(0, 1)]), None);
    }

    #[test]
    fn span_basis_with_fractions() {
        let vs = vec![vec![r(1, 2)], vec![r(1, 3)]];
        assert_eq!(integer_span_basis(&vs), vec![vec![r(1, 6)]]);
    }

    #[test]
    fn box_window_size() {
        assert_eq!(GroupElement::box_window(2, 1).len(), 9);
        assert_eq!(GroupElement::box_window(0, 3), vec![GroupElement::zero(0)]);
    }
}
