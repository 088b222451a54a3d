//! Matrix superalgebras over a torus: `pl_{I+J}(A)`, `sl_A(I,J)`, the
//! diamond transpose, the order-4 automorphism `#`, and the twisted
//! affinization built from its eigenspaces.

mod sl;
mod twisted;

pub use sl::{check_twist_map, sl_superalgebra, EpsDelta, SlPresentation, TwistMap};
pub use twisted::{
    pi_family_union, pi_projection, twisted_affinize, twisted_roots, twisted_type, verify_twisted, TwistedAlgebra,
    TwistedElement, TwistedRoot,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::affinize::CocycleTorus;
use crate::error::{Error, Result};
use crate::foundations::{GroupElement, Scalar};
use crate::liesuper::sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Index {
    Zero,
    I(usize),
    IBar(usize),
    ZeroPrime,
    J(usize),
    JBar(usize),
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Zero => write!(f, "0"),
            Index::I(k) => write!(f, "{k}"),
            Index::IBar(k) => write!(f, "{k}bar"),
            Index::ZeroPrime => write!(f, "0'"),
            Index::J(k) => write!(f, "{k}'"),
            Index::JBar(k) => write!(f, "{k}bar'"),
        }
    }
}

/// `I = [0] + I. + bar(I.)` (even) followed by `J = [0'] + J. + bar(J.)`
/// (odd), with positions `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperIndexSet {
    pub i_dot: usize,
    pub j_dot: usize,
    pub zero: bool,
    pub zero_prime: bool,
    indices: Vec<Index>,
}

impl SuperIndexSet {
    pub fn new(i_dot: usize, j_dot: usize, zero: bool, zero_prime: bool) -> Result<Self> {
        let mut indices = Vec::new();
        if zero {
            indices.push(Index::Zero);
        }
        indices.extend((1..=i_dot).map(Index::I));
        indices.extend((1..=i_dot).map(Index::IBar));
        if zero_prime {
            indices.push(Index::ZeroPrime);
        }
        indices.extend((1..=j_dot).map(Index::J));
        indices.extend((1..=j_dot).map(Index::JBar));
        if indices.is_empty() {
            return Err(Error::Precondition("empty index set".into()));
        }
        Ok(SuperIndexSet { i_dot, j_dot, zero, zero_prime, indices })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn index(&self, k: usize) -> Index {
        self.indices[k]
    }

    pub fn position(&self, x: Index) -> Option<usize> {
        self.indices.iter().position(|&y| y == x)
    }

    pub fn label(&self, k: usize) -> String {
        self.indices[k].to_string()
    }

    pub fn parity(&self, k: usize) -> u8 {
        match self.indices[k] {
            Index::Zero | Index::I(_) | Index::IBar(_) => 0,
            _ => 1,
        }
    }

    pub fn parities(&self) -> Vec<u8> {
        (0..self.len()).map(|k| self.parity(k)).collect()
    }

    pub fn i_size(&self) -> usize {
        2 * self.i_dot + usize::from(self.zero)
    }

    pub fn j_size(&self) -> usize {
        2 * self.j_dot + usize::from(self.zero_prime)
    }

    pub fn i_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.parity(k) == 0).collect()
    }

    pub fn j_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.parity(k) == 1).collect()
    }

    /// `|I| = |J|`: the supertrace form on `sl(I,J)` is degenerate.
    pub fn is_balanced(&self) -> bool {
        self.i_size() == self.j_size()
    }

    pub fn bar(&self, k: usize) -> usize {
        let b = match self.indices[k] {
            Index::I(m) => Index::IBar(m),
            Index::IBar(m) => Index::I(m),
            Index::J(m) => Index::JBar(m),
            Index::JBar(m) => Index::J(m),
            z => z,
        };
        self.position(b).expect("bar stays in the set")
    }
}

/// The involution `t^tau -> s_tau t^tau` of the torus with `s` the sign
/// character flipping the listed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Star {
    pub flips: Vec<bool>,
}

impl Star {
    pub fn identity(rank: usize) -> Self {
        Star { flips: vec![false; rank] }
    }

    pub fn sign(&self, tau: &GroupElement) -> Scalar {
        let odd = self.flips.iter().zip(&tau.coords).filter(|(f, c)| **f && *c % 2 != 0).count();
        if odd % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::int(-1)
        }
    }

    pub fn compose(&self, o: &Star) -> Star {
        let n = self.flips.len().max(o.flips.len());
        Star {
            flips: (0..n)
                .map(|k| self.flips.get(k).copied().unwrap_or(false) ^ o.flips.get(k).copied().unwrap_or(false))
                .collect(),
        }
    }
}

/// A finite combination of torus monomials `t^tau`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TorusElement {
    pub terms: BTreeMap<GroupElement, Scalar>,
}

impl TorusElement {
    pub fn monomial(c: Scalar, tau: GroupElement) -> Self {
        let mut out = Self::default();
        out.add_term(&tau, &c);
        out
    }

    pub fn add_term(&mut self, tau: &GroupElement, c: &Scalar) {
        let e = self.terms.entry(tau.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(tau);
        }
    }

    pub fn add(&self, o: &TorusElement) -> Self {
        let mut out = self.clone();
        for (t, c) in &o.terms {
            out.add_term(t, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::default();
        for (t, x) in &self.terms {
            out.add_term(t, &(x * c));
        }
        out
    }

    pub fn mul(&self, o: &TorusElement, torus: &CocycleTorus) -> Result<Self> {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(&(a + b), &(torus.theta(a, b)? * x * y));
            }
        }
        Ok(out)
    }

    pub fn star(&self, s: &Star) -> Self {
        let mut out = Self::default();
        for (t, x) in &self.terms {
            out.add_term(t, &(s.sign(t) * x));
        }
        out
    }

    /// The coefficient of `t^0`.
    pub fn epsilon(&self) -> Scalar {
        self.terms.iter().find(|(t, _)| t.is_zero()).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A finitely supported matrix with torus entries, rows and columns taken
/// from a [`SuperIndexSet`] (by position).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: BTreeMap<(usize, usize), TorusElement>,
}

impl TorusMatrix {
    pub fn zeros(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        TorusMatrix { rows, cols, entries: BTreeMap::new() }
    }

    /// Square over all of `I + J`.
    pub fn square(idx: &SuperIndexSet) -> Self {
        let all: Vec<usize> = (0..idx.len()).collect();
        Self::zeros(all.clone(), all)
    }

    /// `E_rc(a)` in the full square matrix.
    pub fn unit(idx: &SuperIndexSet, r: usize, c: usize, a: TorusElement) -> Self {
        let mut m = Self::square(idx);
        m.add_entry(r, c, &a);
        m
    }

    pub fn get(&self, r: usize, c: usize) -> TorusElement {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, a: &TorusElement) {
        let e = self.entries.entry((r, c)).or_default();
        *e = e.add(a);
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn add(&self, o: &TorusMatrix) -> Self {
        let mut out = self.clone();
        for (&(r, c), a) in &o.entries {
            out.add_entry(r, c, a);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zeros(self.rows.clone(), self.cols.clone());
        for (&(r, k), a) in &self.entries {
            out.add_entry(r, k, &a.scale(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, o: &TorusMatrix, torus: &CocycleTorus) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension("inner index sets differ".into()));
        }
        let mut out = Self::zeros(self.rows.clone(), o.cols.clone());
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in o.entries.range((k, 0)..=(k, usize::MAX)) {
                debug_assert_eq!(k, k2);
                out.add_entry(r, c, &a.mul(b, torus)?);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<TorusElement> {
        if self.rows != self.cols {
            return Err(Error::Dimension("trace of a non-square matrix".into()));
        }
        Ok(self.entries.iter().filter(|((r, c), _)| r == c).fold(TorusElement::default(), |acc, (_, a)| acc.add(a)))
    }

    /// `str(X) = sum (-1)^{|k|} x_kk`.
    pub fn supertrace(&self, idx: &SuperIndexSet) -> Result<TorusElement> {
        if self.rows != self.cols {
            return Err(Error::Dimension("supertrace of a non-square matrix".into()));
        }
        let mut out = TorusElement::default();
        for (&(r, c), a) in &self.entries {
            if r == c {
                out = out.add(&if idx.parity(r) == 1 { a.scale(&Scalar::int(-1)) } else { a.clone() });
            }
        }
        Ok(out)
    }

    /// `(X^dia)_{ji} = x_{bar i, bar j}^*`.
    pub fn diamond(&self, idx: &SuperIndexSet, star: &Star) -> Self {
        let mut out = Self::zeros(self.cols.clone(), self.rows.clone());
        for (&(r, c), a) in &self.entries {
            out.add_entry(idx.bar(c), idx.bar(r), &a.star(star));
        }
        out
    }

    /// The block of rows `rs` and columns `cs`.
    pub fn block(&self, rs: &[usize], cs: &[usize]) -> Self {
        let mut out = Self::zeros(rs.to_vec(), cs.to_vec());
        for (&(r, c), a) in &self.entries {
            if rs.contains(&r) && cs.contains(&c) {
                out.add_entry(r, c, a);
            }
        }
        out
    }

    /// `(X Y; Z W)^# = (-X^dia, Z^dia; -Y^dia, -W^dia)` on a square matrix over `I + J`.
    pub fn sharp(&self, idx: &SuperIndexSet, star: &Star) -> Self {
        let mut out = Self::square(idx);
        for (&(r, c), a) in &self.entries {
            let s = if idx.parity(r) == 1 && idx.parity(c) == 0 { Scalar::one() } else { Scalar::int(-1) };
            out.add_entry(idx.bar(c), idx.bar(r), &a.star(star).scale(&s));
        }
        out
    }

    /// Splits into the even and odd parts.
    pub fn parts(&self, idx: &SuperIndexSet) -> [TorusMatrix; 2] {
        let mut out = [Self::zeros(self.rows.clone(), self.cols.clone()), Self::zeros(self.rows.clone(), self.cols.clone())];
        for (&(r, c), a) in &self.entries {
            out[((idx.parity(r) + idx.parity(c)) % 2) as usize].add_entry(r, c, a);
        }
        out
    }

    /// `[A, B]`, extended bilinearly from homogeneous parts.
    pub fn supercommutator(&self, o: &TorusMatrix, idx: &SuperIndexSet, torus: &CocycleTorus) -> Result<Self> {
        let (a, b) = (self.parts(idx), o.parts(idx));
        let mut out = Self::zeros(self.rows.clone(), o.cols.clone());
        for p in 0..2u8 {
            for q in 0..2u8 {
                let ab = a[p as usize].mul(&b[q as usize], torus)?;
                let ba = b[q as usize].mul(&a[p as usize], torus)?;
                out = out.add(&ab).add(&ba.scale(&-sign(p, q)));
            }
        }
        Ok(out)
    }

    /// `eps(str(XY))`.
    pub fn form(&self, o: &TorusMatrix, idx: &SuperIndexSet, torus: &CocycleTorus) -> Result<Scalar> {
        Ok(self.mul(o, torus)?.supertrace(idx)?.epsilon())
    }
}
