use serde::Serialize;

use super::{Star, SuperIndexSet, TorusElement, TorusMatrix};
use crate::affinize::{AffinizedAlgebra, GradedLoopElement};
use crate::error::{Error, Result};
use crate::foundations::{CoordinateSystem, Field, GroupElement, Scalar, SparseMatrix, SparseVector};
use crate::liesuper::{from_matrices, LieSuperalgebra, Weight};
use crate::report::Report;

/// A combination `sum c_k eps_k` (`k` in `I`) or `delta_k` (`k` in `J`),
/// indexed by position in the index set.
pub type EpsDelta = SparseVector;

/// `sl_F(I,J)` on the basis `e_rc` (`r != c`) followed by the Cartan
/// elements `e_00 - (-1)^{|0|+|m|} e_mm`, over `Q(i)`.
#[derive(Clone, Debug)]
pub struct SlPresentation {
    pub idx: SuperIndexSet,
    pub algebra: LieSuperalgebra,
    pub matrices: Vec<SparseMatrix>,
    pub cartan: Vec<usize>,
    coords: CoordinateSystem,
}

fn flatten(m: &SparseMatrix) -> SparseVector {
    let n = m.ncols();
    SparseVector::from_pairs(m.entries().map(|(r, c, x)| (r * n + c, x.clone())))
}

pub fn sl_superalgebra(idx: &SuperIndexSet) -> Result<SlPresentation> {
    SlPresentation::new(idx.clone())
}

impl SlPresentation {
    pub fn new(idx: SuperIndexSet) -> Result<Self> {
        if idx.is_balanced() {
            return Err(Error::Precondition(format!(
                "|I| = |J| = {}: the supertrace form on sl(I,J) is degenerate",
                idx.i_size()
            )));
        }
        let n = idx.len();
        let par = idx.parities();
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    labels.push(format!("e({},{})", idx.label(r), idx.label(c)));
                    let mut m = SparseMatrix::zeros(n, n);
                    m.set(r, c, Scalar::one());
                    mats.push(m);
                }
            }
        }
        let mut cartan = Vec::new();
        for m in 1..n {
            cartan.push(mats.len());
            labels.push(format!("h({},{})", idx.label(0), idx.label(m)));
            let s = if (par[0] + par[m]) % 2 == 0 { -1 } else { 1 };
            let mut h = SparseMatrix::zeros(n, n);
            h.set(0, 0, Scalar::one());
            h.set(m, m, Scalar::int(s));
            mats.push(h);
        }
        let mut algebra = from_matrices(labels, &mats, &par, Field::Qi)?;
        algebra.infer_weights(cartan.clone())?;
        let flat: Vec<SparseVector> = mats.iter().map(flatten).collect();
        let coords = CoordinateSystem::new(&flat, n * n).ok_or_else(|| Error::Invalid("sl basis is dependent".into()))?;
        Ok(SlPresentation { idx, algebra, matrices: mats, cartan, coords })
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn to_matrix(&self, x: &SparseVector) -> SparseMatrix {
        let n = self.idx.len();
        let mut out = SparseMatrix::zeros(n, n);
        for (b, c) in x.iter() {
            for (r, k, v) in self.matrices[b].entries() {
                out.add_at(r, k, &(c * v));
            }
        }
        out
    }

    pub fn from_matrix(&self, m: &SparseMatrix) -> Option<SparseVector> {
        self.coords.coords(&flatten(m))
    }

    /// The loop part of `x` as a matrix with torus entries.
    pub fn to_torus_matrix(&self, x: &GradedLoopElement) -> TorusMatrix {
        let mut out = TorusMatrix::square(&self.idx);
        for (tau, v) in &x.loop_part {
            for (r, c, a) in self.to_matrix(v).entries() {
                out.add_entry(r, c, &TorusElement::monomial(a.clone(), tau.clone()));
            }
        }
        out
    }

    /// Inverse of [`Self::to_torus_matrix`] on supertraceless matrices.
    pub fn from_torus_matrix(&self, m: &TorusMatrix) -> Option<GradedLoopElement> {
        let n = self.idx.len();
        let mut by_deg: std::collections::BTreeMap<GroupElement, SparseMatrix> = Default::default();
        for (&(r, c), a) in &m.entries {
            for (tau, x) in &a.terms {
                by_deg.entry(tau.clone()).or_insert_with(|| SparseMatrix::zeros(n, n)).add_at(r, c, x);
            }
        }
        let mut out = GradedLoopElement::zero();
        for (tau, mat) in by_deg {
            out.add_loop(&tau, &Scalar::one(), &self.from_matrix(&mat)?);
        }
        Some(out)
    }

    /// `#` on a constant matrix (identity star).
    pub fn sharp_matrix(&self, m: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(m.nrows(), m.ncols());
        for (r, c, x) in m.entries() {
            let s = if self.idx.parity(r) == 1 && self.idx.parity(c) == 0 { x.clone() } else { -x };
            out.add_at(self.idx.bar(c), self.idx.bar(r), &s);
        }
        out
    }

    /// Column `b` is the image of basis element `b` under `#` in degree 0.
    pub fn sharp_columns(&self) -> SparseMatrix {
        let d = self.dim();
        let cols: Vec<SparseVector> = self
            .matrices
            .iter()
            .map(|m| self.from_matrix(&self.sharp_matrix(m)).expect("# preserves supertraceless matrices"))
            .collect();
        SparseMatrix::from_columns(&cols, d)
    }

    pub fn epsilon(&self, k: usize) -> EpsDelta {
        SparseVector::basis(k)
    }

    /// The functional as values on the Cartan basis.
    pub fn weight(&self, e: &EpsDelta) -> Weight {
        self.cartan.iter().map(|&h| e.iter().fold(Scalar::zero(), |acc, (k, c)| acc + c * &self.matrices[h].get(k, k))).collect()
    }

    /// `(eps_i, eps_j) = delta_ij`, `(delta_i, delta_j) = -delta_ij`, `(eps, delta) = 0`,
    /// the supertrace pairing of the diagonal matrix units.
    pub fn gl_pair(&self, a: &EpsDelta, b: &EpsDelta) -> Scalar {
        a.iter().fold(Scalar::zero(), |acc, (k, x)| {
            let y = &b.get(k) * x;
            if self.idx.parity(k) == 1 {
                acc - y
            } else {
                acc + y
            }
        })
    }
}

/// A degree-preserving linear map of the loop algebra: `x (x) t^tau -> s_tau (S x) (x) t^tau`
/// on the loop part, identity on `V + V^dag`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistMap {
    #[serde(skip)]
    pub s0: SparseMatrix,
    pub star: Star,
}

impl TwistMap {
    pub fn sharp(sl: &SlPresentation, star: Star) -> Self {
        TwistMap { s0: sl.sharp_columns(), star }
    }

    /// `self` after `o`.
    pub fn compose(&self, o: &TwistMap) -> Self {
        TwistMap { s0: self.s0.mul(&o.s0), star: self.star.compose(&o.star) }
    }

    pub fn power(&self, k: usize) -> Self {
        let n = self.s0.nrows();
        let mut out = TwistMap { s0: SparseMatrix::identity(n), star: Star::identity(self.star.flips.len()) };
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn apply(&self, x: &GradedLoopElement) -> GradedLoopElement {
        let mut out = GradedLoopElement { v: x.v.clone(), d: x.d.clone(), ..GradedLoopElement::zero() };
        for (tau, v) in &x.loop_part {
            out.add_loop(tau, &self.star.sign(tau), &self.s0.mul_vec(v));
        }
        out
    }
}

fn in_loop_cartan(l: &AffinizedAlgebra, x: &GradedLoopElement) -> bool {
    let cartan = &l.datum().cartan;
    x.loop_part.iter().all(|(tau, v)| tau.is_zero() && v.indices().all(|i| cartan.contains(&i)))
}

/// Order exactly four, bracket and form preservation, parity and Cartan
/// preservation, on the window basis of the loop algebra.
pub fn check_twist_map(l: &AffinizedAlgebra, map: &TwistMap, radius: i64) -> Result<Report> {
    let mut r = Report::new();
    let basis = l.window_basis(radius);
    let imgs: Vec<GradedLoopElement> = basis.iter().map(|x| map.apply(x)).collect();
    let p2 = map.power(2);
    let p4 = map.power(4);
    let w = if let Some(x) = basis.iter().find(|x| p4.apply(x) != **x) {
        Some(format!("#^4 moves {}", x.format(l.base())))
    } else if basis.iter().all(|x| p2.apply(x) == *x) {
        Some("#^2 is the identity on the window".to_string())
    } else {
        None
    };
    r.record("twisted.map_order_four", "#^4 = id and #^2 != id on the window", w);

    let w = basis
        .iter()
        .zip(&imgs)
        .find(|(x, y)| l.parity(x) != l.parity(y))
        .map(|(x, _)| format!("parity of {} changes", x.format(l.base())));
    r.record("twisted.map_even", "# preserves parity", w);

    let w = l
        .cartan_basis()
        .iter()
        .map(|h| map.apply(h))
        .find(|h| !in_loop_cartan(l, h))
        .map(|h| format!("image {} leaves the Cartan", h.format(l.base())));
    r.record("twisted.map_preserves_cartan", "# maps the Cartan to itself", w);

    let mut wb = None;
    let mut wf = None;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if wb.is_none() {
                let lhs = map.apply(&l.bracket(x, y)?);
                let rhs = l.bracket(&imgs[i], &imgs[j])?;
                if lhs != rhs {
                    wb = Some(format!("[{}, {}]", x.format(l.base()), y.format(l.base())));
                }
            }
            if wf.is_none() && l.form(x, y)? != l.form(&imgs[i], &imgs[j])? {
                wf = Some(format!("({}, {})", x.format(l.base()), y.format(l.base())));
            }
        }
    }
    r.record("twisted.map_automorphism", format!("[x,y]^# = [x^#,y^#] on {} window pairs", basis.len().pow(2)), wb);
    r.record("twisted.map_preserves_form", "(x^#, y^#) = (x, y) on window pairs", wf);
    Ok(r)
}
