use super::algebra::{sign, LieSuperalgebra};
use crate::error::{Error, Result};
use crate::foundations::{rank, SparseVector};
use crate::report::Report;

/// Supersymmetry, evenness, invariance and nondegeneracy of the Gram form,
/// nondegeneracy on the Cartan, and orthogonality of weight spaces.
pub fn verify_form(l: &LieSuperalgebra) -> Result<Report> {
    let g = l.gram().ok_or_else(|| Error::Precondition("algebra has no bilinear form".into()))?;
    let n = l.dim();
    let mut r = Report::new();
    let lab = |i: usize| l.label(i).to_string();

    let mut w = None;
    for (i, j, c) in g.entries() {
        let t = g.get(j, i) * sign(l.parity(i), l.parity(j));
        if &t != c {
            w = Some(format!("({}, {}) = {c} but ({}, {}) = {}", lab(i), lab(j), lab(j), lab(i), g.get(j, i)));
            break;
        }
    }
    r.record("form.supersymmetry", "(x,y) = (-1)^{|x||y|}(y,x)", w);

    let w = g
        .entries()
        .find(|&(i, j, _)| l.parity(i) != l.parity(j))
        .map(|(i, j, c)| format!("({}, {}) = {c}", lab(i), lab(j)));
    r.record("form.even", "even and odd parts are orthogonal", w);

    let basis: Vec<SparseVector> = (0..n).map(SparseVector::basis).collect();
    let mut w = None;
    'inv: for i in 0..n {
        for j in 0..n {
            let bij = l.br(&basis[i], &basis[j]);
            for k in 0..n {
                let lhs = l.form(&bij, &basis[k]).unwrap();
                let rhs = l.form(&basis[i], &l.br(&basis[j], &basis[k])).unwrap();
                if lhs != rhs {
                    w = Some(format!(
                        "([{}, {}], {}) = {lhs} but ({}, [{}, {}]) = {rhs}",
                        lab(i),
                        lab(j),
                        lab(k),
                        lab(i),
                        lab(j),
                        lab(k)
                    ));
                    break 'inv;
                }
            }
        }
    }
    r.record("form.invariance", "([x,y],z) = (x,[y,z]) on all basis triples", w);

    let rk = rank(&g.rows_vec(), n);
    r.record(
        "form.nondegenerate",
        format!("rank {rk} of {n}"),
        (rk < n).then(|| format!("gram rank {rk} < {n}")),
    );

    match l.cartan() {
        Some(h) => {
            let gh = g.submatrix(h, h);
            let rk = rank(&gh.rows_vec(), h.len());
            r.record(
                "form.cartan_nondegenerate",
                format!("rank {rk} of {}", h.len()),
                (rk < h.len()).then(|| format!("Cartan gram rank {rk} < {}", h.len())),
            );
        }
        None => r.skip("form.cartan_nondegenerate", "no Cartan subalgebra declared"),
    }

    match l.weights() {
        Some(wts) => {
            let w = g.entries().find_map(|(i, j, c)| {
                let sum_zero = wts[i].iter().zip(&wts[j]).all(|(a, b)| (a + b).is_zero());
                (!sum_zero).then(|| format!("({}, {}) = {c} with weights not opposite", lab(i), lab(j)))
            });
            r.record("form.weight_orthogonality", "weight spaces pair only with opposite weights", w);
        }
        None => r.skip("form.weight_orthogonality", "no weights declared"),
    }
    Ok(r)
}
