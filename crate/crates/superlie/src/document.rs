//! JSON documents for algebras and osp(1,2)-modules, and the built-in
//! fixtures. Scalars are exact strings such as `"-3/2"` or `"1/2+1*i"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundations::{Field, Scalar, SparseMatrix, SparseVector};
use crate::liesuper::LieSuperalgebra;
use crate::matrixsuper::{sl_superalgebra, SuperIndexSet};
use crate::osp12::{direct_sum, irreducible_module, osp12_standard, scramble, Osp12Module};

pub const FORMAT_VERSION: u32 = 1;

/// Seed and highest weights behind `builtin:scrambled`.
pub const SCRAMBLED_SEED: u64 = 2024;
pub const SCRAMBLED_LAMBDAS: [i64; 4] = [4, 2, 2, 0];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub version: u32,
    #[serde(default = "default_field")]
    pub field: Field,
    pub labels: Vec<String>,
    pub parities: Vec<u8>,
    /// `(i, j, k, c)`: the coefficient of `b_k` in `[b_i, b_j]`. Both orders
    /// of a pair are listed; nothing is filled in by symmetry.
    pub structure: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<(usize, usize, Scalar)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<usize>>,
    /// One row per basis element, values on the Cartan in `cartan` order.
    /// Inferred from the brackets when `cartan` is given without it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<Scalar>>>,
}

fn default_field() -> Field {
    Field::Q
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub version: u32,
    pub parities: Vec<u8>,
    /// Actions of the odd generators and of `h`, as `(row, col, c)` entries.
    pub e: Vec<(usize, usize, Scalar)>,
    pub f: Vec<(usize, usize, Scalar)>,
    pub h: Vec<(usize, usize, Scalar)>,
}

/// A file holds one of the two, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Algebra(AlgebraDocument),
    Module(ModuleDocument),
}

fn entries(m: &SparseMatrix) -> Vec<(usize, usize, Scalar)> {
    m.entries().map(|(r, c, x)| (r, c, x.clone())).collect()
}

fn matrix(n: usize, es: &[(usize, usize, Scalar)], what: &str) -> Result<SparseMatrix> {
    let mut m = SparseMatrix::zeros(n, n);
    for (r, c, x) in es {
        if *r >= n || *c >= n {
            return Err(Error::Parse(format!("{what} entry ({r}, {c}) outside dimension {n}")));
        }
        m.add_at(*r, *c, x);
    }
    Ok(m)
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format version {v}")));
    }
    Ok(())
}

impl AlgebraDocument {
    pub fn from_algebra(l: &LieSuperalgebra) -> Self {
        let structure = l.structure().flat_map(|((i, j), v)| v.iter().map(move |(k, c)| (i, j, k, c.clone()))).collect();
        AlgebraDocument {
            version: FORMAT_VERSION,
            field: l.field,
            labels: l.labels().to_vec(),
            parities: l.parities().to_vec(),
            structure,
            gram: l.gram().map(entries),
            cartan: l.cartan().map(<[usize]>::to_vec),
            weights: l.weights().map(<[Vec<Scalar>]>::to_vec),
        }
    }

    pub fn to_algebra(&self) -> Result<LieSuperalgebra> {
        check_version(self.version)?;
        let mut l = LieSuperalgebra::new(self.labels.clone(), self.parities.clone())?;
        l.field = self.field;
        let n = l.dim();
        let mut by_pair: BTreeMap<(usize, usize), SparseVector> = BTreeMap::new();
        for (i, j, k, c) in &self.structure {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("structure constant ({i}, {j}, {k}) outside dimension {n}")));
            }
            by_pair.entry((*i, *j)).or_default().add_at(*k, c);
        }
        for ((i, j), v) in by_pair {
            l.set_bracket(i, j, v)?;
        }
        if let Some(g) = &self.gram {
            l.set_gram(matrix(n, g, "gram")?)?;
        }
        match (&self.cartan, &self.weights) {
            (Some(c), Some(w)) => l.set_cartan(c.clone(), w.clone())?,
            (Some(c), None) => l.infer_weights(c.clone())?,
            (None, Some(_)) => return Err(Error::Parse("weights given without a cartan".into())),
            (None, None) => {}
        }
        Ok(l)
    }
}

impl ModuleDocument {
    pub fn from_module(m: &Osp12Module) -> Self {
        ModuleDocument {
            version: FORMAT_VERSION,
            parities: m.parity().to_vec(),
            e: entries(m.act_e()),
            f: entries(m.act_f()),
            h: entries(m.act_h()),
        }
    }

    pub fn to_module(&self) -> Result<Osp12Module> {
        check_version(self.version)?;
        let n = self.parities.len();
        Osp12Module::new(self.parities.clone(), matrix(n, &self.e, "e")?, matrix(n, &self.f, "f")?, matrix(n, &self.h, "h")?)
    }
}

impl Document {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// `V4plusV2plusV0` style names.
fn parse_sum(name: &str) -> Option<Vec<i64>> {
    name.split("plus").map(|p| p.strip_prefix('V')?.parse().ok().filter(|l: &i64| *l >= 0)).collect()
}

fn module_of(lams: &[i64]) -> Result<Osp12Module> {
    let mods: Vec<Osp12Module> = lams.iter().map(|&l| irreducible_module(l, 0)).collect::<Result<_>>()?;
    Ok(direct_sum(&mods))
}

pub const BUILTIN_NAMES: &str = "osp12, sl12, V<n>, V<n>plusV<m>..., scrambled";

/// Built-in fixtures: `osp12`, `sl12` (sl(1,2) over Q(i)), `V<n>`, sums such
/// as `V2plusV0`, and `scrambled` (a seeded change of basis of a sum).
pub fn builtin(name: &str) -> Result<Document> {
    match name {
        "osp12" => Ok(Document::Algebra(AlgebraDocument::from_algebra(&osp12_standard()))),
        "sl12" => {
            let idx = SuperIndexSet::new(0, 1, true, false)?;
            Ok(Document::Algebra(AlgebraDocument::from_algebra(&sl_superalgebra(&idx)?.algebra)))
        }
        "scrambled" => {
            let (m, _) = scramble(&module_of(&SCRAMBLED_LAMBDAS)?, SCRAMBLED_SEED);
            Ok(Document::Module(ModuleDocument::from_module(&m)))
        }
        _ => match parse_sum(name) {
            Some(lams) => Ok(Document::Module(ModuleDocument::from_module(&module_of(&lams)?))),
            None => Err(Error::Parse(format!("unknown builtin {name:?}; known: {BUILTIN_NAMES}"))),
        },
    }
}
