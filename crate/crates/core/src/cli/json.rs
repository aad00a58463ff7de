//! JSON documents read and written by the command-line tool.
//!
//! Every scalar is a string (`"2/3"`, `"-1"`, or a residue over `F_p`) and every
//! matrix is a list of rows. A file declares its field once at the top level.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Bimodule, LeftModule};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Vector};
use crate::extensions::ExtensionAlgebra;
use crate::hochschild::Cochain;

pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub unit: Vec<String>,
    /// `mul[i][j]` is the coefficient vector of `e_i e_j`.
    pub mul: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub basis_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub dim: usize,
    pub left: Vec<Rows>,
    pub right: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub dim: usize,
    pub action: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub degree: usize,
    pub matrix: Rows,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub algebra: AlgebraDoc,
    pub ideal_dim: usize,
    pub injection: Rows,
    pub projection: Rows,
    #[serde(default)]
    pub cocycle: Option<CochainDoc>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    field: Field,
    #[serde(default)]
    algebra: Option<AlgebraDoc>,
    #[serde(default)]
    bimodule: Option<BimoduleDoc>,
    #[serde(default)]
    module: Option<ModuleDoc>,
    #[serde(default)]
    cochain: Option<CochainDoc>,
    #[serde(default)]
    cochains: Option<Vec<CochainDoc>>,
    #[serde(default)]
    extension: Option<ExtensionDoc>,
}

/// The merged contents of every input file of one invocation.
#[derive(Clone, Debug, Default)]
pub struct InputDocument {
    pub field: Option<Field>,
    pub algebra: Option<AlgebraDoc>,
    pub bimodule: Option<BimoduleDoc>,
    pub module: Option<ModuleDoc>,
    /// Cochains from all files, in command-line order.
    pub cochains: Vec<CochainDoc>,
    pub extension: Option<ExtensionDoc>,
}

fn put<T>(slot: &mut Option<T>, value: Option<T>, name: &str, path: &Path) -> Result<()> {
    if let Some(v) = value {
        if slot.is_some() {
            return Err(Error::Parse(format!("section {name:?} appears twice (again in {})", path.display())));
        }
        *slot = Some(v);
    }
    Ok(())
}

impl InputDocument {
    pub fn merge_text(&mut self, text: &str, path: &Path) -> Result<()> {
        let doc: FileDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let field = match doc.field {
            Field::Prime(p) => Field::prime(p)?,
            f => f,
        };
        match self.field {
            Some(f) if f != field => {
                return Err(Error::FieldMismatch {
                    expected: f,
                    found: field,
                })
            }
            _ => self.field = Some(field),
        }
        put(&mut self.algebra, doc.algebra, "algebra", path)?;
        put(&mut self.bimodule, doc.bimodule, "bimodule", path)?;
        put(&mut self.module, doc.module, "module", path)?;
        put(&mut self.extension, doc.extension, "extension", path)?;
        self.cochains.extend(doc.cochain);
        self.cochains.extend(doc.cochains.unwrap_or_default());
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.merge_text(&text, path)
    }

    pub fn field(&self) -> Result<Field> {
        self.field.ok_or_else(|| Error::Parse("no input files".into()))
    }

    fn require<'a, T>(slot: &'a Option<T>, name: &str) -> Result<&'a T> {
        slot.as_ref().ok_or_else(|| Error::Parse(format!("missing {name:?} section")))
    }

    /// The algebra without checking its axioms.
    pub fn algebra_unchecked(&self) -> Result<Algebra> {
        parse_algebra(self.field()?, Self::require(&self.algebra, "algebra")?, false)
    }

    pub fn algebra(&self) -> Result<Algebra> {
        parse_algebra(self.field()?, Self::require(&self.algebra, "algebra")?, true)
    }

    pub fn bimodule(&self, a: &Algebra) -> Result<Option<Bimodule>> {
        self.bimodule.as_ref().map(|b| parse_bimodule(a, b, true)).transpose()
    }

    pub fn bimodule_or_regular(&self, a: &Algebra) -> Result<Bimodule> {
        Ok(self.bimodule(a)?.unwrap_or_else(|| Bimodule::regular(a)))
    }

    pub fn module(&self, a: &Algebra) -> Result<LeftModule> {
        parse_module(a, Self::require(&self.module, "module")?, true)
    }

    /// All cochains of the given degree, with values in a space of dimension `ideal_dim`.
    pub fn cochains_of_degree(&self, degree: usize, a: &Algebra, ideal_dim: usize) -> Result<Vec<Cochain>> {
        self.cochains
            .iter()
            .filter(|c| c.degree == degree)
            .map(|c| parse_cochain(a.field(), c, a.dim(), ideal_dim))
            .collect()
    }

    pub fn extension(&self) -> Result<ExtensionAlgebra> {
        parse_extension(self.field()?, Self::require(&self.extension, "extension")?)
    }
}

pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar> {
    field.parse(s)
}

pub fn parse_vector(field: Field, v: &[String], len: usize, what: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {len}", v.len())));
    }
    v.iter().map(|s| parse_scalar(field, s)).collect()
}

pub fn parse_matrix(field: Field, rows: &Rows, shape: (usize, usize), what: &str) -> Result<Matrix> {
    if rows.len() != shape.0 {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {} rows, expected {}",
            rows.len(),
            shape.0
        )));
    }
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(r, row)| parse_vector(field, row, shape.1, &format!("row {r} of {what}")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, parsed, shape.1)
}

pub fn parse_algebra_unchecked(field: Field, doc: &AlgebraDoc) -> Result<Algebra> {
    parse_algebra(field, doc, false)
}

fn parse_algebra(field: Field, doc: &AlgebraDoc, checked: bool) -> Result<Algebra> {
    let n = doc.dim;
    if doc.mul.len() != n {
        return Err(Error::DimensionMismatch(format!("mul has {} rows, expected {n}", doc.mul.len())));
    }
    let mut mul = Vec::with_capacity(n * n * n);
    for (i, row) in doc.mul.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!("mul[{i}] has {} entries, expected {n}", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            mul.extend(parse_vector(field, v, n, &format!("mul[{i}][{j}]"))?);
        }
    }
    let unit = parse_vector(field, &doc.unit, n, "unit")?;
    let names = doc.basis_names.clone();
    if checked {
        Algebra::new(field, n, mul, unit, names)
    } else {
        Algebra::new_unchecked(field, n, mul, unit, names)
    }
}

fn parse_actions(a: &Algebra, mats: &[Rows], dim: usize, what: &str) -> Result<Vec<Matrix>> {
    if mats.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {} matrices for an algebra of dimension {}",
            mats.len(),
            a.dim()
        )));
    }
    mats.iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(a.field(), m, (dim, dim), &format!("{what}[{i}]")))
        .collect()
}

pub fn parse_bimodule(a: &Algebra, doc: &BimoduleDoc, checked: bool) -> Result<Bimodule> {
    let left = parse_actions(a, &doc.left, doc.dim, "left")?;
    let right = parse_actions(a, &doc.right, doc.dim, "right")?;
    if checked {
        Bimodule::new(a, doc.dim, left, right)
    } else {
        Bimodule::new_unchecked(a, doc.dim, left, right)
    }
}

pub fn parse_module(a: &Algebra, doc: &ModuleDoc, checked: bool) -> Result<LeftModule> {
    let action = parse_actions(a, &doc.action, doc.dim, "action")?;
    if checked {
        LeftModule::new(a, doc.dim, action)
    } else {
        LeftModule::new_unchecked(a, doc.dim, action)
    }
}

pub fn parse_cochain(field: Field, doc: &CochainDoc, alg_dim: usize, ideal_dim: usize) -> Result<Cochain> {
    let cols = alg_dim.checked_pow(doc.degree as u32).unwrap_or(usize::MAX);
    crate::exactla::check_size(ideal_dim, cols)?;
    let m = parse_matrix(field, &doc.matrix, (ideal_dim, cols), &format!("degree {} cochain", doc.degree))?;
    Cochain::new(doc.degree, m)
}

fn parse_extension(field: Field, doc: &ExtensionDoc) -> Result<ExtensionAlgebra> {
    let b = parse_algebra(field, &doc.algebra, false)?;
    let dim_b = b.dim();
    if doc.ideal_dim > dim_b {
        return Err(Error::DimensionMismatch("ideal_dim exceeds the dimension of the algebra".into()));
    }
    let n = dim_b - doc.ideal_dim;
    let injection = parse_matrix(field, &doc.injection, (dim_b, doc.ideal_dim), "injection")?;
    let projection = parse_matrix(field, &doc.projection, (n, dim_b), "projection")?;
    let cocycle = doc
        .cocycle
        .as_ref()
        .map(|c| parse_cochain(field, c, n, doc.ideal_dim))
        .transpose()?;
    ExtensionAlgebra::new(b, doc.ideal_dim, injection, projection, cocycle)
}

pub fn field_json(f: Field) -> Value {
    match f {
        Field::Rational => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

pub fn matrices_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_json).collect())
}

pub fn algebra_json(a: &Algebra) -> Value {
    let n = a.dim();
    let mul: Vec<Value> = (0..n)
        .map(|i| Value::Array((0..n).map(|j| vector_json(a.structure(i, j))).collect()))
        .collect();
    let mut out = BTreeMap::new();
    out.insert("dim", json!(n));
    out.insert("unit", vector_json(a.unit()));
    out.insert("mul", Value::Array(mul));
    if let Some(names) = a.basis_names() {
        out.insert("basis_names", json!(names));
    }
    json!(out)
}

pub fn bimodule_json(b: &Bimodule) -> Value {
    json!({
        "dim": b.dim(),
        "left": matrices_json(b.left_matrices()),
        "right": matrices_json(b.right_matrices()),
    })
}

pub fn module_json(m: &LeftModule) -> Value {
    json!({ "dim": m.dim(), "action": matrices_json(m.matrices()) })
}

pub fn cochain_json(c: &Cochain) -> Value {
    json!({ "degree": c.degree(), "matrix": matrix_json(c.matrix()) })
}

pub fn extension_json(e: &ExtensionAlgebra) -> Value {
    let mut out = BTreeMap::new();
    out.insert("algebra", algebra_json(e.algebra()));
    out.insert("ideal_dim", json!(e.ideal_dim()));
    out.insert("injection", matrix_json(e.injection()));
    out.insert("projection", matrix_json(e.projection()));
    if let Some(c) = e.cocycle() {
        out.insert("cocycle", cochain_json(c));
    }
    json!(out)
}
