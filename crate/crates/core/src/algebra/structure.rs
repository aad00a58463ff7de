use crate::error::{Error, Result};
use crate::exactla::{vector, Field, Matrix, QuotientMap, Scalar, Vector};

/// A finite-dimensional associative unital algebra given by structure constants.
///
/// `mul[(i * n + j) * n + k]` is the coefficient of `e_k` in `e_i e_j`. The
/// unit is an arbitrary vector, not necessarily a basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mul: Vec<Scalar>,
    unit: Vector,
    names: Option<Vec<String>>,
}

/// Every violated defining identity of an [`Algebra`], in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Triples `(i, j, k)` with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub associativity: Vec<(usize, usize, usize)>,
    /// Indices `i` with `1 e_i != e_i`.
    pub left_unit: Vec<usize>,
    /// Indices `i` with `e_i 1 != e_i`.
    pub right_unit: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity.is_empty() && self.left_unit.is_empty() && self.right_unit.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(t) = self.associativity.first() {
            parts.push(format!(
                "{} associativity violations, first at {t:?}",
                self.associativity.len()
            ));
        }
        if let Some(i) = self.left_unit.first() {
            parts.push(format!("left unit fails at e{i}"));
        }
        if let Some(i) = self.right_unit.first() {
            parts.push(format!("right unit fails at e{i}"));
        }
        if parts.is_empty() {
            "valid".to_owned()
        } else {
            parts.join("; ")
        }
    }
}

impl Algebra {
    /// Builds and validates an algebra.
    pub fn new(
        field: Field,
        dim: usize,
        mul: Vec<Scalar>,
        unit: Vector,
        names: Option<Vec<String>>,
    ) -> Result<Algebra> {
        let a = Algebra::new_unchecked(field, dim, mul, unit, names)?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(report.summary()));
        }
        Ok(a)
    }

    /// Builds an algebra checking only shapes and fields, so that a broken
    /// table can still be passed to [`Algebra::validate`].
    pub fn new_unchecked(
        field: Field,
        dim: usize,
        mul: Vec<Scalar>,
        unit: Vector,
        names: Option<Vec<String>>,
    ) -> Result<Algebra> {
        if mul.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor has {} entries, expected {}",
                mul.len(),
                dim * dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        if let Some(names) = &names {
            if names.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{} basis names for dimension {dim}",
                    names.len()
                )));
            }
        }
        if let Some(s) = mul.iter().chain(&unit).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field,
                found: s.field(),
            });
        }
        Ok(Algebra {
            field,
            dim,
            mul,
            unit,
            names,
        })
    }

    /// Builds an algebra from a function giving `e_i e_j`, validating the result.
    pub fn from_products(
        field: Field,
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vector,
        unit: Vector,
        names: Option<Vec<String>>,
    ) -> Result<Algebra> {
        Algebra::new(field, dim, Self::table(dim, &mut product), unit, names)
    }

    pub(crate) fn table(dim: usize, product: &mut impl FnMut(usize, usize) -> Vector) -> Vec<Scalar> {
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                assert_eq!(v.len(), dim, "product vector length");
                mul.extend(v);
            }
        }
        mul
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Algebra> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch("basis name count".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Raw structure tensor, see the type docs for the index convention.
    pub fn structure_tensor(&self) -> &[Scalar] {
        &self.mul
    }

    /// Coefficient vector of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.mul[start..start + self.dim]
    }

    pub fn basis(&self, i: usize) -> Vector {
        vector::unit(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        vector::zero(self.field, self.dim)
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                vector::axpy(&mut out, &c, self.structure(i, j));
            }
        }
        out
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_vec(x, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_vec(&self.basis(j), x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Checks all `n^3` associativity triples and `2n` unit identities.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                let ij = self.structure(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul_vec(&ij, &self.basis(k));
                    let right = self.mul_vec(&self.basis(i), self.structure(j, k));
                    if left != right {
                        report.associativity.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis(i);
            if self.mul_vec(&self.unit, &e) != e {
                report.left_unit.push(i);
            }
            if self.mul_vec(&e, &self.unit) != e {
                report.right_unit.push(i);
            }
        }
        report
    }

    pub fn is_commutative(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .find(|&(i, j)| self.structure(i, j) != self.structure(j, i))
    }

    pub fn require_commutative(&self) -> Result<()> {
        match self.first_noncommuting_pair() {
            Some((i, j)) => Err(Error::NotCommutative(i, j)),
            None => Ok(()),
        }
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch("change of basis must be n x n".into()));
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let new_basis = p.columns();
        let mut product = |i: usize, j: usize| inv.mul_vec(&self.mul_vec(&new_basis[i], &new_basis[j]));
        let mul = Self::table(n, &mut product);
        Algebra::new_unchecked(self.field, n, mul, inv.mul_vec(&self.unit), None)
    }

    /// `A / J` for a two-sided ideal `J`, with the quotient map.
    pub fn quotient(&self, ideal: &[Vector]) -> Result<(Algebra, QuotientMap)> {
        let q = QuotientMap::new(self.field, self.dim, ideal);
        for v in q.subspace_basis() {
            for i in 0..self.dim {
                let e = self.basis(i);
                if !q.contains(&self.mul_vec(&e, v)) || !q.contains(&self.mul_vec(v, &e)) {
                    return Err(Error::InvalidAlgebra(
                        "subspace is not a two-sided ideal".into(),
                    ));
                }
            }
        }
        let d = q.dim();
        let mut product = |i: usize, j: usize| q.project(&self.mul_vec(&q.lift(i), &q.lift(j)));
        let mul = Self::table(d, &mut product);
        let names = self
            .names
            .as_ref()
            .map(|names| q.free_positions().iter().map(|&p| names[p].clone()).collect());
        let quotient = Algebra::new(self.field, d, mul, q.project(&self.unit), names)?;
        Ok((quotient, q))
    }

    /// `A (x) B` with `(a (x) b)(c (x) d) = ac (x) bd`; basis `e_i (x) f_j` at index `i * dim B + j`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let (n, m) = (self.dim, other.dim);
        let mut product = |x: usize, y: usize| {
            let (i, j) = (x / m, x % m);
            let (k, l) = (y / m, y % m);
            kron(self.structure(i, k), other.structure(j, l))
        };
        let mul = Self::table(n * m, &mut product);
        Algebra::new(self.field, n * m, mul, kron(&self.unit, &other.unit), None)
    }

    /// Direct product `A x B`, basis of `A` first.
    pub fn product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let (n, m) = (self.dim, other.dim);
        let mut product = |x: usize, y: usize| {
            let mut v = vector::zero(self.field, n + m);
            if x < n && y < n {
                v[..n].clone_from_slice(self.structure(x, y));
            } else if x >= n && y >= n {
                v[n..].clone_from_slice(other.structure(x - n, y - n));
            }
            v
        };
        let mul = Self::table(n + m, &mut product);
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        Algebra::new(self.field, n + m, mul, unit, None)
    }

    /// The opposite algebra `A^op`.
    pub fn opposite(&self) -> Algebra {
        let mut product = |i: usize, j: usize| self.structure(j, i).to_vec();
        let mul = Self::table(self.dim, &mut product);
        Algebra {
            field: self.field,
            dim: self.dim,
            mul,
            unit: self.unit.clone(),
            names: self.names.clone(),
        }
    }
}

pub(crate) fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}
