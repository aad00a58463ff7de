//! The Hochschild cochain complex `C^p(A, I) = Hom_k(A^{(x)p}, I)` in degrees up to 3.
//!
//! A `p`-cochain is stored as a `dim I x (dim A)^p` matrix whose columns are the
//! values on basis tensors `e_{i_1} (x) ... (x) e_{i_p}`, listed in lexicographic
//! order with the leftmost factor most significant. For linear algebra a
//! cochain is flattened value by value: coordinate `t * dim I + r` is the
//! `r`-th coordinate of the value on tensor `t`.
//!
//! The differential is
//!
//! ```text
//! d(phi)(a_1, ..., a_{p+1}) = a_1 phi(a_2, ..., a_{p+1})
//!     + sum_{k=1}^{p} (-1)^k phi(a_1, ..., a_k a_{k+1}, ..., a_{p+1})
//!     + (-1)^{p+1} phi(a_1, ..., a_p) a_{p+1}
//! ```
//!
//! which in degree 0 reads `d(u)(a) = a u - u a`.

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::{check_size, quotient_dim, vector, Field, Matrix, Scalar, Vector};

/// Highest cochain degree the complex is built in.
pub const MAX_DEGREE: usize = 3;

/// A Hochschild cochain: a linear map `A^{(x)p} -> I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    matrix: Matrix,
}

impl Cochain {
    pub fn new(degree: usize, matrix: Matrix) -> Result<Cochain> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        Ok(Cochain { degree, matrix })
    }

    pub fn zero(field: Field, ideal_dim: usize, alg_dim: usize, degree: usize) -> Cochain {
        Cochain {
            degree,
            matrix: Matrix::zeros(field, ideal_dim, alg_dim.pow(degree as u32)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Value on the basis tensor with lexicographic index `t`.
    pub fn value(&self, t: usize) -> Vector {
        self.matrix.column(t)
    }

    /// Value on a tensor of arbitrary vectors, extended multilinearly.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        assert_eq!(args.len(), self.degree, "argument count must equal the degree");
        let f = self.field();
        let n = args.first().map_or(1, |a| a.len());
        let mut out = vector::zero(f, self.matrix.rows());
        for t in 0..self.matrix.cols() {
            let mut coeff = f.one();
            for (slot, i) in tensor_digits(t, n, self.degree).into_iter().enumerate() {
                coeff = &coeff * &args[slot][i];
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                vector::axpy(&mut out, &coeff, &self.matrix.column(t));
            }
        }
        out
    }

    pub fn to_vector(&self) -> Vector {
        let (m, cols) = (self.matrix.rows(), self.matrix.cols());
        let mut v = Vec::with_capacity(m * cols);
        for t in 0..cols {
            for r in 0..m {
                v.push(self.matrix.get(r, t).clone());
            }
        }
        v
    }

    pub fn from_vector(field: Field, degree: usize, ideal_dim: usize, alg_dim: usize, v: &[Scalar]) -> Cochain {
        let cols = alg_dim.pow(degree as u32);
        assert_eq!(v.len(), ideal_dim * cols, "cochain vector length");
        Cochain {
            degree,
            matrix: Matrix::from_fn(field, ideal_dim, cols, |r, t| v[t * ideal_dim + r].clone()),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            degree: self.degree,
            matrix: self.matrix.scale(s),
        }
    }

    /// Applies a linear map to every value: `(L phi)(a...) = L(phi(a...))`.
    pub fn map_values(&self, l: &Matrix) -> Cochain {
        Cochain {
            degree: self.degree,
            matrix: l.mul(&self.matrix),
        }
    }
}

/// Digits of the lexicographic tensor index `t` in base `n`, most significant first.
pub fn tensor_digits(mut t: usize, n: usize, degree: usize) -> Vec<usize> {
    let mut digits = vec![0; degree];
    for slot in (0..degree).rev() {
        digits[slot] = t % n;
        t /= n;
    }
    digits
}

pub fn tensor_index(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

/// Cohomology of the complex in one degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub dim: usize,
    /// Cocycles whose classes form a basis of the cohomology.
    pub representatives: Vec<Cochain>,
    pub cocycles: Vec<Cochain>,
    pub coboundaries: Vec<Cochain>,
}

/// The Hochschild complex of an algebra with coefficients in a bimodule.
#[derive(Clone, Copy, Debug)]
pub struct Hochschild<'a> {
    algebra: &'a Algebra,
    bimodule: &'a Bimodule,
}

impl<'a> Hochschild<'a> {
    pub fn new(algebra: &'a Algebra, bimodule: &'a Bimodule) -> Result<Hochschild<'a>> {
        bimodule.check_context(algebra)?;
        Ok(Hochschild { algebra, bimodule })
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.algebra
    }

    pub fn bimodule(&self) -> &'a Bimodule {
        self.bimodule
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    /// `dim C^p = dim I * (dim A)^p`.
    pub fn cochain_dim(&self, degree: usize) -> usize {
        self.bimodule.dim() * self.algebra.dim().pow(degree as u32)
    }

    pub fn zero_cochain(&self, degree: usize) -> Cochain {
        Cochain::zero(self.field(), self.bimodule.dim(), self.algebra.dim(), degree)
    }

    pub fn cochain_from_vector(&self, degree: usize, v: &[Scalar]) -> Cochain {
        Cochain::from_vector(self.field(), degree, self.bimodule.dim(), self.algebra.dim(), v)
    }

    /// Checks that a cochain has the shape of a `degree`-cochain of this complex.
    pub fn check(&self, c: &Cochain) -> Result<()> {
        let m = c.matrix();
        if m.field() != self.field() {
            return Err(Error::FieldMismatch {
                expected: self.field(),
                found: m.field(),
            });
        }
        if m.rows() != self.bimodule.dim() || m.cols() != self.algebra.dim().pow(c.degree() as u32) {
            return Err(Error::ContextMismatch(format!(
                "{}-cochain of shape {}x{} does not belong to C^{}(A, I) with dim A = {}, dim I = {}",
                c.degree(),
                m.rows(),
                m.cols(),
                c.degree(),
                self.algebra.dim(),
                self.bimodule.dim()
            )));
        }
        Ok(())
    }

    /// `d(c)`, evaluated from the defining formula on every basis tensor.
    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        self.check(c)?;
        let p = c.degree();
        if p >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(p));
        }
        let n = self.algebra.dim();
        let f = self.field();
        let out_cols = n.pow(p as u32 + 1);
        check_size(self.bimodule.dim(), out_cols)?;
        let mut cols = Vec::with_capacity(out_cols);
        for t in 0..out_cols {
            let args = tensor_digits(t, n, p + 1);
            let head = &args[..p];
            let tail = &args[1..];
            let mut value = self
                .bimodule
                .left_matrices()[args[0]]
                .mul_vec(&c.value(tensor_index(tail, n)));
            for k in 0..p {
                let sign = if k % 2 == 0 { -f.one() } else { f.one() };
                let product = self.algebra.structure(args[k], args[k + 1]);
                for (l, coeff) in product.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut merged: Vec<usize> = args[..k].to_vec();
                    merged.push(l);
                    merged.extend_from_slice(&args[k + 2..]);
                    vector::axpy(&mut value, &(&sign * coeff), &c.value(tensor_index(&merged, n)));
                }
            }
            let last = self.bimodule.right_matrices()[args[p]].mul_vec(&c.value(tensor_index(head, n)));
            if p % 2 == 0 {
                value = vector::sub(&value, &last);
            } else {
                value = vector::add(&value, &last);
            }
            cols.push(value);
        }
        Cochain::new(p + 1, Matrix::from_columns(f, self.bimodule.dim(), &cols))
    }

    /// Matrix of `d^p : C^p -> C^{p+1}` in flattened cochain coordinates,
    /// assembled entry by entry.
    pub fn differential_matrix(&self, degree: usize) -> Result<Matrix> {
        if degree >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let (n, m) = (self.algebra.dim(), self.bimodule.dim());
        let f = self.field();
        let rows = self.cochain_dim(degree + 1);
        let cols = self.cochain_dim(degree);
        check_size(rows, cols)?;
        let mut d = Matrix::zeros(f, rows, cols);
        let minus_one = -f.one();
        for t in 0..n.pow(degree as u32 + 1) {
            let args = tensor_digits(t, n, degree + 1);
            let t_tail = tensor_index(&args[1..], n);
            let t_head = tensor_index(&args[..degree], n);
            let lam = &self.bimodule.left_matrices()[args[0]];
            let rho = &self.bimodule.right_matrices()[args[degree]];
            let last_sign = if degree % 2 == 0 { &minus_one } else { &f.one() };
            for r in 0..m {
                for s in 0..m {
                    let x = lam.get(r, s);
                    if !x.is_zero() {
                        *d.get_mut(t * m + r, t_tail * m + s) += x;
                    }
                    let y = rho.get(r, s);
                    if !y.is_zero() {
                        let v = last_sign * y;
                        *d.get_mut(t * m + r, t_head * m + s) += &v;
                    }
                }
            }
            for k in 0..degree {
                let sign = if k % 2 == 0 { minus_one.clone() } else { f.one() };
                for (l, coeff) in self.algebra.structure(args[k], args[k + 1]).iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut merged: Vec<usize> = args[..k].to_vec();
                    merged.push(l);
                    merged.extend_from_slice(&args[k + 2..]);
                    let t_in = tensor_index(&merged, n);
                    let v = &sign * coeff;
                    for r in 0..m {
                        *d.get_mut(t * m + r, t_in * m + r) += &v;
                    }
                }
            }
        }
        Ok(d)
    }

    /// Basis of the `degree`-cocycles `ker d^degree`.
    pub fn cocycles(&self, degree: usize) -> Result<Vec<Cochain>> {
        let d = self.differential_matrix(degree)?;
        Ok(d.kernel_basis()
            .iter()
            .map(|v| self.cochain_from_vector(degree, v))
            .collect())
    }

    /// Basis of the `degree`-coboundaries `im d^{degree - 1}` (empty in degree 0).
    pub fn coboundaries(&self, degree: usize) -> Result<Vec<Cochain>> {
        if degree == 0 {
            return Ok(Vec::new());
        }
        let d = self.differential_matrix(degree - 1)?;
        Ok(d.column_space_basis()
            .iter()
            .map(|v| self.cochain_from_vector(degree, v))
            .collect())
    }

    /// `HH^degree(A, I)` for `degree <= 2`.
    pub fn cohomology(&self, degree: usize) -> Result<Cohomology> {
        if degree >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let cocycles = self.cocycles(degree)?;
        let coboundaries = self.coboundaries(degree)?;
        let z: Vec<Vector> = cocycles.iter().map(Cochain::to_vector).collect();
        let b: Vec<Vector> = coboundaries.iter().map(Cochain::to_vector).collect();
        let q = quotient_dim(self.field(), self.cochain_dim(degree), &z, &b)?;
        Ok(Cohomology {
            degree,
            dim: q.dim,
            representatives: q
                .representatives
                .iter()
                .map(|v| self.cochain_from_vector(degree, v))
                .collect(),
            cocycles,
            coboundaries,
        })
    }

    /// Coordinates of the class of a cocycle in the basis of representatives of `h`,
    /// or `None` if `c` is not a cocycle.
    pub fn class_of(&self, h: &Cohomology, c: &Cochain) -> Result<Option<Vector>> {
        self.check(c)?;
        let mut cols: Vec<Vector> = h.representatives.iter().map(Cochain::to_vector).collect();
        cols.extend(h.coboundaries.iter().map(Cochain::to_vector));
        if cols.is_empty() {
            return Ok(c.is_zero().then(Vec::new));
        }
        let m = Matrix::from_columns(self.field(), self.cochain_dim(c.degree()), &cols);
        Ok(m.solve(&c.to_vector())?
            .map(|x| x[..h.representatives.len()].to_vec()))
    }
}
