//! Standard small algebras and subalgebras of matrix algebras.

use super::modules::LeftModule;
use super::structure::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{coordinates, span_basis, vector, Field, Matrix, Vector};

/// The field itself, as a one-dimensional algebra.
pub fn base_field(field: Field) -> Algebra {
    truncated_polynomial(field, 1)
}

/// `k[eps]/(eps^2)` on the basis `1, eps`.
pub fn dual_numbers(field: Field) -> Algebra {
    truncated_polynomial(field, 2)
        .with_names(vec!["1".into(), "eps".into()])
        .expect("two names")
}

/// `k[x]/(x^n)` on the basis `1, x, ..., x^(n-1)`.
pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_owned(),
            1 => "x".to_owned(),
            _ => format!("x^{i}"),
        })
        .collect();
    Algebra::from_products(
        field,
        n,
        |i, j| {
            if i + j < n {
                vector::unit(field, n, i + j)
            } else {
                vector::zero(field, n)
            }
        },
        vector::unit(field, n, 0),
        Some(names),
    )
    .expect("truncated polynomial ring is a valid algebra")
}

/// Group algebra `k[C_n]` on the basis `1, g, ..., g^(n-1)`.
pub fn cyclic_group_algebra(field: Field, n: usize) -> Algebra {
    assert!(n >= 1);
    Algebra::from_products(
        field,
        n,
        |i, j| vector::unit(field, n, (i + j) % n),
        vector::unit(field, n, 0),
        Some((0..n).map(|i| format!("g^{i}")).collect()),
    )
    .expect("group algebra is a valid algebra")
}

/// `M_n(k)` on the matrix units `e_uv` (index `u * n + v`), with `e_uv e_wz = [v = w] e_uz`.
pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
    full_matrices(field, n).algebra
}

/// Upper triangular `n x n` matrices on the matrix units `e_uv`, `u <= v`, in lexicographic order.
pub fn upper_triangular(field: Field, n: usize) -> Algebra {
    upper_triangular_matrices(field, n).algebra
}

pub fn full_matrices(field: Field, n: usize) -> MatrixAlgebra {
    let units = (0..n).flat_map(|u| (0..n).map(move |v| (u, v)));
    MatrixAlgebra::from_matrix_units(field, n, units.collect())
}

pub fn upper_triangular_matrices(field: Field, n: usize) -> MatrixAlgebra {
    let units = (0..n).flat_map(|u| (u..n).map(move |v| (u, v)));
    MatrixAlgebra::from_matrix_units(field, n, units.collect())
}

fn matrix_unit(field: Field, n: usize, u: usize, v: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |r, c| if (r, c) == (u, v) { field.one() } else { field.zero() })
}

/// A unital subalgebra of `M_r(k)` together with the matrices of its basis.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub algebra: Algebra,
    pub basis: Vec<Matrix>,
}

impl MatrixAlgebra {
    fn from_matrix_units(field: Field, n: usize, units: Vec<(usize, usize)>) -> MatrixAlgebra {
        let basis: Vec<Matrix> = units.iter().map(|&(u, v)| matrix_unit(field, n, u, v)).collect();
        let names = units.iter().map(|(u, v)| format!("e{u}{v}")).collect();
        let mut m = MatrixAlgebra::from_basis(field, basis).expect("matrix units span a subalgebra");
        m.algebra = m.algebra.with_names(names).expect("name count");
        m
    }

    /// The algebra with the given basis; the span must contain the identity and be closed under products.
    pub fn from_basis(field: Field, basis: Vec<Matrix>) -> Result<MatrixAlgebra> {
        let r = basis.first().map_or(0, |m| m.rows());
        let flat: Vec<Vector> = basis.iter().map(|m| m.flatten()).collect();
        let coords = |m: &Matrix| {
            coordinates(field, &flat, &m.flatten())
                .ok_or_else(|| Error::InvalidAlgebra("matrix span is not closed under products".into()))
        };
        let unit = coords(&Matrix::identity(field, r))?;
        let n = basis.len();
        let mut mul = Vec::with_capacity(n * n * n);
        for x in &basis {
            for y in &basis {
                mul.extend(coords(&x.mul(y))?);
            }
        }
        let algebra = Algebra::new(field, n, mul, unit, None)?;
        Ok(MatrixAlgebra { algebra, basis })
    }

    /// Unital subalgebra of `M_r(k)` generated by `generators`; fails if its
    /// dimension exceeds `max_dim`.
    pub fn generated_by(field: Field, r: usize, generators: &[Matrix], max_dim: usize) -> Result<MatrixAlgebra> {
        let mut span: Vec<Vector> = vec![Matrix::identity(field, r).flatten()];
        span.extend(generators.iter().map(Matrix::flatten));
        span = span_basis(field, r * r, &span);
        loop {
            if span.len() > max_dim {
                return Err(Error::InvalidAlgebra(format!(
                    "generated subalgebra exceeds dimension {max_dim}"
                )));
            }
            let mats: Vec<Matrix> = span.iter().map(|v| Matrix::from_flat(field, r, r, v)).collect();
            let mut next = span.clone();
            for x in &mats {
                for y in &mats {
                    next.push(x.mul(y).flatten());
                }
            }
            let next = span_basis(field, r * r, &next);
            if next.len() == span.len() {
                break;
            }
            span = next;
        }
        let basis = span.iter().map(|v| Matrix::from_flat(field, r, r, v)).collect();
        MatrixAlgebra::from_basis(field, basis)
    }

    /// `k^r` with the basis matrices acting by multiplication.
    pub fn natural_module(&self) -> LeftModule {
        let r = self.basis.first().map_or(0, |m| m.rows());
        LeftModule::new(&self.algebra, r, self.basis.clone()).expect("natural module is a module")
    }

    /// The matrix of an algebra element given in coordinates.
    pub fn element_matrix(&self, coords: &[crate::exactla::Scalar]) -> Matrix {
        let f = self.algebra.field();
        let r = self.basis.first().map_or(0, |m| m.rows());
        let mut out = Matrix::zeros(f, r, r);
        for (m, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// If every basis matrix is upper triangular, the characters `e_i -> (basis_i)_{kk}`, one per `k`.
    pub fn diagonal_characters(&self) -> Vec<Vector> {
        let r = self.basis.first().map_or(0, |m| m.rows());
        let upper = self
            .basis
            .iter()
            .all(|m| (0..r).all(|row| (0..row).all(|col| m.get(row, col).is_zero())));
        if !upper {
            return Vec::new();
        }
        (0..r)
            .map(|k| self.basis.iter().map(|m| m.get(k, k).clone()).collect())
            .collect()
    }
}
