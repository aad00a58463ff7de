use super::modules::{Bimodule, LeftModule};
use super::structure::Algebra;
use crate::error::Result;
use crate::exactla::{span_basis, Matrix, Vector};
use crate::hochschild::Hochschild;

/// Basis of the center `{z : z e_i = e_i z for all i}`.
pub fn center(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let f = a.field();
    let m = Matrix::from_linear_map(f, n, n * n, |z| {
        (0..n)
            .flat_map(|i| {
                let e = a.basis(i);
                crate::exactla::vector::sub(&a.mul_vec(z, &e), &a.mul_vec(&e, z))
            })
            .collect()
    });
    m.kernel_basis()
}

pub fn is_central(a: &Algebra, z: &[crate::exactla::Scalar]) -> bool {
    (0..a.dim()).all(|i| {
        let e = a.basis(i);
        a.mul_vec(z, &e) == a.mul_vec(&e, z)
    })
}

/// Basis of `Der_k(A, I)`, the kernel of `d^1`, each derivation as a `dim I x dim A` matrix.
pub fn derivations(a: &Algebra, i: &Bimodule) -> Result<Vec<Matrix>> {
    let h = Hochschild::new(a, i)?;
    Ok(h.cocycles(1)?.into_iter().map(|c| c.matrix().clone()).collect())
}

/// Left multiplications `phi_{e_i}` as endomorphisms of `A`.
pub fn left_multiplications(a: &Algebra) -> Vec<Matrix> {
    (0..a.dim()).map(|i| a.left_mult(&a.basis(i))).collect()
}

/// Basis of the first-order differential operators `D^1(A)` inside `End_k(A)`.
///
/// `D` is first order when every commutator `[D, phi_a]` is a left
/// multiplication. Evaluating at `1` shows the only candidate is
/// `phi_{D(a) - a D(1)}`, so membership is the linear condition
/// `D(ab) - a D(b) = (D(a) - a D(1)) b` on all basis pairs.
pub fn diff_ops_1(a: &Algebra) -> Vec<Matrix> {
    let n = a.dim();
    let f = a.field();
    let conditions = Matrix::from_linear_map(f, n * n, n * n * n, |flat| {
        let d = Matrix::from_flat(f, n, n, flat);
        let d1 = d.mul_vec(a.unit());
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            let ei = a.basis(i);
            let commutator_at_one = crate::exactla::vector::sub(&d.column(i), &a.mul_vec(&ei, &d1));
            for j in 0..n {
                let ej = a.basis(j);
                let lhs = crate::exactla::vector::sub(
                    &d.mul_vec(a.structure(i, j)),
                    &a.mul_vec(&ei, &d.column(j)),
                );
                let rhs = a.mul_vec(&commutator_at_one, &ej);
                out.extend(crate::exactla::vector::sub(&lhs, &rhs));
            }
        }
        out
    });
    let kernel = conditions.kernel_basis();
    span_basis(f, n * n, &kernel)
        .iter()
        .map(|v| Matrix::from_flat(f, n, n, v))
        .collect()
}

/// `End_k(M)` with `(a . phi)(m) = a phi(m)` and `(phi . a)(m) = phi(a m)`.
pub fn end_bimodule(a: &Algebra, m: &LeftModule) -> Result<Bimodule> {
    Bimodule::hom(a, m, m)
}
