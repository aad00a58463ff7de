//! Subspaces of `k^n` given by spanning vectors, and quotients by them.

use super::matrix::{vector, Matrix, Vector};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Canonical basis of the span of `vectors` inside `k^dim`: the nonzero rows of
/// the reduced echelon form of the matrix whose rows are the vectors.
pub fn span_basis(field: Field, dim: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_columns(field, dim, vectors).transpose();
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn rank_of(field: Field, dim: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, dim, vectors).rank()
}

/// Coordinates of `v` with respect to a linearly independent list, if `v` is in its span.
pub fn coordinates(field: Field, basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    if basis.is_empty() {
        return vector::is_zero(v).then(Vec::new);
    }
    Matrix::from_columns(field, v.len(), basis)
        .solve(v)
        .expect("dimensions agree by construction")
}

pub fn in_span(field: Field, basis: &[Vector], v: &[Scalar]) -> bool {
    coordinates(field, basis, v).is_some()
}

/// Result of [`quotient_dim`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    /// Vectors from the space that, together with the subspace, span the space.
    pub representatives: Vec<Vector>,
}

/// Dimension of `span(space) / span(subspace)` and coset representatives.
///
/// Representatives are chosen greedily in the order of `space`: a vector is kept
/// when it is independent of the subspace and of the vectors kept before it.
pub fn quotient_dim(
    field: Field,
    dim: usize,
    space: &[Vector],
    subspace: &[Vector],
) -> Result<Quotient> {
    let space_rank = rank_of(field, dim, space);
    let mut joint: Vec<Vector> = space.to_vec();
    joint.extend(subspace.iter().cloned());
    if rank_of(field, dim, &joint) != space_rank {
        return Err(Error::SubspaceNotContained);
    }
    let mut current: Vec<Vector> = subspace.to_vec();
    let mut rank = rank_of(field, dim, &current);
    let base_rank = rank;
    let mut representatives = Vec::new();
    for v in space {
        current.push(v.clone());
        let r = rank_of(field, dim, &current);
        if r > rank {
            rank = r;
            representatives.push(v.clone());
        } else {
            current.pop();
        }
    }
    debug_assert_eq!(rank, space_rank);
    Ok(Quotient {
        dim: space_rank - base_rank,
        representatives,
    })
}

/// The quotient map `k^n -> k^n / W` in echelon coordinates.
///
/// `W` is stored in reduced echelon form; the quotient has one coordinate per
/// non-pivot position, and the lift of a quotient basis vector is the
/// corresponding standard basis vector of `k^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    field: Field,
    ambient: usize,
    sub_rows: Vec<Vector>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl QuotientMap {
    pub fn new(field: Field, ambient: usize, subspace: &[Vector]) -> QuotientMap {
        let sub_rows = span_basis(field, ambient, subspace);
        let pivots: Vec<usize> = sub_rows
            .iter()
            .map(|r| r.iter().position(|s| !s.is_zero()).expect("nonzero echelon row"))
            .collect();
        let free = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        QuotientMap {
            field,
            ambient,
            sub_rows,
            pivots,
            free,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn subspace_dim(&self) -> usize {
        self.pivots.len()
    }

    /// Echelon basis of the subspace being factored out.
    pub fn subspace_basis(&self) -> &[Vector] {
        &self.sub_rows
    }

    /// Ambient positions whose standard basis vectors lift the quotient basis.
    pub fn free_positions(&self) -> &[usize] {
        &self.free
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.sub_rows.iter().zip(&self.pivots) {
            let coeff = w[p].clone();
            if !coeff.is_zero() {
                vector::axpy(&mut w, &-&coeff, row);
            }
        }
        self.free.iter().map(|&c| w[c].clone()).collect()
    }

    pub fn lift(&self, j: usize) -> Vector {
        vector::unit(self.field, self.ambient, self.free[j])
    }

    pub fn lift_vector(&self, coords: &[Scalar]) -> Vector {
        let mut v = vector::zero(self.field, self.ambient);
        for (c, &pos) in coords.iter().zip(&self.free) {
            v[pos] = c.clone();
        }
        v
    }

    /// The `dim x ambient` matrix of [`QuotientMap::project`].
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.ambient)
            .map(|c| self.project(&vector::unit(self.field, self.ambient, c)))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.project(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    fn std_basis(n: usize) -> Vec<Vector> {
        (0..n).map(|i| vector::unit(Field::Rational, n, i)).collect()
    }

    #[test]
    fn coordinate_subspace_quotient() {
        let q = quotient_dim(Field::Rational, 3, &std_basis(3), &[qv(&[1, 0, 0])]).unwrap();
        assert_eq!(q.dim, 2);
        assert_eq!(q.representatives, vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
    }

    #[test]
    fn full_subspace_quotient() {
        let q = quotient_dim(Field::Rational, 3, &std_basis(3), &std_basis(3)).unwrap();
        assert_eq!(q.dim, 0);
        assert!(q.representatives.is_empty());
    }

    #[test]
    fn rank_count_quotient() {
        let sub = [qv(&[1, 1, 0, 0]), qv(&[0, 0, 1, 1])];
        let q = quotient_dim(Field::Rational, 4, &std_basis(4), &sub).unwrap();
        assert_eq!(q.dim, 2);
    }

    #[test]
    fn non_contained_subspace_is_rejected() {
        let space = [qv(&[1, 0, 0])];
        let sub = [qv(&[0, 1, 0])];
        assert!(matches!(
            quotient_dim(Field::Rational, 3, &space, &sub),
            Err(Error::SubspaceNotContained)
        ));
    }

    #[test]
    fn quotient_map_kills_subspace() {
        let sub = [qv(&[1, 1, 0, 0]), qv(&[0, 0, 1, 1])];
        let qm = QuotientMap::new(Field::Rational, 4, &sub);
        assert_eq!(qm.dim(), 2);
        for s in &sub {
            assert!(qm.contains(s));
        }
        assert_eq!(qm.project(&qm.lift(0)), qv(&[1, 0]));
        assert_eq!(qm.project(&qm.lift(1)), qv(&[0, 1]));
        assert_eq!(qm.matrix().rank(), 2);
    }

    #[test]
    fn coordinates_in_span() {
        let basis = [qv(&[1, 1, 0]), qv(&[0, 1, 1])];
        assert_eq!(coordinates(Field::Rational, &basis, &qv(&[2, 5, 3])), Some(qv(&[2, 3])));
        assert!(!in_span(Field::Rational, &basis, &qv(&[1, 0, 0])));
        assert_eq!(coordinates(Field::Rational, &[], &qv(&[0, 0])), Some(vec![]));
    }
}
