use super::structure::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{vector, Field, Matrix, Scalar, Vector};

fn combine(field: Field, dim: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn check_shapes(a: &Algebra, dim: usize, mats: &[Matrix], what: &str) -> Result<()> {
    if mats.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{what}: {} action matrices for an algebra of dimension {}",
            mats.len(),
            a.dim()
        )));
    }
    for m in mats {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{what}: action matrix is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        if m.field() != a.field() {
            return Err(Error::FieldMismatch {
                expected: a.field(),
                found: m.field(),
            });
        }
    }
    Ok(())
}

/// Checks that `mats` define a unital left action (`reversed = false`) or a
/// unital right action written as matrices acting on the left (`reversed = true`,
/// so that `rho(xy) = rho(y) rho(x)`).
fn check_action(a: &Algebra, dim: usize, mats: &[Matrix], reversed: bool, what: &str) -> Result<()> {
    let f = a.field();
    if combine(f, dim, mats, a.unit()) != Matrix::identity(f, dim) {
        return Err(Error::InvalidModule(format!("{what}: the unit does not act as the identity")));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = combine(f, dim, mats, a.structure(i, j));
            let rhs = if reversed {
                mats[j].mul(&mats[i])
            } else {
                mats[i].mul(&mats[j])
            };
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "{what}: action is not multiplicative at (e{i}, e{j})"
                )));
            }
        }
    }
    Ok(())
}

/// A finite-dimensional `A`-bimodule.
///
/// `left[i]` is the matrix of `u -> e_i u` and `right[i]` the matrix of
/// `u -> u e_i`, both acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    field: Field,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    /// Builds a bimodule and checks unitality, multiplicativity of both actions and that they commute.
    pub fn new(a: &Algebra, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let b = Bimodule::new_unchecked(a, dim, left, right)?;
        b.validate(a)?;
        Ok(b)
    }

    pub fn new_unchecked(a: &Algebra, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        check_shapes(a, dim, &left, "left action")?;
        check_shapes(a, dim, &right, "right action")?;
        Ok(Bimodule {
            field: a.field(),
            dim,
            left,
            right,
        })
    }

    pub fn validate(&self, a: &Algebra) -> Result<()> {
        self.check_context(a)?;
        check_action(a, self.dim, &self.left, false, "left action")?;
        check_action(a, self.dim, &self.right, true, "right action")?;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Err(Error::InvalidModule(format!(
                        "left action of e{i} does not commute with right action of e{j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_context(&self, a: &Algebra) -> Result<()> {
        if a.field() != self.field || a.dim() != self.left.len() {
            return Err(Error::ContextMismatch(format!(
                "bimodule over a {}-dimensional algebra over {} used with a {}-dimensional algebra over {}",
                self.left.len(),
                self.field,
                a.dim(),
                a.field()
            )));
        }
        Ok(())
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &Algebra) -> Bimodule {
        let left = (0..a.dim()).map(|i| a.left_mult(&a.basis(i))).collect();
        let right = (0..a.dim()).map(|i| a.right_mult(&a.basis(i))).collect();
        Bimodule {
            field: a.field(),
            dim: a.dim(),
            left,
            right,
        }
    }

    pub fn zero(a: &Algebra) -> Bimodule {
        let empty = vec![Matrix::zeros(a.field(), 0, 0); a.dim()];
        Bimodule {
            field: a.field(),
            dim: 0,
            left: empty.clone(),
            right: empty,
        }
    }

    /// `Hom_k(W, V)` as the bimodule `(a . X) = lambda_V(a) X`, `(X . b) = X lambda_W(b)`.
    ///
    /// An element `X` is a `dim V x dim W` matrix flattened row-major.
    pub fn hom(a: &Algebra, v: &LeftModule, w: &LeftModule) -> Result<Bimodule> {
        v.check_context(a)?;
        w.check_context(a)?;
        let (dv, dw) = (v.dim(), w.dim());
        let f = a.field();
        let dim = dv * dw;
        let left = (0..a.dim())
            .map(|i| {
                let lam = &v.action[i];
                Matrix::from_linear_map(f, dim, dim, |x| {
                    lam.mul(&Matrix::from_flat(f, dv, dw, x)).flatten()
                })
            })
            .collect();
        let right = (0..a.dim())
            .map(|i| {
                let lam = &w.action[i];
                Matrix::from_linear_map(f, dim, dim, |x| {
                    Matrix::from_flat(f, dv, dw, x).mul(lam).flatten()
                })
            })
            .collect();
        Bimodule::new(a, dim, left, right)
    }

    /// One-dimensional bimodule on which `e_i` acts by `left[i]` on the left and `right[i]` on the right.
    pub fn from_characters(a: &Algebra, left: &[Scalar], right: &[Scalar]) -> Result<Bimodule> {
        let f = a.field();
        let wrap = |s: &Scalar| Matrix::from_fn(f, 1, 1, |_, _| s.clone());
        Bimodule::new(a, 1, left.iter().map(wrap).collect(), right.iter().map(wrap).collect())
    }

    pub fn direct_sum(&self, a: &Algebra, other: &Bimodule) -> Result<Bimodule> {
        let block = |x: &Matrix, y: &Matrix| block_diag(self.field, x, y);
        let left = self.left.iter().zip(&other.left).map(|(x, y)| block(x, y)).collect();
        let right = self.right.iter().zip(&other.right).map(|(x, y)| block(x, y)).collect();
        Bimodule::new(a, self.dim + other.dim, left, right)
    }

    /// Same bimodule in the basis given by the columns of `q`.
    pub fn change_basis(&self, q: &Matrix) -> Result<Bimodule> {
        let inv = q
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let conj = |m: &Matrix| inv.mul(m).mul(q);
        Ok(Bimodule {
            field: self.field,
            dim: self.dim,
            left: self.left.iter().map(conj).collect(),
            right: self.right.iter().map(conj).collect(),
        })
    }

    /// The same bimodule over `A` written in the algebra basis given by the columns of `p`
    /// (see [`Algebra::change_basis`]).
    pub fn transport(&self, p: &Matrix) -> Bimodule {
        let cols = p.columns();
        Bimodule {
            field: self.field,
            dim: self.dim,
            left: cols.iter().map(|c| combine(self.field, self.dim, &self.left, c)).collect(),
            right: cols.iter().map(|c| combine(self.field, self.dim, &self.right, c)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.left.len()
    }

    pub fn left_matrices(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_matrices(&self) -> &[Matrix] {
        &self.right
    }

    pub fn left_action(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.left, a)
    }

    pub fn right_action(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.right, a)
    }

    /// `a . u`.
    pub fn act_left(&self, a: &[Scalar], u: &[Scalar]) -> Vector {
        self.left_action(a).mul_vec(u)
    }

    /// `u . a`.
    pub fn act_right(&self, u: &[Scalar], a: &[Scalar]) -> Vector {
        self.right_action(a).mul_vec(u)
    }

    pub fn zero_vector(&self) -> Vector {
        vector::zero(self.field, self.dim)
    }

    /// Whether left and right actions coincide (as for `A` commutative acting on itself).
    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }
}

fn block_diag(f: Field, x: &Matrix, y: &Matrix) -> Matrix {
    let (n, m) = (x.rows(), y.rows());
    Matrix::from_fn(f, n + m, n + m, |r, c| {
        if r < n && c < n {
            x.get(r, c).clone()
        } else if r >= n && c >= n {
            y.get(r - n, c - n).clone()
        } else {
            f.zero()
        }
    })
}

/// A finite-dimensional left `A`-module; `action[i]` is the matrix of `m -> e_i m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
}

impl LeftModule {
    pub fn new(a: &Algebra, dim: usize, action: Vec<Matrix>) -> Result<LeftModule> {
        let m = LeftModule::new_unchecked(a, dim, action)?;
        m.validate(a)?;
        Ok(m)
    }

    pub fn new_unchecked(a: &Algebra, dim: usize, action: Vec<Matrix>) -> Result<LeftModule> {
        check_shapes(a, dim, &action, "module action")?;
        Ok(LeftModule {
            field: a.field(),
            dim,
            action,
        })
    }

    pub fn validate(&self, a: &Algebra) -> Result<()> {
        self.check_context(a)?;
        check_action(a, self.dim, &self.action, false, "module action")
    }

    pub fn check_context(&self, a: &Algebra) -> Result<()> {
        if a.field() != self.field || a.dim() != self.action.len() {
            return Err(Error::ContextMismatch(format!(
                "module over a {}-dimensional algebra used with a {}-dimensional algebra",
                self.action.len(),
                a.dim()
            )));
        }
        Ok(())
    }

    pub fn regular(a: &Algebra) -> LeftModule {
        LeftModule {
            field: a.field(),
            dim: a.dim(),
            action: (0..a.dim()).map(|i| a.left_mult(&a.basis(i))).collect(),
        }
    }

    pub fn zero(a: &Algebra) -> LeftModule {
        LeftModule {
            field: a.field(),
            dim: 0,
            action: vec![Matrix::zeros(a.field(), 0, 0); a.dim()],
        }
    }

    /// One-dimensional module where `e_i` acts by `chi[i]`.
    pub fn from_character(a: &Algebra, chi: &[Scalar]) -> Result<LeftModule> {
        let f = a.field();
        LeftModule::new(a, 1, chi.iter().map(|s| Matrix::from_fn(f, 1, 1, |_, _| s.clone())).collect())
    }

    /// `M / N` for a submodule `N` spanned by `sub`.
    pub fn quotient(&self, a: &Algebra, sub: &[Vector]) -> Result<LeftModule> {
        let q = crate::exactla::QuotientMap::new(self.field, self.dim, sub);
        for v in q.subspace_basis() {
            for m in &self.action {
                if !q.contains(&m.mul_vec(v)) {
                    return Err(Error::InvalidModule("subspace is not a submodule".into()));
                }
            }
        }
        let d = q.dim();
        let action = self
            .action
            .iter()
            .map(|m| Matrix::from_linear_map(self.field, d, d, |x| q.project(&m.mul_vec(&q.lift_vector(x)))))
            .collect();
        LeftModule::new(a, d, action)
    }

    pub fn direct_sum(&self, a: &Algebra, other: &LeftModule) -> Result<LeftModule> {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| block_diag(self.field, x, y))
            .collect();
        LeftModule::new(a, self.dim + other.dim, action)
    }

    pub fn change_basis(&self, q: &Matrix) -> Result<LeftModule> {
        let inv = q
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        Ok(LeftModule {
            field: self.field,
            dim: self.dim,
            action: self.action.iter().map(|m| inv.mul(m).mul(q)).collect(),
        })
    }

    pub fn transport(&self, p: &Matrix) -> LeftModule {
        LeftModule {
            field: self.field,
            dim: self.dim,
            action: p.columns().iter().map(|c| combine(self.field, self.dim, &self.action, c)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.action, a)
    }

    pub fn act(&self, a: &[Scalar], m: &[Scalar]) -> Vector {
        self.action(a).mul_vec(m)
    }
}

/// A linear map between the underlying spaces of two algebras; `matrix` is `dim(target) x dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub matrix: Matrix,
}

impl AlgebraMap {
    /// Checks unitality and multiplicativity on all basis pairs.
    pub fn verify(&self, source: &Algebra, target: &Algebra) -> Result<()> {
        if self.matrix.rows() != target.dim() || self.matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("algebra map shape".into()));
        }
        if self.matrix.mul_vec(source.unit()) != target.unit() {
            return Err(Error::Verification("map is not unital".into()));
        }
        for i in 0..source.dim() {
            let fi = self.matrix.column(i);
            for j in 0..source.dim() {
                let lhs = self.matrix.mul_vec(source.structure(i, j));
                let rhs = target.mul_vec(&fi, &self.matrix.column(j));
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "map is not multiplicative at (e{i}, e{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_square() && self.matrix.rank() == self.matrix.rows()
    }
}
