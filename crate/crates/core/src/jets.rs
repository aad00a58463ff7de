//! First-order jet modules, Kähler differentials and connections.

use crate::algebra::{derivations, kron, Algebra, Bimodule, LeftModule};
use crate::error::{Error, Result};
use crate::exactla::{coordinates, span_basis, vector, Matrix, QuotientMap, Scalar, Vector};
use crate::extensions::{build_extension, ExtensionAlgebra};
use crate::hochschild::{Cochain, Hochschild};

/// `F (x)_A E` as the quotient of `F (x)_k E` (basis `f_r (x) e_g` at index
/// `r * dim E + g`) by the span of `(u a) (x) e - u (x) (a e)`.
#[derive(Clone, Debug)]
pub struct TensorOverA {
    left_dim: usize,
    right_dim: usize,
    quotient: QuotientMap,
}

pub fn tensor_over_a(a: &Algebra, f: &Bimodule, e: &LeftModule) -> Result<TensorOverA> {
    f.check_context(a)?;
    e.check_context(a)?;
    let (m, k) = (f.dim(), e.dim());
    let field = a.field();
    let mut relations = Vec::with_capacity(m * k * a.dim());
    for r in 0..m {
        let u = vector::unit(field, m, r);
        for i in 0..a.dim() {
            let ua = f.right_matrices()[i].mul_vec(&u);
            for g in 0..k {
                let ae = e.matrices()[i].column(g);
                relations.push(vector::sub(
                    &kron(&ua, &vector::unit(field, k, g)),
                    &kron(&u, &ae),
                ));
            }
        }
    }
    Ok(TensorOverA {
        left_dim: m,
        right_dim: k,
        quotient: QuotientMap::new(field, m * k, &relations),
    })
}

impl TensorOverA {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// The class of `u (x) e`.
    pub fn project(&self, u: &[Scalar], e: &[Scalar]) -> Vector {
        self.quotient.project(&kron(u, e))
    }

    pub fn project_vector(&self, v: &[Scalar]) -> Vector {
        self.quotient.project(v)
    }

    /// The `dim x (dim F * dim E)` projection matrix.
    pub fn projection(&self) -> Matrix {
        self.quotient.matrix()
    }

    pub fn quotient(&self) -> &QuotientMap {
        &self.quotient
    }

    /// The map induced on the quotient by `l (x) id` for an `A`-linear map `l` of `F`
    /// (commuting with the right action).
    pub fn induced_left(&self, l: &Matrix) -> Matrix {
        let field = l.field();
        let k = self.right_dim;
        let cols: Vec<Vector> = (0..self.dim())
            .map(|j| {
                let w = self.quotient.lift(j);
                let mut image = vector::zero(field, self.left_dim * k);
                for r in 0..self.left_dim {
                    for g in 0..k {
                        let c = &w[r * k + g];
                        if c.is_zero() {
                            continue;
                        }
                        let lu = l.column(r);
                        vector::axpy(&mut image, c, &kron(&lu, &vector::unit(field, k, g)));
                    }
                }
                self.quotient.project(&image)
            })
            .collect();
        Matrix::from_columns(field, self.dim(), &cols)
    }
}

/// Basis of `Der_k(A, I)`.
pub fn derivation_space(a: &Algebra, i: &Bimodule) -> Result<Vec<Matrix>> {
    derivations(a, i)
}

fn check_derivation(a: &Algebra, i: &Bimodule, d: &Matrix) -> Result<()> {
    if d.rows() != i.dim() || d.cols() != a.dim() {
        return Err(Error::InvalidDerivation(format!(
            "derivation is {}x{}, expected {}x{}",
            d.rows(),
            d.cols(),
            i.dim(),
            a.dim()
        )));
    }
    let h = Hochschild::new(a, i)?;
    if !h.differential(&Cochain::new(1, d.clone())?)?.is_zero() {
        return Err(Error::InvalidDerivation("Leibniz rule fails".into()));
    }
    Ok(())
}

/// The candidate `B^C`-action on `Pr^1_I(E) = I (x)_A E (+) E`,
/// `(u, x)(w (x) e, f) = (u (x) f + xw (x) e + d(x) (x) f, xf)`.
#[derive(Clone, Debug)]
pub struct JetModule {
    pub tensor: TensorOverA,
    pub extension: ExtensionAlgebra,
    pub derivation: Matrix,
    /// Action matrices of the basis of `B^C` on `Pr^1_I(E)`, tensor part first.
    pub actions: Vec<Matrix>,
    /// `(ab)i = a(bi)` on all basis elements; the first failing pair otherwise.
    pub associative: bool,
    pub associativity_failure: Option<(usize, usize)>,
    /// `C(x, y) (x) f = 0` in `I (x)_A E` for all basis `x, y, f`.
    pub criterion: bool,
    /// The unit of `B^C` acts as the identity.
    pub unital: bool,
}

impl JetModule {
    pub fn dim(&self) -> usize {
        self.tensor.dim() + self.tensor.right_dim
    }

    /// Whether the action makes `Pr^1_I(E)` a unital left `B^C`-module.
    pub fn is_module(&self) -> bool {
        self.associative && self.unital
    }
}

pub fn jet_action(a: &Algebra, i: &Bimodule, e: &LeftModule, c: &Cochain, d: &Matrix) -> Result<JetModule> {
    check_derivation(a, i, d)?;
    let ext = build_extension(a, i, c)?;
    let tensor = tensor_over_a(a, i, e)?;
    let field = a.field();
    let (m, n, k, t) = (i.dim(), a.dim(), e.dim(), tensor.dim());
    let dim = t + k;
    let block = |tl: &Matrix, tr: &Matrix, br: &Matrix| {
        Matrix::from_fn(field, dim, dim, |r, col| match (r < t, col < t) {
            (true, true) => tl.get(r, col).clone(),
            (true, false) => tr.get(r, col - t).clone(),
            (false, true) => field.zero(),
            (false, false) => br.get(r - t, col - t).clone(),
        })
    };
    let tensor_with = |u: &[Scalar]| {
        let cols: Vec<Vector> = (0..k).map(|g| tensor.project(u, &vector::unit(field, k, g))).collect();
        Matrix::from_columns(field, t, &cols)
    };
    let mut actions = Vec::with_capacity(m + n);
    for r in 0..m {
        let zero_t = Matrix::zeros(field, t, t);
        let zero_k = Matrix::zeros(field, k, k);
        actions.push(block(&zero_t, &tensor_with(&vector::unit(field, m, r)), &zero_k));
    }
    for x in 0..n {
        let lam = tensor.induced_left(&i.left_matrices()[x]);
        actions.push(block(&lam, &tensor_with(&d.column(x)), &e.matrices()[x]));
    }
    let b = ext.algebra();
    let act = |v: &[Scalar]| {
        let mut out = Matrix::zeros(field, dim, dim);
        for (mat, c) in actions.iter().zip(v) {
            if !c.is_zero() {
                out = out.add(&mat.scale(c));
            }
        }
        out
    };
    let mut associativity_failure = None;
    'outer: for x in 0..m + n {
        for y in 0..m + n {
            if act(b.structure(x, y)) != actions[x].mul(&actions[y]) {
                associativity_failure = Some((x, y));
                break 'outer;
            }
        }
    }
    let unital = act(b.unit()) == Matrix::identity(field, dim);
    let mut criterion = true;
    'crit: for x in 0..n {
        for y in 0..n {
            let value = c.eval(&[&a.basis(x), &a.basis(y)]);
            for g in 0..k {
                if !vector::is_zero(&tensor.project(&value, &vector::unit(field, k, g))) {
                    criterion = false;
                    break 'crit;
                }
            }
        }
    }
    Ok(JetModule {
        tensor,
        extension: ext,
        derivation: d.clone(),
        actions,
        associative: associativity_failure.is_none(),
        associativity_failure,
        criterion,
        unital,
    })
}

/// `Omega^1_A = I / I^2` and `Pr^1_A = A (x) A / I^2` for the diagonal ideal `I = ker(mu)` of a commutative `A`.
#[derive(Clone, Debug)]
pub struct KaehlerData {
    /// `A (x) A`, basis `e_i (x) e_j` at index `i * dim A + j`.
    pub tensor_square: Algebra,
    /// Basis of the diagonal ideal in `A (x) A`.
    pub diagonal: Vec<Vector>,
    /// Basis of the square of the diagonal ideal.
    pub diagonal_squared: Vec<Vector>,
    /// `Pr^1_A` with the quotient map from `A (x) A`.
    pub jets: Algebra,
    pub jets_map: QuotientMap,
    /// Basis of `Omega^1_A` inside `Pr^1_A`.
    pub omega_basis: Vec<Vector>,
    /// `Omega^1_A` as a symmetric `A`-bimodule.
    pub omega: Bimodule,
    /// Universal derivation `d(a) = 1 (x) a - a (x) 1`, a `dim Omega x dim A` matrix.
    pub universal: Matrix,
    /// `Pr^1_A -> A` induced by multiplication.
    pub augmentation: Matrix,
    /// `A -> Pr^1_A`, `a -> a (x) 1`.
    pub splitting: Matrix,
    /// `Pr^1_A -> Omega^1_A`, `xi -> xi - splitting(augmentation(xi))`.
    pub retraction: Matrix,
}

impl KaehlerData {
    pub fn omega_dim(&self) -> usize {
        self.omega_basis.len()
    }

    /// The inclusion `Omega^1_A -> Pr^1_A`.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.jets.field(), self.jets.dim(), &self.omega_basis)
    }

    /// `(omega, a)` coordinates of an element of `Pr^1_A`.
    pub fn split(&self, xi: &[Scalar]) -> (Vector, Vector) {
        (self.retraction.mul_vec(xi), self.augmentation.mul_vec(xi))
    }
}

pub fn kaehler(a: &Algebra) -> Result<KaehlerData> {
    a.require_commutative()?;
    let field = a.field();
    let n = a.dim();
    let tensor_square = a.tensor(a)?;
    let mu = Matrix::from_columns(
        field,
        n,
        &(0..n * n).map(|t| a.structure(t / n, t % n).to_vec()).collect::<Vec<_>>(),
    );
    let diagonal = mu.kernel_basis();
    let mut products = Vec::with_capacity(diagonal.len() * diagonal.len());
    for u in &diagonal {
        for v in &diagonal {
            products.push(tensor_square.mul_vec(u, v));
        }
    }
    let diagonal_squared = span_basis(field, n * n, &products);
    let (jets, jets_map) = tensor_square.quotient(&diagonal_squared)?;
    let projected: Vec<Vector> = diagonal.iter().map(|v| jets_map.project(v)).collect();
    let omega_basis = span_basis(field, jets.dim(), &projected);
    if omega_basis.len() + diagonal_squared.len() != diagonal.len() {
        return Err(Error::Verification("dim Omega != dim I - dim I^2".into()));
    }
    let one = a.unit();
    let lift_left = |x: &[Scalar]| jets_map.project(&kron(x, one));
    let lift_right = |x: &[Scalar]| jets_map.project(&kron(one, x));
    let omega_coords = |xi: &[Scalar]| {
        coordinates(field, &omega_basis, xi).ok_or_else(|| Error::Verification("element is not in Omega^1".into()))
    };
    let action = |lift: &dyn Fn(&[Scalar]) -> Vector, x: usize| -> Result<Matrix> {
        let ax = lift(&a.basis(x));
        let cols = omega_basis
            .iter()
            .map(|w| omega_coords(&jets.mul_vec(&ax, w)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, omega_basis.len(), &cols))
    };
    let left = (0..n).map(|x| action(&lift_left, x)).collect::<Result<Vec<_>>>()?;
    let right = (0..n).map(|x| action(&lift_right, x)).collect::<Result<Vec<_>>>()?;
    let omega = Bimodule::new(a, omega_basis.len(), left, right)?;
    if !omega.is_symmetric() {
        return Err(Error::Verification("a (x) 1 and 1 (x) a act differently on Omega^1".into()));
    }
    let universal_cols = (0..n)
        .map(|x| {
            let e = a.basis(x);
            omega_coords(&vector::sub(&lift_right(&e), &lift_left(&e)))
        })
        .collect::<Result<Vec<_>>>()?;
    let universal = Matrix::from_columns(field, omega_basis.len(), &universal_cols);
    check_derivation(a, &omega, &universal)
        .map_err(|e| Error::Verification(format!("universal derivation: {e}")))?;

    let p = jets.dim();
    let augmentation = Matrix::from_linear_map(field, p, n, |xi| mu.mul_vec(&jets_map.lift_vector(xi)));
    let splitting = Matrix::from_linear_map(field, n, p, |x| lift_left(x));
    let retraction_cols = (0..p)
        .map(|j| {
            let xi = vector::unit(field, p, j);
            omega_coords(&vector::sub(&xi, &splitting.mul_vec(&augmentation.mul_vec(&xi))))
        })
        .collect::<Result<Vec<_>>>()?;
    let retraction = Matrix::from_columns(field, omega_basis.len(), &retraction_cols);
    let data = KaehlerData {
        tensor_square,
        diagonal,
        diagonal_squared,
        jets,
        jets_map,
        omega_basis,
        omega,
        universal,
        augmentation,
        splitting,
        retraction,
    };
    verify_splitting(&data)?;
    Ok(data)
}

/// Checks exactness of `0 -> Omega -> Pr^1 -> A -> 0`, that the retraction
/// splits the inclusion, and that `Pr^1 = Omega (+) A` has the product
/// `(omega, a)(eta, b) = (omega b + a eta, ab)`.
pub fn verify_splitting(k: &KaehlerData) -> Result<()> {
    let field = k.jets.field();
    let n = k.splitting.cols();
    let w = k.omega_dim();
    let incl = k.inclusion();
    if k.retraction.mul(&incl) != Matrix::identity(field, w) {
        return Err(Error::Verification("retraction o inclusion != id".into()));
    }
    if !k.augmentation.mul(&incl).is_zero() {
        return Err(Error::Verification("augmentation o inclusion != 0".into()));
    }
    if k.augmentation.mul(&k.splitting) != Matrix::identity(field, n) {
        return Err(Error::Verification("augmentation o splitting != id".into()));
    }
    if k.jets.dim() != w + n {
        return Err(Error::Verification("dim Pr^1 != dim Omega + dim A".into()));
    }
    for x in 0..k.jets.dim() {
        let (omega, a) = k.split(&k.jets.basis(x));
        for y in 0..k.jets.dim() {
            let (eta, b) = k.split(&k.jets.basis(y));
            let (lhs_w, lhs_a) = k.split(k.jets.structure(x, y));
            let rhs_w = vector::add(&k.omega.act_right(&omega, &b), &k.omega.act_left(&a, &eta));
            let base = mul_in(&k.augmentation, &k.splitting, &k.jets, &a, &b);
            if lhs_w != rhs_w || lhs_a != base {
                return Err(Error::Verification(format!("product formula fails on Pr^1 basis pair ({x}, {y})")));
            }
        }
    }
    Ok(())
}

fn mul_in(aug: &Matrix, split: &Matrix, jets: &Algebra, a: &[Scalar], b: &[Scalar]) -> Vector {
    aug.mul_vec(&jets.mul_vec(&split.mul_vec(a), &split.mul_vec(b)))
}

/// A connection `nabla : E -> F (x)_A E` with `nabla(a e) = a nabla(e) + d(a) (x) e`.
#[derive(Clone, Debug)]
pub struct Connection {
    pub tensor: TensorOverA,
    /// `dim(F (x)_A E) x dim E`.
    pub matrix: Matrix,
}

/// Solves for a connection on `e` with values in `f (x)_A e` relative to the derivation `d : A -> f`.
pub fn connection_exists(a: &Algebra, e: &LeftModule, f: &Bimodule, d: &Matrix) -> Result<Option<Connection>> {
    check_derivation(a, f, d)?;
    let tensor = tensor_over_a(a, f, e)?;
    let field = a.field();
    let (n, k, t) = (a.dim(), e.dim(), tensor.dim());
    let lefts: Vec<Matrix> = (0..n).map(|x| tensor.induced_left(&f.left_matrices()[x])).collect();
    let defects: Vec<Matrix> = (0..n)
        .map(|x| {
            let cols: Vec<Vector> = (0..k)
                .map(|g| tensor.project(&d.column(x), &vector::unit(field, k, g)))
                .collect();
            Matrix::from_columns(field, t, &cols)
        })
        .collect();
    let system = Matrix::from_linear_map(field, t * k, n * t * k, |flat| {
        let nabla = Matrix::from_flat(field, t, k, flat);
        (0..n)
            .flat_map(|x| nabla.mul(&e.matrices()[x]).sub(&lefts[x].mul(&nabla)).flatten())
            .collect()
    });
    let rhs: Vector = defects.iter().flat_map(Matrix::flatten).collect();
    let Some(sol) = system.solve(&rhs)? else {
        return Ok(None);
    };
    let matrix = Matrix::from_flat(field, t, k, &sol);
    for x in 0..n {
        let lhs = matrix.mul(&e.matrices()[x]);
        let rhs = lefts[x].mul(&matrix).add(&defects[x]);
        if lhs != rhs {
            return Err(Error::Verification(format!("connection fails the Leibniz rule at e{x}")));
        }
    }
    Ok(Some(Connection { tensor, matrix }))
}

/// The derivation used by default for jets: the first basis derivation, or zero.
pub fn default_derivation(a: &Algebra, i: &Bimodule) -> Result<Matrix> {
    Ok(derivation_space(a, i)?
        .into_iter()
        .next()
        .unwrap_or_else(|| Matrix::zeros(a.field(), i.dim(), a.dim())))
}
