//! The non-commutative Kodaira-Spencer map of a module and its kernel.
//!
//! For a left `A`-module `M`, a first-order operator `D` gives the cochain
//! `f(D)(a) = [D, a]|_M = lambda_M(D(a) - a D(1))` with values in the bimodule
//! `End_k(M)`. On a derivation `delta` this is `a -> lambda_M(delta(a))`, and its
//! class in `HH^1(A, End_k(M)) = Ext^1_A(M, M)` is `g(delta)`. The kernel
//! `V_M` of `g` consists of the derivations that lift to `End_k(M)`:
//! `delta` is in `V_M` exactly when some `phi` satisfies
//! `phi(a m) = a phi(m) + delta(a) m`.

use crate::algebra::{derivations, diff_ops_1, end_bimodule, Algebra, Bimodule, LeftModule};
use crate::error::{Error, Result};
use crate::exactla::{coordinates, in_span, vector, Field, Matrix, Scalar, Vector};
use crate::hochschild::{Cochain, Hochschild};

/// `a -> lambda_M(D(a) - a D(1))` as a 1-cochain with values in `End_k(M)`.
pub fn f_cochain(a: &Algebra, m: &LeftModule, d: &Matrix) -> Result<Cochain> {
    m.check_context(a)?;
    let n = a.dim();
    let k = m.dim();
    let field = a.field();
    let d1 = d.mul_vec(a.unit());
    let cols: Vec<Vector> = (0..n)
        .map(|x| {
            let bracket = vector::sub(&d.column(x), &a.mul_vec(&a.basis(x), &d1));
            m.action(&bracket).flatten()
        })
        .collect();
    Cochain::new(1, Matrix::from_columns(field, k * k, &cols))
}

/// The class of a derivation of `A` in `D^1(A) / A`: `D - phi_{D(1)}`.
pub fn derivation_part(a: &Algebra, d: &Matrix) -> Matrix {
    d.sub(&a.left_mult(&d.mul_vec(a.unit())))
}

/// Solves `phi lambda(a) - lambda(a) phi = lambda(delta(a))` for all basis `a`.
pub fn leibniz_witness(a: &Algebra, m: &LeftModule, delta: &Matrix) -> Result<Option<Matrix>> {
    let field = a.field();
    let k = m.dim();
    let n = a.dim();
    let system = Matrix::from_linear_map(field, k * k, n * k * k, |flat| {
        let phi = Matrix::from_flat(field, k, k, flat);
        (0..n)
            .flat_map(|x| {
                let lam = &m.matrices()[x];
                phi.mul(lam).sub(&lam.mul(&phi)).flatten()
            })
            .collect()
    });
    let rhs: Vector = (0..n).flat_map(|x| m.action(&delta.column(x)).flatten()).collect();
    Ok(system
        .solve(&rhs)?
        .map(|v| Matrix::from_flat(field, k, k, &v)))
}

/// Whether `phi(a m) = a phi(m) + delta(a) m` on all basis elements.
pub fn satisfies_leibniz(a: &Algebra, m: &LeftModule, delta: &Matrix, phi: &Matrix) -> bool {
    (0..a.dim()).all(|x| {
        let lam = &m.matrices()[x];
        phi.mul(lam) == lam.mul(phi).add(&m.action(&delta.column(x)))
    })
}

#[derive(Clone, Debug)]
pub struct KSReport {
    pub field: Field,
    pub algebra_dim: usize,
    pub module_dim: usize,
    pub commutative: bool,
    /// Basis of `D^1(A)`, as `n x n` matrices.
    pub d1: Vec<Matrix>,
    /// Basis of `Der_k(A)`.
    pub der: Vec<Matrix>,
    /// `dim HH^1(A, End_k(M))`.
    pub dim_ext1: usize,
    /// Matrix of `g` from the basis of `Der_k(A)` to classes in `HH^1`.
    pub g: Matrix,
    /// Basis of `V_M = ker g`, as derivations.
    pub vm: Vec<Matrix>,
    /// `V_M` in coordinates of `der`.
    pub vm_coords: Vec<Vector>,
    /// A Leibniz witness for each basis vector of `V_M`.
    pub witnesses: Vec<Matrix>,
    /// For commutative `A`: whether `V_M` is closed under `delta -> c delta`.
    pub vm_is_submodule: Option<bool>,
}

impl KSReport {
    pub fn dim_d1(&self) -> usize {
        self.d1.len()
    }

    pub fn dim_der(&self) -> usize {
        self.der.len()
    }

    pub fn dim_vm(&self) -> usize {
        self.vm.len()
    }

    fn check_context(&self, a: &Algebra, m: &LeftModule) -> Result<()> {
        let fresh = a.field() == self.field && a.dim() == self.algebra_dim && m.dim() == self.module_dim;
        if !fresh
            || self
                .vm
                .iter()
                .zip(&self.witnesses)
                .any(|(d, w)| !satisfies_leibniz(a, m, d, w))
        {
            return Err(Error::ContextMismatch("report was computed for a different algebra or module".into()));
        }
        Ok(())
    }
}

pub fn ks_map(a: &Algebra, m: &LeftModule) -> Result<KSReport> {
    m.validate(a)?;
    let field = a.field();
    let n = a.dim();
    let end = end_bimodule(a, m)?;
    let h = Hochschild::new(a, &end)?;
    let hh1 = h.cohomology(1)?;
    let d1 = diff_ops_1(a);
    let der = derivations(a, &Bimodule::regular(a))?;
    if d1.len() != n + der.len() {
        return Err(Error::Verification("dim D^1 - dim A != dim Der".into()));
    }
    let mut g_cols = Vec::with_capacity(der.len());
    for delta in &der {
        let kappa = f_cochain(a, m, delta)?;
        let class = h
            .class_of(&hh1, &kappa)?
            .ok_or_else(|| Error::Verification("f(delta) is not a cocycle".into()))?;
        g_cols.push(class);
    }
    let g = Matrix::from_columns(field, hh1.dim, &g_cols);
    let vm_coords = g.kernel_basis();
    let vm: Vec<Matrix> = vm_coords.iter().map(|c| combine(field, n, &der, c)).collect();
    let witnesses = vm
        .iter()
        .map(|delta| {
            leibniz_witness(a, m, delta)?
                .ok_or_else(|| Error::Verification("derivation in ker g has no Leibniz witness".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let commutative = a.is_commutative();
    let vm_is_submodule = commutative.then(|| {
        let flat: Vec<Vector> = vm.iter().map(Matrix::flatten).collect();
        vm.iter().all(|delta| {
            (0..n).all(|c| in_span(field, &flat, &a.left_mult(&a.basis(c)).mul(delta).flatten()))
        })
    });
    Ok(KSReport {
        field,
        algebra_dim: n,
        module_dim: m.dim(),
        commutative,
        d1,
        der,
        dim_ext1: hh1.dim,
        g,
        vm,
        vm_coords,
        witnesses,
        vm_is_submodule,
    })
}

fn combine(field: Field, n: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, n, n);
    for (mat, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&mat.scale(c));
        }
    }
    out
}

/// Result of checking that `V_M` is closed under the commutator bracket.
#[derive(Clone, Debug)]
pub struct BracketClosure {
    pub closed: bool,
    /// `[delta_i, delta_j]` lies in `V_M` for every pair.
    pub in_kernel: bool,
    /// `[nabla(delta_i), nabla(delta_j)]` is a Leibniz witness for `[delta_i, delta_j]`.
    pub witnesses_valid: bool,
    pub first_failure: Option<(usize, usize)>,
}

pub fn bracket_closure(a: &Algebra, m: &LeftModule, report: &KSReport) -> Result<BracketClosure> {
    a.require_commutative()?;
    report.check_context(a, m)?;
    let field = a.field();
    let flat: Vec<Vector> = report.vm.iter().map(Matrix::flatten).collect();
    let mut in_kernel = true;
    let mut witnesses_valid = true;
    let mut first_failure = None;
    for i in 0..report.vm.len() {
        for j in i + 1..report.vm.len() {
            let (d, e) = (&report.vm[i], &report.vm[j]);
            let bracket = d.mul(e).sub(&e.mul(d));
            let (p, q) = (&report.witnesses[i], &report.witnesses[j]);
            let witness = p.mul(q).sub(&q.mul(p));
            let inside = in_span(field, &flat, &bracket.flatten());
            let valid = satisfies_leibniz(a, m, &bracket, &witness);
            in_kernel &= inside;
            witnesses_valid &= valid;
            if (!inside || !valid) && first_failure.is_none() {
                first_failure = Some((i, j));
            }
        }
    }
    Ok(BracketClosure {
        closed: in_kernel && witnesses_valid,
        in_kernel,
        witnesses_valid,
        first_failure,
    })
}

/// A `k`-linear `nabla : V_M -> End_k(M)` with the Leibniz rule for every
/// basis vector, from one joint linear solve. `None` if the system has no solution.
pub fn simultaneous_connection(a: &Algebra, m: &LeftModule, report: &KSReport) -> Result<Option<Vec<Matrix>>> {
    report.check_context(a, m)?;
    joint_solve(a, m, report, false)
}

/// Joint solve for `nabla(delta_1), ..., nabla(delta_r)`, optionally with
/// `nabla(c delta_i) = c nabla(delta_i)` for every basis `c` of `A`.
fn joint_solve(a: &Algebra, m: &LeftModule, report: &KSReport, a_linear: bool) -> Result<Option<Vec<Matrix>>> {
    let field = a.field();
    let (n, k, r) = (a.dim(), m.dim(), report.vm.len());
    if r == 0 {
        return Ok(Some(Vec::new()));
    }
    let block = k * k;
    let scalings = if a_linear { vm_scalings(a, report)? } else { Vec::new() };
    let split = |flat: &Vector| -> Vec<Matrix> {
        (0..r)
            .map(|i| Matrix::from_flat(field, k, k, &flat[i * block..(i + 1) * block]))
            .collect()
    };
    let rows = r * n * block + scalings.len() * block;
    let system = Matrix::from_linear_map(field, r * block, rows, |flat| {
        let nabla = split(flat);
        let mut out = Vec::with_capacity(rows);
        for phi in &nabla {
            for x in 0..n {
                let lam = &m.matrices()[x];
                out.extend(phi.mul(lam).sub(&lam.mul(phi)).flatten());
            }
        }
        for (c, i, coords) in &scalings {
            let lhs = combine_blocks(field, k, &nabla, coords);
            out.extend(lhs.sub(&m.matrices()[*c].mul(&nabla[*i])).flatten());
        }
        out
    });
    let mut rhs = Vec::with_capacity(rows);
    for delta in &report.vm {
        for x in 0..n {
            rhs.extend(m.action(&delta.column(x)).flatten());
        }
    }
    rhs.extend(std::iter::repeat(field.zero()).take(scalings.len() * block));
    let Some(sol) = system.solve(&rhs)? else {
        return Ok(None);
    };
    let nabla = split(&sol);
    for (delta, phi) in report.vm.iter().zip(&nabla) {
        if !satisfies_leibniz(a, m, delta, phi) {
            return Err(Error::Verification("joint connection fails the Leibniz rule".into()));
        }
    }
    Ok(Some(nabla))
}

fn combine_blocks(field: Field, k: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, k, k);
    for (mat, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&mat.scale(c));
        }
    }
    out
}

/// For each basis `c` of `A` and basis `delta_i` of `V_M`: the `V_M`-coordinates of `c delta_i`.
fn vm_scalings(a: &Algebra, report: &KSReport) -> Result<Vec<(usize, usize, Vector)>> {
    let field = a.field();
    let flat: Vec<Vector> = report.vm.iter().map(Matrix::flatten).collect();
    let mut out = Vec::new();
    for c in 0..a.dim() {
        let lc = a.left_mult(&a.basis(c));
        for (i, delta) in report.vm.iter().enumerate() {
            let coords = coordinates(field, &flat, &lc.mul(delta).flatten())
                .ok_or_else(|| Error::Verification("V_M is not closed under the A-action".into()))?;
            out.push((c, i, coords));
        }
    }
    Ok(out)
}

/// Checks on the twisted module `End_A(M) (+) V_M` with
/// `a (phi, delta) = (a phi + L(a, delta), a delta)` and `L(a, delta) = a nabla(delta) - nabla(a delta)`.
#[derive(Clone, Debug)]
pub struct TwistCheck {
    /// The chosen `nabla` on the basis of `V_M`.
    pub connection: Vec<Matrix>,
    /// `L(e_c, delta_i)`, indexed `[c][i]`.
    pub l_values: Vec<Vec<Matrix>>,
    /// Every `L(a, delta)` commutes with the action of `A`.
    pub a_linear: bool,
    /// `L(ab, delta) = a L(b, delta) + L(a, b delta)` on all basis triples.
    pub cocycle_law: bool,
    /// The twisted action is unital and satisfies `(ab)x = a(bx)` on all basis elements.
    pub twisted_module: bool,
    pub dim_end_a: usize,
    /// An `A`-linear `nabla` with the Leibniz rule, if one exists.
    pub splitting: Option<Vec<Matrix>>,
}

impl TwistCheck {
    pub fn splitting_exists(&self) -> bool {
        self.splitting.is_some()
    }

    pub fn passed(&self) -> bool {
        self.a_linear && self.cocycle_law && self.twisted_module
    }
}

pub fn twist_module_check(a: &Algebra, m: &LeftModule, report: &KSReport) -> Result<TwistCheck> {
    twist_check_with(a, m, report, &report.witnesses.clone())
}

/// As [`twist_module_check`] with a caller-chosen `nabla` on the basis of `V_M`.
pub fn twist_check_with(a: &Algebra, m: &LeftModule, report: &KSReport, connection: &[Matrix]) -> Result<TwistCheck> {
    a.require_commutative()?;
    report.check_context(a, m)?;
    let field = a.field();
    let (n, k, r) = (a.dim(), m.dim(), report.vm.len());
    if connection.len() != r {
        return Err(Error::DimensionMismatch(format!("{} connection matrices for dim V_M = {r}", connection.len())));
    }
    for (delta, phi) in report.vm.iter().zip(connection) {
        if !satisfies_leibniz(a, m, delta, phi) {
            return Err(Error::InvalidDerivation("chosen connection fails the Leibniz rule".into()));
        }
    }
    let scalings = vm_scalings(a, report)?;
    let coords_of = |c: usize, i: usize| -> &Vector { &scalings[c * r + i].2 };
    let nabla = |coords: &[Scalar]| combine_blocks(field, k, connection, coords);
    // L(x, delta) for x in A and delta in V_M, both in coordinates
    let l_of = |x: &[Scalar], d: &[Scalar]| -> Matrix {
        let mut scaled = vector::zero(field, r);
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (i, di) in d.iter().enumerate() {
                if !di.is_zero() {
                    vector::axpy(&mut scaled, &(xc * di), coords_of(c, i));
                }
            }
        }
        m.action(x).mul(&nabla(d)).sub(&nabla(&scaled))
    };
    let scale_vm = |x: &[Scalar], d: &[Scalar]| -> Vector {
        let mut scaled = vector::zero(field, r);
        for (c, xc) in x.iter().enumerate() {
            for (i, di) in d.iter().enumerate() {
                if !xc.is_zero() && !di.is_zero() {
                    vector::axpy(&mut scaled, &(xc * di), coords_of(c, i));
                }
            }
        }
        scaled
    };
    let l_values: Vec<Vec<Matrix>> = (0..n)
        .map(|c| (0..r).map(|i| l_of(&a.basis(c), &vector::unit(field, r, i))).collect())
        .collect();
    let a_linear = l_values
        .iter()
        .flatten()
        .all(|l| m.matrices().iter().all(|lam| l.mul(lam) == lam.mul(l)));
    let mut cocycle_law = true;
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (a.basis(x), a.basis(y));
            let xy = a.structure(x, y).to_vec();
            for i in 0..r {
                let d = vector::unit(field, r, i);
                let lhs = l_of(&xy, &d);
                let rhs = m.action(&ex).mul(&l_of(&ey, &d)).add(&l_of(&ex, &scale_vm(&ey, &d)));
                cocycle_law &= lhs == rhs;
            }
        }
    }
    let end_a = end_a_basis(a, m);
    let dim_end_a = end_a.len();
    let twisted_module = a_linear && {
        // elements (phi, d) with phi in End_A(M) given in End_k(M) coordinates
        let act = |x: &[Scalar], (phi, d): &(Matrix, Vector)| -> (Matrix, Vector) {
            (m.action(x).mul(phi).add(&l_of(x, d)), scale_vm(x, d))
        };
        let mut elements: Vec<(Matrix, Vector)> =
            end_a.iter().map(|p| (p.clone(), vector::zero(field, r))).collect();
        elements.extend((0..r).map(|i| (Matrix::zeros(field, k, k), vector::unit(field, r, i))));
        let unital = elements.iter().all(|e| act(a.unit(), e) == *e);
        let stays_in_end_a = elements.iter().all(|e| {
            (0..n).all(|x| {
                let (phi, _) = act(&a.basis(x), e);
                m.matrices().iter().all(|lam| phi.mul(lam) == lam.mul(&phi))
            })
        });
        let associative = (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = a.structure(x, y).to_vec();
                elements
                    .iter()
                    .all(|e| act(&xy, e) == act(&a.basis(x), &act(&a.basis(y), e)))
            })
        });
        unital && stays_in_end_a && associative
    };
    let splitting = joint_solve(a, m, report, true)?;
    Ok(TwistCheck {
        connection: connection.to_vec(),
        l_values,
        a_linear,
        cocycle_law,
        twisted_module,
        dim_end_a,
        splitting,
    })
}

/// Basis of `End_A(M)`, the endomorphisms commuting with the action.
pub fn end_a_basis(a: &Algebra, m: &LeftModule) -> Vec<Matrix> {
    let field = a.field();
    let k = m.dim();
    let n = a.dim();
    let system = Matrix::from_linear_map(field, k * k, n * k * k, |flat| {
        let phi = Matrix::from_flat(field, k, k, flat);
        m.matrices().iter().flat_map(|lam| phi.mul(lam).sub(&lam.mul(&phi)).flatten()).collect()
    });
    system.kernel_basis().iter().map(|v| Matrix::from_flat(field, k, k, v)).collect()
}
