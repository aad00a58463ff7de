use crate::algebra::{is_central, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::{vector, Scalar, Vector};
use crate::hochschild::{tensor_index, Cochain, Hochschild};

fn check_degree_two(h: &Hochschild, c: &Cochain) -> Result<()> {
    if c.degree() != 2 {
        return Err(Error::DegreeOutOfRange(c.degree()));
    }
    h.check(c)
}

/// Value of `x C(y,z) - C(xy,z) + C(x,yz) - C(x,y) z` on basis elements.
fn defect(a: &Algebra, i: &Bimodule, c: &Cochain, x: usize, y: usize, z: usize) -> Vector {
    let n = a.dim();
    let f = a.field();
    let mut out = i.left_matrices()[x].mul_vec(&c.value(tensor_index(&[y, z], n)));
    for (l, coeff) in a.structure(x, y).iter().enumerate() {
        if !coeff.is_zero() {
            vector::axpy(&mut out, &-coeff, &c.value(tensor_index(&[l, z], n)));
        }
    }
    for (l, coeff) in a.structure(y, z).iter().enumerate() {
        if !coeff.is_zero() {
            vector::axpy(&mut out, coeff, &c.value(tensor_index(&[x, l], n)));
        }
    }
    let last = i.right_matrices()[z].mul_vec(&c.value(tensor_index(&[x, y], n)));
    vector::axpy(&mut out, &-f.one(), &last);
    out
}

/// First basis triple `(x, y, z)`, in lexicographic order, at which the cocycle
/// identity `x C(y,z) - C(xy,z) + C(x,yz) - C(x,y) z = 0` fails, or `None`.
pub fn cocycle_violation(a: &Algebra, i: &Bimodule, c: &Cochain) -> Result<Option<(usize, usize, usize)>> {
    let h = Hochschild::new(a, i)?;
    check_degree_two(&h, c)?;
    let n = a.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !vector::is_zero(&defect(a, i, c, x, y, z)) {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_cocycle(a: &Algebra, i: &Bimodule, c: &Cochain) -> Result<bool> {
    Ok(cocycle_violation(a, i, c)?.is_none())
}

/// The cocycle space `exan_k(A, I) = ker d^2`, the inner cocycles `im d^1`, and `HH^2`.
#[derive(Clone, Debug)]
pub struct Exan {
    pub cocycles: Vec<Cochain>,
    pub inner: Vec<Cochain>,
    /// Cocycles whose classes form a basis of `HH^2(A, I)`.
    pub representatives: Vec<Cochain>,
    pub dim_hh2: usize,
}

pub fn exan_basis(a: &Algebra, i: &Bimodule) -> Result<Exan> {
    let h = Hochschild::new(a, i)?;
    let hh = h.cohomology(2)?;
    if hh.cocycles.len() != hh.coboundaries.len() + hh.dim {
        return Err(Error::Verification("dim exan != dim inner + dim HH^2".into()));
    }
    Ok(Exan {
        cocycles: hh.cocycles,
        inner: hh.coboundaries,
        representatives: hh.representatives,
        dim_hh2: hh.dim,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    /// Equality of cocycles: the extensions are identified by `f(u, x) = (u, x)`.
    Strict,
    /// Equality modulo inner cocycles `C^phi = d^1 phi`.
    Inner,
}

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    /// For inner equivalence, a `phi : A -> I` with `d^1 phi = c1 - c2`.
    pub witness: Option<Cochain>,
}

pub fn equiv(a: &Algebra, i: &Bimodule, c1: &Cochain, c2: &Cochain, mode: EquivMode) -> Result<Equivalence> {
    let h = Hochschild::new(a, i)?;
    check_degree_two(&h, c1)?;
    check_degree_two(&h, c2)?;
    match mode {
        EquivMode::Strict => Ok(Equivalence {
            equivalent: c1 == c2,
            witness: None,
        }),
        EquivMode::Inner => {
            let d1 = h.differential_matrix(1)?;
            let diff = c1.sub(c2);
            match d1.solve(&diff.to_vector())? {
                Some(x) => {
                    let phi = h.cochain_from_vector(1, &x);
                    if h.differential(&phi)? != diff {
                        return Err(Error::Verification("inner witness does not reproduce c1 - c2".into()));
                    }
                    Ok(Equivalence {
                        equivalent: true,
                        witness: Some(phi),
                    })
                }
                None => Ok(Equivalence {
                    equivalent: false,
                    witness: None,
                }),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The action of a central element on a cocycle: `(zC)(x,y) = z C(x,y)` or `(Cz)(x,y) = C(x,y) z`.
pub fn caction(a: &Algebra, i: &Bimodule, z: &[Scalar], c: &Cochain, side: Side) -> Result<Cochain> {
    if z.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "element of length {} in an algebra of dimension {}",
            z.len(),
            a.dim()
        )));
    }
    if !is_central(a, z) {
        return Err(Error::NotCentral);
    }
    if let Some(t) = cocycle_violation(a, i, c)? {
        return Err(Error::NotCocycle(t));
    }
    let action = match side {
        Side::Left => i.left_action(z),
        Side::Right => i.right_action(z),
    };
    let out = c.map_values(&action);
    if let Some(t) = cocycle_violation(a, i, &out)? {
        return Err(Error::Verification(format!("central action left exan at {t:?}")));
    }
    Ok(out)
}
