use super::cocycles::cocycle_violation;
use crate::algebra::{Algebra, AlgebraMap, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::{span_basis, vector, Field, Matrix, Scalar, Vector};
use crate::hochschild::{tensor_index, Cochain, Hochschild};

/// The table of `I (+)^C A` without checking that `C` is a cocycle.
///
/// Basis: `f_0, ..., f_{m-1}` spanning `I`, then `e_0, ..., e_{n-1}` from `A`.
/// The product is `(u, x)(v, y) = (uy + xv + C(x, y), xy)` and the unit is
/// `(-C(1, 1), 1)`, which is a two-sided unit whenever `C` is a cocycle since
/// the cocycle identity forces `C(1, z) = C(1, 1) z` and `C(x, 1) = x C(1, 1)`.
pub fn twisted_algebra_unchecked(a: &Algebra, i: &Bimodule, c: &Cochain) -> Result<Algebra> {
    let h = Hochschild::new(a, i)?;
    if c.degree() != 2 {
        return Err(Error::DegreeOutOfRange(c.degree()));
    }
    h.check(c)?;
    let (m, n) = (i.dim(), a.dim());
    let f = a.field();
    let dim = m + n;
    let mut product = |x: usize, y: usize| {
        let mut v = vector::zero(f, dim);
        match (x < m, y < m) {
            (true, true) => {}
            (true, false) => v[..m].clone_from_slice(&i.right_matrices()[y - m].column(x)),
            (false, true) => v[..m].clone_from_slice(&i.left_matrices()[x - m].column(y)),
            (false, false) => {
                v[..m].clone_from_slice(&c.value(tensor_index(&[x - m, y - m], n)));
                v[m..].clone_from_slice(a.structure(x - m, y - m));
            }
        }
        v
    };
    let mul = Algebra::table(dim, &mut product);
    let one = a.unit();
    let mut unit = vector::scale(&c.eval(&[one, one]), &-f.one());
    unit.extend(one.iter().cloned());
    let mut names: Vec<String> = (0..m).map(|r| format!("f{r}")).collect();
    match a.basis_names() {
        Some(an) => names.extend(an.iter().cloned()),
        None => names.extend((0..n).map(|j| format!("e{j}"))),
    }
    Algebra::new_unchecked(f, dim, mul, unit, Some(names))
}

/// `B^C = I (+)^C A` for a cocycle `C`; refuses non-cocycles with the first violating triple.
pub fn build_extension(a: &Algebra, i: &Bimodule, c: &Cochain) -> Result<ExtensionAlgebra> {
    if let Some(t) = cocycle_violation(a, i, c)? {
        return Err(Error::NotCocycle(t));
    }
    let algebra = twisted_algebra_unchecked(a, i, c)?;
    let report = algebra.validate();
    if !report.is_valid() {
        return Err(Error::Verification(format!(
            "twisted product of a cocycle is not a unital associative algebra: {}",
            report.summary()
        )));
    }
    let (m, n) = (i.dim(), a.dim());
    let f = a.field();
    ExtensionAlgebra::new(
        algebra,
        m,
        canonical_injection(f, m, n),
        canonical_projection(f, m, n),
        Some(c.clone()),
    )
}

fn canonical_injection(f: Field, m: usize, n: usize) -> Matrix {
    Matrix::from_fn(f, m + n, m, |r, c| if r == c { f.one() } else { f.zero() })
}

fn canonical_projection(f: Field, m: usize, n: usize) -> Matrix {
    Matrix::from_fn(f, n, m + n, |r, c| if c == m + r { f.one() } else { f.zero() })
}

/// A square-zero extension `0 -> I -> B -> A -> 0`.
///
/// `injection` is the `dim B x dim I` matrix of `i` and `projection` the
/// `dim A x dim B` matrix of `p`. The algebra `A` is recovered from `B` and `p`,
/// and `I` carries the bimodule structure `x u = s(x) u`, `u x = u s(x)` for any
/// linear lift `s`.
#[derive(Clone, Debug)]
pub struct ExtensionAlgebra {
    algebra: Algebra,
    ideal_dim: usize,
    injection: Matrix,
    projection: Matrix,
    cocycle: Option<Cochain>,
    base: Algebra,
    ideal: Bimodule,
}

impl ExtensionAlgebra {
    /// Checks the extension axioms. When `cocycle` is given, `B` must be exactly
    /// the twisted table of that cocycle in the canonical layout.
    pub fn new(
        algebra: Algebra,
        ideal_dim: usize,
        injection: Matrix,
        projection: Matrix,
        cocycle: Option<Cochain>,
    ) -> Result<ExtensionAlgebra> {
        let f = algebra.field();
        let dim_b = algebra.dim();
        let report = algebra.validate();
        if !report.is_valid() {
            return Err(Error::InvalidExtension(format!("B is not an algebra: {}", report.summary())));
        }
        if ideal_dim > dim_b {
            return Err(Error::InvalidExtension("ideal is larger than the algebra".into()));
        }
        let n = dim_b - ideal_dim;
        if injection.rows() != dim_b || injection.cols() != ideal_dim {
            return Err(Error::DimensionMismatch(format!(
                "injection is {}x{}, expected {dim_b}x{ideal_dim}",
                injection.rows(),
                injection.cols()
            )));
        }
        if projection.rows() != n || projection.cols() != dim_b {
            return Err(Error::DimensionMismatch(format!(
                "projection is {}x{}, expected {n}x{dim_b}",
                projection.rows(),
                projection.cols()
            )));
        }
        for m in [&injection, &projection] {
            if m.field() != f {
                return Err(Error::FieldMismatch {
                    expected: f,
                    found: m.field(),
                });
            }
        }
        if injection.rank() != ideal_dim {
            return Err(Error::InvalidExtension("injection is not injective".into()));
        }
        if projection.rank() != n {
            return Err(Error::InvalidExtension("projection is not surjective".into()));
        }
        if !projection.mul(&injection).is_zero() {
            return Err(Error::InvalidExtension("p o i != 0".into()));
        }
        let image = injection.columns();
        for v in &image {
            for k in 0..dim_b {
                let e = algebra.basis(k);
                if !projection.mul_vec(&algebra.mul_vec(&e, v)).iter().all(Scalar::is_zero)
                    || !projection.mul_vec(&algebra.mul_vec(v, &e)).iter().all(Scalar::is_zero)
                {
                    return Err(Error::InvalidExtension("i(I) is not a two-sided ideal".into()));
                }
            }
            for w in &image {
                if !vector::is_zero(&algebra.mul_vec(v, w)) {
                    return Err(Error::InvalidExtension("i(I)^2 != 0".into()));
                }
            }
        }
        let lift = echelon_lift(&projection)?;
        let mut product = |x: usize, y: usize| {
            projection.mul_vec(&algebra.mul_vec(&lift.column(x), &lift.column(y)))
        };
        let mul = Algebra::table(n, &mut product);
        let base = Algebra::new(f, n, mul, projection.mul_vec(algebra.unit()), None)?;
        let ideal = induced_bimodule(&algebra, &base, &injection, &lift)?;
        let ext = ExtensionAlgebra {
            algebra,
            ideal_dim,
            injection,
            projection,
            cocycle: None,
            base,
            ideal,
        };
        match cocycle {
            None => Ok(ext),
            Some(c) => ext.with_cocycle(c),
        }
    }

    fn with_cocycle(mut self, c: Cochain) -> Result<ExtensionAlgebra> {
        let (m, n) = (self.ideal_dim, self.base.dim());
        let f = self.field();
        if self.injection != canonical_injection(f, m, n) || self.projection != canonical_projection(f, m, n) {
            return Err(Error::InvalidExtension(
                "a recorded cocycle requires the canonical layout (ideal first, then the base)".into(),
            ));
        }
        let twisted = twisted_algebra_unchecked(&self.base, &self.ideal, &c)?;
        if twisted.structure_tensor() != self.algebra.structure_tensor() || twisted.unit() != self.algebra.unit() {
            return Err(Error::InvalidExtension(
                "the algebra is not the twisted product of the recorded cocycle".into(),
            ));
        }
        self.cocycle = Some(c);
        Ok(self)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal_dim
    }

    pub fn injection(&self) -> &Matrix {
        &self.injection
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// The cocycle `B` was built from, if any.
    pub fn cocycle(&self) -> Option<&Cochain> {
        self.cocycle.as_ref()
    }

    /// The quotient `A = B / i(I)`, in the coordinates of the target of `p`.
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    /// `I` with its induced `A`-bimodule structure.
    pub fn ideal(&self) -> &Bimodule {
        &self.ideal
    }

    /// The same extension with `B` written in the basis given by the columns of `q`.
    /// The recorded cocycle is dropped, since the layout is no longer canonical.
    pub fn change_basis(&self, q: &Matrix) -> Result<ExtensionAlgebra> {
        let inv = q
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        ExtensionAlgebra::new(
            self.algebra.change_basis(q)?,
            self.ideal_dim,
            inv.mul(&self.injection),
            self.projection.mul(q),
            None,
        )
    }

    /// Coordinates in `I` of an element of `i(I)`.
    fn ideal_coords(&self, v: &[Scalar]) -> Result<Vector> {
        self.injection
            .solve(v)?
            .ok_or_else(|| Error::Verification("element does not lie in i(I)".into()))
    }
}

/// Columns `s0(e_j)`: the echelon solutions of `p x = e_j`.
fn echelon_lift(p: &Matrix) -> Result<Matrix> {
    let f = p.field();
    let n = p.rows();
    let cols = (0..n)
        .map(|j| {
            p.solve(&vector::unit(f, n, j))?
                .ok_or_else(|| Error::InvalidExtension("projection is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(f, p.cols(), &cols))
}

fn induced_bimodule(b: &Algebra, a: &Algebra, inj: &Matrix, lift: &Matrix) -> Result<Bimodule> {
    let f = b.field();
    let m = inj.cols();
    let coords = |v: Vector| -> Result<Vector> {
        inj.solve(&v)?
            .ok_or_else(|| Error::InvalidExtension("i(I) is not a two-sided ideal".into()))
    };
    let mut left = Vec::with_capacity(a.dim());
    let mut right = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        let s = lift.column(j);
        let mut lc = Vec::with_capacity(m);
        let mut rc = Vec::with_capacity(m);
        for r in 0..m {
            let u = inj.column(r);
            lc.push(coords(b.mul_vec(&s, &u))?);
            rc.push(coords(b.mul_vec(&u, &s))?);
        }
        left.push(Matrix::from_columns(f, m, &lc));
        right.push(Matrix::from_columns(f, m, &rc));
    }
    Bimodule::new(a, m, left, right)
}

/// A linear section `s : A -> B` with `s(1) = 1` and `p o s = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    matrix: Matrix,
}

impl Section {
    pub fn new(b: &ExtensionAlgebra, matrix: Matrix) -> Result<Section> {
        let n = b.base().dim();
        let f = b.field();
        if matrix.rows() != b.algebra().dim() || matrix.cols() != n {
            return Err(Error::InvalidSection(format!(
                "section is {}x{}, expected {}x{n}",
                matrix.rows(),
                matrix.cols(),
                b.algebra().dim()
            )));
        }
        if b.projection().mul(&matrix) != Matrix::identity(f, n) {
            return Err(Error::InvalidSection("p o s != id".into()));
        }
        if matrix.mul_vec(b.base().unit()) != b.algebra().unit() {
            return Err(Error::InvalidSection("s(1) != 1".into()));
        }
        Ok(Section { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.matrix.mul_vec(x)
    }

    /// The section `s + i o h` for a linear `h : A -> I` (a `dim I x dim A` matrix) with `h(1) = 0`.
    pub fn shifted(&self, b: &ExtensionAlgebra, h: &Matrix) -> Result<Section> {
        Section::new(b, self.matrix.add(&b.injection().mul(h)))
    }
}

/// The deterministic section: echelon preimages under `p`, with the defect
/// `1_B - s0(1_A)` added along the first basis vector on which `1_A` is nonzero.
pub fn choose_section(b: &ExtensionAlgebra) -> Result<Section> {
    let mut s = echelon_lift(b.projection())?;
    let one = b.base().unit();
    let defect = vector::sub(b.algebra().unit(), &s.mul_vec(one));
    if !vector::is_zero(&defect) {
        let k = one
            .iter()
            .position(|u| !u.is_zero())
            .ok_or_else(|| Error::InvalidExtension("the base algebra is zero".into()))?;
        let tau = one[k].inverse().expect("nonzero");
        for (r, d) in defect.iter().enumerate() {
            let v = s.get(r, k) + &(d * &tau);
            s.set(r, k, v);
        }
    }
    Section::new(b, s)
}

/// A cocycle read off from a section, with the bimodule structure it induces on `I`.
#[derive(Clone, Debug)]
pub struct Extracted {
    pub cocycle: Cochain,
    pub bimodule: Bimodule,
}

/// `C(x, y) = s(x) s(y) - s(xy)` in `I`-coordinates, and `x u = s(x) u`, `u x = u s(x)`.
pub fn extract_cocycle(b: &ExtensionAlgebra, s: &Section) -> Result<Extracted> {
    let s = Section::new(b, s.matrix.clone())?;
    let a = b.base();
    let n = a.dim();
    let f = b.field();
    let bimodule = induced_bimodule(b.algebra(), a, b.injection(), s.matrix())?;
    let mut cols = Vec::with_capacity(n * n);
    for x in 0..n {
        let sx = s.matrix.column(x);
        for y in 0..n {
            let prod = b.algebra().mul_vec(&sx, &s.matrix.column(y));
            let value = vector::sub(&prod, &s.apply(a.structure(x, y)));
            cols.push(b.ideal_coords(&value)?);
        }
    }
    let cocycle = Cochain::new(2, Matrix::from_columns(f, b.ideal_dim(), &cols))?;
    if let Some(t) = cocycle_violation(a, &bimodule, &cocycle)? {
        return Err(Error::Verification(format!("extracted cochain fails the cocycle identity at {t:?}")));
    }
    Ok(Extracted { cocycle, bimodule })
}

/// The isomorphism `phi(x) = (x - s p(x), p(x))` from `B` onto the twisted product
/// of the extracted cocycle, with that target extension.
#[derive(Clone, Debug)]
pub struct Rebuilt {
    pub map: AlgebraMap,
    pub target: ExtensionAlgebra,
}

pub fn rebuild_isomorphism(b: &ExtensionAlgebra, s: &Section) -> Result<Rebuilt> {
    let ex = extract_cocycle(b, s)?;
    let target = build_extension(b.base(), &ex.bimodule, &ex.cocycle)?;
    let f = b.field();
    let dim_b = b.algebra().dim();
    let cols = (0..dim_b)
        .map(|k| {
            let x = vector::unit(f, dim_b, k);
            let px = b.projection().mul_vec(&x);
            let mut out = b.ideal_coords(&vector::sub(&x, &s.apply(&px)))?;
            out.extend(px);
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = AlgebraMap {
        matrix: Matrix::from_columns(f, dim_b, &cols),
    };
    if !map.is_bijective() {
        return Err(Error::Verification("phi is not bijective".into()));
    }
    map.verify(b.algebra(), target.algebra())?;
    if map.matrix.mul(b.injection()) != *target.injection() {
        return Err(Error::Verification("phi o i != i'".into()));
    }
    if target.projection().mul(&map.matrix) != *b.projection() {
        return Err(Error::Verification("p' o phi != p".into()));
    }
    Ok(Rebuilt { map, target })
}

/// `D^C = B^C / J` where `J` is the smallest two-sided ideal containing `Im(C)`.
#[derive(Clone, Debug)]
pub struct QuotientExtension {
    pub extension: ExtensionAlgebra,
    /// Basis of `J` in `I`-coordinates.
    pub ideal_j: Vec<Vector>,
    /// The quotient map `B^C -> D^C`.
    pub map: Matrix,
}

pub fn quotient_extension(b: &ExtensionAlgebra) -> Result<QuotientExtension> {
    let c = b
        .cocycle()
        .ok_or_else(|| Error::InvalidExtension("quotient_extension needs the defining cocycle".into()))?;
    let f = b.field();
    let bc = b.algebra();
    let (m, dim_b) = (b.ideal_dim(), bc.dim());
    let embed = |u: &[Scalar]| b.injection().mul_vec(u);
    let mut span = span_basis(f, dim_b, &c.matrix().columns().iter().map(|u| embed(u)).collect::<Vec<_>>());
    loop {
        let mut next = span.clone();
        for v in &span {
            for k in 0..dim_b {
                let e = bc.basis(k);
                next.push(bc.mul_vec(&e, v));
                next.push(bc.mul_vec(v, &e));
            }
        }
        let next = span_basis(f, dim_b, &next);
        if next.len() == span.len() {
            break;
        }
        span = next;
    }
    let ideal_j: Vec<Vector> = span
        .iter()
        .map(|v| b.ideal_coords(v))
        .collect::<Result<Vec<_>>>()?;
    let (d, q) = bc.quotient(&span)?;
    let map = q.matrix();
    let n = b.base().dim();
    let m_d = d.dim() - n;
    // J has no base components, so the base coordinates stay free and come last
    if q.free_positions()[m_d..] != (m..m + n).collect::<Vec<_>>()[..] {
        return Err(Error::Verification("quotient basis does not keep the base coordinates".into()));
    }
    let zero = Cochain::zero(f, m_d, n, 2);
    let d_ext = ExtensionAlgebra::new(d, m_d, canonical_injection(f, m_d, n), canonical_projection(f, m_d, n), Some(zero))
        .map_err(|e| Error::Verification(format!("D^C is not the untwisted product: {e}")))?;
    let section = choose_section(&d_ext)?;
    if !extract_cocycle(&d_ext, &section)?.cocycle.is_zero() {
        return Err(Error::Verification("D^C has a nonzero cocycle for its canonical section".into()));
    }
    if d_ext.projection().mul(&map) != *b.projection() {
        return Err(Error::Verification("p_D o q != p_B".into()));
    }
    let iq = map.mul(b.injection());
    for r in 0..m {
        let col = iq.column(r);
        if !col[m_d..].iter().all(Scalar::is_zero) {
            return Err(Error::Verification("q maps i(I) outside the ideal of D^C".into()));
        }
    }
    Ok(QuotientExtension {
        extension: d_ext,
        ideal_j,
        map,
    })
}
