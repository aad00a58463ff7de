//! Seeded random instances and small independent oracles shared by the integration tests.
#![allow(dead_code)]

use exanlab::algebra::catalog::{self, MatrixAlgebra};
use exanlab::algebra::{Algebra, Bimodule, LeftModule};
use exanlab::exactla::{Field, Matrix, Scalar, Vector};
use exanlab::hochschild::{tensor_index, Cochain};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(f: Field, rng: &mut TestRng) -> Scalar {
    match f {
        Field::Prime(p) => f.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => {
            let n = f.from_i64(rng.gen_range(-2..=2));
            if rng.gen_bool(0.2) {
                n.checked_div(&f.from_i64(2)).unwrap()
            } else {
                n
            }
        }
    }
}

pub fn sparse_scalar(f: Field, rng: &mut TestRng) -> Scalar {
    if rng.gen_bool(0.5) {
        f.zero()
    } else {
        scalar(f, rng)
    }
}

pub fn matrix(f: Field, rows: usize, cols: usize, rng: &mut TestRng) -> Matrix {
    Matrix::from_fn(f, rows, cols, |_, _| scalar(f, rng))
}

pub fn vector(f: Field, n: usize, rng: &mut TestRng) -> Vector {
    (0..n).map(|_| scalar(f, rng)).collect()
}

pub fn nonzero_vector(f: Field, n: usize, rng: &mut TestRng) -> Vector {
    loop {
        let v = vector(f, n, rng);
        if v.iter().any(|s| !s.is_zero()) {
            return v;
        }
    }
}

pub fn invertible(f: Field, n: usize, rng: &mut TestRng) -> Matrix {
    loop {
        let m = matrix(f, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

fn generator(f: Field, r: usize, upper: bool, rng: &mut TestRng) -> Matrix {
    Matrix::from_fn(f, r, r, |i, j| if upper && i > j { f.zero() } else { sparse_scalar(f, rng) })
}

/// A unital subalgebra of `M_r(k)`, `r <= 3`, of dimension at most `max_dim`,
/// generated by one or two sparse random matrices.
pub fn matrix_algebra(f: Field, max_dim: usize, rng: &mut TestRng) -> MatrixAlgebra {
    loop {
        let r = rng.gen_range(1..=3);
        let upper = rng.gen_bool(0.5);
        let count = rng.gen_range(1..=2);
        let gens: Vec<Matrix> = (0..count).map(|_| generator(f, r, upper, rng)).collect();
        if let Ok(m) = MatrixAlgebra::generated_by(f, r, &gens, max_dim) {
            if m.algebra.dim() >= 2 || rng.gen_bool(0.1) {
                return m;
            }
        }
    }
}

/// `k[g]` for one sparse random `g` in `M_r(k)`, `r <= 4`; commutative by construction.
pub fn commutative_matrix_algebra(f: Field, max_dim: usize, rng: &mut TestRng) -> MatrixAlgebra {
    loop {
        let r = rng.gen_range(1..=4);
        let upper = rng.gen_bool(0.7);
        let g = generator(f, r, upper, rng);
        if let Ok(m) = MatrixAlgebra::generated_by(f, r, &[g], max_dim) {
            if m.algebra.dim() >= 2 || rng.gen_bool(0.1) {
                return m;
            }
        }
    }
}

/// The same matrix algebra in the basis given by the columns of `p`.
pub fn scramble(m: &MatrixAlgebra, p: &Matrix) -> MatrixAlgebra {
    let basis = p.columns().iter().map(|c| m.element_matrix(c)).collect();
    let algebra = m.algebra.change_basis(p).unwrap();
    assert!(algebra.validate().is_valid());
    MatrixAlgebra { algebra, basis }
}

pub fn scrambled_matrix_algebra(f: Field, max_dim: usize, commutative: bool, rng: &mut TestRng) -> MatrixAlgebra {
    let m = if commutative {
        commutative_matrix_algebra(f, max_dim, rng)
    } else {
        matrix_algebra(f, max_dim, rng)
    };
    let p = invertible(f, m.algebra.dim(), rng);
    scramble(&m, &p)
}

/// Left modules built from the natural module, the regular module and characters.
pub fn left_module(m: &MatrixAlgebra, max_dim: usize, rng: &mut TestRng) -> LeftModule {
    let a = &m.algebra;
    let mut candidates = vec![m.natural_module(), LeftModule::regular(a)];
    for chi in m.diagonal_characters() {
        candidates.push(LeftModule::from_character(a, &chi).unwrap());
    }
    let smallest = candidates.iter().min_by_key(|c| c.dim()).unwrap().clone();
    candidates.retain(|c| c.dim() <= max_dim && c.dim() > 0);
    if candidates.is_empty() {
        return smallest;
    }
    let first = candidates[rng.gen_range(0..candidates.len())].clone();
    if rng.gen_bool(0.25) {
        let second = &candidates[rng.gen_range(0..candidates.len())];
        if first.dim() + second.dim() <= max_dim {
            return first.direct_sum(a, second).unwrap();
        }
    }
    first
}

/// Bimodules: the regular one, `Hom_k(V, W)` for left modules `V, W`, characters and direct sums.
pub fn bimodule(m: &MatrixAlgebra, max_dim: usize, rng: &mut TestRng) -> Bimodule {
    let a = &m.algebra;
    let chars = m.diagonal_characters();
    let mut candidates = vec![Bimodule::regular(a)];
    let modules = [m.natural_module(), LeftModule::regular(a)];
    for v in &modules {
        for w in &modules {
            candidates.push(Bimodule::hom(a, v, w).unwrap());
        }
    }
    for l in &chars {
        for r in &chars {
            candidates.push(Bimodule::from_characters(a, l, r).unwrap());
        }
    }
    let smallest = candidates.iter().min_by_key(|c| c.dim()).unwrap().clone();
    candidates.retain(|c| c.dim() <= max_dim && c.dim() > 0);
    if candidates.is_empty() {
        return smallest;
    }
    let first = candidates[rng.gen_range(0..candidates.len())].clone();
    if rng.gen_bool(0.2) {
        let second = &candidates[rng.gen_range(0..candidates.len())];
        if first.dim() + second.dim() <= max_dim {
            return first.direct_sum(a, second).unwrap();
        }
    }
    first
}

/// A random basis change of `I` as well, so no structure is tied to the chosen coordinates.
pub fn scrambled_bimodule(m: &MatrixAlgebra, max_dim: usize, rng: &mut TestRng) -> Bimodule {
    let b = bimodule(m, max_dim, rng);
    let q = invertible(m.algebra.field(), b.dim(), rng);
    b.change_basis(&q).unwrap()
}

/// Commutative algebras used wherever a fixed list is wanted.
pub fn commutative_catalog(f: Field) -> Vec<Algebra> {
    let mut out = vec![
        catalog::base_field(f),
        catalog::dual_numbers(f),
        catalog::truncated_polynomial(f, 3),
        catalog::truncated_polynomial(f, 4),
        catalog::cyclic_group_algebra(f, 2),
        catalog::cyclic_group_algebra(f, 3),
    ];
    out.push(catalog::dual_numbers(f).product(&catalog::base_field(f)).unwrap());
    out.push(catalog::dual_numbers(f).tensor(&catalog::dual_numbers(f)).unwrap());
    out
}

pub fn random_combination(f: Field, items: &[Cochain], degree: usize, ideal_dim: usize, alg_dim: usize, rng: &mut TestRng) -> Cochain {
    let mut c = Cochain::zero(f, ideal_dim, alg_dim, degree);
    for item in items {
        c = c.add(&item.scale(&scalar(f, rng)));
    }
    c
}

// ---- independent oracles -------------------------------------------------

/// Rank by elimination on rows from the bottom up, pivoting on the last nonzero column.
pub fn oracle_rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Scalar>> = m.to_rows();
    let cols = m.cols();
    let mut rank = 0;
    let mut used = vec![false; rows.len()];
    for c in (0..cols).rev() {
        let Some(p) = (0..rows.len()).rev().find(|&r| !used[r] && !rows[r][c].is_zero()) else {
            continue;
        };
        used[p] = true;
        rank += 1;
        let inv = rows[p][c].inverse().unwrap();
        let pivot: Vec<Scalar> = rows[p].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != p && !rows[r][c].is_zero() {
                let factor = rows[r][c].clone();
                for k in 0..cols {
                    let v = &rows[r][k] - &(&factor * &pivot[k]);
                    rows[r][k] = v;
                }
            }
        }
    }
    rank
}

fn mul_basis(a: &Algebra, x: usize, y: usize) -> Vec<Scalar> {
    a.structure(x, y).to_vec()
}

fn apply(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    (0..m.rows())
        .map(|r| {
            let mut acc = m.field().zero();
            for (c, x) in v.iter().enumerate() {
                acc.add_mul(m.get(r, c), x);
            }
            acc
        })
        .collect()
}

/// `x C(y,z) - C(xy,z) + C(x,yz) - C(x,y) z` evaluated directly from the tables.
pub fn oracle_defect(a: &Algebra, i: &Bimodule, c: &Cochain, x: usize, y: usize, z: usize) -> Vec<Scalar> {
    let n = a.dim();
    let col = |s: usize, t: usize| c.matrix().column(tensor_index(&[s, t], n));
    let mut out = apply(&i.left_matrices()[x], &col(y, z));
    let xy = mul_basis(a, x, y);
    let yz = mul_basis(a, y, z);
    for l in 0..n {
        let cl = col(l, z);
        let cr = col(x, l);
        for k in 0..i.dim() {
            let v = &(&out[k] - &(&xy[l] * &cl[k])) + &(&yz[l] * &cr[k]);
            out[k] = v;
        }
    }
    let last = apply(&i.right_matrices()[z], &col(x, y));
    for k in 0..i.dim() {
        let v = &out[k] - &last[k];
        out[k] = v;
    }
    out
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}
