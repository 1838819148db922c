//! Seeded generators of small valid Poisson data for integration tests.

#![allow(dead_code)]

use pcoho_core::algebra::{adjoint_rep, check_map, coadjoint_rep, MapKind, MapTarget};
use pcoho_core::catalog;
use pcoho_core::linalg;
use pcoho_core::matrix::int;
use pcoho_core::{Bilinear, Matrix, PoissonAlgebra, Representation, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut TestRng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

pub fn small_matrix(rng: &mut TestRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| small_int(rng, bound)).collect()).unwrap()
}

pub fn invertible_matrix(rng: &mut TestRng, n: usize) -> Matrix {
    loop {
        let m = small_matrix(rng, n, n, 1);
        if linalg::inverse(&m).is_some() {
            return m;
        }
    }
}

/// Catalog algebras of dimension at most `max_dim`.
pub fn catalog_up_to(max_dim: usize) -> Vec<PoissonAlgebra> {
    catalog::named_algebras().into_iter().map(|(_, p)| p).filter(|p| p.dim() <= max_dim).collect()
}

/// A catalog algebra of dimension ≤ `max_dim` in a random basis.
pub fn random_algebra(rng: &mut TestRng, max_dim: usize) -> PoissonAlgebra {
    let algs = catalog_up_to(max_dim);
    let p = algs.choose(rng).unwrap().clone();
    let g = invertible_matrix(rng, p.dim());
    p.change_basis(&g).unwrap()
}

/// Trivial, adjoint, coadjoint or a sum with a trivial module, of dimension
/// ≤ `max_dim`, in a random module basis.
pub fn random_rep(rng: &mut TestRng, p: &PoissonAlgebra, max_dim: usize) -> Representation {
    let n = p.dim();
    let mut options: Vec<Representation> = (1..=max_dim).map(|d| Representation::trivial(p, d)).collect();
    if n <= max_dim {
        options.push(adjoint_rep(p));
        options.push(coadjoint_rep(p));
    }
    if n < max_dim {
        options.push(adjoint_rep(p).direct_sum(p, &Representation::trivial(p, 1)).unwrap());
    }
    let v = options.choose(rng).unwrap().clone();
    let h = invertible_matrix(rng, v.dim());
    v.change_basis(p, &Matrix::identity(n), &h).unwrap()
}

pub fn random_pair_data(rng: &mut TestRng) -> (PoissonAlgebra, Representation) {
    let p = random_algebra(rng, 3);
    let v = random_rep(rng, &p, 3);
    (p, v)
}

pub fn random_symmetric(rng: &mut TestRng, n: usize, out: usize, bound: i64) -> Bilinear {
    let t = Bilinear::from_fn(n, n, out, |_, _| (0..out).map(|_| small_int(rng, bound)).collect());
    t.add(&t.flipped())
}

pub fn random_antisymmetric(rng: &mut TestRng, n: usize, out: usize, bound: i64) -> Bilinear {
    let t = Bilinear::from_fn(n, n, out, |_, _| (0..out).map(|_| small_int(rng, bound)).collect());
    t.sub(&t.flipped())
}

pub fn random_tensor(rng: &mut TestRng, n: usize, out: usize, bound: i64) -> Bilinear {
    Bilinear::from_fn(n, n, out, |_, _| (0..out).map(|_| small_int(rng, bound)).collect())
}

/// Automorphisms of `p` found by rejection sampling among small matrices.
pub fn random_automorphism(rng: &mut TestRng, p: &PoissonAlgebra) -> Matrix {
    for _ in 0..2000 {
        let a = small_matrix(rng, p.dim(), p.dim(), 2);
        if linalg::inverse(&a).is_none() {
            continue;
        }
        if check_map(MapKind::PoissonAuto, p, MapTarget::Algebra(p), &a).unwrap().ok() {
            return a;
        }
    }
    Matrix::identity(p.dim())
}

/// Random integer combination of the given matrices.
pub fn combination(rng: &mut TestRng, basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut acc = Matrix::zeros(rows, cols);
    for b in basis {
        acc = &acc + &b.scale(&small_int(rng, 2));
    }
    acc
}
