//! Small named Poisson algebras used in examples and tests.

use crate::algebra::{Bilinear, PoissonAlgebra};
use crate::matrix::{int, Scalar};

fn build(n: usize, mult: &[(usize, usize, usize, i64)], bracket: &[(usize, usize, usize, i64)], labels: &[&str]) -> PoissonAlgebra {
    let lift = |t: &[(usize, usize, usize, i64)]| -> Vec<(usize, usize, usize, Scalar)> {
        t.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect()
    };
    let m = Bilinear::from_entries_mirrored(n, &lift(mult), false);
    let b = Bilinear::from_entries_mirrored(n, &lift(bracket), true);
    PoissonAlgebra::new(m, b)
        .and_then(|p| p.with_labels(labels.iter().map(|s| s.to_string()).collect()))
        .expect("catalog algebra is valid")
}

/// `span{e}` with `e·e = e` and zero bracket.
pub fn fix_b() -> PoissonAlgebra {
    build(1, &[(0, 0, 0, 1)], &[], &["e"])
}

/// `sl₂` with zero product: `{h,e} = 2e`, `{h,f} = -2f`, `{e,f} = h`.
pub fn sl2_zero() -> PoissonAlgebra {
    build(3, &[], &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], &["h", "e", "f"])
}

/// Two-dimensional non-abelian Lie algebra `{x,y} = y`, zero product.
pub fn lie2() -> PoissonAlgebra {
    build(2, &[], &[(0, 1, 1, 1)], &["x", "y"])
}

/// Heisenberg algebra `{x,y} = z`, zero product.
pub fn heisenberg() -> PoissonAlgebra {
    build(3, &[], &[(0, 1, 2, 1)], &["x", "y", "z"])
}

/// Dual numbers `k[x]/(x²)` with zero bracket.
pub fn dual_numbers() -> PoissonAlgebra {
    build(2, &[(0, 0, 0, 1), (0, 1, 1, 1)], &[], &["1", "x"])
}

/// `k[x]/(x³)` with zero bracket.
pub fn truncated_cubic() -> PoissonAlgebra {
    build(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (1, 1, 2, 1)], &[], &["1", "x", "x2"])
}

/// `k[x,y]/(x,y)²` with `{x,y} = y`.
pub fn dual_plane() -> PoissonAlgebra {
    build(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1)], &[(1, 2, 2, 1)], &["1", "x", "y"])
}

/// Every catalog algebra of dimension at most three.
pub fn named_algebras() -> Vec<(&'static str, PoissonAlgebra)> {
    let fix2 = fix_b().direct_product(&fix_b()).expect("valid product");
    let fix_lie = fix_b().direct_product(&lie2()).expect("valid product");
    vec![
        ("abelian1", PoissonAlgebra::abelian(1)),
        ("abelian2", PoissonAlgebra::abelian(2)),
        ("abelian3", PoissonAlgebra::abelian(3)),
        ("fix-b", fix_b()),
        ("fix-b^2", fix2),
        ("fix-b+lie2", fix_lie),
        ("lie2", lie2()),
        ("sl2-zero", sl2_zero()),
        ("heisenberg", heisenberg()),
        ("dual-numbers", dual_numbers()),
        ("truncated-cubic", truncated_cubic()),
        ("dual-plane", dual_plane()),
    ]
}
