//! Cohomology of the FGV complex: cocycle and coboundary dimensions,
//! representative classes and decomposition of cocycles into classes.

use crate::algebra::{PoissonAlgebra, Representation};
use crate::cochain::{Cochain, ComplexConfig, FgvComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, SpanBuilder};
use crate::matrix::{is_zero_vec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub k: usize,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub betti: usize,
    /// Cocycles spanning a complement of the coboundaries.
    pub representatives: Vec<Cochain>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeReport>,
}

impl CohomologyReport {
    pub fn degree(&self, k: usize) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| d.k == k)
    }

    pub fn betti(&self, k: usize) -> Option<usize> {
        self.degree(k).map(|d| d.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }
}

/// Coboundary image `B^k` as columns of `δ_{k-1}`; empty at `k = 0`.
fn coboundary_matrix(cx: &FgvComplex<'_>, k: usize, dim: usize) -> Result<Matrix> {
    if k == 0 {
        Ok(Matrix::zeros(dim, 0))
    } else {
        Ok(cx.delta_fgv(k - 1)?.matrix)
    }
}

fn degree_report(cx: &FgvComplex<'_>, k: usize) -> Result<DegreeReport> {
    let dk = cx.delta_fgv(k)?.matrix;
    let dim = dk.cols();
    let cocycles = linalg::kernel_vectors(&dk);
    let prev = coboundary_matrix(cx, k, dim)?;
    let mut span = SpanBuilder::new(dim);
    for j in 0..prev.cols() {
        span.insert(&prev.column(j));
    }
    let coboundary_dim = span.dim();
    let mut representatives = Vec::new();
    for z in cocycles.iter() {
        if span.insert(z) {
            representatives.push(Cochain { degree: k, coords: z.clone() });
        }
    }
    let cocycle_dim = cocycles.len();
    if coboundary_dim > cocycle_dim || representatives.len() != cocycle_dim - coboundary_dim {
        return Err(Error::Internal(format!(
            "degree {k}: coboundaries ({coboundary_dim}) not contained in cocycles ({cocycle_dim})"
        )));
    }
    Ok(DegreeReport {
        k,
        cochain_dim: dim,
        cocycle_dim,
        coboundary_dim,
        betti: cocycle_dim - coboundary_dim,
        representatives,
    })
}

/// `H^k` for `k = 0..=kmax`; degrees are computed on separate threads.
pub fn cohomology_of(cx: &FgvComplex<'_>, kmax: usize) -> Result<CohomologyReport> {
    if kmax > cx.config().max_degree {
        return Err(Error::Capacity(format!(
            "degree {kmax} exceeds the configured maximum {}",
            cx.config().max_degree
        )));
    }
    let results: Vec<Result<DegreeReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..=kmax).map(|k| s.spawn(move || degree_report(cx, k))).collect();
        handles.into_iter().map(|h| h.join().expect("degree worker panicked")).collect()
    });
    Ok(CohomologyReport { degrees: results.into_iter().collect::<Result<_>>()? })
}

pub fn cohomology(p: &PoissonAlgebra, v: &Representation, kmax: usize) -> Result<CohomologyReport> {
    cohomology_with_config(p, v, kmax, ComplexConfig::default())
}

pub fn cohomology_with_config(
    p: &PoissonAlgebra,
    v: &Representation,
    kmax: usize,
    config: ComplexConfig,
) -> Result<CohomologyReport> {
    let cx = FgvComplex::new(p, v, config)?;
    cohomology_of(&cx, kmax)
}

/// `z = Σ cᵢ·repᵢ + δ(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecomposition {
    pub coefficients: Vec<Scalar>,
    /// Degree `k-1` primitive of the coboundary part; empty at `k = 0`.
    pub primitive: Vec<Scalar>,
}

pub fn class_decompose_with(
    cx: &FgvComplex<'_>,
    report: &DegreeReport,
    z: &[Scalar],
) -> Result<ClassDecomposition> {
    let k = report.k;
    let dk = cx.delta_fgv(k)?.matrix;
    if z.len() != dk.cols() {
        return Err(Error::Shape(format!("degree-{k} cochain must have {} coordinates", dk.cols())));
    }
    if !is_zero_vec(&dk.mul_vec(z)) {
        return Err(Error::Precondition(format!("degree-{k} cochain is not a cocycle")));
    }
    let prev = coboundary_matrix(cx, k, dk.cols())?;
    let reps: Vec<Vec<Scalar>> = report.representatives.iter().map(|r| r.coords.clone()).collect();
    let system = Matrix::from_columns(dk.cols(), &reps).hstack(&prev);
    let x = linalg::solve(&system, z)
        .ok_or_else(|| Error::Internal("cocycle outside representatives plus coboundaries".into()))?;
    if system.mul_vec(&x) != z {
        return Err(Error::Internal("class decomposition fails re-multiplication".into()));
    }
    let r = reps.len();
    Ok(ClassDecomposition { coefficients: x[..r].to_vec(), primitive: x[r..].to_vec() })
}

pub fn class_decompose(
    p: &PoissonAlgebra,
    v: &Representation,
    k: usize,
    z: &[Scalar],
) -> Result<ClassDecomposition> {
    let cx = FgvComplex::with_defaults(p, v);
    let report = degree_report(&cx, k)?;
    class_decompose_with(&cx, &report, z)
}

/// Betti numbers of the complex after conjugating each `δ_k` by the cochain
/// basis changes `changes[k]`: `δ'_k = A_{k+1}⁻¹ δ_k A_k`.
pub fn betti_after_basis_change(cx: &FgvComplex<'_>, changes: &[Matrix]) -> Result<Vec<usize>> {
    let kmax = changes.len().checked_sub(2).ok_or_else(|| {
        Error::Precondition("need basis changes for degrees 0..=kmax+1".into())
    })?;
    let mut deltas = Vec::new();
    for k in 0..=kmax {
        let d = cx.delta_fgv(k)?.matrix;
        let inv = linalg::inverse(&changes[k + 1])
            .ok_or_else(|| Error::Precondition(format!("basis change {} is singular", k + 1)))?;
        deltas.push(inv.checked_mul(&d)?.checked_mul(&changes[k])?);
    }
    Ok((0..=kmax)
        .map(|k| {
            let nullity = deltas[k].cols() - linalg::rank(&deltas[k]);
            let image = if k == 0 { 0 } else { linalg::rank(&deltas[k - 1]) };
            nullity - image
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_rep, coadjoint_rep, derivation_space};
    use crate::catalog;
    use crate::matrix::int;
    use proptest::prelude::*;

    #[test]
    fn abelian_plane_trivial_module() {
        let p = PoissonAlgebra::abelian(2);
        let v = Representation::trivial(&p, 1);
        let r = cohomology(&p, &v, 2).unwrap();
        assert_eq!(r.betti_numbers(), vec![1, 2, 4]);
        for d in &r.degrees {
            assert_eq!(d.betti, d.cochain_dim);
            assert_eq!(d.coboundary_dim, 0);
        }
    }

    #[test]
    fn first_cohomology_matches_derivations() {
        for (name, p) in catalog::named_algebras() {
            for v in [adjoint_rep(&p), coadjoint_rep(&p)] {
                let r = cohomology(&p, &v, 1).unwrap();
                let der = derivation_space(&p, &v).len();
                let d1 = r.degree(1).unwrap();
                assert_eq!(d1.cocycle_dim, der, "{name}");
                assert_eq!(d1.betti, der - d1.coboundary_dim, "{name}");
            }
        }
        let p = catalog::fix_b();
        let r = cohomology(&p, &adjoint_rep(&p), 2).unwrap();
        assert_eq!(r.betti(1), Some(0));
    }

    #[test]
    fn rank_nullity_and_representatives() {
        let p = catalog::dual_plane();
        let v = adjoint_rep(&p);
        let cx = FgvComplex::with_defaults(&p, &v);
        let r = cohomology_of(&cx, 2).unwrap();
        for d in &r.degrees {
            let dk = cx.delta_fgv(d.k).unwrap().matrix;
            assert_eq!(d.cochain_dim, d.cocycle_dim + linalg::rank(&dk));
            for rep in &d.representatives {
                assert!(is_zero_vec(&dk.mul_vec(&rep.coords)));
            }
            if d.k > 0 {
                let prev = cx.delta_fgv(d.k - 1).unwrap().matrix;
                let reps: Vec<Vec<Scalar>> = d.representatives.iter().map(|r| r.coords.clone()).collect();
                let both = Matrix::from_columns(d.cochain_dim, &reps).hstack(&prev);
                assert_eq!(linalg::rank(&both), d.betti + linalg::rank(&prev));
            }
        }
    }

    #[test]
    fn decomposition_of_representatives_and_coboundaries() {
        let p = catalog::lie2();
        let v = adjoint_rep(&p);
        let cx = FgvComplex::with_defaults(&p, &v);
        let r = cohomology_of(&cx, 2).unwrap();
        let d2 = r.degree(2).unwrap();
        let w0: Vec<Scalar> = (0..cx.degree_space(1).unwrap().total_dim()).map(|i| int(i as i64 - 1)).collect();
        let z = cx.delta_fgv(1).unwrap().matrix.mul_vec(&w0);
        let dec = class_decompose_with(&cx, d2, &z).unwrap();
        assert!(dec.coefficients.iter().all(|c| *c == int(0)));
        if let Some(rep) = d2.representatives.first() {
            let dec = class_decompose_with(&cx, d2, &rep.coords).unwrap();
            let mut expect = vec![int(0); d2.betti];
            expect[0] = int(1);
            assert_eq!(dec.coefficients, expect);
            assert!(dec.primitive.iter().all(|c| *c == int(0)));
        }
        let mut bad = vec![int(0); d2.cochain_dim];
        bad[0] = int(1);
        let dk = cx.delta_fgv(2).unwrap().matrix;
        if !is_zero_vec(&dk.mul_vec(&bad)) {
            assert!(matches!(class_decompose_with(&cx, d2, &bad), Err(Error::Precondition(_))));
        }
    }

    #[test]
    fn capacity_error_above_configured_degree() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        let cfg = ComplexConfig::with_max_degree(2).unwrap();
        assert!(matches!(cohomology_with_config(&p, &v, 3, cfg), Err(Error::Capacity(_))));
    }

    fn unitriangular(n: usize, seed: &[i64]) -> Matrix {
        let mut m = Matrix::identity(n);
        let mut s = seed.iter().cycle();
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, int(*s.next().unwrap()));
            }
        }
        m.transpose().checked_mul(&m).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn betti_independent_of_cochain_basis(seed in prop::collection::vec(-2i64..=2, 1..8), which in 0usize..4) {
            let (p, v) = match which {
                0 => { let p = catalog::lie2(); let v = adjoint_rep(&p); (p, v) }
                1 => { let p = catalog::dual_numbers(); let v = coadjoint_rep(&p); (p, v) }
                2 => { let p = catalog::fix_b().direct_product(&catalog::fix_b()).unwrap(); let v = adjoint_rep(&p); (p, v) }
                _ => { let p = catalog::heisenberg(); let v = Representation::trivial(&p, 1); (p, v) }
            };
            let cx = FgvComplex::with_defaults(&p, &v);
            let report = cohomology_of(&cx, 1).unwrap();
            let changes: Vec<Matrix> = (0..=2)
                .map(|k| unitriangular(cx.degree_space(k).unwrap().total_dim(), &seed))
                .collect();
            prop_assert_eq!(betti_after_basis_change(&cx, &changes).unwrap(), report.betti_numbers());
        }

        #[test]
        fn decompose_inverts_combination(coeffs in prop::collection::vec(-3i64..=3, 8), prim in prop::collection::vec(-3i64..=3, 12)) {
            let p = catalog::dual_plane();
            let v = Representation::trivial(&p, 1);
            let cx = FgvComplex::with_defaults(&p, &v);
            let r = cohomology_of(&cx, 2).unwrap();
            let d2 = r.degree(2).unwrap();
            let prev = cx.delta_fgv(1).unwrap().matrix;
            let c: Vec<Scalar> = coeffs.iter().cycle().take(d2.betti).map(|&x| int(x)).collect();
            let w: Vec<Scalar> = prim.iter().cycle().take(prev.cols()).map(|&x| int(x)).collect();
            let mut z = prev.mul_vec(&w);
            for (ci, rep) in c.iter().zip(&d2.representatives) {
                for (zi, ri) in z.iter_mut().zip(&rep.coords) {
                    *zi += ci * ri;
                }
            }
            let dec = class_decompose_with(&cx, d2, &z).unwrap();
            prop_assert_eq!(&dec.coefficients, &c);
            prop_assert_eq!(prev.mul_vec(&dec.primitive), prev.mul_vec(&w));
        }
    }
}
