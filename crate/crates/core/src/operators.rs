//! Operators on Poisson algebras that are deformation maps in a suitable
//! split algebra: homomorphisms, derivations, Rota-Baxter operators of
//! weight 0 and 1, crossed homomorphisms, twisted Rota-Baxter, Reynolds and
//! modified Rota-Baxter operators.

use crate::algebra::{check_map, validate_representation, MapKind, MapTarget, PoissonAlgebra, Representation};
use crate::cochain::{two_cocycle_residuals, TwoCochain};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{add_vec, sub_vec, Matrix, Scalar};
use crate::prototwilled::{
    action_semidirect, action_semidirect_mirror, direct_product, is_deformation_map, modified_semidirect,
    reynolds_semidirect, semidirect, semidirect_mirror, twisted_semidirect, ActionData, ProtoTwilled,
};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorKind {
    PoissonHom,
    PoissonDerivation,
    RbWeight0,
    RbWeight1,
    CrossedHom,
    TwistedRb,
    Reynolds,
    ModifiedRb,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 8] = [
        OperatorKind::PoissonHom,
        OperatorKind::PoissonDerivation,
        OperatorKind::RbWeight0,
        OperatorKind::RbWeight1,
        OperatorKind::CrossedHom,
        OperatorKind::TwistedRb,
        OperatorKind::Reynolds,
        OperatorKind::ModifiedRb,
    ];

    pub fn label(self) -> &'static str {
        match self {
            OperatorKind::PoissonHom => "poisson-hom",
            OperatorKind::PoissonDerivation => "poisson-derivation",
            OperatorKind::RbWeight0 => "rb-weight0",
            OperatorKind::RbWeight1 => "rb-weight1",
            OperatorKind::CrossedHom => "crossed-hom",
            OperatorKind::TwistedRb => "twisted-rb",
            OperatorKind::Reynolds => "reynolds",
            OperatorKind::ModifiedRb => "modified-rb",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown operator kind '{s}'")))
    }
}

/// An operator kind together with the structures it is defined over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    /// `φ: source → target`.
    PoissonHom { source: PoissonAlgebra, target: PoissonAlgebra },
    /// `D: P → V`.
    PoissonDerivation { algebra: PoissonAlgebra, rep: Representation },
    /// `r: V → P`.
    RbWeight0 { algebra: PoissonAlgebra, rep: Representation },
    /// `r: acted → acting`.
    RbWeight1(ActionData),
    /// `D: acting → acted`.
    CrossedHom(ActionData),
    /// `r: V → P` twisted by a 2-cocycle `(h, H)`.
    TwistedRb { algebra: PoissonAlgebra, rep: Representation, cocycle: TwoCochain },
    Reynolds(PoissonAlgebra),
    ModifiedRb(PoissonAlgebra),
}

fn require_rep(p: &PoissonAlgebra, v: &Representation) -> Result<()> {
    let r = validate_representation(p, v)?;
    if r.ok() {
        Ok(())
    } else {
        Err(Error::axioms("representation", r))
    }
}

impl OperatorSpec {
    pub fn kind(&self) -> OperatorKind {
        match self {
            OperatorSpec::PoissonHom { .. } => OperatorKind::PoissonHom,
            OperatorSpec::PoissonDerivation { .. } => OperatorKind::PoissonDerivation,
            OperatorSpec::RbWeight0 { .. } => OperatorKind::RbWeight0,
            OperatorSpec::RbWeight1(_) => OperatorKind::RbWeight1,
            OperatorSpec::CrossedHom(_) => OperatorKind::CrossedHom,
            OperatorSpec::TwistedRb { .. } => OperatorKind::TwistedRb,
            OperatorSpec::Reynolds(_) => OperatorKind::Reynolds,
            OperatorSpec::ModifiedRb(_) => OperatorKind::ModifiedRb,
        }
    }

    /// Checks the data each kind needs (actions are validated on construction).
    pub fn validate(&self) -> Result<()> {
        match self {
            OperatorSpec::PoissonDerivation { algebra, rep } | OperatorSpec::RbWeight0 { algebra, rep } => {
                require_rep(algebra, rep)
            }
            OperatorSpec::TwistedRb { algebra, rep, cocycle } => {
                require_rep(algebra, rep)?;
                let res = two_cocycle_residuals(algebra, rep, cocycle)?;
                if res.is_zero() {
                    Ok(())
                } else {
                    Err(Error::axioms("2-cocycle", res.report().clone()))
                }
            }
            _ => Ok(()),
        }
    }

    /// Expected `(rows, cols)` of the operator matrix.
    pub fn map_shape(&self) -> (usize, usize) {
        match self {
            OperatorSpec::PoissonHom { source, target } => (target.dim(), source.dim()),
            OperatorSpec::PoissonDerivation { algebra, rep } => (rep.dim(), algebra.dim()),
            OperatorSpec::RbWeight0 { algebra, rep } | OperatorSpec::TwistedRb { algebra, rep, .. } => {
                (algebra.dim(), rep.dim())
            }
            OperatorSpec::RbWeight1(a) => (a.acting().dim(), a.acted().dim()),
            OperatorSpec::CrossedHom(a) => (a.acted().dim(), a.acting().dim()),
            OperatorSpec::Reynolds(p) | OperatorSpec::ModifiedRb(p) => (p.dim(), p.dim()),
        }
    }

    /// The split algebra in which operators of this kind are deformation maps.
    pub fn construction(&self) -> Result<ProtoTwilled> {
        match self {
            OperatorSpec::PoissonHom { source, target } => direct_product(target, source),
            OperatorSpec::PoissonDerivation { algebra, rep } => semidirect_mirror(algebra, rep),
            OperatorSpec::RbWeight0 { algebra, rep } => semidirect(algebra, rep),
            OperatorSpec::RbWeight1(a) => action_semidirect(a),
            OperatorSpec::CrossedHom(a) => action_semidirect_mirror(a),
            OperatorSpec::TwistedRb { algebra, rep, cocycle } => twisted_semidirect(algebra, rep, cocycle),
            OperatorSpec::Reynolds(p) => reynolds_semidirect(p),
            OperatorSpec::ModifiedRb(p) => modified_semidirect(p),
        }
    }
}

fn cols(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn basis(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| crate::matrix::unit(n, i)).collect()
}

/// `r(u)·r(v) = r(u·v + μ_{r u} v + μ_{r v} u + h(r u, r v))` and the bracket
/// analogue, for `r: W → P` with `W` carrying an optional product, a module
/// structure and an optional cocycle twist.
fn relative_rb(
    tags: [&str; 2],
    p: &PoissonAlgebra,
    v: &Representation,
    own: Option<&PoissonAlgebra>,
    twist: Option<&TwoCochain>,
    r: &Matrix,
) -> ValidationReport {
    let rc = cols(r);
    let e = basis(v.dim());
    let mut rep = ValidationReport::new();
    for a in 0..e.len() {
        for b in 0..e.len() {
            let mut inner = add_vec(&v.mu_of(&rc[a]).mul_vec(&e[b]), &v.mu_of(&rc[b]).mul_vec(&e[a]));
            if let Some(q) = own {
                inner = add_vec(&inner, &q.mul(&e[a], &e[b]));
            }
            if let Some(t) = twist {
                inner = add_vec(&inner, &t.comm.apply(&rc[a], &rc[b]));
            }
            rep.check(tags[0], &[a, b], sub_vec(&p.mul(&rc[a], &rc[b]), &r.mul_vec(&inner)));
        }
    }
    for a in 0..e.len() {
        for b in 0..e.len() {
            let mut inner = sub_vec(&v.rho_of(&rc[a]).mul_vec(&e[b]), &v.rho_of(&rc[b]).mul_vec(&e[a]));
            if let Some(q) = own {
                inner = add_vec(&inner, &q.br(&e[a], &e[b]));
            }
            if let Some(t) = twist {
                inner = add_vec(&inner, &t.lie.apply(&rc[a], &rc[b]));
            }
            rep.check(tags[1], &[a, b], sub_vec(&p.br(&rc[a], &rc[b]), &r.mul_vec(&inner)));
        }
    }
    rep
}

/// `D(x·y) = μ_x D y + μ_y D x + D x · D y` and the bracket analogue.
fn crossed_hom(a: &ActionData, d: &Matrix) -> ValidationReport {
    let (p, q, v) = (a.acting(), a.acted(), a.rep());
    let dc = cols(d);
    let e = basis(p.dim());
    let mut rep = ValidationReport::new();
    for i in 0..e.len() {
        for j in 0..e.len() {
            let mut rhs = add_vec(&v.mu()[i].mul_vec(&dc[j]), &v.mu()[j].mul_vec(&dc[i]));
            rhs = add_vec(&rhs, &q.mul(&dc[i], &dc[j]));
            rep.check("crossed-product", &[i, j], sub_vec(&d.mul_vec(p.mult().at(i, j)), &rhs));
        }
    }
    for i in 0..e.len() {
        for j in 0..e.len() {
            let mut rhs = sub_vec(&v.rho()[i].mul_vec(&dc[j]), &v.rho()[j].mul_vec(&dc[i]));
            rhs = add_vec(&rhs, &q.br(&dc[i], &dc[j]));
            rep.check("crossed-bracket", &[i, j], sub_vec(&d.mul_vec(p.bracket().at(i, j)), &rhs));
        }
    }
    rep
}

/// `r x · r y = r(r x · y + x · r y − r x · r y)` and the bracket analogue.
fn reynolds(p: &PoissonAlgebra, r: &Matrix) -> ValidationReport {
    let rc = cols(r);
    let e = basis(p.dim());
    let mut rep = ValidationReport::new();
    type Op<'a> = &'a dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>;
    let ops: [(&str, Op); 2] = [("reynolds-product", &|x, y| p.mul(x, y)), ("reynolds-bracket", &|x, y| p.br(x, y))];
    for (tag, op) in ops {
        for a in 0..e.len() {
            for b in 0..e.len() {
                let both = op(&rc[a], &rc[b]);
                let inner = sub_vec(&add_vec(&op(&rc[a], &e[b]), &op(&e[a], &rc[b])), &both);
                rep.check(tag, &[a, b], sub_vec(&both, &r.mul_vec(&inner)));
            }
        }
    }
    rep
}

/// `r x · r y = r(r x · y + x · r y) − x · y` and the bracket analogue.
fn modified(p: &PoissonAlgebra, r: &Matrix) -> ValidationReport {
    let rc = cols(r);
    let e = basis(p.dim());
    let mut rep = ValidationReport::new();
    type Op<'a> = &'a dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>;
    let ops: [(&str, Op); 2] = [("modified-product", &|x, y| p.mul(x, y)), ("modified-bracket", &|x, y| p.br(x, y))];
    for (tag, op) in ops {
        for a in 0..e.len() {
            for b in 0..e.len() {
                let inner = add_vec(&op(&rc[a], &e[b]), &op(&e[a], &rc[b]));
                let rhs = sub_vec(&r.mul_vec(&inner), &op(&e[a], &e[b]));
                rep.check(tag, &[a, b], sub_vec(&op(&rc[a], &rc[b]), &rhs));
            }
        }
    }
    rep
}

/// Residuals of the defining identities of the operator kind, evaluated
/// directly on the operator.
pub fn direct_identities(spec: &OperatorSpec, r: &Matrix) -> Result<ValidationReport> {
    let shape = spec.map_shape();
    if r.shape() != shape {
        return Err(Error::Shape(format!(
            "{} operator must be {}x{}, got {:?}",
            spec.kind().label(),
            shape.0,
            shape.1,
            r.shape()
        )));
    }
    Ok(match spec {
        OperatorSpec::PoissonHom { source, target } => {
            check_map(MapKind::PoissonHom, source, MapTarget::Algebra(target), r)?
        }
        OperatorSpec::PoissonDerivation { algebra, rep } => {
            check_map(MapKind::PoissonDerivation, algebra, MapTarget::Module(rep), r)?
        }
        OperatorSpec::RbWeight0 { algebra, rep } => relative_rb(["rb-product", "rb-bracket"], algebra, rep, None, None, r),
        OperatorSpec::RbWeight1(a) => {
            relative_rb(["rb1-product", "rb1-bracket"], a.acting(), a.rep(), Some(a.acted()), None, r)
        }
        OperatorSpec::CrossedHom(a) => crossed_hom(a, r),
        OperatorSpec::TwistedRb { algebra, rep, cocycle } => {
            relative_rb(["twisted-rb-product", "twisted-rb-bracket"], algebra, rep, None, Some(cocycle), r)
        }
        OperatorSpec::Reynolds(p) => reynolds(p, r),
        OperatorSpec::ModifiedRb(p) => modified(p, r),
    })
}

/// Verdicts of an operator check by its own identities and as a deformation
/// map in the matching split algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorVerdict {
    pub kind: OperatorKind,
    pub direct: ValidationReport,
    pub via_graph: ValidationReport,
}

impl OperatorVerdict {
    pub fn agree(&self) -> bool {
        self.direct.ok() == self.via_graph.ok()
    }

    pub fn ok(&self) -> bool {
        self.direct.ok() && self.via_graph.ok()
    }
}

pub fn check_operator(spec: &OperatorSpec, r: &Matrix) -> Result<OperatorVerdict> {
    spec.validate()?;
    let direct = direct_identities(spec, r)?;
    let pt = spec.construction()?;
    let via_graph = is_deformation_map(&pt, r)?;
    Ok(OperatorVerdict { kind: spec.kind(), direct, via_graph })
}

/// Reynolds-side outcome of [`operator_transforms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReynoldsTransform {
    pub reynolds: bool,
    /// `r⁻¹ − Id` is a Poisson derivation of `P` into its adjoint module.
    pub shifted_inverse_is_derivation: bool,
    pub shifted_inverse: Matrix,
}

/// The relations between weight-1, modified and Reynolds operators on `P`,
/// evaluated on a given `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformCheck {
    pub negative_identity_is_weight1: bool,
    pub weight1: bool,
    /// `−Id − r` is of weight 1.
    pub complement_weight1: bool,
    /// `Id + 2r` is a modified Rota-Baxter operator.
    pub shifted_modified: bool,
    pub reynolds: Option<ReynoldsTransform>,
}

impl TransformCheck {
    /// All implications and equivalences hold for this `r`.
    pub fn consistent(&self) -> bool {
        self.negative_identity_is_weight1
            && (!self.weight1 || self.complement_weight1)
            && self.weight1 == self.shifted_modified
            && self.reynolds.as_ref().map_or(true, |t| t.reynolds == t.shifted_inverse_is_derivation)
    }
}

/// Evaluates the transform relations; the Reynolds part requires `r`
/// invertible and is skipped unless `with_reynolds` is set.
pub fn operator_transforms(p: &PoissonAlgebra, r: &Matrix, with_reynolds: bool) -> Result<TransformCheck> {
    let n = p.dim();
    if r.shape() != (n, n) {
        return Err(Error::Shape(format!("operator must be {n}x{n}")));
    }
    let id = Matrix::identity(n);
    let w1 = OperatorSpec::RbWeight1(ActionData::adjoint(p));
    let modi = OperatorSpec::ModifiedRb(p.clone());
    let holds = |spec: &OperatorSpec, m: &Matrix| -> Result<bool> { Ok(direct_identities(spec, m)?.ok()) };
    let neg = -&id;
    let two = Scalar::from_integer(2.into());
    let reynolds = if with_reynolds {
        let inv = linalg::inverse(r)
            .ok_or_else(|| Error::Precondition("operator is not invertible".into()))?;
        let shifted = &inv - &id;
        let der = check_map(MapKind::PoissonDerivation, p, MapTarget::Module(&crate::algebra::adjoint_rep(p)), &shifted)?;
        Some(ReynoldsTransform {
            reynolds: holds(&OperatorSpec::Reynolds(p.clone()), r)?,
            shifted_inverse_is_derivation: der.ok(),
            shifted_inverse: shifted,
        })
    } else {
        None
    };
    Ok(TransformCheck {
        negative_identity_is_weight1: holds(&w1, &neg)?,
        weight1: holds(&w1, r)?,
        complement_weight1: holds(&w1, &(&neg - r))?,
        shifted_modified: holds(&modi, &(&id + &r.scale(&two)))?,
        reynolds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_rep, coadjoint_rep, derivation_space, Bilinear};
    use crate::catalog;
    use crate::cochain::coboundary_of;
    use crate::matrix::int;
    use proptest::prelude::*;

    fn scalar(c: i64) -> Matrix {
        Matrix::from_i64(&[&[c]])
    }

    #[test]
    fn zero_weight0_operator() {
        let p = catalog::sl2_zero();
        let spec = OperatorSpec::RbWeight0 { algebra: p.clone(), rep: coadjoint_rep(&p) };
        let v = check_operator(&spec, &Matrix::zeros(3, 3)).unwrap();
        assert!(v.ok());
    }

    #[test]
    fn fix_b_scalar_families() {
        let p = catalog::fix_b();
        let kinds = [
            (OperatorSpec::RbWeight1(ActionData::adjoint(&p)), vec![-1, 0]),
            (OperatorSpec::ModifiedRb(p.clone()), vec![-1, 1]),
            (OperatorSpec::Reynolds(p.clone()), vec![0, 1]),
            (OperatorSpec::RbWeight0 { algebra: p.clone(), rep: adjoint_rep(&p) }, vec![0]),
        ];
        for (spec, expected) in kinds {
            let sols: Vec<i64> = (-3..=3)
                .filter(|&c| {
                    let v = check_operator(&spec, &scalar(c)).unwrap();
                    assert!(v.agree(), "{:?} c={c}", spec.kind());
                    v.ok()
                })
                .collect();
            assert_eq!(sols, expected, "{:?}", spec.kind());
        }
    }

    #[test]
    fn reynolds_identity_on_fix_b() {
        let t = operator_transforms(&catalog::fix_b(), &scalar(1), true).unwrap();
        let rey = t.reynolds.as_ref().unwrap();
        assert!(rey.reynolds && rey.shifted_inverse_is_derivation);
        assert_eq!(rey.shifted_inverse, scalar(0));
        assert!(t.consistent());
    }

    #[test]
    fn transforms_reject_singular_reynolds() {
        assert!(matches!(
            operator_transforms(&catalog::fix_b(), &scalar(0), true),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn identity_is_reynolds_on_abelian() {
        let p = PoissonAlgebra::abelian(2);
        let t = operator_transforms(&p, &Matrix::identity(2), true).unwrap();
        assert!(t.reynolds.unwrap().shifted_inverse_is_derivation);
    }

    #[test]
    fn derivations_and_homs() {
        let p = catalog::dual_plane();
        let v = adjoint_rep(&p);
        let spec = OperatorSpec::PoissonDerivation { algebra: p.clone(), rep: v.clone() };
        for d in derivation_space(&p, &v) {
            assert!(check_operator(&spec, &d).unwrap().ok());
        }
        let hom = OperatorSpec::PoissonHom { source: p.clone(), target: p.clone() };
        assert!(check_operator(&hom, &Matrix::identity(3)).unwrap().ok());
        let v = check_operator(&hom, &Matrix::identity(3).scale(&int(2))).unwrap();
        assert!(!v.ok() && v.agree());
    }

    #[test]
    fn twisted_rb_with_coboundary_twist() {
        let p = catalog::dual_numbers();
        let v = adjoint_rep(&p);
        let pair = coboundary_of(&p, &v, &Matrix::identity(2));
        let spec = OperatorSpec::TwistedRb { algebra: p, rep: v, cocycle: pair };
        let v = check_operator(&spec, &Matrix::zeros(2, 2)).unwrap();
        assert!(v.ok());
    }

    #[test]
    fn twisted_rb_rejects_non_cocycle() {
        let p = catalog::dual_numbers();
        let v = adjoint_rep(&p);
        let h = Bilinear::from_entries(2, &[(0, 0, 0, int(1))]);
        let pair = TwoCochain::new(h, Bilinear::zero(2, 2, 2)).unwrap();
        let spec = OperatorSpec::TwistedRb { algebra: p, rep: v, cocycle: pair };
        assert!(check_operator(&spec, &Matrix::zeros(2, 2)).is_err());
    }

    fn small(n: usize, m: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-1i64..=1, n * m)
            .prop_map(move |v| Matrix::from_vec(n, m, v.into_iter().map(int).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn direct_and_graph_verdicts_agree(idx in 0usize..12, r in small(2, 2)) {
            let algs: Vec<PoissonAlgebra> = catalog::named_algebras()
                .into_iter().map(|(_, p)| p).filter(|p| p.dim() == 2).collect();
            let p = &algs[idx % algs.len()];
            let specs = [
                OperatorSpec::PoissonHom { source: p.clone(), target: p.clone() },
                OperatorSpec::PoissonDerivation { algebra: p.clone(), rep: adjoint_rep(p) },
                OperatorSpec::RbWeight0 { algebra: p.clone(), rep: coadjoint_rep(p) },
                OperatorSpec::RbWeight1(ActionData::adjoint(p)),
                OperatorSpec::CrossedHom(ActionData::adjoint(p)),
                OperatorSpec::Reynolds(p.clone()),
                OperatorSpec::ModifiedRb(p.clone()),
            ];
            for spec in &specs {
                let v = check_operator(spec, &r).unwrap();
                prop_assert!(v.agree(), "{:?}", spec.kind());
            }
            prop_assert!(operator_transforms(p, &r, false).unwrap().consistent());
        }
    }
}
