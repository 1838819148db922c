//! Abelian extensions `0 → V → E → P → 0`, their 2-cocycles, and the Wells
//! obstruction to lifting automorphism and derivation pairs.
//!
//! `E` is given in its own basis together with the inclusion `i: V → E`
//! (`e × v`) and projection `p: E → P` (`n × e`). `V` inside `E` carries the
//! zero Poisson structure, so `Aut(V)` means invertible linear maps and
//! `Der(V)` all linear maps.

use crate::algebra::{check_map, derivation_space, validate_poisson, Bilinear, MapKind, MapTarget, PoissonAlgebra, Representation};
use crate::cochain::{cohomologous_witness, two_cocycle_residuals, FgvComplex, TwoCochain};
use crate::cohomology::{class_decompose_with, cohomology_of, DegreeReport};
use crate::error::{Error, Result};
use crate::linalg::{self, same_span, SpanBuilder};
use crate::matrix::{int, is_zero_vec, sub_vec, unit, Matrix, Scalar};
use crate::report::ValidationReport;

/// Linear right inverse `s: P → E` of the projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    s: Matrix,
}

impl Section {
    pub fn matrix(&self) -> &Matrix {
        &self.s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtension {
    total: PoissonAlgebra,
    inclusion: Matrix,
    projection: Matrix,
    base: PoissonAlgebra,
    module: Representation,
    /// Left inverse of the inclusion, exact on `i(V)`.
    pullback: Matrix,
}

impl AbelianExtension {
    pub fn new(
        total: PoissonAlgebra,
        inclusion: Matrix,
        projection: Matrix,
        base: PoissonAlgebra,
        module: Representation,
    ) -> Result<Self> {
        let (e, n, v) = (total.dim(), base.dim(), module.dim());
        if module.mu().len() != n {
            return Err(Error::Shape("representation does not match the base algebra".into()));
        }
        if inclusion.shape() != (e, v) || projection.shape() != (n, e) {
            return Err(Error::Shape(format!(
                "inclusion must be {e}x{v} and projection {n}x{e}, got {:?} and {:?}",
                inclusion.shape(),
                projection.shape()
            )));
        }
        let poisson = validate_poisson(&total);
        if !poisson.ok() {
            return Err(Error::axioms("total algebra", poisson));
        }
        let mut report = ValidationReport::new();
        let pi = &projection * &inclusion;
        report.check("exactness", &[], pi.data().to_vec());
        if linalg::rank(&inclusion) != v || linalg::rank(&projection) != n || e != n + v {
            report.violations.push(crate::report::Violation {
                identity: "exactness".into(),
                indices: vec![linalg::rank(&inclusion), linalg::rank(&projection)],
                residual: vec![],
            });
        }
        if !report.ok() {
            return Err(Error::axioms("extension", report));
        }
        let it = inclusion.transpose();
        let gram = linalg::inverse(&(&it * &inclusion)).expect("full column rank");
        let pullback = &gram * &it;
        let ext = AbelianExtension { total, inclusion, projection, base, module, pullback };
        let s = ext.canonical_section();
        let mut report = ext.square_zero_report();
        report.merge(ext.action_report(&s));
        let alt = ext.perturbed_section(&s, &Matrix::from_vec(v, n, vec![int(1); v * n])?)?;
        report.merge(ext.action_report(&alt));
        if !report.ok() {
            return Err(Error::axioms("extension", report));
        }
        Ok(ext)
    }

    fn square_zero_report(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let v = self.module.dim();
        for a in 0..v {
            for b in 0..v {
                let (x, y) = (self.inclusion.column(a), self.inclusion.column(b));
                r.check("square-zero-product", &[a, b], self.total.mul(&x, &y));
                r.check("square-zero-bracket", &[a, b], self.total.br(&x, &y));
            }
        }
        r
    }

    fn action_report(&self, s: &Section) -> ValidationReport {
        let mut r = ValidationReport::new();
        for x in 0..self.base.dim() {
            let sx = s.s.column(x);
            for a in 0..self.module.dim() {
                let ia = self.inclusion.column(a);
                let want = self.inclusion.mul_vec(&self.module.mu()[x].column(a));
                r.check("action-product", &[x, a], sub_vec(&self.total.mul(&sx, &ia), &want));
                let want = self.inclusion.mul_vec(&self.module.rho()[x].column(a));
                r.check("action-bracket", &[x, a], sub_vec(&self.total.br(&sx, &ia), &want));
            }
        }
        r
    }

    pub fn total(&self) -> &PoissonAlgebra {
        &self.total
    }

    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn base(&self) -> &PoissonAlgebra {
        &self.base
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    /// Particular solution of `p s = Id` with free variables zero; for the
    /// constructed `P ⊕ V` this is `x ↦ (x, 0)`.
    pub fn canonical_section(&self) -> Section {
        let n = self.base.dim();
        let s = linalg::solve_matrix(&self.projection, &Matrix::identity(n)).expect("projection is surjective");
        Section { s }
    }

    pub fn section(&self, s: Matrix) -> Result<Section> {
        let n = self.base.dim();
        if s.shape() != (self.total.dim(), n) {
            return Err(Error::Shape(format!("section must be {}x{n}", self.total.dim())));
        }
        if &self.projection * &s != Matrix::identity(n) {
            return Err(Error::Precondition("p ∘ s is not the identity".into()));
        }
        Ok(Section { s })
    }

    /// `s + i∘ψ` for `ψ: P → V`.
    pub fn perturbed_section(&self, s: &Section, psi: &Matrix) -> Result<Section> {
        if psi.shape() != (self.module.dim(), self.base.dim()) {
            return Err(Error::Shape("perturbation must be v x n".into()));
        }
        self.section(&s.s + &(&self.inclusion * psi))
    }

    /// Preimage under `i` of a vector of `ker p`.
    pub fn pull_back(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        let u = self.pullback.mul_vec(w);
        if self.inclusion.mul_vec(&u) != w {
            return Err(Error::Precondition("vector is not in the image of the inclusion".into()));
        }
        Ok(u)
    }

    /// Whether `f(i(V)) ⊆ i(V)`; returns `i⁻¹ f i` when it is.
    fn restrict_to_module(&self, f: &Matrix) -> Option<Matrix> {
        let fi = f * &self.inclusion;
        let r = &self.pullback * &fi;
        (&self.inclusion * &r == fi).then_some(r)
    }

    /// `E → E` matrix of `s(x) + u ↦ s(a x) + b u + c x`.
    fn lift_matrix(&self, s: &Section, a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
        let e = self.total.dim();
        let sp = &s.s * &self.projection;
        let module_part = &self.pullback * &(&Matrix::identity(e) - &sp);
        let x = &(&s.s * a) * &self.projection;
        let y = &(&self.inclusion * b) * &module_part;
        let z = &(&self.inclusion * c) * &self.projection;
        &(&x + &y) + &z
    }
}

fn twisted_structure(p: &PoissonAlgebra, v: &Representation, pair: &TwoCochain) -> (Bilinear, Bilinear) {
    let (n, vd) = (p.dim(), v.dim());
    let e = n + vd;
    let embed = |x: &[Scalar], u: &[Scalar]| -> Vec<Scalar> {
        let mut out = x.to_vec();
        out.extend_from_slice(u);
        out
    };
    let zp = vec![Scalar::from_integer(0.into()); n];
    let mult = Bilinear::from_fn(e, e, e, |i, j| match (i < n, j < n) {
        (true, true) => embed(p.mult().at(i, j), pair.comm.at(i, j)),
        (true, false) => embed(&zp, &v.mu()[i].column(j - n)),
        (false, true) => embed(&zp, &v.mu()[j].column(i - n)),
        (false, false) => vec![int(0); e],
    });
    let bracket = Bilinear::from_fn(e, e, e, |i, j| match (i < n, j < n) {
        (true, true) => embed(p.bracket().at(i, j), pair.lie.at(i, j)),
        (true, false) => embed(&zp, &v.rho()[i].column(j - n)),
        (false, true) => embed(&zp, &crate::matrix::neg_vec(&v.rho()[j].column(i - n))),
        (false, false) => vec![int(0); e],
    });
    (mult, bracket)
}

/// `P ⋉ V` with the canonical section.
pub fn build_split_extension(p: &PoissonAlgebra, v: &Representation) -> Result<(AbelianExtension, Section)> {
    build_twisted_extension(p, v, &TwoCochain::zero(p.dim(), v.dim()))
}

/// `P ⊕ V` with product and bracket twisted by a 2-cocycle `(h, H)`.
pub fn build_twisted_extension(
    p: &PoissonAlgebra,
    v: &Representation,
    pair: &TwoCochain,
) -> Result<(AbelianExtension, Section)> {
    let rep = crate::algebra::validate_representation(p, v)?;
    if !rep.ok() {
        return Err(Error::axioms("representation", rep));
    }
    let residuals = two_cocycle_residuals(p, v, pair)?;
    if !residuals.is_zero() {
        return Err(Error::axioms("cochain pair", residuals.report().clone()));
    }
    let (n, vd) = (p.dim(), v.dim());
    let (mult, bracket) = twisted_structure(p, v, pair);
    let total = PoissonAlgebra::new(mult, bracket)?;
    let inclusion = Matrix::zeros(n, vd).vstack(&Matrix::identity(vd));
    let projection = Matrix::identity(n).hstack(&Matrix::zeros(n, vd));
    let ext = AbelianExtension::new(total, inclusion, projection, p.clone(), v.clone())?;
    let s = ext.canonical_section();
    Ok((ext, s))
}

/// `h(x,y) = s(x)·s(y) − s(xy)` and `H(x,y) = {s(x),s(y)} − s{x,y}`, pulled
/// back through `i`.
pub fn extract_cocycle(ext: &AbelianExtension, s: &Section) -> Result<TwoCochain> {
    let (n, v) = (ext.base.dim(), ext.module.dim());
    let cols: Vec<Vec<Scalar>> = (0..n).map(|x| s.s.column(x)).collect();
    let mut comm = Vec::with_capacity(n * n * v);
    let mut lie = Vec::with_capacity(n * n * v);
    for x in 0..n {
        for y in 0..n {
            let w = sub_vec(&ext.total.mul(&cols[x], &cols[y]), &s.s.mul_vec(ext.base.mult().at(x, y)));
            comm.extend(ext.pull_back(&w).map_err(|_| malformed())?);
            let w = sub_vec(&ext.total.br(&cols[x], &cols[y]), &s.s.mul_vec(ext.base.bracket().at(x, y)));
            lie.extend(ext.pull_back(&w).map_err(|_| malformed())?);
        }
    }
    let pair = TwoCochain { comm: Bilinear::from_vec(n, n, v, comm)?, lie: Bilinear::from_vec(n, n, v, lie)? };
    let r = two_cocycle_residuals(&ext.base, &ext.module, &pair)?;
    if !r.is_zero() {
        return Err(Error::Internal(format!("extracted pair is not a cocycle: {}", r.report())));
    }
    Ok(pair)
}

fn malformed() -> Error {
    Error::Precondition("extension malformed: section defect leaves ker p".into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutPair {
    pub beta: Matrix,
    pub alpha: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerPair {
    pub d_v: Matrix,
    pub d_p: Matrix,
}

fn fixed_perturbation(ext: &AbelianExtension) -> Matrix {
    let (v, n) = (ext.module.dim(), ext.base.dim());
    Matrix::from_vec(v, n, (0..v * n).map(|k| int(k as i64 % 3 - 1)).collect()).expect("shape")
}

/// `τ(γ) = (γ|_V, pγs)` for `γ ∈ Aut_V(E)`.
pub fn restrict_and_project_aut(ext: &AbelianExtension, s: &Section, gamma: &Matrix) -> Result<AutPair> {
    let r = check_map(MapKind::PoissonAuto, &ext.total, MapTarget::Algebra(&ext.total), gamma)?;
    if !r.ok() {
        return Err(Error::axioms("map on the total algebra", r));
    }
    let beta = ext
        .restrict_to_module(gamma)
        .ok_or_else(|| Error::Precondition("map does not preserve i(V)".into()))?;
    let alpha = &(&ext.projection * gamma) * &s.s;
    let alt = ext.perturbed_section(s, &fixed_perturbation(ext))?;
    if &(&ext.projection * gamma) * &alt.s != alpha {
        return Err(Error::Internal("projected map depends on the section".into()));
    }
    Ok(AutPair { beta, alpha })
}

/// `η(d) = (d|_V, pds)` for `d ∈ Der_V(E)`.
pub fn restrict_and_project_der(ext: &AbelianExtension, s: &Section, d: &Matrix) -> Result<DerPair> {
    let r = derivation_of_total_report(ext, d)?;
    if !r.ok() {
        return Err(Error::axioms("map on the total algebra", r));
    }
    let d_v = ext
        .restrict_to_module(d)
        .ok_or_else(|| Error::Precondition("map does not preserve i(V)".into()))?;
    let d_p = &(&ext.projection * d) * &s.s;
    let alt = ext.perturbed_section(s, &fixed_perturbation(ext))?;
    if &(&ext.projection * d) * &alt.s != d_p {
        return Err(Error::Internal("projected map depends on the section".into()));
    }
    Ok(DerPair { d_v, d_p })
}

/// Poisson derivation identities of an endomorphism of `E` (values in `E`).
fn derivation_of_total_report(ext: &AbelianExtension, d: &Matrix) -> Result<ValidationReport> {
    let adj = crate::algebra::adjoint_rep(&ext.total);
    check_map(MapKind::PoissonDerivation, &ext.total, MapTarget::Module(&adj), d)
}

fn check_aut_pair(ext: &AbelianExtension, pair: &AutPair) -> Result<()> {
    let (n, v) = (ext.base.dim(), ext.module.dim());
    if pair.beta.shape() != (v, v) || pair.alpha.shape() != (n, n) {
        return Err(Error::Shape(format!("pair must be ({v}x{v}, {n}x{n})")));
    }
    if !linalg::is_invertible(&pair.beta) {
        return Err(Error::Precondition("beta is not invertible".into()));
    }
    let r = check_map(MapKind::PoissonAuto, &ext.base, MapTarget::Algebra(&ext.base), &pair.alpha)?;
    if !r.ok() {
        return Err(Error::axioms("alpha", r));
    }
    Ok(())
}

fn check_der_pair(ext: &AbelianExtension, pair: &DerPair) -> Result<()> {
    let (n, v) = (ext.base.dim(), ext.module.dim());
    if pair.d_v.shape() != (v, v) || pair.d_p.shape() != (n, n) {
        return Err(Error::Shape(format!("pair must be ({v}x{v}, {n}x{n})")));
    }
    let adj = crate::algebra::adjoint_rep(&ext.base);
    let r = check_map(MapKind::PoissonDerivation, &ext.base, MapTarget::Module(&adj), &pair.d_p)?;
    if !r.ok() {
        return Err(Error::axioms("d_P", r));
    }
    Ok(())
}

/// Residuals of `β μ_x = μ_{αx} β` and `β ρ_x = ρ_{αx} β` on basis elements.
pub fn compat_report_aut(ext: &AbelianExtension, pair: &AutPair) -> Result<ValidationReport> {
    check_aut_pair(ext, pair)?;
    let v = &ext.module;
    let mut r = ValidationReport::new();
    for x in 0..ext.base.dim() {
        let ax = pair.alpha.column(x);
        let lhs = &pair.beta * &v.mu()[x];
        let rhs = &v.mu_of(&ax) * &pair.beta;
        r.check("compat-product", &[x], (&lhs - &rhs).data().to_vec());
        let lhs = &pair.beta * &v.rho()[x];
        let rhs = &v.rho_of(&ax) * &pair.beta;
        r.check("compat-bracket", &[x], (&lhs - &rhs).data().to_vec());
    }
    Ok(r)
}

pub fn compat_pair_aut(ext: &AbelianExtension, pair: &AutPair) -> Result<bool> {
    Ok(compat_report_aut(ext, pair)?.ok())
}

/// Residuals of `d_V μ_x = μ_{d_P x} + μ_x d_V` and the bracket analogue.
pub fn compat_report_der(ext: &AbelianExtension, pair: &DerPair) -> Result<ValidationReport> {
    check_der_pair(ext, pair)?;
    Ok(der_compat_residuals(&ext.module, ext.base.dim(), pair))
}

fn der_compat_residuals(v: &Representation, n: usize, pair: &DerPair) -> ValidationReport {
    let mut r = ValidationReport::new();
    for x in 0..n {
        let dx = pair.d_p.column(x);
        let lhs = &pair.d_v * &v.mu()[x];
        let rhs = &v.mu_of(&dx) + &(&v.mu()[x] * &pair.d_v);
        r.check("compat-product", &[x], (&lhs - &rhs).data().to_vec());
        let lhs = &pair.d_v * &v.rho()[x];
        let rhs = &v.rho_of(&dx) + &(&v.rho()[x] * &pair.d_v);
        r.check("compat-bracket", &[x], (&lhs - &rhs).data().to_vec());
    }
    r
}

pub fn compat_pair_der(ext: &AbelianExtension, pair: &DerPair) -> Result<bool> {
    Ok(compat_report_der(ext, pair)?.ok())
}

/// `(β h(α⁻¹·, α⁻¹·), β H(α⁻¹·, α⁻¹·))`.
pub fn transform_aut(pair: &TwoCochain, aut: &AutPair) -> Result<TwoCochain> {
    let inv = linalg::inverse(&aut.alpha).ok_or_else(|| Error::Precondition("alpha is not invertible".into()))?;
    Ok(TwoCochain {
        comm: pair.comm.transform(&inv, &inv, &aut.beta),
        lie: pair.lie.transform(&inv, &inv, &aut.beta),
    })
}

/// `d_V h(x,y) − h(d_P x, y) − h(x, d_P y)` and the same for `H`.
pub fn transform_der(pair: &TwoCochain, der: &DerPair) -> TwoCochain {
    let one = Matrix::identity(der.d_p.rows());
    let ov = Matrix::identity(der.d_v.rows());
    let f = |b: &Bilinear| {
        b.transform(&one, &one, &der.d_v)
            .sub(&b.transform(&der.d_p, &one, &ov))
            .sub(&b.transform(&one, &der.d_p, &ov))
    };
    TwoCochain { comm: f(&pair.comm), lie: f(&pair.lie) }
}

/// Second cohomology of the base with its class coordinates.
pub struct SecondCohomology<'a> {
    cx: FgvComplex<'a>,
    report: DegreeReport,
}

impl<'a> SecondCohomology<'a> {
    pub fn new(p: &'a PoissonAlgebra, v: &'a Representation) -> Result<Self> {
        let cx = FgvComplex::with_defaults(p, v);
        let report = cohomology_of(&cx, 2)?.degrees.pop().expect("degree 2");
        Ok(SecondCohomology { cx, report })
    }

    pub fn dim(&self) -> usize {
        self.report.betti
    }

    /// Coordinates of the class of a 2-cocycle in the representative basis.
    pub fn class_of(&self, pair: &TwoCochain) -> Result<Vec<Scalar>> {
        let z = self.cx.degree2_coords(pair)?;
        Ok(class_decompose_with(&self.cx, &self.report, &z)?.coefficients)
    }
}

/// A Wells class: a representative cocycle and its class coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellsClass {
    pub representative: TwoCochain,
    pub class: Vec<Scalar>,
    /// `φ` with `representative = δφ` when the class vanishes.
    pub witness: Option<Matrix>,
}

impl WellsClass {
    pub fn is_zero(&self) -> bool {
        self.witness.is_some()
    }
}

fn wells_from_representative(ext: &AbelianExtension, rep: TwoCochain) -> Result<WellsClass> {
    let h2 = SecondCohomology::new(&ext.base, &ext.module)?;
    let class = h2.class_of(&rep)?;
    let zero = TwoCochain::zero(ext.base.dim(), ext.module.dim());
    let witness = cohomologous_witness(&ext.base, &ext.module, &rep, &zero)?;
    if witness.is_some() != is_zero_vec(&class) {
        return Err(Error::Internal("class coordinates disagree with the coboundary test".into()));
    }
    Ok(WellsClass { representative: rep, class, witness })
}

pub fn wells_aut_with_section(ext: &AbelianExtension, s: &Section, pair: &AutPair) -> Result<WellsClass> {
    if !compat_pair_aut(ext, pair)? {
        return Err(Error::Precondition("pair violates the compatibility identities".into()));
    }
    let hh = extract_cocycle(ext, s)?;
    wells_from_representative(ext, transform_aut(&hh, pair)?.sub(&hh))
}

pub fn wells_der_with_section(ext: &AbelianExtension, s: &Section, pair: &DerPair) -> Result<WellsClass> {
    if !compat_pair_der(ext, pair)? {
        return Err(Error::Precondition("pair violates the compatibility identities".into()));
    }
    let hh = extract_cocycle(ext, s)?;
    wells_from_representative(ext, transform_der(&hh, pair))
}

fn same_class(ext: &AbelianExtension, a: &WellsClass, b: &WellsClass) -> Result<bool> {
    Ok(cohomologous_witness(&ext.base, &ext.module, &a.representative, &b.representative)?.is_some())
}

/// Wells class of an automorphism pair, computed with the canonical section
/// and re-checked against a second section.
pub fn wells_aut(ext: &AbelianExtension, pair: &AutPair) -> Result<WellsClass> {
    let s = ext.canonical_section();
    let w = wells_aut_with_section(ext, &s, pair)?;
    let alt = ext.perturbed_section(&s, &fixed_perturbation(ext))?;
    if !same_class(ext, &w, &wells_aut_with_section(ext, &alt, pair)?)? {
        return Err(Error::Internal("Wells class depends on the section".into()));
    }
    Ok(w)
}

pub fn wells_der(ext: &AbelianExtension, pair: &DerPair) -> Result<WellsClass> {
    let s = ext.canonical_section();
    let w = wells_der_with_section(ext, &s, pair)?;
    let alt = ext.perturbed_section(&s, &fixed_perturbation(ext))?;
    if !same_class(ext, &w, &wells_der_with_section(ext, &alt, pair)?)? {
        return Err(Error::Internal("Wells class depends on the section".into()));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inducibility {
    /// A verified lift `E → E`.
    Inducible(Matrix),
    Incompatible(ValidationReport),
    /// Compatible, with a nonzero Wells class.
    Obstructed(WellsClass),
}

impl Inducibility {
    pub fn is_inducible(&self) -> bool {
        matches!(self, Inducibility::Inducible(_))
    }

    pub fn lift(&self) -> Option<&Matrix> {
        match self {
            Inducibility::Inducible(m) => Some(m),
            _ => None,
        }
    }
}

/// Decides inducibility of `(β, α)`; a lift is `s(x) + u ↦ s(αx) + βu + φ(αx)`
/// with `h_{(β,α)} − h = δφ`.
pub fn inducible_aut(ext: &AbelianExtension, pair: &AutPair) -> Result<Inducibility> {
    let compat = compat_report_aut(ext, pair)?;
    if !compat.ok() {
        return Ok(Inducibility::Incompatible(compat));
    }
    let w = wells_aut(ext, pair)?;
    let Some(phi) = w.witness.clone() else {
        return Ok(Inducibility::Obstructed(w));
    };
    let s = ext.canonical_section();
    let gamma = ext.lift_matrix(&s, &pair.alpha, &pair.beta, &(&phi * &pair.alpha));
    if restrict_and_project_aut(ext, &s, &gamma)? != *pair {
        return Err(Error::Internal("constructed lift does not restrict to the pair".into()));
    }
    Ok(Inducibility::Inducible(gamma))
}

/// Decides inducibility of `(d_V, d_P)`; a lift is
/// `s(x) + u ↦ s(d_P x) + d_V u + φ(x)` with `h_{(d_V,d_P)} = δφ`.
pub fn inducible_der(ext: &AbelianExtension, pair: &DerPair) -> Result<Inducibility> {
    let compat = compat_report_der(ext, pair)?;
    if !compat.ok() {
        return Ok(Inducibility::Incompatible(compat));
    }
    let w = wells_der(ext, pair)?;
    let Some(phi) = w.witness.clone() else {
        return Ok(Inducibility::Obstructed(w));
    };
    let s = ext.canonical_section();
    let d = ext.lift_matrix(&s, &pair.d_p, &pair.d_v, &phi);
    if restrict_and_project_der(ext, &s, &d)? != *pair {
        return Err(Error::Internal("constructed lift does not restrict to the pair".into()));
    }
    Ok(Inducibility::Inducible(d))
}

/// Dimensions and exactness checks along
/// `0 → Der(P,V) → Der_V(E) → D_{μ,ρ} → H²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceProbe {
    pub der_p_v: usize,
    pub der_v_e: usize,
    pub eta_image: usize,
    pub eta_kernel: usize,
    pub compatible_pairs: usize,
    pub wells_kernel: usize,
    /// `im ι = ker η`.
    pub exact_at_der_v_e: bool,
    /// `im η = ker W`.
    pub exact_at_pairs: bool,
    /// `dim Der_V(E) = dim Der(P,V) + dim im η`.
    pub dims_consistent: bool,
    /// `Id + i D p` is in `Aut_V(E)` with `τ = (Id, Id)` for each basis `D`.
    pub aut_samples_checked: usize,
    pub aut_samples_ok: bool,
}

fn flatten(ms: &[&Matrix]) -> Vec<Scalar> {
    ms.iter().flat_map(|m| m.data().iter().cloned()).collect()
}

pub fn derivation_sequence_probe(ext: &AbelianExtension) -> Result<SequenceProbe> {
    let (e, n, v) = (ext.total.dim(), ext.base.dim(), ext.module.dim());
    let s = ext.canonical_section();
    let der_pv = derivation_space(&ext.base, &ext.module);
    let adj_e = crate::algebra::adjoint_rep(&ext.total);

    // Der_V(E): derivations of E with p d i = 0.
    let der_ve: Vec<Matrix> = linalg::linear_solution_space(e * e, |x| {
        let d = Matrix::from_vec(e, e, x.to_vec()).expect("shape");
        let mut out: Vec<Scalar> = derivation_space_residual(&ext.total, &adj_e, &d);
        out.extend((&(&ext.projection * &d) * &ext.inclusion).data().iter().cloned());
        out
    })
    .into_iter()
    .map(|x| Matrix::from_vec(e, e, x).expect("shape"))
    .collect();

    let eta = |d: &Matrix| -> Vec<Scalar> {
        let dv = &(&ext.pullback * d) * &ext.inclusion;
        let dp = &(&ext.projection * d) * &s.s;
        flatten(&[&dv, &dp])
    };
    let eta_cols: Vec<Vec<Scalar>> = der_ve.iter().map(eta).collect();
    let eta_mat = Matrix::from_columns(v * v + n * n, &eta_cols);
    let eta_image = linalg::rank(&eta_mat);
    let kernel: Vec<Vec<Scalar>> = linalg::kernel_vectors(&eta_mat)
        .into_iter()
        .map(|c| {
            let mut acc = Matrix::zeros(e, e);
            for (ci, d) in c.iter().zip(&der_ve) {
                acc = &acc + &d.scale(ci);
            }
            acc.data().to_vec()
        })
        .collect();
    let iota: Vec<Vec<Scalar>> =
        der_pv.iter().map(|dd| (&(&ext.inclusion * dd) * &ext.projection).data().to_vec()).collect();
    let exact_at_der_v_e = same_span(e * e, &kernel, &iota);

    // D_{μ,ρ}: d_P a derivation of P, d_V linear, compatibility identities.
    let adj_p = crate::algebra::adjoint_rep(&ext.base);
    let pairs: Vec<DerPair> = linalg::linear_solution_space(v * v + n * n, |x| {
        let d_v = Matrix::from_vec(v, v, x[..v * v].to_vec()).expect("shape");
        let d_p = Matrix::from_vec(n, n, x[v * v..].to_vec()).expect("shape");
        let mut out = derivation_space_residual(&ext.base, &adj_p, &d_p);
        let pair = DerPair { d_v, d_p };
        for x in 0..n {
            let dx = pair.d_p.column(x);
            let m = &ext.module;
            let r1 = &(&pair.d_v * &m.mu()[x]) - &(&m.mu_of(&dx) + &(&m.mu()[x] * &pair.d_v));
            let r2 = &(&pair.d_v * &m.rho()[x]) - &(&m.rho_of(&dx) + &(&m.rho()[x] * &pair.d_v));
            out.extend(r1.data().iter().cloned());
            out.extend(r2.data().iter().cloned());
        }
        out
    })
    .into_iter()
    .map(|x| DerPair {
        d_v: Matrix::from_vec(v, v, x[..v * v].to_vec()).expect("shape"),
        d_p: Matrix::from_vec(n, n, x[v * v..].to_vec()).expect("shape"),
    })
    .collect();

    // W is linear on D_{μ,ρ}.
    let hh = extract_cocycle(ext, &s)?;
    let h2 = SecondCohomology::new(&ext.base, &ext.module)?;
    let w_cols: Vec<Vec<Scalar>> =
        pairs.iter().map(|pr| h2.class_of(&transform_der(&hh, pr))).collect::<Result<_>>()?;
    let w_mat = Matrix::from_columns(h2.dim(), &w_cols);
    let wells_kernel: Vec<Vec<Scalar>> = linalg::kernel_vectors(&w_mat)
        .into_iter()
        .map(|c| {
            let mut acc = vec![int(0); v * v + n * n];
            for (ci, pr) in c.iter().zip(&pairs) {
                for (a, b) in acc.iter_mut().zip(flatten(&[&pr.d_v, &pr.d_p])) {
                    *a += ci * b;
                }
            }
            acc
        })
        .collect();
    let exact_at_pairs = same_span(v * v + n * n, &eta_cols, &wells_kernel);

    let mut aut_ok = true;
    for dd in &der_pv {
        let gamma = &Matrix::identity(e) + &(&(&ext.inclusion * dd) * &ext.projection);
        match restrict_and_project_aut(ext, &s, &gamma) {
            Ok(pr) => aut_ok &= pr.beta == Matrix::identity(v) && pr.alpha == Matrix::identity(n),
            Err(_) => aut_ok = false,
        }
    }

    Ok(SequenceProbe {
        der_p_v: der_pv.len(),
        der_v_e: der_ve.len(),
        eta_image,
        eta_kernel: kernel.len(),
        compatible_pairs: pairs.len(),
        wells_kernel: wells_kernel.len(),
        exact_at_der_v_e,
        exact_at_pairs,
        dims_consistent: der_ve.len() == der_pv.len() + eta_image,
        aut_samples_checked: der_pv.len(),
        aut_samples_ok: aut_ok,
    })
}

fn derivation_space_residual(p: &PoissonAlgebra, v: &Representation, d: &Matrix) -> Vec<Scalar> {
    let mut out = Vec::new();
    let n = p.dim();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (unit(n, i), unit(n, j));
            let lhs = d.mul_vec(&p.mul(&ei, &ej));
            let rhs = crate::matrix::add_vec(&v.mu()[i].mul_vec(&d.column(j)), &v.mu()[j].mul_vec(&d.column(i)));
            out.extend(sub_vec(&lhs, &rhs));
            let lhs = d.mul_vec(&p.br(&ei, &ej));
            let rhs = sub_vec(&v.rho()[i].mul_vec(&d.column(j)), &v.rho()[j].mul_vec(&d.column(i)));
            out.extend(sub_vec(&lhs, &rhs));
        }
    }
    out
}

/// Brute-force lift search for a derivation pair: solves the linear system
/// for all `d ∈ Der_V(E)` with `η(d) = (d_V, d_P)` directly.
pub fn brute_force_der_lift(ext: &AbelianExtension, pair: &DerPair) -> Result<Option<Matrix>> {
    let (e, n, v) = (ext.total.dim(), ext.base.dim(), ext.module.dim());
    let s = ext.canonical_section();
    let adj_e = crate::algebra::adjoint_rep(&ext.total);
    let residual = |d: &Matrix| -> Vec<Scalar> {
        let mut out = derivation_space_residual(&ext.total, &adj_e, d);
        out.extend((&(&ext.projection * d) * &ext.inclusion).data().iter().cloned());
        out.extend((&(&ext.pullback * d) * &ext.inclusion).data().iter().cloned());
        out.extend((&(&ext.projection * d) * &s.s).data().iter().cloned());
        out
    };
    let cols: Vec<Vec<Scalar>> = (0..e * e)
        .map(|j| residual(&Matrix::from_vec(e, e, unit(e * e, j)).expect("shape")))
        .collect();
    let a = Matrix::from_columns(cols[0].len(), &cols);
    let mut target = vec![int(0); a.rows() - v * v - n * n];
    target.extend(flatten(&[&pair.d_v, &pair.d_p]));
    let span = {
        let mut sb = SpanBuilder::new(a.rows());
        for c in &cols {
            sb.insert(c);
        }
        sb
    };
    if !span.contains(&target) {
        return Ok(None);
    }
    Ok(linalg::solve(&a, &target).map(|x| Matrix::from_vec(e, e, x).expect("shape")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_rep, coadjoint_rep};
    use crate::catalog;
    use crate::cochain::coboundary_of;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn split_fix_b_adjoint() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        let (ext, s) = build_split_extension(&p, &v).unwrap();
        assert_eq!(ext.total().dim(), 2);
        // (x,u)·(y,v) = (xy, xv + yu)
        let prod = ext.total().mul(&[int(2), int(3)], &[int(5), int(7)]);
        assert_eq!(prod, vec![int(10), int(2 * 7 + 5 * 3)]);
        assert!(extract_cocycle(&ext, &s).unwrap().is_zero());
        let gamma = m(&[&[1, 0], &[0, 2]]);
        let pr = restrict_and_project_aut(&ext, &s, &gamma).unwrap();
        assert_eq!(pr, AutPair { beta: m(&[&[2]]), alpha: m(&[&[1]]) });
        assert!(matches!(
            restrict_and_project_aut(&ext, &s, &m(&[&[1, 0], &[1, 1]])),
            Err(Error::Axioms { .. }) | Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn split_extensions_of_catalog_are_valid() {
        let p = catalog::sl2_zero();
        let (ext, _) = build_split_extension(&p, &coadjoint_rep(&p)).unwrap();
        assert_eq!(ext.total().dim(), 6);
        let a2 = PoissonAlgebra::abelian(2);
        let (ext, _) = build_split_extension(&a2, &Representation::trivial(&a2, 1)).unwrap();
        assert!(ext.total().mult().is_zero() && ext.total().bracket().is_zero());
    }

    #[test]
    fn compatibility_on_fix_b() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        let (ext, _) = build_split_extension(&p, &v).unwrap();
        let id = AutPair { beta: m(&[&[1]]), alpha: m(&[&[1]]) };
        assert!(compat_pair_aut(&ext, &id).unwrap());
        assert!(compat_pair_aut(&ext, &AutPair { beta: m(&[&[2]]), alpha: m(&[&[1]]) }).unwrap());
        // alpha = [2] is not an automorphism of FIX-B (2e·2e = 4e ≠ 2e).
        assert!(compat_pair_aut(&ext, &AutPair { beta: m(&[&[1]]), alpha: m(&[&[2]]) }).is_err());
    }

    #[test]
    fn twisted_roundtrip_and_wells_on_abelian_data() {
        let p = PoissonAlgebra::abelian(2);
        let v = Representation::trivial(&p, 1);
        let h = Bilinear::from_vec(2, 2, 1, vec![int(1), int(2), int(2), int(0)]).unwrap();
        let hh = Bilinear::from_vec(2, 2, 1, vec![int(0), int(3), int(-3), int(0)]).unwrap();
        let pair = TwoCochain::new(h, hh).unwrap();
        let (ext, s) = build_twisted_extension(&p, &v, &pair).unwrap();
        assert_eq!(extract_cocycle(&ext, &s).unwrap(), pair);
        let aut = AutPair { beta: m(&[&[2]]), alpha: Matrix::identity(2) };
        let w = wells_aut(&ext, &aut).unwrap();
        assert_eq!(w.representative, pair);
        assert!(!w.is_zero());
        assert!(matches!(inducible_aut(&ext, &aut).unwrap(), Inducibility::Obstructed(_)));
        let id = AutPair { beta: m(&[&[1]]), alpha: Matrix::identity(2) };
        assert!(inducible_aut(&ext, &id).unwrap().is_inducible());
    }

    #[test]
    fn perturbed_section_gives_cohomologous_pair() {
        let p = catalog::dual_plane();
        let v = adjoint_rep(&p);
        let (ext, s) = build_split_extension(&p, &v).unwrap();
        let psi = m(&[&[1, 0, 2], &[0, 1, -1], &[3, 0, 0]]);
        let s2 = ext.perturbed_section(&s, &psi).unwrap();
        let pair = extract_cocycle(&ext, &s2).unwrap();
        assert_eq!(pair, coboundary_of(&p, &v, &psi));
        assert!(cohomologous_witness(&p, &v, &pair, &TwoCochain::zero(3, 3)).unwrap().is_some());
    }

    #[test]
    fn derivation_pairs_on_fix_b() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        let (ext, _) = build_split_extension(&p, &v).unwrap();
        let zero = DerPair { d_v: m(&[&[0]]), d_p: m(&[&[0]]) };
        let lift = inducible_der(&ext, &zero).unwrap();
        assert!(lift.is_inducible());
        let pair = DerPair { d_v: m(&[&[1]]), d_p: m(&[&[0]]) };
        let verdict = inducible_der(&ext, &pair).unwrap();
        let brute = brute_force_der_lift(&ext, &pair).unwrap();
        assert_eq!(verdict.is_inducible(), brute.is_some());
        assert!(verdict.is_inducible());
    }

    #[test]
    fn sequence_probe_on_split_extensions() {
        for p in [catalog::fix_b(), catalog::lie2(), catalog::dual_numbers()] {
            for v in [adjoint_rep(&p), coadjoint_rep(&p)] {
                let (ext, _) = build_split_extension(&p, &v).unwrap();
                let probe = derivation_sequence_probe(&ext).unwrap();
                assert!(probe.exact_at_der_v_e && probe.exact_at_pairs && probe.dims_consistent, "{probe:?}");
                assert!(probe.aut_samples_ok);
                // Split: W vanishes, so every compatible pair lifts.
                assert_eq!(probe.wells_kernel, probe.compatible_pairs);
            }
        }
        let a = PoissonAlgebra::abelian(1);
        let (ext, _) = build_split_extension(&a, &Representation::trivial(&a, 1)).unwrap();
        let probe = derivation_sequence_probe(&ext).unwrap();
        // Block lower-triangular 2x2 maps.
        assert_eq!(probe.der_v_e, 3);
    }

    #[test]
    fn sequence_probe_on_twisted_extension() {
        let p = PoissonAlgebra::abelian(2);
        let v = Representation::trivial(&p, 1);
        let h = Bilinear::from_vec(2, 2, 1, vec![int(1), int(0), int(0), int(0)]).unwrap();
        let pair = TwoCochain::new(h, Bilinear::zero(2, 2, 1)).unwrap();
        let (ext, _) = build_twisted_extension(&p, &v, &pair).unwrap();
        let probe = derivation_sequence_probe(&ext).unwrap();
        assert!(probe.exact_at_der_v_e && probe.exact_at_pairs && probe.dims_consistent, "{probe:?}");
        assert!(probe.wells_kernel < probe.compatible_pairs);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn derivation_verdicts_match_brute_force(dv in -2i64..=2, dp in prop::collection::vec(-2i64..=2, 4), hv in prop::collection::vec(-2i64..=2, 3)) {
            let p = PoissonAlgebra::abelian(2);
            let v = Representation::trivial(&p, 1);
            let h = Bilinear::from_vec(2, 2, 1, vec![int(hv[0]), int(hv[1]), int(hv[1]), int(hv[2])]).unwrap();
            let pair = TwoCochain::new(h, Bilinear::zero(2, 2, 1)).unwrap();
            let (ext, _) = build_twisted_extension(&p, &v, &pair).unwrap();
            let der = DerPair {
                d_v: Matrix::from_vec(1, 1, vec![int(dv)]).unwrap(),
                d_p: Matrix::from_vec(2, 2, dp.iter().map(|&x| int(x)).collect()).unwrap(),
            };
            let verdict = inducible_der(&ext, &der).unwrap();
            let brute = brute_force_der_lift(&ext, &der).unwrap();
            prop_assert_eq!(verdict.is_inducible(), brute.is_some());
        }
    }
}
