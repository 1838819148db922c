//! Cohomology of a deformation map `r`, linear and formal deformations of
//! `r`, Nijenhuis elements, equivalences and an order-by-order rigidity probe.
//!
//! Conditions required "for all t" are polynomial in `t`; they are checked
//! coefficientwise, with sampled evaluations kept as a second route.

use crate::algebra::{PoissonAlgebra, Representation};
use crate::cochain::{ComplexConfig, FgvComplex};
use crate::cohomology::{class_decompose, cohomology_with_config, CohomologyReport};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{add_vec, int, is_zero_vec, neg_vec, sub_vec, unit, zeros, Matrix, Scalar};
use crate::prototwilled::{equation_residuals, induced_rep, is_deformation_map, ProtoTwilled};
use crate::report::ValidationReport;

/// `r_t = r_0 + t r_1 + … + t^N r_N`, truncated at order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDeformation {
    terms: Vec<Matrix>,
}

impl FormalDeformation {
    pub fn new(terms: Vec<Matrix>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::Shape("a deformation needs at least its base term".into()));
        };
        if terms.iter().any(|m| m.shape() != first.shape()) {
            return Err(Error::Shape("deformation terms differ in shape".into()));
        }
        Ok(FormalDeformation { terms })
    }

    /// `r + t r₁`.
    pub fn linear(r: Matrix, r1: Matrix) -> Result<Self> {
        Self::new(vec![r, r1])
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn base(&self) -> &Matrix {
        &self.terms[0]
    }

    pub fn terms(&self) -> &[Matrix] {
        &self.terms
    }

    /// `r_i`, zero beyond the order.
    pub fn term(&self, i: usize) -> Matrix {
        self.terms.get(i).cloned().unwrap_or_else(|| Matrix::zeros(self.base().rows(), self.base().cols()))
    }

    /// `Σ t^i r_i` at a scalar `t`.
    pub fn at(&self, t: &Scalar) -> Matrix {
        let mut acc = Matrix::zeros(self.base().rows(), self.base().cols());
        let mut pw = int(1);
        for m in &self.terms {
            acc = &acc + &m.scale(&pw);
            pw *= t;
        }
        acc
    }
}

fn require_defmap(pt: &ProtoTwilled, r: &Matrix) -> Result<()> {
    let rep = is_deformation_map(pt, r)?;
    if rep.ok() {
        Ok(())
    } else {
        Err(Error::axioms("deformation map", rep))
    }
}

fn require_psi_zero(pt: &ProtoTwilled) -> Result<()> {
    if pt.maps().psi.iter().all(Matrix::is_zero) {
        Ok(())
    } else {
        Err(Error::Precondition("the map ψ: P₂ → End(P₁) must vanish".into()))
    }
}

/// The induced algebra `(P₂)_r` and its representation on `P₁`, whose FGV
/// complex is the complex of `r`.
pub fn operator_pair(pt: &ProtoTwilled, r: &Matrix) -> Result<(PoissonAlgebra, Representation)> {
    induced_rep(pt, r)
}

pub fn operator_cohomology(pt: &ProtoTwilled, r: &Matrix, kmax: usize) -> Result<CohomologyReport> {
    operator_cohomology_with_config(pt, r, kmax, ComplexConfig::default())
}

pub fn operator_cohomology_with_config(
    pt: &ProtoTwilled,
    r: &Matrix,
    kmax: usize,
    config: ComplexConfig,
) -> Result<CohomologyReport> {
    let (alg, rep) = operator_pair(pt, r)?;
    cohomology_with_config(&alg, &rep, kmax, config)
}

/// `δ^r(x₀)` as a map `P₂ → P₁`, computed through the complex and checked
/// against `u ↦ (ψ_r)_u x₀`.
pub fn coboundary_of_element(pt: &ProtoTwilled, r: &Matrix, x0: &[Scalar]) -> Result<Matrix> {
    if x0.len() != pt.n1() {
        return Err(Error::Shape(format!("element must have {} coordinates", pt.n1())));
    }
    let (alg, rep) = operator_pair(pt, r)?;
    let cx = FgvComplex::with_defaults(&alg, &rep);
    let b00 = cx.basis(0, 0)?;
    let coords = b00.coords_of(x0)?;
    let image = cx.delta_fgv(0)?.matrix.mul_vec(&coords);
    let via_complex = cx.map_from_degree1(&image);
    let cols: Vec<Vec<Scalar>> = rep.rho().iter().map(|m| m.mul_vec(x0)).collect();
    let direct = Matrix::from_columns(pt.n1(), &cols);
    if via_complex != direct {
        return Err(Error::Internal("degree-0 coboundary disagrees with the induced action".into()));
    }
    Ok(direct)
}

/// `δ^r(f)` for `f: P₂ → P₁`, in degree-2 coordinates of the complex of `r`.
pub fn coboundary_of_map(pt: &ProtoTwilled, r: &Matrix, f: &Matrix) -> Result<Vec<Scalar>> {
    let (alg, rep) = operator_pair(pt, r)?;
    let cx = FgvComplex::with_defaults(&alg, &rep);
    let coords = cx.degree1_coords(f)?;
    Ok(cx.delta_fgv(1)?.matrix.mul_vec(&coords))
}

/// Coefficients in `t` of the deformation-map residuals of `Σ t^i terms[i]`,
/// recovered by exact interpolation at `t = 0, 1, …, 3N`.
fn sampled_coefficients(pt: &ProtoTwilled, rt: &FormalDeformation) -> Result<Vec<Vec<[Vec<Scalar>; 2]>>> {
    let deg = 3 * rt.order();
    let ts: Vec<Scalar> = (0..=deg as i64).map(int).collect();
    let samples: Vec<Vec<[Vec<Scalar>; 2]>> = ts.iter().map(|t| equation_residuals(pt, &rt.at(t))).collect();
    let vander = Matrix::from_rows(
        ts.iter()
            .map(|t| {
                let mut row = Vec::with_capacity(deg + 1);
                let mut p = int(1);
                for _ in 0..=deg {
                    row.push(p.clone());
                    p *= t;
                }
                row
            })
            .collect(),
    )?;
    let vinv = linalg::inverse(&vander).ok_or_else(|| Error::Internal("singular interpolation matrix".into()))?;
    let pairs = samples[0].len();
    let mut out = Vec::with_capacity(deg + 1);
    for i in 0..=deg {
        let mut coeff = Vec::with_capacity(pairs);
        for p in 0..pairs {
            let mut c: [Vec<Scalar>; 2] = [zeros(pt.n1()), zeros(pt.n1())];
            for (k, s) in samples.iter().enumerate() {
                let w = vinv.get(i, k);
                for side in 0..2 {
                    crate::matrix::axpy(&mut c[side], w, &s[p][side]);
                }
            }
            coeff.push(c);
        }
        out.push(coeff);
    }
    Ok(out)
}

/// The order-`n` identities of a formal deformation on the pair `(e_a, e_b)`.
fn order_identities(pt: &ProtoTwilled, rt: &FormalDeformation, n: usize, a: usize, b: usize) -> [Vec<Scalar>; 2] {
    let m = pt.maps();
    let (n1, n2) = (m.n1, m.n2);
    let (u, v) = (unit(n2, a), unit(n2, b));
    let r = |i: usize| rt.term(i);
    let ru = |i: usize| r(i).column(a);
    let rv = |i: usize| r(i).column(b);
    let fam = |f: &[Matrix], x: &[Scalar], s: usize| crate::prototwilled::family_at(f, x, (s, s));

    let mut lhs = zeros(n1);
    let mut rhs = r(n).mul_vec(m.dot2.at(a, b));
    for i in 0..=n {
        let j = n - i;
        lhs = add_vec(&lhs, &m.dot1.apply(&ru(i), &rv(j)));
        let inner = add_vec(&fam(&m.mu, &ru(j), n2).mul_vec(&v), &fam(&m.mu, &rv(j), n2).mul_vec(&u));
        rhs = add_vec(&rhs, &r(i).mul_vec(&inner));
        for k in 0..=j {
            let l = j - k;
            rhs = add_vec(&rhs, &r(i).mul_vec(&m.h.apply(&ru(k), &rv(l))));
        }
    }
    lhs = add_vec(&lhs, &m.nu[a].mul_vec(&rv(n)));
    lhs = add_vec(&lhs, &m.nu[b].mul_vec(&ru(n)));
    let product = sub_vec(&lhs, &rhs);

    let mut lhs = zeros(n1);
    let mut rhs = r(n).mul_vec(m.br2.at(a, b));
    for i in 0..=n {
        let j = n - i;
        lhs = add_vec(&lhs, &m.br1.apply(&ru(i), &rv(j)));
        let inner = sub_vec(&fam(&m.rho, &ru(j), n2).mul_vec(&v), &fam(&m.rho, &rv(j), n2).mul_vec(&u));
        rhs = add_vec(&rhs, &r(i).mul_vec(&inner));
        for k in 0..=j {
            let l = j - k;
            rhs = add_vec(&rhs, &r(i).mul_vec(&m.big_h.apply(&ru(k), &rv(l))));
        }
    }
    lhs = add_vec(&lhs, &m.psi[a].mul_vec(&rv(n)));
    lhs = sub_vec(&lhs, &m.psi[b].mul_vec(&ru(n)));
    [product, sub_vec(&lhs, &rhs)]
}

/// The two order-`n` identities for `1 ≤ n ≤ N` on all basis pairs; indices
/// of a violation are `[n, a, b]`.
pub fn formal_deformation_check(pt: &ProtoTwilled, rt: &FormalDeformation) -> Result<ValidationReport> {
    if rt.base().shape() != (pt.n1(), pt.n2()) {
        return Err(Error::Shape("deformation terms do not match the splitting".into()));
    }
    require_defmap(pt, rt.base())?;
    let n2 = pt.n2();
    let sampled = sampled_coefficients(pt, rt)?;
    let mut rep = ValidationReport::new();
    for n in 1..=rt.order() {
        for a in 0..n2 {
            for b in 0..n2 {
                let ids = order_identities(pt, rt, n, a, b);
                if ids != sampled[n][a * n2 + b] {
                    return Err(Error::Internal(format!(
                        "order-{n} identities disagree with interpolated residuals at ({a},{b})"
                    )));
                }
                let [p, q] = ids;
                rep.check("formal-product", &[n, a, b], p);
                rep.check("formal-bracket", &[n, a, b], q);
            }
        }
    }
    Ok(rep)
}

/// Whether `r₁` generates a linear deformation `r + t r₁`: the six
/// coefficient identities (degrees 1, 2, 3 in `t`, for product and bracket).
pub fn linear_deformation_check(pt: &ProtoTwilled, r: &Matrix, r1: &Matrix) -> Result<ValidationReport> {
    require_defmap(pt, r)?;
    if r1.shape() != r.shape() {
        return Err(Error::Shape("r₁ must have the shape of r".into()));
    }
    let m = pt.maps();
    let (n1, n2) = (m.n1, m.n2);
    let fam = |f: &[Matrix], x: &[Scalar]| crate::prototwilled::family_at(f, x, (n2, n2));
    let mut rep = ValidationReport::new();
    let mut coeffs = Vec::new();
    for a in 0..n2 {
        for b in 0..n2 {
            let (u, v) = (unit(n2, a), unit(n2, b));
            let (ru, rv, su, sv) = (r.column(a), r.column(b), r1.column(a), r1.column(b));
            // u ·_r v and {u, v}_r.
            let mut prod_r = m.dot2.at(a, b).to_vec();
            prod_r = add_vec(&prod_r, &fam(&m.mu, &ru).mul_vec(&v));
            prod_r = add_vec(&prod_r, &fam(&m.mu, &rv).mul_vec(&u));
            prod_r = add_vec(&prod_r, &m.h.apply(&ru, &rv));
            let mut br_r = m.br2.at(a, b).to_vec();
            br_r = add_vec(&br_r, &fam(&m.rho, &ru).mul_vec(&v));
            br_r = sub_vec(&br_r, &fam(&m.rho, &rv).mul_vec(&u));
            br_r = add_vec(&br_r, &m.big_h.apply(&ru, &rv));

            let mut l1 = add_vec(&m.dot1.apply(&ru, &sv), &m.dot1.apply(&su, &rv));
            l1 = add_vec(&l1, &m.nu[a].mul_vec(&sv));
            l1 = add_vec(&l1, &m.nu[b].mul_vec(&su));
            let mut inner = add_vec(&fam(&m.mu, &su).mul_vec(&v), &fam(&m.mu, &sv).mul_vec(&u));
            inner = add_vec(&inner, &m.h.apply(&su, &rv));
            inner = add_vec(&inner, &m.h.apply(&ru, &sv));
            let p1 = sub_vec(&l1, &add_vec(&r.mul_vec(&inner), &r1.mul_vec(&prod_r)));

            let mut inner = add_vec(&fam(&m.mu, &su).mul_vec(&v), &fam(&m.mu, &sv).mul_vec(&u));
            inner = add_vec(&inner, &m.h.apply(&ru, &sv));
            inner = add_vec(&inner, &m.h.apply(&su, &rv));
            let rhs = add_vec(&r1.mul_vec(&inner), &r.mul_vec(&m.h.apply(&su, &sv)));
            let p2 = sub_vec(&m.dot1.apply(&su, &sv), &rhs);
            let p3 = neg_vec(&r1.mul_vec(&m.h.apply(&su, &sv)));

            let mut l1 = add_vec(&m.br1.apply(&ru, &sv), &m.br1.apply(&su, &rv));
            l1 = add_vec(&l1, &m.psi[a].mul_vec(&sv));
            l1 = sub_vec(&l1, &m.psi[b].mul_vec(&su));
            let mut inner = sub_vec(&fam(&m.rho, &su).mul_vec(&v), &fam(&m.rho, &sv).mul_vec(&u));
            inner = add_vec(&inner, &m.big_h.apply(&su, &rv));
            inner = add_vec(&inner, &m.big_h.apply(&ru, &sv));
            let b1 = sub_vec(&l1, &add_vec(&r.mul_vec(&inner), &r1.mul_vec(&br_r)));

            let mut inner = sub_vec(&fam(&m.rho, &su).mul_vec(&v), &fam(&m.rho, &sv).mul_vec(&u));
            inner = add_vec(&inner, &m.big_h.apply(&ru, &sv));
            inner = add_vec(&inner, &m.big_h.apply(&su, &rv));
            let rhs = add_vec(&r1.mul_vec(&inner), &r.mul_vec(&m.big_h.apply(&su, &sv)));
            let b2 = sub_vec(&m.br1.apply(&su, &sv), &rhs);
            let b3 = neg_vec(&r1.mul_vec(&m.big_h.apply(&su, &sv)));
            debug_assert_eq!(p1.len(), n1);
            coeffs.push([[p1, b1], [p2, b2], [p3, b3]]);
        }
    }
    for (t, k) in [("t1", 0), ("t2", 1), ("t3", 2)] {
        for a in 0..n2 {
            for b in 0..n2 {
                rep.check(&format!("linear-product-{t}"), &[a, b], coeffs[a * n2 + b][k][0].clone());
            }
        }
        for a in 0..n2 {
            for b in 0..n2 {
                rep.check(&format!("linear-bracket-{t}"), &[a, b], coeffs[a * n2 + b][k][1].clone());
            }
        }
    }

    // Second route: interpolation of the residuals of r + t r₁, and direct
    // deformation-map tests at t = 1, 2, 3.
    let rt = FormalDeformation::linear(r.clone(), r1.clone())?;
    let sampled = sampled_coefficients(pt, &rt)?;
    for (p, c) in coeffs.iter().enumerate() {
        for k in 0..3 {
            if c[k] != sampled[k + 1][p] {
                return Err(Error::Internal("linear identities disagree with interpolated residuals".into()));
            }
        }
    }
    let all_t = (1..=3).map(|t| is_deformation_map(pt, &rt.at(&int(t))).map(|x| x.ok()));
    let sampled_ok = all_t.collect::<Result<Vec<bool>>>()?.into_iter().all(|x| x);
    if sampled_ok != rep.ok() {
        return Err(Error::Internal("linear deformation verdict disagrees with sampled deformation maps".into()));
    }
    Ok(rep)
}

/// `K = diag({x₀, −}₁, ρ_{x₀} + H(x₀, r −))` on `P₁ ⊕ P₂`, the `t`-linear part
/// of the maps attached to `x₀`.
pub fn nijenhuis_generator(pt: &ProtoTwilled, r: &Matrix, x0: &[Scalar]) -> Result<Matrix> {
    let m = pt.maps();
    let (n1, n2) = (m.n1, m.n2);
    if x0.len() != n1 || r.shape() != (n1, n2) {
        return Err(Error::Shape("element or map does not match the splitting".into()));
    }
    let k1 = Matrix::from_columns(n1, &(0..n1).map(|i| m.br1.apply(x0, &unit(n1, i))).collect::<Vec<_>>());
    let rho = crate::prototwilled::family_at(&m.rho, x0, (n2, n2));
    let k2 = Matrix::from_columns(
        n2,
        &(0..n2).map(|a| add_vec(&rho.column(a), &m.big_h.apply(x0, &r.column(a)))).collect::<Vec<_>>(),
    );
    Ok(Matrix::block(&k1, &Matrix::zeros(n1, n2), &Matrix::zeros(n2, n1), &k2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisReport {
    /// Coefficients of `t` and `t²` in the homomorphism condition of `Id + tK`.
    pub hom: ValidationReport,
    /// `{{r u, x₀}₁ − r(−ρ_{x₀} u + H(r u, x₀)), x₀}₁ = 0`.
    pub extra: ValidationReport,
}

impl NijenhuisReport {
    pub fn is_nijenhuis(&self) -> bool {
        self.hom.ok() && self.extra.ok()
    }
}

pub fn nijenhuis_check(pt: &ProtoTwilled, r: &Matrix, x0: &[Scalar]) -> Result<NijenhuisReport> {
    require_defmap(pt, r)?;
    let k = nijenhuis_generator(pt, r, x0)?;
    let total = pt.total();
    let n = pt.n1() + pt.n2();
    let mut hom = ValidationReport::new();
    let kc: Vec<Vec<Scalar>> = (0..n).map(|i| k.column(i)).collect();
    for (name, t) in [("product", total.mult()), ("bracket", total.bracket())] {
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (unit(n, i), unit(n, j));
                let mut s = k.mul_vec(t.at(i, j));
                s = sub_vec(&s, &t.apply(&kc[i], &ej));
                s = sub_vec(&s, &t.apply(&ei, &kc[j]));
                hom.check(&format!("nijenhuis-{name}-t1"), &[i, j], s);
            }
        }
        for i in 0..n {
            for j in 0..n {
                hom.check(&format!("nijenhuis-{name}-t2"), &[i, j], t.apply(&kc[i], &kc[j]));
            }
        }
    }
    let m = pt.maps();
    let (n1, n2) = (m.n1, m.n2);
    let mut extra = ValidationReport::new();
    let rho = crate::prototwilled::family_at(&m.rho, x0, (n2, n2));
    for a in 0..n2 {
        let ru = r.column(a);
        let inner = add_vec(&neg_vec(&rho.column(a)), &m.big_h.apply(&ru, x0));
        let w = sub_vec(&m.br1.apply(&ru, x0), &r.mul_vec(&inner));
        extra.check("nijenhuis-extra", &[a], m.br1.apply(&w, x0));
    }
    debug_assert_eq!(x0.len(), n1);
    Ok(NijenhuisReport { hom, extra })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Homomorphism conditions of `φ_{1,t} ⊕ φ_{2,t}`, indices `[order, i, j]`.
    pub hom: ValidationReport,
    /// `φ_{1,t} ∘ r_t = r′_t ∘ φ_{2,t}`, indices `[order, a]`.
    pub intertwine: ValidationReport,
    /// Terms `φ_i` for `i ≥ 2` found by solving the truncated equations.
    pub higher: Vec<Matrix>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.hom.ok() && self.intertwine.ok()
    }
}

/// Residual components at order `i` for the series `phis` (block diagonal
/// `(n1+n2)²` matrices, `phis[0] = Id`), as (tag, indices, residual).
fn equivalence_residuals(
    pt: &ProtoTwilled,
    rt: &FormalDeformation,
    rt2: &FormalDeformation,
    phis: &[Matrix],
    i: usize,
    linear: bool,
) -> Vec<(String, Vec<usize>, Vec<Scalar>)> {
    let (n1, n2) = (pt.n1(), pt.n2());
    let n = n1 + n2;
    let total = pt.total();
    let phi = |j: usize| phis.get(j).cloned().unwrap_or_else(|| Matrix::zeros(n, n));
    let mut out = Vec::new();
    for (name, t) in [("product", total.mult()), ("bracket", total.bracket())] {
        for a in 0..n {
            for b in 0..n {
                let mut s = neg_vec(&phi(i).mul_vec(t.at(a, b)));
                for j in 0..=i {
                    s = add_vec(&s, &t.apply(&phi(j).column(a), &phi(i - j).column(b)));
                }
                out.push((format!("equivalence-hom-{name}"), vec![i, a, b], s));
            }
        }
    }
    let tag = match (linear, i) {
        (true, 1) => "intertwine-t1".to_string(),
        (true, 2) => "intertwine-t2".to_string(),
        _ => "intertwine".to_string(),
    };
    let mut acc = Matrix::zeros(n1, n2);
    for j in 0..=i {
        let p = phi(j);
        let p1 = p.submatrix(0, n1, 0, n1);
        let p2 = p.submatrix(n1, n2, n1, n2);
        acc = &acc + &(&p1 * &rt.term(i - j));
        acc = &acc - &(&rt2.term(i - j) * &p2);
    }
    for a in 0..n2 {
        out.push((tag.clone(), vec![i, a], acc.column(a)));
    }
    out
}

/// Whether `x₀` gives an equivalence from `r_t` to `r′_t`. Linear
/// deformations (order 1) are compared exactly in `t`; higher orders modulo
/// `t^{N+1}`, with the terms `φ_i`, `i ≥ 2`, solved order by order.
pub fn equivalence_check(
    pt: &ProtoTwilled,
    rt: &FormalDeformation,
    rt2: &FormalDeformation,
    x0: &[Scalar],
) -> Result<EquivalenceReport> {
    if rt.base() != rt2.base() {
        return Err(Error::Precondition("deformations start from different maps".into()));
    }
    let r = rt.base();
    require_defmap(pt, r)?;
    let (n1, n2) = (pt.n1(), pt.n2());
    let n = n1 + n2;
    let linear = rt.order() <= 1 && rt2.order() <= 1;
    let top = if linear { 2 } else { rt.order().max(rt2.order()) };
    let mut phis = vec![Matrix::identity(n), nijenhuis_generator(pt, r, x0)?];
    let mut higher = Vec::new();
    let mut hom = ValidationReport::new();
    let mut intertwine = ValidationReport::new();
    for i in 1..=top {
        if i >= 2 && !linear {
            let embed = |z: &[Scalar]| {
                let mut m = Matrix::zeros(n, n);
                for p in 0..n1 {
                    for q in 0..n1 {
                        m.set(p, q, z[p * n1 + q].clone());
                    }
                }
                for p in 0..n2 {
                    for q in 0..n2 {
                        m.set(n1 + p, n1 + q, z[n1 * n1 + p * n2 + q].clone());
                    }
                }
                m
            };
            let unknowns = n1 * n1 + n2 * n2;
            let eval = |z: &[Scalar]| -> Vec<Scalar> {
                let mut ph = phis.clone();
                ph.push(embed(z));
                equivalence_residuals(pt, rt, rt2, &ph, i, linear).into_iter().flat_map(|(_, _, v)| v).collect()
            };
            let base = eval(&zeros(unknowns));
            let cols: Vec<Vec<Scalar>> =
                (0..unknowns).map(|k| sub_vec(&eval(&unit(unknowns, k)), &base)).collect();
            let a = Matrix::from_columns(base.len(), &cols);
            let z = linalg::solve(&a, &neg_vec(&base)).unwrap_or_else(|| zeros(unknowns));
            let phi_i = embed(&z);
            higher.push(phi_i.clone());
            phis.push(phi_i);
        }
        for (tag, idx, res) in equivalence_residuals(pt, rt, rt2, &phis, i, linear) {
            if tag.starts_with("intertwine") {
                intertwine.check(&tag, &idx, res);
            } else {
                hom.check(&tag, &idx, res);
            }
        }
    }
    Ok(EquivalenceReport { hom, intertwine, higher })
}

/// The infinitesimal `r₁` of a deformation, with its coboundary in the
/// complex of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infinitesimal {
    pub map: Matrix,
    /// Degree-1 coordinates of `r₁`.
    pub coords: Vec<Scalar>,
    /// Degree-2 coordinates of `δ^r(r₁)`.
    pub coboundary: Vec<Scalar>,
}

impl Infinitesimal {
    pub fn is_cocycle(&self) -> bool {
        is_zero_vec(&self.coboundary)
    }
}

pub fn infinitesimal(pt: &ProtoTwilled, rt: &FormalDeformation) -> Result<Infinitesimal> {
    let truncated = FormalDeformation::new(vec![rt.base().clone(), rt.term(1)])?;
    let rep = formal_deformation_check(pt, &truncated)?;
    if !rep.ok() {
        return Err(Error::axioms("deformation to order 1", rep));
    }
    let (alg, module) = operator_pair(pt, rt.base())?;
    let cx = FgvComplex::with_defaults(&alg, &module);
    let map = rt.term(1);
    let coords = cx.degree1_coords(&map)?;
    let coboundary = cx.delta_fgv(1)?.matrix.mul_vec(&coords);
    Ok(Infinitesimal { map, coords, coboundary })
}

/// For equivalent deformations via `x₀` (with `ψ = 0`): `r₁ − r′₁ = δ^r(x₀)`.
pub fn infinitesimals_differ_by(
    pt: &ProtoTwilled,
    rt: &FormalDeformation,
    rt2: &FormalDeformation,
    x0: &[Scalar],
) -> Result<bool> {
    require_psi_zero(pt)?;
    let d = coboundary_of_element(pt, rt.base(), x0)?;
    Ok(&rt.term(1) - &rt2.term(1) == d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RigidityConfig {
    pub max_steps: usize,
    /// Preimages of a coboundary tested for the Nijenhuis property per step.
    pub candidate_limit: usize,
}

impl Default for RigidityConfig {
    fn default() -> Self {
        RigidityConfig { max_steps: 8, candidate_limit: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializationStep {
    pub order: usize,
    pub x0: Vec<Scalar>,
    pub terms_after: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The lowest term is not `δ^r` of anything; its class coordinates.
    NotCoboundary { class: Vec<Scalar> },
    /// Preimages exist but none of those tried is a Nijenhuis element.
    NoNijenhuisPreimage { tried: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityOutcome {
    Trivialized,
    Obstructed { order: usize, obstruction: Obstruction },
    StepLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub outcome: RigidityOutcome,
    pub steps: Vec<TrivializationStep>,
}

/// Coefficient vectors over `{-2, …, 2}` (or `{-1, 0, 1}` in higher
/// dimension), ordered by total weight then lexicographically.
fn small_combinations(dim: usize, limit: usize) -> Vec<Vec<i64>> {
    let range: Vec<i64> = if dim <= 4 { vec![-2, -1, 0, 1, 2] } else { vec![-1, 0, 1] };
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        all = all.into_iter().flat_map(|v| range.iter().map(move |&c| [v.clone(), vec![c]].concat())).collect();
        if all.len() > 200_000 {
            break;
        }
    }
    all.sort_by_key(|v| (v.iter().map(|c| c.abs()).sum::<i64>(), v.clone()));
    all.truncate(limit);
    all
}

/// Multiplies truncated matrix series.
fn series_mul(a: &[Matrix], b: &[Matrix], order: usize) -> Vec<Matrix> {
    let (rows, cols) = (a[0].rows(), b[0].cols());
    (0..=order)
        .map(|k| {
            let mut acc = Matrix::zeros(rows, cols);
            for i in 0..=k {
                if let (Some(x), Some(y)) = (a.get(i), b.get(k - i)) {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Repeatedly removes the lowest nonzero term of `r_t` by the equivalence
/// `r′_t = φ_{1,t} ∘ r_t ∘ φ_{2,t}⁻¹` attached to a Nijenhuis element,
/// truncating at the order of `r_t`.
pub fn rigidity_probe(pt: &ProtoTwilled, rt: &FormalDeformation, config: RigidityConfig) -> Result<RigidityReport> {
    require_psi_zero(pt)?;
    let rep = formal_deformation_check(pt, rt)?;
    if !rep.ok() {
        return Err(Error::axioms("formal deformation", rep));
    }
    let r = rt.base().clone();
    let (n1, n2) = (pt.n1(), pt.n2());
    let order = rt.order();
    let (alg, module) = operator_pair(pt, &r)?;
    let cx = FgvComplex::with_defaults(&alg, &module);
    // Column i: degree-1 coordinates of δ^r(e_i).
    let dcols: Vec<Vec<Scalar>> = (0..n1)
        .map(|i| coboundary_of_element(pt, &r, &unit(n1, i)).and_then(|m| cx.degree1_coords(&m)))
        .collect::<Result<_>>()?;
    let d0 = Matrix::from_columns(n1 * n2, &dcols);
    let kernel = linalg::kernel_vectors(&d0);

    let mut terms = rt.terms().to_vec();
    let mut steps = Vec::new();
    loop {
        let Some(k) = (1..=order).find(|&k| !terms[k].is_zero()) else {
            return Ok(RigidityReport { outcome: RigidityOutcome::Trivialized, steps });
        };
        if steps.len() >= config.max_steps {
            return Ok(RigidityReport { outcome: RigidityOutcome::StepLimit, steps });
        }
        let target = cx.degree1_coords(&terms[k])?;
        let Some(xp) = linalg::solve(&d0, &target) else {
            let class = class_decompose(&alg, &module, 1, &target)?.coefficients;
            return Ok(RigidityReport {
                outcome: RigidityOutcome::Obstructed { order: k, obstruction: Obstruction::NotCoboundary { class } },
                steps,
            });
        };
        let mut found = None;
        let combos = small_combinations(kernel.len(), config.candidate_limit);
        for c in &combos {
            let mut x = xp.clone();
            for (ci, kv) in c.iter().zip(&kernel) {
                crate::matrix::axpy(&mut x, &int(*ci), kv);
            }
            if nijenhuis_check(pt, &r, &x)?.is_nijenhuis() {
                found = Some(x);
                break;
            }
        }
        let Some(x0) = found else {
            return Ok(RigidityReport {
                outcome: RigidityOutcome::Obstructed {
                    order: k,
                    obstruction: Obstruction::NoNijenhuisPreimage { tried: combos.len() },
                },
                steps,
            });
        };
        let kk = nijenhuis_generator(pt, &r, &x0)?;
        let k1 = kk.submatrix(0, n1, 0, n1);
        let k2 = kk.submatrix(n1, n2, n1, n2);
        let mut phi1 = vec![Matrix::zeros(n1, n1); order + 1];
        phi1[0] = Matrix::identity(n1);
        if k <= order {
            phi1[k] = k1;
        }
        // (Id + t^k K₂)⁻¹ = Σ_j (−t^k K₂)^j.
        let mut inv2 = vec![Matrix::zeros(n2, n2); order + 1];
        let mut pw = Matrix::identity(n2);
        let neg_k2 = -&k2;
        let mut deg = 0;
        while deg <= order {
            inv2[deg] = pw.clone();
            pw = &pw * &neg_k2;
            deg += k;
        }
        let next = series_mul(&series_mul(&phi1, &terms, order), &inv2, order);
        if !next[k].is_zero() {
            return Err(Error::Internal(format!("order-{k} term survived the trivialization step")));
        }
        let check = formal_deformation_check(pt, &FormalDeformation::new(next.clone())?)?;
        if !check.ok() {
            return Err(Error::Internal(format!("trivialization step broke the deformation: {check}")));
        }
        steps.push(TrivializationStep { order: k, x0, terms_after: next.clone() });
        terms = next;
    }
}
