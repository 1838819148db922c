//! Poisson algebras and their representations in structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{add_vec, axpy, combine, sub_vec, unit, zeros, Matrix, Scalar};
use crate::report::ValidationReport;

/// Largest accepted algebra dimension.
pub const MAX_DIM: usize = 16;

/// Bilinear map `k^left × k^right → k^out`, stored as `c[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bilinear {
    left: usize,
    right: usize,
    out: usize,
    data: Vec<Scalar>,
}

impl Bilinear {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        Bilinear { left, right, out, data: zeros(left * right * out) }
    }

    pub fn from_vec(left: usize, right: usize, out: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != left * right * out {
            return Err(Error::Shape(format!(
                "tensor {left}x{right}x{out} needs {} entries, got {}",
                left * right * out,
                data.len()
            )));
        }
        Ok(Bilinear { left, right, out, data })
    }

    /// Builds from the values on basis pairs.
    pub fn from_fn(
        left: usize,
        right: usize,
        out: usize,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut data = Vec::with_capacity(left * right * out);
        for i in 0..left {
            for j in 0..right {
                let v = f(i, j);
                assert_eq!(v.len(), out, "basis value has wrong length");
                data.extend(v);
            }
        }
        Bilinear { left, right, out, data }
    }

    /// Sets `e_i ∘ e_j = Σ c e_k` from `(i, j, k, c)` triples, others zero.
    pub fn from_entries(n: usize, entries: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut b = Bilinear::zero(n, n, n);
        for (i, j, k, c) in entries {
            b.data[(i * n + j) * n + k] = c.clone();
        }
        b
    }

    /// Like `from_entries`, also setting the mirrored entry with the given sign.
    pub fn from_entries_mirrored(
        n: usize,
        entries: &[(usize, usize, usize, Scalar)],
        antisymmetric: bool,
    ) -> Self {
        let mut b = Bilinear::from_entries(n, entries);
        for (i, j, k, c) in entries {
            let v = if antisymmetric { -c.clone() } else { c.clone() };
            b.data[(j * n + i) * n + k] = v;
        }
        b
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.right + j) * self.out + k]
    }

    /// Value on the basis pair `(e_i, e_j)`.
    pub fn at(&self, i: usize, j: usize) -> &[Scalar] {
        let s = (i * self.right + j) * self.out;
        &self.data[s..s + self.out]
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.left, "left argument length");
        assert_eq!(y.len(), self.right, "right argument length");
        let mut out = zeros(self.out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.at(i, j));
            }
        }
        out
    }

    /// `(x, y) ↦ post · B(a x, b y)`.
    pub fn transform(&self, a: &Matrix, b: &Matrix, post: &Matrix) -> Bilinear {
        assert_eq!(a.rows(), self.left);
        assert_eq!(b.rows(), self.right);
        assert_eq!(post.cols(), self.out);
        Bilinear::from_fn(a.cols(), b.cols(), post.rows(), |i, j| {
            post.mul_vec(&self.apply(&a.column(i), &b.column(j)))
        })
    }

    pub fn scale(&self, c: &Scalar) -> Bilinear {
        Bilinear { data: self.data.iter().map(|x| c * x).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Bilinear) -> Bilinear {
        assert_eq!(self.dims(), other.dims(), "tensor shape mismatch");
        Bilinear { data: add_vec(&self.data, &other.data), ..self.clone() }
    }

    pub fn sub(&self, other: &Bilinear) -> Bilinear {
        assert_eq!(self.dims(), other.dims(), "tensor shape mismatch");
        Bilinear { data: sub_vec(&self.data, &other.data), ..self.clone() }
    }

    /// Swaps the two arguments.
    pub fn flipped(&self) -> Bilinear {
        Bilinear::from_fn(self.right, self.left, self.out, |i, j| self.at(j, i).to_vec())
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right && *self == self.flipped()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.left == self.right && self.add(&self.flipped()).is_zero()
    }

    /// Slices `x ↦ B(e_i, x)` as matrices `out × right`.
    pub fn left_multiplications(&self) -> Vec<Matrix> {
        (0..self.left)
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = (0..self.right).map(|j| self.at(i, j).to_vec()).collect();
                Matrix::from_columns(self.out, &cols)
            })
            .collect()
    }
}

/// Finite-dimensional Poisson algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonAlgebra {
    dim: usize,
    mult: Bilinear,
    bracket: Bilinear,
    labels: Option<Vec<String>>,
}

impl PoissonAlgebra {
    /// Validates shapes and all five axioms.
    pub fn new(mult: Bilinear, bracket: Bilinear) -> Result<Self> {
        let p = Self::unchecked(mult, bracket)?;
        let report = validate_poisson(&p);
        if report.ok() {
            Ok(p)
        } else {
            Err(Error::axioms("Poisson algebra", report))
        }
    }

    /// Shape checks only. Downstream code expects valid algebras; use this to
    /// obtain something `validate_poisson` can report on.
    pub fn unchecked(mult: Bilinear, bracket: Bilinear) -> Result<Self> {
        let n = mult.left;
        for t in [&mult, &bracket] {
            if t.dims() != (n, n, n) {
                return Err(Error::Shape(format!(
                    "structure tensors must be {n}x{n}x{n}, got {:?}",
                    t.dims()
                )));
            }
        }
        if n > MAX_DIM {
            return Err(Error::Capacity(format!("dimension {n} exceeds the cap {MAX_DIM}")));
        }
        Ok(PoissonAlgebra { dim: n, mult, bracket, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::Shape(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn abelian(n: usize) -> Self {
        let z = Bilinear::zero(n, n, n);
        PoissonAlgebra { dim: n, mult: z.clone(), bracket: z, labels: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Bilinear {
        &self.mult
    }

    pub fn bracket(&self) -> &Bilinear {
        &self.bracket
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(x, y)
    }

    pub fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(x, y)
    }

    /// Structure constants in the basis given by the columns of `g`.
    pub fn change_basis(&self, g: &Matrix) -> Result<Self> {
        let ginv = linalg::inverse(g)
            .ok_or_else(|| Error::Precondition("basis change is not invertible".into()))?;
        Self::new(self.mult.transform(g, g, &ginv), self.bracket.transform(g, g, &ginv))
    }

    /// Direct product `P ⊕ Q` with componentwise operations.
    pub fn direct_product(&self, other: &PoissonAlgebra) -> Result<Self> {
        let (a, b) = (self.dim, other.dim);
        let embed = |t1: &Bilinear, t2: &Bilinear| {
            Bilinear::from_fn(a + b, a + b, a + b, |i, j| {
                let mut v = zeros(a + b);
                if i < a && j < a {
                    v[..a].clone_from_slice(t1.at(i, j));
                } else if i >= a && j >= a {
                    v[a..].clone_from_slice(t2.at(i - a, j - a));
                }
                v
            })
        };
        Self::new(embed(&self.mult, &other.mult), embed(&self.bracket, &other.bracket))
    }
}

/// Checks commutativity, associativity, antisymmetry, Jacobi and Leibniz on
/// all basis tuples in lexicographic order.
pub fn validate_poisson(p: &PoissonAlgebra) -> ValidationReport {
    let n = p.dim;
    let (c, b) = (&p.mult, &p.bracket);
    let e = |i| unit(n, i);
    let mut r = ValidationReport::new();
    for i in 0..n {
        for j in 0..n {
            r.check("commutativity", &[i, j], sub_vec(c.at(i, j), c.at(j, i)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let lhs = c.apply(c.at(i, j), &e(l));
                let rhs = c.apply(&e(i), c.at(j, l));
                r.check("associativity", &[i, j, l], sub_vec(&lhs, &rhs));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            r.check("antisymmetry", &[i, j], add_vec(b.at(i, j), b.at(j, i)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut s = b.apply(&e(i), b.at(j, l));
                s = add_vec(&s, &b.apply(&e(j), b.at(l, i)));
                s = add_vec(&s, &b.apply(&e(l), b.at(i, j)));
                r.check("jacobi", &[i, j, l], s);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let lhs = b.apply(&e(i), c.at(j, l));
                let t1 = c.apply(b.at(i, j), &e(l));
                let t2 = c.apply(&e(j), b.at(i, l));
                r.check("leibniz", &[i, j, l], sub_vec(&lhs, &add_vec(&t1, &t2)));
            }
        }
    }
    r
}

/// Module `V` with `μ_{e_i} = mu[i]` and `ρ_{e_i} = rho[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    mu: Vec<Matrix>,
    rho: Vec<Matrix>,
}

impl Representation {
    pub fn new(p: &PoissonAlgebra, mu: Vec<Matrix>, rho: Vec<Matrix>) -> Result<Self> {
        let v = Self::unchecked(p, mu, rho)?;
        let report = validate_representation(p, &v)?;
        if report.ok() {
            Ok(v)
        } else {
            Err(Error::axioms("representation", report))
        }
    }

    pub fn unchecked(p: &PoissonAlgebra, mu: Vec<Matrix>, rho: Vec<Matrix>) -> Result<Self> {
        if mu.len() != p.dim || rho.len() != p.dim {
            return Err(Error::Shape(format!(
                "need {} action matrices for mu and rho, got {} and {}",
                p.dim,
                mu.len(),
                rho.len()
            )));
        }
        let dim = mu.first().map_or(0, Matrix::rows);
        if mu.iter().chain(&rho).any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Shape("action matrices must all be square of equal size".into()));
        }
        Ok(Representation { dim, mu, rho })
    }

    /// Zero actions on `k^v`.
    pub fn trivial(p: &PoissonAlgebra, v: usize) -> Self {
        let z = vec![Matrix::zeros(v, v); p.dim];
        Representation { dim: v, mu: z.clone(), rho: z }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    /// `μ_x` for a general element `x`.
    pub fn mu_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.mu, x, (self.dim, self.dim))
    }

    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.rho, x, (self.dim, self.dim))
    }

    /// Representation transported along new bases: columns of `g` for the
    /// algebra, columns of `h` for the module.
    pub fn change_basis(&self, p_new: &PoissonAlgebra, g: &Matrix, h: &Matrix) -> Result<Self> {
        let hinv = linalg::inverse(h)
            .ok_or_else(|| Error::Precondition("module basis change is not invertible".into()))?;
        let conj = |fam: &[Matrix]| -> Vec<Matrix> {
            (0..g.cols())
                .map(|i| &(&hinv * &combine(fam, &g.column(i), (self.dim, self.dim))) * h)
                .collect()
        };
        Representation::new(p_new, conj(&self.mu), conj(&self.rho))
    }

    /// `V ⊕ W` with block-diagonal actions.
    pub fn direct_sum(&self, p: &PoissonAlgebra, other: &Representation) -> Result<Self> {
        let (a, b) = (self.dim, other.dim);
        let blk = |x: &Matrix, y: &Matrix| {
            Matrix::block(x, &Matrix::zeros(a, b), &Matrix::zeros(b, a), y)
        };
        let mu = self.mu.iter().zip(&other.mu).map(|(x, y)| blk(x, y)).collect();
        let rho = self.rho.iter().zip(&other.rho).map(|(x, y)| blk(x, y)).collect();
        Representation::new(p, mu, rho)
    }
}

/// Checks the four representation axioms on all basis pairs.
pub fn validate_representation(p: &PoissonAlgebra, v: &Representation) -> Result<ValidationReport> {
    if v.mu.len() != p.dim || v.rho.len() != p.dim {
        return Err(Error::Shape("representation does not match algebra dimension".into()));
    }
    let mut r = ValidationReport::new();
    let n = p.dim;
    for i in 0..n {
        for j in 0..n {
            let lhs = v.mu_of(p.mult.at(i, j));
            let rhs = &v.mu[i] * &v.mu[j];
            r.check("module", &[i, j], (&lhs - &rhs).data().to_vec());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = v.rho_of(p.bracket.at(i, j));
            let rhs = v.rho[i].commutator(&v.rho[j]);
            r.check("lie-module", &[i, j], (&lhs - &rhs).data().to_vec());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = v.mu_of(p.bracket.at(i, j));
            let rhs = &(&v.rho[i] * &v.mu[j]) - &(&v.mu[j] * &v.rho[i]);
            r.check("mixed-bracket", &[i, j], (&lhs - &rhs).data().to_vec());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = v.rho_of(p.mult.at(i, j));
            let rhs = &(&v.mu[i] * &v.rho[j]) + &(&v.mu[j] * &v.rho[i]);
            r.check("mixed-product", &[i, j], (&lhs - &rhs).data().to_vec());
        }
    }
    Ok(r)
}

/// `μ_x y = x·y`, `ρ_x y = {x, y}`.
pub fn adjoint_rep(p: &PoissonAlgebra) -> Representation {
    Representation {
        dim: p.dim,
        mu: p.mult.left_multiplications(),
        rho: p.bracket.left_multiplications(),
    }
}

/// Dual module: `mu[i]ᵀ` and `-rho[i]ᵀ` of the adjoint matrices.
pub fn coadjoint_rep(p: &PoissonAlgebra) -> Representation {
    let adj = adjoint_rep(p);
    Representation {
        dim: p.dim,
        mu: adj.mu.iter().map(Matrix::transpose).collect(),
        rho: adj.rho.iter().map(|m| -&m.transpose()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    PoissonHom,
    PoissonAuto,
    PoissonDerivation,
}

/// Codomain of a checked map.
#[derive(Clone, Copy, Debug)]
pub enum MapTarget<'a> {
    Algebra(&'a PoissonAlgebra),
    Module(&'a Representation),
}

pub fn check_map(
    kind: MapKind,
    source: &PoissonAlgebra,
    target: MapTarget<'_>,
    f: &Matrix,
) -> Result<ValidationReport> {
    let n = source.dim;
    match (kind, target) {
        (MapKind::PoissonHom | MapKind::PoissonAuto, MapTarget::Algebra(q)) => {
            if f.shape() != (q.dim, n) {
                return Err(Error::Shape(format!(
                    "map must be {}x{n}, got {:?}",
                    q.dim,
                    f.shape()
                )));
            }
            if kind == MapKind::PoissonAuto && q != source {
                return Err(Error::Precondition("automorphism target must equal source".into()));
            }
            let mut r = ValidationReport::new();
            let cols: Vec<Vec<Scalar>> = (0..n).map(|i| f.column(i)).collect();
            for i in 0..n {
                for j in 0..n {
                    let lhs = f.mul_vec(source.mult.at(i, j));
                    r.check("hom-product", &[i, j], sub_vec(&lhs, &q.mul(&cols[i], &cols[j])));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let lhs = f.mul_vec(source.bracket.at(i, j));
                    r.check("hom-bracket", &[i, j], sub_vec(&lhs, &q.br(&cols[i], &cols[j])));
                }
            }
            if kind == MapKind::PoissonAuto && !linalg::is_invertible(f) {
                r.violations.push(crate::report::Violation {
                    identity: "invertible".into(),
                    indices: vec![],
                    residual: vec![],
                });
            }
            Ok(r)
        }
        (MapKind::PoissonDerivation, MapTarget::Module(v)) => {
            if f.shape() != (v.dim, n) {
                return Err(Error::Shape(format!(
                    "derivation must be {}x{n}, got {:?}",
                    v.dim,
                    f.shape()
                )));
            }
            Ok(derivation_residuals(source, v, f))
        }
        _ => Err(Error::Precondition(format!("map kind {kind:?} does not fit the target"))),
    }
}

fn derivation_residuals(p: &PoissonAlgebra, v: &Representation, d: &Matrix) -> ValidationReport {
    let n = p.dim;
    let mut r = ValidationReport::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(p.mult.at(i, j));
            let rhs = add_vec(&v.mu[i].mul_vec(&d.column(j)), &v.mu[j].mul_vec(&d.column(i)));
            r.check("derivation-product", &[i, j], sub_vec(&lhs, &rhs));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(p.bracket.at(i, j));
            let rhs = sub_vec(&v.rho[i].mul_vec(&d.column(j)), &v.rho[j].mul_vec(&d.column(i)));
            r.check("derivation-bracket", &[i, j], sub_vec(&lhs, &rhs));
        }
    }
    r
}

/// Basis of the space of Poisson derivations `P → V`, as `v × n` matrices.
pub fn derivation_space(p: &PoissonAlgebra, v: &Representation) -> Vec<Matrix> {
    let (rows, cols) = (v.dim, p.dim);
    linalg::linear_solution_space(rows * cols, |x| {
        let d = Matrix::from_vec(rows, cols, x.to_vec()).expect("shape");
        derivation_residual_vector(p, v, &d)
    })
    .into_iter()
    .map(|x| Matrix::from_vec(rows, cols, x).expect("shape"))
    .collect()
}

fn derivation_residual_vector(p: &PoissonAlgebra, v: &Representation, d: &Matrix) -> Vec<Scalar> {
    let n = p.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(p.mult.at(i, j));
            let rhs = add_vec(&v.mu[i].mul_vec(&d.column(j)), &v.mu[j].mul_vec(&d.column(i)));
            out.extend(sub_vec(&lhs, &rhs));
            let lhs = d.mul_vec(p.bracket.at(i, j));
            let rhs = sub_vec(&v.rho[i].mul_vec(&d.column(j)), &v.rho[j].mul_vec(&d.column(i)));
            out.extend(sub_vec(&lhs, &rhs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matrix::int;

    #[test]
    fn catalog_algebras_are_valid() {
        for (name, p) in catalog::named_algebras() {
            assert!(validate_poisson(&p).ok(), "{name}");
            assert!(validate_representation(&p, &adjoint_rep(&p)).unwrap().ok(), "{name} adjoint");
            assert!(validate_representation(&p, &coadjoint_rep(&p)).unwrap().ok(), "{name} coadjoint");
        }
    }

    #[test]
    fn broken_sl2_reports_jacobi_residual() {
        // h=0, e=1, f=2 with [e,f] = e instead of h.
        let b = Bilinear::from_entries_mirrored(
            3,
            &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 1, int(1))],
            true,
        );
        let p = PoissonAlgebra::unchecked(Bilinear::zero(3, 3, 3), b).unwrap();
        let r = validate_poisson(&p);
        let first = r.first_by_identity();
        assert_eq!(first.len(), 1);
        assert_eq!(first[0].identity, "jacobi");
        assert_eq!(first[0].indices, vec![0, 1, 2]);
        assert_eq!(first[0].residual, vec![int(0), int(2), int(0)]);
        assert!(PoissonAlgebra::new(p.mult().clone(), p.bracket().clone()).is_err());
    }

    #[test]
    fn shape_and_capacity_errors() {
        let bad = PoissonAlgebra::unchecked(Bilinear::zero(2, 2, 2), Bilinear::zero(3, 3, 3));
        assert!(matches!(bad, Err(Error::Shape(_))));
        let big = PoissonAlgebra::unchecked(Bilinear::zero(17, 17, 17), Bilinear::zero(17, 17, 17));
        assert!(matches!(big, Err(Error::Capacity(_))));
    }

    #[test]
    fn fix_b_adjoint_and_coadjoint() {
        let p = catalog::fix_b();
        let adj = adjoint_rep(&p);
        assert_eq!(adj.mu(), &[Matrix::from_i64(&[&[1]])]);
        assert_eq!(adj.rho(), &[Matrix::from_i64(&[&[0]])]);
        assert_eq!(coadjoint_rep(&p), adj);
    }

    #[test]
    fn sl2_adjoint_bracket_matrices() {
        let p = catalog::sl2_zero();
        let adj = adjoint_rep(&p);
        assert!(adj.mu().iter().all(Matrix::is_zero));
        assert_eq!(adj.rho()[0], Matrix::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
        assert_eq!(adj.rho()[1], Matrix::from_i64(&[&[0, 0, 1], &[-2, 0, 0], &[0, 0, 0]]));
        let co = coadjoint_rep(&p);
        assert_eq!(co.rho()[1], -&adj.rho()[1].transpose());
    }

    #[test]
    fn perturbed_adjoint_fails_lie_axiom() {
        let p = catalog::sl2_zero();
        let adj = adjoint_rep(&p);
        let mut rho = adj.rho().to_vec();
        rho[0].set(1, 1, int(3));
        let bad = Representation::unchecked(&p, adj.mu().to_vec(), rho).unwrap();
        let r = validate_representation(&p, &bad).unwrap();
        assert!(r.has("lie-module"));
        // ρ_{[h,e]} = 2ρ_e against the commutator [ρ_h, ρ_e] with the perturbed ρ_h.
        let v = r.violations.iter().find(|v| v.identity == "lie-module").unwrap();
        assert_eq!(v.indices, vec![0, 1]);
    }

    #[test]
    fn trivial_rep_is_valid() {
        for (_, p) in catalog::named_algebras() {
            assert!(validate_representation(&p, &Representation::trivial(&p, 2)).unwrap().ok());
        }
    }

    #[test]
    fn map_checks() {
        let sl2 = catalog::sl2_zero();
        let id = Matrix::identity(3);
        assert!(check_map(MapKind::PoissonAuto, &sl2, MapTarget::Algebra(&sl2), &id).unwrap().ok());
        let b = catalog::fix_b();
        let two = Matrix::from_i64(&[&[2]]);
        let r = check_map(MapKind::PoissonHom, &b, MapTarget::Algebra(&b), &two).unwrap();
        assert_eq!(r.violations[0].identity, "hom-product");
        assert_eq!(r.violations[0].residual, vec![int(-2)]);
        let a2 = PoissonAlgebra::abelian(2);
        let triv = Representation::trivial(&a2, 3);
        let d = Matrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(check_map(MapKind::PoissonDerivation, &a2, MapTarget::Module(&triv), &d).unwrap().ok());
        assert!(check_map(MapKind::PoissonHom, &a2, MapTarget::Module(&triv), &d).is_err());
        let zero = Matrix::zeros(3, 3);
        let r = check_map(MapKind::PoissonAuto, &sl2, MapTarget::Algebra(&sl2), &zero).unwrap();
        assert!(r.has("invertible"));
    }

    #[test]
    fn derivation_space_matches_check_map() {
        for (name, p) in catalog::named_algebras() {
            let adj = adjoint_rep(&p);
            for d in derivation_space(&p, &adj) {
                let r = check_map(MapKind::PoissonDerivation, &p, MapTarget::Module(&adj), &d).unwrap();
                assert!(r.ok(), "{name}");
            }
        }
        // e·e = e forces D(e) = 2D(e).
        assert!(derivation_space(&catalog::fix_b(), &adjoint_rep(&catalog::fix_b())).is_empty());
        // Derivations of sl2 are inner: dimension 3.
        assert_eq!(derivation_space(&catalog::sl2_zero(), &adjoint_rep(&catalog::sl2_zero())).len(), 3);
    }
}
