//! Shuffle-constrained cochain spaces `C^{m,n}(P,V)` and the coboundary maps
//! of the FGV bicomplex.
//!
//! Ambient coordinates of `Hom(P^{⊗m} ⊗ ∧ⁿP, V)` are ordered with tensor
//! slots lexicographic, wedge slots as strictly increasing tuples, and the
//! module index innermost. A cochain in `C^{m,n}` is stored by its values at
//! the free columns of the reduced shuffle constraint system; each basis vector
//! has a single 1 among those columns, so these values are its coordinates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::algebra::{Bilinear, PoissonAlgebra, Representation};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{add_vec, int, sub_vec, zeros, Matrix, Scalar};
use crate::report::ValidationReport;

pub const DEFAULT_MAX_DEGREE: usize = 3;
/// Hard ceiling for the configurable maximum degree.
pub const DEGREE_LIMIT: usize = 4;
pub const DEFAULT_AMBIENT_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexConfig {
    pub max_degree: usize,
    /// Largest ambient dimension of a single `(m,n)` space.
    pub ambient_cap: usize,
}

impl Default for ComplexConfig {
    fn default() -> Self {
        ComplexConfig { max_degree: DEFAULT_MAX_DEGREE, ambient_cap: DEFAULT_AMBIENT_CAP }
    }
}

impl ComplexConfig {
    pub fn with_max_degree(max_degree: usize) -> Result<Self> {
        if max_degree > DEGREE_LIMIT {
            return Err(Error::Capacity(format!(
                "maximum degree {max_degree} exceeds the limit {DEGREE_LIMIT}"
            )));
        }
        Ok(ComplexConfig { max_degree, ..Default::default() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub m: usize,
    pub n: usize,
}

impl Bidegree {
    pub fn new(m: usize, n: usize) -> Self {
        Bidegree { m, n }
    }
}

type SparseVec = Vec<(usize, Scalar)>;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `k`-tuples from `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorts wedge arguments, returning the permutation sign; `None` on repeats.
pub(crate) fn sort_wedge(xs: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = xs.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Index bookkeeping for one ambient space.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    p_dim: usize,
    v_dim: usize,
    m: usize,
    wedges: Vec<Vec<usize>>,
    wedge_pos: HashMap<Vec<usize>, usize>,
    tensors: usize,
}

impl Layout {
    fn new(p_dim: usize, v_dim: usize, m: usize, n: usize, cap: usize) -> Result<Self> {
        let tensors = p_dim.checked_pow(m as u32).unwrap_or(usize::MAX);
        let w = binomial(p_dim, n);
        let ambient = tensors.saturating_mul(w).saturating_mul(v_dim);
        if ambient > cap {
            return Err(Error::Capacity(format!(
                "C^{{{m},{n}}} has ambient dimension {ambient}, above the cap {cap}"
            )));
        }
        let wedges = combinations(p_dim, n);
        let wedge_pos = wedges.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(Layout { p_dim, v_dim, m, wedges, wedge_pos, tensors })
    }

    fn ambient_dim(&self) -> usize {
        self.tensors * self.wedges.len() * self.v_dim
    }

    fn tensor_index(&self, a: &[usize]) -> usize {
        a.iter().fold(0, |acc, &x| acc * self.p_dim + x)
    }

    fn decode_tensor(&self, mut t: usize) -> Vec<usize> {
        let mut a = vec![0; self.m];
        for slot in a.iter_mut().rev() {
            *slot = t % self.p_dim;
            t /= self.p_dim;
        }
        a
    }

    fn index(&self, t: usize, w: usize, q: usize) -> usize {
        (t * self.wedges.len() + w) * self.v_dim + q
    }

    fn decode(&self, idx: usize) -> (Vec<usize>, usize, usize) {
        let q = idx % self.v_dim;
        let rest = idx / self.v_dim;
        let w = rest % self.wedges.len();
        (self.decode_tensor(rest / self.wedges.len()), w, q)
    }

    /// Ambient index of `f(a; xs)` for unsorted wedge arguments, with sign.
    fn locate(&self, a: &[usize], xs: &[usize], q: usize) -> Option<(i64, usize)> {
        let (sign, sorted) = sort_wedge(xs)?;
        let w = self.wedge_pos[&sorted];
        Some((sign, self.index(self.tensor_index(a), w, q)))
    }
}

/// The `(i, m-i)` shuffle sum for a fixed tensor argument `a`, as a list of
/// `(sign, permuted tuple)`. Slots in `S` receive `a[..i]` in order.
fn shuffle_terms(a: &[usize], i: usize) -> Vec<(i64, Vec<usize>)> {
    let m = a.len();
    combinations(m, i)
        .into_iter()
        .map(|s| {
            let mut out = vec![0; m];
            let mut in_s = vec![false; m];
            for (k, &pos) in s.iter().enumerate() {
                out[pos] = a[k];
                in_s[pos] = true;
            }
            let mut rest = a[i..].iter();
            for pos in 0..m {
                if !in_s[pos] {
                    out[pos] = *rest.next().expect("complement size");
                }
            }
            let inversions: usize = s.iter().sum::<usize>() - i * (i.saturating_sub(1)) / 2;
            (if inversions % 2 == 0 { 1 } else { -1 }, out)
        })
        .collect()
}

/// Dense constraint matrix whose kernel is `C^{m,n}`: one row per
/// `(a, i, wedge, q)` with `0 < i < m`.
pub fn shuffle_constraint_matrix(m: usize, n: usize, p_dim: usize, v_dim: usize) -> Result<Matrix> {
    shuffle_constraint_matrix_capped(m, n, p_dim, v_dim, DEFAULT_AMBIENT_CAP)
}

pub fn shuffle_constraint_matrix_capped(
    m: usize,
    n: usize,
    p_dim: usize,
    v_dim: usize,
    cap: usize,
) -> Result<Matrix> {
    let lay = Layout::new(p_dim, v_dim, m, n, cap)?;
    let cols = lay.ambient_dim();
    let mut rows = Vec::new();
    for t in 0..lay.tensors {
        let a = lay.decode_tensor(t);
        for i in 1..m {
            let terms = shuffle_terms(&a, i);
            for w in 0..lay.wedges.len() {
                for q in 0..v_dim {
                    let mut row = zeros(cols);
                    for (s, b) in &terms {
                        row[lay.index(lay.tensor_index(b), w, q)] += int(*s);
                    }
                    rows.push(row);
                }
            }
        }
    }
    let nrows = rows.len();
    Matrix::from_vec(nrows, cols, rows.into_iter().flatten().collect())
}

/// Distinct rearrangements of a sorted multiset, lexicographic.
fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    fn go(rem: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut last = None;
        for k in 0..rem.len() {
            if Some(rem[k]) == last {
                continue;
            }
            last = Some(rem[k]);
            let x = rem.remove(k);
            cur.push(x);
            go(rem, cur, out);
            cur.pop();
            rem.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut sorted.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Basis of `C^{m,n}` given as sparse ambient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasis {
    bidegree: Bidegree,
    p_dim: usize,
    v_dim: usize,
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
    free: Vec<usize>,
}

impl CochainBasis {
    fn build(lay: &Layout, bidegree: Bidegree) -> Self {
        let m = lay.m;
        let mut entries: Vec<(usize, SparseVec)> = Vec::new();
        if m < 2 {
            for idx in 0..lay.ambient_dim() {
                entries.push((idx, vec![(idx, Scalar::one())]));
            }
        } else {
            // Constraints never mix tensor tuples from different multisets, or
            // different wedge/module indices, so the kernel splits into blocks
            // whose free columns agree with those of the global RREF.
            let mut seen: HashMap<Vec<usize>, Vec<(usize, Vec<(usize, Scalar)>)>> = HashMap::new();
            for t in 0..lay.tensors {
                let mut key = lay.decode_tensor(t);
                key.sort_unstable();
                if seen.contains_key(&key) {
                    continue;
                }
                let perms = distinct_permutations(&key);
                let tidx: Vec<usize> = perms.iter().map(|a| lay.tensor_index(a)).collect();
                let local: HashMap<usize, usize> = tidx.iter().enumerate().map(|(k, &t)| (t, k)).collect();
                let mut rows = Vec::new();
                for a in &perms {
                    for i in 1..m {
                        let mut row = zeros(perms.len());
                        for (s, b) in shuffle_terms(a, i) {
                            row[local[&lay.tensor_index(&b)]] += int(s);
                        }
                        rows.push(row);
                    }
                }
                let nrows = rows.len();
                let cm = Matrix::from_vec(nrows, perms.len(), rows.into_iter().flatten().collect())
                    .expect("local constraint shape");
                let r = linalg::rref(&cm);
                let kernel: Vec<(usize, Vec<(usize, Scalar)>)> = r
                    .free_columns()
                    .into_iter()
                    .zip(linalg::kernel_from_rref(&r))
                    .map(|(f, v)| {
                        let sparse = v
                            .into_iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(k, x)| (tidx[k], x))
                            .collect();
                        (tidx[f], sparse)
                    })
                    .collect();
                seen.insert(key, kernel);
            }
            for kernel in seen.values() {
                for (free_t, sparse) in kernel {
                    for w in 0..lay.wedges.len() {
                        for q in 0..lay.v_dim {
                            let mut vec: SparseVec =
                                sparse.iter().map(|(t, x)| (lay.index(*t, w, q), x.clone())).collect();
                            vec.sort_by_key(|(i, _)| *i);
                            entries.push((lay.index(*free_t, w, q), vec));
                        }
                    }
                }
            }
            entries.sort_by_key(|(f, _)| *f);
        }
        let (free, vectors) = entries.into_iter().unzip();
        CochainBasis {
            bidegree,
            p_dim: lay.p_dim,
            v_dim: lay.v_dim,
            ambient_dim: lay.ambient_dim(),
            vectors,
            free,
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Ambient positions carrying the coordinates, ascending.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// Columns are the basis vectors in ambient coordinates.
    pub fn basis_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ambient_dim, self.dim());
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, x) in v {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn to_ambient(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut out = zeros(self.ambient_dim);
        for (c, v) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in v {
                out[*i] += c * x;
            }
        }
        out
    }

    /// Coordinates of an ambient vector; fails if it is not in the space.
    pub fn coords_of(&self, ambient: &[Scalar]) -> Result<Vec<Scalar>> {
        if ambient.len() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "ambient vector of length {} for C^{{{},{}}} of ambient dimension {}",
                ambient.len(),
                self.bidegree.m,
                self.bidegree.n,
                self.ambient_dim
            )));
        }
        let coords: Vec<Scalar> = self.free.iter().map(|&i| ambient[i].clone()).collect();
        if self.to_ambient(&coords) != ambient {
            return Err(Error::Precondition(format!(
                "vector does not satisfy the shuffle conditions of C^{{{},{}}}",
                self.bidegree.m, self.bidegree.n
            )));
        }
        Ok(coords)
    }

    pub fn contains(&self, ambient: &[Scalar]) -> bool {
        self.coords_of(ambient).is_ok()
    }
}

/// Degree-`k` cochains: the blocks `C^{m,k-m}` with `m ≠ 1`, by increasing `m`.
#[derive(Clone, Debug)]
pub struct DegreeSpace {
    pub k: usize,
    pub blocks: Vec<Arc<CochainBasis>>,
}

impl DegreeSpace {
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    pub fn offset(&self, bd: Bidegree) -> Option<usize> {
        let mut off = 0;
        for b in &self.blocks {
            if b.bidegree == bd {
                return Some(off);
            }
            off += b.dim();
        }
        None
    }

    /// Coordinates of the given block inside a degree-`k` vector.
    pub fn block_coords<'v>(&self, bd: Bidegree, coords: &'v [Scalar]) -> Option<&'v [Scalar]> {
        let off = self.offset(bd)?;
        let b = self.blocks.iter().find(|b| b.bidegree == bd)?;
        Some(&coords[off..off + b.dim()])
    }
}

/// A degree-`k` cochain in the coordinates of its [`DegreeSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl Cochain {
    /// Nonzero blocks as ambient vectors of their `C^{m,n}`.
    pub fn blocks(&self, space: &DegreeSpace) -> Vec<(Bidegree, Vec<Scalar>)> {
        let mut off = 0;
        let mut out = Vec::new();
        for b in &space.blocks {
            let c = &self.coords[off..off + b.dim()];
            off += b.dim();
            if c.iter().any(|x| !x.is_zero()) {
                out.push((b.bidegree(), b.to_ambient(c)));
            }
        }
        out
    }
}

pub fn degree_bidegrees(k: usize) -> Vec<Bidegree> {
    (0..=k).filter(|&m| m != 1).map(|m| Bidegree::new(m, k - m)).collect()
}

/// Matrix of `δ_FGV` from degree `k` to degree `k+1` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryMatrix {
    pub k: usize,
    pub matrix: Matrix,
    /// Nonzero-capable blocks: `(source, target)`.
    pub layout: Vec<(Bidegree, Bidegree)>,
}

/// FGV bicomplex of a fixed pair `(P, V)`; bases are built lazily and cached.
pub struct FgvComplex<'a> {
    p: &'a PoissonAlgebra,
    v: &'a Representation,
    config: ComplexConfig,
    bases: Mutex<BTreeMap<Bidegree, Arc<CochainBasis>>>,
}

fn accumulate(row: &mut BTreeMap<usize, Scalar>, idx: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = row.entry(idx).or_insert_with(Scalar::zero);
    *e += c;
}

fn finish(row: BTreeMap<usize, Scalar>) -> SparseVec {
    row.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn sparse_dot(row: &SparseVec, col: &SparseVec) -> Scalar {
    let (mut i, mut j) = (0, 0);
    let mut s = Scalar::zero();
    while i < row.len() && j < col.len() {
        match row[i].0.cmp(&col[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &row[i].1 * &col[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

fn sign_scalar(s: i64) -> Scalar {
    int(s)
}

impl<'a> FgvComplex<'a> {
    pub fn new(p: &'a PoissonAlgebra, v: &'a Representation, config: ComplexConfig) -> Result<Self> {
        if v.mu().len() != p.dim() {
            return Err(Error::Shape("representation does not match the algebra".into()));
        }
        if config.max_degree > DEGREE_LIMIT {
            return Err(Error::Capacity(format!(
                "maximum degree {} exceeds the limit {DEGREE_LIMIT}",
                config.max_degree
            )));
        }
        Ok(FgvComplex { p, v, config, bases: Mutex::new(BTreeMap::new()) })
    }

    pub fn with_defaults(p: &'a PoissonAlgebra, v: &'a Representation) -> Self {
        Self::new(p, v, ComplexConfig::default()).expect("default configuration")
    }

    pub fn algebra(&self) -> &PoissonAlgebra {
        self.p
    }

    pub fn module(&self) -> &Representation {
        self.v
    }

    pub fn config(&self) -> ComplexConfig {
        self.config
    }

    fn layout(&self, m: usize, n: usize) -> Result<Layout> {
        Layout::new(self.p.dim(), self.v.dim(), m, n, self.config.ambient_cap)
    }

    pub fn basis(&self, m: usize, n: usize) -> Result<Arc<CochainBasis>> {
        let bd = Bidegree::new(m, n);
        if let Some(b) = self.bases.lock().expect("basis cache").get(&bd) {
            return Ok(b.clone());
        }
        let lay = self.layout(m, n)?;
        let b = Arc::new(CochainBasis::build(&lay, bd));
        self.bases.lock().expect("basis cache").insert(bd, b.clone());
        Ok(b)
    }

    pub fn degree_space(&self, k: usize) -> Result<DegreeSpace> {
        let blocks = degree_bidegrees(k)
            .into_iter()
            .map(|bd| self.basis(bd.m, bd.n))
            .collect::<Result<_>>()?;
        Ok(DegreeSpace { k, blocks })
    }

    /// Sparse functional giving `(δ_H f)` at one target ambient index.
    /// `m ≥ 1` here; the target is `C^{m+1,n}`.
    fn harrison_row(&self, src: &Layout, tgt: &Layout, idx: usize) -> SparseVec {
        let (a, w, q) = tgt.decode(idx);
        let m = src.m;
        let mu = self.v.mu();
        let c = self.p.mult();
        let mut row = BTreeMap::new();
        let vd = self.v.dim();
        let t_tail = src.tensor_index(&a[1..]);
        for qq in 0..vd {
            accumulate(&mut row, src.index(t_tail, w, qq), mu[a[0]].get(q, qq).clone());
        }
        for i in 0..m {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            for k in 0..self.p.dim() {
                let coef = c.get(a[i], a[i + 1], k);
                if coef.is_zero() {
                    continue;
                }
                let mut b = Vec::with_capacity(m);
                b.extend_from_slice(&a[..i]);
                b.push(k);
                b.extend_from_slice(&a[i + 2..]);
                accumulate(&mut row, src.index(src.tensor_index(&b), w, q), sign_scalar(sign) * coef);
            }
        }
        let last_sign = if (m + 1) % 2 == 0 { 1 } else { -1 };
        let t_head = src.tensor_index(&a[..m]);
        for qq in 0..vd {
            accumulate(&mut row, src.index(t_head, w, qq), sign_scalar(last_sign) * mu[a[m]].get(q, qq));
        }
        finish(row)
    }

    /// `δ_H` from `C^{0,n}` through the inclusion into `C^{1,n-1}`.
    fn harrison_row_from_zero(&self, src: &Layout, tgt: &Layout, idx: usize) -> SparseVec {
        let (a, w, q) = tgt.decode(idx);
        let xs = &tgt.wedges[w];
        let mu = self.v.mu();
        let c = self.p.mult();
        let vd = self.v.dim();
        let mut row = BTreeMap::new();
        // f̃(b; xs) = f(b ∧ xs)
        let tilde = |row: &mut BTreeMap<usize, Scalar>, b: usize, qq: usize, coef: Scalar| {
            let mut args = Vec::with_capacity(xs.len() + 1);
            args.push(b);
            args.extend_from_slice(xs);
            if let Some((s, i)) = src.locate(&[], &args, qq) {
                accumulate(row, i, sign_scalar(s) * coef);
            }
        };
        for qq in 0..vd {
            tilde(&mut row, a[1], qq, mu[a[0]].get(q, qq).clone());
            tilde(&mut row, a[0], qq, mu[a[1]].get(q, qq).clone());
        }
        for k in 0..self.p.dim() {
            let coef = c.get(a[0], a[1], k);
            if !coef.is_zero() {
                tilde(&mut row, k, q, -coef.clone());
            }
        }
        finish(row)
    }

    /// Sparse functional giving `(δ_CE f)` at one target index of `C^{m,n+1}`.
    fn ce_row(&self, src: &Layout, tgt: &Layout, idx: usize) -> SparseVec {
        let (a, w, q) = tgt.decode(idx);
        let xs = &tgt.wedges[w];
        let rho = self.v.rho();
        let b = self.p.bracket();
        let vd = self.v.dim();
        let pd = self.p.dim();
        let t = src.tensor_index(&a);
        let mut row = BTreeMap::new();
        for i in 0..xs.len() {
            let sign = sign_scalar(if i % 2 == 0 { 1 } else { -1 });
            let mut hat = xs.clone();
            let xi = hat.remove(i);
            let wh = src.wedge_pos[&hat];
            for qq in 0..vd {
                accumulate(&mut row, src.index(t, wh, qq), &sign * rho[xi].get(q, qq));
            }
            for j in 0..a.len() {
                for k in 0..pd {
                    let coef = b.get(xi, a[j], k);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut aa = a.clone();
                    aa[j] = k;
                    accumulate(&mut row, src.index(src.tensor_index(&aa), wh, q), -(&sign * coef));
                }
            }
        }
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let sign = sign_scalar(if (i + j) % 2 == 0 { 1 } else { -1 });
                let rest: Vec<usize> =
                    xs.iter().enumerate().filter(|(l, _)| *l != i && *l != j).map(|(_, &x)| x).collect();
                for k in 0..pd {
                    let coef = b.get(xs[i], xs[j], k);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut args = vec![k];
                    args.extend_from_slice(&rest);
                    if let Some((s, id)) = src.locate(&a, &args, q) {
                        accumulate(&mut row, id, &sign * coef * sign_scalar(s));
                    }
                }
            }
        }
        finish(row)
    }

    fn check_h_source(m: usize, n: usize) -> Result<()> {
        match (m, n) {
            (1, _) => Err(Error::Bidegree { m, n, reason: "m = 1 is not a block of the complex".into() }),
            (0, 0) => Err(Error::Bidegree { m, n, reason: "no Harrison map out of C^{0,0}".into() }),
            _ => Ok(()),
        }
    }

    fn h_target(m: usize, n: usize) -> Bidegree {
        if m == 0 {
            Bidegree::new(2, n - 1)
        } else {
            Bidegree::new(m + 1, n)
        }
    }

    fn h_rows(&self, m: usize, n: usize) -> Result<(Layout, Layout, Box<dyn Fn(&Layout, &Layout, usize) -> SparseVec + '_>)> {
        let t = Self::h_target(m, n);
        let src = self.layout(m, n)?;
        let tgt = self.layout(t.m, t.n)?;
        let f: Box<dyn Fn(&Layout, &Layout, usize) -> SparseVec + '_> = if m == 0 {
            Box::new(move |s, t, i| self.harrison_row_from_zero(s, t, i))
        } else {
            Box::new(move |s, t, i| self.harrison_row(s, t, i))
        };
        Ok((src, tgt, f))
    }

    fn restricted(
        &self,
        src_basis: &CochainBasis,
        tgt_basis: &CochainBasis,
        row: impl Fn(usize) -> SparseVec,
    ) -> Matrix {
        let mut out = Matrix::zeros(tgt_basis.dim(), src_basis.dim());
        for (r, &idx) in tgt_basis.free.iter().enumerate() {
            let sr = row(idx);
            if sr.is_empty() {
                continue;
            }
            for (c, col) in src_basis.vectors.iter().enumerate() {
                let x = sparse_dot(&sr, col);
                if !x.is_zero() {
                    out.set(r, c, x);
                }
            }
        }
        out
    }

    /// `δ_H` between cochain bases: `C^{m,n} → C^{m+1,n}` for `m ≥ 2`,
    /// `C^{0,n} → C^{2,n-1}` for `m = 0`.
    pub fn delta_h(&self, m: usize, n: usize) -> Result<Matrix> {
        Self::check_h_source(m, n)?;
        let t = Self::h_target(m, n);
        let (src, tgt, f) = self.h_rows(m, n)?;
        let sb = self.basis(m, n)?;
        let tb = self.basis(t.m, t.n)?;
        Ok(self.restricted(&sb, &tb, |i| f(&src, &tgt, i)))
    }

    /// `δ_CE: C^{m,n} → C^{m,n+1}` between cochain bases.
    pub fn delta_ce(&self, m: usize, n: usize) -> Result<Matrix> {
        if m == 1 {
            return Err(Error::Bidegree { m, n, reason: "m = 1 is not a block of the complex".into() });
        }
        let src = self.layout(m, n)?;
        let tgt = self.layout(m, n + 1)?;
        let sb = self.basis(m, n)?;
        let tb = self.basis(m, n + 1)?;
        Ok(self.restricted(&sb, &tb, |i| self.ce_row(&src, &tgt, i)))
    }

    /// `δ_H` on a full ambient vector. Accepts `m = 1` as an intermediate.
    pub fn apply_delta_h_ambient(&self, m: usize, n: usize, f: &[Scalar]) -> Result<Vec<Scalar>> {
        if m == 0 && n == 0 {
            return Err(Error::Bidegree { m, n, reason: "no Harrison map out of C^{0,0}".into() });
        }
        let t = Self::h_target(m, n);
        let src = self.layout(m, n)?;
        let tgt = self.layout(t.m, t.n)?;
        if f.len() != src.ambient_dim() {
            return Err(Error::Shape("ambient vector length".into()));
        }
        let dense: SparseVec = f.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        Ok((0..tgt.ambient_dim())
            .map(|i| {
                let row = if m == 0 {
                    self.harrison_row_from_zero(&src, &tgt, i)
                } else {
                    self.harrison_row(&src, &tgt, i)
                };
                sparse_dot(&row, &dense)
            })
            .collect())
    }

    pub fn apply_delta_ce_ambient(&self, m: usize, n: usize, f: &[Scalar]) -> Result<Vec<Scalar>> {
        let src = self.layout(m, n)?;
        let tgt = self.layout(m, n + 1)?;
        if f.len() != src.ambient_dim() {
            return Err(Error::Shape("ambient vector length".into()));
        }
        let dense: SparseVec = f.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        Ok((0..tgt.ambient_dim()).map(|i| sparse_dot(&self.ce_row(&src, &tgt, i), &dense)).collect())
    }

    /// Block matrix of `δ_FGV = δ_H + (-1)^m δ_CE` from degree `k`.
    pub fn delta_fgv(&self, k: usize) -> Result<CoboundaryMatrix> {
        if k > self.config.max_degree {
            return Err(Error::Capacity(format!(
                "degree {k} exceeds the configured maximum {}",
                self.config.max_degree
            )));
        }
        let src = self.degree_space(k)?;
        let tgt = self.degree_space(k + 1)?;
        let mut matrix = Matrix::zeros(tgt.total_dim(), src.total_dim());
        let mut layout = Vec::new();
        let mut place = |block: &Matrix, s: Bidegree, t: Bidegree, sign: i64| {
            let r0 = tgt.offset(t).expect("target block");
            let c0 = src.offset(s).expect("source block");
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let x = block.get(i, j);
                    if !x.is_zero() {
                        let e = matrix.entry_mut(r0 + i, c0 + j);
                        *e += if sign < 0 { -x.clone() } else { x.clone() };
                    }
                }
            }
        };
        for bd in degree_bidegrees(k) {
            let (m, n) = (bd.m, bd.n);
            if !(m == 0 && n == 0) {
                let t = Self::h_target(m, n);
                place(&self.delta_h(m, n)?, bd, t, 1);
                layout.push((bd, t));
            }
            let t = Bidegree::new(m, n + 1);
            place(&self.delta_ce(m, n)?, bd, t, if m % 2 == 0 { 1 } else { -1 });
            layout.push((bd, t));
        }
        Ok(CoboundaryMatrix { k, matrix, layout })
    }

    /// Degree-2 coordinates of `(h, H)`: the `C^{0,2}` block, then `C^{2,0}`.
    pub fn degree2_coords(&self, pair: &TwoCochain) -> Result<Vec<Scalar>> {
        pair.check_shape(self.p.dim(), self.v.dim())?;
        let b02 = self.basis(0, 2)?;
        let b20 = self.basis(2, 0)?;
        let lay02 = self.layout(0, 2)?;
        let mut amb02 = zeros(b02.ambient_dim());
        for (w, xs) in lay02.wedges.iter().enumerate() {
            for q in 0..self.v.dim() {
                amb02[lay02.index(0, w, q)] = pair.lie.get(xs[0], xs[1], q).clone();
            }
        }
        let mut coords = b02.coords_of(&amb02)?;
        coords.extend(b20.coords_of(pair.comm.data())?);
        Ok(coords)
    }

    pub fn pair_from_degree2(&self, coords: &[Scalar]) -> Result<TwoCochain> {
        let b02 = self.basis(0, 2)?;
        let b20 = self.basis(2, 0)?;
        if coords.len() != b02.dim() + b20.dim() {
            return Err(Error::Shape("degree-2 coordinate length".into()));
        }
        let (n, v) = (self.p.dim(), self.v.dim());
        let amb02 = b02.to_ambient(&coords[..b02.dim()]);
        let amb20 = b20.to_ambient(&coords[b02.dim()..]);
        let lay02 = self.layout(0, 2)?;
        let lie = Bilinear::from_fn(n, n, v, |i, j| {
            (0..v)
                .map(|q| match sort_wedge(&[i, j]) {
                    None => Scalar::zero(),
                    Some((s, xs)) => sign_scalar(s) * &amb02[lay02.index(0, lay02.wedge_pos[&xs], q)],
                })
                .collect()
        });
        Ok(TwoCochain { comm: Bilinear::from_vec(n, n, v, amb20)?, lie })
    }

    /// Degree-1 coordinates of `φ: P → V` given as a `v × n` matrix.
    pub fn degree1_coords(&self, phi: &Matrix) -> Result<Vec<Scalar>> {
        let (n, v) = (self.p.dim(), self.v.dim());
        if phi.shape() != (v, n) {
            return Err(Error::Shape(format!("map must be {v}x{n}")));
        }
        Ok((0..n).flat_map(|x| (0..v).map(move |q| (x, q))).map(|(x, q)| phi.get(q, x).clone()).collect())
    }

    pub fn map_from_degree1(&self, coords: &[Scalar]) -> Matrix {
        let (n, v) = (self.p.dim(), self.v.dim());
        let mut phi = Matrix::zeros(v, n);
        for x in 0..n {
            for q in 0..v {
                phi.set(q, x, coords[x * v + q].clone());
            }
        }
        phi
    }
}

/// Degree-2 cochain `(h, H)`: symmetric `h ∈ C^{2,0}` and skew `H ∈ C^{0,2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    pub comm: Bilinear,
    pub lie: Bilinear,
}

impl TwoCochain {
    pub fn zero(p_dim: usize, v_dim: usize) -> Self {
        let z = Bilinear::zero(p_dim, p_dim, v_dim);
        TwoCochain { comm: z.clone(), lie: z }
    }

    pub fn new(comm: Bilinear, lie: Bilinear) -> Result<Self> {
        let (n, _, v) = comm.dims();
        let pair = TwoCochain { comm, lie };
        pair.check_shape(n, v)?;
        if !pair.comm.is_symmetric() {
            return Err(Error::Precondition("h must be symmetric".into()));
        }
        if !pair.lie.is_antisymmetric() {
            return Err(Error::Precondition("H must be skew-symmetric".into()));
        }
        Ok(pair)
    }

    fn check_shape(&self, n: usize, v: usize) -> Result<()> {
        if self.comm.dims() != (n, n, v) || self.lie.dims() != (n, n, v) {
            return Err(Error::Shape(format!("cochain pair must be {n}x{n}x{v}")));
        }
        Ok(())
    }

    pub fn sub(&self, other: &TwoCochain) -> TwoCochain {
        TwoCochain { comm: self.comm.sub(&other.comm), lie: self.lie.sub(&other.lie) }
    }

    pub fn add(&self, other: &TwoCochain) -> TwoCochain {
        TwoCochain { comm: self.comm.add(&other.comm), lie: self.lie.add(&other.lie) }
    }

    pub fn is_zero(&self) -> bool {
        self.comm.is_zero() && self.lie.is_zero()
    }
}

/// Residual tensors of the three 2-cocycle identities, indexed `[x][y][z][q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleResiduals {
    pub harrison: Vec<Scalar>,
    pub jacobi: Vec<Scalar>,
    pub mixed: Vec<Scalar>,
    report: ValidationReport,
}

impl CocycleResiduals {
    pub fn is_zero(&self) -> bool {
        self.report.ok()
    }

    /// Tagged violations: `pois-co1` (product), `pois-co2` (bracket),
    /// `pois-co3` (mixed).
    pub fn report(&self) -> &ValidationReport {
        &self.report
    }
}

pub fn two_cocycle_residuals(
    p: &PoissonAlgebra,
    v: &Representation,
    pair: &TwoCochain,
) -> Result<CocycleResiduals> {
    let (n, vd) = (p.dim(), v.dim());
    pair.check_shape(n, vd)?;
    if !pair.comm.is_symmetric() || !pair.lie.is_antisymmetric() {
        return Err(Error::Precondition("h must be symmetric and H skew-symmetric".into()));
    }
    let e = |i| crate::matrix::unit(n, i);
    let (h, hh) = (&pair.comm, &pair.lie);
    let (mu, rho) = (v.mu(), v.rho());
    let (c, b) = (p.mult(), p.bracket());
    let mut report = ValidationReport::new();
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r3 = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut s1 = mu[x].mul_vec(h.at(y, z));
                s1 = sub_vec(&s1, &h.apply(c.at(x, y), &e(z)));
                s1 = add_vec(&s1, &h.apply(&e(x), c.at(y, z)));
                s1 = sub_vec(&s1, &mu[z].mul_vec(h.at(x, y)));

                let mut s2 = add_vec(&rho[x].mul_vec(hh.at(y, z)), &rho[y].mul_vec(hh.at(z, x)));
                s2 = add_vec(&s2, &rho[z].mul_vec(hh.at(x, y)));
                s2 = add_vec(&s2, &hh.apply(&e(x), b.at(y, z)));
                s2 = add_vec(&s2, &hh.apply(&e(y), b.at(z, x)));
                s2 = add_vec(&s2, &hh.apply(&e(z), b.at(x, y)));

                let mut s3 = rho[x].mul_vec(h.at(y, z));
                s3 = sub_vec(&s3, &h.apply(b.at(x, y), &e(z)));
                s3 = sub_vec(&s3, &h.apply(&e(y), b.at(x, z)));
                s3 = add_vec(&s3, &hh.apply(&e(x), c.at(y, z)));
                s3 = sub_vec(&s3, &mu[y].mul_vec(hh.at(x, z)));
                s3 = sub_vec(&s3, &mu[z].mul_vec(hh.at(x, y)));

                report.check("pois-co1", &[x, y, z], s1.clone());
                report.check("pois-co2", &[x, y, z], s2.clone());
                report.check("pois-co3", &[x, y, z], s3.clone());
                r1.extend(s1);
                r2.extend(s2);
                r3.extend(s3);
            }
        }
    }
    // Keep the report grouped by identity.
    report.violations.sort_by(|a, b| a.identity.cmp(&b.identity));
    Ok(CocycleResiduals { harrison: r1, jacobi: r2, mixed: r3, report })
}

/// `(δ_H φ, δ_CE φ)` of a linear map `φ: P → V`, straight from the formulas.
pub fn coboundary_of(p: &PoissonAlgebra, v: &Representation, phi: &Matrix) -> TwoCochain {
    let (n, vd) = (p.dim(), v.dim());
    let col = |x: usize| phi.column(x);
    let comm = Bilinear::from_fn(n, n, vd, |x, y| {
        let s = add_vec(&v.mu()[x].mul_vec(&col(y)), &v.mu()[y].mul_vec(&col(x)));
        sub_vec(&s, &phi.mul_vec(p.mult().at(x, y)))
    });
    let lie = Bilinear::from_fn(n, n, vd, |x, y| {
        let s = sub_vec(&v.rho()[x].mul_vec(&col(y)), &v.rho()[y].mul_vec(&col(x)));
        sub_vec(&s, &phi.mul_vec(p.bracket().at(x, y)))
    });
    TwoCochain { comm, lie }
}

/// A map `φ` with `(h,H) - (h',H') = δφ`, if one exists.
pub fn cohomologous_witness(
    p: &PoissonAlgebra,
    v: &Representation,
    a: &TwoCochain,
    b: &TwoCochain,
) -> Result<Option<Matrix>> {
    for (name, pair) in [("first", a), ("second", b)] {
        let r = two_cocycle_residuals(p, v, pair)?;
        if !r.is_zero() {
            return Err(Error::axioms(format!("{name} pair is not a 2-cocycle; it"), r.report));
        }
    }
    let cx = FgvComplex::with_defaults(p, v);
    let d1 = cx.delta_fgv(1)?;
    let diff = a.sub(b);
    let target = cx.degree2_coords(&diff)?;
    let Some(x) = linalg::solve(&d1.matrix, &target) else {
        return Ok(None);
    };
    let phi = cx.map_from_degree1(&x);
    if coboundary_of(p, v, &phi) != diff {
        return Err(Error::Internal("cohomologous witness fails re-substitution".into()));
    }
    Ok(Some(phi))
}

/// Convenience wrappers over a default-configured complex.
pub fn cochain_basis(p: &PoissonAlgebra, v: &Representation, m: usize, n: usize) -> Result<Arc<CochainBasis>> {
    FgvComplex::with_defaults(p, v).basis(m, n)
}

pub fn delta_h(p: &PoissonAlgebra, v: &Representation, m: usize, n: usize) -> Result<Matrix> {
    FgvComplex::with_defaults(p, v).delta_h(m, n)
}

pub fn delta_ce(p: &PoissonAlgebra, v: &Representation, m: usize, n: usize) -> Result<Matrix> {
    FgvComplex::with_defaults(p, v).delta_ce(m, n)
}

pub fn delta_fgv(p: &PoissonAlgebra, v: &Representation, k: usize) -> Result<CoboundaryMatrix> {
    FgvComplex::with_defaults(p, v).delta_fgv(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_rep, coadjoint_rep};
    use crate::catalog;
    use crate::matrix::frac;
    use proptest::prelude::*;

    fn dims(p: usize, v: usize, m: usize, n: usize) -> usize {
        let lay = Layout::new(p, v, m, n, DEFAULT_AMBIENT_CAP).unwrap();
        CochainBasis::build(&lay, Bidegree::new(m, n)).dim()
    }

    #[test]
    fn shuffle_dimensions() {
        assert_eq!(dims(2, 1, 3, 0), 2);
        assert_eq!(dims(3, 1, 3, 0), 8);
        assert_eq!(dims(2, 1, 2, 0), 3);
        assert_eq!(dims(2, 1, 0, 1), 2);
        assert_eq!(dims(2, 1, 0, 2), 1);
        assert_eq!(dims(2, 1, 0, 3), 0);
        assert_eq!(dims(2, 2, 2, 1), 12);
    }

    #[test]
    fn blocked_basis_matches_dense_kernel() {
        for &(m, n, p, v) in &[(2, 0, 2, 1), (3, 0, 2, 1), (3, 0, 3, 1), (2, 1, 3, 2), (4, 0, 2, 1), (3, 1, 2, 2)] {
            let dense = shuffle_constraint_matrix(m, n, p, v).unwrap();
            let r = linalg::rref(&dense);
            let lay = Layout::new(p, v, m, n, DEFAULT_AMBIENT_CAP).unwrap();
            let b = CochainBasis::build(&lay, Bidegree::new(m, n));
            assert_eq!(b.free_columns(), r.free_columns().as_slice(), "({m},{n},{p},{v})");
            assert_eq!(b.basis_matrix(), Matrix::from_columns(b.ambient_dim(), &linalg::kernel_from_rref(&r)));
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let p = PoissonAlgebra::abelian(16);
        let v = Representation::trivial(&p, 16);
        let cx = FgvComplex::with_defaults(&p, &v);
        assert!(matches!(cx.basis(3, 0), Err(Error::Capacity(_))));
        assert!(matches!(ComplexConfig::with_max_degree(5), Err(Error::Capacity(_))));
        let small = catalog::fix_b();
        let sv = adjoint_rep(&small);
        let cx = FgvComplex::with_defaults(&small, &sv);
        assert!(matches!(cx.delta_fgv(4), Err(Error::Capacity(_))));
        assert!(matches!(cx.delta_h(1, 0), Err(Error::Bidegree { .. })));
    }

    #[test]
    fn harrison_on_identity_of_fix_b() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        let cx = FgvComplex::with_defaults(&p, &v);
        assert_eq!(cx.apply_delta_h_ambient(1, 0, &[int(1)]).unwrap(), vec![int(1)]);
    }

    fn pairs() -> Vec<(String, PoissonAlgebra, Representation)> {
        let mut out = Vec::new();
        for (name, p) in catalog::named_algebras() {
            if p.dim() > 3 {
                continue;
            }
            out.push((format!("{name}/ad"), p.clone(), adjoint_rep(&p)));
            out.push((format!("{name}/coad"), p.clone(), coadjoint_rep(&p)));
            out.push((format!("{name}/triv"), p.clone(), Representation::trivial(&p, 1)));
        }
        out
    }

    #[test]
    fn differential_squares_to_zero() {
        for (name, p, v) in pairs() {
            let cx = FgvComplex::with_defaults(&p, &v);
            let top = if p.dim() <= 2 { 2 } else { 1 };
            for k in 0..=top {
                let a = cx.delta_fgv(k).unwrap().matrix;
                let b = cx.delta_fgv(k + 1).unwrap().matrix;
                assert!(b.checked_mul(&a).unwrap().is_zero(), "{name} degree {k}");
            }
        }
    }

    #[test]
    fn images_satisfy_shuffle_conditions() {
        let p = catalog::dual_plane();
        let v = adjoint_rep(&p);
        let cx = FgvComplex::with_defaults(&p, &v);
        for &(m, n) in &[(2, 0), (2, 1), (0, 1), (0, 2), (3, 0)] {
            let b = cx.basis(m, n).unwrap();
            for j in 0..b.dim() {
                let mut e = zeros(b.dim());
                e[j] = int(1);
                let f = b.to_ambient(&e);
                let ce = cx.apply_delta_ce_ambient(m, n, &f).unwrap();
                assert!(cx.basis(m, n + 1).unwrap().contains(&ce), "δ_CE from ({m},{n})");
                let t = FgvComplex::h_target(m, n);
                let h = cx.apply_delta_h_ambient(m, n, &f).unwrap();
                let tb = cx.basis(t.m, t.n).unwrap();
                assert!(tb.contains(&h), "δ_H from ({m},{n})");
                let restricted = cx.delta_h(m, n).unwrap().mul_vec(&e);
                assert_eq!(tb.to_ambient(&restricted), h);
            }
        }
    }

    #[test]
    fn coboundaries_are_cocycles_and_have_witnesses() {
        let p = catalog::sl2_zero();
        let v = adjoint_rep(&p);
        let phi = Matrix::from_i64(&[&[1, 0, 2], &[0, -1, 0], &[3, 0, 1]]);
        let d = coboundary_of(&p, &v, &phi);
        assert!(two_cocycle_residuals(&p, &v, &d).unwrap().is_zero());
        let zero = TwoCochain::zero(3, 3);
        let w = cohomologous_witness(&p, &v, &d, &zero).unwrap().unwrap();
        assert_eq!(coboundary_of(&p, &v, &w), d);
        let cx = FgvComplex::with_defaults(&p, &v);
        let via_matrix = cx.delta_fgv(1).unwrap().matrix.mul_vec(&cx.degree1_coords(&phi).unwrap());
        assert_eq!(cx.degree2_coords(&d).unwrap(), via_matrix);
        assert_eq!(cx.pair_from_degree2(&via_matrix).unwrap(), d);
    }

    #[test]
    fn non_cocycle_is_reported() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        let mut h = Bilinear::zero(1, 1, 1);
        h = h.add(&Bilinear::from_entries(1, &[(0, 0, 0, frac(1, 2))]));
        let pair = TwoCochain::new(h, Bilinear::zero(1, 1, 1)).unwrap();
        let r = two_cocycle_residuals(&p, &v, &pair).unwrap();
        // μ_e h(e,e) - h(e,e) + h(e,e) - μ_e h(e,e) vanishes on FIX-B.
        assert!(r.is_zero());
        let dn = catalog::dual_numbers();
        let ad = adjoint_rep(&dn);
        let h = Bilinear::from_vec(2, 2, 2, [1, 0, 0, 0, 0, 0, 0, 0].into_iter().map(int).collect()).unwrap();
        let bad = TwoCochain::new(h, Bilinear::zero(2, 2, 2)).unwrap();
        let r = two_cocycle_residuals(&dn, &ad, &bad).unwrap();
        let first = r.report().first_by_identity()[0].clone();
        assert_eq!(first.identity, "pois-co1");
        assert_eq!(first.indices, vec![0, 0, 1]);
        assert_eq!(first.residual, vec![int(0), int(-1)]);
        assert!(matches!(cohomologous_witness(&dn, &ad, &bad, &TwoCochain::zero(2, 2)), Err(Error::Axioms { .. })));
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::from_vec(r, c, v.into_iter().map(int).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn random_coboundaries_are_cocycles(phi in small_matrix(3, 3), which in 0usize..3) {
            let p = [catalog::dual_plane(), catalog::heisenberg(), catalog::truncated_cubic()][which].clone();
            let v = coadjoint_rep(&p);
            let d = coboundary_of(&p, &v, &phi);
            prop_assert!(two_cocycle_residuals(&p, &v, &d).unwrap().is_zero());
            let w = cohomologous_witness(&p, &v, &d, &TwoCochain::zero(3, 3)).unwrap().unwrap();
            prop_assert_eq!(coboundary_of(&p, &v, &w), d);
        }

        #[test]
        fn cocycle_test_agrees_with_matrix(coords in prop::collection::vec(-2i64..=2, 9)) {
            let p = catalog::lie2();
            let v = adjoint_rep(&p);
            let cx = FgvComplex::with_defaults(&p, &v);
            let space = cx.degree_space(2).unwrap();
            prop_assert_eq!(space.total_dim(), 1 * 2 + 3 * 2);
            let c: Vec<Scalar> = coords.into_iter().take(space.total_dim()).map(int).collect();
            let pair = cx.pair_from_degree2(&c).unwrap();
            let by_matrix = is_zero_vec_local(&cx.delta_fgv(2).unwrap().matrix.mul_vec(&c));
            prop_assert_eq!(two_cocycle_residuals(&p, &v, &pair).unwrap().is_zero(), by_matrix);
        }
    }

    fn is_zero_vec_local(v: &[Scalar]) -> bool {
        v.iter().all(|x| x.is_zero())
    }
}
