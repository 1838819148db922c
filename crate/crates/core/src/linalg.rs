//! Exact elimination over ℚ.
//!
//! Rows are cleared of denominators and reduced fraction-free (Bareiss), so
//! intermediate entries stay integral and every division is exact. The
//! echelon form is then normalised to the unique reduced row-echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::{axpy, is_zero_vec, zeros, Matrix, Scalar};

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: Matrix,
    /// Pivot column of each nonzero row, ascending.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.matrix.cols()).filter(|&c| !is_pivot[c]).collect()
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Fraction-free forward elimination. Pivot row for each column is the first
/// remaining row with a nonzero entry there. Returns pivot columns.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in below.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(m: &Matrix) -> Rref {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| integer_row(m.row(i))).collect();
    let pivots = bareiss_echelon(&mut a, cols);
    let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    for (row, &c) in a.iter().zip(&pivots) {
        let lead = Scalar::from_integer(row[c].clone());
        out.push(
            row.iter()
                .map(|x| Scalar::from_integer(x.clone()) / &lead)
                .collect(),
        );
    }
    // Back substitution, bottom pivot first.
    for k in (0..pivots.len()).rev() {
        let c = pivots[k];
        let (upper, lower) = out.split_at_mut(k);
        let pivot_row = &lower[0];
        for row in upper.iter_mut() {
            if !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, pivot_row);
            }
        }
    }
    while out.len() < rows {
        out.push(zeros(cols));
    }
    let matrix = Matrix::from_vec(rows, cols, out.into_iter().flatten().collect())
        .expect("rref keeps the input shape");
    Rref { matrix, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    bareiss_echelon(&mut a, m.cols()).len()
}

/// Kernel basis read off the RREF: one vector per free column (ascending),
/// with a 1 in that column and zeros in the other free columns.
pub fn kernel_vectors(m: &Matrix) -> Vec<Vec<Scalar>> {
    let r = rref(m);
    kernel_from_rref(&r)
}

pub(crate) fn kernel_from_rref(r: &Rref) -> Vec<Vec<Scalar>> {
    let cols = r.matrix.cols();
    r.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = zeros(cols);
            v[f] = Scalar::one();
            for (k, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix.get(k, f).clone();
            }
            v
        })
        .collect()
}

/// Kernel basis as the columns of a `cols x nullity` matrix.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    Matrix::from_columns(m.cols(), &kernel_vectors(m))
}

/// A particular solution of `m x = b` with free variables set to zero.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let aug = m.hstack(&Matrix::from_columns(m.rows(), &[b.to_vec()]));
    let r = rref(&aug);
    let last = m.cols();
    if r.pivots.last() == Some(&last) {
        return None;
    }
    let mut x = zeros(m.cols());
    for (k, &p) in r.pivots.iter().enumerate() {
        x[p] = r.matrix.get(k, last).clone();
    }
    debug_assert_eq!(m.mul_vec(&x), b);
    Some(x)
}

/// Solves `a X = b` column by column.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let aug = a.hstack(b);
    let r = rref(&aug);
    let n = a.cols();
    if r.pivots.last().is_some_and(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (k, &p) in r.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.matrix.get(k, n + j).clone());
        }
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let x = solve_matrix(m, &Matrix::identity(n))?;
    (rank(m) == n).then_some(x)
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.is_square() && rank(m) == m.rows()
}

/// Solutions of a homogeneous linear system given by its residual map:
/// column `j` of the coefficient matrix is `residual(e_j)`.
pub fn linear_solution_space(
    nvars: usize,
    residual: impl Fn(&[Scalar]) -> Vec<Scalar>,
) -> Vec<Vec<Scalar>> {
    let cols: Vec<Vec<Scalar>> = (0..nvars).map(|j| residual(&crate::matrix::unit(nvars, j))).collect();
    let rows = cols.first().map_or(0, Vec::len);
    kernel_vectors(&Matrix::from_columns(rows, &cols))
}

/// Incrementally maintained span, used for greedy independent selection and
/// membership tests.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    len: usize,
    /// Each row has a 1 at its pivot and zeros at earlier rows' pivots.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new(len: usize) -> Self {
        SpanBuilder { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = -w[*p].clone();
                axpy(&mut w, &f, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = w[p].clone();
        for x in w.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &w);
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Rank of the column span of `vectors`.
pub fn span_dim(len: usize, vectors: &[Vec<Scalar>]) -> usize {
    let mut s = SpanBuilder::new(len);
    for v in vectors {
        s.insert(v);
    }
    s.dim()
}

/// Whether two families span the same subspace.
pub fn same_span(len: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let da = span_dim(len, a);
    let db = span_dim(len, b);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    da == db && span_dim(len, &both) == da
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{frac, int};
    use proptest::prelude::*;

    /// Textbook Gauss-Jordan over ℚ, kept deliberately naive as an oracle.
    fn naive_rref(m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut a = m.to_rows();
        let (rows, cols) = m.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let lead = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x /= &lead;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows(a).unwrap_or_else(|_| Matrix::zeros(rows, cols)), pivots)
    }

    fn small_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..=3, 1i64..=3), r * c).prop_map(move |v| {
                let data = v.into_iter().map(|(n, d)| frac(n, d)).collect();
                Matrix::from_vec(r, c, data).unwrap()
            })
        })
    }

    #[test]
    fn spec_examples() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank(), 1);
        let k = kernel_vectors(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
        assert!(same_span(2, &k, &[vec![int(1), int(-1)]]));
        let id = Matrix::identity(3);
        assert_eq!(rref(&id).matrix, id);
        assert_eq!(rref(&Matrix::zeros(2, 3)).rank(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)), Matrix::identity(3));
        let b = vec![int(4), frac(-1, 2), int(0)];
        assert_eq!(solve(&id, &b), Some(b));
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&m, &[int(1), int(2)]), None);
        assert!(inverse(&m).is_none());
    }

    #[test]
    fn span_builder_membership() {
        let mut s = SpanBuilder::new(3);
        assert!(s.insert(&[int(1), int(1), int(0)]));
        assert!(s.insert(&[int(0), int(1), int(1)]));
        assert!(!s.insert(&[int(1), int(2), int(1)]));
        assert!(s.contains(&[int(2), int(0), int(-2)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(s.dim(), 2);
    }

    proptest! {
        #[test]
        fn bareiss_matches_naive(m in small_matrix(5, 6)) {
            let r = rref(&m);
            let (n, piv) = naive_rref(&m);
            prop_assert_eq!(&r.matrix, &n);
            prop_assert_eq!(&r.pivots, &piv);
            prop_assert_eq!(rank(&m), piv.len());
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix(5, 5)) {
            let r = rref(&m);
            prop_assert_eq!(rref(&r.matrix).matrix, r.matrix);
        }

        #[test]
        fn kernel_is_annihilated(m in small_matrix(4, 6)) {
            let k = kernel_vectors(&m);
            prop_assert_eq!(k.len() + rank(&m), m.cols());
            for v in &k {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn solve_recovers_consistent_rhs(m in small_matrix(4, 4), x in prop::collection::vec(-3i64..=3, 4)) {
            let x: Vec<Scalar> = x.into_iter().take(m.cols()).map(int).chain(std::iter::repeat(int(0))).take(m.cols()).collect();
            let b = m.mul_vec(&x);
            let y = solve(&m, &b).expect("consistent system");
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn inverse_is_two_sided(m in small_matrix(3, 3)) {
            if let Some(inv) = inverse(&m) {
                prop_assert_eq!(&m * &inv, Matrix::identity(m.rows()));
                prop_assert_eq!(&inv * &m, Matrix::identity(m.rows()));
            } else {
                prop_assert!(!is_invertible(&m));
            }
        }
    }
}
