//! Exact rational scalars, dense matrices and small vector helpers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field element. `BigRational` keeps values in lowest terms with a positive
/// denominator, so structural equality is value equality.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q`. The numerator may carry a leading minus sign; the
/// denominator must be a positive integer without a sign.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with('-') {
                return Err(Error::Parse(format!(
                    "negative denominator in {s:?}"
                )));
            }
            if !digits(d) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(n, d))
}

pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn add_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|b| a * b).collect()
}

pub fn neg_vec(x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|b| -b).collect()
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from rows; all rows must have equal length. An empty list gives
    /// a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix literal");
        let data = rows.iter().flat_map(|x| x.iter().map(|&v| int(v))).collect();
        Matrix { rows: r, cols: c, data }
    }

    /// Columns given as vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(a, &self.data) }
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols, "matrix-vector shape mismatch");
        let mut y = zeros(self.rows);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *yi += a * xj;
                }
            }
        }
        y
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = match (i < a.rows, j < a.cols) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - a.cols),
                    (false, true) => c.get(i - a.rows, j),
                    (false, false) => d.get(i - a.rows, j - a.cols),
                };
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    /// Sub-block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        let mut m = Matrix::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m.data[i * nc + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Keeps the listed rows in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn max_abs_height(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs().max(x.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: neg_vec(&self.data) }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix product shape mismatch")
    }
}

/// `Σ coeffs[i] * mats[i]`; `mats` must be non-empty or `shape` given.
pub fn combine(mats: &[Matrix], coeffs: &[Scalar], shape: (usize, usize)) -> Matrix {
    let mut out = Matrix::zeros(shape.0, shape.1);
    for (m, c) in mats.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        axpy(&mut out.data, c, &m.data);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        assert_eq!(format_scalar(&parse_scalar("3/6").unwrap()), "1/2");
        assert_eq!(format_scalar(&parse_scalar("-4/2").unwrap()), "-2");
        assert_eq!(format_scalar(&parse_scalar("0/5").unwrap()), "0");
        assert_eq!(format_scalar(&parse_scalar("17").unwrap()), "17");
    }

    #[test]
    fn scalar_rejects_malformed() {
        for s in ["-1/-2", "1/0", "", "1/", "/2", "+1", " 1", "1.5", "1/2/3", "--1", "a"] {
            assert!(parse_scalar(s).is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, Matrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), Matrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.mul_vec(&[int(1), int(1)]), vec![int(3), int(7)]);
        assert_eq!(a.commutator(&a), Matrix::zeros(2, 2));
    }

    #[test]
    fn blocks() {
        let i = Matrix::identity(1);
        let z = Matrix::zeros(1, 1);
        let m = Matrix::block(&i, &z, &z, &i.scale(&int(2)));
        assert_eq!(m, Matrix::from_i64(&[&[1, 0], &[0, 2]]));
        assert_eq!(m.submatrix(1, 1, 1, 1), Matrix::from_i64(&[&[2]]));
    }
}
