//! Dense exact matrices.
//!
//! A `rows × cols` matrix is a linear map `k^cols → k^rows`; composition is
//! matrix product. Zero-row and zero-column matrices are ordinary values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{shape, Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !field.contains(v)) {
            return Err(Error::Invalid(format!("{bad} is not an element of {field}")));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |r, c| {
            if r == c {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Integer literal rows, reduced into `field`. Every row must have `cols`
    /// entries; `cols` is explicit so that 0-row matrices keep their width.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    /// Column vector.
    pub fn column(field: Field, entries: Vec<Scalar>) -> Self {
        let rows = entries.len();
        Matrix {
            field,
            rows,
            cols: 1,
            data: entries,
        }
    }

    /// Row vector.
    pub fn row(field: Field, entries: Vec<Scalar>) -> Self {
        let cols = entries.len();
        Matrix {
            field,
            rows: 1,
            cols,
            data: entries,
        }
    }

    /// Permutation matrix sending basis vector `i` to basis vector `perm[i]`.
    pub fn permutation(field: Field, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.data[j * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row_slice(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First entry that differs from `other`, as `(row, col)`.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.cols, i % self.cols))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|v| f.mul(v, s)).collect(),
            ..self.clone()
        }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row_slice(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
            ..self.clone()
        })
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        let f = self.field;
        self.zip_with(rhs, |a, b| f.add(a, b))
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        let f = self.field;
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }

    pub(crate) fn check_field(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        Ok(())
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(shape(format!("hstack of {} and {} rows", self.rows, rhs.rows)));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        }))
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.cols {
            return Err(shape(format!("vstack of {} and {} cols", self.cols, rhs.cols)));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        assert!(range.end <= self.cols);
        Matrix::from_fn(self.field, self.rows, range.len(), |r, c| {
            self.get(r, range.start + c).clone()
        })
    }

    pub fn rows_range(&self, range: std::ops::Range<usize>) -> Matrix {
        assert!(range.end <= self.rows);
        Matrix::from_fn(self.field, range.len(), self.cols, |r, c| {
            self.get(range.start + r, c).clone()
        })
    }

    /// Writes `block` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(row + r, col + c, block.get(r, c).clone());
            }
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|v| f.neg(v)).collect(),
            ..self.clone()
        }
    }
}

/// The literal text form `rows cols ; e11 e12 ... ; e21 ...`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " ;")?;
            for v in self.row_slice(r) {
                write!(f, " {}", self.field.format_scalar(v))?;
            }
        }
        Ok(())
    }
}

impl Matrix {
    /// Parses the literal text form produced by `Display`.
    pub fn parse_literal(field: Field, text: &str) -> Result<Matrix> {
        let mut segments = text.split(';');
        let header = segments.next().unwrap_or("");
        let dims: Vec<&str> = header.split_whitespace().collect();
        let bad = |msg: String| Error::Invalid(msg);
        if dims.len() != 2 {
            return Err(bad(format!("matrix header `{}` needs `rows cols`", header.trim())));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| bad(format!("bad row count `{}`", dims[0])))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| bad(format!("bad column count `{}`", dims[1])))?;
        let row_texts: Vec<&str> = segments.collect();
        // A trailing empty segment is tolerated for 0-column matrices.
        let row_texts = if row_texts.len() == rows + 1 && row_texts[rows].trim().is_empty() {
            &row_texts[..rows]
        } else {
            &row_texts[..]
        };
        if row_texts.len() != rows {
            return Err(bad(format!("expected {rows} rows, found {}", row_texts.len())));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (r, row) in row_texts.iter().enumerate() {
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() != cols {
                return Err(bad(format!("row {r} has {} entries, expected {cols}", toks.len())));
            }
            for t in toks {
                data.push(field.parse_scalar(t)?);
            }
        }
        Matrix::new(field, rows, cols, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_roundtrip_handles_empty_shapes() {
        let q = Field::Rationals;
        for m in [
            Matrix::zeros(q, 0, 3),
            Matrix::zeros(q, 2, 0),
            Matrix::zeros(q, 0, 0),
            Matrix::from_i64(q, 2, 2, &[1, -2, 0, 7]),
        ] {
            let text = m.to_string();
            assert_eq!(Matrix::parse_literal(q, &text).unwrap(), m, "{text}");
        }
    }

    #[test]
    fn literal_normalizes_fractions() {
        let q = Field::Rationals;
        let m = Matrix::parse_literal(q, "1 2 ; 3/6 4").unwrap();
        assert_eq!(m.to_string(), "1 2 ; 1/2 4");
    }

    #[test]
    fn product_and_permutation() {
        let q = Field::Rationals;
        let a = Matrix::from_i64(q, 2, 3, &[1, 2, 3, 4, 5, 6]);
        let p = Matrix::permutation(q, &[1, 2, 0]);
        let e0 = Matrix::from_i64(q, 3, 1, &[1, 0, 0]);
        assert_eq!(&p * &e0, Matrix::from_i64(q, 3, 1, &[0, 1, 0]));
        assert_eq!((&a * &Matrix::identity(q, 3)), a);
        assert!(a.try_mul(&a).is_err());
    }

    #[test]
    fn rejects_field_mismatch() {
        let a = Matrix::identity(Field::Rationals, 2);
        let b = Matrix::identity(Field::prime(3).unwrap(), 2);
        assert_eq!(
            a.try_mul(&b),
            Err(Error::FieldMismatch(Field::Rationals, Field::PrimeField(3)))
        );
    }
}
