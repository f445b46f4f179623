//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is decided through a Smith decomposition `U·A·V = D`:
//! image membership, kernels and cokernel presentations share that one
//! code path.

mod group;
mod smith;

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use group::AbelianGroup;
pub use smith::{
    cokernel, determinant, image_membership, kernel_basis, restricted_membership, smith_normal_form, SmithDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
}

/// Dense integer vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self(values.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Unit vector `δ_index` of the given length.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut out = Self::zeros(len);
        out.0[index] = BigInt::from(1);
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn get_mut(&mut self, index: usize) -> &mut BigInt {
        &mut self.0[index]
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(values: Vec<BigInt>) -> Self {
        Self(values)
    }
}

impl FromIterator<BigInt> for IntVector {
    fn from_iter<I: IntoIterator<Item = BigInt>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, index: usize) -> &BigInt {
        &self.0[index]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        self.0.iter().map(|a| -a).collect()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense rectangular integer matrix with row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_labels: index_labels(rows),
            col_labels: index_labels(cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    /// Builds a matrix from `i64` rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec().into()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t =
            IntMatrix::zeros(self.cols, self.rows).with_labels(self.col_labels.clone(), self.row_labels.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != rhs.rows {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out =
            IntMatrix::zeros(self.rows, rhs.cols).with_labels(self.row_labels.clone(), rhs.col_labels.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &IntVector) -> Result<IntVector, LatticeError> {
        if self.cols != x.len() {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum()).collect())
    }

    /// `A − I` for a square matrix.
    pub fn minus_identity(&self) -> Result<IntMatrix, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let x = out.get(i, i) - 1;
            out.set(i, i, x);
        }
        Ok(out)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<IntMatrix, LatticeError> {
        for &j in columns {
            if j >= self.cols {
                return Err(LatticeError::ColumnOutOfRange { index: j, cols: self.cols });
            }
        }
        let labels = columns.iter().map(|&j| self.col_labels[j].clone()).collect();
        let mut out = IntMatrix::zeros(self.rows, columns.len()).with_labels(self.row_labels.clone(), labels);
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, indices: &[usize]) -> IntMatrix {
        let labels: Vec<String> = indices.iter().map(|&i| self.row_labels[i].clone()).collect();
        let mut out = IntMatrix::zeros(indices.len(), indices.len()).with_labels(labels.clone(), labels);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Appends one row underneath.
    pub fn stack_row(&self, row: &IntVector, label: &str) -> Result<IntMatrix, LatticeError> {
        if row.len() != self.cols {
            return Err(LatticeError::DimensionMismatch { expected: self.cols, found: row.len() });
        }
        let mut out = self.clone();
        out.data.extend(row.iter().cloned());
        out.rows += 1;
        out.row_labels.push(label.to_string());
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Largest absolute entry, zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// Entries as `i64` rows, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect()).collect()
    }

    /// Renders the matrix as labeled rows, one per line.
    pub fn labeled_rows(&self) -> String {
        let width = self.row_labels.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&format!("{:>width$}: {}\n", self.row_labels[i], cells.join(" ")));
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
