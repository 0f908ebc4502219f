use std::fmt;

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single exact field. Column-vector
/// convention: a matrix acts on the left, and `g . f` is `g.matmul(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Coordinates on `target / im(m)` together with a section of the
/// projection. `projection * m == 0` and `projection * section == I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub projection: Matrix,
    pub section: Matrix,
    pub codim: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.to_string(),
                        right: x.field().to_string(),
                    });
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer entries; convenient in tests and fixed constructions.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&x| Scalar::from_i64(field, x)).collect(),
        }
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "mixed-field assignment");
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) -> Result<()> {
        self.same_field(block)?;
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(Error::DimensionMismatch("block does not fit".into()));
        }
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
        Ok(())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(r0 + r, c0 + c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Block-diagonal sum of a sequence of matrices.
    pub fn direct_sum_all<'a>(field: Field, parts: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
        let parts: Vec<&Matrix> = parts.into_iter().collect();
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m)?;
            r += m.rows;
            c += m.cols;
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        Matrix::direct_sum_all(self.field, [self, other])
    }

    /// Side-by-side `[a | b | ...]`; all parts need `rows` rows.
    pub fn hstack<'a>(field: Field, rows: usize, parts: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
        let parts: Vec<&Matrix> = parts.into_iter().collect();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c = 0;
        for m in parts {
            if m.rows != rows {
                return Err(Error::DimensionMismatch(format!(
                    "hstack expects {rows} rows, got {}",
                    m.rows
                )));
            }
            out.set_block(0, c, m)?;
            c += m.cols;
        }
        Ok(out)
    }

    /// Stacked `[a; b; ...]`; all parts need `cols` columns.
    pub fn vstack<'a>(field: Field, cols: usize, parts: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
        let parts: Vec<&Matrix> = parts.into_iter().collect();
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r = 0;
        for m in parts {
            if m.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "vstack expects {cols} columns, got {}",
                    m.cols
                )));
            }
            out.set_block(r, 0, m)?;
            r += m.rows;
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let delta = &factor * m.get(row, c);
                    let idx = r * m.cols + c;
                    m.data[idx] = &m.data[idx] - &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the null space, one per free column.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.data[f * free.len() + j] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                out.data[p * free.len() + j] = -reduced.get(i, f);
            }
        }
        out
    }

    /// The pivot columns of `self`.
    pub fn image_basis(&self) -> Matrix {
        self.select_columns(&self.rref().pivots)
    }

    /// Extends the (independent) columns of `self` by standard basis
    /// vectors to a basis of the ambient space; returns the added indices.
    fn complement_indices(&self) -> Vec<usize> {
        let aug = Matrix::hstack(self.field, self.rows, [self, &Matrix::identity(self.field, self.rows)])
            .expect("shapes agree");
        aug.rref()
            .pivots
            .into_iter()
            .filter(|&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Matrix::hstack(self.field, n, [self, &Matrix::identity(self.field, n)])?;
        let r = aug.rref();
        if r.rank < n || r.pivots[n - 1] >= n {
            return Err(Error::RankDeficient);
        }
        Ok(r.reduced.submatrix(0, n, n, n))
    }

    /// Projection of the ambient space onto the span of the columns of
    /// `sub` along a complement spanned by standard basis vectors chosen by
    /// pivoting. The result `P` satisfies `P * sub == I`.
    pub fn complement_projection(sub: &Matrix, ambient_dim: usize) -> Result<Matrix> {
        if sub.rows != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace vectors have length {}, ambient dimension is {ambient_dim}",
                sub.rows
            )));
        }
        if sub.rank() != sub.cols {
            return Err(Error::RankDeficient);
        }
        let extra = sub.complement_indices();
        let ident = Matrix::identity(sub.field, ambient_dim);
        let basis = Matrix::hstack(sub.field, ambient_dim, [sub, &ident.select_columns(&extra)])?;
        Ok(basis.inverse()?.submatrix(0, 0, sub.cols, ambient_dim))
    }

    pub fn cokernel(&self) -> Cokernel {
        let image = self.image_basis();
        let extra = image.complement_indices();
        let ident = Matrix::identity(self.field, self.rows);
        let section = ident.select_columns(&extra);
        let basis = Matrix::hstack(self.field, self.rows, [&image, &section]).expect("shapes agree");
        let inv = basis.inverse().expect("basis is invertible");
        let codim = extra.len();
        Cokernel {
            projection: inv.submatrix(image.cols, 0, codim, self.rows),
            section,
            codim,
        }
    }

    /// `(projection, codim)` onto coordinates of `target / im(self)`.
    pub fn cokernel_projection(&self) -> (Matrix, usize) {
        let c = self.cokernel();
        (c.projection, c.codim)
    }

    /// Rendering used by the JSON formats: rows of scalar strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_string_rows(field: Field, rows: usize, cols: usize, cells: &[Vec<String>]) -> Result<Matrix> {
        if cells.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows} rows, found {}",
                cells.len()
            )));
        }
        let parsed = cells
            .iter()
            .map(|row| row.iter().map(|s| Scalar::parse(s, field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, parsed, cols)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
