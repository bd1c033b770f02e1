//! Dense matrices over GF(2^b).
//!
//! Pivoting is purely structural (first nonzero entry, first qualifying row);
//! arithmetic is exact, so there is no numerical pivoting.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
    field: FieldSpec,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadDimensions("ragged rows".into()));
        }
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::NotAnElement {
                value: bad.0 as u32,
                b: field.bits(),
            });
        }
        Ok(Matrix {
            rows: data.len().checked_div(cols).unwrap_or(0),
            cols,
            data,
            field: field.clone(),
        })
    }

    /// Builds a matrix from `alpha` exponents; `None` is the zero element.
    pub fn from_exponents(field: &FieldSpec, rows: &[Vec<Option<i64>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.map_or(FieldElement::ZERO, |k| field.alpha_pow(k)))
                    .collect()
            })
            .collect();
        Self::from_rows(field, rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElement] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Submatrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(r));
        }
        out
    }

    /// Stacks `self` above `below`.
    pub fn vstack(&self, below: &Matrix) -> Result<Matrix> {
        if self.field != below.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != below.cols && self.rows != 0 && below.rows != 0 {
            return Err(Error::BadDimensions(format!(
                "cannot stack {} columns over {}",
                self.cols, below.cols
            )));
        }
        let cols = if self.rows == 0 {
            below.cols
        } else {
            self.cols
        };
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(Matrix {
            rows: self.rows + below.rows,
            cols,
            data,
            field: self.field.clone(),
        })
    }

    pub fn scale(&self, k: FieldElement) -> Matrix {
        let mut out = self.clone();
        for e in &mut out.data {
            *e = self.field.mul(*e, k);
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::BadDimensions(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::BadDimensions(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.field.dot(self.row(r), v))
            .collect())
    }

    /// Row rank over the field.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        echelonize(&mut m, None).len()
    }

    /// Reduces a full-row-rank `r x c` matrix (`r <= c`) to upper-triangular
    /// form with unit diagonal on its leading `r x r` square. Only the leading
    /// `r` columns are pivoted; the remaining columns carry whatever the row
    /// operations leave there.
    ///
    /// Returns `(reduced, transform)` with `transform * self == reduced`.
    pub fn row_reduce_to_upper_unit(&self) -> Result<(Matrix, Matrix)> {
        let f = &self.field;
        let mut red = self.clone();
        let mut tr = Matrix::identity(f, self.rows);
        for k in 0..self.rows {
            if k >= self.cols {
                return Err(Error::RankDeficient { column: k });
            }
            let pivot = (k..self.rows)
                .find(|&r| !red.get(r, k).is_zero())
                .ok_or(Error::RankDeficient { column: k })?;
            if pivot != k {
                red.swap_rows(pivot, k);
                tr.swap_rows(pivot, k);
            }
            let inv = f.inv(red.get(k, k))?;
            red.scale_row(k, inv);
            tr.scale_row(k, inv);
            for i in k + 1..self.rows {
                let factor = red.get(i, k);
                if !factor.is_zero() {
                    red.add_scaled_row(i, k, factor);
                    tr.add_scaled_row(i, k, factor);
                }
            }
        }
        Ok((red, tr))
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve_square(&self, rhs: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if self.rows != self.cols {
            return Err(Error::BadDimensions(format!(
                "solve_square needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        match self.solve(rhs)? {
            Solution::Unique(x) => Ok(x),
            _ => Err(Error::Singular),
        }
    }

    /// Solves `self * x = rhs` for any shape. Reports whether the columns are
    /// independent and whether the system is consistent.
    pub fn solve(&self, rhs: &[FieldElement]) -> Result<Solution> {
        if rhs.len() != self.rows {
            return Err(Error::BadDimensions(format!(
                "{} rows but right-hand side of length {}",
                self.rows,
                rhs.len()
            )));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for (r, &v) in rhs.iter().enumerate() {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, v);
        }
        let pivots = echelonize(&mut aug, Some(self.cols));
        let rank = pivots.len();
        // Consistency: no zero row of A with nonzero rhs.
        if (rank..self.rows).any(|r| !aug.get(r, self.cols).is_zero()) {
            return Ok(Solution::Inconsistent);
        }
        if rank < self.cols {
            return Ok(Solution::Underdetermined { rank });
        }
        // Reduced echelon form with unit pivots: x_k = rhs of pivot row.
        let mut x = vec![FieldElement::ZERO; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Ok(Solution::Unique(x))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, k: FieldElement) {
        let f = self.field.clone();
        for e in self.row_mut(r) {
            *e = f.mul(*e, k);
        }
    }

    /// `row[dst] += k * row[src]`.
    pub(crate) fn add_scaled_row(&mut self, dst: usize, src: usize, k: FieldElement) {
        let f = self.field.clone();
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[src * cols + c];
            if !s.is_zero() {
                let d = &mut self.data[dst * cols + c];
                *d = f.add(*d, f.mul(k, s));
            }
        }
    }
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<FieldElement>),
    Underdetermined { rank: usize },
    Inconsistent,
}

/// Gauss-Jordan to reduced row echelon form over the first `limit` columns
/// (all columns when `None`). Returns the pivot column of each leading row.
fn echelonize(m: &mut Matrix, limit: Option<usize>) -> Vec<usize> {
    let f = m.field.clone();
    let limit = limit.unwrap_or(m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        m.scale_row(r, inv);
        for i in 0..m.rows {
            if i != r {
                let factor = m.get(i, c);
                if !factor.is_zero() {
                    m.add_scaled_row(i, r, factor);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `H(u, n; ell)`: row `r`, column `c` holds `alpha^((n-1-c)(ell+r))`.
pub fn vandermonde_h(field: &FieldSpec, u: usize, n: usize, ell: i64) -> Result<Matrix> {
    if u == 0 || n == 0 || n > field.order() {
        return Err(Error::BadDimensions(format!(
            "H(u={u}, n={n}) needs u >= 1 and 1 <= n <= {}",
            field.order()
        )));
    }
    let mut m = Matrix::zeros(field, u, n);
    for r in 0..u {
        for c in 0..n {
            m.set(r, c, field.alpha_pow((n - 1 - c) as i64 * (ell + r as i64)));
        }
    }
    Ok(m)
}

/// `Ĥ(s, m; ell)`: row `r`, column `c` holds `alpha^(-c(ell+r))`.
pub fn vandermonde_hhat(field: &FieldSpec, s: usize, m: usize, ell: i64) -> Result<Matrix> {
    if s == 0 || m == 0 || m > field.order() {
        return Err(Error::BadDimensions(format!(
            "Ĥ(s={s}, m={m}) needs s >= 1 and 1 <= m <= {}",
            field.order()
        )));
    }
    let mut out = Matrix::zeros(field, s, m);
    for r in 0..s {
        for c in 0..m {
            out.set(r, c, field.alpha_pow(-(c as i64) * (ell + r as i64)));
        }
    }
    Ok(out)
}

/// Kronecker product `a ⊗ b`: block `(i, j)` is `a[i][j] * b`.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let mut out = Matrix::zeros(f, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let k = a.get(i, j);
            if k.is_zero() {
                continue;
            }
            for p in 0..b.rows {
                for q in 0..b.cols {
                    out.set(i * b.rows + p, j * b.cols + q, f.mul(k, b.get(p, q)));
                }
            }
        }
    }
    Ok(out)
}
