//! Multi-level GC code definitions: level profiles, the parity-check matrix
//! and the row-budget correctability rule.
//!
//! A profile groups the `m` array rows into `t` levels. Level `i` has `s_i`
//! rows that can each absorb up to `u_i` erasures once the rows are sorted by
//! erasure count, with `u_0 < u_1 < ... < u_{t-1}`.
//!
//! The parity-check matrix stacks `I_m ⊗ H(u_0, n; 0)` (one local RS check
//! per row) over one global band per level `i >= 1`, taken from the top
//! level down:
//!
//! ```text
//! Ĥ(s_i, m; ŝ_{i+1}) ⊗ H(u_i - u_0, n; u_0)
//! ```

use std::fmt;

use crate::codec::{PthCache, RowPermutation};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::linalg::{kronecker, vandermonde_h, vandermonde_hhat, Matrix};

/// `s` rows sharing an erasure budget of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    pub rows: usize,
    pub budget: usize,
}

/// The levels `(s_i, u_i)`, ordered by strictly increasing budget.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelProfile {
    levels: Vec<Level>,
}

impl LevelProfile {
    /// Groups a non-decreasing per-row budget vector `(u_0, .., u_0, u_1, ..)`
    /// into levels. Every entry must lie in `1..=n-1`.
    pub fn from_u_vector(u: &[usize], n: usize) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::OutOfRange("u vector is empty".into()));
        }
        if u.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotNonDecreasing(u.to_vec()));
        }
        let mut levels: Vec<Level> = Vec::new();
        for &b in u {
            match levels.last_mut() {
                Some(l) if l.budget == b => l.rows += 1,
                _ => levels.push(Level { rows: 1, budget: b }),
            }
        }
        Self::validated(levels, n)
    }

    /// Builds a profile from `(s_i, u_i)` pairs. Adjacent levels with equal
    /// budgets are merged.
    pub fn from_levels(levels: &[(usize, usize)], n: usize) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::OutOfRange("profile has no levels".into()));
        }
        if let Some(&(s, _)) = levels.iter().find(|(s, _)| *s == 0) {
            return Err(Error::OutOfRange(format!(
                "level row count s = {s} must be >= 1"
            )));
        }
        let u: Vec<usize> = levels
            .iter()
            .flat_map(|&(s, b)| std::iter::repeat_n(b, s))
            .collect();
        Self::from_u_vector(&u, n)
    }

    fn validated(levels: Vec<Level>, n: usize) -> Result<Self> {
        for l in &levels {
            if l.budget == 0 || l.budget + 1 > n {
                return Err(Error::OutOfRange(format!(
                    "erasure budget u = {} must satisfy 1 <= u <= n - 1 = {}",
                    l.budget,
                    n.saturating_sub(1)
                )));
            }
        }
        Ok(LevelProfile { levels })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Number of levels `t`.
    pub fn t(&self) -> usize {
        self.levels.len()
    }

    /// Number of array rows `m`.
    pub fn m(&self) -> usize {
        self.levels.iter().map(|l| l.rows).sum()
    }

    /// `ŝ_i = Σ_{j >= i} s_j` for `0 <= i <= t`, with `ŝ_t = 0`.
    pub fn s_hat(&self, i: usize) -> usize {
        self.levels.iter().skip(i).map(|l| l.rows).sum()
    }

    /// Total number of parity symbols `r = Σ u_i s_i`.
    pub fn r(&self) -> usize {
        self.levels.iter().map(|l| l.rows * l.budget).sum()
    }

    pub fn max_budget(&self) -> usize {
        self.levels.last().map_or(0, |l| l.budget)
    }

    /// The per-row budget vector in ascending form.
    pub fn u_vector(&self) -> Vec<usize> {
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.budget, l.rows))
            .collect()
    }

    /// Budgets for rows sorted by descending erasure count:
    /// `u_{t-1}` repeated `s_{t-1}` times first, `u_0` last.
    pub fn budgets_descending(&self) -> Vec<usize> {
        let mut u = self.u_vector();
        u.reverse();
        u
    }

    /// Level that owns position `j` of the descending order, i.e. the `i`
    /// with `ŝ_{i+1} <= j < ŝ_i`.
    pub fn level_of_sorted_row(&self, j: usize) -> usize {
        let mut upper = 0;
        for i in (0..self.t()).rev() {
            upper += self.levels[i].rows;
            if j < upper {
                return i;
            }
        }
        panic!("sorted row {j} out of range for m = {}", self.m());
    }

    /// `min_i (ŝ_{i+1} + 1)(u_i + 1)`.
    pub fn min_distance(&self) -> usize {
        (0..self.t())
            .map(|i| (self.s_hat(i + 1) + 1) * (self.levels[i].budget + 1))
            .min()
            .expect("profile has at least one level")
    }
}

impl fmt::Display for LevelProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u: Vec<String> = self.u_vector().iter().map(ToString::to_string).collect();
        write!(f, "({})", u.join(","))
    }
}

/// An `m x n` mask of erased cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    rows: usize,
    cols: usize,
    mask: Vec<bool>,
}

impl ErasurePattern {
    pub fn none(rows: usize, cols: usize) -> Self {
        ErasurePattern {
            rows,
            cols,
            mask: vec![false; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadDimensions("ragged erasure mask".into()));
        }
        Ok(ErasurePattern {
            rows: rows.len(),
            cols,
            mask: rows.concat(),
        })
    }

    /// Pattern erasing the given row-major cell indices.
    pub fn from_cells(rows: usize, cols: usize, cells: &[usize]) -> Result<Self> {
        let mut p = Self::none(rows, cols);
        for &c in cells {
            if c >= rows * cols {
                return Err(Error::OutOfRange(format!(
                    "cell {c} outside {rows}x{cols} array"
                )));
            }
            p.mask[c] = true;
        }
        Ok(p)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_erased(&self, r: usize, c: usize) -> bool {
        self.mask[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, erased: bool) {
        self.mask[r * self.cols + c] = erased;
    }

    pub fn row_count(&self, r: usize) -> usize {
        self.mask[r * self.cols..(r + 1) * self.cols]
            .iter()
            .filter(|&&e| e)
            .count()
    }

    pub fn row_counts(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_count(r)).collect()
    }

    pub fn total(&self) -> usize {
        self.mask.iter().filter(|&&e| e).count()
    }

    pub fn erased_cols(&self, r: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.is_erased(r, c)).collect()
    }

    /// Row-major indices of erased cells.
    pub fn erased_cells(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn as_rows(&self) -> Vec<Vec<bool>> {
        self.mask
            .chunks(self.cols.max(1))
            .map(<[bool]>::to_vec)
            .collect()
    }

    /// Pattern whose row `j` is row `order[j]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        let mut out = Self::none(self.rows, self.cols);
        for (j, &i) in order.iter().enumerate() {
            out.mask[j * self.cols..(j + 1) * self.cols]
                .copy_from_slice(&self.mask[i * self.cols..(i + 1) * self.cols]);
        }
        out
    }
}

/// True iff the erasure counts, sorted descending, fit under the descending
/// budget vector position by position.
pub fn correctable_by_theorem(pattern: &ErasurePattern, profile: &LevelProfile) -> Result<bool> {
    if pattern.rows() != profile.m() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} rows", profile.m()),
            found: format!("{} rows", pattern.rows()),
        });
    }
    let mut counts = pattern.row_counts();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(counts
        .iter()
        .zip(profile.budgets_descending())
        .all(|(&e, b)| e <= b))
}

/// A GC code `C(n; u)` with its parity-check matrix.
pub struct GcCode {
    n: usize,
    field: FieldSpec,
    profile: LevelProfile,
    h: Matrix,
    pub(crate) cache: PthCache,
}

impl fmt::Debug for GcCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GcCode")
            .field("n", &self.n)
            .field("profile", &self.profile)
            .field("field", &self.field)
            .finish()
    }
}

impl GcCode {
    /// Assembles `H(n; u)` and precomputes the decoding matrix for the
    /// identity row order.
    pub fn new(n: usize, profile: LevelProfile, field: FieldSpec) -> Result<Self> {
        let m = profile.m();
        if n > field.order() {
            return Err(Error::LengthExceedsField {
                n,
                max: field.order(),
            });
        }
        if m > n {
            return Err(Error::ProfileTooTall { m, n });
        }
        if profile.max_budget() + 1 > n {
            return Err(Error::OutOfRange(format!(
                "erasure budget u = {} must be <= n - 1 = {}",
                profile.max_budget(),
                n - 1
            )));
        }
        let h = parity_check_matrix(n, &profile, &field)?;
        let code = GcCode {
            n,
            field,
            profile,
            h,
            cache: PthCache::default(),
        };
        code.pseudo_triangular(&RowPermutation::identity(m))?;
        Ok(code)
    }

    /// Convenience constructor from a `u` vector and a field.
    pub fn from_u(n: usize, u: &[usize], field: FieldSpec) -> Result<Self> {
        Self::new(n, LevelProfile::from_u_vector(u, n)?, field)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.profile.m()
    }

    /// Number of parity symbols.
    pub fn r(&self) -> usize {
        self.profile.r()
    }

    /// Number of data symbols, `mn - r`.
    pub fn k(&self) -> usize {
        self.m() * self.n - self.r()
    }

    pub fn len(&self) -> usize {
        self.m() * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn profile(&self) -> &LevelProfile {
        &self.profile
    }

    /// The `r x mn` parity-check matrix.
    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// `H(u_i, n; 0)`: the local check `H_0` stacked over `H_i`.
    pub fn level_check(&self, level: usize) -> Matrix {
        vandermonde_h(&self.field, self.profile.levels()[level].budget, self.n, 0)
            .expect("dimensions validated at construction")
    }

    /// `H_i = H(u_i - u_0, n; u_0)` for `i >= 1`.
    pub fn level_band(&self, level: usize) -> Option<Matrix> {
        let u0 = self.profile.levels()[0].budget;
        let ui = self.profile.levels()[level].budget;
        (level > 0).then(|| {
            vandermonde_h(&self.field, ui - u0, self.n, u0 as i64)
                .expect("dimensions validated at construction")
        })
    }

    pub fn min_distance_formula(&self) -> usize {
        self.profile.min_distance()
    }

    /// Row-budget rule, also checking the column count.
    pub fn correctable(&self, pattern: &ErasurePattern) -> Result<bool> {
        self.check_pattern_shape(pattern)?;
        correctable_by_theorem(pattern, &self.profile)
    }

    pub(crate) fn check_pattern_shape(&self, pattern: &ErasurePattern) -> Result<()> {
        if pattern.rows() != self.m() || pattern.cols() != self.n {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.m(), self.n),
                found: format!("{}x{}", pattern.rows(), pattern.cols()),
            });
        }
        Ok(())
    }
}

fn parity_check_matrix(n: usize, profile: &LevelProfile, field: &FieldSpec) -> Result<Matrix> {
    let m = profile.m();
    let u0 = profile.levels()[0].budget;
    let mut h = kronecker(
        &Matrix::identity(field, m),
        &vandermonde_h(field, u0, n, 0)?,
    )?;
    for i in (1..profile.t()).rev() {
        let level = profile.levels()[i];
        let hhat = vandermonde_hhat(field, level.rows, m, profile.s_hat(i + 1) as i64)?;
        let hi = vandermonde_h(field, level.budget - u0, n, u0 as i64)?;
        h = h.vstack(&kronecker(&hhat, &hi)?)?;
    }
    Ok(h)
}
