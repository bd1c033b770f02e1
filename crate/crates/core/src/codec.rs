//! Erasure decoding by successive Reed-Solomon solves, and systematic
//! encoding as the special case where the parity cells are the erasures.
//!
//! Decoding sorts the rows of the received array by erasure count
//! (descending), permutes the column blocks of `H` to match, and row-reduces
//! the global bands so the parity-check matrix becomes pseudo upper
//! triangular: the check rows assigned to sorted row `j` vanish on every
//! block before `j`. Rows are then solved from the last (fewest erasures) to
//! the first, each with its own local RS check `H(u_i, n; 0)`, updating the
//! syndromes of the rows still pending after every solve.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::code::{ErasurePattern, GcCode};
use crate::error::{Error, Result};
use crate::galois::FieldElement;
use crate::linalg::{vandermonde_h, Matrix};

/// An `m x n` array of symbols plus the cells known to be erased. Values
/// stored in erased cells are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayWord {
    rows: usize,
    cols: usize,
    grid: Vec<FieldElement>,
    erasures: ErasurePattern,
}

impl ArrayWord {
    pub fn new(grid: Vec<Vec<FieldElement>>, erasures: ErasurePattern) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::BadDimensions("ragged array".into()));
        }
        if erasures.rows() != rows || erasures.cols() != cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{rows}x{cols} erasure mask"),
                found: format!("{}x{}", erasures.rows(), erasures.cols()),
            });
        }
        Ok(ArrayWord {
            rows,
            cols,
            grid: grid.concat(),
            erasures,
        })
    }

    /// A fully known array from row-major symbols.
    pub fn from_symbols(rows: usize, cols: usize, symbols: Vec<FieldElement>) -> Result<Self> {
        if symbols.len() != rows * cols {
            return Err(Error::BadDimensions(format!(
                "{} symbols for a {rows}x{cols} array",
                symbols.len()
            )));
        }
        Ok(ArrayWord {
            rows,
            cols,
            grid: symbols,
            erasures: ErasurePattern::none(rows, cols),
        })
    }

    /// Copy of `self` with `pattern` as its erasure mask. Erased cells are
    /// zeroed.
    pub fn erase(&self, pattern: &ErasurePattern) -> Result<Self> {
        if pattern.rows() != self.rows || pattern.cols() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", pattern.rows(), pattern.cols()),
            });
        }
        let mut out = self.clone();
        out.erasures = pattern.clone();
        for (i, v) in out.grid.iter_mut().enumerate() {
            if pattern.is_erased(i / self.cols, i % self.cols) {
                *v = FieldElement::ZERO;
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.grid[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.grid[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.grid[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major symbols, including whatever sits in erased cells.
    pub fn symbols(&self) -> &[FieldElement] {
        &self.grid
    }

    /// Row-major symbols with erased cells read as zero.
    pub fn known_symbols(&self) -> Vec<FieldElement> {
        self.grid
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if self.erasures.is_erased(i / self.cols, i % self.cols) {
                    FieldElement::ZERO
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn erasures(&self) -> &ErasurePattern {
        &self.erasures
    }

    pub fn is_complete(&self) -> bool {
        self.erasures.total() == 0
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        self.grid
            .chunks(self.cols.max(1))
            .map(<[FieldElement]>::to_vec)
            .collect()
    }
}

/// A row reordering. `sigma(i)` is the sorted position of original row `i`;
/// `source(j)` is the original row that lands at sorted position `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowPermutation {
    sigma: Vec<usize>,
    inverse: Vec<usize>,
}

impl RowPermutation {
    pub fn identity(m: usize) -> Self {
        let id: Vec<usize> = (0..m).collect();
        RowPermutation {
            sigma: id.clone(),
            inverse: id,
        }
    }

    /// From the sorted order: `order[j]` is the original row placed at `j`.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut sigma = vec![usize::MAX; m];
        for (j, &i) in order.iter().enumerate() {
            if i >= m || sigma[i] != usize::MAX {
                return Err(Error::BadDimensions(format!(
                    "{order:?} is not a permutation"
                )));
            }
            sigma[i] = j;
        }
        Ok(RowPermutation {
            sigma,
            inverse: order,
        })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self, i: usize) -> usize {
        self.sigma[i]
    }

    pub fn source(&self, j: usize) -> usize {
        self.inverse[j]
    }

    /// `[sigma(0), .., sigma(m-1)]`.
    pub fn as_slice(&self) -> &[usize] {
        &self.sigma
    }

    /// `[source(0), .., source(m-1)]`.
    pub fn order(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }
}

/// Stable sort of rows by descending erasure count.
pub fn sort_rows(pattern: &ErasurePattern) -> RowPermutation {
    let counts = pattern.row_counts();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]));
    RowPermutation::from_order(order).expect("sorted indices form a permutation")
}

/// Check rows owned by one sorted array row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowPlan {
    /// Level whose budget applies at this sorted position.
    pub level: usize,
    /// First syndrome index owned by the row.
    pub syndrome_start: usize,
    /// Number of syndromes owned, equal to the level budget.
    pub syndrome_len: usize,
}

/// The pseudo upper-triangular parity-check matrix for one row order.
#[derive(Debug, Clone)]
pub struct PseudoTriangularH {
    n: usize,
    matrix: Matrix,
    sigma: RowPermutation,
    gammas: Matrix,
    transform: Matrix,
    plan: Vec<RowPlan>,
    // Column blocks [lo, hi) a check row can be nonzero on.
    row_blocks: Vec<(usize, usize)>,
    local_checks: Vec<Matrix>,
}

impl PseudoTriangularH {
    /// The `r x mn` matrix acting on the row-sorted array.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn sigma(&self) -> &RowPermutation {
        &self.sigma
    }

    /// The upper unit-triangular `ŝ_1 x m` reduction of the permuted block
    /// Vandermonde matrix. Entry `(j, k)` scales the band of sorted row `j`
    /// on block `k`.
    pub fn gammas(&self) -> &Matrix {
        &self.gammas
    }

    /// Lower-triangular row transform with `transform * Ĥ_σ = gammas`.
    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn plan(&self) -> &[RowPlan] {
        &self.plan
    }

    /// `H(u_i, n; 0)` for the level of sorted row `j`.
    pub fn local_check(&self, j: usize) -> &Matrix {
        &self.local_checks[self.plan[j].level]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Builds the pseudo upper-triangular matrix for `code` under row order
/// `sigma`.
pub fn triangularize(code: &GcCode, sigma: &RowPermutation) -> Result<PseudoTriangularH> {
    let f = code.field();
    let profile = code.profile();
    let (m, n) = (code.m(), code.n());
    if sigma.len() != m {
        return Err(Error::ShapeMismatch {
            expected: format!("permutation of {m} rows"),
            found: format!("{} rows", sigma.len()),
        });
    }
    let s1 = profile.s_hat(1);
    let u0 = profile.levels()[0].budget;

    // Block Vandermonde with columns permuted: entry (l, j) = alpha^(-i_j * l).
    let (gammas, transform) = if s1 > 0 {
        let mut hhat = Matrix::zeros(f, s1, m);
        for l in 0..s1 {
            for j in 0..m {
                hhat.set(l, j, f.alpha_pow(-((sigma.source(j) * l) as i64)));
            }
        }
        let (red, tr) = hhat.row_reduce_to_upper_unit()?;
        // Bands may only mix with higher-budget bands above them.
        for i in 0..s1 {
            if let Some(c) = (i + 1..s1).find(|&c| !tr.get(i, c).is_zero()) {
                return Err(Error::RankDeficient { column: c });
            }
        }
        (red, tr)
    } else {
        (Matrix::zeros(f, 0, m), Matrix::zeros(f, 0, 0))
    };

    let local_checks: Vec<Matrix> = (0..profile.t()).map(|i| code.level_check(i)).collect();
    let full = vandermonde_h(f, profile.max_budget(), n, 0)?;

    let mut matrix = Matrix::zeros(f, code.r(), m * n);
    let mut plan = Vec::with_capacity(m);
    let mut row_blocks = Vec::with_capacity(code.r());
    let mut row = 0;
    for j in 0..m {
        let level = profile.level_of_sorted_row(j);
        let budget = profile.levels()[level].budget;
        let start = row;
        for q in 0..u0 {
            matrix.row_mut(row)[j * n..(j + 1) * n].copy_from_slice(full.row(q));
            row_blocks.push((j, j + 1));
            row += 1;
        }
        if j < s1 {
            for q in u0..budget {
                let h_row = full.row(q);
                for blk in j..m {
                    let g = gammas.get(j, blk);
                    if g.is_zero() {
                        continue;
                    }
                    let dst = &mut matrix.row_mut(row)[blk * n..(blk + 1) * n];
                    for (d, &h) in dst.iter_mut().zip(h_row) {
                        *d = f.mul(g, h);
                    }
                }
                row_blocks.push((j, m));
                row += 1;
            }
        }
        plan.push(RowPlan {
            level,
            syndrome_start: start,
            syndrome_len: row - start,
        });
    }
    debug_assert_eq!(row, code.r());

    Ok(PseudoTriangularH {
        n,
        matrix,
        sigma: sigma.clone(),
        gammas,
        transform,
        plan,
        row_blocks,
        local_checks,
    })
}

/// Syndromes ordered to match the rows of a [`PseudoTriangularH`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeVector(pub Vec<FieldElement>);

impl SyndromeVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }
}

/// Syndromes of `word` (in original row order) against `pth`, with erased
/// cells read as zero.
pub fn syndromes(word: &ArrayWord, pth: &PseudoTriangularH) -> Result<SyndromeVector> {
    let m = pth.plan.len();
    if word.rows() != m || word.cols() != pth.n {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", m, pth.n),
            found: format!("{}x{}", word.rows(), word.cols()),
        });
    }
    let known = word.known_symbols();
    let n = pth.n;
    let mut sorted = Vec::with_capacity(known.len());
    for j in 0..m {
        let i = pth.sigma.source(j);
        sorted.extend_from_slice(&known[i * n..(i + 1) * n]);
    }
    Ok(sorted_syndromes(pth, &sorted))
}

fn sorted_syndromes(pth: &PseudoTriangularH, sorted: &[FieldElement]) -> SyndromeVector {
    let f = pth.matrix.field();
    let n = pth.n;
    let s = (0..pth.matrix.rows())
        .map(|k| {
            let (lo, hi) = pth.row_blocks[k];
            f.dot(&pth.matrix.row(k)[lo * n..hi * n], &sorted[lo * n..hi * n])
        })
        .collect();
    SyndromeVector(s)
}

/// Solves for the erased cells of one row: the square system formed by the
/// erased columns of the first `|erased_cols|` rows of `local_check`,
/// against the leading syndromes of `synd`.
pub fn solve_row(
    erased_cols: &[usize],
    local_check: &Matrix,
    synd: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let e = erased_cols.len();
    if e == 0 {
        return Ok(Vec::new());
    }
    if e > synd.len() || e > local_check.rows() {
        return Err(Error::Uncorrectable(format!(
            "{e} erasures but only {} check equations",
            synd.len().min(local_check.rows())
        )));
    }
    let rows: Vec<usize> = (0..e).collect();
    local_check
        .select_rows(&rows)
        .select_columns(erased_cols)
        .solve_square(&synd[..e])
}

/// Folds recovered values of sorted row `row` into the syndromes of every
/// row still pending (those before it in sorted order).
pub fn update_syndromes(
    synd: &mut SyndromeVector,
    pth: &PseudoTriangularH,
    row: usize,
    recovered: &[(usize, FieldElement)],
) {
    let f = pth.matrix.field();
    let n = pth.n;
    let pending = pth.plan[row].syndrome_start;
    for (k, s) in synd.0.iter_mut().enumerate().take(pending) {
        for &(c, v) in recovered {
            let h = pth.matrix.get(k, row * n + c);
            if !h.is_zero() && !v.is_zero() {
                *s = f.add(*s, f.mul(h, v));
            }
        }
    }
}

/// One row solve recorded by [`decode_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowStep {
    pub sorted_row: usize,
    pub source_row: usize,
    pub erased_cols: Vec<usize>,
    /// Syndrome indices owned by the row.
    pub syndromes_used: std::ops::Range<usize>,
    pub values: Vec<FieldElement>,
    /// All syndromes after folding this row's values into the pending ones.
    pub syndromes_after: SyndromeVector,
}

/// Intermediate state of a decode.
#[derive(Debug, Clone)]
pub struct DecodeTrace {
    pub pth: Arc<PseudoTriangularH>,
    pub initial_syndromes: SyndromeVector,
    /// One entry per sorted row, last row first.
    pub steps: Vec<RowStep>,
}

/// Recovers the erased cells of `word`. With `verify`, the result is checked
/// against the full parity-check matrix.
pub fn decode(code: &GcCode, word: &ArrayWord, verify: bool) -> Result<ArrayWord> {
    decode_traced(code, word, verify).map(|(w, _)| w)
}

/// [`decode`], also returning the intermediate state.
pub fn decode_traced(
    code: &GcCode,
    word: &ArrayWord,
    verify: bool,
) -> Result<(ArrayWord, DecodeTrace)> {
    code.check_pattern_shape(word.erasures())?;
    let sigma = sort_rows(word.erasures());
    let budgets = code.profile().budgets_descending();
    for (j, &budget) in budgets.iter().enumerate() {
        let i = sigma.source(j);
        let e = word.erasures().row_count(i);
        if e > budget {
            return Err(Error::Uncorrectable(format!(
                "row {i} has {e} erasures but sorted position {j} allows {budget}"
            )));
        }
    }
    let pth = code.pseudo_triangular(&sigma)?;
    run(code, pth, word, verify)
}

fn run(
    code: &GcCode,
    pth: Arc<PseudoTriangularH>,
    word: &ArrayWord,
    verify: bool,
) -> Result<(ArrayWord, DecodeTrace)> {
    let (m, n) = (code.m(), code.n());
    let f = code.field();
    let known = word.known_symbols();
    let mut sorted = Vec::with_capacity(m * n);
    for j in 0..m {
        let i = pth.sigma.source(j);
        sorted.extend_from_slice(&known[i * n..(i + 1) * n]);
    }
    let mut synd = sorted_syndromes(&pth, &sorted);
    let initial = synd.clone();
    let mut steps = Vec::new();

    for j in (0..m).rev() {
        let source = pth.sigma.source(j);
        let cols = word.erasures().erased_cols(source);
        if cols.is_empty() {
            continue;
        }
        let plan = pth.plan[j];
        let range = plan.syndrome_start..plan.syndrome_start + plan.syndrome_len;
        let values = solve_row(&cols, pth.local_check(j), &synd.0[range.clone()])?;
        let recovered: Vec<(usize, FieldElement)> =
            cols.iter().copied().zip(values.iter().copied()).collect();
        for &(c, v) in &recovered {
            sorted[j * n + c] = v;
        }
        update_syndromes(&mut synd, &pth, j, &recovered);
        steps.push(RowStep {
            sorted_row: j,
            source_row: source,
            erased_cols: cols,
            syndromes_used: range,
            values,
            syndromes_after: synd.clone(),
        });
    }

    let mut out = vec![FieldElement::ZERO; m * n];
    for j in 0..m {
        let i = pth.sigma.source(j);
        out[i * n..(i + 1) * n].copy_from_slice(&sorted[j * n..(j + 1) * n]);
    }
    if verify {
        if let Some(k) = code.syndrome(&out).iter().position(|s| !s.is_zero()) {
            return Err(Error::Uncorrectable(format!(
                "decoded array fails parity check row {k}"
            )));
        }
    }
    let _ = f;
    let decoded = ArrayWord::from_symbols(m, n, out)?;
    Ok((
        decoded,
        DecodeTrace {
            pth,
            initial_syndromes: initial,
            steps,
        },
    ))
}

/// Parity cells at the end of each row, with the largest budgets on top:
/// row `j` gets the last `budgets_descending()[j]` cells.
pub fn default_parity_placement(code: &GcCode) -> ErasurePattern {
    let n = code.n();
    let mut p = ErasurePattern::none(code.m(), n);
    for (j, &b) in code.profile().budgets_descending().iter().enumerate() {
        for c in n - b..n {
            p.set(j, c, true);
        }
    }
    p
}

/// Systematic encoding: `data` fills the non-parity cells row-major, the
/// parity cells are then recovered as erasures.
pub fn encode(
    code: &GcCode,
    data: &[FieldElement],
    placement: &ErasurePattern,
) -> Result<ArrayWord> {
    code.check_pattern_shape(placement)?;
    if placement.total() != code.r() {
        return Err(Error::InvalidPlacement(format!(
            "{} parity cells, code needs {}",
            placement.total(),
            code.r()
        )));
    }
    if !code.correctable(placement)? {
        return Err(Error::InvalidPlacement(format!(
            "row parity counts {:?} exceed the level budgets {:?}",
            placement.row_counts(),
            code.profile().budgets_descending()
        )));
    }
    if data.len() != code.k() {
        return Err(Error::BadDimensions(format!(
            "{} data symbols, code carries {}",
            data.len(),
            code.k()
        )));
    }
    if let Some(bad) = data.iter().find(|d| !code.field().contains(**d)) {
        return Err(Error::NotAnElement {
            value: bad.0 as u32,
            b: code.field().bits(),
        });
    }
    let (m, n) = (code.m(), code.n());
    let mut grid = vec![FieldElement::ZERO; m * n];
    let mut it = data.iter();
    for (i, cell) in grid.iter_mut().enumerate() {
        if !placement.is_erased(i / n, i % n) {
            *cell = *it.next().expect("data length checked");
        }
    }
    let rows: Vec<Vec<FieldElement>> = grid.chunks(n).map(<[FieldElement]>::to_vec).collect();
    let word = ArrayWord::new(rows, placement.clone())?;
    let pth = code.pseudo_triangular(&sort_rows(placement))?;
    run(code, pth, &word, false).map(|(w, _)| w)
}

/// Encodes with [`default_parity_placement`].
pub fn encode_default(code: &GcCode, data: &[FieldElement]) -> Result<ArrayWord> {
    encode(code, data, &default_parity_placement(code))
}

/// Data symbols of a codeword under a placement, row-major.
pub fn extract_data(word: &ArrayWord, placement: &ErasurePattern) -> Vec<FieldElement> {
    let n = word.cols();
    word.symbols()
        .iter()
        .enumerate()
        .filter(|(i, _)| !placement.is_erased(i / n, i % n))
        .map(|(_, &v)| v)
        .collect()
}

const CACHE_CAPACITY: usize = 4096;

/// Decoding matrices keyed by row order. Readers share; each order is
/// inserted at most once.
#[derive(Default)]
pub(crate) struct PthCache {
    map: RwLock<HashMap<Vec<usize>, Arc<PseudoTriangularH>>>,
}

impl GcCode {
    /// The (cached) pseudo upper-triangular matrix for row order `sigma`.
    pub fn pseudo_triangular(&self, sigma: &RowPermutation) -> Result<Arc<PseudoTriangularH>> {
        if let Some(p) = self
            .cache
            .map
            .read()
            .expect("cache lock")
            .get(sigma.order())
        {
            return Ok(Arc::clone(p));
        }
        let pth = Arc::new(triangularize(self, sigma)?);
        let mut map = self.cache.map.write().expect("cache lock");
        if map.len() >= CACHE_CAPACITY {
            return Ok(pth);
        }
        Ok(Arc::clone(map.entry(sigma.order().to_vec()).or_insert(pth)))
    }

    /// `H · c` using the block structure of `H`: the local rows only touch
    /// their own row of the array.
    pub fn syndrome(&self, symbols: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let (m, n) = (self.m(), self.n());
        let u0 = self.profile().levels()[0].budget;
        let h = self.h();
        (0..h.rows())
            .map(|k| {
                if k < m * u0 {
                    let blk = k / u0;
                    f.dot(
                        &h.row(k)[blk * n..(blk + 1) * n],
                        &symbols[blk * n..(blk + 1) * n],
                    )
                } else {
                    f.dot(h.row(k), symbols)
                }
            })
            .collect()
    }
}
