//! Brute-force checks that share nothing with the decoder beyond `H`:
//! direct linear solves over the erased columns, smallest dependent column
//! sets, explicit minimum-weight codewords, and exhaustive pattern sweeps.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::code::{ErasurePattern, GcCode};
use crate::codec::{decode, encode_default, ArrayWord};
use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldSpec};
use crate::linalg::{vandermonde_h, vandermonde_hhat, Matrix, Solution};

/// Default number of patterns an exhaustive sweep may check.
pub const DEFAULT_BUDGET: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// The erased columns of `H` are linearly independent.
    pub solvable: bool,
    /// Values for the erased cells in row-major order, when the system has a
    /// unique consistent solution.
    pub solution: Option<Vec<FieldElement>>,
    /// A dependent column set, when one was found.
    pub witness: Option<Vec<usize>>,
}

impl OracleReport {
    /// `word` with the solution written into its erased cells.
    pub fn fill(&self, word: &ArrayWord) -> Option<ArrayWord> {
        let values = self.solution.as_ref()?;
        let cells = word.erasures().erased_cells();
        let mut out =
            ArrayWord::from_symbols(word.rows(), word.cols(), word.known_symbols()).ok()?;
        for (&cell, &v) in cells.iter().zip(values) {
            out.set(cell / word.cols(), cell % word.cols(), v);
        }
        Some(out)
    }
}

/// Solves `H_E x = H v` for the erased cells `E` of `word` by Gaussian
/// elimination on the full (overdetermined) system.
pub fn brute_solve(code: &GcCode, word: &ArrayWord) -> Result<OracleReport> {
    if word.rows() != code.m() || word.cols() != code.n() {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", code.m(), code.n()),
            found: format!("{}x{}", word.rows(), word.cols()),
        });
    }
    let cells = word.erasures().erased_cells();
    let h = code.h();
    let rhs = h.mul_vec(&word.known_symbols())?;
    let sub = h.select_columns(&cells);
    Ok(match sub.solve(&rhs)? {
        Solution::Unique(x) => OracleReport {
            solvable: true,
            solution: Some(x),
            witness: None,
        },
        Solution::Underdetermined { .. } => OracleReport {
            solvable: false,
            solution: None,
            witness: None,
        },
        Solution::Inconsistent => OracleReport {
            solvable: sub.rank() == cells.len(),
            solution: None,
            witness: None,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceResult {
    /// `witness` is the lexicographically first dependent column set of
    /// minimum size.
    Found {
        distance: usize,
        witness: Vec<usize>,
    },
    AboveCap {
        cap: usize,
    },
}

impl DistanceResult {
    pub fn distance(&self) -> Option<usize> {
        match self {
            DistanceResult::Found { distance, .. } => Some(*distance),
            DistanceResult::AboveCap { .. } => None,
        }
    }
}

// Echelon basis grown one column at a time. Each stored vector is zero at
// the pivots of the vectors before it and has a unit entry at its own pivot.
#[derive(Clone)]
struct Basis<'a> {
    field: &'a FieldSpec,
    vecs: Vec<(usize, Vec<FieldElement>)>,
}

impl<'a> Basis<'a> {
    fn new(field: &'a FieldSpec) -> Self {
        Basis {
            field,
            vecs: Vec::new(),
        }
    }

    // Reduces `v` against the basis; `None` if it lies in the span.
    fn reduce(&self, v: &[FieldElement]) -> Option<(usize, Vec<FieldElement>)> {
        let f = self.field;
        let mut v = v.to_vec();
        for (p, b) in &self.vecs {
            let k = v[*p];
            if !k.is_zero() {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(k, y));
                }
            }
        }
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        Some((p, v))
    }
}

/// Smallest `w <= cap` such that some `w` columns of `H` are linearly
/// dependent, which is the minimum distance of the code.
pub fn min_distance_search(code: &GcCode, cap: usize) -> DistanceResult {
    let h = code.h();
    let f = code.field();
    let columns: Vec<Vec<FieldElement>> = (0..h.cols())
        .map(|c| (0..h.rows()).map(|r| h.get(r, c)).collect())
        .collect();
    for w in 1..=cap.min(columns.len()) {
        let found = (0..columns.len()).into_par_iter().find_map_first(|first| {
            let mut chosen = vec![first];
            search(&columns, Basis::new(f), &mut chosen, w)
        });
        if let Some(witness) = found {
            return DistanceResult::Found {
                distance: w,
                witness,
            };
        }
    }
    DistanceResult::AboveCap { cap }
}

// Depth-first over index sets extending `chosen`, in lexicographic order.
// `basis` spans all chosen columns except the last one.
fn search(
    columns: &[Vec<FieldElement>],
    basis: Basis,
    chosen: &mut Vec<usize>,
    w: usize,
) -> Option<Vec<usize>> {
    let last = *chosen.last().expect("non-empty");
    let reduced = basis.reduce(&columns[last]);
    let Some(pivot) = reduced else {
        // The last column is in the span of the others.
        return (chosen.len() == w).then(|| chosen.clone());
    };
    if chosen.len() == w {
        return None;
    }
    let mut next = basis;
    next.vecs.push(pivot);
    for c in last + 1..columns.len() {
        if columns.len() - c < w - chosen.len() {
            break;
        }
        chosen.push(c);
        let hit = search(columns, next.clone(), chosen, w);
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

// Nonzero vector of weight exactly `cols + 1` in the null space of the
// `rows x (rows + 1)` matrix `a`: fix the last entry to 1, solve for the rest.
fn unit_tail_kernel_vector(a: &Matrix) -> Result<Vec<FieldElement>> {
    let k = a.rows();
    let lead: Vec<usize> = (0..k).collect();
    let tail: Vec<FieldElement> = (0..k).map(|r| a.get(r, k)).collect();
    let mut x = a.select_columns(&lead).solve_square(&tail)?;
    x.push(FieldElement::ONE);
    Ok(x)
}

/// A codeword of weight `(ŝ_{i+1} + 1)(u_i + 1)` for level `i`: a
/// minimum-weight word `u` of the RS code checked by `H(u_i, n; 0)`, placed
/// in the first `ŝ_{i+1} + 1` rows scaled by a minimum-weight word `v` of
/// the code checked by `Ĥ(ŝ_{i+1}, ŝ_{i+1} + 1; 0)`. Row-major.
pub fn witness_codeword(code: &GcCode, level: usize) -> Result<Vec<FieldElement>> {
    let profile = code.profile();
    if level >= profile.t() {
        return Err(Error::OutOfRange(format!(
            "level {level} outside 0..{}",
            profile.t()
        )));
    }
    let f = code.field();
    let n = code.n();
    let ui = profile.levels()[level].budget;
    let u_check = vandermonde_h(f, ui, n, 0)?.select_columns(&(0..=ui).collect::<Vec<_>>());
    let u = unit_tail_kernel_vector(&u_check)?;
    let sh = profile.s_hat(level + 1);
    let v = if sh == 0 {
        vec![FieldElement::ONE]
    } else {
        unit_tail_kernel_vector(&vandermonde_hhat(f, sh, sh + 1, 0)?)?
    };
    let mut w = vec![FieldElement::ZERO; code.m() * n];
    for (j, &vj) in v.iter().enumerate() {
        for (c, &uc) in u.iter().enumerate() {
            w[j * n + c] = f.mul(vj, uc);
        }
    }
    Ok(w)
}

pub fn weight(symbols: &[FieldElement]) -> usize {
    symbols.iter().filter(|s| !s.is_zero()).count()
}

/// `H · c = 0`, computed densely.
pub fn is_codeword(code: &GcCode, symbols: &[FieldElement]) -> bool {
    code.h()
        .mul_vec(symbols)
        .map(|s| s.iter().all(|x| x.is_zero()))
        .unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecoderOutcome {
    /// Recovered the original codeword.
    Correct,
    /// Returned something other than the original codeword.
    Wrong,
    /// Declared the pattern uncorrectable.
    Rejected,
}

/// One pattern where the row-budget rule promised success but the oracle or
/// the decoder disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub cells: Vec<usize>,
    pub oracle_solvable: bool,
    pub oracle_correct: bool,
    pub decoder: DecoderOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapabilityTable {
    pub patterns: u64,
    /// Counts keyed by (rule says correctable, oracle solvable, decoder).
    pub classes: BTreeMap<(bool, bool, DecoderOutcome), u64>,
    pub counterexamples: Vec<Counterexample>,
    /// First pattern (enumeration order) the oracle can solve although the
    /// row-budget rule rejects it.
    pub beyond_rule_example: Option<Vec<usize>>,
}

impl CapabilityTable {
    pub fn count(&self, theorem: bool, oracle: bool, decoder: DecoderOutcome) -> u64 {
        self.classes
            .get(&(theorem, oracle, decoder))
            .copied()
            .unwrap_or(0)
    }

    pub fn oracle_only(&self) -> u64 {
        self.classes
            .iter()
            .filter(|((t, o, _), _)| !*t && *o)
            .map(|(_, c)| *c)
            .sum()
    }
}

/// `Σ_{w <= r} C(cells, w)`, saturating.
pub fn patterns_up_to(cells: usize, r: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for w in 0..=r.min(cells) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((cells - w) as u128) / (w as u128 + 1);
    }
    total
}

const CHUNK: usize = 4096;
const POOL: usize = 16;

/// Enumerates every erasure pattern of total weight at most `r`, comparing
/// the row-budget rule, the oracle and the decoder on random codewords.
pub fn exhaustive_capability(code: &GcCode, budget: u128, seed: u64) -> Result<CapabilityTable> {
    let (m, n) = (code.m(), code.n());
    let cells = m * n;
    let needed = patterns_up_to(cells, code.r());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let pool: Vec<ArrayWord> = (0..POOL)
        .map(|_| {
            let data: Vec<FieldElement> = (0..code.k())
                .map(|_| FieldElement(rng.gen_range(0..code.field().size()) as u16))
                .collect();
            encode_default(code, &data)
        })
        .collect::<Result<_>>()?;

    let mut table = CapabilityTable {
        patterns: 0,
        classes: BTreeMap::new(),
        counterexamples: Vec::new(),
        beyond_rule_example: None,
    };
    let all = (0..=code.r()).flat_map(|w| (0..cells).combinations(w));
    let mut index: usize = 0;
    for chunk in &all.chunks(CHUNK) {
        let chunk: Vec<Vec<usize>> = chunk.collect();
        let base = index;
        index += chunk.len();
        let results: Vec<(bool, bool, DecoderOutcome, Option<Counterexample>)> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, pat)| classify(code, &pool[(base + i) % POOL], pat))
            .collect::<Result<_>>()?;
        for (pat, (t, o, d, cx)) in chunk.into_iter().zip(results) {
            *table.classes.entry((t, o, d)).or_insert(0) += 1;
            if !t && o && table.beyond_rule_example.is_none() {
                table.beyond_rule_example = Some(pat);
            }
            table.counterexamples.extend(cx);
        }
    }
    table.patterns = index as u64;
    Ok(table)
}

fn classify(
    code: &GcCode,
    codeword: &ArrayWord,
    cells: &[usize],
) -> Result<(bool, bool, DecoderOutcome, Option<Counterexample>)> {
    let pattern = ErasurePattern::from_cells(code.m(), code.n(), cells)?;
    let theorem = code.correctable(&pattern)?;
    let received = codeword.erase(&pattern)?;
    let report = brute_solve(code, &received)?;
    let oracle_correct = report
        .fill(&received)
        .is_some_and(|w| w.symbols() == codeword.symbols());
    let decoder = match decode(code, &received, true) {
        Ok(w) if w.symbols() == codeword.symbols() => DecoderOutcome::Correct,
        Ok(_) => DecoderOutcome::Wrong,
        Err(Error::Uncorrectable(_)) => DecoderOutcome::Rejected,
        Err(e) => return Err(e),
    };
    let bad = (theorem && (!oracle_correct || decoder != DecoderOutcome::Correct))
        || decoder == DecoderOutcome::Wrong;
    let cx = bad.then(|| Counterexample {
        cells: cells.to_vec(),
        oracle_solvable: report.solvable,
        oracle_correct,
        decoder,
    });
    Ok((theorem, report.solvable, decoder, cx))
}
