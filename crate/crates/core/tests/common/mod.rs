#![allow(dead_code)]

pub mod golden;

use gc_erasure::{encode_default, ArrayWord, ErasurePattern, FieldElement, FieldSpec, GcCode};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_codeword<R: Rng>(code: &GcCode, rng: &mut R) -> ArrayWord {
    let size = code.field().size() as u16;
    let data: Vec<FieldElement> = (0..code.k())
        .map(|_| FieldElement(rng.gen_range(0..size)))
        .collect();
    encode_default(code, &data).unwrap()
}

fn pattern_from_counts<R: Rng>(code: &GcCode, counts: &[usize], rng: &mut R) -> ErasurePattern {
    let (m, n) = (code.m(), code.n());
    let mut rows: Vec<usize> = (0..m).collect();
    rows.shuffle(rng);
    let mut p = ErasurePattern::none(m, n);
    let cols: Vec<usize> = (0..n).collect();
    for (&row, &e) in rows.iter().zip(counts) {
        for &c in cols.choose_multiple(rng, e) {
            p.set(row, c, true);
        }
    }
    p
}

/// Sorted position `j` gets a uniform count in `0..=budget_j`; rows and
/// columns are then shuffled. Every pattern the row budgets allow can occur.
pub fn random_correctable<R: Rng>(code: &GcCode, rng: &mut R) -> ErasurePattern {
    let counts: Vec<usize> = code
        .profile()
        .budgets_descending()
        .iter()
        .map(|&b| rng.gen_range(0..=b))
        .collect();
    pattern_from_counts(code, &counts, rng)
}

/// Every row erased up to its full budget (r erasures in total).
pub fn maximal_correctable<R: Rng>(code: &GcCode, rng: &mut R) -> ErasurePattern {
    pattern_from_counts(code, &code.profile().budgets_descending(), rng)
}

/// Every non-decreasing `u` of length `m` with entries in `1..n`.
pub fn u_vectors(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, m: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1);
        for v in lo..n {
            prefix.push(v);
            grow(prefix, m, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), m, n, &mut out);
    out
}

/// All valid `(n, u)` with `m <= n <= max_n` and `m <= max_m`.
pub fn all_profiles(max_n: usize, max_m: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in 1..=max_m.min(n) {
            for u in u_vectors(m, n) {
                out.push((n, u));
            }
        }
    }
    out
}

/// Codes used for randomized checks, from GF(8) up to GF(2^10).
pub fn sample_codes() -> Vec<GcCode> {
    let f = |b| FieldSpec::with_default_poly(b).unwrap();
    vec![
        GcCode::from_u(5, &[1, 2, 2, 4], f(3)).unwrap(),
        GcCode::from_u(5, &[1, 1, 2, 2], f(3)).unwrap(),
        GcCode::from_u(8, &[1, 1, 2, 3, 3, 5], f(4)).unwrap(),
        GcCode::from_u(10, &[2, 3, 4, 5, 6, 7, 8], f(5)).unwrap(),
        GcCode::from_u(16, &[2, 2, 4, 4, 6, 8], f(8)).unwrap(),
        GcCode::from_u(12, &[1, 1, 1, 3, 3, 6], f(10)).unwrap(),
    ]
}

pub fn perf_code() -> GcCode {
    let profile =
        gc_erasure::LevelProfile::from_levels(&[(8, 4), (4, 8), (2, 12), (2, 16)], 32).unwrap();
    GcCode::new(32, profile, FieldSpec::with_default_poly(8).unwrap()).unwrap()
}
