mod common;

use gc_erasure::codec::{
    decode_traced, default_parity_placement, encode, solve_row, syndromes, update_syndromes,
    RowPermutation,
};
use gc_erasure::format::{parse_mask, parse_word};
use gc_erasure::linalg::{kronecker, vandermonde_h};
use gc_erasure::{FieldElement, FieldSpec, GcCode, Matrix};

use common::golden::*;

fn assert_matrix(got: &Matrix, want: &Matrix) {
    assert_eq!(got, want, "\ngot:\n{}\nwant:\n{}", dump(got), dump(want));
}

#[test]
fn h_1133() {
    let f = gf8();
    let code = GcCode::from_u(5, &[1, 1, 3, 3], f.clone()).unwrap();
    let want = mat(&f, H_1133);
    assert_matrix(code.h(), &want);
}

#[test]
fn h_2233() {
    let f = gf8();
    let code = GcCode::from_u(5, &[2, 2, 3, 3], f.clone()).unwrap();
    let want = mat(&f, H_2233);
    assert_matrix(code.h(), &want);
}

#[test]
fn h_2244() {
    let f = gf8();
    let code = GcCode::from_u(5, &[2, 2, 4, 4], f.clone()).unwrap();
    let want = mat(&f, H_2244);
    assert_matrix(code.h(), &want);
}

#[test]
fn h_1123() {
    let f = gf8();
    let code = GcCode::from_u(5, &[1, 1, 2, 3], f.clone()).unwrap();
    let want = mat(&f, H_1123);
    assert_matrix(code.h(), &want);
}

#[test]
fn h_1223() {
    let f = gf8();
    let code = GcCode::from_u(5, &[1, 2, 2, 3], f.clone()).unwrap();
    let want = mat(&f, H_1223);
    assert_matrix(code.h(), &want);
}

#[test]
fn h_1224_block_form() {
    let f = gf8();
    let code = GcCode::from_u(5, &[1, 2, 2, 4], f.clone()).unwrap();
    let h0 = mat(&f, "1 1 1 1 1");
    let h2 = mat(&f, "a^4 a^3 a^2 a 1; a^8 a^6 a^4 a^2 1; a^12 a^9 a^6 a^3 1");
    let h1 = mat(&f, "a^4 a^3 a^2 a 1");
    let top = kronecker(&Matrix::identity(&f, 4), &h0).unwrap();
    let band2 = kronecker(&mat(&f, "1 1 1 1"), &h2).unwrap();
    let band1 = kronecker(&mat(&f, "1 a^-1 a^-2 a^-3; 1 a^-2 a^-4 a^-6"), &h1).unwrap();
    let want = top.vstack(&band2).unwrap().vstack(&band1).unwrap();
    assert_matrix(code.h(), &want);
    assert_eq!((code.h().rows(), code.h().cols()), (9, 20));
}

fn code_1224() -> GcCode {
    GcCode::from_u(5, &[1, 2, 2, 4], gf8()).unwrap()
}

// Block row of coefficient powers (None = zero block) times `piece`.
fn band(f: &FieldSpec, coeffs: &[Option<i64>], piece: &Matrix) -> Matrix {
    let row: Vec<FieldElement> = coeffs
        .iter()
        .map(|c| c.map_or(FieldElement::ZERO, |k| f.alpha_pow(k)))
        .collect();
    kronecker(&Matrix::from_rows(f, vec![row]).unwrap(), piece).unwrap()
}

#[test]
fn example_decode_checkpoints() {
    let f = gf8();
    let code = code_1224();
    let word = parse_word(&code, RECEIVED).unwrap();
    let (out, trace) = decode_traced(&code, &word, true).unwrap();

    assert_eq!(trace.pth.sigma().as_slice(), &[1, 0, 2, 3]);
    assert_matrix(
        trace.pth.gammas(),
        &mat(&f, "1 1 1 1; 0 1 a^6 a; 0 0 1 a^3"),
    );
    assert_eq!(
        trace.initial_syndromes.0,
        syms(&f, "a^6 a^3 a^2 a^3 a 1 a^3 a^6 a^5")
    );

    let values: Vec<Vec<FieldElement>> = trace.steps.iter().map(|s| s.values.clone()).collect();
    assert_eq!(
        values,
        vec![
            syms(&f, "a^5"),
            syms(&f, "a^5 a^2"),
            syms(&f, "a^5 a^6"),
            syms(&f, "0 a^3 1 a^5"),
        ]
    );
    let used: Vec<_> = trace
        .steps
        .iter()
        .map(|s| s.syndromes_used.clone())
        .collect();
    assert_eq!(used, vec![8..9, 6..8, 4..6, 0..4]);
    assert_eq!(trace.steps[0].erased_cols, vec![3]);
    assert_eq!(trace.steps[1].erased_cols, vec![1, 3]);
    assert_eq!(trace.steps[2].erased_cols, vec![0, 3]);

    assert_eq!(
        trace.steps[0].syndromes_after.0,
        syms(&f, "a^6 a^4 a^6 1 a 0 a^3 1 a^5")
    );
    let after = &trace.steps[1].syndromes_after.0;
    assert_eq!(&after[1..4], &syms(&f, "a^5 a^6 a^5")[..]);
    assert_eq!(after[5], f.alpha_pow(6));
    let after = &trace.steps[2].syndromes_after.0;
    assert_eq!(&after[0..4], &syms(&f, "a^6 a a 0")[..]);

    assert_eq!(out.symbols(), &syms(&f, DECODED)[..]);
}

#[test]
fn example_pseudo_triangular_blocks() {
    let f = gf8();
    let code = code_1224();
    let sigma = RowPermutation::from_order(vec![1, 0, 2, 3]).unwrap();
    let pth = code.pseudo_triangular(&sigma).unwrap();
    let h0 = mat(&f, "1 1 1 1 1");
    let h2 = mat(&f, "a^4 a^3 a^2 a 1; a^8 a^6 a^4 a^2 1; a^12 a^9 a^6 a^3 1");
    let h1 = mat(&f, "a^4 a^3 a^2 a 1");
    let parts = [
        band(&f, &[Some(0), None, None, None], &h0),
        band(&f, &[Some(0), Some(0), Some(0), Some(0)], &h2),
        band(&f, &[None, Some(0), None, None], &h0),
        band(&f, &[None, Some(0), Some(6), Some(1)], &h1),
        band(&f, &[None, None, Some(0), None], &h0),
        band(&f, &[None, None, Some(0), Some(3)], &h1),
        band(&f, &[None, None, None, Some(0)], &h0),
    ];
    let want = parts[1..]
        .iter()
        .fold(parts[0].clone(), |acc, p| acc.vstack(p).unwrap());
    assert_matrix(pth.matrix(), &want);
}

// The pseudo-triangular matrix is built from the reduced Vandermonde
// coefficients directly; here it is rebuilt the long way: permute the
// column blocks of H, left-multiply the band rows by the row transform,
// then interleave the rows.
#[test]
fn pseudo_triangular_matches_literal_transform() {
    let f = FieldSpec::new(4, 0x13).unwrap();
    for (n, u, order) in [
        (5usize, vec![1usize, 2, 2, 4], vec![1usize, 0, 2, 3]),
        (7, vec![1, 1, 2, 3, 3, 5], vec![4, 2, 5, 0, 3, 1]),
        (6, vec![2, 3, 4, 4, 5], vec![3, 4, 0, 2, 1]),
        (8, vec![1, 1, 1, 1, 6], vec![0, 1, 2, 3, 4]),
    ] {
        let code = GcCode::from_u(n, &u, f.clone()).unwrap();
        let (m, r) = (code.m(), code.r());
        let sigma = RowPermutation::from_order(order.clone()).unwrap();
        let pth = code.pseudo_triangular(&sigma).unwrap();

        let cols: Vec<usize> = order.iter().flat_map(|&i| i * n..(i + 1) * n).collect();
        let h_sigma = code.h().select_columns(&cols);
        let profile = code.profile();
        let u0 = profile.levels()[0].budget;
        let s1 = profile.s_hat(1);

        // Band rows of H_sigma as (vandermonde row l, q) -> row index.
        let mut band_row = std::collections::HashMap::new();
        let mut row = m * u0;
        for i in (1..profile.t()).rev() {
            let width = profile.levels()[i].budget - u0;
            for l in profile.s_hat(i + 1)..profile.s_hat(i) {
                for q in 0..width {
                    band_row.insert((l, q), row);
                    row += 1;
                }
            }
        }
        assert_eq!(row, r);

        let tr = pth.transform();
        let mut expect_rows = Vec::new();
        for (j, &src) in order.iter().enumerate() {
            for q in 0..u0 {
                expect_rows.push(h_sigma.row(src * u0 + q).to_vec());
            }
            if j < s1 {
                let width = profile.levels()[profile.level_of_sorted_row(j)].budget - u0;
                for q in 0..width {
                    // Combination of the q-th rows of every band at or above
                    // this one; rows of deeper bands share the leading rows.
                    let mut acc = vec![FieldElement::ZERO; m * n];
                    for l in 0..s1 {
                        let c = tr.get(j, l);
                        if c.is_zero() {
                            continue;
                        }
                        let src = h_sigma.row(band_row[&(l, q)]);
                        for (a, &s) in acc.iter_mut().zip(src) {
                            *a = f.add(*a, f.mul(c, s));
                        }
                    }
                    expect_rows.push(acc);
                }
            }
        }
        let want = Matrix::from_rows(&f, expect_rows).unwrap();
        assert_matrix(pth.matrix(), &want);
    }
}

#[test]
fn example_syndrome_helpers() {
    let f = gf8();
    let code = code_1224();
    let word = parse_word(&code, RECEIVED).unwrap();
    let sigma = RowPermutation::from_order(vec![1, 0, 2, 3]).unwrap();
    let pth = code.pseudo_triangular(&sigma).unwrap();
    let mut s = syndromes(&word, &pth).unwrap();
    assert_eq!(s.0, syms(&f, "a^6 a^3 a^2 a^3 a 1 a^3 a^6 a^5"));

    let h2 = vandermonde_h(&f, 4, 5, 0).unwrap();
    let h1 = vandermonde_h(&f, 2, 5, 0).unwrap();
    assert_eq!(solve_row(&[3], &h1, &s.0[8..9]).unwrap(), syms(&f, "a^5"));
    update_syndromes(&mut s, &pth, 3, &[(3, f.alpha_pow(5))]);
    assert_eq!(s.0, syms(&f, "a^6 a^4 a^6 1 a 0 a^3 1 a^5"));

    assert_eq!(
        solve_row(&[1, 3], &h1, &syms(&f, "a^3 1")).unwrap(),
        syms(&f, "a^5 a^2")
    );
    assert_eq!(
        solve_row(&[1, 2, 3, 4], &h2, &syms(&f, "a^6 a a 0")).unwrap(),
        syms(&f, "0 a^3 1 a^5")
    );
}

#[test]
fn example_encode() {
    let f = gf8();
    let code = code_1224();
    let placement = default_parity_placement(&code);
    assert_eq!(
        placement,
        parse_mask("01111\n00011\n00011\n00001\n").unwrap()
    );
    let data = syms(&f, "a^5  a^6 0 a^3  a^6 a^5 a^5  a^4 0 a a^5");
    let c = encode(&code, &data, &placement).unwrap();
    assert_eq!(c.symbols(), &syms(&f, DECODED)[..]);

    let pth = code
        .pseudo_triangular(&RowPermutation::identity(4))
        .unwrap();
    assert_matrix(pth.gammas(), &mat(&f, "1 1 1 1; 0 1 a^2 a^3; 0 0 1 a^3"));
    let h1 = mat(&f, "a^4 a^3 a^2 a 1");
    let want = band(&f, &[None, Some(0), Some(2), Some(3)], &h1);
    assert_eq!(pth.matrix().row(5), want.row(0));
}
