//! Fixtures from the worked examples: GF(8) with x^3 + x + 1.

use gc_erasure::format::{format_element, parse_element, Notation};
use gc_erasure::{FieldElement, FieldSpec, Matrix};

pub fn gf8() -> FieldSpec {
    FieldSpec::new(3, 0xB).unwrap()
}

// Rows separated by ';', symbols by whitespace, '|' ignored.
pub fn mat(f: &FieldSpec, text: &str) -> Matrix {
    let rows = text
        .split(';')
        .map(|r| {
            r.split_whitespace()
                .filter(|t| *t != "|")
                .map(|t| parse_element(f, t).unwrap())
                .collect()
        })
        .collect();
    Matrix::from_rows(f, rows).unwrap()
}

pub fn syms(f: &FieldSpec, text: &str) -> Vec<FieldElement> {
    text.split_whitespace()
        .map(|t| parse_element(f, t).unwrap())
        .collect()
}

pub fn dump(m: &Matrix) -> String {
    let f = m.field();
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|&e| format_element(f, e, Notation::Power))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub const H_1133: &str = "1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1;
         a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1;
         a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1;
         a^4 a^3 a^2 a 1 | a^3 a^2 a 1 a^-1 | a^2 a 1 a^-1 a^-2 | a 1 a^-1 a^-2 a^-3;
         a^8 a^6 a^4 a^2 1 | a^7 a^5 a^3 a a^-1 | a^6 a^4 a^2 1 a^-2 | a^5 a^3 a a^-1 a^-3";

pub const H_2233: &str = "1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         a^4 a^3 a^2 a 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | a^4 a^3 a^2 a 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | a^4 a^3 a^2 a 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | a^4 a^3 a^2 a 1;
         a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1;
         a^8 a^6 a^4 a^2 1 | a^7 a^5 a^3 a a^-1 | a^6 a^4 a^2 1 a^-2 | a^5 a^3 a a^-1 a^-3";

pub const H_2244: &str = "1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         a^4 a^3 a^2 a 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | a^4 a^3 a^2 a 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | a^4 a^3 a^2 a 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | a^4 a^3 a^2 a 1;
         a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1;
         a^12 a^9 a^6 a^3 1 | a^12 a^9 a^6 a^3 1 | a^12 a^9 a^6 a^3 1 | a^12 a^9 a^6 a^3 1;
         a^8 a^6 a^4 a^2 1 | a^7 a^5 a^3 a a^-1 | a^6 a^4 a^2 1 a^-2 | a^5 a^3 a a^-1 a^-3;
         a^12 a^9 a^6 a^3 1 | a^11 a^8 a^5 a^2 a^-1 | a^10 a^7 a^4 a a^-2 | a^9 a^6 a^3 1 a^-3";

pub const H_1123: &str = "1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1;
         a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1;
         a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1;
         a^4 a^3 a^2 a 1 | a^3 a^2 a 1 a^-1 | a^2 a 1 a^-1 a^-2 | a 1 a^-1 a^-2 a^-3";

pub const H_1223: &str = "1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1 | 0 0 0 0 0;
         0 0 0 0 0 | 0 0 0 0 0 | 0 0 0 0 0 | 1 1 1 1 1;
         a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1 | a^4 a^3 a^2 a 1;
         a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1 | a^8 a^6 a^4 a^2 1;
         a^4 a^3 a^2 a 1 | a^3 a^2 a 1 a^-1 | a^2 a 1 a^-1 a^-2 | a 1 a^-1 a^-2 a^-3;
         a^4 a^3 a^2 a 1 | a^2 a 1 a^-1 a^-2 | 1 a^-1 a^-2 a^-3 a^-4 | a^-2 a^-3 a^-4 a^-5 a^-6";

// The printed local rows of the (1,1,2,3) display are one zero short in
// the last block, and the (1,2,2,3) display repeats its last column; the
// literals above are the 20-column matrices both displays describe.
pub const MATRICES: [(&[usize], &str); 5] = [
    (&[1, 1, 3, 3], H_1133),
    (&[2, 2, 3, 3], H_2233),
    (&[2, 2, 4, 4], H_2244),
    (&[1, 1, 2, 3], H_1123),
    (&[1, 2, 2, 3], H_1223),
];

pub const RECEIVED: &str = "
E, a^3, 1, E, 0
a^6, E, E, E, E
a^6, E, a^5, E, 1
a^4, 0, a, E, a^3
";

pub const DECODED: &str = "a^5 a^3 1 a^6 0  a^6 0 a^3 1 a^5  a^6 a^5 a^5 a^2 1  a^4 0 a a^5 a^3";

pub const DATA: &str = "a^5  a^6 0 a^3  a^6 a^5 a^5  a^4 0 a a^5";

pub const SIGMA: [usize; 4] = [1, 0, 2, 3];
pub const DECODE_GAMMAS: &str = "1 1 1 1; 0 1 a^6 a; 0 0 1 a^3";
pub const ENCODE_GAMMAS: &str = "1 1 1 1; 0 1 a^2 a^3; 0 0 1 a^3";
pub const INITIAL_SYNDROMES: &str = "a^6 a^3 a^2 a^3 a 1 a^3 a^6 a^5";
pub const ROW_VALUES: [&str; 4] = ["a^5", "a^5 a^2", "a^5 a^6", "0 a^3 1 a^5"];
