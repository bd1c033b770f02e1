//! Multi-level generalized concatenated erasure codes over `m x n` arrays
//! of GF(2^b) symbols.

pub mod cli;
pub mod code;
pub mod codec;
pub mod error;
pub mod format;
pub mod galois;
pub mod linalg;
pub mod oracle;

pub use code::{correctable_by_theorem, ErasurePattern, GcCode, Level, LevelProfile};
pub use codec::{
    decode, decode_traced, default_parity_placement, encode, encode_default, sort_rows, syndromes,
    triangularize, ArrayWord, DecodeTrace, PseudoTriangularH, RowPermutation, SyndromeVector,
};
pub use error::{Error, Result};
pub use galois::{FieldElement, FieldSpec};
pub use linalg::{Matrix, Solution};
