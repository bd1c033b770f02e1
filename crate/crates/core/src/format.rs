//! Text forms: symbols, arrays with `E` erasures, 0/1 masks, matrix dumps
//! and the JSON code config.
//!
//! Symbols are written either as powers of alpha (`0`, `1`, `a`, `a^k`) or
//! as the integer value of their polynomial-basis representation. Parsing
//! accepts both forms everywhere.

use serde::{Deserialize, Serialize};

use crate::code::{ErasurePattern, GcCode, LevelProfile};
use crate::codec::ArrayWord;
use crate::error::{Error, Result};
use crate::galois::{default_poly, FieldElement, FieldSpec};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notation {
    Power,
    Int,
}

impl Notation {
    /// Power form for fields up to GF(16), integers above.
    pub fn default_for(field: &FieldSpec) -> Self {
        if field.bits() <= 4 {
            Notation::Power
        } else {
            Notation::Int
        }
    }
}

pub fn format_element(field: &FieldSpec, e: FieldElement, notation: Notation) -> String {
    match notation {
        Notation::Int => e.value().to_string(),
        Notation::Power => match field.log(e) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "a".into(),
            Some(k) => format!("a^{k}"),
        },
    }
}

/// Parses one symbol token. Exponents may be negative or exceed the field
/// order; they are reduced.
pub fn parse_element(field: &FieldSpec, token: &str) -> std::result::Result<FieldElement, String> {
    let t = token.trim();
    if let Some(rest) = t.strip_prefix('a') {
        let k: i64 = if rest.is_empty() {
            1
        } else {
            let exp = rest
                .strip_prefix('^')
                .ok_or_else(|| format!("bad power token {t:?}"))?;
            exp.parse().map_err(|_| format!("bad exponent in {t:?}"))?
        };
        return Ok(field.alpha_pow(k));
    }
    let v: u32 = t.parse().map_err(|_| format!("bad symbol {t:?}"))?;
    field.element(v).map_err(|e| e.to_string())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

// Comma-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in line.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((start + lead + 1, piece.trim()));
        start += piece.len() + 1;
    }
    out
}

/// Parses an array file. `None` marks an `E` token.
pub fn parse_array(field: &FieldSpec, text: &str) -> Result<Vec<Vec<Option<FieldElement>>>> {
    let mut rows: Vec<Vec<Option<FieldElement>>> = Vec::new();
    for (line, l) in content_lines(text) {
        let mut row = Vec::new();
        for (column, tok) in tokens(l) {
            if tok.eq_ignore_ascii_case("e") {
                row.push(None);
                continue;
            }
            let v = parse_element(field, tok).map_err(|message| Error::Parse {
                line,
                column,
                message,
            })?;
            row.push(Some(v));
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Parses an array file into a word for `code`, erasing `E` cells.
pub fn parse_word(code: &GcCode, text: &str) -> Result<ArrayWord> {
    let cells = parse_array(code.field(), text)?;
    let (m, n) = (code.m(), code.n());
    if cells.len() != m || cells.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch {
            expected: format!("{m}x{n} array"),
            found: format!("{}x{}", cells.len(), cells.first().map_or(0, Vec::len)),
        });
    }
    let mask: Vec<Vec<bool>> = cells
        .iter()
        .map(|r| r.iter().map(Option::is_none).collect())
        .collect();
    let grid = cells
        .iter()
        .map(|r| r.iter().map(|c| c.unwrap_or(FieldElement::ZERO)).collect())
        .collect();
    ArrayWord::new(grid, ErasurePattern::from_rows(&mask)?)
}

/// One line per row, `", "` between symbols, erased cells as `E`.
pub fn format_word(field: &FieldSpec, word: &ArrayWord, notation: Notation) -> String {
    let mut out = String::new();
    for r in 0..word.rows() {
        let row: Vec<String> = (0..word.cols())
            .map(|c| {
                if word.erasures().is_erased(r, c) {
                    "E".into()
                } else {
                    format_element(field, word.get(r, c), notation)
                }
            })
            .collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

/// A 0/1 grid, one row per line. Cells may be separated by commas or
/// whitespace, or written contiguously (`01100`).
pub fn parse_mask(text: &str) -> Result<ErasurePattern> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (line, l) in content_lines(text) {
        let mut row = Vec::new();
        for (i, ch) in l.chars().enumerate() {
            let column = i + 1;
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                ',' | ' ' | '\t' | '\r' => {}
                other => {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: format!("expected 0 or 1, found {other:?}"),
                    })
                }
            }
        }
        if rows.first().is_some_and(|f| f.len() != row.len()) {
            return Err(Error::Parse {
                line,
                column: 1,
                message: "mask rows differ in length".into(),
            });
        }
        rows.push(row);
    }
    ErasurePattern::from_rows(&rows)
}

pub fn format_mask(pattern: &ErasurePattern) -> String {
    let mut out = String::new();
    for row in pattern.as_rows() {
        let cells: Vec<&str> = row.iter().map(|&e| if e { "1" } else { "0" }).collect();
        out.push_str(&cells.join(", "));
        out.push('\n');
    }
    out
}

/// Parses a whitespace/comma separated token stream in reading order, with
/// `E` allowed. Used for data files that are not laid out as full arrays.
pub fn parse_token_stream(field: &FieldSpec, text: &str) -> Result<Vec<Option<FieldElement>>> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        for (column, tok) in tokens(l) {
            for (offset, word) in split_ws(tok) {
                if word.eq_ignore_ascii_case("e") {
                    out.push(None);
                    continue;
                }
                let v = parse_element(field, word).map_err(|message| Error::Parse {
                    line,
                    column: column + offset,
                    message,
                })?;
                out.push(Some(v));
            }
        }
    }
    Ok(out)
}

fn split_ws(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

/// Aligned matrix dump. Column blocks of width `block` are separated by
/// `" | "`; a dashed line is drawn before each row index in `breaks`.
pub fn format_matrix(
    field: &FieldSpec,
    h: &Matrix,
    notation: Notation,
    block: usize,
    breaks: &[usize],
) -> String {
    let cells: Vec<Vec<String>> = (0..h.rows())
        .map(|r| {
            h.row(r)
                .iter()
                .map(|&e| format_element(field, e, notation))
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut lines: Vec<String> = Vec::new();
    for (r, row) in cells.iter().enumerate() {
        let mut line = String::new();
        for (c, tok) in row.iter().enumerate() {
            if c > 0 {
                line.push_str(if block > 0 && c % block == 0 {
                    " | "
                } else {
                    " "
                });
            }
            line.push_str(&format!("{tok:>width$}"));
        }
        if breaks.contains(&r) && r > 0 {
            let rule: String = line
                .chars()
                .map(|ch| if ch == '|' { '+' } else { '-' })
                .collect();
            lines.push(rule);
        }
        lines.push(line);
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

/// Serialized code definition. Written with keys in the order
/// `n, b, poly, u`; `poly` is a hex string such as `"0xB"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeConfig {
    pub n: usize,
    pub b: u32,
    pub poly: String,
    pub u: Vec<usize>,
}

// Input form: `poly` may be omitted, and `levels: [[s, u], ..]` may stand in
// for `u`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: usize,
    b: u32,
    poly: Option<String>,
    u: Option<Vec<usize>>,
    levels: Option<Vec<(usize, usize)>>,
}

impl CodeConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let u = match (raw.u, raw.levels) {
            (Some(u), None) => u,
            (None, Some(levels)) => LevelProfile::from_levels(&levels, raw.n)?.u_vector(),
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either u or levels, not both".into()))
            }
            (None, None) => return Err(Error::Config("missing u".into())),
        };
        let poly = match raw.poly {
            Some(p) => format!("{:#X}", parse_hex(&p)?).replacen("0X", "0x", 1),
            None => {
                let p = default_poly(raw.b).ok_or(Error::UnsupportedWidth(raw.b))?;
                format!("{p:#X}").replacen("0X", "0x", 1)
            }
        };
        Ok(CodeConfig {
            n: raw.n,
            b: raw.b,
            poly,
            u,
        })
    }

    pub fn from_code(code: &GcCode) -> Self {
        CodeConfig {
            n: code.n(),
            b: code.field().bits(),
            poly: format!("{:#X}", code.field().poly()).replacen("0X", "0x", 1),
            u: code.profile().u_vector(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn build(&self) -> Result<GcCode> {
        let field = FieldSpec::new(self.b, parse_hex(&self.poly)?)?;
        GcCode::from_u(self.n, &self.u, field)
    }
}

fn parse_hex(s: &str) -> Result<u32> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| Error::Config(format!("poly {s:?} must be a hex string like \"0xB\"")))?;
    u32::from_str_radix(digits, 16).map_err(|_| Error::Config(format!("bad hex poly {s:?}")))
}
