//! The `gc-erasure` command line.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 uncorrectable,
//! 3 enumeration budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::{ErasurePattern, GcCode};
use crate::codec::{decode, default_parity_placement, encode, ArrayWord};
use crate::error::Error;
use crate::format::{
    format_matrix, format_word, parse_array, parse_mask, parse_token_stream, parse_word,
    CodeConfig, Notation,
};
use crate::galois::FieldElement;
use crate::oracle::{
    exhaustive_capability, min_distance_search, DecoderOutcome, DistanceResult, DEFAULT_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNCORRECTABLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gc-erasure",
    version,
    about = "Multi-level GC erasure codes over GF(2^b) arrays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the parity-check matrix.
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Encode data symbols into a codeword array.
    Encode {
        #[command(flatten)]
        common: Common,
        /// Data symbols: k tokens in reading order, or a full array with E
        /// marking the parity cells.
        #[arg(long = "in")]
        input: PathBuf,
        /// 0/1 mask of parity cells (default: trailing cells, largest
        /// budgets on top).
        #[arg(long)]
        placement: Option<PathBuf>,
    },
    /// Recover the erased cells of a received array.
    Decode {
        #[command(flatten)]
        common: Common,
        /// Received array; E marks erased cells.
        #[arg(long = "in")]
        input: PathBuf,
        /// 0/1 erasure mask, alternative or addition to inline E tokens.
        #[arg(long)]
        erasures: Option<PathBuf>,
        /// Skip the final parity check of the decoded array.
        #[arg(long)]
        no_verify: bool,
    },
    /// Report whether an erasure pattern is within the row budgets.
    Check {
        #[command(flatten)]
        common: Common,
        /// 0/1 erasure mask.
        #[arg(long)]
        erasures: Option<PathBuf>,
        /// Array file whose E tokens give the pattern.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Minimum distance from the closed form, optionally by search.
    Mindist {
        #[command(flatten)]
        common: Common,
        /// Also search for the smallest dependent column set of H.
        #[arg(long)]
        brute_force: bool,
    },
    /// Classify every erasure pattern up to weight r.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Maximum number of patterns to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Seed for the random codewords.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// JSON code config {n, b, poly, u}.
    #[arg(long)]
    config: PathBuf,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Symbol notation for output.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Power,
    Int,
}

#[derive(Debug)]
enum Failure {
    Code(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Code(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Code(Error::Uncorrectable(_)) => EXIT_UNCORRECTABLE,
            Failure::Code(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Code(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(common: &Common) -> std::result::Result<(GcCode, Notation), Failure> {
    let code = CodeConfig::from_json(&read(&common.config)?)?.build()?;
    let notation = match common.format {
        Some(FormatArg::Power) => Notation::Power,
        Some(FormatArg::Int) => Notation::Int,
        None => Notation::default_for(code.field()),
    };
    Ok((code, notation))
}

/// Runs the CLI with `args` (including the program name), writing results
/// to `stdout` (or `--out`) and diagnostics to `stderr`. Returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Build { common }
        | Command::Encode { common, .. }
        | Command::Decode { common, .. }
        | Command::Check { common, .. }
        | Command::Mindist { common, .. }
        | Command::Sweep { common, .. } => common.out.clone(),
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let written = match out_path {
                Some(p) => std::fs::write(&p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Build { common } => cmd_build(&common),
        Command::Encode {
            common,
            input,
            placement,
        } => cmd_encode(&common, &input, placement.as_deref()),
        Command::Decode {
            common,
            input,
            erasures,
            no_verify,
        } => cmd_decode(&common, &input, erasures.as_deref(), !no_verify),
        Command::Check {
            common,
            erasures,
            input,
        } => cmd_check(&common, erasures.as_deref(), input.as_deref()),
        Command::Mindist {
            common,
            brute_force,
        } => cmd_mindist(&common, brute_force),
        Command::Sweep {
            common,
            budget,
            seed,
        } => cmd_sweep(&common, budget, seed),
    }
}

fn cmd_build(common: &Common) -> Outcome {
    let (code, notation) = load(common)?;
    let profile = code.profile();
    let u0 = profile.levels()[0].budget;
    // Separators before the local block ends and before each level band.
    let mut breaks = vec![code.m() * u0];
    let mut row = code.m() * u0;
    for i in (1..profile.t()).rev() {
        row += profile.levels()[i].rows * (profile.levels()[i].budget - u0);
        breaks.push(row);
    }
    let h = code.h();
    let mut text = format!(
        "# parity-check matrix n={} u={} b={} poly={:#X}: {} x {}\n",
        code.n(),
        profile,
        code.field().bits(),
        code.field().poly(),
        h.rows(),
        h.cols()
    )
    .replacen("0X", "0x", 1);
    text.push_str(&format_matrix(code.field(), h, notation, code.n(), &breaks));
    Ok((text, EXIT_OK))
}

fn cmd_encode(common: &Common, input: &Path, placement: Option<&Path>) -> Outcome {
    let (code, notation) = load(common)?;
    let text = read(input)?;
    let explicit = placement
        .map(|p| read(p).and_then(|t| Ok(parse_mask(&t)?)))
        .transpose()?;

    // A full m x n array with E cells carries its own placement.
    let as_array = parse_array(code.field(), &text)
        .ok()
        .filter(|rows| rows.len() == code.m() && rows.iter().all(|r| r.len() == code.n()))
        .filter(|rows| rows.iter().flatten().any(Option::is_none));
    let (data, placement) = match as_array {
        Some(rows) => {
            let mask: Vec<Vec<bool>> = rows
                .iter()
                .map(|r| r.iter().map(Option::is_none).collect())
                .collect();
            let inline = ErasurePattern::from_rows(&mask)?;
            if let Some(p) = &explicit {
                if *p != inline {
                    return Err(Error::InvalidPlacement(
                        "placement file disagrees with E cells".into(),
                    )
                    .into());
                }
            }
            let data: Vec<FieldElement> = rows.into_iter().flatten().flatten().collect();
            (data, inline)
        }
        None => {
            let tokens = parse_token_stream(code.field(), &text)?;
            if tokens.iter().any(Option::is_none) {
                return Err(Error::BadDimensions(
                    "E tokens are only allowed in a full m x n data array".into(),
                )
                .into());
            }
            let data = tokens.into_iter().flatten().collect();
            (
                data,
                explicit.unwrap_or_else(|| default_parity_placement(&code)),
            )
        }
    };
    let c = encode(&code, &data, &placement)?;
    Ok((format_word(code.field(), &c, notation), EXIT_OK))
}

fn received(
    code: &GcCode,
    input: &Path,
    erasures: Option<&Path>,
) -> std::result::Result<ArrayWord, Failure> {
    let word = parse_word(code, &read(input)?)?;
    let Some(mask_path) = erasures else {
        return Ok(word);
    };
    let mask = parse_mask(&read(mask_path)?)?;
    if word.erasures().total() > 0 && *word.erasures() != mask {
        return Err(Error::ShapeMismatch {
            expected: "erasure mask matching the E cells".into(),
            found: "a different pattern".into(),
        }
        .into());
    }
    Ok(word.erase(&mask)?)
}

fn cmd_decode(common: &Common, input: &Path, erasures: Option<&Path>, verify: bool) -> Outcome {
    let (code, notation) = load(common)?;
    let word = received(&code, input, erasures)?;
    let out = decode(&code, &word, verify)?;
    Ok((format_word(code.field(), &out, notation), EXIT_OK))
}

fn cmd_check(common: &Common, erasures: Option<&Path>, input: Option<&Path>) -> Outcome {
    let (code, _) = load(common)?;
    let pattern = match (erasures, input) {
        (Some(m), None) => parse_mask(&read(m)?)?,
        (None, Some(i)) => parse_word(&code, &read(i)?)?.erasures().clone(),
        (Some(m), Some(i)) => received(&code, i, Some(m))?.erasures().clone(),
        (None, None) => return Err(Failure::Io("check needs --erasures or --in".into())),
    };
    let ok = code.correctable(&pattern)?;
    let mut counts = pattern.row_counts();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    let text = format!(
        "{}\nsorted erasures per row: {:?}\nbudgets: {:?}\n",
        if ok { "correctable" } else { "uncorrectable" },
        counts,
        code.profile().budgets_descending()
    );
    Ok((text, if ok { EXIT_OK } else { EXIT_UNCORRECTABLE }))
}

fn cmd_mindist(common: &Common, brute_force: bool) -> Outcome {
    let (code, _) = load(common)?;
    let formula = code.min_distance_formula();
    let mut text = format!("formula: {formula}\n");
    if brute_force {
        match min_distance_search(&code, formula) {
            DistanceResult::Found { distance, witness } => {
                text.push_str(&format!("brute-force: {distance}\n"));
                text.push_str(&format!("witness columns: {witness:?}\n"));
                text.push_str(&format!(
                    "agree: {}\n",
                    if distance == formula { "yes" } else { "no" }
                ));
            }
            DistanceResult::AboveCap { cap } => {
                text.push_str(&format!("brute-force: >{cap}\nagree: no\n"));
            }
        }
    }
    Ok((text, EXIT_OK))
}

fn cmd_sweep(common: &Common, budget: u128, seed: u64) -> Outcome {
    let (code, _) = load(common)?;
    let table = exhaustive_capability(&code, budget, seed)?;
    let mut text = format!("patterns: {}\n", table.patterns);
    text.push_str("rule oracle decoder count\n");
    for ((t, o, d), count) in &table.classes {
        let d = match d {
            DecoderOutcome::Correct => "correct",
            DecoderOutcome::Wrong => "wrong",
            DecoderOutcome::Rejected => "rejected",
        };
        let yn = |b: &bool| if *b { "yes" } else { "no" };
        text.push_str(&format!("{} {} {} {}\n", yn(t), yn(o), d, count));
    }
    text.push_str(&format!(
        "solvable beyond the row budgets: {}\n",
        table.oracle_only()
    ));
    if let Some(p) = &table.beyond_rule_example {
        text.push_str(&format!("example beyond the row budgets: cells {p:?}\n"));
    }
    text.push_str(&format!(
        "counterexamples: {}\n",
        table.counterexamples.len()
    ));
    for cx in table.counterexamples.iter().take(10) {
        text.push_str(&format!("  cells {:?}: {:?}\n", cx.cells, cx));
    }
    Ok((text, EXIT_OK))
}
