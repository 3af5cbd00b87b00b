//! Command-line front end.

use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::dynamic_lis::ThresholdStructure;
use crate::ltss::{self, LtssResult, LtssStats};
use crate::oracle;
use crate::string_compare::Comparator;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Largest `|P| * |S|` table `--verify` builds for `lcss`.
const VERIFY_LCS_CELLS: usize = 25_000_000;
/// Longest number list `--verify` checks for `lis`.
const VERIFY_LIS_LEN: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "tandem",
    version,
    about = "Longest tandem subsequence, LCS and LIS via a dynamic LIS structure"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub mode: Mode,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Print only the length as a decimal integer.
    #[arg(long, global = true)]
    pub length_only: bool,

    /// Cross-check against the brute-force oracle (small inputs only).
    #[arg(long, global = true)]
    pub verify: bool,

    /// Report operation counters.
    #[arg(long, global = true)]
    pub stats: bool,

    /// Also print up to N witnesses.
    #[arg(long, value_name = "N", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub enumerate: Option<u64>,

    /// Read the input as FASTA even without a leading '>' line.
    #[arg(long, global = true)]
    pub fasta: bool,
}

#[derive(Debug, Subcommand)]
pub enum Mode {
    /// Longest subsequence occurring twice without overlap.
    Ltss {
        /// Input file; standard input when omitted.
        path: Option<PathBuf>,
    },
    /// Longest common subsequence of two strings.
    Lcss { p: String, s: String },
    /// Longest strictly increasing subsequence of a number list.
    Lis { numbers: Vec<String> },
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read input: {0}")]
    Unreadable(#[from] io::Error),
    #[error("whitespace inside raw input at byte {0}")]
    InteriorWhitespace(usize),
    #[error("FASTA input has no sequence lines")]
    EmptyFasta,
    #[error("FASTA input holds more than one record")]
    MultipleRecords,
    #[error("not a non-negative integer: {0:?}")]
    BadNumber(String),
    #[error(transparent)]
    TooLarge(#[from] oracle::OracleError),
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Turns raw bytes into the analysed string.
///
/// Raw input loses its trailing line break and may not contain other
/// whitespace. FASTA input (a leading `>` line, or `fasta = true`) has its
/// sequence lines joined and uppercased.
pub fn parse_input(bytes: &[u8], fasta: bool) -> Result<Vec<u8>, InputError> {
    if fasta || bytes.first() == Some(&b'>') {
        return parse_fasta(bytes);
    }
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &bytes[..end];
    if let Some(at) = body.iter().position(u8::is_ascii_whitespace) {
        return Err(InputError::InteriorWhitespace(at));
    }
    Ok(body.to_vec())
}

fn parse_fasta(bytes: &[u8]) -> Result<Vec<u8>, InputError> {
    let mut seq = Vec::new();
    let mut headers = 0;
    for line in bytes.split(|&b| b == b'\n') {
        if line.first() == Some(&b'>') {
            headers += 1;
            if headers > 1 {
                return Err(InputError::MultipleRecords);
            }
            continue;
        }
        seq.extend(
            line.iter()
                .filter(|b| !b.is_ascii_whitespace())
                .map(u8::to_ascii_uppercase),
        );
    }
    if seq.is_empty() {
        return Err(InputError::EmptyFasta);
    }
    Ok(seq)
}

fn read_source(
    config: &RunConfig,
    path: Option<&PathBuf>,
    stdin: &mut dyn Read,
) -> Result<Vec<u8>, InputError> {
    let bytes = match path {
        Some(path) => std::fs::read(path)?,
        None => {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf)?;
            buf
        }
    };
    parse_input(&bytes, config.fasta)
}

pub fn run(config: &RunConfig, stdin: &mut dyn Read) -> Outcome {
    let result = match &config.mode {
        Mode::Ltss { path } => {
            read_source(config, path.as_ref(), stdin).and_then(|f| run_ltss(config, &f))
        }
        Mode::Lcss { p, s } => run_lcss(config, p.as_bytes(), s.as_bytes()),
        Mode::Lis { numbers } => parse_numbers(numbers).and_then(|values| run_lis(config, &values)),
    };
    result.unwrap_or_else(|err| Outcome {
        status: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
    })
}

fn parse_numbers(numbers: &[String]) -> Result<Vec<usize>, InputError> {
    numbers
        .iter()
        .map(|n| n.parse().map_err(|_| InputError::BadNumber(n.clone())))
        .collect()
}

fn join(items: &[usize]) -> String {
    items
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[derive(Serialize)]
struct WitnessJson {
    witness: String,
    occ1: Vec<usize>,
    occ2: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StatsJson {
    matches: u64,
    lambda_max: usize,
    extract_mins: u64,
    transfers: Vec<u64>,
    tree_ops: u64,
    elapsed_micros: u128,
}

impl From<&LtssStats> for StatsJson {
    fn from(s: &LtssStats) -> Self {
        StatsJson {
            matches: s.matches,
            lambda_max: s.lambda_max,
            extract_mins: s.extract_mins,
            transfers: s.transfers.clone(),
            tree_ops: s.tree_ops,
            elapsed_micros: s.elapsed.as_micros(),
        }
    }
}

#[derive(Serialize)]
struct LtssJson {
    length: usize,
    split: usize,
    witness: String,
    occ1: Vec<usize>,
    occ2: Vec<usize>,
    stats: StatsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<WitnessJson>>,
}

fn witness_json(r: &LtssResult) -> WitnessJson {
    WitnessJson {
        witness: r.witness_str(),
        occ1: r.first_occurrence.clone(),
        occ2: r.second_occurrence.clone(),
    }
}

fn run_ltss(config: &RunConfig, f: &[u8]) -> Result<Outcome, InputError> {
    let (result, stats) = ltss::analyze(f);
    let mut out = Outcome::default();

    if config.verify {
        let (length, split) = oracle::naive_ltss(f)?;
        let valid = oracle::validate_tandem(f, &result);
        if (length, split) != (result.length, result.split) || !valid {
            out.status = EXIT_MISMATCH;
            out.stderr = format!(
                "verify mismatch: library length={} split={} witness_valid={valid}; oracle length={length} split={split}\n",
                result.length, result.split
            );
        }
    }

    if config.length_only {
        out.stdout = format!("{}\n", result.length);
        return Ok(out);
    }
    let witnesses = config
        .enumerate
        .map(|n| ltss::witnesses_at_split(f, result.split, n as usize));

    match config.format {
        Format::Json => {
            let report = LtssJson {
                length: result.length,
                split: result.split,
                witness: result.witness_str(),
                occ1: result.first_occurrence.clone(),
                occ2: result.second_occurrence.clone(),
                stats: StatsJson::from(&stats),
                witnesses: witnesses.map(|all| all.iter().map(witness_json).collect()),
            };
            out.stdout = serde_json::to_string(&report).expect("report serializes") + "\n";
        }
        Format::Text => {
            let s = &mut out.stdout;
            writeln!(s, "length={}", result.length).unwrap();
            writeln!(s, "split={}", result.split).unwrap();
            writeln!(s, "witness={}", result.witness_str()).unwrap();
            writeln!(s, "occ1={}", join(&result.first_occurrence)).unwrap();
            writeln!(s, "occ2={}", join(&result.second_occurrence)).unwrap();
            for (i, w) in witnesses.iter().flatten().enumerate() {
                writeln!(
                    s,
                    "witness[{}]={} occ1={} occ2={}",
                    i + 1,
                    w.witness_str(),
                    join(&w.first_occurrence),
                    join(&w.second_occurrence)
                )
                .unwrap();
            }
            if config.stats {
                writeln!(s, "matches={}", stats.matches).unwrap();
                writeln!(s, "lambda_max={}", stats.lambda_max).unwrap();
                writeln!(s, "extract_mins={}", stats.extract_mins).unwrap();
                let transfers: Vec<usize> = stats.transfers.iter().map(|&t| t as usize).collect();
                writeln!(s, "transfers={}", join(&transfers)).unwrap();
                writeln!(s, "tree_ops={}", stats.tree_ops).unwrap();
                writeln!(s, "elapsed_us={}", stats.elapsed.as_micros()).unwrap();
            }
        }
    }
    Ok(out)
}

fn run_lcss(config: &RunConfig, p: &[u8], s: &[u8]) -> Result<Outcome, InputError> {
    let mut comparator = Comparator::new(s);
    p.iter().for_each(|&b| comparator.append_to_p(b));
    let length = comparator.lcs_length();
    let limit = config.enumerate.map_or(1, |n| n as usize);
    let witnesses: Vec<Vec<(usize, usize)>> = match comparator.witnesses() {
        Ok(all) if length > 0 => all.take(limit).collect(),
        _ => vec![Vec::new()],
    };
    let mut out = Outcome::default();

    if config.verify {
        let cells = (p.len() + 1) * (s.len() + 1);
        if cells > VERIFY_LCS_CELLS {
            return Err(oracle::OracleError::TooLarge {
                size: cells,
                limit: VERIFY_LCS_CELLS,
            }
            .into());
        }
        let expected = oracle::dp_lcs(p, s).length();
        let valid = oracle::is_common_subsequence(p, s, &witnesses[0]);
        if expected != length || !valid {
            out.status = EXIT_MISMATCH;
            out.stderr = format!(
                "verify mismatch: library length={length} witness_valid={valid}; oracle length={expected}\n"
            );
        }
    }

    if config.length_only {
        out.stdout = format!("{length}\n");
        return Ok(out);
    }
    let spell = |pairs: &[(usize, usize)]| -> WitnessJson {
        WitnessJson {
            witness: text(&pairs.iter().map(|&(i, _)| p[i - 1]).collect::<Vec<_>>()),
            occ1: pairs.iter().map(|&(i, _)| i).collect(),
            occ2: pairs.iter().map(|&(_, j)| j).collect(),
        }
    };
    let spelled: Vec<WitnessJson> = witnesses.iter().map(|w| spell(w)).collect();
    match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct LcssJson<'a> {
                length: usize,
                #[serde(flatten)]
                best: &'a WitnessJson,
                #[serde(skip_serializing_if = "Option::is_none")]
                witnesses: Option<&'a [WitnessJson]>,
            }
            let report = LcssJson {
                length,
                best: &spelled[0],
                witnesses: config.enumerate.map(|_| spelled.as_slice()),
            };
            out.stdout = serde_json::to_string(&report).expect("report serializes") + "\n";
        }
        Format::Text => {
            let s = &mut out.stdout;
            writeln!(s, "length={length}").unwrap();
            writeln!(s, "witness={}", spelled[0].witness).unwrap();
            writeln!(s, "occ1={}", join(&spelled[0].occ1)).unwrap();
            writeln!(s, "occ2={}", join(&spelled[0].occ2)).unwrap();
            if config.enumerate.is_some() {
                for (i, w) in spelled.iter().enumerate() {
                    writeln!(
                        s,
                        "witness[{}]={} occ1={} occ2={}",
                        i + 1,
                        w.witness,
                        join(&w.occ1),
                        join(&w.occ2)
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn run_lis(config: &RunConfig, values: &[usize]) -> Result<Outcome, InputError> {
    let ts = ThresholdStructure::from_values(values.iter().copied());
    let length = ts.lis_length();
    let limit = config.enumerate.map_or(1, |n| n as usize);
    let sequences: Vec<Vec<(usize, usize)>> = match ts.all_lis() {
        Ok(all) => all.take(limit).collect(),
        Err(_) => vec![Vec::new()],
    };
    let mut out = Outcome::default();

    if config.verify {
        if values.len() > VERIFY_LIS_LEN {
            return Err(oracle::OracleError::TooLarge {
                size: values.len(),
                limit: VERIFY_LIS_LEN,
            }
            .into());
        }
        let expected = oracle::naive_lis(values);
        if expected != length {
            out.status = EXIT_MISMATCH;
            out.stderr =
                format!("verify mismatch: library length={length}; oracle length={expected}\n");
        }
    }

    if config.length_only {
        out.stdout = format!("{length}\n");
        return Ok(out);
    }

    #[derive(Serialize)]
    struct LisJson {
        values: Vec<usize>,
        positions: Vec<usize>,
    }
    let split = |seq: &[(usize, usize)]| LisJson {
        values: seq.iter().map(|&(v, _)| v).collect(),
        positions: seq.iter().map(|&(_, p)| p).collect(),
    };
    let all: Vec<LisJson> = sequences.iter().map(|s| split(s)).collect();
    match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                length: usize,
                #[serde(flatten)]
                best: &'a LisJson,
                #[serde(skip_serializing_if = "Option::is_none")]
                sequences: Option<&'a [LisJson]>,
            }
            let report = Report {
                length,
                best: &all[0],
                sequences: config.enumerate.map(|_| all.as_slice()),
            };
            out.stdout = serde_json::to_string(&report).expect("report serializes") + "\n";
        }
        Format::Text => {
            let s = &mut out.stdout;
            writeln!(s, "length={length}").unwrap();
            writeln!(s, "values={}", join(&all[0].values)).unwrap();
            writeln!(s, "positions={}", join(&all[0].positions)).unwrap();
            if config.enumerate.is_some() {
                for (i, seq) in all.iter().enumerate() {
                    writeln!(
                        s,
                        "lis[{}]={} positions={}",
                        i + 1,
                        join(&seq.values),
                        join(&seq.positions)
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(out)
}
