//! The `rct` command line.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 a property or
//! cross-check violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coding::{
    adapted_code, block_code_rate, canonical_codebook, mix_codes, mixture_gain_from_divergence,
    shannon_integer_code, LengthFunction,
};
use crate::dist::{Distribution, JointDistribution, Order};
use crate::harness::Suite;
use crate::measures::{
    kl_divergence, mutual_information, renyi_divergence, renyi_entropy, renyi_mutual_information,
    shannon_entropy, tsallis_entropy, Base, Bits,
};

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Cross-check tolerance for `mix`.
pub const MIX_CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "rct",
    version,
    about = "Idealized codes, Kraft's inequality and Rényi information measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropies of a distribution, and divergences against another.
    Measure {
        /// Distribution file, or `-` for standard input.
        input: PathBuf,
        /// Order q >= 0.
        #[arg(long, default_value = "1")]
        q: String,
        #[arg(long, default_value = "2")]
        base: Base,
        /// Distribution file to compare against, or `uniform`.
        #[arg(long)]
        against: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Code lengths, and canonical codewords, for a distribution.
    Codebook {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "canonical")]
        mode: CodebookMode,
    },
    /// Mix the codes adapted to two distributions and compress the mixture.
    Mix {
        p1: PathBuf,
        p2: PathBuf,
        /// Weight on the second code, in [0, 1].
        #[arg(long)]
        q: String,
    },
    /// Run verification suites and emit one JSON report per suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "RCT_SEED", default_value_t = 42)]
        seed: u64,
        /// Overrides each suite's default trial count.
        #[arg(long)]
        trials: Option<usize>,
        /// Overrides each suite's default tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Directory receiving `<suite>.json` files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-letter rates of Shannon's integer code on blocks of 1..=n letters.
    Block {
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Empirical symbol distribution of a file, as a distribution file.
    Estimate {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "bytes")]
        symbols: SymbolSet,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodebookMode {
    Idealized,
    Integer,
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymbolSet {
    Bytes,
    Letters,
    Vowels,
}

/// Everything a command writes, plus its exit code.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Outcome::default()
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            stderr: format!("error: {message}\n"),
            code: EXIT_INPUT,
            ..Outcome::default()
        }
    }
}

/// A parsed distribution file.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Single(Distribution),
    Joint(JointDistribution),
}

impl Input {
    pub fn into_single(self) -> Result<Distribution, String> {
        match self {
            Input::Single(d) => Ok(d),
            Input::Joint(_) => Err("expected a single distribution, found a joint one".into()),
        }
    }

    /// The distribution itself, or the flattened joint law.
    pub fn distribution(&self) -> Distribution {
        match self {
            Input::Single(d) => d.clone(),
            Input::Joint(j) => j.flatten(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DistributionJson {
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u64>>,
}

#[derive(Debug, Deserialize)]
struct JointJson {
    rows: Vec<String>,
    cols: Vec<String>,
    matrix: Vec<Vec<f64>>,
}

/// Parses a JSON (`{"labels", "probs"}` or `{"rows", "cols", "matrix"}`) or
/// CSV (`label,prob` per line) distribution file.
pub fn parse_distribution(text: &str) -> Result<Input, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(trimmed).map_err(|e| format!("JSON: {e}"))?;
        if value.get("matrix").is_some() {
            let j: JointJson =
                serde_json::from_value(value).map_err(|e| format!("joint JSON: {e}"))?;
            return JointDistribution::new(j.rows, j.cols, j.matrix)
                .map(Input::Joint)
                .map_err(|e| format!("field \"matrix\": {e}"));
        }
        let d: DistributionJson =
            serde_json::from_value(value).map_err(|e| format!("distribution JSON: {e}"))?;
        return Distribution::new(d.labels, d.probs, false)
            .map(Input::Single)
            .map_err(|e| format!("field \"probs\": {e}"));
    }

    let mut labels = Vec::new();
    let mut probs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == "label,prob" {
            continue;
        }
        let (label, prob) = line
            .rsplit_once(',')
            .ok_or_else(|| format!("line {}: expected \"label,prob\"", n + 1))?;
        let prob: f64 = prob
            .trim()
            .parse()
            .map_err(|_| format!("line {}: invalid probability {:?}", n + 1, prob.trim()))?;
        labels.push(label.trim().to_string());
        probs.push(prob);
    }
    Distribution::new(labels, probs, false)
        .map(Input::Single)
        .map_err(|e| e.to_string())
}

fn read_input(path: &Path) -> Result<Vec<u8>, String> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn load(path: &Path) -> Result<Input, String> {
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    parse_distribution(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_order(raw: &str) -> Result<Order, String> {
    let q: f64 = raw
        .trim()
        .parse()
        .map_err(|_| format!("invalid order {raw:?}"))?;
    Order::new(q).map_err(|e| e.to_string())
}

fn json_number(bits: Bits) -> Value {
    if bits.is_infinite() {
        Value::String("inf".into())
    } else {
        Value::from(bits.value())
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Measure {
            input,
            q,
            base,
            against,
            json,
        } => cmd_measure(&input, &q, base, against.as_deref(), json),
        Command::Codebook { input, mode } => cmd_codebook(&input, mode),
        Command::Mix { p1, p2, q } => cmd_mix(&p1, &p2, &q),
        Command::Verify {
            suite,
            seed,
            trials,
            tol,
            out,
        } => cmd_verify(&suite, seed, trials, tol, out.as_deref()),
        Command::Block { input, n } => cmd_block(&input, n),
        Command::Estimate { input, symbols } => cmd_estimate(&input, symbols),
    }
}

pub fn cmd_measure(
    input: &Path,
    q: &str,
    base: Base,
    against: Option<&str>,
    json: bool,
) -> Outcome {
    let order = match parse_order(q) {
        Ok(o) => o,
        Err(e) => return Outcome::input_error(e),
    };
    let parsed = match load(input) {
        Ok(i) => i,
        Err(e) => return Outcome::input_error(e),
    };
    let p = parsed.distribution();
    let other = match against {
        None => None,
        Some("uniform") => Some(p.uniform_like()),
        Some(path) => match load(Path::new(path)).map(|i| i.distribution()) {
            Ok(d) if d.same_alphabet(&p) => Some(d),
            Ok(_) => {
                return Outcome::input_error("--against distribution has a different alphabet")
            }
            Err(e) => return Outcome::input_error(e),
        },
    };

    let mut rows: Vec<(&str, Value, String)> = Vec::new();
    let unit = base.unit();
    let mut push = |key: &'static str, label: String, bits: Bits| {
        let bits = bits.to_base(base);
        rows.push((key, json_number(bits), format!("{label:<14}{bits}")));
    };
    push("entropy", "H".into(), shannon_entropy(&p));
    push(
        "renyi_entropy",
        format!("H_{}", order.value()),
        renyi_entropy(&p, order),
    );
    if let Some(ref other) = other {
        let d = renyi_divergence(&p, other, order).expect("alphabets checked");
        push("renyi_divergence", format!("D_{}", order.value()), d);
        push(
            "kl_divergence",
            "D".into(),
            kl_divergence(&p, other).expect("alphabets checked"),
        );
    }
    if let Input::Joint(ref j) = parsed {
        push("mutual_information", "I".into(), mutual_information(j));
        push(
            "renyi_mutual_information",
            format!("I_{}", order.value()),
            renyi_mutual_information(j, order),
        );
    }
    let tsallis = tsallis_entropy(&p, order);

    if json {
        let mut map = serde_json::Map::new();
        map.insert("base".into(), Value::String(base.to_string()));
        map.insert("q".into(), Value::from(order.value()));
        map.insert("unit".into(), Value::String(unit.into()));
        for (key, value, _) in &rows {
            map.insert((*key).into(), value.clone());
        }
        map.insert("tsallis_entropy_nats".into(), Value::from(tsallis));
        let mut out = serde_json::to_string(&Value::Object(map)).expect("finite values");
        out.push('\n');
        return Outcome::ok(out);
    }
    let mut out = String::new();
    let _ = writeln!(out, "{:<14}{}", "symbols", p.len());
    let _ = writeln!(out, "{:<14}{}", "support", p.support_size());
    for (_, _, line) in &rows {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "{:<14}{tsallis} nats", format!("S_{}", order.value()));
    Outcome::ok(out)
}

pub fn cmd_codebook(input: &Path, mode: CodebookMode) -> Outcome {
    let p = match load(input).and_then(Input::into_single) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    let lengths = match mode {
        CodebookMode::Idealized => adapted_code(&p),
        CodebookMode::Integer | CodebookMode::Canonical => shannon_integer_code(&p),
    };
    let lengths = match lengths {
        Ok(l) => l,
        Err(e) => return Outcome::input_error(e),
    };
    match mode {
        CodebookMode::Idealized | CodebookMode::Integer => {
            let mut out = String::from("# label\tlength\n");
            for (label, l) in lengths.labels().iter().zip(lengths.lengths()) {
                let _ = writeln!(out, "{label}\t{l}");
            }
            Outcome::ok(out)
        }
        CodebookMode::Canonical => {
            let ints: Vec<u32> = lengths.lengths().iter().map(|&l| l as u32).collect();
            match canonical_codebook(&ints, lengths.labels().iter().cloned()) {
                Ok(book) => Outcome::ok(book.to_text()),
                Err(e) => Outcome::input_error(e),
            }
        }
    }
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_mix(p1: &Path, p2: &Path, q: &str) -> Outcome {
    let order = match parse_order(q) {
        Ok(o) if o.value() <= 1.0 => o,
        Ok(o) => return Outcome::input_error(format!("--q {} outside [0, 1]", o.value())),
        Err(e) => return Outcome::input_error(e),
    };
    let load_code = |path: &Path| -> Result<LengthFunction, String> {
        let d = load(path)?.into_single()?;
        adapted_code(&d).map_err(|e| format!("{}: {e}", path.display()))
    };
    let (k1, k2) = match (load_code(p1), load_code(p2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::input_error(e),
    };
    let mixed = match mix_codes(&k1, &k2, order) {
        Ok(m) => m,
        Err(e) => return Outcome::input_error(e),
    };
    let oracle = mixture_gain_from_divergence(&k1, &k2, order).expect("compact inputs");
    let diff = (mixed.gain - oracle).abs();

    let mut out = String::new();
    let _ = writeln!(out, "q                   {}", order.value());
    let _ = writeln!(out, "labels              {}", k1.labels().join(" "));
    let _ = writeln!(out, "code 1              {}", join(k1.lengths()));
    let _ = writeln!(out, "code 2              {}", join(k2.lengths()));
    let _ = writeln!(out, "mixture lengths     {}", join(mixed.mixture.lengths()));
    let _ = writeln!(out, "kraft before        {:.9}", mixed.mixture.kraft_sum());
    let _ = writeln!(out, "compressed lengths  {}", join(mixed.code.lengths()));
    let _ = writeln!(out, "kraft after         {:.9}", mixed.code.kraft_sum());
    let _ = writeln!(out, "gain                {} bits", mixed.gain);
    let _ = writeln!(out, "q*D_(1-q)(P1||P2)   {oracle} bits");
    let _ = writeln!(out, "cross-check diff    {diff:e}");
    if diff > MIX_CHECK_TOLERANCE {
        return Outcome {
            stdout: out,
            stderr: format!(
                "cross-check failed: |gain - q*D| = {diff:e} > {MIX_CHECK_TOLERANCE:e}\n"
            ),
            code: EXIT_VIOLATION,
        };
    }
    Outcome::ok(out)
}

pub fn cmd_verify(
    suite: &str,
    seed: u64,
    trials: Option<usize>,
    tol: Option<f64>,
    out_dir: Option<&Path>,
) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match suite.parse() {
            Ok(s) => vec![s],
            Err(e) => return Outcome::input_error(e),
        }
    };
    if let Some(dir) = out_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return Outcome::input_error(format!("{}: {e}", dir.display()));
        }
    }
    let mut outcome = Outcome::default();
    for s in suites {
        let n = trials.unwrap_or_else(|| s.default_trials());
        let report = match s.run(seed, n, tol.unwrap_or_else(|| s.default_tolerance())) {
            Ok(r) => r,
            Err(e) => return Outcome::input_error(format!("suite {}: {e}", s.name())),
        };
        let json = report.to_json();
        if let Some(dir) = out_dir {
            let path = dir.join(format!("{}.json", s.name()));
            if let Err(e) = std::fs::write(&path, format!("{json}\n")) {
                return Outcome::input_error(format!("{}: {e}", path.display()));
            }
        }
        let _ = writeln!(outcome.stdout, "{json}");
        let _ = writeln!(
            outcome.stderr,
            "{} {:<11} trials={} violations={} worst_slack={:e} tol={:e}",
            if report.passed { "PASS" } else { "FAIL" },
            s.name(),
            report.trials,
            report.violations.len(),
            report.worst_slack,
            report.tolerance,
        );
        if !report.passed {
            outcome.code = EXIT_VIOLATION;
        }
    }
    outcome
}

pub fn cmd_block(input: &Path, n: usize) -> Outcome {
    let p = match load(input).and_then(Input::into_single) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    if n == 0 {
        return Outcome::input_error("--n must be positive");
    }
    let h = shannon_entropy(&p).value();
    let mut rates = Vec::with_capacity(n);
    for k in 1..=n {
        match block_code_rate(&p, k) {
            Ok(r) => rates.push(r),
            Err(e) => return Outcome::input_error(format!("block length {k}: {e}")),
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "H(P) = {h} bits");
    let _ = writeln!(out, "n\trate\tgap\tbound");
    let mut violated = Vec::new();
    for (i, rate) in rates.iter().enumerate() {
        let k = i + 1;
        let gap = rate - h;
        let bound = 1.0 / k as f64;
        let _ = writeln!(out, "{k}\t{rate}\t{gap}\t{bound}");
        if !(gap >= 0.0 && gap <= bound) {
            violated.push(k);
        }
    }
    if violated.is_empty() {
        Outcome::ok(out)
    } else {
        Outcome {
            stdout: out,
            stderr: format!("gap outside [0, 1/n] for n in {violated:?}\n"),
            code: EXIT_VIOLATION,
        }
    }
}

const VOWELS: [char; 6] = ['a', 'e', 'i', 'o', 'u', 'y'];

/// Symbol counts of `bytes` under the chosen symbol set, in alphabet order.
pub fn count_symbols(bytes: &[u8], symbols: SymbolSet) -> Vec<(String, u64)> {
    match symbols {
        SymbolSet::Bytes => {
            let mut counts = [0u64; 256];
            for &b in bytes {
                counts[b as usize] += 1;
            }
            (0..256)
                .filter(|&b| counts[b] > 0)
                .map(|b| (format!("0x{b:02x}"), counts[b]))
                .collect()
        }
        SymbolSet::Letters | SymbolSet::Vowels => {
            let text = String::from_utf8_lossy(bytes);
            let mut counts: BTreeMap<char, u64> = BTreeMap::new();
            for c in text.chars().filter(char::is_ascii_alphabetic) {
                let c = c.to_ascii_lowercase();
                if symbols == SymbolSet::Letters || VOWELS.contains(&c) {
                    *counts.entry(c).or_default() += 1;
                }
            }
            let order: Vec<char> = match symbols {
                SymbolSet::Vowels => VOWELS.to_vec(),
                _ => ('a'..='z').collect(),
            };
            order
                .into_iter()
                .filter_map(|c| counts.get(&c).map(|&n| (c.to_string(), n)))
                .collect()
        }
    }
}

pub fn cmd_estimate(input: &Path, symbols: SymbolSet) -> Outcome {
    let bytes = match read_input(input) {
        Ok(b) => b,
        Err(e) => return Outcome::input_error(e),
    };
    let counts = count_symbols(&bytes, symbols);
    let total: u64 = counts.iter().map(|(_, n)| n).sum();
    if total == 0 {
        return Outcome::input_error("input contains no symbols of the chosen set");
    }
    let file = DistributionJson {
        labels: counts.iter().map(|(l, _)| l.clone()).collect(),
        probs: counts
            .iter()
            .map(|&(_, n)| n as f64 / total as f64)
            .collect(),
        counts: Some(counts.iter().map(|&(_, n)| n).collect()),
    };
    let mut out = serde_json::to_string(&file).expect("finite probabilities");
    out.push('\n');
    Outcome::ok(out)
}
