//! Command-line front end for the braid toolkit: normalize words into combed
//! form, apply automorphism expressions, run the verification suites, and
//! echo parsed words in canonical spelling.
//!
//! Exit codes: `0` on success, `1` when a verification claim fails, `2` on
//! bad usage or unparseable input, `3` when a rewriting budget is exhausted.

use std::fmt;
use std::process::ExitCode;
use std::str::FromStr;

use braidforge_core::auto::{evaluate, free_two, parse_auto_expr, ComposeOrder, GroupKind, Image};
use braidforge_core::braid::{coset_band_factorisation, permutation_coset_word, BraidWord};
use braidforge_core::comb::{
    comb_with_budget, CentralWord, CombedPureBraid, PureWord, DEFAULT_BUDGET,
};
use braidforge_core::parse::parse_word;
use braidforge_core::stallings::DEFAULT_FIX_RADIUS;
use braidforge_core::suite::{
    run_suite, summarize, ClaimRecord, SuiteConfig, SuiteSelection, SuiteSummary, DEFAULT_SEED,
};
use braidforge_core::word::Alphabet;
use braidforge_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Braid-group normal forms, automorphism application, and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a word into its normal form for the chosen group
    Normalize(NormalizeArgs),
    /// Apply an automorphism expression to a word and print the image
    Apply(ApplyArgs),
    /// Run a verification suite and report every claim
    Verify(VerifyArgs),
    /// Parse a word and print its canonical reduced spelling
    Parse(ParseArgs),
}

/// Which group a word lives in.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    /// Braid group on n strands, generators s1 .. s(n-1)
    #[value(name = "B", alias = "b")]
    Braid,
    /// Pure braid group on n strands, generators A(i,j) plus the center letter z
    #[value(name = "P", alias = "p")]
    Pure,
    /// Free group of rank two, letters x and y
    #[value(name = "F2", alias = "f2")]
    FreeTwo,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Human-readable lines
    Text,
    /// Machine-readable JSON with a stable field layout
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    /// Claims transcribed from the source catalog
    Paper,
    /// Structural properties and randomized cross-checks
    Props,
    /// Both families
    All,
}

impl SuiteArg {
    fn selection(self) -> SuiteSelection {
        match self {
            SuiteArg::Paper => SuiteSelection::Paper,
            SuiteArg::Props => SuiteSelection::Props,
            SuiteArg::All => SuiteSelection::All,
        }
    }
}

/// Strand counts for `verify`: a single value like `4` or an inclusive range
/// like `2..6`.
#[derive(Clone, Copy, Debug)]
struct StrandRange {
    lo: u16,
    hi: u16,
}

impl FromStr for StrandRange {
    type Err = String;

    fn from_str(s: &str) -> Result<StrandRange, String> {
        let parse_end = |t: &str| {
            t.trim()
                .parse::<u16>()
                .map_err(|_| format!("invalid strand count `{}`", t.trim()))
        };
        let (lo, hi) = match s.split_once("..") {
            None => {
                let v = parse_end(s)?;
                (v, v)
            }
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (parse_end(a)?, parse_end(b)?)
            }
        };
        if lo == 0 {
            return Err("strand counts start at 1".into());
        }
        if hi < lo {
            return Err(format!("empty strand range {lo}..{hi}"));
        }
        Ok(StrandRange { lo, hi })
    }
}

#[derive(Args)]
struct NormalizeArgs {
    /// Number of strands (required for groups B and P)
    #[arg(long)]
    n: Option<u16>,
    /// Which group the word lives in
    #[arg(long, value_enum, default_value_t = GroupArg::Pure)]
    group: GroupArg,
    /// Syllable budget for the rewriting engine
    #[arg(long, env = "BRAIDFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// The word to normalize
    word: String,
}

#[derive(Args)]
struct ApplyArgs {
    /// Number of strands (required for groups B and P)
    #[arg(long)]
    n: Option<u16>,
    /// Which group the word lives in
    #[arg(long, value_enum, default_value_t = GroupArg::Pure)]
    group: GroupArg,
    /// Automorphism expression, e.g. "t ; eps" or "phi^-1 ; conj(A(1,2))"
    #[arg(long)]
    auto: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// The word to map
    word: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which claim families to run
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Strand counts to cover: a single value like `4` or an inclusive range like `2..6`
    #[arg(long, default_value = "2..6")]
    n: StrandRange,
    /// Ball radius for the fixed-subgroup enumerations
    #[arg(long, default_value_t = DEFAULT_FIX_RADIUS)]
    radius: usize,
    /// Syllable budget for combing-based checks
    #[arg(long, env = "BRAIDFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct ParseArgs {
    /// Number of strands (required for groups B and P)
    #[arg(long)]
    n: Option<u16>,
    /// Which group the word lives in
    #[arg(long, value_enum, default_value_t = GroupArg::Pure)]
    group: GroupArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// The word to parse
    word: String,
}

/// Anything that aborts a subcommand, tagged with the exit code it owes.
enum Failure {
    /// Bad flags or malformed input text.
    Usage(String),
    /// An error surfaced by the algebra engine.
    Core(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        Failure::Core(err)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Core(err) => err.fmt(f),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(Error::BudgetExceeded { .. }) => 3,
            Failure::Core(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Normalize(args) => run_normalize(&args).map(|()| ExitCode::SUCCESS),
        Command::Apply(args) => run_apply(&args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => run_verify(&args),
        Command::Parse(args) => run_parse(&args).map(|()| ExitCode::SUCCESS),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn require_n(n: Option<u16>, group: &str) -> Result<u16, Failure> {
    n.ok_or_else(|| Failure::Usage(format!("--n is required for --group {group}")))
}

/// The columns of a combed braid, top column first, for JSON output.
#[derive(Serialize)]
struct ColumnOut {
    column: u16,
    word: String,
}

fn columns(combed: &CombedPureBraid) -> Vec<ColumnOut> {
    combed
        .components()
        .iter()
        .enumerate()
        .map(|(idx, w)| ColumnOut {
            column: combed.strands() - idx as u16,
            word: w.to_string(),
        })
        .collect()
}

fn print_json<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("JSON encoding cannot fail");
    println!("{text}");
}

#[derive(Serialize)]
struct NormalizePureOut {
    group: &'static str,
    n: u16,
    input: String,
    components: Vec<ColumnOut>,
}

#[derive(Serialize)]
struct NormalizeBraidOut {
    group: &'static str,
    n: u16,
    input: String,
    permutation: Vec<u16>,
    coset: String,
    components: Vec<ColumnOut>,
}

#[derive(Serialize)]
struct WordOut {
    group: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u16>,
    word: String,
}

fn run_normalize(args: &NormalizeArgs) -> Result<(), Failure> {
    match args.group {
        GroupArg::FreeTwo => {
            let word = parse_word(&args.word, &free_two()).map_err(Failure::Core)?;
            match args.format {
                FormatArg::Text => println!("{word}"),
                FormatArg::Json => print_json(&WordOut {
                    group: "F2",
                    n: None,
                    word: word.to_string(),
                }),
            }
        }
        GroupArg::Pure => {
            let n = require_n(args.n, "P")?;
            let element = CentralWord::parse(n, &args.word)?;
            let combed = comb_with_budget(&element.expand(), args.budget)?;
            match args.format {
                FormatArg::Text => println!("{combed}"),
                FormatArg::Json => print_json(&NormalizePureOut {
                    group: "P",
                    n,
                    input: args.word.clone(),
                    components: columns(&combed),
                }),
            }
        }
        GroupArg::Braid => {
            let n = require_n(args.n, "B")?;
            let word = parse_word(&args.word, &Alphabet::braid(n))?;
            let braid = BraidWord::new(n, word)?;
            let (perm, bands) = coset_band_factorisation(&braid)?;
            let combed = comb_with_budget(&PureWord::new(n, bands)?, args.budget)?;
            let coset = permutation_coset_word(&perm);
            match args.format {
                FormatArg::Text => {
                    println!("permutation: {perm}");
                    println!("coset: {coset}");
                    println!("pure: {combed}");
                }
                FormatArg::Json => print_json(&NormalizeBraidOut {
                    group: "B",
                    n,
                    input: args.word.clone(),
                    permutation: (1..=n).map(|p| perm.apply(p)).collect(),
                    coset: coset.to_string(),
                    components: columns(&combed),
                }),
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ApplyOut {
    group: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u16>,
    auto: String,
    input: String,
    image: String,
}

fn run_apply(args: &ApplyArgs) -> Result<(), Failure> {
    let expr = parse_auto_expr(&args.auto)?;
    let (group_kind, group_name, n) = match args.group {
        GroupArg::Braid => (GroupKind::Braid, "B", require_n(args.n, "B")?),
        GroupArg::Pure => (GroupKind::Pure, "P", require_n(args.n, "P")?),
        GroupArg::FreeTwo => (GroupKind::FreeRank2, "F2", args.n.unwrap_or(2)),
    };
    let pair = evaluate(&expr, n, group_kind, ComposeOrder::LeftToRight)?;
    let image = match args.group {
        GroupArg::Pure => {
            let element = CentralWord::parse(n, &args.word)?;
            let start = Image::twisted(element.band_part().clone(), element.twist());
            pair.fwd.apply_image(&start)?
        }
        GroupArg::Braid => {
            let word = parse_word(&args.word, &Alphabet::braid(n))?;
            pair.fwd.apply_word(&word)?
        }
        GroupArg::FreeTwo => {
            let word = parse_word(&args.word, &free_two())?;
            pair.fwd.apply_word(&word)?
        }
    };
    match args.format {
        FormatArg::Text => println!("{image}"),
        FormatArg::Json => print_json(&ApplyOut {
            group: group_name,
            n: (args.group != GroupArg::FreeTwo).then_some(n),
            auto: args.auto.clone(),
            input: args.word.clone(),
            image: image.to_string(),
        }),
    }
    Ok(())
}

fn run_parse(args: &ParseArgs) -> Result<(), Failure> {
    let (group_name, n_out, canonical) = match args.group {
        GroupArg::FreeTwo => {
            let word = parse_word(&args.word, &free_two())?;
            ("F2", None, word.to_string())
        }
        GroupArg::Pure => {
            let n = require_n(args.n, "P")?;
            let element = CentralWord::parse(n, &args.word)?;
            ("P", Some(n), element.to_string())
        }
        GroupArg::Braid => {
            let n = require_n(args.n, "B")?;
            let word = parse_word(&args.word, &Alphabet::braid(n))?;
            let braid = BraidWord::new(n, word)?;
            ("B", Some(n), braid.to_string())
        }
    };
    match args.format {
        FormatArg::Text => println!("{canonical}"),
        FormatArg::Json => print_json(&WordOut {
            group: group_name,
            n: n_out,
            word: canonical,
        }),
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    claims: &'a [ClaimRecord],
    summary: &'a SuiteSummary,
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let cfg = SuiteConfig {
        min_strands: args.n.lo,
        max_strands: args.n.hi,
        radius: args.radius,
        budget: args.budget,
        seed: DEFAULT_SEED,
    };
    let records = run_suite(args.suite.selection(), &cfg);
    let summary = summarize(&records);
    match args.format {
        FormatArg::Text => {
            for r in &records {
                let witness = r.witness.as_deref().unwrap_or("");
                let line = format!(
                    "{:<7} {:<46} n={:<2} {:>6}ms  {}",
                    r.status.to_string(),
                    r.claim_id,
                    r.n,
                    r.elapsed_ms,
                    witness
                );
                println!("{}", line.trim_end());
            }
            println!(
                "summary: {} passed, {} failed, {} skipped",
                summary.pass, summary.fail, summary.skipped
            );
        }
        FormatArg::Json => print_json(&VerifyOut {
            claims: &records,
            summary: &summary,
        }),
    }
    Ok(if summary.fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
