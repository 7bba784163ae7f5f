use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use clap::{Parser, ValueEnum};
use permgrowth::campaign::{run_campaign, Campaign, CampaignParams};
use permgrowth::sequences::SumSequence;
use permgrowth::{ClassSpec, Error};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Reproducible computations on sum closed permutation classes and their
/// growth rates.
#[derive(Debug, Parser)]
#[command(name = "permgrowth", version)]
struct Args {
    /// Campaign to run.
    #[arg(value_parser = PossibleValuesParser::new(Campaign::ALL.map(Campaign::name)))]
    campaign: String,
    /// Length bound (its meaning depends on the campaign).
    #[arg(long)]
    max_len: Option<usize>,
    /// Width of root isolating intervals.
    #[arg(long)]
    eps: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Basis file: one permutation per line, entries separated by spaces.
    #[arg(long)]
    basis: Option<PathBuf>,
    /// Sequence such as "1,1,2,3,(4)"; the parenthesized part repeats.
    #[arg(long, value_parser = parse_seq)]
    seq: Option<SumSequence>,
    /// Allow the longer exhaustive checks.
    #[arg(long)]
    slow: bool,
}

fn parse_seq(s: &str) -> Result<SumSequence, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const USAGE: u8 = 2;
const FAILED: u8 = 1;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("permgrowth: {msg}");
    ExitCode::from(USAGE)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let campaign: Campaign = match args.campaign.parse() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if let Some(k) = args.jobs {
        if k == 0 {
            return usage("--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            return usage(e);
        }
    }
    let basis = match &args.basis {
        None => None,
        Some(path) => match std::fs::read_to_string(path) {
            Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
            Ok(text) => match ClassSpec::from_basis_text(&text) {
                Err(e) => return usage(e),
                Ok(spec) if spec.basis().is_empty() => return usage(Error::EmptyBasis),
                Ok(spec) => Some(spec),
            },
        },
    };
    let params = CampaignParams {
        max_len: args.max_len,
        eps: args.eps,
        basis,
        seq: args.seq,
        slow: args.slow,
    };
    let start = Instant::now();
    let report = match run_campaign(campaign, &params) {
        Ok(r) => r,
        Err(e @ (Error::InvalidArgument(_) | Error::Parse(_) | Error::LengthBound { .. })) => {
            return usage(e)
        }
        Err(e) => {
            eprintln!("permgrowth: {campaign} failed: {e}");
            return ExitCode::from(FAILED);
        }
    };
    let text = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return usage(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    let status = if report.passed() { "pass" } else { "fail" };
    eprintln!("{campaign}: {status} in {:.2?}", start.elapsed());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    }
}
