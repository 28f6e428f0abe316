use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Exact analysis of almost p-ary sequences and partial direct product
/// difference sets.
#[derive(Debug, Parser)]
#[command(name = "npseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Autocorrelation profile, NPS type and difference-set structure of a sequence.
    Analyze {
        #[arg(long)]
        p: u32,
        /// Comma-separated tokens: `Z` for a zero-symbol or an exponent in 0..p.
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify a subset of Z_N x Z_p as a PDPDS, or check it against given parameters.
    VerifyPdpds {
        #[arg(long = "N")]
        order_h: usize,
        #[arg(long)]
        p: u32,
        /// Semicolon-separated pairs, e.g. "(2,1);(3,1);(4,1)".
        #[arg(long)]
        set: String,
        /// n,m,k,lambda1,lambda2,lambda3,mu1,mu2
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Nonexistence conditions for an NPS of type (gamma1, gamma2) with two zeros.
    #[command(allow_negative_numbers = true)]
    Bounds {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        gamma1: i64,
        #[arg(long)]
        gamma2: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Table of gamma2 bounds over a grid of (gamma1, gamma2).
    #[command(allow_negative_numbers = true)]
    Table {
        #[arg(long)]
        n: i64,
        /// Comma-separated integers; may be empty.
        #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true, default_value = "")]
        gamma1_list: IntList,
        #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true, default_value = "")]
        gamma2_list: IntList,
        /// Adds a divisibility column (JSON only) for this prime.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exhaustive search over sequences with a leading zero run.
    #[command(allow_negative_numbers = true)]
    Search {
        #[command(flatten)]
        args: SearchArgs,
        /// Check the bounds on the number of distinct coefficients for every candidate.
        #[arg(long)]
        ell_bounds: bool,
    },
    /// Check NPS classification against PDPDS classification on every candidate.
    #[command(allow_negative_numbers = true)]
    Roundtrip {
        #[command(flatten)]
        args: SearchArgs,
    },
}

#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

fn parse_int_list(text: &str) -> Result<IntList, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub period: usize,
    /// Length of the leading zero run.
    #[arg(long)]
    pub zeros: usize,
    /// Only report NPS of this type: gamma1,gamma2.
    #[arg(long = "type", allow_hyphen_values = true, conflicts_with = "filter")]
    pub nps_type: Option<String>,
    /// Match filter: nps, all, uniform, or gamma2<=B.
    #[arg(long, allow_hyphen_values = true)]
    pub filter: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = npseq::search::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Enumerate every global phase instead of fixing the first exponent to 0.
    #[arg(long)]
    pub full_space: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { p, seq, format } => commands::analyze(p, &seq, format),
        Command::VerifyPdpds { order_h, p, set, params, format } => {
            commands::verify_pdpds(order_h, p, &set, params.as_deref(), format)
        }
        Command::Bounds { n, p, gamma1, gamma2, format } => commands::bounds(n, p, gamma1, gamma2, format),
        Command::Table { n, gamma1_list, gamma2_list, p, format } => {
            commands::table(n, &gamma1_list.0, &gamma2_list.0, p, format)
        }
        Command::Search { args, ell_bounds } => commands::search(&args, ell_bounds),
        Command::Roundtrip { args } => commands::roundtrip(&args),
    };
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
