use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use periodcrit::cli::{self, Command, PairSource, RunConfig};

#[derive(Parser)]
#[command(
    name = "periodcrit",
    version,
    about = "Decide very strong discreteness of a p-adic symmetric pair from exact root data"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct CommonArgs {
    /// Preset pair, as name:param (see `periodcrit presets`)
    #[arg(long, value_name = "NAME:PARAM", conflicts_with = "pair")]
    preset: Option<String>,
    /// JSON pair-spec file
    #[arg(long, value_name = "FILE")]
    pair: Option<PathBuf>,
    /// Residue-field cardinality model for the series
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Polynomial decay power N; chosen per representative when absent
    #[arg(long = "N", value_name = "INT")]
    decay: Option<u32>,
    /// Series cutoffs, comma separated and strictly increasing
    #[arg(long, value_delimiter = ',', value_name = "A,B,C")]
    cutoffs: Option<Vec<u32>>,
    /// Seed for partition-verification sampling
    #[arg(long, default_value_t = 17)]
    seed: u64,
    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide very strong discreteness, with certificates
    Check(CommonArgs),
    /// Per-representative convergence decision and partial sums
    Series(CommonArgs),
    /// Print the full derivation table
    Explain(CommonArgs),
    /// List the preset catalog
    Presets(CommonArgs),
    /// Structurally validate a pair
    Validate(CommonArgs),
}

fn to_config(command: Command, args: CommonArgs) -> RunConfig {
    let mut config = RunConfig::new(command);
    config.pair_source = match (args.preset, args.pair) {
        (Some(p), _) => Some(PairSource::Preset(p)),
        (None, Some(f)) => Some(PairSource::File(f)),
        (None, None) => None,
    };
    config.q = args.q;
    config.decay = args.decay;
    if let Some(cutoffs) = args.cutoffs {
        config.cutoffs = cutoffs;
    }
    config.seed = args.seed;
    config.json = args.json;
    config
}

fn main() {
    let parsed = match Cli::try_parse() {
        Ok(p) => p,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(cli::EXIT_INPUT);
                }
            }
        }
    };
    let config = match parsed.command {
        Cmd::Check(a) => to_config(Command::Check, a),
        Cmd::Series(a) => to_config(Command::Series, a),
        Cmd::Explain(a) => to_config(Command::Explain, a),
        Cmd::Presets(a) => to_config(Command::Presets, a),
        Cmd::Validate(a) => to_config(Command::Validate, a),
    };
    let (code, output) = cli::run(&config);
    if !output.is_empty() {
        println!("{output}");
    }
    std::process::exit(code);
}
