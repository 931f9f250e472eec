//! Print the full derivation table for one pair, exactly as the CLI's
//! `explain` subcommand does.
//!
//! ```text
//! cargo run -p periodcrit --example explain_derivation [-- name:param]
//! ```

use periodcrit::cli::{run, Command, PairSource, RunConfig};

fn main() {
    let reference = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sp2n_in_gl2n:2".to_string());
    let mut config = RunConfig::new(Command::Explain);
    config.pair_source = Some(PairSource::Preset(reference));
    let (code, output) = run(&config);
    println!("{output}");
    println!("(exit code would be {code})");
}
