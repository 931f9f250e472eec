//! Write a pair to its JSON file format, read it back bit-exactly, and run
//! the pipeline on the reloaded copy.
//!
//! ```text
//! cargo run -p periodcrit --example pair_file_roundtrip
//! ```

use periodcrit::criterion::check_pair;
use periodcrit::sympair::{pair_from_json, pair_to_json, preset_from_ref};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = preset_from_ref("sp2n_in_gl2n:2")?;
    let json = pair_to_json(&pair);
    println!("serialized pair:\n{json}\n");

    let reloaded = pair_from_json(&json)?;
    assert_eq!(pair_to_json(&reloaded), json, "round trip is byte exact");
    println!("round trip: byte exact");

    let path = std::env::temp_dir().join("periodcrit-example-pair.json");
    std::fs::write(&path, &json)?;
    let from_disk = pair_from_json(&std::fs::read_to_string(&path)?)?;
    let verdict = check_pair(&from_disk)?;
    println!(
        "verdict on the reloaded pair: very strongly discrete = {}",
        verdict.vsd
    );
    Ok(())
}
