//! Run the discreteness criterion across the preset catalog.
//!
//! ```text
//! cargo run -p periodcrit --example check_presets
//! ```

use periodcrit::criterion::check_pair;
use periodcrit::sympair::preset_from_ref;

fn main() -> Result<(), periodcrit::Error> {
    let presets = [
        "galois:A1",
        "galois:A2",
        "galois:C2",
        "group_case:A1",
        "group_case:A2",
        "sp2n_in_gl2n:1",
        "sp2n_in_gl2n:2",
        "sp2n_in_gl2n:3",
        "glnE_in_gl2n:1",
        "glnE_in_gl2n:2",
    ];
    println!(
        "{:<18} {:>4} {:>10} {:>12}",
        "pair", "reps", "sufficient", "discrete"
    );
    for reference in presets {
        let pair = preset_from_ref(reference)?;
        let verdict = check_pair(&pair)?;
        println!(
            "{:<18} {:>4} {:>10} {:>12}",
            reference,
            verdict.per_rep.len(),
            match verdict.sufficient_condition_holds {
                Some(true) => "yes",
                Some(false) => "no",
                None => "n/a",
            },
            if verdict.vsd { "YES" } else { "NO" },
        );
    }
    Ok(())
}
