//! Corroborate a verdict numerically: the exponential lattice series attached
//! to each coset representative decays exactly when the test functional is
//! weakly positive.
//!
//! ```text
//! cargo run -p periodcrit --example series_convergence
//! ```

use periodcrit::criterion::check_pair;
use periodcrit::relweyl::{coset_representatives, relative_weyl};
use periodcrit::seriesim::{decide_convergence, partial_sums, series_from_pair};
use periodcrit::sympair::preset_from_ref;

fn main() -> Result<(), periodcrit::Error> {
    let cutoffs = [10, 20, 40];
    for reference in ["galois:A1", "glnE_in_gl2n:1", "sp2n_in_gl2n:2"] {
        let pair = preset_from_ref(reference)?;
        let verdict = check_pair(&pair)?;
        let mut rw = relative_weyl(&pair)?;
        coset_representatives(&pair, &mut rw)?;

        println!("pair {reference} (very strongly discrete: {})", verdict.vsd);
        for rep in &verdict.per_rep {
            let mut spec = series_from_pair(&pair, &rw, rep.rep_index, 2, 0, 40)?;
            let (converges, zero_face) = decide_convergence(&spec);
            spec.decay = zero_face as u32 + 2;
            let report = partial_sums(&spec, &cutoffs)?;
            println!(
                "  rep {}: {} (zero-face {zero_face}, N = {})",
                rep.rep_index,
                if converges {
                    "convergent for large N"
                } else {
                    "divergent"
                },
                spec.decay,
            );
            for (cutoff, value) in &report.partial_sums {
                println!("    cutoff {cutoff:>3}: {value:.6e}");
            }
            println!(
                "    matches criterion: {}   empirically consistent: {}",
                converges == rep.weakly_positive,
                report.consistent
            );
        }
        println!();
    }
    Ok(())
}
