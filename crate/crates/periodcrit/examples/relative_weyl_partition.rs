//! Relative Weyl groups, chamber-transport coset representatives, and the
//! seeded verification that the transported cones tile the dominant cone.
//!
//! ```text
//! cargo run -p periodcrit --example relative_weyl_partition
//! ```

use periodcrit::relweyl::{
    common_dominant_cone, coset_representatives, relative_weyl, verify_partition,
};
use periodcrit::sympair::preset_from_ref;

fn main() -> Result<(), periodcrit::Error> {
    for reference in ["sp2n_in_gl2n:2", "group_case:A1", "glnE_in_gl2n:2"] {
        let pair = preset_from_ref(reference)?;
        let mut rw = relative_weyl(&pair)?;
        coset_representatives(&pair, &mut rw)?;

        println!("pair {reference}");
        println!(
            "  |W^H| = {}, |W^(H\\G)| = {}, cosets = {}",
            rw.w_h.len(),
            rw.w_hg.len(),
            rw.coset_reps.len()
        );
        let cone = common_dominant_cone(&pair);
        println!("  common dominant cone rays:");
        for ray in &cone.rays {
            println!("    {ray}");
        }
        for line in &cone.lineality {
            println!("    +/- {line}  (central line)");
        }
        for (i, rep) in rw.coset_reps.iter().enumerate() {
            println!("  rep {i}: {}", rep.matrix);
        }
        let report = verify_partition(&pair, &rw, 100, 17)?;
        println!(
            "  partition check: {} interior samples, coverage {:?}, {} wall redraws",
            report.samples, report.coverage, report.resamples
        );
        println!();
    }
    Ok(())
}
