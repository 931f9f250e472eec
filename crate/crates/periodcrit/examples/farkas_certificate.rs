//! Inspect feasibility certificates: coefficients when a test functional is a
//! non-negative combination of the restricted simple roots, a separating
//! functional when it is not. Both are re-checked by substitution here.
//!
//! ```text
//! cargo run -p periodcrit --example farkas_certificate
//! ```

use num_traits::Zero;
use periodcrit::criterion::{rho_w, weakly_positive};
use periodcrit::linalg::{rat_str, Rat};
use periodcrit::relweyl::{coset_representatives, relative_weyl};
use periodcrit::simplex::Feasibility;
use periodcrit::sympair::preset_from_ref;
use periodcrit::RationalVector;

fn main() -> Result<(), periodcrit::Error> {
    for reference in ["sp2n_in_gl2n:2", "sp2n_in_gl2n:3", "galois:C2"] {
        let pair = preset_from_ref(reference)?;
        let delta = pair.restricted_simple_roots();
        let mut rw = relative_weyl(&pair)?;
        coset_representatives(&pair, &mut rw)?;

        println!("pair {reference}");
        println!("  restricted simple roots:");
        for f in &delta.functionals {
            println!("    {f}");
        }
        for r in rho_w(&pair, &rw)? {
            println!("  rep {}: rho_w = {}", r.rep_index, r.functional);
            match weakly_positive(&r.functional, &delta) {
                Feasibility::Feasible { coefficients } => {
                    let rendered: Vec<String> = coefficients.iter().map(rat_str).collect();
                    println!(
                        "    weakly positive, coefficients [{}]",
                        rendered.join(", ")
                    );
                    let mut acc = RationalVector::zeros(pair.sub.dim);
                    for (c, d) in coefficients.iter().zip(&delta.functionals) {
                        acc = acc.add(&d.scale(c));
                    }
                    assert_eq!(acc, r.functional, "coefficients reconstruct rho_w");
                    println!("    substitution check: sum c_i * delta_i = rho_w  ok");
                }
                Feasibility::Infeasible { witness } => {
                    println!("    not weakly positive, separating functional y = {witness}");
                    for d in &delta.functionals {
                        assert!(witness.dot(d) >= Rat::zero());
                        println!("      <y, {d}> = {}  (>= 0)", rat_str(&witness.dot(d)));
                    }
                    assert!(witness.dot(&r.functional) < Rat::zero());
                    println!(
                        "      <y, rho_w> = {}  (< 0)",
                        rat_str(&witness.dot(&r.functional))
                    );
                }
            }
        }
        println!();
    }
    Ok(())
}
