//! The exact root-system toolkit on its own: realizations, Weyl groups,
//! half sums, dominance cones, and modular-character exponents.
//!
//! ```text
//! cargo run -p periodcrit --example root_systems
//! ```

use periodcrit::rootsys::{build_root_system, delta_exponent, dominant_cone_rays, weyl_group};
use periodcrit::RationalVector;

fn main() -> Result<(), periodcrit::Error> {
    for label in ["A2", "B2", "C3", "A1xA1"] {
        let rs = build_root_system(label)?;
        let group = weyl_group(&rs)?;
        println!("{label}: dim {}, |W| = {}", rs.dim, group.len());
        println!("  simple roots:");
        for r in &rs.simple_roots {
            println!("    {} (multiplicity {})", r.vector, r.multiplicity);
        }
        println!("  rho = {}", rs.rho);
        println!("  modular exponent 2*rho = {}", delta_exponent(&rs));
    }

    // the dominance cone of C2, and the same cone with doubled multiplicities
    let c2 = build_root_system("C2")?;
    println!("C2 dominant cone rays: {:?}", dominant_cone_rays(&c2, &[])?);
    let doubled = c2.with_uniform_multiplicity(2);
    println!(
        "C2 with doubled multiplicities: rho = {} (reflections unchanged)",
        doubled.rho
    );

    // A1 realized in two coordinates carries a central line
    let a1 = build_root_system("A1")?;
    let center = RationalVector::from_i64(&[1, 1]);
    println!(
        "A1 cone rays with the central direction: {:?}",
        dominant_cone_rays(&a1, &[center])?
    );
    Ok(())
}
