//! Exact root-data test for very strong discreteness of p-adic symmetric
//! pairs.
//!
//! Given a symmetric pair `(G, H)` presented through its split-torus root
//! data (realized root systems with multiplicities, the torus embedding, and
//! central directions), the crate decides whether the symmetric space is
//! very strongly discrete: for every chamber-transport coset representative
//! `w` of the relative Weyl groups, the test functional
//! `rho^w = rho_G|_{a_{0,H}} - 2 w(rho_H)` must be a non-negative rational
//! combination of the restricted simple roots. The combination decision is
//! made by an exact simplex over `BigRational`, and both outcomes carry a
//! certificate verified by substitution: the coefficients, or a separating
//! functional.
//!
//! Verdicts are corroborated two independent ways: a dual-cone oracle pairs
//! each `rho^w` against the generators of the restricted dominance cone, and
//! a lattice-series module checks that the associated exponential sums decay
//! or explode as the verdict predicts.
//!
//! ```
//! use periodcrit::criterion::check_pair;
//! use periodcrit::sympair::preset_from_ref;
//!
//! let pair = preset_from_ref("sp2n_in_gl2n:2").unwrap();
//! let verdict = check_pair(&pair).unwrap();
//! assert!(!verdict.vsd); // matrix coefficients need not integrate over H
//! ```
//!
//! Each major capability has a runnable example under `examples/`:
//!
//! ```text
//! cargo run -p periodcrit --example check_presets
//! cargo run -p periodcrit --example farkas_certificate
//! cargo run -p periodcrit --example series_convergence
//! cargo run -p periodcrit --example relative_weyl_partition
//! cargo run -p periodcrit --example pair_file_roundtrip
//! cargo run -p periodcrit --example explain_derivation
//! ```
//!
//! The `periodcrit` binary exposes the same pipeline as subcommands
//! (`check`, `series`, `explain`, `presets`, `validate`).

pub mod cli;
pub mod cone;
pub mod criterion;
pub mod error;
pub mod linalg;
pub mod relweyl;
pub mod rootsys;
pub mod seriesim;
pub mod simplex;
pub mod sympair;

pub use error::{Error, Result};
pub use linalg::{QMatrix, Rat, RationalVector};
pub use rootsys::{build_root_system, MultiplicityRoot, RootSystemData, WeylElement};
pub use sympair::SymmetricPairData;
