//! The discreteness criterion: per-representative test vectors, relative weak
//! positivity by exact feasibility with certificates, the aggregate verdict,
//! and the separate sufficient condition on modular-character exponents.
//!
//! A pair is very strongly discrete exactly when, for every chamber-transport
//! coset representative `w`, the functional `rho^w = rho_G|_{a_{0,H}} -
//! 2 w(rho_H)` is a non-negative combination of the restricted simple roots.
//! Feasibility always returns a checkable certificate: the coefficients, or a
//! separating functional.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_rat, rat_str, Rat, RationalVector};
use crate::relweyl::{self, RelativeWeylData};
use crate::simplex::{nonneg_solve, Feasibility};
use crate::sympair::{RestrictedSimpleRoots, SymmetricPairData};

/// The test functional attached to one coset representative.
#[derive(Clone, Debug)]
pub struct RhoW {
    pub rep_index: usize,
    pub functional: RationalVector,
}

/// Certificate attached to a single representative's verdict.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// Non-negative coefficients on the restricted simple roots.
    Coefficients(Vec<Rat>),
    /// Separating functional: pairs `>= 0` with every restricted simple root
    /// and `< 0` with the test functional.
    Farkas(RationalVector),
}

/// Verdict for one representative.
#[derive(Clone, Debug)]
pub struct RepVerdict {
    pub rep_index: usize,
    pub rho_w: RationalVector,
    pub weakly_positive: bool,
    pub certificate: Certificate,
}

/// Aggregate verdict for a pair.
#[derive(Clone, Debug)]
pub struct PositivityVerdict {
    pub per_rep: Vec<RepVerdict>,
    /// Very strongly discrete: every representative is weakly positive.
    pub vsd: bool,
    pub sufficient_condition_holds: Option<bool>,
}

/// Compute `rho^w = restrict(rho_G) - 2 w(rho_H)` for every representative.
pub fn rho_w(pair: &SymmetricPairData, rw: &RelativeWeylData) -> Result<Vec<RhoW>> {
    let restricted_rho = pair.restrict_functional(&pair.ambient.rho)?;
    let two = Rat::from_integer(2.into());
    Ok(rw
        .coset_reps
        .iter()
        .enumerate()
        .map(|(rep_index, rep)| RhoW {
            rep_index,
            functional: restricted_rho.sub(&rep.matrix.mul_vec(&pair.sub.rho).scale(&two)),
        })
        .collect())
}

/// Decide whether `f` is a non-negative combination of the restricted simple
/// roots; either way the certificate has been verified by substitution.
pub fn weakly_positive(f: &RationalVector, delta: &RestrictedSimpleRoots) -> Feasibility {
    nonneg_solve(&delta.functionals, f)
}

/// `dual_cone_check` driven from the pair itself.
pub fn dual_cone_check_pair(pair: &SymmetricPairData, rhow: &RhoW) -> Option<bool> {
    dual_cone_check(&pair.restricted_simple_roots(), &rhow.functional)
}

/// Independent cone-side oracle for `weakly_positive`: pair `rho^w` against
/// the generators of `{x : <d, x> >= 0 for d in Delta}`. The generators are
/// the dual basis inside the span of the restricted simple roots plus both
/// signs of the span's orthogonal complement, so a nonzero component off the
/// span is forced to fail. Returns `None` when the restricted simple roots
/// are linearly dependent and the dual basis does not exist.
pub fn dual_cone_check(delta: &RestrictedSimpleRoots, f: &RationalVector) -> Option<bool> {
    let dim = f.dim();
    if delta.functionals.is_empty() {
        return Some(f.is_zero());
    }
    let k = delta.functionals.len();
    let mat = crate::linalg::QMatrix::from_rows(&delta.functionals);
    if mat.rank() < k {
        return None;
    }
    let mut gram = crate::linalg::QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, delta.functionals[i].dot(&delta.functionals[j]));
        }
    }
    let inv = gram.inverse()?;
    for i in 0..k {
        let mut dual = RationalVector::zeros(dim);
        for j in 0..k {
            dual = dual.add(&delta.functionals[j].scale(inv.get(j, i)));
        }
        if f.dot(&dual) < Rat::zero() {
            return Some(false);
        }
    }
    for line in mat.null_space() {
        if !f.dot(&line).is_zero() {
            return Some(false);
        }
    }
    Some(true)
}

/// The sufficient condition on exponents: the `H`-dominant cone maps into the
/// ambient dominant cone, and `restrict(rho_G) - 2 rho_H` pairs `>= 0`
/// against every `H`-dominant ray.
pub fn check_sufficient(pair: &SymmetricPairData) -> Result<bool> {
    let rays = pair.h_dominant_rays()?;
    let containment = rays.iter().all(|ray| {
        let img = pair.embedding.mul_vec(ray);
        pair.ambient
            .simple_roots
            .iter()
            .all(|a| a.vector.dot(&img) >= Rat::zero())
    });
    if !containment {
        return Ok(false);
    }
    let f = pair
        .restrict_functional(&pair.ambient.rho)?
        .sub(&pair.sub.rho.scale(&Rat::from_integer(2.into())));
    Ok(rays.iter().all(|r| f.dot(r) >= Rat::zero()))
}

/// Run the whole pipeline: validate, restrict, compute relative Weyl data and
/// representatives, test every `rho^w`, and aggregate.
pub fn check_pair(pair: &SymmetricPairData) -> Result<PositivityVerdict> {
    pair.validate()?;
    let delta = pair.restricted_simple_roots();
    let mut rw = relweyl::relative_weyl(pair)?;
    relweyl::coset_representatives(pair, &mut rw)?;
    let rhos = rho_w(pair, &rw)?;
    let per_rep: Vec<RepVerdict> = rhos
        .into_iter()
        .map(|r| {
            let (positive, certificate) = match weakly_positive(&r.functional, &delta) {
                Feasibility::Feasible { coefficients } => {
                    (true, Certificate::Coefficients(coefficients))
                }
                Feasibility::Infeasible { witness } => (false, Certificate::Farkas(witness)),
            };
            RepVerdict {
                rep_index: r.rep_index,
                rho_w: r.functional,
                weakly_positive: positive,
                certificate,
            }
        })
        .collect();
    let vsd = per_rep.iter().all(|r| r.weakly_positive);
    let sufficient = check_sufficient(pair)?;
    Ok(PositivityVerdict {
        per_rep,
        vsd,
        sufficient_condition_holds: Some(sufficient),
    })
}

// --- verdict serialization ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    #[serde(rename = "type")]
    kind: String,
    values: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RepVerdictJson {
    rep_index: usize,
    rho_w: Vec<String>,
    weakly_positive: bool,
    certificate: CertificateJson,
}

#[derive(Serialize, Deserialize)]
struct VerdictJson {
    per_rep: Vec<RepVerdictJson>,
    vsd: bool,
    sufficient_condition: Option<bool>,
}

/// Canonical JSON for a verdict: rationals as `"p/q"` strings, fixed key
/// order, byte-exact round trip.
pub fn verdict_to_json(v: &PositivityVerdict) -> String {
    let doc = VerdictJson {
        per_rep: v
            .per_rep
            .iter()
            .map(|r| RepVerdictJson {
                rep_index: r.rep_index,
                rho_w: r.rho_w.coords().iter().map(rat_str).collect(),
                weakly_positive: r.weakly_positive,
                certificate: match &r.certificate {
                    Certificate::Coefficients(cs) => CertificateJson {
                        kind: "coefficients".into(),
                        values: cs.iter().map(rat_str).collect(),
                    },
                    Certificate::Farkas(w) => CertificateJson {
                        kind: "farkas".into(),
                        values: w.coords().iter().map(rat_str).collect(),
                    },
                },
            })
            .collect(),
        vsd: v.vsd,
        sufficient_condition: v.sufficient_condition_holds,
    };
    serde_json::to_string_pretty(&doc).expect("verdict serialization cannot fail")
}

/// Parse a verdict back from its JSON document.
pub fn verdict_from_json(json: &str) -> Result<PositivityVerdict> {
    let doc: VerdictJson =
        serde_json::from_str(json).map_err(|e| Error::Input(format!("verdict: {e}")))?;
    let per_rep = doc
        .per_rep
        .into_iter()
        .map(|r| {
            let parse_vals = |vals: &[String]| -> Result<Vec<Rat>> {
                vals.iter().map(|s| parse_rat(s)).collect()
            };
            let certificate = match r.certificate.kind.as_str() {
                "coefficients" => Certificate::Coefficients(parse_vals(&r.certificate.values)?),
                "farkas" => {
                    Certificate::Farkas(RationalVector::new(parse_vals(&r.certificate.values)?))
                }
                other => return Err(Error::Input(format!("unknown certificate type `{other}`"))),
            };
            Ok(RepVerdict {
                rep_index: r.rep_index,
                rho_w: RationalVector::new(parse_vals(&r.rho_w)?),
                weakly_positive: r.weakly_positive,
                certificate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PositivityVerdict {
        per_rep,
        vsd: doc.vsd,
        sufficient_condition_holds: doc.sufficient_condition,
    })
}
