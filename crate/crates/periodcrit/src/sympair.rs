//! Symmetric-pair data at the level of split-torus root data.
//!
//! A pair is the derived data of an involution: the realization of the
//! ambient group's root system on `a_0`, the root system of the subgroup on
//! `a_{0,H}`, the embedding `a_{0,H} -> a_0`, and explicit central
//! directions. A preset catalog instantiates the standard families; custom
//! pairs round-trip through a JSON file format with exact `"p/q"` rationals.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_rat, rat_str, QMatrix, Rat, RationalVector};
use crate::rootsys::{build_root_system, dominant_cone_rays, RootSystemData};

/// A symmetric pair `(G, H)` presented through its split-torus root data.
///
/// `embedding` maps `a_{0,H}`-coordinates into `a_0`-coordinates and has full
/// column rank. `central_h` lists directions of `a_{0,H}` orthogonal to every
/// restricted root (the split center of `H` in the model); `central_z` lists
/// the directions to quotient out, the split center of `G` met with `H`.
#[derive(Clone, Debug)]
pub struct SymmetricPairData {
    pub name: String,
    pub ambient: RootSystemData,
    pub sub: RootSystemData,
    pub embedding: QMatrix,
    pub central_h: Vec<RationalVector>,
    pub central_z: Vec<RationalVector>,
}

/// Deduplicated nonzero restrictions of the ambient simple roots, with the
/// indices of the ambient simple roots restricting to each functional.
#[derive(Clone, Debug)]
pub struct RestrictedSimpleRoots {
    pub functionals: Vec<RationalVector>,
    pub provenance: Vec<Vec<usize>>,
    pub zero_restrictions: Vec<usize>,
}

/// Structural findings from `validate`. Only rank deficiency of the
/// embedding is fatal; the cone containment can legitimately fail for
/// exotic pairs and is recorded, not enforced.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub dominant_cone_maps_into_ambient: bool,
    pub central_h_orthogonal: bool,
    pub sub_simples_are_restrictions: bool,
    pub ambient_dim: usize,
    pub sub_dim: usize,
    pub embedding_rank: usize,
}

impl ValidationReport {
    pub fn all_checks_hold(&self) -> bool {
        self.dominant_cone_maps_into_ambient
            && self.central_h_orthogonal
            && self.sub_simples_are_restrictions
    }
}

impl SymmetricPairData {
    /// Pull a functional on `a_0` back to `a_{0,H}` through the embedding:
    /// the functional `x -> <f, i(x)>` in `a_{0,H}`-coordinates.
    pub fn restrict_functional(&self, f: &RationalVector) -> Result<RationalVector> {
        if f.dim() != self.ambient.dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient.dim,
                got: f.dim(),
            });
        }
        Ok(self.embedding.transpose().mul_vec(f))
    }

    /// Restrict each ambient simple root, drop the zero restrictions,
    /// deduplicate equal functionals, and keep provenance.
    pub fn restricted_simple_roots(&self) -> RestrictedSimpleRoots {
        let mut functionals: Vec<RationalVector> = Vec::new();
        let mut provenance: Vec<Vec<usize>> = Vec::new();
        let mut zero_restrictions = Vec::new();
        for (i, alpha) in self.ambient.simple_roots.iter().enumerate() {
            let restricted = self
                .restrict_functional(&alpha.vector)
                .expect("simple roots have ambient dimension");
            if restricted.is_zero() {
                zero_restrictions.push(i);
            } else if let Some(p) = functionals.iter().position(|f| *f == restricted) {
                provenance[p].push(i);
            } else {
                functionals.push(restricted);
                provenance.push(vec![i]);
            }
        }
        RestrictedSimpleRoots {
            functionals,
            provenance,
            zero_restrictions,
        }
    }

    /// Generators of the dominant cone of the subgroup's torus, including
    /// both signs of the declared central directions.
    pub fn h_dominant_rays(&self) -> Result<Vec<RationalVector>> {
        dominant_cone_rays(&self.sub, &self.central_h)
    }

    /// Nonzero restrictions of all ambient positive roots (not only the
    /// simple ones), deduplicated.
    pub fn restricted_positive_roots(&self) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = Vec::new();
        for r in &self.ambient.positive_roots {
            let f = self
                .restrict_functional(&r.vector)
                .expect("positive roots have ambient dimension");
            if !f.is_zero() && !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    /// Structural validation. Fails only on structurally inconsistent data;
    /// everything else lands in the report.
    pub fn validate(&self) -> Result<ValidationReport> {
        if self.embedding.nrows() != self.ambient.dim || self.embedding.ncols() != self.sub.dim {
            return Err(Error::InvalidPair(format!(
                "embedding is {}x{} but the pair needs {}x{}",
                self.embedding.nrows(),
                self.embedding.ncols(),
                self.ambient.dim,
                self.sub.dim
            )));
        }
        let embedding_rank = self.embedding.rank();
        if embedding_rank != self.sub.dim {
            return Err(Error::InvalidPair(
                "embedding does not have full column rank".into(),
            ));
        }
        for v in self.central_h.iter().chain(&self.central_z) {
            if v.dim() != self.sub.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.sub.dim,
                    got: v.dim(),
                });
            }
        }

        let restricted = self.restricted_simple_roots();
        let central_h_orthogonal = self
            .central_h
            .iter()
            .all(|c| restricted.functionals.iter().all(|f| f.dot(c).is_zero()));

        // containment of the dominant cones, checked on extreme rays
        let dominant_cone_maps_into_ambient = match self.h_dominant_rays() {
            Ok(rays) => rays.iter().all(|ray| {
                let img = self.embedding.mul_vec(ray);
                self.ambient
                    .simple_roots
                    .iter()
                    .all(|a| a.vector.dot(&img) >= Rat::zero())
            }),
            Err(_) => false,
        };

        let all_restrictions = self.restricted_positive_roots();
        let sub_simples_are_restrictions = self
            .sub
            .simple_roots
            .iter()
            .all(|b| all_restrictions.contains(&b.vector));

        Ok(ValidationReport {
            dominant_cone_maps_into_ambient,
            central_h_orthogonal,
            sub_simples_are_restrictions,
            ambient_dim: self.ambient.dim,
            sub_dim: self.sub.dim,
            embedding_rank,
        })
    }
}

/// Directions orthogonal to every root of the system, as a primitive basis.
fn central_directions(rs: &RootSystemData) -> Vec<RationalVector> {
    if rs.simple_roots.is_empty() {
        return (0..rs.dim)
            .map(|i| {
                let mut c = vec![Rat::zero(); rs.dim];
                c[i] = Rat::from_integer(1.into());
                RationalVector::new(c)
            })
            .collect();
    }
    let rows: Vec<RationalVector> = rs.simple_roots.iter().map(|r| r.vector.clone()).collect();
    QMatrix::from_rows(&rows)
        .null_space()
        .into_iter()
        .map(|v| v.primitive())
        .collect()
}

/// Build a preset pair. Supported names:
///
/// * `galois:<type>` - `(Res_{E/F} H_E, H)` for a quadratic extension `E/F`,
///   modeled by doubling every root multiplicity of the ambient system;
/// * `group_case:<type>` - `(H x H, diagonal H)`;
/// * `sp2n_in_gl2n:<n>` - `(GL_{2n}(F), Sp_{2n}(F))`, `n` in `1..=4`;
/// * `glnE_in_gl2n:<n>` - `(GL_{2n}(F), GL_n(E))`, `n` in `1..=4`, with the
///   interleaved embedding so that `H`-dominance implies `G`-dominance.
pub fn preset(name: &str, param: &str) -> Result<SymmetricPairData> {
    match name {
        "galois" => {
            let sub = checked_type(param)?;
            let ambient = sub.with_uniform_multiplicity(2);
            let central = central_directions(&sub);
            Ok(SymmetricPairData {
                name: format!("galois:{}", sub.label),
                embedding: QMatrix::identity(sub.dim),
                central_h: central.clone(),
                central_z: central,
                ambient,
                sub,
            })
        }
        "group_case" => {
            let sub = checked_type(param)?;
            let ambient = sub.product(&sub);
            let mut embedding = QMatrix::zeros(2 * sub.dim, sub.dim);
            for j in 0..sub.dim {
                embedding.set(j, j, Rat::from_integer(1.into()));
                embedding.set(sub.dim + j, j, Rat::from_integer(1.into()));
            }
            let central = central_directions(&sub);
            Ok(SymmetricPairData {
                name: format!("group_case:{}", sub.label),
                embedding,
                central_h: central.clone(),
                central_z: central,
                ambient,
                sub,
            })
        }
        "sp2n_in_gl2n" => {
            let n = rank_param(param)?;
            let ambient = build_root_system(&format!("A{}", 2 * n - 1))?;
            let sub = build_root_system(&format!("C{n}"))?;
            let mut embedding = QMatrix::zeros(2 * n, n);
            for j in 0..n {
                embedding.set(j, j, Rat::from_integer(1.into()));
                embedding.set(2 * n - 1 - j, j, Rat::from_integer((-1).into()));
            }
            Ok(SymmetricPairData {
                name: format!("sp2n_in_gl2n:{n}"),
                ambient,
                sub,
                embedding,
                central_h: Vec::new(),
                central_z: Vec::new(),
            })
        }
        "glnE_in_gl2n" => {
            let n = rank_param(param)?;
            let ambient = build_root_system(&format!("A{}", 2 * n - 1))?;
            let sub = build_root_system(&format!("A{}", n - 1))?.with_uniform_multiplicity(2);
            let mut embedding = QMatrix::zeros(2 * n, n);
            for j in 0..n {
                embedding.set(2 * j, j, Rat::from_integer(1.into()));
                embedding.set(2 * j + 1, j, Rat::from_integer(1.into()));
            }
            let center = vec![RationalVector::from_i64(&vec![1i64; n])];
            Ok(SymmetricPairData {
                name: format!("glnE_in_gl2n:{n}"),
                ambient,
                sub,
                embedding,
                central_h: center.clone(),
                central_z: center,
            })
        }
        other => Err(Error::Input(format!("unknown preset `{other}`"))),
    }
}

/// Parse a `name:param` preset reference.
pub fn preset_from_ref(reference: &str) -> Result<SymmetricPairData> {
    let (name, param) = reference
        .split_once(':')
        .ok_or_else(|| Error::Input(format!("preset reference `{reference}` is not name:param")))?;
    preset(name.trim(), param.trim())
}

fn rank_param(param: &str) -> Result<usize> {
    let n: usize = param
        .parse()
        .map_err(|_| Error::Input(format!("preset rank `{param}` is not an integer")))?;
    if !(1..=4).contains(&n) {
        return Err(Error::Input(format!("preset rank {n} is outside 1..=4")));
    }
    Ok(n)
}

fn checked_type(label: &str) -> Result<RootSystemData> {
    let rs = build_root_system(label)?;
    if rs.dim > 8 {
        return Err(Error::Input(format!(
            "preset type `{label}` has realization dimension {} > 8",
            rs.dim
        )));
    }
    Ok(rs)
}

// --- pair-spec file format -------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MultiplicitySpec {
    Uniform(u32),
    PerRoot(Vec<u32>),
}

#[derive(Serialize, Deserialize)]
struct SystemSpec {
    #[serde(rename = "type")]
    cartan_type: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicities: Option<MultiplicitySpec>,
}

/// JSON document for a user-supplied pair. Rationals are `"p/q"` strings and
/// the embedding is row major (`ambient_dim` x `sub_dim`).
#[derive(Serialize, Deserialize)]
struct PairFile {
    name: String,
    ambient: SystemSpec,
    sub: SystemSpec,
    embedding: Vec<String>,
    #[serde(rename = "central_H")]
    central_h: Vec<Vec<String>>,
    #[serde(rename = "central_Z")]
    central_z: Vec<Vec<String>>,
}

fn system_from_spec(spec: &SystemSpec) -> Result<RootSystemData> {
    let base = build_root_system(&spec.cartan_type)?;
    match &spec.multiplicities {
        None => Ok(base),
        Some(MultiplicitySpec::Uniform(m)) => {
            if *m < 1 {
                return Err(Error::Input("multiplicity must be >= 1".into()));
            }
            Ok(base.with_uniform_multiplicity(*m))
        }
        Some(MultiplicitySpec::PerRoot(ms)) => {
            if ms.len() != base.positive_roots.len() {
                return Err(Error::Input(format!(
                    "expected {} multiplicities for {}, got {}",
                    base.positive_roots.len(),
                    base.label,
                    ms.len()
                )));
            }
            if ms.iter().any(|&m| m < 1) {
                return Err(Error::Input("multiplicity must be >= 1".into()));
            }
            let positives = base
                .positive_roots
                .iter()
                .zip(ms)
                .map(|(r, &m)| crate::rootsys::MultiplicityRoot::new(r.vector.clone(), m))
                .collect::<Vec<_>>();
            let simples = base
                .simple_roots
                .iter()
                .map(|s| {
                    let m = base
                        .positive_roots
                        .iter()
                        .position(|p| p.vector == s.vector)
                        .map(|i| ms[i])
                        .unwrap_or(1);
                    crate::rootsys::MultiplicityRoot::new(s.vector.clone(), m)
                })
                .collect::<Vec<_>>();
            RootSystemData::from_parts(base.label.clone(), base.dim, simples, positives)
        }
    }
}

fn spec_from_system(rs: &RootSystemData) -> SystemSpec {
    let mults: Vec<u32> = rs.positive_roots.iter().map(|r| r.multiplicity).collect();
    let multiplicities = if mults.iter().all(|&m| m == 1) {
        None
    } else if mults.windows(2).all(|w| w[0] == w[1]) {
        Some(MultiplicitySpec::Uniform(mults[0]))
    } else {
        Some(MultiplicitySpec::PerRoot(mults))
    };
    SystemSpec {
        cartan_type: rs.label.clone(),
        multiplicities,
    }
}

fn vectors_to_strings(vs: &[RationalVector]) -> Vec<Vec<String>> {
    vs.iter()
        .map(|v| v.coords().iter().map(rat_str).collect())
        .collect()
}

fn vectors_from_strings(vs: &[Vec<String>], dim: usize) -> Result<Vec<RationalVector>> {
    vs.iter()
        .map(|coords| {
            if coords.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: coords.len(),
                });
            }
            Ok(RationalVector::new(
                coords
                    .iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<Rat>>>()?,
            ))
        })
        .collect()
}

/// Parse a pair from its JSON document.
pub fn pair_from_json(json: &str) -> Result<SymmetricPairData> {
    let file: PairFile =
        serde_json::from_str(json).map_err(|e| Error::Input(format!("pair file: {e}")))?;
    let ambient = system_from_spec(&file.ambient)?;
    let sub = system_from_spec(&file.sub)?;
    let expected = ambient.dim * sub.dim;
    if file.embedding.len() != expected {
        return Err(Error::Input(format!(
            "embedding needs {} entries ({}x{}), got {}",
            expected,
            ambient.dim,
            sub.dim,
            file.embedding.len()
        )));
    }
    let mut embedding = QMatrix::zeros(ambient.dim, sub.dim);
    for i in 0..ambient.dim {
        for j in 0..sub.dim {
            embedding.set(i, j, parse_rat(&file.embedding[i * sub.dim + j])?);
        }
    }
    let pair = SymmetricPairData {
        name: file.name,
        central_h: vectors_from_strings(&file.central_h, sub.dim)?,
        central_z: vectors_from_strings(&file.central_z, sub.dim)?,
        ambient,
        sub,
        embedding,
    };
    pair.validate()?;
    Ok(pair)
}

/// Serialize a pair to its canonical JSON document. Output is deterministic
/// and round-trips byte-exactly through `pair_from_json`.
pub fn pair_to_json(pair: &SymmetricPairData) -> String {
    let mut embedding = Vec::with_capacity(pair.ambient.dim * pair.sub.dim);
    for i in 0..pair.ambient.dim {
        for j in 0..pair.sub.dim {
            embedding.push(rat_str(pair.embedding.get(i, j)));
        }
    }
    let file = PairFile {
        name: pair.name.clone(),
        ambient: spec_from_system(&pair.ambient),
        sub: spec_from_system(&pair.sub),
        embedding,
        central_h: vectors_to_strings(&pair.central_h),
        central_z: vectors_to_strings(&pair.central_z),
    };
    serde_json::to_string_pretty(&file).expect("pair serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    fn rv(cs: &[i64]) -> RationalVector {
        RationalVector::from_i64(cs)
    }

    #[test]
    fn sp4_restriction_of_rho() {
        let pair = preset("sp2n_in_gl2n", "2").unwrap();
        let rho = pair.ambient.rho.clone();
        assert_eq!(
            rho,
            RationalVector::from_strs(&["3/2", "1/2", "-1/2", "-3/2"]).unwrap()
        );
        assert_eq!(pair.restrict_functional(&rho).unwrap(), rv(&[3, 1]));
        assert!(pair
            .restrict_functional(&RationalVector::zeros(4))
            .unwrap()
            .is_zero());
        assert_eq!(
            pair.restrict_functional(&rv(&[0, 1, -1, 0])).unwrap(),
            rv(&[0, 2])
        );
        assert!(pair.restrict_functional(&rv(&[1, 2])).is_err());
    }

    #[test]
    fn sp4_restricted_simple_roots() {
        let pair = preset("sp2n_in_gl2n", "2").unwrap();
        let delta = pair.restricted_simple_roots();
        assert_eq!(delta.functionals, vec![rv(&[1, -1]), rv(&[0, 2])]);
        assert_eq!(delta.provenance, vec![vec![0, 2], vec![1]]);
        assert!(delta.zero_restrictions.is_empty());
    }

    #[test]
    fn galois_restriction_is_identity() {
        let pair = preset("galois", "A1").unwrap();
        let delta = pair.restricted_simple_roots();
        assert_eq!(delta.functionals, vec![rv(&[1, -1])]);
        assert_eq!(pair.ambient.rho, rv(&[1, -1]));
        assert_eq!(
            pair.sub.rho,
            RationalVector::from_strs(&["1/2", "-1/2"]).unwrap()
        );
    }

    #[test]
    fn group_case_dedups_both_copies() {
        let pair = preset("group_case", "A1").unwrap();
        assert_eq!(pair.ambient.dim, 4);
        let delta = pair.restricted_simple_roots();
        assert_eq!(delta.functionals, vec![rv(&[1, -1])]);
        assert_eq!(delta.provenance, vec![vec![0, 1]]);
    }

    #[test]
    fn glne_roots_restrict_to_zero_or_one_functional() {
        let pair = preset("glnE_in_gl2n", "2").unwrap();
        let delta = pair.restricted_simple_roots();
        assert_eq!(delta.functionals, vec![rv(&[1, -1])]);
        assert_eq!(delta.zero_restrictions, vec![0, 2]);
        let one_dim = preset("glnE_in_gl2n", "1").unwrap();
        let delta = one_dim.restricted_simple_roots();
        assert!(delta.functionals.is_empty());
        assert_eq!(delta.zero_restrictions, vec![0]);
        assert_eq!(one_dim.central_h, vec![rv(&[1])]);
    }

    #[test]
    fn validation_passes_on_presets() {
        for (name, param) in [
            ("galois", "A1"),
            ("galois", "A2"),
            ("galois", "A3"),
            ("galois", "C2"),
            ("galois", "C3"),
            ("group_case", "A1"),
            ("group_case", "A2"),
            ("group_case", "C2"),
            ("sp2n_in_gl2n", "1"),
            ("sp2n_in_gl2n", "2"),
            ("sp2n_in_gl2n", "3"),
            ("glnE_in_gl2n", "1"),
            ("glnE_in_gl2n", "2"),
            ("glnE_in_gl2n", "3"),
        ] {
            let pair = preset(name, param).unwrap();
            let report = pair.validate().unwrap();
            assert!(
                report.all_checks_hold(),
                "validation failed for {name}:{param}: {report:?}"
            );
        }
    }

    #[test]
    fn sp4_dominant_rays_map_to_dominant_vectors() {
        let pair = preset("sp2n_in_gl2n", "2").unwrap();
        let rays = pair.h_dominant_rays().unwrap();
        assert_eq!(rays, vec![rv(&[1, 0]), rv(&[1, 1])]);
        assert_eq!(pair.embedding.mul_vec(&rays[0]), rv(&[1, 0, 0, -1]));
        assert_eq!(pair.embedding.mul_vec(&rays[1]), rv(&[1, 1, -1, -1]));
    }

    #[test]
    fn galois_rho_identity_holds_for_all_types() {
        for label in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3"] {
            let pair = preset("galois", label).unwrap();
            let restricted = pair.restrict_functional(&pair.ambient.rho).unwrap();
            assert_eq!(
                restricted,
                pair.sub.rho.scale(&rat_int(2)),
                "doubled-multiplicity identity fails for {label}"
            );
        }
    }

    #[test]
    fn group_case_rho_identity() {
        for label in ["A1", "A2", "C2", "B2"] {
            let pair = preset("group_case", label).unwrap();
            let restricted = pair.restrict_functional(&pair.ambient.rho).unwrap();
            assert_eq!(restricted, pair.sub.rho.scale(&rat_int(2)));
        }
    }

    #[test]
    fn provenance_partitions_ambient_simples() {
        for (name, param) in [
            ("galois", "C2"),
            ("group_case", "A2"),
            ("sp2n_in_gl2n", "3"),
            ("glnE_in_gl2n", "2"),
        ] {
            let pair = preset(name, param).unwrap();
            let delta = pair.restricted_simple_roots();
            let mut seen: Vec<usize> = delta.zero_restrictions.clone();
            for p in &delta.provenance {
                seen.extend(p);
            }
            seen.sort_unstable();
            let expected: Vec<usize> = (0..pair.ambient.simple_roots.len()).collect();
            assert_eq!(seen, expected, "provenance partition for {name}:{param}");
        }
    }

    #[test]
    fn unknown_presets_are_rejected() {
        assert!(preset("borel", "A1").is_err());
        assert!(preset("sp2n_in_gl2n", "0").is_err());
        assert!(preset("sp2n_in_gl2n", "5").is_err());
        assert!(preset_from_ref("galois").is_err());
        assert!(preset_from_ref("galois:A2").is_ok());
    }

    #[test]
    fn pair_json_round_trip_is_byte_exact() {
        for reference in ["sp2n_in_gl2n:2", "galois:A2", "glnE_in_gl2n:2"] {
            let pair = preset_from_ref(reference).unwrap();
            let json = pair_to_json(&pair);
            let parsed = pair_from_json(&json).unwrap();
            assert_eq!(pair_to_json(&parsed), json, "round trip for {reference}");
        }
    }

    #[test]
    fn pair_json_rejects_bad_embedding() {
        let pair = preset("galois", "A1").unwrap();
        let json = pair_to_json(&pair);
        let broken = json.replace("\"1\"", "\"1/0\"");
        assert!(pair_from_json(&broken).is_err());
        let truncated: PairFile = serde_json::from_str(&json).unwrap();
        let mut other = truncated;
        other.embedding.pop();
        let json2 = serde_json::to_string(&other).unwrap();
        assert!(pair_from_json(&json2).is_err());
    }

    #[test]
    fn rank_deficient_embedding_is_fatal() {
        let mut pair = preset("sp2n_in_gl2n", "2").unwrap();
        pair.embedding = QMatrix::zeros(4, 2);
        assert!(matches!(pair.validate(), Err(Error::InvalidPair(_))));
    }
}
