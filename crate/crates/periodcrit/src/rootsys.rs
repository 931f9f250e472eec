//! Exact root-system core.
//!
//! Standard Euclidean realizations of the classical types with per-root
//! multiplicities, Weyl group enumeration by closure over simple reflections,
//! half sums, dominance cones, and modular-character exponents. The ambient
//! space and its dual are identified through the dot product, so coweights
//! are `2a / <a,a>`.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rat, RationalVector};

/// Default safety cap on Weyl group enumeration.
pub const WEYL_CAP: usize = 1_000_000;

/// A root vector together with the dimension of its root space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityRoot {
    pub vector: RationalVector,
    pub multiplicity: u32,
}

impl MultiplicityRoot {
    pub fn new(vector: RationalVector, multiplicity: u32) -> Self {
        assert!(!vector.is_zero(), "a root vector must be nonzero");
        assert!(multiplicity >= 1, "a root multiplicity must be positive");
        MultiplicityRoot {
            vector,
            multiplicity,
        }
    }

    fn simple(coords: &[i64]) -> Self {
        MultiplicityRoot::new(RationalVector::from_i64(coords), 1)
    }
}

/// A realized root system: chosen simple roots, the positive roots they
/// generate, and the multiplicity-weighted half sum `rho`.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub label: String,
    pub dim: usize,
    pub simple_roots: Vec<MultiplicityRoot>,
    pub positive_roots: Vec<MultiplicityRoot>,
    pub rho: RationalVector,
}

/// One element of a finite reflection group, as an exact orthogonal matrix on
/// the realization. `word` is a shortest expression in simple reflections
/// found during enumeration.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: QMatrix,
    pub word: Option<Vec<usize>>,
}

impl RootSystemData {
    /// Assemble a system from explicit parts, recomputing `rho` and checking
    /// that every positive root is a non-negative integer combination of the
    /// simple roots.
    pub fn from_parts(
        label: impl Into<String>,
        dim: usize,
        simple_roots: Vec<MultiplicityRoot>,
        positive_roots: Vec<MultiplicityRoot>,
    ) -> Result<Self> {
        for r in simple_roots.iter().chain(&positive_roots) {
            if r.vector.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.vector.dim(),
                });
            }
        }
        let mut rs = RootSystemData {
            label: label.into(),
            dim,
            simple_roots,
            positive_roots,
            rho: RationalVector::zeros(dim),
        };
        rs.rho = half_sum(&rs);
        if !rs.simple_roots.is_empty() {
            let simples = QMatrix::from_cols(
                &rs.simple_roots
                    .iter()
                    .map(|r| r.vector.clone())
                    .collect::<Vec<_>>(),
            );
            for r in &rs.positive_roots {
                let ok = simples.solve(&r.vector).is_some_and(|x| {
                    x.is_integral() && x.coords().iter().all(|c| *c >= Rat::zero())
                });
                if !ok {
                    return Err(Error::InvalidPair(format!(
                        "positive root {} is not a non-negative integer combination of the simple roots",
                        r.vector
                    )));
                }
            }
        }
        Ok(rs)
    }

    /// The same realization with every root multiplicity replaced by `m`.
    pub fn with_uniform_multiplicity(&self, m: u32) -> RootSystemData {
        assert!(m >= 1);
        let scale = |roots: &[MultiplicityRoot]| {
            roots
                .iter()
                .map(|r| MultiplicityRoot::new(r.vector.clone(), m))
                .collect::<Vec<_>>()
        };
        let mut rs = RootSystemData {
            label: self.label.clone(),
            dim: self.dim,
            simple_roots: scale(&self.simple_roots),
            positive_roots: scale(&self.positive_roots),
            rho: RationalVector::zeros(self.dim),
        };
        rs.rho = half_sum(&rs);
        rs
    }

    /// Orthogonal direct sum on concatenated coordinates.
    pub fn product(&self, other: &RootSystemData) -> RootSystemData {
        let dim = self.dim + other.dim;
        let embed = |v: &RationalVector, offset: usize| {
            let mut c = vec![Rat::zero(); dim];
            for (i, x) in v.coords().iter().enumerate() {
                c[offset + i] = x.clone();
            }
            RationalVector::new(c)
        };
        let both = |a: &[MultiplicityRoot], b: &[MultiplicityRoot]| {
            a.iter()
                .map(|r| MultiplicityRoot::new(embed(&r.vector, 0), r.multiplicity))
                .chain(
                    b.iter()
                        .map(|r| MultiplicityRoot::new(embed(&r.vector, self.dim), r.multiplicity)),
                )
                .collect::<Vec<_>>()
        };
        let mut rs = RootSystemData {
            label: format!("{}x{}", self.label, other.label),
            dim,
            simple_roots: both(&self.simple_roots, &other.simple_roots),
            positive_roots: both(&self.positive_roots, &other.positive_roots),
            rho: RationalVector::zeros(dim),
        };
        rs.rho = half_sum(&rs);
        rs
    }

    /// All roots (positive and negative) with multiplicities.
    pub fn all_roots(&self) -> Vec<MultiplicityRoot> {
        self.positive_roots
            .iter()
            .cloned()
            .chain(
                self.positive_roots
                    .iter()
                    .map(|r| MultiplicityRoot::new(r.vector.neg(), r.multiplicity)),
            )
            .collect()
    }
}

/// Build the standard realization of a classical type or an `x`-separated
/// product, e.g. `"A2"`, `"C3"`, `"A1xA1"`. Type `A_k` lives in `k + 1`
/// coordinates; `A0` is the empty system on one coordinate.
pub fn build_root_system(label: &str) -> Result<RootSystemData> {
    let factors: Vec<&str> = label.split(['x', 'X']).map(str::trim).collect();
    if factors.is_empty() || factors.iter().any(|f| f.is_empty()) {
        return Err(Error::UnsupportedLabel(label.to_string()));
    }
    let mut system: Option<RootSystemData> = None;
    for f in factors {
        let fs = build_simple_factor(f)?;
        system = Some(match system {
            None => fs,
            Some(s) => s.product(&fs),
        });
    }
    Ok(system.unwrap())
}

fn build_simple_factor(label: &str) -> Result<RootSystemData> {
    let err = || Error::UnsupportedLabel(label.to_string());
    let mut chars = label.chars();
    let family = chars.next().ok_or_else(err)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| err())?;

    let e = |i: usize, dim: usize| {
        let mut c = vec![0i64; dim];
        c[i] = 1;
        c
    };
    let pair = |i: usize, j: usize, si: i64, sj: i64, dim: usize| {
        let mut c = vec![0i64; dim];
        c[i] = si;
        c[j] = sj;
        c
    };

    let (dim, simples, positives): (usize, Vec<Vec<i64>>, Vec<Vec<i64>>) = match family {
        'A' => {
            let dim = n + 1;
            let simples = (0..n).map(|i| pair(i, i + 1, 1, -1, dim)).collect();
            let mut pos = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    pos.push(pair(i, j, 1, -1, dim));
                }
            }
            (dim, simples, pos)
        }
        'B' if n >= 1 => {
            let mut simples: Vec<Vec<i64>> = (0..n.saturating_sub(1))
                .map(|i| pair(i, i + 1, 1, -1, n))
                .collect();
            simples.push(e(n - 1, n));
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pos.push(pair(i, j, 1, -1, n));
                    pos.push(pair(i, j, 1, 1, n));
                }
                pos.push(e(i, n));
            }
            (n, simples, pos)
        }
        'C' if n >= 1 => {
            let mut simples: Vec<Vec<i64>> = (0..n.saturating_sub(1))
                .map(|i| pair(i, i + 1, 1, -1, n))
                .collect();
            let mut long = vec![0i64; n];
            long[n - 1] = 2;
            simples.push(long);
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pos.push(pair(i, j, 1, -1, n));
                    pos.push(pair(i, j, 1, 1, n));
                }
                let mut l = vec![0i64; n];
                l[i] = 2;
                pos.push(l);
            }
            (n, simples, pos)
        }
        'D' if n >= 2 => {
            let mut simples: Vec<Vec<i64>> = (0..n - 1).map(|i| pair(i, i + 1, 1, -1, n)).collect();
            simples.push(pair(n - 2, n - 1, 1, 1, n));
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pos.push(pair(i, j, 1, -1, n));
                    pos.push(pair(i, j, 1, 1, n));
                }
            }
            (n, simples, pos)
        }
        _ => return Err(err()),
    };

    let to_roots = |vs: Vec<Vec<i64>>| {
        vs.into_iter()
            .map(|c| MultiplicityRoot::simple(&c))
            .collect::<Vec<_>>()
    };
    // A0 (and only A0) has no roots at all: a one-dimensional torus.
    let simple_roots = to_roots(simples);
    let positive_roots = to_roots(positives);
    let mut rs = RootSystemData {
        label: format!("{family}{n}"),
        dim,
        simple_roots,
        positive_roots,
        rho: RationalVector::zeros(dim),
    };
    rs.rho = half_sum(&rs);
    Ok(rs)
}

/// Multiplicity-weighted half sum of the positive roots.
pub fn half_sum(rs: &RootSystemData) -> RationalVector {
    let mut acc = RationalVector::zeros(rs.dim);
    for r in &rs.positive_roots {
        acc = acc.add(&r.vector.scale(&Rat::from_integer(r.multiplicity.into())));
    }
    acc.scale(&Rat::new(1.into(), 2.into()))
}

/// Exponent functional of the minimal-parabolic modular character: `2 rho`.
/// The character itself is the `q`-power of this functional's pairing
/// against dominance coordinates.
pub fn delta_exponent(rs: &RootSystemData) -> RationalVector {
    rs.rho.scale(&Rat::from_integer(2.into()))
}

/// Reflection matrix `s_a = I - 2 a a^T / <a,a>`.
fn reflection_matrix(alpha: &RationalVector) -> QMatrix {
    let dim = alpha.dim();
    let norm = alpha.dot(alpha);
    let mut m = QMatrix::identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = m.get(i, j) - Rat::from_integer(2.into()) * &alpha[i] * &alpha[j] / &norm;
            m.set(i, j, v);
        }
    }
    m
}

/// Reflect `v` in the simple root with the given index.
pub fn reflect(
    rs: &RootSystemData,
    root_index: usize,
    v: &RationalVector,
) -> Result<RationalVector> {
    let alpha = &rs
        .simple_roots
        .get(root_index)
        .ok_or_else(|| Error::Input(format!("no simple root with index {root_index}")))?
        .vector;
    if v.dim() != rs.dim {
        return Err(Error::DimensionMismatch {
            expected: rs.dim,
            got: v.dim(),
        });
    }
    let c = Rat::from_integer(2.into()) * v.dot(alpha) / alpha.dot(alpha);
    Ok(v.sub(&alpha.scale(&c)))
}

/// Enumerate the group generated by the simple reflections, up to the
/// default safety cap.
pub fn weyl_group(rs: &RootSystemData) -> Result<Vec<WeylElement>> {
    weyl_group_capped(rs, WEYL_CAP)
}

/// Breadth-first closure over simple reflections with exact-matrix
/// deduplication. Output is sorted lexicographically by matrix entries, so
/// enumeration order is canonical.
pub fn weyl_group_capped(rs: &RootSystemData, cap: usize) -> Result<Vec<WeylElement>> {
    let gens: Vec<QMatrix> = rs
        .simple_roots
        .iter()
        .map(|r| reflection_matrix(&r.vector))
        .collect();
    let id = QMatrix::identity(rs.dim);
    let mut seen: HashSet<QMatrix> = HashSet::new();
    let mut out: Vec<(QMatrix, Vec<usize>)> = Vec::new();
    let mut queue: std::collections::VecDeque<(QMatrix, Vec<usize>)> =
        std::collections::VecDeque::new();
    seen.insert(id.clone());
    queue.push_back((id, Vec::new()));
    while let Some((m, word)) = queue.pop_front() {
        out.push((m.clone(), word.clone()));
        for (gi, g) in gens.iter().enumerate() {
            let next = g.mul_mat(&m);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::WeylCapExceeded { cap });
                }
                seen.insert(next.clone());
                let mut w = word.clone();
                w.insert(0, gi);
                queue.push_back((next, w));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out
        .into_iter()
        .map(|(matrix, word)| WeylElement {
            matrix,
            word: Some(word),
        })
        .collect())
}

/// Generators of the dominance cone `{x : <a, x> >= 0 for all simple a}`:
/// the fundamental coweights within the span of the simple roots, plus both
/// signs of every supplied central direction. Central directions must pair
/// to zero against all simple roots.
pub fn dominant_cone_rays(
    rs: &RootSystemData,
    ambient_extra: &[RationalVector],
) -> Result<Vec<RationalVector>> {
    for c in ambient_extra {
        if c.dim() != rs.dim {
            return Err(Error::DimensionMismatch {
                expected: rs.dim,
                got: c.dim(),
            });
        }
        for r in &rs.simple_roots {
            if !r.vector.dot(c).is_zero() {
                return Err(Error::InvalidPair(format!(
                    "central direction {} pairs non-trivially with simple root {}",
                    c, r.vector
                )));
            }
        }
    }
    let mut rays = Vec::new();
    if !rs.simple_roots.is_empty() {
        let simples: Vec<RationalVector> =
            rs.simple_roots.iter().map(|r| r.vector.clone()).collect();
        let k = simples.len();
        let mut gram = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram.set(i, j, simples[i].dot(&simples[j]));
            }
        }
        let inv = gram.inverse().ok_or_else(|| {
            Error::InvalidPair("simple roots are linearly dependent; no coweight basis".into())
        })?;
        for i in 0..k {
            let mut w = RationalVector::zeros(rs.dim);
            for (j, alpha) in simples.iter().enumerate() {
                w = w.add(&alpha.scale(inv.get(j, i)));
            }
            rays.push(w.primitive());
        }
    }
    for c in ambient_extra {
        rays.push(c.primitive());
        rays.push(c.neg().primitive());
    }
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;
    use proptest::prelude::*;

    fn rv(cs: &[i64]) -> RationalVector {
        RationalVector::from_i64(cs)
    }

    #[test]
    fn a1_realization() {
        let rs = build_root_system("A1").unwrap();
        assert_eq!(rs.dim, 2);
        assert_eq!(rs.simple_roots.len(), 1);
        assert_eq!(rs.simple_roots[0].vector, rv(&[1, -1]));
        assert_eq!(rs.rho, RationalVector::from_strs(&["1/2", "-1/2"]).unwrap());
    }

    #[test]
    fn c2_realization() {
        let rs = build_root_system("C2").unwrap();
        let pos: Vec<_> = rs.positive_roots.iter().map(|r| r.vector.clone()).collect();
        assert!(pos.contains(&rv(&[1, -1])));
        assert!(pos.contains(&rv(&[1, 1])));
        assert!(pos.contains(&rv(&[2, 0])));
        assert!(pos.contains(&rv(&[0, 2])));
        assert_eq!(pos.len(), 4);
        assert_eq!(rs.rho, rv(&[2, 1]));
    }

    #[test]
    fn a2_rho() {
        let rs = build_root_system("A2").unwrap();
        assert_eq!(rs.rho, rv(&[1, 0, -1]));
    }

    #[test]
    fn a0_is_empty_torus() {
        let rs = build_root_system("A0").unwrap();
        assert_eq!(rs.dim, 1);
        assert!(rs.simple_roots.is_empty());
        assert!(rs.rho.is_zero());
        assert_eq!(weyl_group(&rs).unwrap().len(), 1);
    }

    #[test]
    fn unsupported_labels() {
        for bad in ["E8", "F4", "G2", "A", "Q3", "", "A1x", "D1"] {
            assert!(build_root_system(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn weyl_orders_match_closed_forms() {
        let cases = [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("A4", 120),
            ("B2", 8),
            ("B3", 48),
            ("B4", 384),
            ("C2", 8),
            ("C3", 48),
            ("C4", 384),
            ("D2", 4),
            ("D3", 24),
            ("D4", 192),
            ("A1xA1", 4),
            ("A2xC2", 48),
        ];
        for (label, order) in cases {
            let rs = build_root_system(label).unwrap();
            assert_eq!(weyl_group(&rs).unwrap().len(), order, "order of W({label})");
        }
    }

    #[test]
    fn simple_reflections_permute_the_other_positive_roots() {
        for label in ["A2", "B2", "C3", "D3"] {
            let rs = build_root_system(label).unwrap();
            for (i, alpha) in rs.simple_roots.iter().enumerate() {
                let others: Vec<&RationalVector> = rs
                    .positive_roots
                    .iter()
                    .map(|r| &r.vector)
                    .filter(|v| {
                        // exclude multiples of the reflecting root
                        let c = v.dot(&alpha.vector);
                        v.scale(&alpha.vector.dot(&alpha.vector)) != alpha.vector.scale(&c)
                    })
                    .collect();
                for v in &others {
                    let image = reflect(&rs, i, v).unwrap();
                    assert!(
                        others.contains(&&image),
                        "{label}: s_{i} moved {v} to {image}, outside the positive roots"
                    );
                }
            }
        }
    }

    #[test]
    fn weyl_words_recompose_to_their_matrices() {
        let rs = build_root_system("C2").unwrap();
        for w in weyl_group(&rs).unwrap() {
            let mut acc = QMatrix::identity(rs.dim);
            for &i in &w.word.unwrap() {
                let alpha = &rs.simple_roots[i].vector;
                let mut refl = QMatrix::identity(rs.dim);
                for r in 0..rs.dim {
                    for c in 0..rs.dim {
                        let v = refl.get(r, c)
                            - Rat::from_integer(2.into()) * &alpha[r] * &alpha[c]
                                / alpha.dot(alpha);
                        refl.set(r, c, v);
                    }
                }
                acc = acc.mul_mat(&refl);
            }
            assert_eq!(acc, w.matrix);
        }
    }

    #[test]
    fn weyl_cap_is_enforced() {
        let rs = build_root_system("B4").unwrap();
        match weyl_group_capped(&rs, 100) {
            Err(Error::WeylCapExceeded { cap }) => assert_eq!(cap, 100),
            other => panic!("expected cap failure, got {other:?}"),
        }
    }

    #[test]
    fn weyl_elements_permute_roots_with_multiplicity() {
        for label in ["A2", "C2", "B2", "D3"] {
            let rs = build_root_system(label).unwrap();
            let roots = rs.all_roots();
            for w in weyl_group(&rs).unwrap() {
                for r in &roots {
                    let image = w.matrix.mul_vec(&r.vector);
                    assert!(
                        roots
                            .iter()
                            .any(|s| s.vector == image && s.multiplicity == r.multiplicity),
                        "W({label}) must permute roots"
                    );
                }
            }
        }
    }

    #[test]
    fn reflect_examples() {
        let a1 = build_root_system("A1").unwrap();
        assert_eq!(reflect(&a1, 0, &rv(&[1, 0])).unwrap(), rv(&[0, 1]));
        assert!(reflect(&a1, 0, &RationalVector::zeros(2))
            .unwrap()
            .is_zero());

        let c2 = build_root_system("C2").unwrap();
        // index 1 is the long simple root 2e2
        assert_eq!(c2.simple_roots[1].vector, rv(&[0, 2]));
        assert_eq!(reflect(&c2, 1, &rv(&[3, 1])).unwrap(), rv(&[3, -1]));

        assert!(reflect(&a1, 0, &rv(&[1, 2, 3])).is_err());
        assert!(reflect(&a1, 5, &rv(&[1, 0])).is_err());
    }

    #[test]
    fn half_sum_with_multiplicities() {
        let a1 = build_root_system("A1").unwrap();
        assert_eq!(
            half_sum(&a1),
            RationalVector::from_strs(&["1/2", "-1/2"]).unwrap()
        );
        let doubled = a1.with_uniform_multiplicity(2);
        assert_eq!(half_sum(&doubled), rv(&[1, -1]));
        assert_eq!(delta_exponent(&doubled), rv(&[2, -2]));
        let c2 = build_root_system("C2").unwrap();
        assert_eq!(delta_exponent(&c2), rv(&[4, 2]));
    }

    #[test]
    fn rho_pairs_to_one_on_simple_coroots() {
        for label in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "D4"] {
            let rs = build_root_system(label).unwrap();
            for r in &rs.simple_roots {
                let coroot = r
                    .vector
                    .scale(&(Rat::from_integer(2.into()) / r.vector.dot(&r.vector)));
                assert_eq!(rs.rho.dot(&coroot), rat_int(1), "rho pairing in {label}");
            }
        }
    }

    #[test]
    fn dominant_cone_ray_examples() {
        let a1 = build_root_system("A1").unwrap();
        let rays = dominant_cone_rays(&a1, &[rv(&[1, 1])]).unwrap();
        assert_eq!(rays, vec![rv(&[1, -1]), rv(&[1, 1]), rv(&[-1, -1])]);

        let c2 = build_root_system("C2").unwrap();
        let rays = dominant_cone_rays(&c2, &[]).unwrap();
        assert_eq!(rays, vec![rv(&[1, 0]), rv(&[1, 1])]);

        let a2 = build_root_system("A2").unwrap();
        let rays = dominant_cone_rays(&a2, &[rv(&[1, 1, 1])]).unwrap();
        assert_eq!(rays.len(), 4);
        assert!(rays.contains(&rv(&[1, 1, 1])));
        assert!(rays.contains(&rv(&[-1, -1, -1])));
        // every ray is dominant
        for ray in &rays {
            for r in &a2.simple_roots {
                assert!(r.vector.dot(ray) >= Rat::zero());
            }
        }
    }

    #[test]
    fn dominant_cone_rejects_bad_central() {
        let a1 = build_root_system("A1").unwrap();
        assert!(dominant_cone_rays(&a1, &[rv(&[1, 0])]).is_err());
    }

    #[test]
    fn cone_rays_positively_span_the_dominance_cone() {
        // non-negative combinations of the rays stay dominant, and dominant
        // points decompose non-negatively over the rays via the solver
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64
        };
        for (label, extra) in [("C2", vec![]), ("A2", vec![rv(&[1, 1, 1])]), ("B3", vec![])] {
            let rs = build_root_system(label).unwrap();
            let rays = dominant_cone_rays(&rs, &extra).unwrap();
            for _ in 0..20 {
                let mut x = RationalVector::zeros(rs.dim);
                for r in &rays {
                    x = x.add(&r.scale(&rat_int(next())));
                }
                for a in &rs.simple_roots {
                    assert!(
                        a.vector.dot(&x) >= Rat::zero(),
                        "{label}: combo left the cone"
                    );
                }
                assert!(
                    crate::simplex::nonneg_solve(&rays, &x).is_feasible(),
                    "{label}: cone point failed to decompose over the rays"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution(coords in proptest::collection::vec(-20i64..20, 3)) {
            let rs = build_root_system("B3").unwrap();
            let v = RationalVector::from_i64(&coords);
            for i in 0..rs.simple_roots.len() {
                let once = reflect(&rs, i, &v).unwrap();
                let twice = reflect(&rs, i, &once).unwrap();
                prop_assert_eq!(twice, v.clone());
            }
        }
    }
}
