//! Relative Weyl groups and chamber-transport coset representatives.
//!
//! `W^H` is the Weyl group of the subgroup's torus; `W^{H\G}` is realized as
//! the restrictions to `a_{0,H}` of the ambient Weyl elements stabilizing its
//! image. Each left coset of `W^H` gets the unique representative that
//! transports the common dominant cone (`H`-dominant meets the pullback of
//! ambient-dominant) back into the `H`-dominant cone; those transported cones
//! tile the `H`-dominant cone and the tiling is checked by seeded interior
//! sampling.

use std::collections::HashSet;

use num_traits::Zero;

use crate::cone::{self, Cone};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rat, RationalVector};
use crate::rootsys::weyl_group;
use crate::sympair::SymmetricPairData;

/// The two relative Weyl groups on `a_{0,H}`, plus coset representatives once
/// `coset_representatives` has run.
#[derive(Clone, Debug)]
pub struct RelativeWeylData {
    pub w_h: Vec<QMatrix>,
    pub w_hg: Vec<QMatrix>,
    pub coset_reps: Vec<CosetRep>,
    /// Per representative: generators of the transported common dominant cone.
    pub partition_cones: Vec<Vec<RationalVector>>,
}

/// A chosen representative together with the members of its left coset
/// (indices into `w_hg`).
#[derive(Clone, Debug)]
pub struct CosetRep {
    pub matrix: QMatrix,
    pub members: Vec<usize>,
}

/// Outcome of the partition check.
#[derive(Clone, Debug)]
pub struct PartitionReport {
    pub samples: usize,
    pub coverage: Vec<usize>,
    pub resamples: usize,
}

/// Inequality rows cutting the common dominant cone out of `a_{0,H}`:
/// the simple roots of the subgroup plus the nonzero restrictions of the
/// ambient simple roots.
pub fn common_dominant_inequalities(pair: &SymmetricPairData) -> Vec<RationalVector> {
    let mut rows: Vec<RationalVector> = pair
        .sub
        .simple_roots
        .iter()
        .map(|r| r.vector.clone())
        .collect();
    for f in pair.restricted_simple_roots().functionals {
        if !rows.contains(&f) {
            rows.push(f);
        }
    }
    rows
}

/// Extreme rays and lineality of the common dominant cone.
pub fn common_dominant_cone(pair: &SymmetricPairData) -> Cone {
    cone::extreme_rays(&common_dominant_inequalities(pair), pair.sub.dim)
}

/// Compute `W^H` and `W^{H\G}` (groups only; representatives come later).
///
/// Fails when an element of `W^H` is not found inside `W^{H\G}`, which
/// signals inconsistent pair data, and when an induced matrix does not
/// preserve the standard pairing, which signals a realization whose
/// embedding distorts the invariant form.
pub fn relative_weyl(pair: &SymmetricPairData) -> Result<RelativeWeylData> {
    let ambient_group = weyl_group(&pair.ambient)?;
    let iota = &pair.embedding;
    let m = pair.sub.dim;

    let mut w_hg_set: HashSet<QMatrix> = HashSet::new();
    for w in &ambient_group {
        let mut cols: Vec<RationalVector> = Vec::with_capacity(m);
        let mut stabilizes = true;
        for j in 0..m {
            let image = w.matrix.mul_vec(&iota.col(j));
            match iota.solve(&image) {
                Some(x) => cols.push(x),
                None => {
                    stabilizes = false;
                    break;
                }
            }
        }
        if stabilizes {
            w_hg_set.insert(QMatrix::from_cols(&cols));
        }
    }
    let mut w_hg: Vec<QMatrix> = w_hg_set.into_iter().collect();
    w_hg.sort();

    for x in &w_hg {
        if x.transpose().mul_mat(x) != QMatrix::identity(m) {
            return Err(Error::InvalidPair(format!(
                "induced relative Weyl element {x} does not preserve the standard pairing; \
                 choose coordinates on the sub-torus in which the invariant form is standard"
            )));
        }
    }

    let w_h: Vec<QMatrix> = weyl_group(&pair.sub)?
        .into_iter()
        .map(|e| e.matrix)
        .collect();
    for h in &w_h {
        if !w_hg.contains(h) {
            return Err(Error::InvalidPair(format!(
                "subgroup Weyl element {h} is not the restriction of any ambient Weyl element; \
                 the pair data is inconsistent"
            )));
        }
    }

    Ok(RelativeWeylData {
        w_h,
        w_hg,
        coset_reps: Vec::new(),
        partition_cones: Vec::new(),
    })
}

fn is_h_dominant(pair: &SymmetricPairData, x: &RationalVector) -> bool {
    pair.sub
        .simple_roots
        .iter()
        .all(|b| b.vector.dot(x) >= Rat::zero())
}

/// Select, in each left coset `w W^H`, the representative transporting the
/// common dominant cone into the `H`-dominant cone; record the transported
/// cone generators. Fails with diagnostics when a coset offers no valid
/// representative or more than one.
pub fn coset_representatives(pair: &SymmetricPairData, rw: &mut RelativeWeylData) -> Result<()> {
    let cone = common_dominant_cone(pair);
    if cone.span_dim() != pair.sub.dim {
        return Err(Error::RepresentativeSelection(format!(
            "the common dominant cone spans dimension {} < {}",
            cone.span_dim(),
            pair.sub.dim
        )));
    }
    let generators = cone.generators();

    // partition w_hg into left cosets of w_h
    let mut assigned: Vec<Option<usize>> = vec![None; rw.w_hg.len()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for i in 0..rw.w_hg.len() {
        if assigned[i].is_some() {
            continue;
        }
        let coset_id = cosets.len();
        let mut members = Vec::new();
        for h in &rw.w_h {
            let prod = rw.w_hg[i].mul_mat(h);
            let j = rw
                .w_hg
                .iter()
                .position(|g| *g == prod)
                .expect("coset member must lie in the group");
            if assigned[j].is_none() {
                assigned[j] = Some(coset_id);
                members.push(j);
            }
        }
        members.sort_unstable();
        cosets.push(members);
    }
    let expected = rw.w_hg.len() / rw.w_h.len();
    if cosets.len() != expected {
        return Err(Error::RepresentativeSelection(format!(
            "found {} cosets, expected {}",
            cosets.len(),
            expected
        )));
    }

    let mut reps = Vec::new();
    let mut partition_cones = Vec::new();
    for members in &cosets {
        let mut valid: Vec<(usize, QMatrix, Vec<RationalVector>)> = Vec::new();
        for &j in members {
            let w = &rw.w_hg[j];
            let w_inv = w.inverse().expect("relative Weyl matrices are invertible");
            let transported: Vec<RationalVector> =
                generators.iter().map(|g| w_inv.mul_vec(g)).collect();
            if transported.iter().all(|t| is_h_dominant(pair, t)) {
                valid.push((j, w.clone(), transported));
            }
        }
        match valid.len() {
            1 => {
                let (_, matrix, transported) = valid.into_iter().next().unwrap();
                reps.push(CosetRep {
                    matrix,
                    members: members.clone(),
                });
                partition_cones.push(transported);
            }
            0 => {
                return Err(Error::RepresentativeSelection(format!(
                    "no chamber-transport representative in coset {{{}}}",
                    coset_listing(rw, members)
                )))
            }
            n => {
                return Err(Error::RepresentativeSelection(format!(
                    "{n} chamber-transport representatives in coset {{{}}}",
                    coset_listing(rw, members)
                )))
            }
        }
    }
    rw.coset_reps = reps;
    rw.partition_cones = partition_cones;
    Ok(())
}

fn coset_listing(rw: &RelativeWeylData, members: &[usize]) -> String {
    members
        .iter()
        .map(|&j| rw.w_hg[j].to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Small deterministic PRNG so partition verification is reproducible.
pub struct SampleRng(u64);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(seed.wrapping_mul(2685821657736338717).wrapping_add(1))
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo < hi);
        lo + (self.next_u64() % ((hi - lo) as u64)) as i64
    }
}

/// Draw seeded random points in the interior of the `H`-dominant cone and
/// assert each lies strictly inside exactly one transported cone. Points on
/// a wall are redrawn; genuine coverage gaps and overlaps fail with the
/// witness point.
pub fn verify_partition(
    pair: &SymmetricPairData,
    rw: &RelativeWeylData,
    samples: usize,
    seed: u64,
) -> Result<PartitionReport> {
    if rw.coset_reps.is_empty() {
        return Err(Error::RepresentativeSelection(
            "coset representatives have not been computed".into(),
        ));
    }
    let h_rows: Vec<RationalVector> = pair
        .sub
        .simple_roots
        .iter()
        .map(|r| r.vector.clone())
        .collect();
    let h_cone = cone::extreme_rays(&h_rows, pair.sub.dim);
    let ae_rows = common_dominant_inequalities(pair);

    let mut rng = SampleRng::new(seed);
    let mut coverage = vec![0usize; rw.coset_reps.len()];
    let mut resamples = 0usize;
    let budget = samples * 100;

    let mut accepted = 0usize;
    while accepted < samples {
        if resamples > budget {
            return Err(Error::RepresentativeSelection(
                "partition sampling kept hitting walls; the cone data is degenerate".into(),
            ));
        }
        let mut x = RationalVector::zeros(pair.sub.dim);
        for r in &h_cone.rays {
            let lambda = Rat::from_integer(rng.next_in(1, 10).into());
            x = x.add(&r.scale(&lambda));
        }
        for l in &h_cone.lineality {
            let mu = Rat::from_integer(rng.next_in(-9, 10).into());
            x = x.add(&l.scale(&mu));
        }
        if !cone::contains_strictly(&h_rows, &x) {
            resamples += 1;
            continue;
        }

        let mut weak = Vec::new();
        let mut strict = Vec::new();
        for (idx, rep) in rw.coset_reps.iter().enumerate() {
            let image = rep.matrix.mul_vec(&x);
            if cone::contains(&ae_rows, &image) {
                weak.push(idx);
                if cone::contains_strictly(&ae_rows, &image) {
                    strict.push(idx);
                }
            }
        }
        match (weak.len(), strict.len()) {
            (0, _) => {
                return Err(Error::RepresentativeSelection(format!(
                    "interior point {x} is covered by no transported cone"
                )))
            }
            (_, s) if s >= 2 => {
                return Err(Error::RepresentativeSelection(format!(
                    "interior point {x} lies strictly inside {s} transported cones"
                )))
            }
            (1, 1) => {
                coverage[strict[0]] += 1;
                accepted += 1;
            }
            _ => {
                // on a wall between pieces: excluded by interior sampling
                resamples += 1;
            }
        }
    }
    Ok(PartitionReport {
        samples,
        coverage,
        resamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympair::preset;

    #[test]
    fn sp4_relative_weyl_is_c2() {
        let pair = preset("sp2n_in_gl2n", "2").unwrap();
        let rw = relative_weyl(&pair).unwrap();
        assert_eq!(rw.w_h.len(), 8);
        assert_eq!(rw.w_hg.len(), 8);
    }

    #[test]
    fn galois_groups_coincide() {
        let pair = preset("galois", "A1").unwrap();
        let rw = relative_weyl(&pair).unwrap();
        assert_eq!(rw.w_h.len(), 2);
        assert_eq!(rw.w_hg, rw.w_h);
    }

    #[test]
    fn group_case_diagonal_stabilizer() {
        let pair = preset("group_case", "A1").unwrap();
        let rw = relative_weyl(&pair).unwrap();
        assert_eq!(rw.w_h.len(), 2);
        assert_eq!(rw.w_hg.len(), 2);
    }

    #[test]
    fn glne_stabilizer_collapses_to_w_h() {
        for n in ["1", "2", "3"] {
            let pair = preset("glnE_in_gl2n", n).unwrap();
            let rw = relative_weyl(&pair).unwrap();
            assert_eq!(rw.w_hg.len(), rw.w_h.len(), "glnE_in_gl2n:{n}");
        }
    }

    #[test]
    fn single_coset_presets_use_identity_representative() {
        for reference in ["galois:A2", "galois:C2", "group_case:A1", "sp2n_in_gl2n:2"] {
            let pair = crate::sympair::preset_from_ref(reference).unwrap();
            let mut rw = relative_weyl(&pair).unwrap();
            coset_representatives(&pair, &mut rw).unwrap();
            assert_eq!(rw.coset_reps.len(), 1, "{reference}");
            assert_eq!(
                rw.coset_reps[0].matrix,
                QMatrix::identity(pair.sub.dim),
                "{reference}"
            );
        }
    }

    #[test]
    fn coset_count_divides_group_order() {
        for reference in [
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
        ] {
            let pair = crate::sympair::preset_from_ref(reference).unwrap();
            let mut rw = relative_weyl(&pair).unwrap();
            coset_representatives(&pair, &mut rw).unwrap();
            assert_eq!(
                rw.coset_reps.len(),
                rw.w_hg.len() / rw.w_h.len(),
                "{reference}"
            );
        }
    }

    #[test]
    fn w_hg_permutes_restricted_roots() {
        for reference in [
            "galois:A2",
            "galois:C2",
            "group_case:A2",
            "sp2n_in_gl2n:2",
            "sp2n_in_gl2n:3",
            "glnE_in_gl2n:2",
            "glnE_in_gl2n:3",
        ] {
            let pair = crate::sympair::preset_from_ref(reference).unwrap();
            let restricted = pair.restricted_positive_roots();
            let all: Vec<RationalVector> = restricted
                .iter()
                .cloned()
                .chain(restricted.iter().map(|f| f.neg()))
                .collect();
            let rw = relative_weyl(&pair).unwrap();
            for w in &rw.w_hg {
                for f in &all {
                    let image = w.mul_vec(f);
                    assert!(
                        all.contains(&image),
                        "{reference}: {w} moved {f} out of the restricted root set"
                    );
                }
            }
        }
    }

    #[test]
    fn partition_holds_on_presets() {
        for reference in [
            "galois:A1",
            "sp2n_in_gl2n:2",
            "group_case:A1",
            "glnE_in_gl2n:2",
        ] {
            let pair = crate::sympair::preset_from_ref(reference).unwrap();
            let mut rw = relative_weyl(&pair).unwrap();
            coset_representatives(&pair, &mut rw).unwrap();
            let report = verify_partition(&pair, &rw, 100, 42).unwrap();
            assert_eq!(report.samples, 100);
            assert_eq!(report.coverage.iter().sum::<usize>(), 100, "{reference}");
        }
    }

    #[test]
    fn partition_is_reproducible_for_a_fixed_seed() {
        let pair = preset("sp2n_in_gl2n", "2").unwrap();
        let mut rw = relative_weyl(&pair).unwrap();
        coset_representatives(&pair, &mut rw).unwrap();
        let a = verify_partition(&pair, &rw, 25, 7).unwrap();
        let b = verify_partition(&pair, &rw, 25, 7).unwrap();
        assert_eq!(a.coverage, b.coverage);
        assert_eq!(a.resamples, b.resamples);
    }

    /// The split torus inside SL2: the relative Weyl group strictly exceeds
    /// the subgroup's (trivial) Weyl group, so the coset space has two
    /// elements and the dominant line is tiled by two opposite rays.
    fn sl2_split_torus() -> SymmetricPairData {
        SymmetricPairData {
            name: "sl2_split_torus".into(),
            ambient: crate::rootsys::build_root_system("A1").unwrap(),
            sub: crate::rootsys::build_root_system("A0").unwrap(),
            embedding: QMatrix::from_cols(&[RationalVector::from_i64(&[1, -1])]),
            central_h: Vec::new(),
            central_z: Vec::new(),
        }
    }

    #[test]
    fn linear_period_pair_tiles_with_six_pieces() {
        let pair = SymmetricPairData {
            name: "gl4_linear_period".into(),
            ambient: crate::rootsys::build_root_system("A3").unwrap(),
            sub: crate::rootsys::build_root_system("A1xA1").unwrap(),
            embedding: QMatrix::identity(4),
            central_h: vec![RationalVector::from_i64(&[1, 1, 1, 1])],
            central_z: vec![RationalVector::from_i64(&[1, 1, 1, 1])],
        };
        let mut rw = relative_weyl(&pair).unwrap();
        assert_eq!(rw.w_h.len(), 4);
        assert_eq!(rw.w_hg.len(), 24);
        coset_representatives(&pair, &mut rw).unwrap();
        assert_eq!(rw.coset_reps.len(), 6);
        for rep in &rw.coset_reps {
            assert_eq!(rep.members.len(), 4);
        }
        let report = verify_partition(&pair, &rw, 120, 11).unwrap();
        assert_eq!(report.coverage.iter().sum::<usize>(), 120);
        assert!(
            report.coverage.iter().all(|&c| c > 0),
            "all six chambers must be hit: {:?}",
            report.coverage
        );
    }

    #[test]
    fn split_torus_pair_has_two_cosets() {
        let pair = sl2_split_torus();
        assert!(pair.validate().unwrap().all_checks_hold());
        let mut rw = relative_weyl(&pair).unwrap();
        assert_eq!(rw.w_h.len(), 1);
        assert_eq!(rw.w_hg.len(), 2);
        coset_representatives(&pair, &mut rw).unwrap();
        assert_eq!(rw.coset_reps.len(), 2);
        let report = verify_partition(&pair, &rw, 100, 5).unwrap();
        assert_eq!(report.coverage.iter().sum::<usize>(), 100);
        assert!(
            report.coverage.iter().all(|&c| c > 0),
            "both half-lines must be hit: {:?}",
            report.coverage
        );
    }
}
