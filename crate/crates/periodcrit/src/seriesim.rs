//! Numeric corroboration: the exponential lattice series attached to a pair
//! and a coset representative.
//!
//! The lattice point `x = sum k_i * ray_i` over the common dominant cone
//! contributes `q^{-<exp, x>} * (1 + sum k_i |ray_i|_1)^{-N}`. The symbolic
//! decision is sign-only and exact; partial sums are accumulated as exact
//! rationals in a fixed enumeration order and rendered to floats at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rat, RationalVector};
use crate::relweyl::{common_dominant_cone, RelativeWeylData};
use crate::sympair::SymmetricPairData;

/// Default cap on enumerated lattice points.
pub const LATTICE_CAP: u64 = 10_000_000;

/// An exponential lattice series over the free monoid on `rays`.
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    /// Exponent functional paired against lattice points.
    pub exponent: RationalVector,
    /// Linearly independent primitive ray generators.
    pub rays: Vec<RationalVector>,
    /// Residue-field cardinality model, `>= 2`.
    pub q: u32,
    /// Polynomial decay power `N`.
    pub decay: u32,
    /// Default maximal coefficient per ray.
    pub cutoff: u32,
}

impl SeriesSpec {
    pub fn new(
        exponent: RationalVector,
        rays: Vec<RationalVector>,
        q: u32,
        decay: u32,
        cutoff: u32,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::Input(format!("q must be >= 2, got {q}")));
        }
        if cutoff < 1 {
            return Err(Error::Input("cutoff must be >= 1".into()));
        }
        for r in &rays {
            if r.dim() != exponent.dim() {
                return Err(Error::DimensionMismatch {
                    expected: exponent.dim(),
                    got: r.dim(),
                });
            }
        }
        if !rays.is_empty() && QMatrix::from_rows(&rays).rank() != rays.len() {
            return Err(Error::Input(
                "series rays must be linearly independent".into(),
            ));
        }
        Ok(SeriesSpec {
            exponent,
            rays,
            q,
            decay,
            cutoff,
        })
    }

    /// Pairings of the exponent against each ray.
    pub fn pairings(&self) -> Vec<Rat> {
        self.rays.iter().map(|r| self.exponent.dot(r)).collect()
    }
}

/// Convergence decision plus numeric partial sums.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesReport {
    /// Symbolic: some polynomial power makes the series converge.
    pub converges: bool,
    /// Number of rays on which the exponent pairs to zero.
    pub zero_face_dim: usize,
    /// `(cutoff, value)` pairs, weakly increasing in the cutoff.
    pub partial_sums: Vec<(u32, f64)>,
    /// Whether the empirical behavior matches the symbolic decision.
    pub consistent: bool,
}

/// Build the series for one coset representative: rays are the generators of
/// the common dominant cone with the quotiented central directions removed,
/// and the exponent is that representative's `rho^w`.
///
/// When a pairing is a non-integral rational the exponent is rescaled by the
/// common denominator so that terms stay exactly representable; convergence
/// is unaffected.
pub fn series_from_pair(
    pair: &SymmetricPairData,
    rw: &RelativeWeylData,
    rep_index: usize,
    q: u32,
    decay: u32,
    cutoff: u32,
) -> Result<SeriesSpec> {
    if rep_index >= rw.coset_reps.len() {
        return Err(Error::Input(format!(
            "representative index {rep_index} out of range ({} available)",
            rw.coset_reps.len()
        )));
    }
    let rhos = crate::criterion::rho_w(pair, rw)?;
    let exponent = rhos[rep_index].functional.clone();

    let cone = common_dominant_cone(pair);
    let central = &pair.central_z;

    // residual lineality beyond the quotiented center cannot be summed over
    // a free monoid; require it to be declared in central_Z
    let quotient_rank = if central.is_empty() {
        0
    } else {
        QMatrix::from_rows(central).rank()
    };
    if cone.lineality.len() > quotient_rank {
        return Err(Error::InvalidPair(
            "the summation cone has central directions not listed in central_Z; \
             add them so the series is taken modulo the center"
                .into(),
        ));
    }

    let mut rays = Vec::new();
    for ray in &cone.rays {
        let projected = project_off(ray, central);
        if projected.is_zero() {
            continue;
        }
        let p = projected.primitive();
        if !rays.contains(&p) {
            rays.push(p);
        }
    }

    // clear denominators of the ray pairings
    let mut scaled = exponent;
    let mut den_lcm = BigInt::one();
    for r in &rays {
        den_lcm = den_lcm.lcm(scaled.dot(r).denom());
    }
    if !den_lcm.is_one() {
        scaled = scaled.scale(&Rat::from_integer(den_lcm));
    }

    SeriesSpec::new(scaled, rays, q, decay, cutoff)
}

/// Orthogonal projection of `v` off the span of `dirs`.
fn project_off(v: &RationalVector, dirs: &[RationalVector]) -> RationalVector {
    if dirs.is_empty() {
        return v.clone();
    }
    // least-squares component of v inside span(dirs), subtracted off
    let basis = QMatrix::from_cols(dirs);
    let gram = basis.transpose().mul_mat(&basis);
    let rhs = basis.transpose().mul_vec(v);
    match gram.inverse() {
        Some(inv) => {
            let coeffs = inv.mul_vec(&rhs);
            v.sub(&basis.mul_vec(&coeffs))
        }
        None => {
            // dependent spanning set: reduce to a basis first
            let independent: Vec<RationalVector> = {
                let mut acc: Vec<RationalVector> = Vec::new();
                for d in dirs {
                    let mut trial = acc.clone();
                    trial.push(d.clone());
                    if QMatrix::from_rows(&trial).rank() == trial.len() {
                        acc = trial;
                    }
                }
                acc
            };
            project_off(v, &independent)
        }
    }
}

/// True exactly when every ray pairing is `>= 0`; then any decay power
/// exceeding the number of zero pairings makes the series converge.
/// Also reports that zero-face count.
pub fn decide_convergence(spec: &SeriesSpec) -> (bool, usize) {
    let pairings = spec.pairings();
    let zero_face = pairings.iter().filter(|p| p.is_zero()).count();
    let converges = pairings.iter().all(|p| !p.is_negative());
    (converges, zero_face)
}

fn rat_q_pow(q: u32, e: &BigInt) -> Rat {
    let mag = e.magnitude().to_u32().expect("exponent fits in u32");
    let p = BigInt::from(q).pow(mag);
    if e.is_negative() {
        Rat::new(BigInt::one(), p)
    } else {
        Rat::from_integer(p)
    }
}

/// Exact partial sums at each cutoff (maximal coefficient per ray), rendered
/// as floats. Enumeration order is fixed, and the accumulation is exact, so
/// the report is deterministic.
pub fn partial_sums(spec: &SeriesSpec, cutoffs: &[u32]) -> Result<SeriesReport> {
    partial_sums_capped(spec, cutoffs, LATTICE_CAP)
}

pub fn partial_sums_capped(spec: &SeriesSpec, cutoffs: &[u32], cap: u64) -> Result<SeriesReport> {
    if cutoffs.is_empty() {
        return Err(Error::Input("at least one cutoff is required".into()));
    }
    if cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("cutoffs must be strictly increasing".into()));
    }
    let pairings = spec.pairings();
    if pairings.iter().any(|p| !p.denom().is_one()) {
        return Err(Error::NonIntegralExponent);
    }
    let pair_ints: Vec<BigInt> = pairings.iter().map(|p| p.numer().clone()).collect();
    let weights: Vec<BigInt> = spec
        .rays
        .iter()
        .map(|r| {
            let n = r.one_norm();
            debug_assert!(n.denom().is_one(), "primitive rays have integral norms");
            n.numer().clone()
        })
        .collect();

    let d = spec.rays.len();
    let max_cut = *cutoffs.last().unwrap() as u64;
    let mut points: u64 = 1;
    for _ in 0..d {
        points = points.saturating_mul(max_cut + 1);
        if points > cap {
            return Err(Error::LatticeCapExceeded { cap });
        }
    }

    let (converges, zero_face_dim) = decide_convergence(spec);

    // The q-exponent -s and the norm sum t stay small, so the hot loop runs
    // on i64 bookkeeping. Terms sharing a norm sum share the denominator
    // q^shift * (1+t)^N; their numerators q^{-s-e_min} accumulate as plain
    // integers, and the exact rational combine happens once per bucket.
    let p_small: Vec<i64> = pair_ints
        .iter()
        .map(|p| p.to_i64().ok_or(Error::NonIntegralExponent))
        .collect::<Result<_>>()?;
    let w_small: Vec<i64> = weights
        .iter()
        .map(|w| w.to_i64().expect("primitive ray norms are small"))
        .collect();
    let c = max_cut as i64;
    let e_min: i64 = p_small.iter().map(|&p| -c * p.max(0)).sum();
    let e_max: i64 = p_small.iter().map(|&p| c * (-p).max(0)).sum();
    let t_max: i64 = w_small.iter().map(|&w| c * w).sum();

    let mut q_pow: Vec<BigInt> = Vec::with_capacity((e_max - e_min + 1) as usize);
    q_pow.push(BigInt::one());
    for _ in 0..(e_max - e_min) {
        q_pow.push(q_pow.last().unwrap() * spec.q);
    }
    let shift = (-e_min) as u32; // common denominator q^shift

    let mut buckets: Vec<Vec<BigInt>> =
        vec![vec![BigInt::zero(); (t_max + 1) as usize]; cutoffs.len()];
    let mut k = vec![0u64; d];
    loop {
        let max_coord = k.iter().copied().max().unwrap_or(0);
        let tier = cutoffs
            .iter()
            .position(|&c| max_coord <= c as u64)
            .expect("coordinates stay within the largest cutoff");
        let mut s = 0i64;
        let mut t = 0i64;
        for i in 0..d {
            s += p_small[i] * k[i] as i64;
            t += w_small[i] * k[i] as i64;
        }
        buckets[tier][t as usize] += &q_pow[(-s - e_min) as usize];

        // odometer
        let mut i = 0;
        loop {
            if i == d {
                break;
            }
            k[i] += 1;
            if k[i] <= max_cut {
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
    }

    let denom_q = BigInt::from(spec.q).pow(shift);
    let mut exact_sums: Vec<Rat> = Vec::with_capacity(cutoffs.len());
    let mut acc = Rat::zero();
    for bucket in buckets {
        for (t, numer) in bucket.into_iter().enumerate() {
            if numer.is_zero() {
                continue;
            }
            let poly = BigInt::from(1 + t as u64).pow(spec.decay);
            acc += Rat::new(numer, &denom_q * poly);
        }
        exact_sums.push(acc.clone());
    }

    let consistent = consistency(spec, &pair_ints, &weights, converges, &exact_sums, cutoffs);
    let rendered: Vec<(u32, f64)> = cutoffs
        .iter()
        .zip(&exact_sums)
        .map(|(&c, s)| (c, s.to_f64().unwrap_or(f64::INFINITY)))
        .collect();

    Ok(SeriesReport {
        converges,
        zero_face_dim,
        partial_sums: rendered,
        consistent,
    })
}

/// Empirical agreement with the symbolic decision.
///
/// Convergent series must show weakly shrinking increments across cutoff
/// windows. Divergent series must grow strictly with accelerating
/// increments, the final window must contain at least the predicted boundary
/// term `q^{g c} (1 + w c)^{-N}` of the fastest-growing ray, and with three
/// or more cutoffs the final increment must dominate the entire sum at the
/// second-to-last cutoff.
fn consistency(
    spec: &SeriesSpec,
    pair_ints: &[BigInt],
    weights: &[BigInt],
    converges: bool,
    sums: &[Rat],
    cutoffs: &[u32],
) -> bool {
    let increments: Vec<Rat> = sums.windows(2).map(|w| &w[1] - &w[0]).collect();
    if converges {
        return increments.windows(2).all(|w| w[1] <= w[0]);
    }
    if sums.windows(2).any(|w| w[1] <= w[0]) {
        return false;
    }
    if !increments.windows(2).all(|w| w[1] > w[0]) {
        return false;
    }
    if let Some(last) = increments.last() {
        // fastest-growing ray: most negative pairing, then lightest
        let star = (0..spec.rays.len())
            .filter(|&i| pair_ints[i].is_negative())
            .min_by_key(|&i| (pair_ints[i].clone(), weights[i].clone()))
            .expect("a divergent series has a negative pairing");
        let growth = -&pair_ints[star];
        let w = &weights[star];
        let c_last = *cutoffs.last().unwrap();
        let corner = rat_q_pow(spec.q, &(growth * BigInt::from(c_last)))
            / Rat::from_integer((BigInt::one() + w * BigInt::from(c_last)).pow(spec.decay));
        if last < &corner {
            return false;
        }
        if sums.len() >= 3 && last <= &sums[sums.len() - 2] {
            return false;
        }
    }
    true
}

/// Canonical JSON for a series report.
pub fn report_to_json(report: &SeriesReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

pub fn report_from_json(json: &str) -> Result<SeriesReport> {
    serde_json::from_str(json).map_err(|e| Error::Input(format!("series report: {e}")))
}
