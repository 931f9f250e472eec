//! Polyhedral cones from inequality descriptions.
//!
//! A cone `{x : <r, x> >= 0 for every row r}` decomposes as a lineality space
//! (where every row vanishes) plus a pointed cone inside the span of the
//! rows. Extreme rays of the pointed part are found by brute-force subset
//! enumeration, which is exact and entirely adequate at the dimensions this
//! crate meets (rank <= 4, a handful of rows).

use num_traits::{One, Zero};

use crate::linalg::{QMatrix, Rat, RationalVector};

/// Generators of a finitely generated cone: extreme rays modulo the
/// lineality space, plus a basis of the lineality space itself.
#[derive(Clone, Debug)]
pub struct Cone {
    pub rays: Vec<RationalVector>,
    pub lineality: Vec<RationalVector>,
}

impl Cone {
    /// All one-sided generators: the rays together with both signs of each
    /// lineality basis vector.
    pub fn generators(&self) -> Vec<RationalVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.neg());
        }
        g
    }

    /// Dimension of the linear span of the cone.
    pub fn span_dim(&self) -> usize {
        let gens = self.generators();
        if gens.is_empty() {
            return 0;
        }
        QMatrix::from_rows(&gens).rank()
    }
}

/// Weak membership: every inequality is satisfied.
pub fn contains(inequalities: &[RationalVector], x: &RationalVector) -> bool {
    inequalities.iter().all(|r| r.dot(x) >= Rat::zero())
}

/// Strict membership: every inequality that is not identically zero holds
/// strictly. For a full-dimensional cone this is interiority.
pub fn contains_strictly(inequalities: &[RationalVector], x: &RationalVector) -> bool {
    inequalities
        .iter()
        .filter(|r| !r.is_zero())
        .all(|r| r.dot(x) > Rat::zero())
}

/// Extreme rays and lineality of `{x in Q^dim : <r, x> >= 0 for all rows}`.
/// Zero rows are ignored.
pub fn extreme_rays(inequalities: &[RationalVector], dim: usize) -> Cone {
    let rows: Vec<RationalVector> = inequalities
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .collect();
    if rows.is_empty() {
        // the whole space
        let lineality = (0..dim)
            .map(|i| {
                let mut c = vec![Rat::zero(); dim];
                c[i] = Rat::one();
                RationalVector::new(c)
            })
            .collect();
        return Cone {
            rays: Vec::new(),
            lineality,
        };
    }
    let row_mat = QMatrix::from_rows(&rows);
    let lineality: Vec<RationalVector> = row_mat
        .null_space()
        .into_iter()
        .map(|v| v.primitive())
        .collect();

    // Basis of the row space: x = U t parametrizes the orthogonal complement
    // of the lineality space.
    let (rref, pivots) = row_mat.rref();
    let basis: Vec<RationalVector> = (0..pivots.len()).map(|i| rref.row(i)).collect();
    let d = basis.len();

    // Each original row becomes a functional on the t-coordinates.
    let restricted: Vec<RationalVector> = rows
        .iter()
        .map(|r| RationalVector::new(basis.iter().map(|u| r.dot(u)).collect()))
        .collect();

    let mut rays: Vec<RationalVector> = Vec::new();
    let mut push_candidate = |t: &RationalVector| {
        let signs: Vec<i8> = restricted
            .iter()
            .map(|r| {
                let p = r.dot(t);
                if p.is_zero() {
                    0
                } else if p > Rat::zero() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let oriented = if signs.iter().all(|&s| s >= 0) {
            Some(t.clone())
        } else if signs.iter().all(|&s| s <= 0) {
            Some(t.neg())
        } else {
            None
        };
        if let Some(t) = oriented {
            let x: RationalVector = basis
                .iter()
                .zip(t.coords())
                .fold(RationalVector::zeros(dim), |acc, (u, c)| {
                    acc.add(&u.scale(c))
                })
                .primitive();
            if !x.is_zero() && !rays.contains(&x) {
                rays.push(x);
            }
        }
    };

    if d == 1 {
        push_candidate(&RationalVector::from_i64(&[1]));
        push_candidate(&RationalVector::from_i64(&[-1]));
    } else {
        // Candidate rays lie on intersections of d-1 independent active rows.
        for subset in subsets(restricted.len(), d - 1) {
            let sub_rows: Vec<RationalVector> =
                subset.iter().map(|&i| restricted[i].clone()).collect();
            let ns = QMatrix::from_rows(&sub_rows).null_space();
            if ns.len() != 1 {
                continue;
            }
            push_candidate(&ns[0]);
        }
    }
    rays.sort();
    Cone { rays, lineality }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(cs: &[i64]) -> RationalVector {
        RationalVector::from_i64(cs)
    }

    #[test]
    fn c2_dominance_cone() {
        // <e1-e2, x> >= 0 and <2e2, x> >= 0 has extreme rays (1,1) and (1,0).
        let cone = extreme_rays(&[rv(&[1, -1]), rv(&[0, 2])], 2);
        assert!(cone.lineality.is_empty());
        assert_eq!(cone.rays, vec![rv(&[1, 0]), rv(&[1, 1])]);
    }

    #[test]
    fn lineality_is_detected() {
        // single inequality x1 - x2 >= 0 in 3 dims: lineality plane has dim 2
        let cone = extreme_rays(&[rv(&[1, -1, 0])], 3);
        assert_eq!(cone.lineality.len(), 2);
        assert_eq!(cone.rays.len(), 1);
        assert_eq!(cone.rays[0], rv(&[1, -1, 0]));
        assert_eq!(cone.span_dim(), 3);
    }

    #[test]
    fn no_constraints_is_whole_space() {
        let cone = extreme_rays(&[], 2);
        assert!(cone.rays.is_empty());
        assert_eq!(cone.lineality.len(), 2);
        let zero_rows = [RationalVector::zeros(2)];
        let cone = extreme_rays(&zero_rows, 2);
        assert_eq!(cone.lineality.len(), 2);
    }

    #[test]
    fn rays_satisfy_all_inequalities() {
        let rows = [rv(&[1, -1, 0]), rv(&[0, 1, -1]), rv(&[0, 0, 2])];
        let cone = extreme_rays(&rows, 3);
        assert_eq!(cone.rays.len(), 3);
        for r in cone.generators() {
            assert!(contains(&rows, &r));
        }
        assert!(contains_strictly(&rows, &rv(&[3, 2, 1])));
        assert!(!contains_strictly(&rows, &rv(&[3, 3, 1])));
        assert!(!contains(&rows, &rv(&[0, 1, 0])));
    }

    #[test]
    fn a2_cone_with_center_line() {
        // dominance cone of A2 in 3 coordinates: two rays plus the center line
        let rows = [rv(&[1, -1, 0]), rv(&[0, 1, -1])];
        let cone = extreme_rays(&rows, 3);
        assert_eq!(cone.lineality.len(), 1);
        assert_eq!(
            cone.lineality[0].primitive().one_norm(),
            crate::linalg::rat_int(3)
        );
        assert_eq!(cone.rays.len(), 2);
        assert!(cone.rays.contains(&rv(&[2, -1, -1])));
        assert!(cone.rays.contains(&rv(&[1, 1, -2])));
    }

    /// Fuzz for completeness: every small integer point satisfying the
    /// inequalities must decompose non-negatively over the generators, and
    /// every generator must satisfy the inequalities.
    #[test]
    fn fuzz_generators_capture_every_member() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move |lo: i64, hi: i64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            lo + ((state >> 13) % ((hi - lo) as u64)) as i64
        };
        for case in 0..150 {
            let dim = next(1, 4) as usize;
            let n_rows = next(1, 5) as usize;
            let rows: Vec<RationalVector> = (0..n_rows)
                .map(|_| {
                    RationalVector::from_i64(&(0..dim).map(|_| next(-2, 3)).collect::<Vec<_>>())
                })
                .collect();
            let cone = extreme_rays(&rows, dim);
            let generators = cone.generators();
            for g in &generators {
                assert!(
                    contains(&rows, g),
                    "case {case}: generator escapes the cone"
                );
            }
            // scan a small lattice box for members and decompose them
            let mut point = vec![-2i64; dim];
            loop {
                let x = RationalVector::from_i64(&point);
                if contains(&rows, &x) {
                    assert!(
                        crate::simplex::nonneg_solve(&generators, &x).is_feasible(),
                        "case {case}: member {x} not spanned by {generators:?} (rows {rows:?})"
                    );
                }
                let mut i = 0;
                loop {
                    if i == dim {
                        break;
                    }
                    point[i] += 1;
                    if point[i] <= 2 {
                        break;
                    }
                    point[i] = -2;
                    i += 1;
                }
                if i == dim {
                    break;
                }
            }
        }
    }
}
