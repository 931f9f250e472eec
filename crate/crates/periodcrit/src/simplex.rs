//! Certificate-producing exact feasibility solver.
//!
//! Decides whether a target vector is a non-negative rational combination of
//! given columns, by a phase-I simplex over `BigRational` with Bland's rule
//! (no cycling, guaranteed termination, no floating point anywhere). Both
//! outcomes carry a certificate that is re-verified by substitution before
//! being returned:
//!
//! * feasible: coefficients `c >= 0` with `sum c_i d_i = f`;
//! * infeasible: a separating functional `y` with `<y, d_i> >= 0` for every
//!   column and `<y, f> < 0`.

use num_traits::{One, Signed, Zero};

use crate::linalg::{Rat, RationalVector};

/// Outcome of a non-negative combination solve.
#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible { coefficients: Vec<Rat> },
    Infeasible { witness: RationalVector },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Decide `exists c >= 0 : sum c_i columns_i = target` with certificates.
/// All columns must share the target's dimension.
pub fn nonneg_solve(columns: &[RationalVector], target: &RationalVector) -> Feasibility {
    let m = target.dim();
    let k = columns.len();
    for c in columns {
        assert_eq!(c.dim(), m, "column dimension mismatch");
    }

    if k == 0 {
        return if target.is_zero() {
            verify(
                columns,
                target,
                Feasibility::Feasible {
                    coefficients: vec![],
                },
            )
        } else {
            verify(
                columns,
                target,
                Feasibility::Infeasible {
                    witness: target.neg().primitive(),
                },
            )
        };
    }

    // Sign-normalize rows so the right-hand side is non-negative, then add
    // one artificial variable per row and minimize their sum.
    let mut flip = vec![false; m];
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        flip[i] = target[i] < Rat::zero();
        let s = if flip[i] { -Rat::one() } else { Rat::one() };
        let mut row: Vec<Rat> = Vec::with_capacity(k + m + 1);
        for col in columns {
            row.push(&col[i] * &s);
        }
        for j in 0..m {
            row.push(if j == i { Rat::one() } else { Rat::zero() });
        }
        row.push(&target[i] * &s);
        tab.push(row);
    }
    let width = k + m + 1;
    let rhs = width - 1;

    // Reduced-cost row for phase I: z_j = y * A_j - cost_j with the all-ones
    // artificial cost; initially y = (1,...,1).
    let mut z: Vec<Rat> = (0..width)
        .map(|j| {
            let col_sum: Rat = tab.iter().map(|row| row[j].clone()).sum();
            if (k..k + m).contains(&j) {
                col_sum - Rat::one()
            } else {
                col_sum
            }
        })
        .collect();

    let mut basis: Vec<usize> = (k..k + m).collect();

    // Bland: entering variable = smallest index with positive reduced cost.
    while let Some(enter) = (0..k + m).find(|&j| z[j] > Rat::zero()) {
        // Ratio test; Bland ties broken by smallest basic variable index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if tab[i][enter] > Rat::zero() {
                let ratio = &tab[i][rhs] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Unbounded phase-I objective cannot happen: it is bounded above
            // by construction. Guard anyway.
            unreachable!("phase-I simplex cannot be unbounded");
        };
        // Pivot on (leave, enter).
        let piv = tab[leave][enter].clone();
        for v in tab[leave].iter_mut() {
            *v = &*v / &piv;
        }
        let pivot_row = tab[leave].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * p;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (v, p) in z.iter_mut().zip(&pivot_row) {
                *v = &*v - &f * p;
            }
        }
        basis[leave] = enter;
    }

    let objective = z[rhs].clone();
    let outcome = if objective.is_zero() {
        let mut coefficients = vec![Rat::zero(); k];
        for (i, &b) in basis.iter().enumerate() {
            if b < k {
                coefficients[b] = tab[i][rhs].clone();
            }
        }
        Feasibility::Feasible { coefficients }
    } else {
        // Dual vector from the reduced costs of the artificial columns:
        // z_{k+i} = y_i - 1. At optimality y * A_j <= 0 for structural
        // columns and y * f' = objective > 0; undoing the row flips and
        // negating gives the separating functional.
        let y: Vec<Rat> = (0..m)
            .map(|i| {
                let yi = &z[k + i] + Rat::one();
                let signed = if flip[i] { -yi } else { yi };
                -signed
            })
            .collect();
        Feasibility::Infeasible {
            witness: RationalVector::new(y).primitive(),
        }
    };
    verify(columns, target, outcome)
}

/// Re-verify a certificate by direct substitution; panics on violation since
/// that would be a solver bug, never bad input.
fn verify(
    columns: &[RationalVector],
    target: &RationalVector,
    outcome: Feasibility,
) -> Feasibility {
    match &outcome {
        Feasibility::Feasible { coefficients } => {
            assert_eq!(coefficients.len(), columns.len());
            let mut acc = RationalVector::zeros(target.dim());
            for (c, col) in coefficients.iter().zip(columns) {
                assert!(
                    !c.is_negative(),
                    "feasible certificate has a negative coefficient"
                );
                acc = acc.add(&col.scale(c));
            }
            assert_eq!(
                &acc, target,
                "feasible certificate does not reconstruct the target"
            );
        }
        Feasibility::Infeasible { witness } => {
            for col in columns {
                assert!(
                    witness.dot(col) >= Rat::zero(),
                    "separating functional fails a column inequality"
                );
            }
            assert!(
                witness.dot(target) < Rat::zero(),
                "separating functional does not separate the target"
            );
        }
    }
    outcome
}
