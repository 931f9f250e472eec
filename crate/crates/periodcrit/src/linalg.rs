//! Exact rational vectors and dense matrices.
//!
//! All arithmetic in this crate is `BigRational`; floating point appears only
//! when a report renders a value for display. Realizations have rank at most
//! eight or so, so dense Gaussian elimination is the right tool throughout.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Rat = BigRational;

/// Parse a rational from `"p/q"` or `"p"` form.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let make = |num: &str, den: &str| -> Result<Rat> {
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::Input(format!("bad rational `{s}`")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::Input(format!("bad rational `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{s}`")));
        }
        Ok(Rat::new(n, d))
    };
    match s.split_once('/') {
        Some((num, den)) => make(num, den),
        None => make(s, "1"),
    }
}

/// Render a rational as `"p"` or `"p/q"` in lowest terms.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience constructor for integer rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact-rational coordinate vector; doubles as a functional via the
/// standard pairing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    coords: Vec<Rat>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RationalVector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalVector {
            coords: coords.iter().map(|&c| rat_int(c)).collect(),
        }
    }

    pub fn from_strs(coords: &[&str]) -> Result<Self> {
        Ok(RationalVector {
            coords: coords
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// Standard pairing. Panics on dimension mismatch: operands of a pairing
    /// share a realization by construction.
    pub fn dot(&self, other: &RationalVector) -> Rat {
        assert_eq!(
            self.dim(),
            other.dim(),
            "pairing operands must share a dimension"
        );
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim());
        RationalVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim());
        RationalVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> RationalVector {
        RationalVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RationalVector {
        RationalVector {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Sum of absolute values of the coordinates.
    pub fn one_norm(&self) -> Rat {
        self.coords.iter().map(|a| a.abs()).sum()
    }

    /// Rescale by a positive rational so the coordinates become coprime
    /// integers. Direction is preserved; the zero vector is returned as is.
    pub fn primitive(&self) -> RationalVector {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coords {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        RationalVector {
            coords: ints.iter().map(|n| Rat::from_integer(n / &g)).collect(),
        }
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }
}

impl Index<usize> for RationalVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.coords[i]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_str(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense exact-rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[RationalVector]) -> Self {
        assert!(!rows.is_empty(), "from_rows needs at least one row");
        let cols = rows[0].dim();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols);
            data.extend_from_slice(r.coords());
        }
        QMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[RationalVector]) -> Self {
        assert!(!cols.is_empty(), "from_cols needs at least one column");
        let rows = cols[0].dim();
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), rows);
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        RationalVector::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
                .collect(),
        )
    }

    pub fn mul_mat(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix-matrix dimension mismatch");
        let mut m = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: Rat = (0..self.cols)
                    .map(|k| self.get(i, k) * other.get(k, j))
                    .sum();
                m.set(i, j, s);
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = Rat::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// One solution of `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &RationalVector) -> Option<RationalVector> {
        assert_eq!(self.rows, rhs.dim());
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constant column: inconsistent
        }
        let mut x = RationalVector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.coords[c] = red.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn null_space(&self) -> Vec<RationalVector> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = RationalVector::zeros(self.cols);
                v.coords[fc] = Rat::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v.coords[pc] = -red.get(r, fc).clone();
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", rat_str(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(cs: &[i64]) -> RationalVector {
        RationalVector::from_i64(cs)
    }

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(rat_str(&parse_rat("3/2").unwrap()), "3/2");
        assert_eq!(rat_str(&parse_rat("-4/2").unwrap()), "-2");
        assert_eq!(rat_str(&parse_rat("7").unwrap()), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn dot_and_norms() {
        let a = rv(&[1, -1, 2]);
        let b = rv(&[3, 1, 1]);
        assert_eq!(a.dot(&b), rat_int(4));
        assert_eq!(a.one_norm(), rat_int(4));
    }

    #[test]
    fn primitive_normalization() {
        let v = RationalVector::from_strs(&["2/3", "-4/3"]).unwrap();
        assert_eq!(v.primitive(), rv(&[1, -2]));
        assert!(RationalVector::zeros(2).primitive().is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let m = QMatrix::from_rows(&[rv(&[2, -2]), rv(&[-2, 4])]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul_mat(&inv), QMatrix::identity(2));
        let x = m.solve(&rv(&[2, 0])).unwrap();
        assert_eq!(m.mul_vec(&x), rv(&[2, 0]));
    }

    #[test]
    fn inconsistent_solve_is_none() {
        let m = QMatrix::from_rows(&[rv(&[1, 1]), rv(&[2, 2])]);
        assert!(m.solve(&rv(&[1, 3])).is_none());
        assert!(m.inverse().is_none());
    }

    #[test]
    fn null_space_basis() {
        let m = QMatrix::from_rows(&[rv(&[1, 1, 1])]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn rank_of_tall_matrix() {
        let m = QMatrix::from_cols(&[rv(&[1, 0, 0, -1]), rv(&[0, 1, -1, 0])]);
        assert_eq!(m.rank(), 2);
    }
}
