use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A dense rectangular matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(RatMatrix { rows: n, cols, data })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Reduces `self` in place to row echelon form; returns the pivot columns and
    /// the determinant sign/scale bookkeeping (product of pivots times row-swap sign).
    fn eliminate(&mut self, rhs: Option<&mut Vec<Rational>>) -> (Vec<usize>, Rational) {
        let mut rhs = rhs;
        let mut pivots = Vec::new();
        let mut det = Rational::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                if let Some(b) = rhs.as_deref_mut() {
                    b.swap(p, r);
                }
                det = -det;
            }
            let pivot = self[(r, c)].clone();
            det *= &pivot;
            for i in r + 1..self.rows {
                if self[(i, c)].is_zero() {
                    continue;
                }
                let factor = &self[(i, c)] / &pivot;
                for j in c..self.cols {
                    let delta = &factor * &self[(r, j)];
                    self[(i, j)] -= delta;
                }
                if let Some(b) = rhs.as_deref_mut() {
                    let delta = &factor * &b[r];
                    b[i] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(None).0.len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut m = self.clone();
        let (pivots, det) = m.eliminate(None);
        Ok(if pivots.len() == self.rows { det } else { Rational::zero() })
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: rhs.len() });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut b = rhs.to_vec();
        let (pivots, _) = m.eliminate(Some(&mut b));
        if pivots.len() < n {
            return Err(Error::SingularMatrix);
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = b[i].clone();
            for j in i + 1..n {
                acc -= &m[(i, j)] * &x[j];
            }
            x[i] = acc / &m[(i, i)];
        }
        Ok(x)
    }
}

impl core::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Solves `m * x = rhs`.
pub fn solve_linear(m: &RatMatrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    m.solve(rhs)
}

/// Exact rank by rational elimination.
pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}
