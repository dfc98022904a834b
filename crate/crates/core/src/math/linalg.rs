//! Exact dense linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("matrix is not square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// self + s·I
    pub fn add_diagonal(&self, s: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] += s;
        }
        m
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        let mut a = self.clone();
        let n = self.n;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for c in col..n {
                    let v = &f * &a[(col, c)];
                    a[(r, c)] -= v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.n {
            self.data.swap(i * self.n + c, j * self.n + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

/// Solve M x = rhs exactly with partial (first-nonzero) pivoting.
///
/// A singular matrix yields [`Error::Singular`] with the rank found by the
/// elimination.
pub fn linear_solve_exact(m: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.dim();
    if rhs.len() != n {
        return Err(Error::Input(format!(
            "right-hand side has length {} for a {n}x{n} matrix",
            rhs.len()
        )));
    }
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
            return Err(Error::Singular {
                rank: rank(m),
                dim: n,
                context: String::new(),
            });
        };
        if piv != col {
            a.swap_rows(piv, col);
            b.swap(piv, col);
        }
        let p = a[(col, col)].clone();
        for r in col + 1..n {
            if a[(r, col)].is_zero() {
                continue;
            }
            let f = &a[(r, col)] / &p;
            for c in col..n {
                let v = &f * &a[(col, c)];
                a[(r, c)] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !a[(i, j)].is_zero() {
                acc -= &a[(i, j)] * &x[j];
            }
        }
        x[i] = acc / &a[(i, i)];
    }
    Ok(x)
}

/// Rank by exact row reduction.
pub fn rank(m: &RationalMatrix) -> usize {
    let n = m.dim();
    let mut a = m.clone();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..n).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(piv, r);
        let p = a[(r, col)].clone();
        for i in r + 1..n {
            if a[(i, col)].is_zero() {
                continue;
            }
            let f = &a[(i, col)] / &p;
            for c in col..n {
                let v = &f * &a[(r, c)];
                a[(i, c)] -= v;
            }
        }
        r += 1;
    }
    r
}
