//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// `coeffs[i]` multiplies `x^i`. Trailing zeros are always stripped, so the
/// zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// c·x^k
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Builds from integer coefficients in ascending order.
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::rational::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// ∫₀¹ p(x) dx
    pub fn integrate_unit(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / int(k as i64 + 1))
            .sum()
    }

    /// ∫_lo^hi p(x) dx
    pub fn integrate_between(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = Self::new(
            std::iter::once(Rational::zero())
                .chain(
                    self.coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c / int(k as i64 + 1)),
                )
                .collect(),
        );
        anti.eval(hi) - anti.eval(lo)
    }

    /// Unique polynomial of degree < points.len() through the given nodes
    /// (Newton divided differences).
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::Input("repeated interpolation node".into()));
                }
            }
        }
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num / den;
            }
        }
        let mut poly = Self::zero();
        for i in (0..n).rev() {
            let linear = Self::new(vec![-points[i].0.clone(), Rational::one()]);
            poly = &(&poly * &linear) + &Self::constant(dd[i].clone());
        }
        Ok(poly)
    }

    /// p(s·x) for a rational scale s.
    pub fn compose_scale(&self, s: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= s;
        }
        Self::new(out)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::rat;

    #[test]
    fn trailing_zeros_normalised() {
        let p = RationalPolynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(RationalPolynomial::from_ints(&[0, 0]).is_zero());
        assert_eq!(RationalPolynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic_and_calculus() {
        let p = RationalPolynomial::from_ints(&[1, 1]); // 1 + x
        let sq = &p * &p;
        assert_eq!(sq, RationalPolynomial::from_ints(&[1, 2, 1]));
        assert_eq!(sq.derivative(), RationalPolynomial::from_ints(&[2, 2]));
        assert_eq!(sq.integrate_unit(), rat(7, 3));
        assert_eq!(sq.eval(&rat(1, 2)), rat(9, 4));
        assert_eq!(&sq - &sq, RationalPolynomial::zero());
        assert_eq!(p.shift(2), RationalPolynomial::from_ints(&[0, 0, 1, 1]));
        assert_eq!(
            sq.integrate_between(&rat(1, 2), &int(1)),
            sq.integrate_unit() - RationalPolynomial::from_ints(&[1, 2, 1]).integrate_between(&int(0), &rat(1, 2))
        );
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let cubic = RationalPolynomial::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|k| (int(k), cubic.eval(&int(k)))).collect();
        assert_eq!(RationalPolynomial::interpolate(&pts).unwrap(), cubic);
        let dup = vec![(int(1), int(1)), (int(1), int(2))];
        assert!(RationalPolynomial::interpolate(&dup).is_err());
    }

    #[test]
    fn scale_composition() {
        let p = RationalPolynomial::from_ints(&[1, 1, 1]);
        let q = p.compose_scale(&int(-2));
        assert_eq!(q, RationalPolynomial::from_ints(&[1, -2, 4]));
    }
}
