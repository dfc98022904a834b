//! Truncated Laurent series in the large variable `t`, stored in ascending
//! powers of `1/t`.
//!
//! A series is `Σ_{j=low}^{order-1} c_j t^{-j} + O(t^{-order})`. Every
//! operation propagates the truncation order so that a coefficient is only
//! ever reported when it is exactly determined by the operands; asking for
//! anything at or beyond `order` is an error rather than a silent zero.

use num_traits::Zero;

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Order used for series known exactly (finite sums).
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    low: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl LaurentSeries {
    /// `coeffs[i]` multiplies `t^{-(low+i)}`; terms at exponents `>= order` of
    /// `1/t` are unknown.
    pub fn new(low: i64, coeffs: Vec<Rational>, order: i64) -> Result<Self> {
        if order != EXACT && low + coeffs.len() as i64 > order {
            return Err(Error::Truncation {
                requested: low + coeffs.len() as i64 - 1,
                order,
            });
        }
        let mut s = Self { low, coeffs, order };
        s.trim_to_order();
        Ok(s)
    }

    /// An exactly known finite sum, given as (power of 1/t, coefficient) pairs.
    pub fn exact(terms: &[(i64, Rational)]) -> Self {
        Self::from_terms(terms, EXACT)
    }

    /// Finite terms plus an O(t^{-order}) tail.
    pub fn from_terms(terms: &[(i64, Rational)], order: i64) -> Self {
        if terms.is_empty() {
            return Self {
                low: if order == EXACT { 0 } else { order },
                coeffs: Vec::new(),
                order,
            };
        }
        let low = terms.iter().map(|(e, _)| *e).min().unwrap();
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        let mut s = Self { low, coeffs, order };
        s.trim_to_order();
        s
    }

    /// Drops coefficients at or past the truncation order and strips leading
    /// zeros, so `low` is the true leading exponent. Product orders depend on it.
    fn trim_to_order(&mut self) {
        if self.order != EXACT {
            let keep = (self.order - self.low).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() && self.order != EXACT {
            self.low = self.order;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Coefficient of `t^{-j}`.
    pub fn coeff(&self, j: i64) -> Result<Rational> {
        if j >= self.order {
            return Err(Error::Truncation {
                requested: j,
                order: self.order,
            });
        }
        if j < self.low {
            return Ok(Rational::zero());
        }
        Ok(self
            .coeffs
            .get((j - self.low) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    fn span(&self) -> std::ops::Range<i64> {
        self.low..self.low + self.coeffs.len() as i64
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let order = self.order.min(other.order);
        let low = self.low.min(other.low);
        let high = self.span().end.max(other.span().end).min(order);
        let zero = Rational::zero();
        let coeffs = (low..high.max(low))
            .map(|j| {
                let a = self.get_or_zero(j);
                let b = other.get_or_zero(j);
                op(a.unwrap_or(&zero), b.unwrap_or(&zero))
            })
            .collect();
        let mut s = Self { low, coeffs, order };
        s.trim_to_order();
        s
    }

    fn get_or_zero(&self, j: i64) -> Option<&Rational> {
        if j < self.low {
            return None;
        }
        self.coeffs.get((j - self.low) as usize)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let low = self.low + other.low;
        let order = self
            .order
            .saturating_add(other.low)
            .min(other.order.saturating_add(self.low))
            .min(EXACT);
        let exact_len = self.coeffs.len() + other.coeffs.len();
        let len = if order == EXACT {
            exact_len.saturating_sub(1)
        } else {
            ((order - low).max(0) as usize).min(exact_len.saturating_sub(1))
        };
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        let mut s = Self { low, coeffs, order };
        s.trim_to_order();
        s
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            order: self.order,
        };
        out.trim_to_order();
        out
    }

    pub fn add_scalar(&self, s: &Rational) -> Self {
        self.add(&Self::exact(&[(0, s.clone())]))
    }

    /// Multiply by `t`.
    pub fn mul_t(&self) -> Self {
        Self {
            low: self.low - 1,
            coeffs: self.coeffs.clone(),
            order: if self.order == EXACT {
                EXACT
            } else {
                self.order - 1
            },
        }
    }

    /// d/dt, using d/dt t^{-j} = -j t^{-j-1}.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(-(self.low + i as i64)))
            .collect();
        let mut s = Self {
            low: self.low + 1,
            coeffs,
            order: if self.order == EXACT {
                EXACT
            } else {
                self.order + 1
            },
        };
        s.trim_to_order();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::rat;

    #[test]
    fn multiplication_tracks_truncation() {
        // (t + 1/t + O(1/t^3)) squared = t^2 + 2 + O(1/t^2)
        let s = LaurentSeries::from_terms(&[(-1, int(1)), (1, int(1))], 3);
        let sq = s.mul(&s);
        assert_eq!(sq.order(), 2);
        assert_eq!(sq.coeff(-2).unwrap(), int(1));
        assert_eq!(sq.coeff(0).unwrap(), int(2));
        assert_eq!(sq.coeff(1).unwrap(), int(0));
        assert!(matches!(sq.coeff(2), Err(Error::Truncation { .. })));
    }

    #[test]
    fn derivative_and_shift() {
        // d/dt (t - 2/t^3) = 1 + 6/t^4
        let s = LaurentSeries::exact(&[(-1, int(1)), (3, int(-2))]);
        let d = s.derivative();
        assert_eq!(d.coeff(0).unwrap(), int(1));
        assert_eq!(d.coeff(4).unwrap(), int(6));
        assert_eq!(d.mul_t().coeff(3).unwrap(), int(6));
    }

    #[test]
    fn addition_takes_min_order() {
        let a = LaurentSeries::from_terms(&[(0, rat(1, 2))], 5);
        let b = LaurentSeries::from_terms(&[(2, int(3))], 3);
        let c = a.add(&b).add_scalar(&int(1));
        assert_eq!(c.order(), 3);
        assert_eq!(c.coeff(0).unwrap(), rat(3, 2));
        assert_eq!(c.coeff(2).unwrap(), int(3));
        assert!(c.coeff(3).is_err());
    }
}
