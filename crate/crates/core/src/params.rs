use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::math::rational::{as_i64, int, Rational};

/// The (N, a, τ) triple. τ = β/2, so τ = 1 is the unitary case.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleParams {
    pub n: u32,
    pub a: Rational,
    pub tau: Rational,
}

impl EnsembleParams {
    pub fn new(n: u32, a: Rational, tau: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("matrix dimension N must be at least 1".into()));
        }
        if !tau.is_positive() {
            return Err(Error::Domain(format!("tau must be positive, got {tau}")));
        }
        Ok(Self { n, a, tau })
    }

    /// Unitary (τ = 1) parameters with integer a.
    pub fn unitary(n: u32, a: i64) -> Result<Self> {
        Self::new(n, int(a), Rational::one())
    }

    pub fn n_rat(&self) -> Rational {
        int(self.n as i64)
    }

    /// N² + Na, the degree of homogeneity of the τ = 1 weight.
    pub fn c(&self) -> Rational {
        let n = self.n_rat();
        &n * &n + &n * &self.a
    }

    /// τN(N−1) + N(a+1), the general-τ analogue of [`Self::c`].
    pub fn c_beta(&self) -> Rational {
        let n = self.n_rat();
        &self.tau * &n * (&n - Rational::one()) + &n * (&self.a + Rational::one())
    }

    pub fn require_unitary(&self) -> Result<()> {
        if self.tau != Rational::one() {
            return Err(Error::Unsupported(format!(
                "this route is only available for tau = 1 (beta = 2), got tau = {}",
                self.tau
            )));
        }
        Ok(())
    }

    /// a as a nonnegative integer, or a domain error.
    pub fn integer_a(&self) -> Result<u32> {
        match as_i64(&self.a) {
            Some(v) if v >= 0 => Ok(v as u32),
            _ => Err(Error::Domain(format!(
                "a must be a nonnegative integer here, got {}",
                self.a
            ))),
        }
    }

    pub fn a_is_zero(&self) -> bool {
        self.a.is_zero()
    }
}

/// Serialisable view with rationals as "p/q" strings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamsRecord {
    #[serde(rename = "N")]
    pub n: u32,
    pub a: String,
    pub tau: String,
}

impl From<&EnsembleParams> for ParamsRecord {
    fn from(p: &EnsembleParams) -> Self {
        Self {
            n: p.n,
            a: p.a.to_string(),
            tau: p.tau.to_string(),
        }
    }
}
