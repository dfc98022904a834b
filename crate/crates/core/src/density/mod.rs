//! One-point densities of the LUE and fixed-trace LUE as exact polynomials,
//! plus certification of the differential equations they satisfy.

mod certify;
mod mp;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math::poly::RationalPolynomial;
use crate::math::rational::{big, binomial, factorial, int, to_f64, Rational};
use crate::params::EnsembleParams;

pub use certify::{
    certify_matrix_ode_flue, certify_matrix_ode_flue_with, certify_matrix_ode_lue, certify_ode_flue,
    certify_ode_flue_with, certify_ode_u2, Certificate, FlueOdeCoefficients,
};
pub use mp::{certify_ode_mp, certify_ode_mp_with, mp_density, mp_edges, mp_moment, MpCertificate};

/// ρ(x) = x^a e^{−x} α(x) with deg α = 2(N−1).
#[derive(Clone, Debug, PartialEq)]
pub struct LueDensity {
    pub params: EnsembleParams,
    pub a: u32,
    pub alpha: RationalPolynomial,
}

/// ρ(x) = x^{c−2} Σ_e c_e ((1−x)/x)^e on (0,1), c = N² + Na.
#[derive(Clone, Debug, PartialEq)]
pub struct FlueDensity {
    pub params: EnsembleParams,
    pub a: u32,
    pub x_power: u32,
    pub terms: BTreeMap<u32, Rational>,
}

/// L_k^{(a)}(x) = Σ_j (−1)^j C(k+a, k−j) x^j / j!
fn laguerre(k: u32, a: u32) -> RationalPolynomial {
    RationalPolynomial::new(
        (0..=k)
            .map(|j| {
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                sign * big(binomial((k + a) as u64, (k - j) as u64)) / big(factorial(j as u64))
            })
            .collect(),
    )
}

/// Christoffel–Darboux sum Σ_{k<N} k!/(k+a)! · L_k^{(a)}(x)².
pub fn lue_density(p: &EnsembleParams) -> Result<LueDensity> {
    p.require_unitary()?;
    let a = p.integer_a()?;
    let mut alpha = RationalPolynomial::zero();
    for k in 0..p.n {
        let l = laguerre(k, a);
        let w = big(factorial(k as u64)) / big(factorial((k + a) as u64));
        alpha = &alpha + &(&l * &l).scale(&w);
    }
    Ok(LueDensity {
        params: p.clone(),
        a,
        alpha,
    })
}

impl LueDensity {
    /// ∫₀^∞ x^k ρ(x) dx = Σ_p α_p (a+p+k)!
    pub fn moment(&self, k: u32) -> Rational {
        self.alpha
            .coeffs()
            .iter()
            .enumerate()
            .map(|(p, c)| c * big(factorial((self.a as usize + p + k as usize) as u64)))
            .sum()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return if x == 0.0 && self.a == 0 { to_f64(&self.alpha.coeff(0)) } else { 0.0 };
        }
        x.powi(self.a as i32) * (-x).exp() * self.alpha.eval_f64(x)
    }

    /// Copy with α_index shifted by `delta`.
    pub fn perturbed(&self, index: usize, delta: &Rational) -> Self {
        let mut cs = self.alpha.coeffs().to_vec();
        if cs.len() <= index {
            cs.resize(index + 1, Rational::zero());
        }
        cs[index] += delta;
        Self {
            alpha: RationalPolynomial::new(cs),
            ..self.clone()
        }
    }
}

/// How the Gamma factor of the inverse Laplace transform enters the
/// fixed-trace term map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlueConvention {
    /// c_e = Γ(c) α_p / Γ(e+1), from the residue of s^{−(e+1)} e^{sy}.
    Derived,
    /// c_e = Γ(c) Γ(e+1) α_p, the Gamma factor taken as a multiplier.
    GammaMultiplier,
}

pub fn flue_density_from_lue(d: &LueDensity) -> Result<FlueDensity> {
    flue_density_with_convention(d, FlueConvention::Derived)
}

/// Maps α_p x^{a+p} e^{−x} through the inverse transform. The result is checked
/// against ∫ρ = N and ∫xρ = 1; a failing convention gives [`Error::Convention`].
pub fn flue_density_with_convention(d: &LueDensity, conv: FlueConvention) -> Result<FlueDensity> {
    let p = &d.params;
    let n = p.n as i64;
    let a = d.a as i64;
    let c = n * n + n * a;
    if c - a - 2 - 2 * (n - 1) < 0 {
        return Err(Error::Domain(format!(
            "fixed-trace density needs (N-1)a + N^2 - 2N >= 0, got N={n}, a={a}"
        )));
    }
    let gc = big(factorial((c - 1) as u64));
    let mut terms = BTreeMap::new();
    for (pp, alpha) in d.alpha.coeffs().iter().enumerate() {
        let e = c - a - 2 - pp as i64;
        let g = big(factorial(e as u64));
        let coeff = match conv {
            FlueConvention::Derived => &gc * alpha / &g,
            FlueConvention::GammaMultiplier => &gc * alpha * &g,
        };
        if !coeff.is_zero() {
            terms.insert(e as u32, coeff);
        }
    }
    let out = FlueDensity {
        params: p.clone(),
        a: d.a,
        x_power: (c - 2) as u32,
        terms,
    };
    let mass = out.moment(0);
    let first = out.moment(1);
    if mass != p.n_rat() || !first.is_one() {
        return Err(Error::Convention(format!(
            "{conv:?} gives integral {mass} (want {n}) and first moment {first} (want 1)"
        )));
    }
    Ok(out)
}

impl FlueDensity {
    /// ∫₀¹ x^k ρ(x) dx via Beta integrals.
    pub fn moment(&self, k: u32) -> Rational {
        let top = self.x_power as u64 + 1 + k as u64;
        self.terms
            .iter()
            .map(|(&e, c)| {
                let xp = (self.x_power - e) as u64 + k as u64;
                c * big(factorial(xp) * factorial(e as u64)) / big(factorial(top))
            })
            .sum()
    }

    /// Σ_e c_e x^{c−2−e} (1−x)^e
    pub fn to_polynomial(&self) -> RationalPolynomial {
        let one_minus = RationalPolynomial::new(vec![Rational::one(), -Rational::one()]);
        let mut out = RationalPolynomial::zero();
        for (&e, c) in &self.terms {
            let t = one_minus.pow(e).shift((self.x_power - e) as usize).scale(c);
            out = &out + &t;
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|(&e, c)| to_f64(c) * x.powi((self.x_power - e) as i32) * (1.0 - x).powi(e as i32))
            .sum()
    }
}

/// Density values on a grid: exact for the fixed-trace density, floating for the
/// LUE (because of e^{−x}).
pub fn tabulate_flue(d: &FlueDensity, grid: &[Rational], digits: usize) -> Vec<(String, String)> {
    let poly = d.to_polynomial();
    grid.iter()
        .map(|x| {
            let v = if *x < Rational::zero() || *x > Rational::one() {
                Rational::zero()
            } else {
                poly.eval(x)
            };
            (
                crate::math::rational::to_decimal(x, digits),
                crate::math::rational::to_decimal(&v, digits),
            )
        })
        .collect()
}

pub fn tabulate_lue(d: &LueDensity, grid: &[Rational], digits: usize) -> Vec<(String, String)> {
    grid.iter()
        .map(|x| {
            let v = d.eval_f64(to_f64(x));
            (crate::math::rational::to_decimal(x, digits), format!("{v:.digits$e}"))
        })
        .collect()
}
