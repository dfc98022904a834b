//! Purity cumulants from the large-t expansion of a σ-Painlevé IV transcendent.
//!
//! The ansatz
//!   σ(t) = −2Nt − c/t + Σ_{n≥0} d_n t^{−(2n+3)},  d_n = (−1)^n κ_{n+1} / (2·4^n n!),
//! with c = N² + Na, is substituted into
//!   (σ'')² − 4(tσ' − σ)² + 4σ'(σ' − 2a)(σ' + 2N) = 0.
//! The unknown d_n first appears at t^{−(2n+4)}, linearly, so each order fixes
//! one cumulant.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::math::cumulants::{cumulants_from_moments, moments_from_cumulants};
use crate::math::laurent::LaurentSeries;
use crate::math::rational::{big, factorial, int, pochhammer, powi, Rational};
use crate::moments::{Ensemble, MomentTable, Quantity, Route, Statistic};
use crate::params::EnsembleParams;

fn d_factor(n: u32) -> Rational {
    // d_n / κ_{n+1}
    let sign = if n % 2 == 0 { 1 } else { -1 };
    int(sign) / (int(2) * powi(&int(4), n as i64) * big(factorial(n as u64)))
}

/// σ built from known coefficients `ds` (d_0, d_1, ...); known through
/// t^{−(2·len+2)}.
pub fn sigma_series(p: &EnsembleParams, ds: &[Rational]) -> LaurentSeries {
    let mut terms = vec![(-1, -int(2) * p.n_rat()), (1, -p.c())];
    for (n, d) in ds.iter().enumerate() {
        terms.push((2 * n as i64 + 3, d.clone()));
    }
    LaurentSeries::from_terms(&terms, 2 * ds.len() as i64 + 3)
}

/// (σ'')² − 4(tσ' − σ)² + 4σ'(σ' − 2a)(σ' + 2N)
pub fn piv_residual(p: &EnsembleParams, sigma: &LaurentSeries) -> LaurentSeries {
    let s1 = sigma.derivative();
    let s2 = s1.derivative();
    let h = s1.mul_t().sub(sigma);
    let two_a = int(2) * &p.a;
    let two_n = int(2) * p.n_rat();
    let cubic = s1
        .mul(&s1.add_scalar(&-two_a))
        .mul(&s1.add_scalar(&two_n))
        .scale(&int(4));
    s2.mul(&s2).sub(&h.mul(&h).scale(&int(4))).add(&cubic)
}

/// Cumulants κ_1..κ_nmax of Σλ_j² over the LUE.
pub fn piv_lue_cumulants(p: &EnsembleParams, nmax: u32) -> Result<Vec<Rational>> {
    p.require_unitary()?;
    let mut ds: Vec<Rational> = Vec::with_capacity(nmax as usize);

    // The orders below the first unknown contain no κ at all.
    let r = piv_residual(p, &sigma_series(p, &[]));
    for j in r.low().min(0)..=3 {
        let v = r.coeff(j)?;
        if !v.is_zero() {
            return Err(Error::Inconsistent(format!(
                "Painlevé residual does not cancel at t^-{j} (left {v}) before any cumulant is fixed"
            )));
        }
    }

    for n in 0..nmax {
        let target = 2 * n as i64 + 4;
        let eval = |trial: i64| -> Result<Rational> {
            let mut trial_ds = ds.clone();
            trial_ds.push(int(trial));
            let sigma = sigma_series(p, &trial_ds);
            piv_residual(p, &sigma).coeff(target)
        };
        let (r0, r1, r2) = (eval(0)?, eval(1)?, eval(2)?);
        let second = &r2 - int(2) * &r1 + &r0;
        if !second.is_zero() {
            return Err(Error::Inconsistent(format!(
                "order t^-{target}: condition on kappa_{} is not linear (second difference {second})",
                n + 1
            )));
        }
        let lin = &r1 - &r0;
        if lin.is_zero() {
            return Err(Error::Inconsistent(format!(
                "order t^-{target}: kappa_{} drops out of the equation",
                n + 1
            )));
        }
        let d = -r0 / lin;
        ds.push(d);

        let r = piv_residual(p, &sigma_series(p, &ds));
        for j in r.low()..=target {
            let v = r.coeff(j)?;
            if !v.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "residual left {v} at t^-{j} after fixing kappa_{}",
                    n + 1
                )));
            }
        }
    }
    Ok(ds
        .iter()
        .enumerate()
        .map(|(n, d)| d / d_factor(n as u32))
        .collect())
}

/// Purity moments ⟨(Σλ²)^k⟩ over the LUE, k = 0..=nmax.
pub fn lue_purity_moments(p: &EnsembleParams, nmax: u32) -> Result<MomentTable> {
    let ks = piv_lue_cumulants(p, nmax)?;
    let ms = moments_from_cumulants(&ks);
    Ok(table(p, Ensemble::Lue, Quantity::Moments, ms, true))
}

/// Purity moments over the fLUE, k = 0..=nmax.
pub fn flue_purity_moments(p: &EnsembleParams, nmax: u32) -> Result<MomentTable> {
    let ms = flue_moments_from_lue(p, nmax)?;
    Ok(table(p, Ensemble::Flue, Quantity::Moments, ms, true))
}

fn flue_moments_from_lue(p: &EnsembleParams, nmax: u32) -> Result<Vec<Rational>> {
    let ks = piv_lue_cumulants(p, nmax)?;
    let ms = moments_from_cumulants(&ks);
    let c = p.c();
    Ok(ms
        .into_iter()
        .enumerate()
        .map(|(i, m)| m / pochhammer(&c, 2 * (i as u32 + 1)))
        .collect())
}

/// Purity cumulants κ_1..κ_nmax over the fLUE.
pub fn flue_purity_cumulants(p: &EnsembleParams, nmax: u32) -> Result<Vec<Rational>> {
    Ok(cumulants_from_moments(&flue_moments_from_lue(p, nmax)?))
}

/// κ_1, κ_2, κ_3 of the fLUE purity in closed form, with M = N(N+a):
/// (2N+a)/(M+1),
/// 2(N²−1)((N+a)²−1)/((M+1)²(M+2)(M+3)),
/// 8(N²−1)((N+a)²−1)(2N+a)(M−5)/((M+1)³(M+2)(M+3)(M+4)(M+5)).
pub fn flue_purity_cumulants_closed_form(p: &EnsembleParams) -> Result<[Rational; 3]> {
    p.require_unitary()?;
    let n = p.n_rat();
    let na = &n + &p.a;
    let m = p.c();
    let s = &n * int(2) + &p.a;
    let w = (&n * &n - int(1)) * (&na * &na - int(1));
    let d = |k: i64| &m + int(k);
    let k1 = &s / d(1);
    let k2 = int(2) * &w / (powi(&d(1), 2) * d(2) * d(3));
    let k3 = int(8) * &w * &s * d(-5) / (powi(&d(1), 3) * d(2) * d(3) * d(4) * d(5));
    Ok([k1, k2, k3])
}

/// Cumulant table, entries 1..=nmax.
pub fn purity_cumulant_table(p: &EnsembleParams, nmax: u32, ensemble: Ensemble) -> Result<MomentTable> {
    let ks = match ensemble {
        Ensemble::Lue => piv_lue_cumulants(p, nmax)?,
        Ensemble::Flue => flue_purity_cumulants(p, nmax)?,
        other => {
            return Err(Error::Unsupported(format!(
                "the Painlevé route covers the LUE and fLUE, not {other:?}"
            )))
        }
    };
    Ok(table(p, ensemble, Quantity::Cumulants, ks, false))
}

fn table(p: &EnsembleParams, ensemble: Ensemble, quantity: Quantity, vs: Vec<Rational>, with_zero: bool) -> MomentTable {
    let mut entries: BTreeMap<u32, Rational> = vs
        .into_iter()
        .enumerate()
        .map(|(i, v)| (i as u32 + 1, v))
        .collect();
    if with_zero {
        entries.insert(0, int(1));
    }
    MomentTable {
        statistic: Statistic::PowerSum(2),
        quantity,
        ensemble,
        route: Route::Painleve,
        params: p.clone(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::rat;

    fn up(n: u32, a: i64) -> EnsembleParams {
        EnsembleParams::unitary(n, a).unwrap()
    }

    #[test]
    fn printed_low_cumulants() {
        for n in 1..=5i64 {
            for a in 0..=3i64 {
                let k = piv_lue_cumulants(&up(n as u32, a), 3).unwrap();
                assert_eq!(k[0], int(n * (n + a) * (2 * n + a)));
                assert_eq!(k[1], int(2 * n * (n + a) * (1 + 2 * a * a + 9 * a * n + 9 * n * n)));
                assert_eq!(
                    k[2],
                    int(8 * n * (n + a) * (2 * n + a) * (10 + 5 * a * a + 27 * a * n + 27 * n * n))
                );
            }
        }
    }

    #[test]
    fn one_dimensional_oracle() {
        // N = 1: λ ~ Gamma(a+1), so λ² has moments (a+1)_{2k}.
        for a in [int(0), int(2), rat(1, 2)] {
            let p = EnsembleParams::new(1, a.clone(), int(1)).unwrap();
            let t = lue_purity_moments(&p, 5).unwrap();
            for k in 0..=5u32 {
                assert_eq!(t.entries[&k], pochhammer(&(&a + int(1)), 2 * k));
            }
        }
        assert_eq!(piv_lue_cumulants(&up(1, 0), 1).unwrap()[0], int(2));
    }

    #[test]
    fn residual_vanishes_through_matched_orders() {
        let p = up(3, 2);
        let ks = piv_lue_cumulants(&p, 6).unwrap();
        let ds: Vec<_> = ks.iter().enumerate().map(|(n, k)| k * d_factor(n as u32)).collect();
        let r = piv_residual(&p, &sigma_series(&p, &ds));
        assert_eq!(r.order(), 2 * 6 + 4);
        for j in r.low()..r.order() {
            assert!(r.coeff(j).unwrap().is_zero(), "t^-{j}");
        }
        assert!(r.coeff(r.order()).is_err());
    }

    #[test]
    fn closed_forms_match_series() {
        for n in 2..=4 {
            for a in 0..=2 {
                let p = up(n, a);
                let ks = flue_purity_cumulants(&p, 3).unwrap();
                assert_eq!(ks.as_slice(), flue_purity_cumulants_closed_form(&p).unwrap().as_slice(), "N={n} a={a}");
            }
        }
        assert!(flue_purity_cumulants_closed_form(&EnsembleParams::new(2, int(0), int(2)).unwrap()).is_err());
    }

    #[test]
    fn fixed_trace_mean_and_variance() {
        let ks = flue_purity_cumulants(&up(2, 0), 2).unwrap();
        assert_eq!(ks[0], rat(4, 5));
        assert_eq!(ks[1], rat(3, 175));
    }

    #[test]
    fn cumulants_are_positive() {
        for n in 2..=5 {
            for a in 0..=3 {
                let k = piv_lue_cumulants(&up(n, a), 2).unwrap();
                assert!(k.iter().all(|v| *v > Rational::zero()));
            }
        }
    }

    #[test]
    fn rational_a_is_allowed_but_tau_is_not() {
        let p = EnsembleParams::new(2, rat(1, 3), int(1)).unwrap();
        assert!(piv_lue_cumulants(&p, 4).is_ok());
        let p = EnsembleParams::new(2, int(0), int(2)).unwrap();
        assert!(matches!(piv_lue_cumulants(&p, 1), Err(Error::Unsupported(_))));
    }
}
