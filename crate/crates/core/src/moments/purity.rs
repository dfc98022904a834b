//! Tsallis conversion and the closed-form N = 2 purity law.

use num_traits::{One, Zero};

use super::{MomentTable, Statistic};
use crate::error::{Error, Result};
use crate::math::rational::{big, binomial, factorial, int, powi, rat, to_f64, Rational};
use crate::params::EnsembleParams;

/// ⟨T̃_q^k⟩ = (1/(1−q))^k Σ_s (−1)^s C(k,s) ⟨T_q^s⟩, with T̃_q = (1 − T_q)/(1 − q).
pub fn tsallis_moment(p: &EnsembleParams, q: i64, k: u32, tq_moments: &MomentTable) -> Result<Rational> {
    if q == 1 {
        return Err(Error::Domain("Tsallis conversion needs q != 1".into()));
    }
    if k == 0 {
        return Err(Error::Domain("Tsallis moment order must be positive".into()));
    }
    if tq_moments.params != *p {
        return Err(Error::Input("moment table was computed for different parameters".into()));
    }
    match tq_moments.statistic {
        Statistic::PowerSum(tq) if tq as i64 == q => {}
        ref s => {
            return Err(Error::Input(format!(
                "moment table holds {} but T_{q} was requested",
                s.label()
            )))
        }
    }
    let mut sum = Rational::zero();
    for s in 0..=k {
        let m = tq_moments
            .get(s)
            .ok_or_else(|| Error::Input(format!("moment table is missing order {s}")))?;
        let term = big(binomial(k as u64, s as u64)) * m;
        if s % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(powi(&(Rational::one() / int(1 - q)), k as i64) * sum)
}

/// P_{2,a}(t) = prefactor · √(sqrt_arg).
#[derive(Clone, Debug, PartialEq)]
pub struct PurityDensityValue {
    pub prefactor: Rational,
    pub sqrt_arg: Rational,
}

impl PurityDensityValue {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.prefactor) * to_f64(&self.sqrt_arg).sqrt()
    }
}

fn n2_constant(a: u32) -> Rational {
    let a = a as u64;
    big(factorial(2 * a + 3))
        / (big(num_bigint::BigInt::from(2u32).pow(a as u32 + 1)) * big(factorial(a + 1)) * big(factorial(a)))
}

/// Density of the purity for N = 2, supported on 1/2 < t < 1.
pub fn purity_pdf_n2(a: u32, t: &Rational) -> Result<PurityDensityValue> {
    if *t <= rat(1, 2) || *t >= int(1) {
        return Err(Error::Domain(format!("purity density for N = 2 lives on (1/2, 1), got t = {t}")));
    }
    let prefactor = n2_constant(a) * powi(&(int(1) - t), a as i64);
    Ok(PurityDensityValue {
        prefactor,
        sqrt_arg: int(2) * t - int(1),
    })
}

/// Distribution function of the N = 2 purity. With s = 2t − 1,
/// F(t) = C/2^{a+1} Σ_j C(a,j) (−1)^j s^{j+3/2}/(j+3/2).
pub fn purity_cdf_n2(a: u32, t: f64) -> f64 {
    if t <= 0.5 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let s = 2.0 * t - 1.0;
    let c = to_f64(&n2_constant(a)) / 2f64.powi(a as i32 + 1);
    let mut sum = 0.0;
    for j in 0..=a {
        let b = to_f64(&big(binomial(a as u64, j as u64)));
        let e = j as f64 + 1.5;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * b * s.powf(e) / e;
    }
    (c * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::flue_tq_moments;
    use crate::exec::Execution;

    /// ∫_{1/2}^{1} t^m P_{2,a}(t) dt exactly: with s = 2t−1 every term is
    /// ∫_0^1 s^{j+1/2} ds = 1/(j + 3/2).
    fn exact_moment(a: u32, m: u32) -> Rational {
        use crate::math::poly::RationalPolynomial;
        let half = rat(1, 2);
        let t_of_s = RationalPolynomial::new(vec![half.clone(), half.clone()]);
        let one_minus_t = RationalPolynomial::new(vec![half.clone(), -half]);
        let integrand = &t_of_s.pow(m) * &one_minus_t.pow(a);
        let mut acc = Rational::zero();
        for (j, c) in integrand.coeffs().iter().enumerate() {
            acc += c / (int(j as i64) + rat(3, 2));
        }
        n2_constant(a) * acc / int(2)
    }

    #[test]
    fn normalised_with_known_mean() {
        assert_eq!(exact_moment(0, 0), int(1));
        assert_eq!(exact_moment(0, 1), rat(4, 5));
        for a in 0..4 {
            let p = EnsembleParams::unitary(2, a as i64).unwrap();
            let t = flue_tq_moments(&p, 2, 3, Execution::Sequential).unwrap();
            assert_eq!(exact_moment(a, 0), int(1));
            for m in 1..=3 {
                assert_eq!(exact_moment(a, m), t.entries[&m], "a={a} m={m}");
            }
        }
    }

    #[test]
    fn density_value() {
        let v = purity_pdf_n2(0, &rat(3, 4)).unwrap();
        assert_eq!(v.prefactor, int(3));
        assert_eq!(v.sqrt_arg, rat(1, 2));
        assert!((v.to_f64() - 3.0 * 0.5f64.sqrt()).abs() < 1e-15);
        assert!(purity_pdf_n2(0, &rat(1, 2)).is_err());
        assert!(purity_pdf_n2(0, &int(1)).is_err());
    }

    #[test]
    fn cdf_endpoints_and_slope() {
        for a in 0..4 {
            assert_eq!(purity_cdf_n2(a, 0.5), 0.0);
            assert!((purity_cdf_n2(a, 1.0 - 1e-15) - 1.0).abs() < 1e-9);
            let t = 0.7;
            let h = 1e-6;
            let slope = (purity_cdf_n2(a, t + h) - purity_cdf_n2(a, t - h)) / (2.0 * h);
            let pdf = purity_pdf_n2(a, &rat(7, 10)).unwrap().to_f64();
            assert!((slope - pdf).abs() < 1e-5 * pdf.max(1.0));
        }
    }

    #[test]
    fn tsallis_printed_sign() {
        let p = EnsembleParams::unitary(2, 0).unwrap();
        let t = flue_tq_moments(&p, 2, 2, Execution::Sequential).unwrap();
        assert_eq!(tsallis_moment(&p, 2, 1, &t).unwrap(), rat(-1, 5));
        let m1 = &t.entries[&1];
        let m2 = &t.entries[&2];
        assert_eq!(tsallis_moment(&p, 2, 2, &t).unwrap(), int(1) - int(2) * m1 + m2);
        assert!(tsallis_moment(&p, 2, 3, &t).is_err());
        assert!(tsallis_moment(&p, 1, 1, &t).is_err());
        assert!(tsallis_moment(&p, 3, 1, &t).is_err());
    }
}
