//! Moment/cumulant conversion through the complete Bell polynomials.
//!
//! Both functions take and return sequences indexed from order 1 (the
//! zeroth moment is implicitly 1).

use num_traits::{One, Zero};

use super::rational::{big, binomial, Rational};

/// m_n = Σ_{k=1}^{n} C(n-1,k-1) κ_k m_{n-k}
pub fn moments_from_cumulants(kappas: &[Rational]) -> Vec<Rational> {
    let mut m = vec![Rational::one()];
    for n in 1..=kappas.len() {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += big(binomial(n as u64 - 1, k as u64 - 1)) * &kappas[k - 1] * &m[n - k];
        }
        m.push(acc);
    }
    m.remove(0);
    m
}

/// κ_n = m_n − Σ_{k=1}^{n-1} C(n-1,k-1) κ_k m_{n-k}
pub fn cumulants_from_moments(ms: &[Rational]) -> Vec<Rational> {
    let mut m = vec![Rational::one()];
    m.extend(ms.iter().cloned());
    let mut kappa: Vec<Rational> = Vec::with_capacity(ms.len());
    for n in 1..=ms.len() {
        let mut acc = m[n].clone();
        for k in 1..n {
            acc -= big(binomial(n as u64 - 1, k as u64 - 1)) * &kappa[k - 1] * &m[n - k];
        }
        kappa.push(acc);
    }
    kappa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        let (k1, k2, k3) = (rat(2, 3), rat(-1, 5), int(7));
        let m = moments_from_cumulants(&[k1.clone(), k2.clone(), k3.clone()]);
        assert_eq!(m[0], k1);
        assert_eq!(m[1], &k2 + &k1 * &k1);
        assert_eq!(m[2], &k3 + int(3) * &k2 * &k1 + &k1 * &k1 * &k1);
    }

    #[test]
    fn exponential_distribution() {
        // Unit exponential: m_n = n!, κ_n = (n-1)!
        let ms: Vec<_> = [1, 2, 6, 24, 120].iter().map(|&v| int(v)).collect();
        let ks = cumulants_from_moments(&ms);
        assert_eq!(ks, [1, 1, 2, 6, 24].iter().map(|&v| int(v)).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn round_trip(raw in prop::collection::vec((-30i64..30, 1i64..9), 1..=8)) {
            let ks: Vec<Rational> = raw.iter().map(|&(n, d)| rat(n, d)).collect();
            let back = cumulants_from_moments(&moments_from_cumulants(&ks));
            prop_assert_eq!(&back, &ks);
            let ms = ks;
            prop_assert_eq!(moments_from_cumulants(&cumulants_from_moments(&ms)), ms);
        }
    }
}
