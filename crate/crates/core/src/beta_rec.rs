//! Purity moments for general β through an (N+1)-dimensional linear recursion.
//!
//! With H(s) = Σ_q h_q s^q the vector of weighted averages of elementary
//! symmetric functions against e^{−sΣλ²}, one has
//!   (−A + 2qI) h_q = B h_{q+1},  B h_0 = 0,
//! and the first component gives H_0(s) = h_0^{(0)} Σ_q (−1)^q m_q s^q / q!.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math::linalg::{linear_solve_exact, RationalMatrix};
use crate::math::poly::RationalPolynomial;
use crate::math::rational::{big, factorial, int, pochhammer, powi, Rational};
use crate::moments::{Ensemble, MomentTable, Quantity, Route, Statistic};
use crate::params::EnsembleParams;

#[derive(Clone, Debug, PartialEq)]
pub struct BidiagSystem {
    pub params: EnsembleParams,
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub q: u32,
    pub entries: Vec<Rational>,
}

pub fn build_system(p: &EnsembleParams) -> BidiagSystem {
    let n = p.n as usize;
    let nr = p.n_rat();
    let base = p.c_beta();
    let mut a = RationalMatrix::zeros(n + 1);
    let mut b = RationalMatrix::zeros(n + 1);
    for i in 0..=n {
        let pi = int(i as i64);
        a[(i, i)] = -(&base + &pi);
        if i < n {
            a[(i, i + 1)] = -(&nr - &pi);
        }
        b[(i, i)] = -&pi / int(2);
        if i >= 1 {
            b[(i, i - 1)] = -(&pi * (&p.tau * (&nr - &pi) + &p.a + int(1))) / int(2);
        }
    }
    BidiagSystem {
        params: p.clone(),
        a,
        b,
    }
}

/// h_0^{(p)} = (−1)^p Π_{l=1}^{p} (τ(N−l) + a + 1), normalised to h_0^{(0)} = 1.
pub fn init_h0(p: &EnsembleParams) -> StateVector {
    let nr = p.n_rat();
    let mut entries = vec![Rational::one()];
    for l in 1..=p.n as i64 {
        let f = &p.tau * (&nr - int(l)) + &p.a + int(1);
        let prev = entries.last().unwrap().clone();
        entries.push(-(prev * f));
    }
    StateVector { q: 0, entries }
}

impl BidiagSystem {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// −A + 2qI
    pub fn shifted(&self, q: u32) -> RationalMatrix {
        self.a.neg().add_diagonal(&int(2 * q as i64))
    }

    /// B with its (zero) first row replaced by the first row of −A + 2qI.
    pub fn b_q(&self, q: u32) -> RationalMatrix {
        let mut m = self.b.clone();
        let s = self.shifted(q);
        for j in 0..self.dim() {
            m[(0, j)] = s[(0, j)].clone();
        }
        m
    }
}

/// h_{q+1} = B_{q+1}^{−1} (−A + 2qI) h_q
pub fn advance(sys: &BidiagSystem, h: &StateVector) -> Result<StateVector> {
    let rhs = sys.shifted(h.q).mul_vec(&h.entries);
    let bq = sys.b_q(h.q + 1);
    let x = linear_solve_exact(&bq, &rhs).map_err(|e| match e {
        Error::Singular { rank, dim, .. } => Error::Singular {
            rank,
            dim,
            context: format!(
                " in B_{} for N={}, a={}, tau={}",
                h.q + 1,
                sys.params.n,
                sys.params.a,
                sys.params.tau
            ),
        },
        other => other,
    })?;
    if bq.mul_vec(&x) != rhs {
        return Err(Error::Inconsistent(format!(
            "nonzero residual in step {} -> {}",
            h.q,
            h.q + 1
        )));
    }
    Ok(StateVector {
        q: h.q + 1,
        entries: x,
    })
}

/// m_q = (−1)^q q! h_q^{(0)} / h_0^{(0)} for q = 0..=qmax, starting from `h0`.
pub fn moments_from_state(sys: &BidiagSystem, h0: &StateVector, qmax: u32) -> Result<Vec<Rational>> {
    let mut h = h0.clone();
    let norm = h0.entries[0].clone();
    let mut out = vec![Rational::one()];
    for q in 1..=qmax {
        h = advance(sys, &h)?;
        let sign = if q % 2 == 0 { int(1) } else { int(-1) };
        out.push(sign * big(factorial(q as u64)) * &h.entries[0] / &norm);
    }
    Ok(out)
}

/// Moments of Σλ² under the β-Laguerre weight, orders 0..=qmax.
pub fn beta_purity_moments(p: &EnsembleParams, qmax: u32) -> Result<MomentTable> {
    let sys = build_system(p);
    let ms = moments_from_state(&sys, &init_h0(p), qmax)?;
    Ok(MomentTable {
        statistic: Statistic::PowerSum(2),
        quantity: Quantity::Moments,
        ensemble: Ensemble::LBeta,
        route: Route::BidiagonalRecursion,
        params: p.clone(),
        entries: ms.into_iter().enumerate().map(|(k, v)| (k as u32, v)).collect(),
    })
}

/// Fixed-trace moments m_q / (τN(N−1) + N(a+1))_{2q}.
pub fn fixed_trace_beta_moments(p: &EnsembleParams, qmax: u32) -> Result<MomentTable> {
    let mut t = beta_purity_moments(p, qmax)?;
    let c = p.c_beta();
    let entries: BTreeMap<u32, Rational> = t
        .entries
        .iter()
        .map(|(q, m)| (*q, m / pochhammer(&c, 2 * q)))
        .collect();
    t.entries = entries;
    t.ensemble = Ensemble::FlBeta;
    Ok(t)
}

/// m_1 = N(τ(N−1) + 1 + a)(2τ(N−1) + 2 + a)
pub fn mrs(p: &EnsembleParams) -> Rational {
    let nr = p.n_rat();
    let t = &p.tau * (&nr - int(1));
    &nr * (&t + int(1) + &p.a) * (int(2) * &t + int(2) + &p.a)
}

/// Second cumulant of Σλ² under the β-Laguerre weight, closed form.
pub fn k2(p: &EnsembleParams) -> Rational {
    let nr = p.n_rat();
    let a = &p.a;
    let t1 = &p.tau * (&nr - int(1));
    let inner = int(10)
        + int(2) * a * a
        + int(9) * a * (int(1) + &t1)
        + &t1 * (int(19) + &p.tau * (int(-10) + int(9) * &nr));
    int(2) * &nr * (int(1) + a + &t1) * inner
}

/// Second cumulant of the purity in the fixed-trace β ensemble, closed form.
pub fn flue_beta_kappa2(p: &EnsembleParams) -> Rational {
    let nr = p.n_rat();
    let a = &p.a;
    let t1 = &p.tau * (&nr - int(1));
    let c = p.c_beta();
    let den = pochhammer(&(&c + int(1)), 3);
    let inner = int(10)
        + int(2) * a * a
        + int(9) * a * (int(1) + &t1)
        + &t1 * (int(19) + &p.tau * (int(-10) + int(9) * &nr));
    let u = int(2) * &t1 + a + int(2);
    let first = int(2) * inner / &den;
    let second = &nr * (&t1 + a + int(1)) * &u * &u / &den;
    let third = &u / (&c + int(1));
    first + second - &third * &third
}

/// Second cumulant of the fixed-trace purity from the recursion.
pub fn flue_beta_kappa2_recursion(p: &EnsembleParams) -> Result<Rational> {
    let t = fixed_trace_beta_moments(p, 2)?;
    let m1 = &t.entries[&1];
    Ok(&t.entries[&2] - m1 * m1)
}

/// m_q as a polynomial in N at fixed (τ, a), interpolated from N = 1..=3q+2.
/// The extra node beyond the 3q+1 needed checks the degree bound.
pub fn moment_polynomial_in_n(tau: &Rational, a: &Rational, q: u32) -> Result<RationalPolynomial> {
    let nodes = 3 * q + 2;
    let mut pts = Vec::with_capacity(nodes as usize);
    for n in 1..=nodes {
        let p = EnsembleParams::new(n, a.clone(), tau.clone())?;
        let ms = moments_from_state(&build_system(&p), &init_h0(&p), q)?;
        pts.push((int(n as i64), ms[q as usize].clone()));
    }
    let poly = RationalPolynomial::interpolate(&pts)?;
    if poly.degree().is_some_and(|d| d > 3 * q as usize) {
        return Err(Error::Inconsistent(format!(
            "m_{q} is not a polynomial of degree <= {} in N at tau={tau}, a={a}",
            3 * q
        )));
    }
    Ok(poly)
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    /// m_q(N, τ, a) as a polynomial in N.
    pub direct: RationalPolynomial,
    /// (−τ)^q m_q(−τN, 1/τ, −a/τ) as a polynomial in N.
    pub dual: RationalPolynomial,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.direct == self.dual
    }
}

/// Compare m_q(N,τ,a) with (−τ)^q m_q(−τN, 1/τ, −a/τ) as polynomials in N.
pub fn duality_check(tau: &Rational, a: &Rational, q: u32) -> Result<DualityReport> {
    if tau.is_zero() {
        return Err(Error::Domain("tau must be nonzero".into()));
    }
    let direct = moment_polynomial_in_n(tau, a, q)?;
    let tau_d = tau.recip();
    let a_d = -a / tau;
    let other = moment_polynomial_in_n(&tau_d, &a_d, q)?;
    let dual = other
        .compose_scale(&-tau)
        .scale(&powi(&-tau, q as i64));
    Ok(DualityReport { direct, dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::{gamma_int, rat};

    fn bp(n: u32, a: Rational, tau: Rational) -> EnsembleParams {
        EnsembleParams::new(n, a, tau).unwrap()
    }

    #[test]
    fn system_entries() {
        let s = build_system(&bp(1, int(0), rat(1, 2)));
        let a = RationalMatrix::from_rows(vec![vec![int(-1), int(-1)], vec![int(0), int(-2)]]).unwrap();
        let b = RationalMatrix::from_rows(vec![vec![int(0), int(0)], vec![rat(-1, 2), rat(-1, 2)]]).unwrap();
        assert_eq!(s.a, a);
        assert_eq!(s.b, b);
        let s = build_system(&bp(3, int(1), int(2)));
        assert_eq!(s.a[(0, 0)], int(-18));
        assert!(s.b.row(0).iter().all(|v| v.is_zero()));
        let r = s.b_q(2);
        assert_eq!(r.row(0)[..2], [int(18 + 4), int(3)]);
    }

    #[test]
    fn kernel_vector() {
        for (n, a, tau) in [(1, int(0), int(1)), (3, rat(2, 3), rat(3, 2)), (5, int(2), rat(1, 2))] {
            let p = bp(n, a.clone(), tau);
            let h0 = init_h0(&p);
            assert!(build_system(&p).b.mul_vec(&h0.entries).iter().all(|v| v.is_zero()));
        }
        assert_eq!(init_h0(&bp(1, rat(1, 3), int(1))).entries, vec![int(1), rat(-4, 3)]);
    }

    #[test]
    fn normalization_ratio_matches_gamma_products() {
        // C_{N,a+1}/C_{N,a} = Π_j Γ(a+2+jτ)/Γ(a+1+jτ) for integer τ, a.
        for tau in 1..=2i64 {
            for a in 0..=3i64 {
                for n in 1..=4u32 {
                    let p = bp(n, int(a), int(tau));
                    let h = init_h0(&p);
                    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                    let lhs = sign * &h.entries[n as usize];
                    let mut rhs = Rational::one();
                    for j in 0..n as i64 {
                        rhs *= big(gamma_int(a + 2 + j * tau).unwrap()) / big(gamma_int(a + 1 + j * tau).unwrap());
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn first_moment_closed_form() {
        let p = bp(2, int(0), rat(1, 2));
        assert_eq!(mrs(&p), int(9));
        assert_eq!(beta_purity_moments(&p, 1).unwrap().entries[&1], int(9));
        // N = 1: λ ~ Gamma(a+1), E λ² = (a+1)(a+2)
        let p = bp(1, rat(1, 2), int(3));
        assert_eq!(beta_purity_moments(&p, 1).unwrap().entries[&1], rat(15, 4));
    }

    #[test]
    fn second_cumulant_closed_form() {
        let p = bp(4, rat(5, 7), rat(3, 2));
        let t = beta_purity_moments(&p, 2).unwrap();
        let m1 = &t.entries[&1];
        assert_eq!(&t.entries[&2] - m1 * m1, k2(&p));
        assert_eq!(flue_beta_kappa2(&bp(2, int(0), int(1))), rat(3, 175));
        let p = bp(3, int(2), int(3));
        assert_eq!(flue_beta_kappa2(&p), flue_beta_kappa2_recursion(&p).unwrap());
    }

    #[test]
    fn perturbed_start_breaks_the_mean() {
        let p = bp(2, int(0), int(1));
        let sys = build_system(&p);
        let mut h0 = init_h0(&p);
        h0.entries[1] += rat(1, 10);
        let m = moments_from_state(&sys, &h0, 1).unwrap();
        assert_ne!(m[1], mrs(&p));
    }

    #[test]
    fn unitary_case_matches_painleve() {
        for (n, a) in [(2u32, int(0)), (3, int(2)), (4, rat(1, 2))] {
            let p = bp(n, a, int(1));
            let r = beta_purity_moments(&p, 4).unwrap();
            let l = crate::painleve::lue_purity_moments(&p, 4).unwrap();
            assert_eq!(r.entries, l.entries);
        }
    }

    #[test]
    fn duality_low_orders() {
        for q in 1..=3 {
            let r = duality_check(&rat(3, 2), &rat(1, 3), q).unwrap();
            assert!(r.holds(), "q={q}");
        }
        assert_eq!(moment_polynomial_in_n(&int(1), &int(0), 1).unwrap().degree(), Some(3));
    }
}
