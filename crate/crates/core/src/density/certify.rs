use num_traits::Zero;

use super::{FlueDensity, LueDensity};
use crate::error::Result;
use crate::exec::Execution;
use crate::math::poly::RationalPolynomial;
use crate::math::rational::{int, Rational};

/// Outcome of a certification. A failed certificate keeps the evidence: the
/// residual polynomial, or the sample points where the residual is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub certified: bool,
    /// Number of sample points evaluated (0 for symbolic checks).
    pub points: usize,
    pub failures: Vec<(Rational, Rational)>,
    pub residual: Option<RationalPolynomial>,
}

impl Certificate {
    fn symbolic(residual: RationalPolynomial) -> Self {
        Self {
            certified: residual.is_zero(),
            points: 0,
            failures: Vec::new(),
            residual: Some(residual),
        }
    }
}

/// `count` distinct rationals j/(count+1) in (0,1).
fn sample_points(count: usize) -> Vec<Rational> {
    (1..=count)
        .map(|j| Rational::new((j as i64).into(), (count as i64 + 1).into()))
        .collect()
}

/// A residual known to be a polynomial of degree ≤ `degree_bound` vanishes
/// identically iff it vanishes at degree_bound + 1 distinct points.
fn certify_by_evaluation<F>(residual_at: F, degree_bound: usize, exec: Execution) -> Result<Certificate>
where
    F: Fn(&Rational) -> Rational + Sync + Send,
{
    let pts = sample_points(degree_bound + 1);
    let vals = exec.map(&pts, |x| residual_at(x))?;
    let failures: Vec<_> = pts
        .into_iter()
        .zip(vals)
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(Certificate {
        certified: failures.is_empty(),
        points: degree_bound + 1,
        failures,
        residual: None,
    })
}

fn times_x(p: &RationalPolynomial) -> RationalPolynomial {
    p.shift(1)
}

/// Writing x^j f^{(j)} = x^a e^{−x} R_j for f = x^a e^{−x} P, the residual of
/// x³f''' + 4x²f'' − [x² − 2(a+2N)x + a² − 2] x f' + [(a+2N)x − a²] f
/// reduces to R_3 + 4R_2 − [..]R_1 + [..]R_0.
pub fn certify_ode_u2(d: &LueDensity) -> Certificate {
    let a = int(d.a as i64);
    let s = &a + int(2 * d.params.n as i64);
    let next = |r: &RationalPolynomial, j: i64| -> RationalPolynomial {
        let t = r.scale(&(&a - int(j)));
        &(&t - &times_x(r)) + &times_x(&r.derivative())
    };
    let r0 = d.alpha.clone();
    let r1 = next(&r0, 0);
    let r2 = next(&r1, 1);
    let r3 = next(&r2, 2);
    let q1 = RationalPolynomial::new(vec![&a * &a - int(2), int(-2) * &s, int(1)]);
    let q0 = RationalPolynomial::new(vec![-(&a * &a), s.clone()]);
    let res = &(&(&r3 + &r2.scale(&int(4))) - &(&q1 * &r1)) + &(&q0 * &r0);
    Certificate::symbolic(res)
}

/// Row-elimination check of the 3×3 system
/// x d/dx J = [[x−a, 2(N+1), 0], [−x, −1, N], [0, −2x, −x+a]] J,
/// with J_p = x^a e^{−x} S_p and S_0 the density polynomial.
pub fn certify_matrix_ode_lue(d: &LueDensity) -> Certificate {
    let a = int(d.a as i64);
    let n = int(d.params.n as i64);
    let x = RationalPolynomial::x();
    // x d/dx (x^a e^{−x} S) = x^a e^{−x} D(S)
    let dop = |s: &RationalPolynomial| -> RationalPolynomial {
        &(&s.scale(&a) - &times_x(s)) + &times_x(&s.derivative())
    };
    let x_minus_a = RationalPolynomial::new(vec![-a.clone(), int(1)]);
    let s0 = d.alpha.clone();
    let s1 = (&dop(&s0) - &(&x_minus_a * &s0)).scale(&(int(1) / (int(2) * (&n + int(1)))));
    let s2 = (&(&dop(&s1) + &(&x * &s0)) + &s1).scale(&(int(1) / &n));
    let res = &(&dop(&s2) + &times_x(&s1).scale(&int(2))) + &(&x_minus_a * &s2);
    Certificate::symbolic(res)
}

/// Coefficients a_0..a_3 of the third-order equation for the fixed-trace density.
#[derive(Clone, Debug, PartialEq)]
pub struct FlueOdeCoefficients {
    pub a0: RationalPolynomial,
    pub a1: RationalPolynomial,
    pub a2: RationalPolynomial,
    pub a3: RationalPolynomial,
}

impl FlueOdeCoefficients {
    pub fn new(n: u32, a: u32) -> Self {
        let (n, a) = (n as i64, a as i64);
        let c = n * n + a * n;
        let s = 2 * n + a;
        Self {
            a0: RationalPolynomial::from_ints(&[-a * a, s * (c - 2)]),
            a1: RationalPolynomial::from_ints(&[0, -(a * a - 2), s * (2 * c - 7), -(c - 4) * (c - 3)]),
            a2: RationalPolynomial::from_ints(&[0, 0, 4, -2 * s, 2 * (c - 4)]),
            a3: RationalPolynomial::from_ints(&[0, 0, 0, 1, 0, -1]),
        }
    }

    fn max_degree(&self) -> usize {
        [&self.a0, &self.a1, &self.a2, &self.a3]
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}

pub fn certify_ode_flue(d: &FlueDensity) -> Result<Certificate> {
    certify_ode_flue_with(d, &FlueOdeCoefficients::new(d.params.n, d.a), Execution::default())
}

/// Exact evaluation of a_3 f''' + a_2 f'' + a_1 f' + a_0 f at rational points of (0,1).
pub fn certify_ode_flue_with(d: &FlueDensity, coeffs: &FlueOdeCoefficients, exec: Execution) -> Result<Certificate> {
    let f0 = d.to_polynomial();
    let f1 = f0.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    // a_k has degree ≤ k + 2 for the true coefficients; allow for perturbed ones.
    let bound = f0.degree().unwrap_or(0) + coeffs.max_degree();
    certify_by_evaluation(
        |x| {
            coeffs.a3.eval(x) * f3.eval(x)
                + coeffs.a2.eval(x) * f2.eval(x)
                + coeffs.a1.eval(x) * f1.eval(x)
                + coeffs.a0.eval(x) * f0.eval(x)
        },
        bound,
        exec,
    )
}

pub fn certify_matrix_ode_flue(d: &FlueDensity) -> Result<Certificate> {
    certify_matrix_ode_flue_with(d, 1, Execution::default())
}

/// Row-elimination check of
/// x I' = ((c−2)x − x² d/dx) M I + K I,
/// M = [[1,0,0],[−1,0,0],[0,−2,−1]], K = [[−a, 2(N+1), 0],[0,−1,N],[0,0,a]],
/// with I_0 = ρ(x). `sign` multiplies M; −1 is the negative control.
pub fn certify_matrix_ode_flue_with(d: &FlueDensity, sign: i64, exec: Execution) -> Result<Certificate> {
    let a = int(d.a as i64);
    let n = int(d.params.n as i64);
    let cm2 = int(d.x_power as i64);
    let sg = int(sign);
    let op = |h: &RationalPolynomial| -> RationalPolynomial {
        (&times_x(h).scale(&cm2) - &h.derivative().shift(2)).scale(&sg)
    };
    let xd = |h: &RationalPolynomial| times_x(&h.derivative());
    let i0 = d.to_polynomial();
    let i1 = (&(&xd(&i0) - &op(&i0)) + &i0.scale(&a)).scale(&(int(1) / (int(2) * (&n + int(1)))));
    let i2 = (&(&xd(&i1) + &op(&i0)) + &i1).scale(&(int(1) / &n));
    let comb = &i1.scale(&int(-2)) - &i2;
    let res = &(&xd(&i2) - &op(&comb)) - &i2.scale(&a);
    let bound = i0.degree().unwrap_or(0) + 3;
    let mut cert = certify_by_evaluation(|x| res.eval(x), bound, exec)?;
    cert.residual = Some(res);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{flue_density_from_lue, lue_density};
    use crate::math::rational::rat;
    use crate::params::EnsembleParams;

    fn lue(n: u32, a: i64) -> LueDensity {
        lue_density(&EnsembleParams::unitary(n, a).unwrap()).unwrap()
    }

    #[test]
    fn u2_holds_and_detects_perturbation() {
        for (n, a) in [(1, 0), (3, 2), (5, 3)] {
            assert!(certify_ode_u2(&lue(n, a)).certified, "N={n} a={a}");
        }
        let bad = lue(3, 2).perturbed(1, &int(1));
        let c = certify_ode_u2(&bad);
        assert!(!c.certified);
        assert!(!c.residual.unwrap().is_zero());
    }

    #[test]
    fn lue_matrix_system() {
        assert!(certify_matrix_ode_lue(&lue(2, 1)).certified);
        assert!(certify_matrix_ode_lue(&lue(4, 0)).certified);
        assert!(!certify_matrix_ode_lue(&lue(4, 0).perturbed(0, &rat(1, 3))).certified);
    }

    #[test]
    fn flue_scalar_equation() {
        for (n, a) in [(2, 0), (3, 2)] {
            let f = flue_density_from_lue(&lue(n, a)).unwrap();
            let c = certify_ode_flue(&f).unwrap();
            assert!(c.certified, "N={n} a={a}");
            assert!(c.points > f.to_polynomial().degree().unwrap() + 2);
        }
        let f = flue_density_from_lue(&lue(3, 2)).unwrap();
        let mut co = FlueOdeCoefficients::new(3, 2);
        co.a0 = &co.a0 + &RationalPolynomial::constant(int(1));
        let c = certify_ode_flue_with(&f, &co, Execution::Sequential).unwrap();
        assert!(!c.certified);
        assert!(!c.failures.is_empty());
    }

    #[test]
    fn flue_matrix_system() {
        for (n, a) in [(2, 0), (3, 1)] {
            let f = flue_density_from_lue(&lue(n, a)).unwrap();
            assert!(certify_matrix_ode_flue(&f).unwrap().certified, "N={n} a={a}");
            assert!(!certify_matrix_ode_flue_with(&f, -1, Execution::Sequential).unwrap().certified);
        }
    }
}
