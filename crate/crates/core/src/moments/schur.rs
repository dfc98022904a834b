//! The simplex integral J_{a,N}(k) and the moment route built on it.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::math::combinat::{compositions, Composition};
use crate::math::rational::{big, factorial, gamma_int, Rational};
use crate::params::EnsembleParams;

/// J_{a,N}(k) = N! ∫_{Σx=1} Δ(x) Π x_i^{a+k_i+i−1}
///            = N! Π Γ(a+k_i+i) Π_{i<j}(k_j−k_i+j−i) / Γ(N²+aN+Σk).
pub fn schur_flue_integral(p: &EnsembleParams, kvec: &Composition) -> Result<Rational> {
    p.require_unitary()?;
    let a = p.integer_a()? as i64;
    let n = p.n as i64;
    let k = kvec.parts();
    if k.len() != p.n as usize {
        return Err(Error::Input(format!(
            "composition has {} parts, expected N = {}",
            k.len(),
            p.n
        )));
    }
    let ks: i64 = k.iter().map(|&v| v as i64).sum();
    let mut num = factorial(n as u64);
    for i in 1..=n {
        num *= gamma_int(a + k[(i - 1) as usize] as i64 + i)?;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let f = k[(j - 1) as usize] as i64 - k[(i - 1) as usize] as i64 + j - i;
            if f == 0 {
                return Ok(Rational::zero());
            }
            num *= f;
        }
    }
    Ok(big(num) / big(gamma_int(n * n + a * n + ks)?))
}

/// C^{fL}_{N,a} = N! Π_{l<N} l!(a+l)! / Γ(aN + N²).
pub fn flue_normalization(p: &EnsembleParams) -> Result<Rational> {
    let a = p.integer_a()? as u64;
    let n = p.n as u64;
    let mut num = factorial(n);
    for l in 0..n {
        num *= factorial(l) * factorial(a + l);
    }
    Ok(big(num) / big(gamma_int((a * n + n * n) as i64)?))
}

/// ⟨T_q^k⟩ = (1/C^{fL}) Σ_{|k|=k} multinomial · J(q·k).
pub fn tq_moment_via_schur(p: &EnsembleParams, q: u32, k: u32) -> Result<Rational> {
    let mut sum = Rational::zero();
    for comp in compositions(k, p.n as usize) {
        let scaled = Composition::new(comp.parts().iter().map(|&v| v * q).collect());
        sum += big(comp.multinomial()) * schur_flue_integral(p, &scaled)?;
    }
    Ok(sum / flue_normalization(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::linalg::RationalMatrix;
    use crate::math::rational::{int, rat};
    use crate::moments::flue_tq_moment_sum;

    /// Independent evaluation: Laplace transform of the simplex integral turns
    /// Δ(x) into a determinant of Gamma values.
    fn j_by_determinant(n: u32, a: i64, k: &[u32]) -> Rational {
        let nn = n as usize;
        let rows = (0..nn)
            .map(|i| {
                (0..nn)
                    .map(|j| big(gamma_int(a + k[i] as i64 + i as i64 + 1 + j as i64).unwrap()))
                    .collect()
            })
            .collect();
        let det = RationalMatrix::from_rows(rows).unwrap().determinant();
        let ks: i64 = k.iter().map(|&v| v as i64).sum();
        let n = n as i64;
        big(factorial(n as u64)) * det / big(gamma_int(n * n + a * n + ks).unwrap())
    }

    #[test]
    fn single_variable_is_one() {
        for a in 0..4 {
            for k in 0..5 {
                let p = EnsembleParams::unitary(1, a).unwrap();
                assert_eq!(schur_flue_integral(&p, &Composition::new(vec![k])).unwrap(), int(1));
            }
        }
    }

    #[test]
    fn zero_vector_is_normalization() {
        for n in 1..=5 {
            for a in 0..=3 {
                let p = EnsembleParams::unitary(n, a).unwrap();
                let z = Composition::new(vec![0; n as usize]);
                assert_eq!(schur_flue_integral(&p, &z).unwrap(), flue_normalization(&p).unwrap());
            }
        }
    }

    #[test]
    fn matches_determinant_oracle() {
        for (n, a, k) in [(2, 0, vec![1, 0]), (3, 1, vec![2, 0, 4]), (3, 2, vec![0, 1, 0]), (4, 0, vec![3, 1, 2, 0])] {
            let p = EnsembleParams::unitary(n, a).unwrap();
            assert_eq!(
                schur_flue_integral(&p, &Composition::new(k.clone())).unwrap(),
                j_by_determinant(n, a, &k),
                "N={n} a={a} k={k:?}"
            );
        }
    }

    #[test]
    fn reproduces_composition_sum() {
        let p = EnsembleParams::unitary(2, 0).unwrap();
        assert_eq!(tq_moment_via_schur(&p, 2, 1).unwrap(), rat(4, 5));
        for (n, a, q, k) in [(3, 1, 2, 2), (4, 2, 3, 1), (3, 0, 2, 3)] {
            let p = EnsembleParams::unitary(n, a).unwrap();
            assert_eq!(tq_moment_via_schur(&p, q, k).unwrap(), flue_tq_moment_sum(&p, q, k).unwrap());
        }
    }
}
