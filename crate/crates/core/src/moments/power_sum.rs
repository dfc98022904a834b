//! ⟨T_q^k⟩ over the fixed-trace LUE by three independent routes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Ensemble, MomentTable, Quantity, Route, Statistic};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::math::combinat::{compositions, narayana, Composition};
use crate::math::hypergeom::hyp3f2_terminating;
use crate::math::rational::{big, factorial, gamma_int, int, Rational};
use crate::params::EnsembleParams;

/// ⟨(Σ λ_j^q)^k⟩ over the fLUE as a weighted sum over weak compositions of k.
pub fn flue_tq_moment_sum(p: &EnsembleParams, q: u32, k: u32) -> Result<Rational> {
    flue_tq_moment_sum_with(p, q, k, Execution::default())
}

pub fn flue_tq_moment_sum_with(
    p: &EnsembleParams,
    q: u32,
    k: u32,
    exec: Execution,
) -> Result<Rational> {
    p.require_unitary()?;
    let a = p.integer_a()? as i64;
    let n = p.n as i64;
    let c = n * (n + a);

    let comps: Vec<Composition> = compositions(k, p.n as usize).collect();
    let terms = exec.map(&comps, |comp| composition_term(comp, n, a, q))?;
    let total: BigInt = terms.into_iter().sum();

    // Π_{i<j} (j - i) = Π_{i=1}^{N} (i-1)!
    let vandermonde: BigInt = (1..=n as u64).map(|i| factorial(i - 1)).product();
    let pre = big(factorial(c as u64 - 1)) / big(factorial((c + (q * k) as i64 - 1) as u64));
    Ok(pre * big(total) / big(vandermonde))
}

/// Integer numerator of one composition's contribution: the multinomial,
/// the rising factorials and the un-normalised double product.
fn composition_term(comp: &Composition, n: i64, a: i64, q: u32) -> BigInt {
    let parts = comp.parts();
    let q = q as i64;
    let mut dbl = BigInt::one();
    for i in 1..=n {
        let ki = parts[(i - 1) as usize] as i64;
        for j in i + 1..=n {
            let kj = parts[(j - 1) as usize] as i64;
            let f = q * ki - i - q * kj + j;
            if f == 0 {
                return BigInt::zero();
            }
            dbl *= f;
        }
    }
    let mut acc = comp.multinomial() * dbl;
    for i in 1..=n {
        let ki = parts[(i - 1) as usize] as i64;
        // (N + a + q k_i - i)! / (N + a - i)!
        for v in (n + a - i + 1)..=(n + a - i + q * ki) {
            acc *= v;
        }
    }
    acc
}

/// Table of ⟨T_q^k⟩ for k = 0..=kmax by the composition sum.
pub fn flue_tq_moments(p: &EnsembleParams, q: u32, kmax: u32, exec: Execution) -> Result<MomentTable> {
    let mut entries = BTreeMap::new();
    for k in 0..=kmax {
        entries.insert(k, flue_tq_moment_sum_with(p, q, k, exec)?);
    }
    Ok(MomentTable {
        statistic: Statistic::PowerSum(q),
        quantity: Quantity::Moments,
        ensemble: Ensemble::Flue,
        route: Route::CompositionSum,
        params: p.clone(),
        entries,
    })
}

/// ⟨T_q⟩ over the fLUE through a terminating ₃F₂ at unit argument.
pub fn flue_tq_mean_3f2(p: &EnsembleParams, q: u32) -> Result<Rational> {
    p.require_unitary()?;
    let a = p.integer_a()? as i64;
    let n = p.n as i64;
    let q = q as i64;
    let c = n * (n + a);
    let one = Rational::one();

    let pre = big(gamma_int(c)?) / big(gamma_int(c + q)?)
        * big(gamma_int(n + a + q)?)
        / big(gamma_int(n + a)?)
        * big(gamma_int(n + q)?)
        / (big(gamma_int(1 + q)?) * big(gamma_int(n)?));
    let f = hyp3f2_terminating(
        &(&one - int(n)),
        &(&one - int(n + a)),
        &(&one - int(q)),
        &(&one - int(n + q)),
        &(&one - int(n + a + q)),
    )?;
    Ok(pre * f)
}

/// ⟨T_q⟩ over the fLUE as a Narayana-weighted sum, q ≥ 1.
pub fn flue_tq_mean_narayana(p: &EnsembleParams, q: u32) -> Result<Rational> {
    p.require_unitary()?;
    if q == 0 {
        return Err(Error::Domain("the Narayana form needs q >= 1".into()));
    }
    let a = p.integer_a()? as i64;
    let n = p.n as i64;
    let c = n * (n + a);
    let qi = q as i64;
    let pre = big(gamma_int(n)?) * big(gamma_int(c + 1)?)
        / (big(gamma_int(n + a + 1)?) * big(gamma_int(c + qi)?));
    let mut sum = Rational::zero();
    // 1/Γ(N+1-k) vanishes for k > N.
    for k in 1..=q.min(p.n) {
        let ki = k as i64;
        sum += narayana(q, k)? * big(gamma_int(n + a + 1 + qi - ki)?) / big(gamma_int(n + 1 - ki)?);
    }
    Ok(pre * sum)
}

/// Σ_{k=1}^{q} N_{q,k} α^{k-1}: integer moments of the Marchenko–Pastur law.
pub fn mp_limit_moment(alpha: &Rational, q: u32) -> Result<Rational> {
    let mut sum = Rational::zero();
    let mut pw = Rational::one();
    for k in 1..=q {
        sum += narayana(q, k)? * &pw;
        pw *= alpha;
    }
    Ok(sum)
}
