//! Three-term recurrences for the density moments m_k = ∫ x^k ρ(x) dx.

use std::collections::BTreeMap;

use num_traits::Signed;

use super::{Ensemble, MomentTable, Quantity, Route, Statistic};
use crate::error::{Error, Result};
use crate::math::rational::{int, Rational};
use crate::params::EnsembleParams;

fn check(p: &EnsembleParams) -> Result<()> {
    p.require_unitary()?;
    if !(&p.a + int(1)).is_positive() {
        return Err(Error::Domain(format!("need a > -1, got {}", p.a)));
    }
    Ok(())
}

fn table(p: &EnsembleParams, ensemble: Ensemble, ms: Vec<Rational>) -> MomentTable {
    MomentTable {
        statistic: Statistic::DensityMoments,
        quantity: Quantity::Moments,
        ensemble,
        route: Route::Recurrence,
        params: p.clone(),
        entries: ms.into_iter().enumerate().map(|(k, v)| (k as u32, v)).collect::<BTreeMap<_, _>>(),
    }
}

/// LUE density moments for k = 0..=kmax:
/// (k+1) m_k = (2k−1)(a+2N) m_{k−1} + (k−2)((k−1)²−a²) m_{k−2}, m_0 = N, m_1 = N² + Na.
pub fn lue_moment_recurrence(p: &EnsembleParams, kmax: u32) -> Result<MomentTable> {
    check(p)?;
    let a = &p.a;
    let n = p.n_rat();
    let mut m = vec![n.clone(), p.c()];
    let s = a + int(2) * &n;
    for k in 2..=kmax as i64 {
        let km1 = int(k - 1);
        let v = (int(2 * k - 1) * &s * &m[(k - 1) as usize]
            + int(k - 2) * (&km1 * &km1 - a * a) * &m[(k - 2) as usize])
            / int(k + 1);
        m.push(v);
    }
    m.truncate(kmax as usize + 1);
    Ok(table(p, Ensemble::Lue, m))
}

/// fLUE density moments for k = 0..=kmax, with c = N² + Na:
/// (k+1)(c+k−1)(c+k−2) m_k = (2k−1)(a+2N)(c+k−2) m_{k−1} + (k−2)((k−1)²−a²) m_{k−2},
/// m_0 = N, m_1 = 1.
pub fn flue_moment_recurrence(p: &EnsembleParams, kmax: u32) -> Result<MomentTable> {
    check(p)?;
    let a = &p.a;
    let n = p.n_rat();
    let c = p.c();
    let mut m = vec![n.clone(), int(1)];
    let s = a + int(2) * &n;
    for k in 2..=kmax as i64 {
        let km1 = int(k - 1);
        let c1 = &c + int(k - 1);
        let c2 = &c + int(k - 2);
        let rhs = int(2 * k - 1) * &s * &c2 * &m[(k - 1) as usize]
            + int(k - 2) * (&km1 * &km1 - a * a) * &m[(k - 2) as usize];
        m.push(rhs / (int(k + 1) * c1 * c2));
    }
    m.truncate(kmax as usize + 1);
    Ok(table(p, Ensemble::Flue, m))
}
