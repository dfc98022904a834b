//! Terminating ₃F₂ at unit argument.

use num_traits::{One, Zero};

use super::rational::{as_i64, big, factorial, gamma_int, is_nonpositive_integer, pochhammer, Rational};
use crate::error::{Error, Result};

/// ₃F₂(a1,a2,a3; b1,b2; 1) for a series that terminates because some upper
/// parameter is a nonpositive integer.
///
/// Terms are built from the ratio of consecutive terms so intermediate
/// values stay small.
pub fn hyp3f2_terminating(
    a1: &Rational,
    a2: &Rational,
    a3: &Rational,
    b1: &Rational,
    b2: &Rational,
) -> Result<Rational> {
    let uppers = [a1, a2, a3];
    let lowers = [b1, b2];
    let last = uppers
        .iter()
        .filter(|a| is_nonpositive_integer(a))
        .filter_map(|a| as_i64(a))
        .map(|a| (-a) as usize)
        .min()
        .ok_or(Error::NonTerminating)?;

    let mut term = Rational::one();
    let mut sum = Rational::one();
    for j in 0..last {
        let jr = Rational::from_integer(j.into());
        let mut den = Rational::one();
        for b in lowers {
            let bj = b + &jr;
            if bj.is_zero() {
                return Err(Error::Pole { index: j });
            }
            den *= bj;
        }
        let mut num = Rational::one();
        for a in uppers {
            num *= a + &jr;
        }
        term = term * num / (den * (&jr + Rational::one()));
        sum += &term;
    }
    Ok(sum)
}

/// Both sides of the transformation
/// ₃F₂(−n, b, c; d, e; 1) = (d−b)_n/(d)_n · ₃F₂(−n, b, e−c; e, b−d−n+1; 1).
pub fn transformation_sides(
    n: u32,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
) -> Result<(Rational, Rational)> {
    let mn = -Rational::from_integer(n.into());
    let low = b - d + &mn + Rational::one();
    // A lower parameter can vanish inside the n-term window while an upper
    // zero stops one side early; the identity does not hold there.
    let dn = pochhammer(d, n);
    if dn.is_zero() || pochhammer(e, n).is_zero() || pochhammer(&low, n).is_zero() {
        return Err(Error::Pole { index: 0 });
    }
    let lhs = hyp3f2_terminating(&mn, b, c, d, e)?;
    let rhs = pochhammer(&(d - b), n) / dn * hyp3f2_terminating(&mn, b, &(e - c), e, &low)?;
    Ok((lhs, rhs))
}

/// Both sides of
/// Γ(N+q)/Γ(1+q) ₃F₂(1−N, 1−(N+a), 1−q; 1−(N+q), 1−(N+a+q); 1)
///   = N! ₃F₂(1−N, −q, 1−q; 2, 1−(N+a+q); 1),
/// which ties the fixed-trace and unconstrained forms of ⟨T_q⟩ together.
pub fn trace_mean_identity_sides(n: u32, a: u32, q: u32) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let (n, a, q) = (n as i64, a as i64, q as i64);
    let r = |v: i64| Rational::from_integer(v.into());
    let lhs = big(gamma_int(n + q)?) / big(gamma_int(1 + q)?)
        * hyp3f2_terminating(&r(1 - n), &r(1 - n - a), &r(1 - q), &r(1 - n - q), &r(1 - n - a - q))?;
    let rhs = big(factorial(n as u64))
        * hyp3f2_terminating(&r(1 - n), &r(-q), &r(1 - q), &r(2), &r(1 - n - a - q))?;
    Ok((lhs, rhs))
}
