//! Arbitrary-precision rationals and the integer combinatorics built on them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always held in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Rising factorial u(u+1)...(u+p-1); 1 for p = 0.
pub fn pochhammer(u: &Rational, p: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = u.clone();
    for _ in 0..p {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Gamma at a positive integer argument, Γ(n) = (n-1)!.
pub fn gamma_int(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Domain(format!("Gamma pole at nonpositive integer {n}")));
    }
    Ok(factorial((n - 1) as u64))
}

/// Γ(n) as a rational; convenience for formulas that divide by Gamma values.
pub fn gamma_rat(n: i64) -> Result<Rational> {
    gamma_int(n).map(big)
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// The value as an `i64` if it is an integer that fits.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale down huge operands before converting so the ratio stays finite.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 1000 && db < 1000 {
        return n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN);
    }
    let shift = (nb.max(db) - 900).max(0) as usize;
    let ns = n >> shift;
    let ds = d >> shift;
    match (ns.to_f64(), ds.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => {
            // One side underflowed to zero after the shift.
            if nb > db {
                f64::INFINITY * sign_f64(n)
            } else {
                0.0
            }
        }
    }
}

fn sign_f64(n: &BigInt) -> f64 {
    if n.sign() == Sign::Minus {
        -1.0
    } else {
        1.0
    }
}

/// Decimal rendering with `digits` places after the point, rounded half away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = r.abs() * big(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let q = if &twice >= scaled.denom() { q + 1u32 } else { q };
    let (int_part, frac_part) = q.div_rem(&scale);
    let neg = r.is_negative() && !(int_part.is_zero() && frac_part.is_zero());
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        s.push('.');
        for _ in frac.len()..digits {
            s.push('0');
        }
        s.push_str(&frac);
    }
    s
}

/// Parse "p", "p/q" or a finite decimal like "-0.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse '{s}' as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10u32), fp.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(big(n))
}

/// Signed integer power of a rational.
pub fn powi(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}
