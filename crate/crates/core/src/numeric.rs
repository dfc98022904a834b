//! Floating-point helpers.

use crate::error::{Error, Result};

/// Adaptive Simpson quadrature of `f` over [lo, hi] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(Error::Input(format!("bad quadrature interval [{lo}, {hi}]")));
    }
    // Presplit so that periodic integrands cannot fool the first estimate.
    const PIECES: usize = 17;
    let h = (hi - lo) / PIECES as f64;
    let mut evals = 0usize;
    let mut total = 0.0;
    for k in 0..PIECES {
        let a = lo + h * k as f64;
        let b = if k + 1 == PIECES { hi } else { a + h };
        let fa = f(a);
        let fb = f(b);
        let fm = f(0.5 * (a + b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_step(&f, a, b, fa, fm, fb, whole, tol / PIECES as f64, 50, &mut evals)?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    *evals += 2;
    if *evals > 5_000_000 {
        return Err(Error::Convergence { iterations: *evals });
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_transcendentals() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let v = adaptive_simpson(|x| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
        assert!(adaptive_simpson(|x| x, 1.0, 0.0, 1e-9).is_err());
    }
}
