use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;

/// α_± = (√(α+1) ± 1)²
pub fn mp_edges(alpha: f64) -> (f64, f64) {
    let r = (alpha + 1.0).sqrt();
    ((r - 1.0).powi(2), (r + 1.0).powi(2))
}

/// f(y) = √((y − α_−)(α_+ − y)) / (2πy) on [α_−, α_+], zero elsewhere.
pub fn mp_density(alpha: f64, y: f64) -> f64 {
    let (lo, hi) = mp_edges(alpha);
    if y <= lo || y >= hi || y <= 0.0 {
        return 0.0;
    }
    ((y - lo) * (hi - y)).sqrt() / (2.0 * PI * y)
}

/// ∫ y^k f(y) dy by adaptive Simpson after y = α_− + (α_+ − α_−) sin²φ,
/// which removes the square-root endpoint behaviour.
pub fn mp_moment(alpha: f64, k: u32, tol: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("alpha must be nonnegative, got {alpha}")));
    }
    let (lo, hi) = mp_edges(alpha);
    let w = hi - lo;
    let g = |phi: f64| {
        let (s, c) = phi.sin_cos();
        let s2 = s * s;
        let y = lo + w * s2;
        // f dy = w² · 2 s² c² / (2π y)
        let ratio = if lo == 0.0 { 1.0 / w } else { s2 / y };
        let yk = if k == 0 { 1.0 } else { y.powi(k as i32) };
        w * w * c * c * ratio * yk / PI
    };
    adaptive_simpson(g, 0.0, PI / 2.0, tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MpCertificate {
    pub certified: bool,
    pub points: usize,
    pub max_relative_residual: f64,
}

pub fn certify_ode_mp(alpha: f64) -> MpCertificate {
    certify_ode_mp_with(alpha, 0.0)
}

/// Residual of −(y² − 2(α+2)y + α²) y f' + ((α+2)y − α²) f at 64 interior
/// points, with f' from the closed form f'/f = −1/y + ½(1/(y−α_−) − 1/(α_+−y)).
/// `perturb` is added to both occurrences of (α+2).
pub fn certify_ode_mp_with(alpha: f64, perturb: f64) -> MpCertificate {
    let (lo, hi) = mp_edges(alpha);
    let b = alpha + 2.0 + perturb;
    let points = 64;
    let mut worst = 0.0f64;
    for j in 1..=points {
        let y = lo + (hi - lo) * j as f64 / (points + 1) as f64;
        let f = mp_density(alpha, y);
        let logd = -1.0 / y + 0.5 * (1.0 / (y - lo) - 1.0 / (hi - y));
        let fp = f * logd;
        let t1 = -(y * y - 2.0 * b * y + alpha * alpha) * y * fp;
        let t2 = (b * y - alpha * alpha) * f;
        let scale = t1.abs() + t2.abs();
        let rel = if scale == 0.0 { 0.0 } else { (t1 + t2).abs() / scale };
        worst = worst.max(rel);
    }
    MpCertificate {
        certified: worst < 1e-10,
        points,
        max_relative_residual: worst,
    }
}
