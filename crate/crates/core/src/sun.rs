//! One- and two-point correlations of Haar SU(N) eigenphases, the bulk
//! expansion of the truncated two-point function, and linear-statistic
//! covariances.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("SU(N) needs N >= 2, got {n}")));
    }
    Ok(())
}

fn parity(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Below this |sin(u/2)| the ratio sin(Nu/2)/sin(u/2) is taken from its
/// trigonometric-sum form instead of the quotient.
const COINCIDENCE: f64 = 1e-8;

/// sin(Nu/2)/sin(u/2) = Σ_{k=0}^{N−1} cos((N−1−2k)u/2)
fn dirichlet(n: u32, u: f64) -> f64 {
    let s = (0.5 * u).sin();
    if s.abs() > COINCIDENCE {
        (0.5 * n as f64 * u).sin() / s
    } else {
        (0..n)
            .map(|k| ((n as f64 - 1.0 - 2.0 * k as f64) * 0.5 * u).cos())
            .sum()
    }
}

/// (N/2π)(1 − (−1)^N (2/N) cos Nθ)
pub fn rho1_sun(n: u32, theta: f64) -> f64 {
    let nf = n as f64;
    nf / (2.0 * PI) * (1.0 - parity(n) * 2.0 / nf * (nf * theta).cos())
}

/// ⟨Tr U^p⟩ over SU(N): N at p = 0, (−1)^{N−1} at p = ±N, 0 otherwise.
/// Only claimed for |p| < 2N.
pub fn trace_power_mean(n: u32, p: i64) -> Result<i64> {
    check_n(n)?;
    let n = n as i64;
    if p.abs() >= 2 * n {
        return Err(Error::Domain(format!(
            "exact one-point mean is only available for |p| < 2N = {}, got p = {p}",
            2 * n
        )));
    }
    Ok(if p == 0 {
        n
    } else if p.abs() == n {
        if n % 2 == 0 { -1 } else { 1 }
    } else {
        0
    })
}

/// −(sin(N(θ−θ')/2) / (2π sin((θ−θ')/2)))²
pub fn rho2t_u(n: u32, theta: f64, theta_p: f64) -> f64 {
    let k = dirichlet(n, theta - theta_p) / (2.0 * PI);
    -k * k
}

pub fn rho2_u(n: u32, theta: f64, theta_p: f64) -> f64 {
    let r = n as f64 / (2.0 * PI);
    r * r + rho2t_u(n, theta, theta_p)
}

/// Two-point function of SU(N) in the form that adds the constraint terms to
/// the U(N) result.
pub fn rho2_sun(n: u32, theta: f64, theta_p: f64) -> f64 {
    let nf = n as f64;
    let u = theta - theta_p;
    let v = theta + theta_p;
    let pi2 = PI * PI;
    let half = (0.5 * u).sin();
    // sin(Nu/2) cot(u/2) = D(u) cos(u/2)
    let sc = dirichlet(n, u) * (0.5 * u).cos();
    rho2_u(n, theta, theta_p)
        + 2.0 / pi2 * (nf * v).cos() * half * half
        + parity(n) / pi2 * (0.5 * nf * v).cos() * (sc - nf * (0.5 * nf * u).cos())
}

/// Truncated two-point function of SU(N).
pub fn rho2t_sun(n: u32, theta: f64, theta_p: f64) -> f64 {
    let nf = n as f64;
    let u = theta - theta_p;
    let v = theta + theta_p;
    let pi2 = PI * PI;
    let half = (0.5 * u).sin();
    let sc = dirichlet(n, u) * (0.5 * u).cos();
    rho2t_u(n, theta, theta_p) + 2.0 / pi2 * (nf * v).cos() * half * half
        + parity(n) / pi2 * (0.5 * nf * v).cos() * sc
        - (nf * theta).cos() * (nf * theta_p).cos() / pi2
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// (2π/N)² ρ2T(2πx/N, 2πx'/N) + sinc²(x−x') − (4(−1)^N/N) cos π(x+x') sinc(x−x'),
/// the part of the bulk-scaled truncated correlation beyond the 1/N term.
pub fn bulk_residual(n: u32, x: f64, x_p: f64) -> f64 {
    bulk_residual_leading_only(n, x, x_p) - 4.0 * parity(n) / n as f64 * (PI * (x + x_p)).cos() * sinc(x - x_p)
}

/// Remainder after subtracting only the sine-kernel term.
pub fn bulk_residual_leading_only(n: u32, x: f64, x_p: f64) -> f64 {
    let s = 2.0 * PI / n as f64;
    let k = sinc(x - x_p);
    s * s * rho2t_sun(n, s * x, s * x_p) + k * k
}

/// Which kernel a fluctuation formula uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    U,
    SU,
}

/// Finite Fourier series f(θ) = Σ_p c_p e^{ipθ}.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FourierSeries {
    pub modes: BTreeMap<i32, Complex64>,
}

impl FourierSeries {
    pub fn new(modes: impl IntoIterator<Item = (i32, Complex64)>) -> Self {
        Self {
            modes: modes.into_iter().collect(),
        }
    }

    /// cos(pθ)
    pub fn cosine(p: i32) -> Self {
        if p == 0 {
            return Self::new([(0, Complex64::new(1.0, 0.0))]);
        }
        Self::new([(p, Complex64::new(0.5, 0.0)), (-p, Complex64::new(0.5, 0.0))])
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.modes
            .iter()
            .map(|(&p, c)| c * Complex64::from_polar(1.0, p as f64 * theta))
            .sum()
    }

    pub fn max_mode(&self) -> u32 {
        self.modes.keys().map(|p| p.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Trapezoid sum over an M×M grid of a 2π-periodic trigonometric polynomial;
/// exact once M exceeds the degree in each variable.
fn periodic_double_sum<F: Fn(f64, f64) -> Complex64>(m: usize, f: F) -> Complex64 {
    let h = 2.0 * PI / m as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m {
        let t = -PI + h * i as f64;
        for j in 0..m {
            acc += f(t, -PI + h * j as f64);
        }
    }
    acc * h * h
}

fn kernel(group: Group) -> fn(u32, f64, f64) -> f64 {
    match group {
        Group::U => rho2t_u,
        Group::SU => rho2t_sun,
    }
}

/// Cov(Σf(θ_j), Σg(θ_j)) = −½ ∬ (f(θ)−f(θ'))(g(θ)−g(θ')) ρ2T(θ,θ') dθ dθ'.
pub fn covariance_linear_stats(n: u32, f: &FourierSeries, g: &FourierSeries, group: Group) -> Result<Complex64> {
    check_n(n)?;
    if group == Group::SU && n == 2 {
        return Ok(covariance_su2(f, g));
    }
    let k = kernel(group);
    let deg = (f.max_mode() + g.max_mode() + n + 2) as usize;
    let m = 2 * deg + 2;
    Ok(periodic_double_sum(m, |t, tp| {
        (f.eval(t) - f.eval(tp)) * (g.eval(t) - g.eval(tp)) * k(n, t, tp)
    }) * -0.5)
}

/// SU(2) phases are ±φ, so the pair function is concentrated on θ' = −θ and
/// the covariance is taken over φ with density sin²φ/π on (−π, π].
fn covariance_su2(f: &FourierSeries, g: &FourierSeries) -> Complex64 {
    let m = 2 * (f.max_mode() + g.max_mode() + 2) as usize + 2;
    let h = 2.0 * PI / m as f64;
    let (mut ef, mut eg, mut efg) = (Complex64::default(), Complex64::default(), Complex64::default());
    for i in 0..m {
        let t = -PI + h * i as f64;
        let w = t.sin().powi(2) / PI * h;
        let a = f.eval(t) + f.eval(-t);
        let b = g.eval(t) + g.eval(-t);
        ef += a * w;
        eg += b * w;
        efg += a * b * w;
    }
    efg - ef * eg
}

/// ⟨|Tr U^p|²⟩ = N + ∬ e^{ip(θ−θ')} ρ2(θ,θ') dθ dθ'.
pub fn abs2_trace_power_mean(n: u32, p: i32, group: Group) -> Result<f64> {
    check_n(n)?;
    let deg = (p.unsigned_abs() + n + 2) as usize;
    let m = 2 * deg + 2;
    let pf = p as f64;
    let v = periodic_double_sum(m, |t, tp| {
        let r2 = match group {
            Group::U => rho2_u(n, t, tp),
            Group::SU => rho2_sun(n, t, tp),
        };
        Complex64::from_polar(r2, pf * (t - tp))
    });
    Ok(n as f64 + v.re)
}

/// Grid rows (θ, θ', ρ2, ρ2T) for export.
pub fn correlation_grid(n: u32, points: usize) -> Result<Vec<[f64; 4]>> {
    check_n(n)?;
    let h = 2.0 * PI / points as f64;
    let mut out = Vec::with_capacity(points * points);
    for i in 0..points {
        for j in 0..points {
            let (t, tp) = (-PI + h * i as f64, -PI + h * j as f64);
            out.push([t, tp, rho2_sun(n, t, tp), rho2t_sun(n, t, tp)]);
        }
    }
    Ok(out)
}
