//! Seeded Monte Carlo sampling of the Laguerre, fixed-trace, β-Laguerre and
//! SU(N) ensembles.
//!
//! Draws are generated in fixed-size shards. Shard s uses the ChaCha8 stream s
//! of the run seed, so a batch is a deterministic function of (seed, params,
//! count) whatever the number of workers.

pub mod eigen;
pub mod estimate;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::math::rational::{to_f64, Rational};
use crate::params::EnsembleParams;
use eigen::{complex_eigenvalues, hermitian_eigenvalues, tridiagonal_eigenvalues, ComplexMatrix};

pub use estimate::{
    estimate_covariance, estimate_linear_statistic, estimate_with, ks_critical_1pct, ks_statistic,
    two_sample_z, wrap_phase, EstimatorResult, Histogram, LinearStatistic, Welford,
};

pub const RNG_ALGORITHM: &str = "chacha8-stream-per-shard";
pub const DEFAULT_SHARD_SIZE: usize = 1000;

/// Fraction of eigensolver failures tolerated before a run is abandoned.
const MAX_REJECT_FRACTION: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngSpec {
    pub seed: u64,
    pub algorithm: &'static str,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            algorithm: RNG_ALGORITHM,
        }
    }

    pub fn shard_rng(&self, shard: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(shard);
        rng
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub ensemble: String,
    pub params: Option<EnsembleParams>,
    pub dim: u32,
    pub rng: RngSpec,
    pub shard_size: usize,
    /// Eigenvalues (ascending) or eigenphases in (−π, π], one vector per draw.
    pub draws: Vec<Vec<f64>>,
    /// Draws discarded after an eigensolver failure and redrawn.
    pub rejected: usize,
}

impl SampleBatch {
    pub fn count(&self) -> usize {
        self.draws.len()
    }
}

fn run_shards<F>(n_draws: usize, rng: &RngSpec, exec: Execution, draw: F) -> Result<(Vec<Vec<f64>>, usize)>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<f64>> + Sync + Send,
{
    let shards: Vec<(u64, usize)> = (0..n_draws.div_ceil(DEFAULT_SHARD_SIZE))
        .map(|s| (s as u64, DEFAULT_SHARD_SIZE.min(n_draws - s * DEFAULT_SHARD_SIZE)))
        .collect();
    let results = exec.map(&shards, |&(s, len)| -> Result<(Vec<Vec<f64>>, usize)> {
        let mut r = rng.shard_rng(s);
        let mut out = Vec::with_capacity(len);
        let mut rejected = 0usize;
        while out.len() < len {
            match draw(&mut r) {
                Ok(v) => out.push(v),
                Err(Error::Convergence { .. }) => {
                    rejected += 1;
                    if rejected as f64 > MAX_REJECT_FRACTION * len as f64 + 1.0 {
                        return Err(Error::Sampling(format!("shard {s}: {rejected} eigensolver failures")));
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok((out, rejected))
    })?;
    let mut draws = Vec::with_capacity(n_draws);
    let mut rejected = 0;
    for r in results {
        let (d, k) = r?;
        draws.extend(d);
        rejected += k;
    }
    if rejected as f64 > MAX_REJECT_FRACTION * n_draws as f64 && rejected > 0 {
        return Err(Error::Sampling(format!("{rejected} of {n_draws} draws rejected")));
    }
    Ok((draws, rejected))
}

/// Standard complex Gaussian with E|g|² = 1.
fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * s, im * s)
}

/// Eigenvalues of G†G for an (N+a)×N complex Ginibre G.
fn lue_draw<R: Rng>(n: usize, a: usize, rng: &mut R) -> Result<Vec<f64>> {
    let rows = n + a;
    let g: Vec<Complex64> = (0..rows * n).map(|_| complex_gaussian(rng)).collect();
    let mut w = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..rows {
                s += g[k * n + i].conj() * g[k * n + j];
            }
            if i == j {
                s.im = 0.0;
            }
            w.set(i, j, s);
            w.set(j, i, s.conj());
        }
    }
    hermitian_eigenvalues(&w)
}

fn check_unitary_integer(p: &EnsembleParams) -> Result<(usize, usize)> {
    p.require_unitary()?;
    Ok((p.n as usize, p.integer_a()? as usize))
}

pub fn sample_lue(p: &EnsembleParams, n_draws: usize, rng: &RngSpec, exec: Execution) -> Result<SampleBatch> {
    let (n, a) = check_unitary_integer(p)?;
    let (draws, rejected) = run_shards(n_draws, rng, exec, |r| lue_draw(n, a, r))?;
    Ok(SampleBatch {
        ensemble: "lue".into(),
        params: Some(p.clone()),
        dim: p.n,
        rng: rng.clone(),
        shard_size: DEFAULT_SHARD_SIZE,
        draws,
        rejected,
    })
}

/// LUE draws divided by their trace.
pub fn sample_flue(p: &EnsembleParams, n_draws: usize, rng: &RngSpec, exec: Execution) -> Result<SampleBatch> {
    let (n, a) = check_unitary_integer(p)?;
    let (draws, rejected) = run_shards(n_draws, rng, exec, |r| {
        let mut ev = lue_draw(n, a, r)?;
        normalise_trace(&mut ev);
        Ok(ev)
    })?;
    Ok(SampleBatch {
        ensemble: "flue".into(),
        params: Some(p.clone()),
        dim: p.n,
        rng: rng.clone(),
        shard_size: DEFAULT_SHARD_SIZE,
        draws,
        rejected,
    })
}

fn normalise_trace(ev: &mut [f64]) {
    let s: f64 = ev.iter().sum();
    for x in ev.iter_mut() {
        *x /= s;
    }
}

/// χ_k = √(2·Gamma(k/2, 1)), valid for any real k > 0.
fn chi<R: Rng>(k: f64, rng: &mut R) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("chi degrees of freedom must be positive, got {k}")));
    }
    let g = Gamma::new(k / 2.0, 1.0).map_err(|e| Error::Domain(format!("gamma({}) : {e}", k / 2.0)))?;
    Ok((2.0 * g.sample(rng)).sqrt())
}

/// Degrees of freedom of the lower-bidiagonal model for the weight
/// λ^a e^{−λ} |Δ|^β: diagonal χ_{2a+2+β(N−i)}, subdiagonal χ_{β(N−i)}, i = 1..N.
fn bidiagonal_degrees(n: usize, a: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let diag = (1..=n).map(|i| 2.0 * a + 2.0 + beta * (n - i) as f64).collect();
    let sub = (1..n).map(|i| beta * (n - i) as f64).collect();
    (diag, sub)
}

fn beta_laguerre_draw<R: Rng>(dd: &[f64], sd: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    let n = dd.len();
    let mut d = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n.saturating_sub(1));
    for &k in dd {
        d.push(chi(k, rng)?);
    }
    for &k in sd {
        s.push(chi(k, rng)?);
    }
    // T = B Bᵀ, B lower bidiagonal with B_ii = d_i, B_{i+1,i} = s_i
    let diag: Vec<f64> = (0..n)
        .map(|i| d[i] * d[i] + if i > 0 { s[i - 1] * s[i - 1] } else { 0.0 })
        .collect();
    let off: Vec<f64> = (0..n.saturating_sub(1)).map(|i| d[i] * s[i]).collect();
    let mut ev = tridiagonal_eigenvalues(&diag, &off)?;
    // eig(BBᵀ) carries e^{−λ/2}
    for x in ev.iter_mut() {
        *x *= 0.5;
    }
    Ok(ev)
}

/// β-Laguerre draws for the weight λ^a e^{−λ} |Δ|^{2τ}.
pub fn sample_beta_laguerre(p: &EnsembleParams, n_draws: usize, rng: &RngSpec, exec: Execution) -> Result<SampleBatch> {
    let a = to_f64(&p.a);
    let beta = 2.0 * to_f64(&p.tau);
    if p.a <= Rational::from_integer((-1).into()) {
        return Err(Error::Domain(format!("need a > -1, got {}", p.a)));
    }
    let (dd, sd) = bidiagonal_degrees(p.n as usize, a, beta);
    let (draws, rejected) = run_shards(n_draws, rng, exec, |r| beta_laguerre_draw(&dd, &sd, r))?;
    Ok(SampleBatch {
        ensemble: "beta-laguerre".into(),
        params: Some(p.clone()),
        dim: p.n,
        rng: rng.clone(),
        shard_size: DEFAULT_SHARD_SIZE,
        draws,
        rejected,
    })
}

/// Trace-normalised β-Laguerre draws.
pub fn sample_fixed_trace_beta(p: &EnsembleParams, n_draws: usize, rng: &RngSpec, exec: Execution) -> Result<SampleBatch> {
    let mut b = sample_beta_laguerre(p, n_draws, rng, exec)?;
    for d in &mut b.draws {
        normalise_trace(d);
    }
    b.ensemble = "fixed-trace-beta".into();
    Ok(b)
}

/// Haar U(N) by QR of a complex Ginibre matrix with R's diagonal made positive.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|_| (0..n).map(|_| complex_gaussian(rng)).collect()).collect();
    // modified Gram–Schmidt; r_jj > 0 is the phase fix
    for j in 0..n {
        for k in 0..j {
            let (left, right) = cols.split_at_mut(j);
            let qk = &left[k];
            let proj: Complex64 = qk.iter().zip(right[0].iter()).map(|(q, v)| q.conj() * v).sum();
            for (v, q) in right[0].iter_mut().zip(qk) {
                *v -= proj * q;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::Convergence { iterations: 0 });
        }
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u.set(i, j, *z);
        }
    }
    Ok(u)
}

/// Eigenphases of a Haar SU(N) matrix, ascending in (−π, π].
fn sun_draw<R: Rng>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    let mut u = haar_unitary(n, rng)?;
    let det = u.determinant();
    let phi = det.arg();
    u.scale(Complex64::from_polar(1.0, -phi / n as f64));
    let det = u.determinant();
    if (det - Complex64::new(1.0, 0.0)).norm() >= 1e-10 {
        return Err(Error::Convergence { iterations: 0 });
    }
    let ev = complex_eigenvalues(&u)?;
    let mut th: Vec<f64> = ev.iter().map(|z| wrap_phase(z.arg())).collect();
    th.sort_by(f64::total_cmp);
    Ok(th)
}

pub fn sample_sun(n: u32, n_draws: usize, rng: &RngSpec, exec: Execution) -> Result<SampleBatch> {
    if n < 2 {
        return Err(Error::Domain(format!("SU(N) sampling needs N >= 2, got {n}")));
    }
    let (draws, rejected) = run_shards(n_draws, rng, exec, |r| sun_draw(n as usize, r))?;
    Ok(SampleBatch {
        ensemble: "su".into(),
        params: None,
        dim: n,
        rng: rng.clone(),
        shard_size: DEFAULT_SHARD_SIZE,
        draws,
        rejected,
    })
}

/// Write one statistic per draw as CSV, preceded by a `# ` parameter line.
pub fn write_batch_csv<W: std::io::Write>(
    batch: &SampleBatch,
    stats: &[LinearStatistic],
    mut out: W,
) -> Result<()> {
    writeln!(out, "# {}", header_line(batch))?;
    let mut w = csv::Writer::from_writer(out);
    let mut head = vec!["draw".to_string()];
    head.extend(stats.iter().map(|s| s.label()));
    w.write_record(&head)?;
    for (i, d) in batch.draws.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(stats.iter().map(|s| format!("{:.17e}", s.eval(d))));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Histogram CSV with columns bin_left, bin_right, count, density_estimate.
pub fn write_histogram_csv<W: std::io::Write>(h: &Histogram, header: &str, mut out: W) -> Result<()> {
    writeln!(out, "# {header}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bin_left", "bin_right", "count", "density_estimate"])?;
    for i in 0..h.bins() {
        w.write_record(&[
            format!("{:.17e}", h.edges[i]),
            format!("{:.17e}", h.edges[i + 1]),
            h.counts[i].to_string(),
            format!("{:.17e}", h.density(i)),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn header_line(batch: &SampleBatch) -> String {
    let params = match &batch.params {
        Some(p) => format!("N={} a={} tau={}", p.n, p.a, p.tau),
        None => format!("N={}", batch.dim),
    };
    format!(
        "ensemble={} {} draws={} seed={} rng={}",
        batch.ensemble,
        params,
        batch.count(),
        batch.rng.seed,
        batch.rng.algorithm
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::{int, rat};

    fn up(n: u32, a: i64) -> EnsembleParams {
        EnsembleParams::unitary(n, a).unwrap()
    }

    #[test]
    fn reproducible_across_worker_counts() {
        let p = up(3, 1);
        let rng = RngSpec::new(42);
        let a = sample_lue(&p, 2500, &rng, Execution::Sequential).unwrap();
        let b = sample_lue(&p, 2500, &rng, Execution::with_jobs(3)).unwrap();
        assert_eq!(a.draws, b.draws);
        let c = sample_lue(&p, 2500, &RngSpec::new(43), Execution::Sequential).unwrap();
        assert_ne!(a.draws, c.draws);
    }

    #[test]
    fn lue_trace_mean() {
        let p = up(3, 2);
        let b = sample_lue(&p, 10_000, &RngSpec::new(1), Execution::default()).unwrap();
        assert!(b.draws.iter().flatten().all(|&x| x >= -1e-10));
        let t = estimate_linear_statistic(&b, LinearStatistic::PowerSum(1)).unwrap();
        assert!(t.z_score(15.0) < 4.0, "{t:?}");
    }

    #[test]
    fn single_exponential_purity() {
        let b = sample_lue(&up(1, 0), 20_000, &RngSpec::new(5), Execution::default()).unwrap();
        let t = estimate_linear_statistic(&b, LinearStatistic::Purity).unwrap();
        assert!(t.z_score(2.0) < 4.0, "{t:?}");
    }

    #[test]
    fn flue_simplex() {
        let b = sample_flue(&up(3, 1), 2000, &RngSpec::new(9), Execution::default()).unwrap();
        for d in &b.draws {
            assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let t = estimate_linear_statistic(&b, LinearStatistic::PowerSum(1)).unwrap();
        assert!((t.mean - 1.0).abs() < 1e-12 && t.std_error < 1e-12);
        let c = estimate_linear_statistic(&b, LinearStatistic::Constant(3.0)).unwrap();
        assert_eq!((c.mean, c.std_error), (3.0, 0.0));
    }

    #[test]
    fn beta_two_matches_dense_route() {
        let p = up(3, 1);
        let dense = sample_lue(&p, 20_000, &RngSpec::new(21), Execution::default()).unwrap();
        let bid = sample_beta_laguerre(&p, 20_000, &RngSpec::new(22), Execution::default()).unwrap();
        let x = estimate_linear_statistic(&dense, LinearStatistic::Purity).unwrap();
        let y = estimate_linear_statistic(&bid, LinearStatistic::Purity).unwrap();
        assert!(two_sample_z(&x, &y) < 4.0, "{x:?} {y:?}");
    }

    #[test]
    fn beta_one_mean_purity() {
        let p = EnsembleParams::new(2, int(0), rat(1, 2)).unwrap();
        let b = sample_beta_laguerre(&p, 50_000, &RngSpec::new(3), Execution::default()).unwrap();
        let t = estimate_linear_statistic(&b, LinearStatistic::Purity).unwrap();
        assert!(t.z_score(9.0) < 4.0, "{t:?}");
    }

    #[test]
    fn bad_chi_degree() {
        let p = EnsembleParams::new(2, int(-2), int(1)).unwrap();
        assert!(matches!(
            sample_beta_laguerre(&p, 10, &RngSpec::new(0), Execution::Sequential),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sun_determinant_and_low_traces() {
        let b = sample_sun(3, 5000, &RngSpec::new(8), Execution::default()).unwrap();
        for d in &b.draws {
            let s: f64 = d.iter().sum();
            assert!(wrap_phase(s).abs() < 1e-8);
            assert!(d.iter().all(|t| *t > -std::f64::consts::PI && *t <= std::f64::consts::PI));
        }
        let t = estimate_linear_statistic(&b, LinearStatistic::TraceRe(1)).unwrap();
        assert!(t.z_score(0.0) < 4.0);
        let t = estimate_linear_statistic(&b, LinearStatistic::TraceRe(3)).unwrap();
        assert!(t.z_score(1.0) < 4.0, "{t:?}");
        assert!(sample_sun(1, 10, &RngSpec::new(0), Execution::Sequential).is_err());
    }

    #[test]
    fn csv_export_has_header() {
        let b = sample_flue(&up(2, 0), 3, &RngSpec::new(1), Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        write_batch_csv(&b, &[LinearStatistic::Purity], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("# ensemble=flue N=2 a=0 tau=1 draws=3 seed=1"));
        assert_eq!(s.lines().count(), 5);
    }
}
