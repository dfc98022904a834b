//! Streaming estimators, histograms and the Kolmogorov–Smirnov distance.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::SampleBatch;
use crate::error::{Error, Result};

/// Welford accumulator; `merge` is Chan's pairwise update.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Welford {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let n = self.count + other.count;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.count as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * self.count as f64 * other.count as f64 / n as f64;
        Self { count: n, mean, m2 }
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimatorResult {
    pub statistic: String,
    pub mean: f64,
    pub std_error: f64,
    pub count: u64,
}

impl EstimatorResult {
    fn from_welford(statistic: String, w: &Welford) -> Result<Self> {
        if w.count < 2 {
            return Err(Error::Input(format!("need at least 2 draws, got {}", w.count)));
        }
        Ok(Self {
            statistic,
            mean: w.mean,
            std_error: (w.variance() / w.count as f64).sqrt(),
            count: w.count,
        })
    }

    /// |mean − target| / std_error (infinite if the error is zero and they differ).
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.mean - target).abs();
        if d == 0.0 {
            0.0
        } else if self.std_error == 0.0 {
            f64::INFINITY
        } else {
            d / self.std_error
        }
    }
}

/// Two-sample z statistic for independent estimates.
pub fn two_sample_z(a: &EstimatorResult, b: &EstimatorResult) -> f64 {
    let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    let d = (a.mean - b.mean).abs();
    if d == 0.0 {
        0.0
    } else {
        d / se
    }
}

/// Named functions of one draw. Draws hold eigenvalues, or eigenphases for
/// circular ensembles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LinearStatistic {
    Constant(f64),
    /// Σ λ_j^q
    PowerSum(i32),
    Purity,
    /// Σ cos(pθ_j) = Re Tr U^p
    TraceRe(i32),
    /// Σ sin(pθ_j) = Im Tr U^p
    TraceIm(i32),
    /// Re(Tr U^p · conj(Tr U^q))
    PairProductRe(i32, i32),
    /// Im(Tr U^p · conj(Tr U^q))
    PairProductIm(i32, i32),
}

fn trace_power(thetas: &[f64], p: i32) -> Complex64 {
    thetas
        .iter()
        .map(|t| Complex64::from_polar(1.0, p as f64 * t))
        .sum()
}

impl LinearStatistic {
    pub fn label(&self) -> String {
        match self {
            Self::Constant(c) => format!("constant({c})"),
            Self::PowerSum(q) => format!("T_{q}"),
            Self::Purity => "purity".into(),
            Self::TraceRe(p) => format!("Re Tr U^{p}"),
            Self::TraceIm(p) => format!("Im Tr U^{p}"),
            Self::PairProductRe(p, q) => format!("Re Tr U^{p} conj(Tr U^{q})"),
            Self::PairProductIm(p, q) => format!("Im Tr U^{p} conj(Tr U^{q})"),
        }
    }

    pub fn eval(&self, draw: &[f64]) -> f64 {
        match *self {
            Self::Constant(c) => c,
            Self::PowerSum(q) => draw.iter().map(|x| x.powi(q)).sum(),
            Self::Purity => draw.iter().map(|x| x * x).sum(),
            Self::TraceRe(p) => draw.iter().map(|t| (p as f64 * t).cos()).sum(),
            Self::TraceIm(p) => draw.iter().map(|t| (p as f64 * t).sin()).sum(),
            Self::PairProductRe(p, q) => (trace_power(draw, p) * trace_power(draw, q).conj()).re,
            Self::PairProductIm(p, q) => (trace_power(draw, p) * trace_power(draw, q).conj()).im,
        }
    }
}

impl std::str::FromStr for LinearStatistic {
    type Err = Error;

    /// `purity`, `t:q`, `re:p`, `im:p`, `abs2:p` or `const:c`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown statistic '{s}' (purity, t:q, re:p, im:p, abs2:p, const:c)"));
        if s == "purity" {
            return Ok(Self::Purity);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        if kind == "const" {
            return arg.parse().map(Self::Constant).map_err(|_| bad());
        }
        let k: i32 = arg.parse().map_err(|_| bad())?;
        match kind {
            "t" => Ok(Self::PowerSum(k)),
            "re" => Ok(Self::TraceRe(k)),
            "im" => Ok(Self::TraceIm(k)),
            "abs2" => Ok(Self::PairProductRe(k, k)),
            _ => Err(bad()),
        }
    }
}

/// Mean and standard error of a statistic over the batch. Accumulates per
/// shard and merges in shard order.
pub fn estimate_linear_statistic(batch: &SampleBatch, stat: LinearStatistic) -> Result<EstimatorResult> {
    estimate_with(batch, &stat.label(), |d| stat.eval(d))
}

pub fn estimate_with<F: Fn(&[f64]) -> f64>(batch: &SampleBatch, label: &str, f: F) -> Result<EstimatorResult> {
    if batch.draws.is_empty() {
        return Err(Error::Input("empty sample batch".into()));
    }
    let mut total = Welford::default();
    for chunk in batch.draws.chunks(batch.shard_size.max(1)) {
        let mut w = Welford::default();
        for d in chunk {
            w.push(f(d));
        }
        total = total.merge(&w);
    }
    EstimatorResult::from_welford(label.to_string(), &total)
}

/// Covariance of two statistics with a standard error from the per-draw
/// products of centred values.
pub fn estimate_covariance<F, G>(batch: &SampleBatch, f: F, g: G) -> Result<EstimatorResult>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> f64,
{
    let fs: Vec<f64> = batch.draws.iter().map(|d| f(d)).collect();
    let gs: Vec<f64> = batch.draws.iter().map(|d| g(d)).collect();
    if fs.len() < 2 {
        return Err(Error::Input("need at least 2 draws".into()));
    }
    let n = fs.len() as f64;
    let mf = fs.iter().sum::<f64>() / n;
    let mg = gs.iter().sum::<f64>() / n;
    let mut w = Welford::default();
    for (a, b) in fs.iter().zip(&gs) {
        w.push((a - mf) * (b - mg));
    }
    let mut r = EstimatorResult::from_welford("covariance".into(), &w)?;
    r.mean *= n / (n - 1.0);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Number of values offered, including those outside [lo, hi).
    pub total: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if !(hi > lo) || bins == 0 {
            return Err(Error::Input(format!("bad histogram range [{lo}, {hi}) with {bins} bins")));
        }
        let w = (hi - lo) / bins as f64;
        Ok(Self {
            edges: (0..=bins).map(|i| lo + w * i as f64).collect(),
            counts: vec![0; bins],
            total: 0,
        })
    }

    pub fn push(&mut self, x: f64) {
        self.total += 1;
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        if x >= lo && x < hi {
            let nb = self.counts.len();
            let b = ((x - lo) / (hi - lo) * nb as f64) as usize;
            self.counts[b.min(nb - 1)] += 1;
        }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    pub fn center(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }

    /// count / (total · width)
    pub fn density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.total as f64 * self.width(i))
    }

    /// Binomial standard error of [`Self::density`].
    pub fn density_error(&self, i: usize) -> f64 {
        let p = self.counts[i] as f64 / self.total as f64;
        (p * (1.0 - p) / self.total as f64).sqrt() / self.width(i)
    }

    /// Average of `f` over bin i by Simpson's rule, for comparison with
    /// [`Self::density`].
    pub fn bin_average<F: Fn(f64) -> f64>(&self, i: usize, f: F) -> f64 {
        let (a, b) = (self.edges[i], self.edges[i + 1]);
        let m = 16;
        let h = (b - a) / m as f64;
        let mut s = f(a) + f(b);
        for k in 1..m {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + h * k as f64);
        }
        s * h / 3.0 / (b - a)
    }
}

/// sup |F_n − F| over the sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    d
}

/// 1% critical value of the one-sample KS statistic, large-n form.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

/// Wrap into (−π, π].
pub fn wrap_phase(t: f64) -> f64 {
    let mut x = t.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}
