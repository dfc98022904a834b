//! Cross-route acceptance checks. Each criterion runs independently and
//! reports a pass flag, a one-line detail and its wall-clock time.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::beta_rec::{beta_purity_moments, duality_check, flue_beta_kappa2, flue_beta_kappa2_recursion, k2, mrs};
use crate::density::{
    certify_matrix_ode_flue, certify_matrix_ode_flue_with, certify_matrix_ode_lue, certify_ode_flue,
    certify_ode_flue_with, certify_ode_mp, certify_ode_mp_with, certify_ode_u2, flue_density_from_lue, lue_density,
    mp_density, mp_edges, FlueOdeCoefficients,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::math::rational::{int, rat};
use crate::math::{transformation_sides, trace_mean_identity_sides, RationalPolynomial};
use crate::moments::{
    flue_moment_recurrence, flue_tq_mean_3f2, flue_tq_mean_narayana, flue_tq_moment_sum, lue_moment_recurrence,
    purity_cdf_n2,
};
use crate::painleve::{flue_purity_cumulants, flue_purity_cumulants_closed_form, flue_purity_moments};
use crate::params::EnsembleParams;
use crate::sampling::{
    estimate_linear_statistic, ks_critical_1pct, ks_statistic, sample_beta_laguerre, sample_flue, sample_lue,
    sample_sun, Histogram, LinearStatistic, RngSpec, SampleBatch,
};
use crate::sun::{abs2_trace_power_mean, bulk_residual, trace_power_mean, Group};

pub const DEFAULT_SEED: u64 = 20_211_115;

/// Number of criteria.
pub const CRITERIA: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Reduced draw counts and parameter ranges; seconds in total.
    Quick,
    /// The full published ranges and 10⁵-draw Monte Carlo runs.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
    pub exec: Execution,
}

impl VerifyConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            seed: DEFAULT_SEED,
            exec: Execution::default(),
        }
    }

    fn full(&self) -> bool {
        self.suite == Suite::Full
    }

    fn draws(&self, full: usize, quick: usize) -> usize {
        if self.full() {
            full
        } else {
            quick
        }
    }

    fn rng(&self, id: u32) -> RngSpec {
        RngSpec::new(self.seed.wrapping_add(id as u64))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
    /// Set when the check could not run at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn within_time(&self) -> bool {
        self.seconds < self.limit_seconds
    }

    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {:<32} {:>8.2}s (limit {:>4}s)  {}",
            if self.passed && self.within_time() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.limit_seconds,
            self.error.as_deref().unwrap_or(&self.detail)
        )
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn name_and_limit(id: u32) -> (&'static str, f64) {
    match id {
        1 => ("cumulant closed forms", 10.0),
        2 => ("cross-route moments", 30.0),
        3 => ("beta recursion closed forms", 10.0),
        4 => ("duality", 60.0),
        5 => ("density ODE certification", 60.0),
        6 => ("moment recurrences", 10.0),
        7 => ("3F2 identities", 10.0),
        8 => ("N=2 purity law", 120.0),
        9 => ("Monte Carlo purity means", 300.0),
        10 => ("Marchenko-Pastur limit", 300.0),
        11 => ("SU(N) correlations", 300.0),
        _ => ("unknown", 0.0),
    }
}

pub fn run_criterion(id: u32, cfg: &VerifyConfig) -> CriterionResult {
    let (name, limit) = name_and_limit(id);
    let start = Instant::now();
    let res = match id {
        1 => cumulant_closed_forms(cfg),
        2 => cross_route_moments(cfg),
        3 => beta_closed_forms(cfg),
        4 => duality(cfg),
        5 => ode_certification(cfg),
        6 => moment_recurrences(cfg),
        7 => hypergeometric_identities(cfg),
        8 => purity_law_n2(cfg),
        9 => monte_carlo_means(cfg),
        10 => marchenko_pastur(cfg),
        11 => sun_correlations(cfg),
        _ => Err(Error::Input(format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    match res {
        Ok(o) => CriterionResult {
            id,
            name,
            passed: o.passed,
            detail: o.detail,
            seconds,
            limit_seconds: limit,
            error: None,
        },
        Err(e) => CriterionResult {
            id,
            name,
            passed: false,
            detail: String::new(),
            seconds,
            limit_seconds: limit,
            error: Some(e.to_string()),
        },
    }
}

pub fn run_suite(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA).map(|id| run_criterion(id, cfg)).collect()
}

fn up(n: u32, a: i64) -> Result<EnsembleParams> {
    EnsembleParams::unitary(n, a)
}

fn cumulant_closed_forms(cfg: &VerifyConfig) -> Result<Outcome> {
    let nmax = if cfg.full() { 6 } else { 4 };
    let mut checked = 0;
    for n in 2..=nmax {
        for a in 0..=3 {
            let p = up(n, a)?;
            let series = flue_purity_cumulants(&p, 3)?;
            let closed = flue_purity_cumulants_closed_form(&p)?;
            if series.as_slice() != closed.as_slice() {
                return Ok(outcome(false, format!("N={n} a={a}: {series:?} vs {closed:?}")));
            }
            checked += 1;
        }
    }
    Ok(outcome(true, format!("kappa_1..3 equal at {checked} (N, a) pairs")))
}

fn cross_route_moments(cfg: &VerifyConfig) -> Result<Outcome> {
    let amax = if cfg.full() { 3 } else { 1 };
    let mut checked = 0;
    for n in 1..=4 {
        for a in 0..=amax {
            let p = up(n, a)?;
            let pain = flue_purity_moments(&p, 3)?;
            for k in 1..=3 {
                let sum = flue_tq_moment_sum(&p, 2, k)?;
                if pain.get(k) != Some(&sum) {
                    return Ok(outcome(false, format!("N={n} a={a} k={k}: composition sum {sum} vs {:?}", pain.get(k))));
                }
                checked += 1;
            }
            let m1 = flue_tq_moment_sum(&p, 2, 1)?;
            let (h, nar) = (flue_tq_mean_3f2(&p, 2)?, flue_tq_mean_narayana(&p, 2)?);
            if h != m1 || nar != m1 {
                return Ok(outcome(false, format!("N={n} a={a}: mean {m1}, 3F2 {h}, Narayana {nar}")));
            }
        }
    }
    Ok(outcome(true, format!("{checked} moments identical across routes")))
}

const TAUS: [(i64, i64); 4] = [(1, 2), (1, 1), (3, 2), (3, 1)];

fn random_triple(rng: &mut ChaCha8Rng) -> Result<EnsembleParams> {
    let n = rng.random_range(1..=6u32);
    let (tn, td) = TAUS[rng.random_range(0..TAUS.len())];
    let den = rng.random_range(1..=5i64);
    // a > −1 keeps the weight integrable
    let num = rng.random_range(-den + 1..=4 * den);
    EnsembleParams::new(n, rat(num, den), rat(tn, td))
}

fn beta_closed_forms(cfg: &VerifyConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    let count = if cfg.full() { 10 } else { 4 };
    for _ in 0..count {
        let p = random_triple(&mut rng)?;
        let t = beta_purity_moments(&p, 2)?;
        let (m1, m2) = (&t.entries[&1], &t.entries[&2]);
        let kappa2 = m2 - m1 * m1;
        if *m1 != mrs(&p) || kappa2 != k2(&p) {
            return Ok(outcome(
                false,
                format!("N={} tau={} a={}: m1 {m1} vs {}, k2 {kappa2} vs {}", p.n, p.tau, p.a, mrs(&p), k2(&p)),
            ));
        }
        let (closed, rec) = (flue_beta_kappa2(&p), flue_beta_kappa2_recursion(&p)?);
        if closed != rec {
            return Ok(outcome(false, format!("N={} tau={} a={}: fixed-trace k2 {closed} vs {rec}", p.n, p.tau, p.a)));
        }
    }
    Ok(outcome(true, format!("m1, k2 and fixed-trace k2 exact at {count} random triples")))
}

fn duality(cfg: &VerifyConfig) -> Result<Outcome> {
    let all = [(rat(3, 2), rat(1, 3)), (rat(1, 2), int(2)), (int(3), rat(-1, 2)), (int(1), int(0))];
    let pairs = if cfg.full() { &all[..] } else { &all[..1] };
    let qmax = if cfg.full() { 3 } else { 2 };
    for (tau, a) in pairs {
        for q in 1..=qmax {
            let r = duality_check(tau, a, q)?;
            if !r.holds() {
                return Ok(outcome(false, format!("tau={tau} a={a} q={q}: {:?} vs {:?}", r.direct, r.dual)));
            }
        }
    }
    Ok(outcome(true, format!("identity holds as polynomials in N for q <= {qmax} at {} (tau, a)", pairs.len())))
}

fn ode_certification(cfg: &VerifyConfig) -> Result<Outcome> {
    let (nmax, amax) = if cfg.full() { (5, 3) } else { (3, 1) };
    let mut count = 0;
    for n in 1..=nmax {
        for a in 0..=amax {
            let d = lue_density(&up(n, a as i64)?)?;
            if !certify_ode_u2(&d).certified || !certify_matrix_ode_lue(&d).certified {
                return Ok(outcome(false, format!("LUE N={n} a={a} not certified")));
            }
            let bad = d.perturbed(1, &rat(1, 7));
            if certify_ode_u2(&bad).certified || certify_matrix_ode_lue(&bad).certified {
                return Ok(outcome(false, format!("LUE N={n} a={a}: perturbed density certified")));
            }
            count += 1;
            if n < 2 {
                continue;
            }
            let f = flue_density_from_lue(&d)?;
            if !certify_ode_flue(&f)?.certified || !certify_matrix_ode_flue(&f)?.certified {
                return Ok(outcome(false, format!("fLUE N={n} a={a} not certified")));
            }
            let mut co = FlueOdeCoefficients::new(n, a);
            co.a0 = &co.a0 + &RationalPolynomial::constant(int(1));
            if certify_ode_flue_with(&f, &co, cfg.exec)?.certified
                || certify_matrix_ode_flue_with(&f, -1, cfg.exec)?.certified
            {
                return Ok(outcome(false, format!("fLUE N={n} a={a}: negative control certified")));
            }
            count += 1;
        }
    }
    Ok(outcome(true, format!("{count} densities certified, every negative control rejected")))
}

fn moment_recurrences(cfg: &VerifyConfig) -> Result<Outcome> {
    let (nmax, amax) = if cfg.full() { (5, 3) } else { (3, 1) };
    for n in 1..=nmax {
        for a in 0..=amax {
            let p = up(n, a)?;
            let d = lue_density(&p)?;
            let lue = lue_moment_recurrence(&p, 6)?;
            for k in 0..=6 {
                if lue.get(k) != Some(&d.moment(k)) {
                    return Ok(outcome(false, format!("LUE N={n} a={a} k={k}")));
                }
            }
            if n < 2 {
                continue;
            }
            let f = flue_density_from_lue(&d)?;
            let flue = flue_moment_recurrence(&p, 6)?;
            for k in 0..=6 {
                if flue.get(k) != Some(&f.moment(k)) {
                    return Ok(outcome(false, format!("fLUE N={n} a={a} k={k}")));
                }
            }
        }
    }
    Ok(outcome(true, format!("k <= 6 equal to density integrals for N <= {nmax}, a <= {amax}")))
}

fn hypergeometric_identities(cfg: &VerifyConfig) -> Result<Outcome> {
    let nmax = if cfg.full() { 8 } else { 4 };
    for n in 1..=nmax {
        for a in 0..=3 {
            for q in 1..=4 {
                let (l, r) = trace_mean_identity_sides(n, a, q)?;
                if l != r {
                    return Ok(outcome(false, format!("trace identity at N={n} a={a} q={q}: {l} vs {r}")));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(7));
    let r = |rng: &mut ChaCha8Rng| {
        let den = rng.random_range(1..=9i64);
        rat(rng.random_range(-30..=30), den)
    };
    let (mut accepted, mut attempts) = (0, 0);
    while accepted < 20 {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::Inconsistent("could not draw pole-free parameters".into()));
        }
        let n = rng.random_range(0..=4u32);
        let (b, c, d, e) = (r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng));
        match transformation_sides(n, &b, &c, &d, &e) {
            Ok((l, rr)) if l == rr => accepted += 1,
            Ok((l, rr)) => {
                return Ok(outcome(false, format!("transformation at n={n} b={b} c={c} d={d} e={e}: {l} vs {rr}")))
            }
            Err(Error::Pole { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(outcome(true, format!("trace identity for N <= {nmax}; transformation at 20 random parameter sets")))
}

fn purity(batch: &SampleBatch) -> Vec<f64> {
    batch.draws.iter().map(|d| LinearStatistic::Purity.eval(d)).collect()
}

fn purity_law_n2(cfg: &VerifyConfig) -> Result<Outcome> {
    let draws = cfg.draws(100_000, 20_000);
    let mut parts = Vec::new();
    let mut ok = true;
    for a in [0u32, 2] {
        let b = sample_flue(&up(2, a as i64)?, draws, &cfg.rng(8 + 100 * a), cfg.exec)?;
        let d = ks_statistic(&purity(&b), |t| purity_cdf_n2(a, t));
        let crit = ks_critical_1pct(draws);
        ok &= d < crit;
        parts.push(format!("a={a}: D={d:.5} < {crit:.5}"));
    }
    Ok(outcome(ok, format!("{} draws; {}", draws, parts.join(", "))))
}

fn monte_carlo_means(cfg: &VerifyConfig) -> Result<Outcome> {
    let draws = cfg.draws(100_000, 10_000);
    let mut parts = Vec::new();
    let mut ok = true;
    // (N, β, a); β = 2 uses dense Wishart matrices, the others the bidiagonal model
    for (n, beta, a) in [(4u32, 2i64, 1i64), (4, 1, 0), (3, 4, 2)] {
        let p = EnsembleParams::new(n, int(a), rat(beta, 2))?;
        let rng = cfg.rng(9 + 10 * n + 100 * beta as u32);
        let b = if beta == 2 {
            sample_lue(&p, draws, &rng, cfg.exec)?
        } else {
            sample_beta_laguerre(&p, draws, &rng, cfg.exec)?
        };
        let est = estimate_linear_statistic(&b, LinearStatistic::Purity)?;
        let exact = crate::math::rational::to_f64(&mrs(&p));
        let z = est.z_score(exact);
        ok &= z < 4.0;
        parts.push(format!("({n},{beta},{a}) z={z:.2}"));
    }
    Ok(outcome(ok, format!("{draws} draws each; {}", parts.join(", "))))
}

/// Largest |histogram − MP bin average| over bins at least `margin` bins
/// from either edge of the support.
fn mp_sup_distance(n: u32, draws: usize, cfg: &VerifyConfig) -> Result<f64> {
    let b = sample_flue(&up(n, n as i64)?, draws, &cfg.rng(10 + n), cfg.exec)?;
    let alpha = 1.0;
    let (lo, hi) = mp_edges(alpha);
    let bins = 40;
    let margin = 3;
    let mut h = Histogram::new(lo, hi, bins)?;
    let scale = n as f64 * (1.0 + alpha);
    for d in &b.draws {
        for &l in d {
            h.push(scale * l);
        }
    }
    Ok((margin..bins - margin)
        .map(|i| (h.density(i) - h.bin_average(i, |y| mp_density(alpha, y))).abs())
        .fold(0.0, f64::max))
}

fn marchenko_pastur(cfg: &VerifyConfig) -> Result<Outcome> {
    // same number of eigenvalues at every N
    let total = cfg.draws(2_000_000, 400_000);
    let mut ds = Vec::new();
    for n in [8u32, 16, 32] {
        ds.push((n, mp_sup_distance(n, total / n as usize, cfg)?));
    }
    let decreasing = ds.windows(2).all(|w| w[1].1 < w[0].1);
    let cert = certify_ode_mp(1.0);
    let control = certify_ode_mp_with(1.0, 1e-3);
    let desc: Vec<String> = ds.iter().map(|(n, d)| format!("N={n}: {d:.4}")).collect();
    Ok(outcome(
        decreasing && cert.certified && !control.certified,
        format!(
            "sup distance {}; ODE residual {:.1e}, perturbed {:.1e}",
            desc.join(", "),
            cert.max_relative_residual,
            control.max_relative_residual
        ),
    ))
}

/// sup |bulk remainder| over a 41×41 grid of (x, x') in [−1, 1]².
fn bulk_sup(n: u32) -> f64 {
    let g = 40;
    let mut m = 0.0f64;
    for i in 0..=g {
        for j in 0..=g {
            let x = -1.0 + 2.0 * i as f64 / g as f64;
            let xp = -1.0 + 2.0 * j as f64 / g as f64;
            m = m.max(bulk_residual(n, x, xp).abs());
        }
    }
    m
}

fn sun_correlations(cfg: &VerifyConfig) -> Result<Outcome> {
    let draws = cfg.draws(100_000, 20_000);
    let mut worst = 0.0f64;
    let mut checks = 0;
    for n in 2..=4u32 {
        let b = sample_sun(n, draws, &cfg.rng(11 + n), cfg.exec)?;
        for p in 0..=(n as i32 + 1) {
            let want = trace_power_mean(n, p as i64)? as f64;
            let re = estimate_linear_statistic(&b, LinearStatistic::TraceRe(p))?;
            let im = estimate_linear_statistic(&b, LinearStatistic::TraceIm(p))?;
            worst = worst.max(re.z_score(want)).max(im.z_score(0.0));
            checks += 2;
        }
        let ni = n as i32;
        for p in [1, ni - 1, ni, ni + 1] {
            let want = abs2_trace_power_mean(n, p, Group::SU)?;
            let est = estimate_linear_statistic(&b, LinearStatistic::PairProductRe(p, p))?;
            worst = worst.max(est.z_score(want));
            checks += 1;
        }
    }
    let sups: Vec<f64> = [8u32, 16, 32].iter().map(|&n| bulk_sup(n)).collect();
    let ratios: Vec<f64> = sups.windows(2).map(|w| w[1] / w[0]).collect();
    let ratio_ok = ratios.iter().all(|r| (r - 0.25).abs() <= 0.25 * 0.25);
    let (rmin, rmax) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    Ok(outcome(
        worst < 4.0 && ratio_ok,
        format!("{checks} MC checks, max |z| = {worst:.2}; bulk remainder sup ratios in [{rmin:.3}, {rmax:.3}]"),
    ))
}
