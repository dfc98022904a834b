//! `fixtrace`: command-line front end. All numerics live in fixtrace-core;
//! this file parses arguments, calls the library and writes JSON/CSV.

mod output;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use fixtrace_core::beta_rec::{beta_purity_moments, fixed_trace_beta_moments};
use fixtrace_core::density::{
    certify_matrix_ode_flue, certify_matrix_ode_lue, certify_ode_flue, certify_ode_mp, certify_ode_u2,
    flue_density_from_lue, lue_density, mp_density, mp_edges, tabulate_flue, tabulate_lue,
};
use fixtrace_core::math::rational::{int, parse_rational, rat, Rational};
use fixtrace_core::moments::{
    flue_moment_recurrence, flue_tq_mean_3f2, flue_tq_mean_narayana, flue_tq_moments, Ensemble, MomentTable, Quantity,
    Route, Statistic,
};
use fixtrace_core::painleve::purity_cumulant_table;
use fixtrace_core::params::ParamsRecord;
use fixtrace_core::sampling::{
    estimate_linear_statistic, sample_beta_laguerre, sample_fixed_trace_beta, sample_flue, sample_lue, sample_sun,
    write_batch_csv, write_histogram_csv, header_line, Histogram, LinearStatistic, RngSpec, SampleBatch,
    RNG_ALGORITHM,
};
use fixtrace_core::sun::{
    abs2_trace_power_mean, bulk_residual, bulk_residual_leading_only, correlation_grid, covariance_linear_stats,
    rho1_sun, trace_power_mean, FourierSeries, Group,
};
use fixtrace_core::verify::{run_suite, Suite, VerifyConfig, DEFAULT_SEED};
use fixtrace_core::{EnsembleParams, Error, Execution};
use serde_json::{json, Value};

use output::{write_rows, Document, Failure, SeedInfo};

#[derive(Parser)]
#[command(name = "fixtrace", version, about = "Exact and sampled statistics of fixed-trace Laguerre, beta-Laguerre and SU(N) ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moments ⟨T_q^k⟩ of T_q = Σλ^q over the fixed-trace ensemble.
    Moments(MomentsArgs),
    /// Purity cumulants from the Painlevé series.
    Cumulants(CumulantsArgs),
    /// Purity moments of the β-Laguerre ensemble from the bidiagonal recursion.
    BetaMoments(BetaArgs),
    /// Tabulate and optionally certify a one-point density.
    Density(DensityArgs),
    /// Monte Carlo estimates from sampled spectra.
    Mc(McArgs),
    /// SU(N) one- and two-point functions, bulk remainder and covariances.
    Sun(SunArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long, default_value_t = 0)]
    a: i64,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    kmax: u32,
    #[arg(long, value_enum, default_value_t = MomentRoute::Sum)]
    route: MomentRoute,
    /// Also render each value as a decimal with this many digits.
    #[arg(long)]
    digits: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MomentRoute {
    Sum,
    #[value(name = "3f2")]
    Hyp3f2,
    Narayana,
    Recurrence,
}

#[derive(Args)]
struct CumulantsArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long, default_value = "0")]
    a: String,
    #[arg(long, default_value_t = 3)]
    nmax: u32,
    #[arg(long, value_enum, default_value_t = UnitaryEnsemble::Flue)]
    ensemble: UnitaryEnsemble,
    #[arg(long)]
    digits: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitaryEnsemble {
    Lue,
    Flue,
}

#[derive(Args)]
struct BetaArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long, default_value = "0")]
    a: String,
    #[arg(long, default_value = "1")]
    tau: String,
    #[arg(long, default_value_t = 2)]
    qmax: u32,
    #[arg(long)]
    fixed_trace: bool,
    #[arg(long, default_value_t = 20)]
    digits: usize,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long = "N", default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    a: i64,
    #[arg(long, value_enum, default_value_t = DensityKind::Flue)]
    ensemble: DensityKind,
    /// Marchenko–Pastur ratio, required for `--ensemble mp`.
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 20)]
    grid: u32,
    /// Right end of the LUE grid; defaults to 4N + 2a + 8.
    #[arg(long)]
    xmax: Option<u32>,
    #[arg(long, default_value_t = 16)]
    digits: usize,
    #[arg(long)]
    certify: bool,
    /// Write the grid as CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DensityKind {
    Lue,
    Flue,
    Mp,
}

#[derive(Args)]
struct McArgs {
    #[arg(long, value_enum)]
    ensemble: McEnsemble,
    #[arg(long = "N")]
    n: u32,
    #[arg(long, default_value = "0")]
    a: String,
    /// Dyson index for `--ensemble beta`.
    #[arg(long, default_value = "2")]
    beta: String,
    /// Constrain the β ensemble to unit trace.
    #[arg(long)]
    fixed_trace: bool,
    #[arg(long, default_value_t = 10_000)]
    draws: usize,
    /// Defaults to $FIXTRACE_SEED, then to a built-in constant.
    #[arg(long)]
    seed: Option<u64>,
    /// purity, t:q, re:p, im:p, abs2:p or const:c; repeatable.
    #[arg(long)]
    statistic: Vec<String>,
    /// Histogram the eigenvalues (or phases) with this many bins.
    #[arg(long)]
    hist: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Per-draw statistics as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    hist_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum McEnsemble {
    Lue,
    Flue,
    Beta,
    Sun,
}

#[derive(Args)]
#[command(group = ArgGroup::new("quantity").required(true).multiple(false).args(["rho1", "rho2", "bulk", "cov"]))]
struct SunArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long)]
    rho1: bool,
    #[arg(long)]
    rho2: bool,
    #[arg(long)]
    bulk: bool,
    #[arg(long)]
    cov: bool,
    #[arg(long, default_value_t = 32)]
    grid: usize,
    /// Modes of f = cos(pθ) and g = cos(qθ) for `--cov`.
    #[arg(long, default_value_t = 1)]
    p: i32,
    #[arg(long, default_value_t = 1)]
    q: i32,
    #[arg(long, value_enum, default_value_t = GroupArg::Su)]
    group: GroupArg,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    U,
    Su,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
    suite: SuiteArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

fn exec(jobs: Option<usize>) -> Execution {
    jobs.map(Execution::with_jobs).unwrap_or_default()
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn table_doc(command: &'static str, t: &MomentTable, digits: Option<usize>, algorithms: Value) -> Result<Document, Failure> {
    let rec = serde_json::to_value(t.record(digits)).map_err(Failure::internal)?;
    Ok(Document::new(command)
        .parameters(serde_json::to_value(ParamsRecord::from(&t.params)).map_err(Failure::internal)?)
        .route(serde_json::to_value(t.route).map_err(Failure::internal)?)
        .algorithms(algorithms)
        .result(rec))
}

fn moments(args: MomentsArgs) -> Result<Document, Failure> {
    let p = EnsembleParams::unitary(args.n, args.a)?;
    let table = match args.route {
        MomentRoute::Sum => flue_tq_moments(&p, args.q, args.kmax, exec(args.jobs))?,
        other => {
            if args.kmax != 1 {
                return Err(Error::Domain(format!(
                    "route {} only provides the mean (kmax = 1), got kmax = {}",
                    route_name(other),
                    args.kmax
                ))
                .into());
            }
            let (mean, route) = match other {
                MomentRoute::Hyp3f2 => (flue_tq_mean_3f2(&p, args.q)?, Route::Hypergeometric3F2),
                MomentRoute::Narayana => (flue_tq_mean_narayana(&p, args.q)?, Route::Narayana),
                _ => {
                    let t = flue_moment_recurrence(&p, args.q)?;
                    (t.entries[&args.q].clone(), Route::Recurrence)
                }
            };
            MomentTable {
                statistic: Statistic::PowerSum(args.q),
                quantity: Quantity::Moments,
                ensemble: Ensemble::Flue,
                route,
                params: p.clone(),
                entries: [(0, int(1)), (1, mean)].into_iter().collect(),
            }
        }
    };
    let mut doc = table_doc("moments", &table, args.digits, json!({"arithmetic": "exact-rational"}))?;
    doc.add_parameter("q", json!(args.q));
    doc.add_parameter("kmax", json!(args.kmax));
    Ok(doc)
}

fn route_name(r: MomentRoute) -> &'static str {
    match r {
        MomentRoute::Sum => "sum",
        MomentRoute::Hyp3f2 => "3f2",
        MomentRoute::Narayana => "narayana",
        MomentRoute::Recurrence => "recurrence",
    }
}

fn cumulants(args: CumulantsArgs) -> Result<Document, Failure> {
    let p = EnsembleParams::new(args.n, rational(&args.a)?, int(1))?;
    let ens = match args.ensemble {
        UnitaryEnsemble::Lue => Ensemble::Lue,
        UnitaryEnsemble::Flue => Ensemble::Flue,
    };
    let t = purity_cumulant_table(&p, args.nmax, ens)?;
    let mut doc = table_doc("cumulants", &t, args.digits, json!({"series": "sigma-PIV Laurent coefficients"}))?;
    doc.add_parameter("nmax", json!(args.nmax));
    Ok(doc)
}

fn beta_moments(args: BetaArgs) -> Result<Document, Failure> {
    let p = EnsembleParams::new(args.n, rational(&args.a)?, rational(&args.tau)?)?;
    let t = if args.fixed_trace {
        fixed_trace_beta_moments(&p, args.qmax)?
    } else {
        beta_purity_moments(&p, args.qmax)?
    };
    let mut doc = table_doc("beta-moments", &t, Some(args.digits), json!({"linear_solve": "exact-rational"}))?;
    doc.add_parameter("qmax", json!(args.qmax));
    doc.add_parameter("fixed_trace", json!(args.fixed_trace));
    Ok(doc)
}

fn certificate_json(name: &str, certified: bool, points: usize) -> Value {
    json!({"equation": name, "certified": certified, "points": points})
}

fn density(args: DensityArgs) -> Result<Document, Failure> {
    if args.grid == 0 {
        return Err(Error::Input("--grid must be positive".into()).into());
    }
    let mut certs = Vec::new();
    let (header, rows, params): (Vec<&str>, Vec<Vec<String>>, Value) = match args.ensemble {
        DensityKind::Mp => {
            let alpha = args
                .alpha
                .ok_or_else(|| Error::Input("--ensemble mp needs --alpha".into()))?;
            if !(alpha >= 0.0) {
                return Err(Error::Domain(format!("alpha must be nonnegative, got {alpha}")).into());
            }
            let (lo, hi) = mp_edges(alpha);
            let rows = (0..=args.grid)
                .map(|j| {
                    let y = lo + (hi - lo) * j as f64 / args.grid as f64;
                    vec![format!("{y:.17e}"), format!("{:.17e}", mp_density(alpha, y))]
                })
                .collect();
            if args.certify {
                let c = certify_ode_mp(alpha);
                certs.push(json!({"equation": "marchenko-pastur", "certified": c.certified, "points": c.points,
                                  "max_relative_residual": c.max_relative_residual}));
            }
            (vec!["y", "density"], rows, json!({"alpha": alpha}))
        }
        kind => {
            let p = EnsembleParams::unitary(args.n, args.a)?;
            let lue = lue_density(&p)?;
            let rows: Vec<(String, String)> = match kind {
                DensityKind::Lue => {
                    let xmax = args.xmax.unwrap_or(4 * args.n + 2 * args.a.max(0) as u32 + 8) as i64;
                    let grid: Vec<Rational> = (0..=args.grid as i64).map(|j| rat(j * xmax, args.grid as i64)).collect();
                    if args.certify {
                        let c = certify_ode_u2(&lue);
                        certs.push(certificate_json("scalar", c.certified, c.points));
                        let c = certify_matrix_ode_lue(&lue);
                        certs.push(certificate_json("matrix", c.certified, c.points));
                    }
                    tabulate_lue(&lue, &grid, args.digits)
                }
                _ => {
                    let f = flue_density_from_lue(&lue)?;
                    let grid: Vec<Rational> = (0..=args.grid as i64).map(|j| rat(j, args.grid as i64)).collect();
                    if args.certify {
                        let c = certify_ode_flue(&f)?;
                        certs.push(certificate_json("scalar", c.certified, c.points));
                        let c = certify_matrix_ode_flue(&f)?;
                        certs.push(certificate_json("matrix", c.certified, c.points));
                    }
                    tabulate_flue(&f, &grid, args.digits)
                }
            };
            let params = serde_json::to_value(ParamsRecord::from(&p)).map_err(Failure::internal)?;
            (vec!["x", "density"], rows.into_iter().map(|(x, v)| vec![x, v]).collect(), params)
        }
    };
    if let Some(path) = &args.csv {
        write_rows(path, &header, &rows)?;
    }
    let ensemble = match args.ensemble {
        DensityKind::Lue => "lue",
        DensityKind::Flue => "flue",
        DensityKind::Mp => "mp",
    };
    let all_certified = certs.iter().all(|c| c["certified"] == json!(true));
    let mut doc = Document::new("density")
        .parameters(params)
        .route(ensemble)
        .algorithms(json!({"certification": "exact evaluation beyond degree bound"}))
        .result(json!({
            "grid": rows.iter().map(|r| json!({"x": r[0], "density": r[1]})).collect::<Vec<_>>(),
            "certificates": certs,
        }));
    doc.add_parameter("grid", json!(args.grid));
    if args.certify && !all_certified {
        return Err(Failure::Verification(doc));
    }
    Ok(doc)
}

fn resolve_seed(flag: Option<u64>) -> Result<SeedInfo, Failure> {
    let env = std::env::var("FIXTRACE_SEED").ok();
    let value = match (flag, &env) {
        (Some(s), _) => s,
        (None, Some(e)) => e
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("FIXTRACE_SEED must be an unsigned integer, got '{e}'")))?,
        (None, None) => DEFAULT_SEED,
    };
    let source = match (flag, &env) {
        (Some(_), _) => "flag",
        (None, Some(_)) => "environment",
        _ => "default",
    };
    Ok(SeedInfo { value, source, env })
}

fn sample(args: &McArgs, rng: &RngSpec) -> Result<(SampleBatch, Value), Failure> {
    let ex = exec(args.jobs);
    let a = rational(&args.a)?;
    Ok(match args.ensemble {
        McEnsemble::Sun => (sample_sun(args.n, args.draws, rng, ex)?, json!({"N": args.n})),
        McEnsemble::Beta => {
            let beta = rational(&args.beta)?;
            let p = EnsembleParams::new(args.n, a, beta.clone() / int(2))?;
            let b = if args.fixed_trace {
                sample_fixed_trace_beta(&p, args.draws, rng, ex)?
            } else {
                sample_beta_laguerre(&p, args.draws, rng, ex)?
            };
            let mut params = serde_json::to_value(ParamsRecord::from(&p)).map_err(Failure::internal)?;
            params["beta"] = json!(beta.to_string());
            params["fixed_trace"] = json!(args.fixed_trace);
            (b, params)
        }
        kind => {
            let p = EnsembleParams::new(args.n, a, int(1))?;
            let b = if matches!(kind, McEnsemble::Lue) {
                sample_lue(&p, args.draws, rng, ex)?
            } else {
                sample_flue(&p, args.draws, rng, ex)?
            };
            (b, serde_json::to_value(ParamsRecord::from(&p)).map_err(Failure::internal)?)
        }
    })
}

fn mc(args: McArgs) -> Result<Document, Failure> {
    let seed = resolve_seed(args.seed)?;
    let rng = RngSpec::new(seed.value);
    let stats: Vec<LinearStatistic> = if args.statistic.is_empty() {
        vec![match args.ensemble {
            McEnsemble::Sun => LinearStatistic::TraceRe(1),
            _ => LinearStatistic::Purity,
        }]
    } else {
        args.statistic
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, Error>>()?
    };
    let (batch, mut params) = sample(&args, &rng)?;
    params["draws"] = json!(args.draws);
    let estimates = stats
        .iter()
        .map(|s| estimate_linear_statistic(&batch, *s))
        .collect::<Result<Vec<_>, Error>>()?;
    if let Some(path) = &args.csv {
        let f = std::fs::File::create(path).map_err(Error::from)?;
        write_batch_csv(&batch, &stats, f)?;
    }
    let mut result = json!({
        "estimates": estimates,
        "draws": batch.count(),
        "rejected_draws": batch.rejected,
    });
    if let Some(bins) = args.hist {
        let (lo, hi) = match args.ensemble {
            McEnsemble::Sun => (-PI, PI + 1e-12),
            _ => {
                let all = batch.draws.iter().flatten();
                let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
                (lo.min(0.0), hi * (1.0 + 1e-9))
            }
        };
        let mut h = Histogram::new(lo, hi, bins)?;
        batch.draws.iter().flatten().for_each(|&x| h.push(x));
        if let Some(path) = &args.hist_csv {
            let f = std::fs::File::create(path).map_err(Error::from)?;
            write_histogram_csv(&h, &header_line(&batch), f)?;
        }
        result["histogram"] = serde_json::to_value(&h).map_err(Failure::internal)?;
    }
    let ensemble = match args.ensemble {
        McEnsemble::Lue => "lue",
        McEnsemble::Flue => "flue",
        McEnsemble::Beta => "beta",
        McEnsemble::Sun => "sun",
    };
    let algorithms = match args.ensemble {
        McEnsemble::Sun => json!({"rng": RNG_ALGORITHM, "matrix": "haar unitary via QR, determinant phase removed",
                                  "eigen": "complex Hessenberg shifted QR"}),
        McEnsemble::Beta => json!({"rng": RNG_ALGORITHM, "matrix": "bidiagonal chi model", "eigen": "implicit QL"}),
        _ => json!({"rng": RNG_ALGORITHM, "matrix": "complex Wishart", "eigen": "Householder + implicit QL"}),
    };
    Ok(Document::new("mc")
        .parameters(params)
        .route(ensemble)
        .seed(seed)
        .algorithms(algorithms)
        .result(result))
}

fn sun(args: SunArgs) -> Result<Document, Failure> {
    let n = args.n;
    if n < 2 {
        return Err(Error::Domain(format!("SU(N) needs N >= 2, got {n}")).into());
    }
    if args.grid == 0 {
        return Err(Error::Input("--grid must be positive".into()).into());
    }
    let g = args.grid;
    let f = |x: f64| format!("{x:.17e}");
    let (route, header, rows, result): (&str, Vec<&str>, Vec<Vec<String>>, Value) = if args.rho1 {
        let rows: Vec<Vec<String>> = (0..g)
            .map(|i| {
                let t = -PI + 2.0 * PI * i as f64 / g as f64;
                vec![f(t), f(rho1_sun(n, t))]
            })
            .collect();
        let ni = n as i64;
        let means = (-(2 * ni - 1)..=(2 * ni - 1))
            .map(|p| Ok(json!({"p": p, "mean": trace_power_mean(n, p)?})))
            .collect::<Result<Vec<_>, Error>>()?;
        let abs2 = (0..=(n as i32 + 1))
            .map(|p| Ok(json!({"p": p, "mean": abs2_trace_power_mean(n, p, Group::SU)?})))
            .collect::<Result<Vec<_>, Error>>()?;
        (
            "rho1",
            vec!["theta", "rho1"],
            rows,
            json!({"trace_power_means": means, "abs2_trace_power_means": abs2}),
        )
    } else if args.rho2 {
        let rows = correlation_grid(n, g)?
            .into_iter()
            .map(|r| r.iter().map(|&x| f(x)).collect())
            .collect();
        ("rho2", vec!["theta", "theta_prime", "rho2", "rho2t"], rows, json!({}))
    } else if args.bulk {
        let mut sup = 0.0f64;
        let mut rows = Vec::with_capacity((g + 1) * (g + 1));
        for i in 0..=g {
            for j in 0..=g {
                let x = -1.0 + 2.0 * i as f64 / g as f64;
                let xp = -1.0 + 2.0 * j as f64 / g as f64;
                let r = bulk_residual(n, x, xp);
                sup = sup.max(r.abs());
                rows.push(vec![f(x), f(xp), f(r), f(bulk_residual_leading_only(n, x, xp))]);
            }
        }
        ("bulk", vec!["x", "x_prime", "remainder", "remainder_leading_only"], rows, json!({"sup_remainder": sup}))
    } else {
        let group = match args.group {
            GroupArg::U => Group::U,
            GroupArg::Su => Group::SU,
        };
        let (fs, gs) = (FourierSeries::cosine(args.p), FourierSeries::cosine(args.q));
        let c = covariance_linear_stats(n, &fs, &gs, group)?;
        let base = covariance_linear_stats(n, &fs, &gs, Group::U)?;
        (
            "covariance",
            vec![],
            vec![],
            json!({"f": format!("cos({}θ)", args.p), "g": format!("cos({}θ)", args.q),
                   "group": if group == Group::U { "U" } else { "SU" },
                   "covariance": {"re": c.re, "im": c.im}, "unitary_baseline": {"re": base.re, "im": base.im}}),
        )
    };
    if let Some(path) = &args.csv {
        if header.is_empty() {
            return Err(Error::Input("--cov has no table to write; drop --csv".into()).into());
        }
        write_rows(path, &header, &rows)?;
    }
    let mut doc = Document::new("sun")
        .parameters(json!({"N": n, "grid": g}))
        .route(route)
        .algorithms(json!({"integration": "periodic trapezoid, exact for trigonometric polynomials"}))
        .result(result);
    if args.cov {
        doc.add_parameter("p", json!(args.p));
        doc.add_parameter("q", json!(args.q));
    }
    Ok(doc)
}

fn verify(args: VerifyArgs) -> Result<Document, Failure> {
    let seed = resolve_seed(args.seed)?;
    let suite = match args.suite {
        SuiteArg::Quick => Suite::Quick,
        SuiteArg::Full => Suite::Full,
    };
    let cfg = VerifyConfig {
        suite,
        seed: seed.value,
        exec: exec(args.jobs),
    };
    let results = run_suite(&cfg);
    for r in &results {
        eprintln!("{}", r.line());
    }
    let ok = results.iter().all(|r| r.passed && r.within_time());
    // timings vary between runs and stay on stderr
    let summary: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail,
                   "limit_seconds": r.limit_seconds, "error": r.error})
        })
        .collect();
    let doc = Document::new("verify")
        .parameters(json!({"suite": serde_json::to_value(suite).map_err(Failure::internal)?}))
        .route("acceptance")
        .seed(seed)
        .algorithms(json!({"rng": RNG_ALGORITHM}))
        .result(json!({"criteria": summary, "passed": ok}));
    if ok {
        Ok(doc)
    } else {
        Err(Failure::Verification(doc))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.command {
        Command::Moments(a) => moments(a),
        Command::Cumulants(a) => cumulants(a),
        Command::BetaMoments(a) => beta_moments(a),
        Command::Density(a) => density(a),
        Command::Mc(a) => mc(a),
        Command::Sun(a) => sun(a),
        Command::Verify(a) => verify(a),
    };
    match res {
        Ok(doc) => {
            println!("{}", doc.render());
            ExitCode::SUCCESS
        }
        Err(f) => f.report(),
    }
}
