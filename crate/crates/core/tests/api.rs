use fixtrace_core::beta_rec::fixed_trace_beta_moments;
use fixtrace_core::moments::flue_tq_moment_sum;
use fixtrace_core::painleve::flue_purity_moments;
use fixtrace_core::sampling::{sample_beta_laguerre, sample_flue, sample_sun, RngSpec};
use fixtrace_core::{EnsembleParams, Execution};
use num_traits::ToPrimitive;

/// ⟨(x^q + (1−x)^q)^k⟩ for N = 2 by direct quadrature of the joint density
/// x^a (1−x)^a (2x−1)² on [0, 1].
fn n2_oracle(a: i32, q: i32, k: i32) -> f64 {
    let steps = 20_000;
    let h = 1.0 / steps as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..=steps {
        let x = i as f64 * h;
        let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let rho = (x * (1.0 - x)).powi(a) * (2.0 * x - 1.0).powi(2);
        num += w * rho * (x.powi(q) + (1.0 - x).powi(q)).powi(k);
        den += w * rho;
    }
    num / den
}

#[test]
fn two_by_two_moments_match_quadrature() {
    for a in 0..=3 {
        let p = EnsembleParams::unitary(2, a as i64).unwrap();
        for q in 2..=4 {
            for k in 1..=3 {
                let exact = flue_tq_moment_sum(&p, q, k).unwrap().to_f64().unwrap();
                let oracle = n2_oracle(a, q as i32, k as i32);
                assert!((exact - oracle).abs() < 1e-12, "a={a} q={q} k={k}: {exact} vs {oracle}");
            }
        }
    }
}

#[test]
fn purity_moments_agree_across_modules() {
    for (n, a) in [(2, 0), (3, 1), (4, 2)] {
        let p = EnsembleParams::unitary(n, a).unwrap();
        let painleve = flue_purity_moments(&p, 3).unwrap();
        let bidiag = fixed_trace_beta_moments(&p, 3).unwrap();
        for k in 1..=3 {
            let direct = flue_tq_moment_sum(&p, 2, k).unwrap();
            assert_eq!(painleve.get(k), Some(&direct), "Painlevé N={n} a={a} k={k}");
            assert_eq!(bidiag.get(k), Some(&direct), "bidiagonal N={n} a={a} k={k}");
        }
    }
}

#[test]
fn draws_do_not_depend_on_execution() {
    let rng = RngSpec::new(404);
    let p = EnsembleParams::unitary(3, 2).unwrap();
    let variants = [
        Execution::Sequential,
        Execution::Parallel { jobs: None },
        Execution::Parallel { jobs: Some(3) },
    ];
    let flue: Vec<_> = variants.iter().map(|&e| sample_flue(&p, 700, &rng, e).unwrap().draws).collect();
    let beta: Vec<_> = variants
        .iter()
        .map(|&e| sample_beta_laguerre(&p, 700, &rng, e).unwrap().draws)
        .collect();
    let sun: Vec<_> = variants.iter().map(|&e| sample_sun(3, 700, &rng, e).unwrap().draws).collect();
    for set in [&flue, &beta, &sun] {
        assert_eq!(set[0].len(), 700);
        assert!(set.iter().all(|d| d == &set[0]));
    }
    for d in &flue {
        for x in d {
            assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
    for d in &sun[0] {
        // det U = 1: phases sum to a multiple of 2π
        let turns = d.iter().sum::<f64>() / std::f64::consts::TAU;
        assert!((turns - turns.round()).abs() < 1e-9, "{d:?}");
    }
}
