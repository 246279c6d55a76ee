use ciswap::calibration::{
    draw_rng, monte_carlo_gate_fidelity, nelder_mead, propagate_errors, propagate_gate_param_errors,
    sample_circuit_params, search_circuit_params, ErrorModel, NelderMeadOptions, SearchTargets,
};
use ciswap::circuit_quantization::{flux_from_fraction, gate_params_from_circuit, quality_metrics, CircuitParams};
use ciswap::dynamics::{FluxDrive, FluxSimOptions};
use ciswap::{Error, MHZ};
use proptest::prelude::*;
use rand::RngCore;

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2)).sum()
}

#[test]
fn draw_streams_are_reproducible_and_distinct() {
    let a: Vec<u64> = (0..4).map(|_| draw_rng(7, 3).next_u64()).collect();
    assert!(a.windows(2).all(|w| w[0] == w[1]));
    assert_ne!(draw_rng(7, 3).next_u64(), draw_rng(7, 4).next_u64());
    assert_ne!(draw_rng(7, 3).next_u64(), draw_rng(8, 3).next_u64());
}

#[test]
fn sampling_is_deterministic_and_positive() {
    let p = CircuitParams::reference(2).unwrap();
    let em = ErrorModel { rel_sigma: 0.05, rng_seed: 11, ..ErrorModel::default() };
    assert_eq!(sample_circuit_params(&p, &em, 5), sample_circuit_params(&p, &em, 5));
    assert_ne!(sample_circuit_params(&p, &em, 5), sample_circuit_params(&p, &em, 6));
    let zero = ErrorModel { rel_sigma: 0.0, ..em };
    assert_eq!(sample_circuit_params(&p, &zero, 9), p);
    let wide = ErrorModel { rel_sigma: 2.0, ..em };
    for idx in 0..200 {
        assert!(sample_circuit_params(&p, &wide, idx).elements().iter().all(|&x| x > 0.0));
    }
}

#[test]
fn linear_functional_statistics() {
    let p = CircuitParams::reference(1).unwrap();
    let em = ErrorModel { rel_sigma: 0.05, n_samples: 20_000, rng_seed: 3, ..ErrorModel::default() };
    let names = vec!["c_x".to_string(), "e_t1".to_string()];
    let summary = propagate_errors(&p, &em, &names, |q| Ok(vec![q.c_x, q.e_t1])).unwrap();
    assert_eq!(summary.n_success, 20_000);
    for (name, x0) in [("c_x", p.c_x), ("e_t1", p.e_t1)] {
        let s = summary.get(name).unwrap();
        let se = 0.05 * x0 / (20_000f64).sqrt();
        assert!((s.mean - x0).abs() < 4.0 * se, "{name} mean");
        assert!((s.std / (0.05 * x0) - 1.0).abs() < 0.03, "{name} std");
    }
}

#[test]
fn failing_samples_are_counted() {
    let p = CircuitParams::reference(1).unwrap();
    let em = ErrorModel { n_samples: 100, rng_seed: 1, ..ErrorModel::default() };
    let names = vec!["x".to_string()];
    let summary = propagate_errors(&p, &em, &names, |q| {
        if q.c_x > 1.035 * p.c_x { Err(Error::NonFinite("test")) } else { Ok(vec![q.c_x]) }
    })
    .unwrap();
    assert_eq!(summary.n_success + summary.n_failed, 100);
    assert!(summary.n_failed > 10 && summary.n_failed < 40);
    let always = propagate_errors(&p, &em, &names, |_| Err(Error::NonFinite("test")));
    assert!(matches!(always, Err(Error::TooManyFailures { failed: 100, total: 100 })));
}

#[test]
fn error_model_validation() {
    assert!(ErrorModel { rel_sigma: -0.1, ..ErrorModel::default() }.validate().is_err());
    assert!(ErrorModel { n_samples: 0, ..ErrorModel::default() }.validate().is_err());
    assert!(ErrorModel { flux_freq_sigma: f64::NAN, ..ErrorModel::default() }.validate().is_err());
    assert!(ErrorModel::default().validate().is_ok());
}

#[test]
fn gate_statistics_with_zero_spread_equal_nominal() {
    let p = CircuitParams::reference(2).unwrap();
    let em = ErrorModel { rel_sigma: 0.0, n_samples: 3, ..ErrorModel::default() };
    let s = propagate_gate_param_errors(&p, &em).unwrap();
    let nominal = gate_params_from_circuit(&p).unwrap().table_columns();
    for (stat, v) in s.stats.iter().zip(nominal) {
        assert!((stat.mean - v).abs() <= 1e-12 * v.abs());
        assert_eq!(stat.std, 0.0);
    }
}

#[test]
fn nelder_mead_minimizes_standard_problems() {
    let opts = NelderMeadOptions::default();
    let r = nelder_mead(rosenbrock, &[-1.2, 1.0], &opts).unwrap();
    assert!(r.converged);
    assert!(r.x.iter().all(|x| (x - 1.0).abs() < 1e-6), "{:?}", r.x);
    let r4 = nelder_mead(rosenbrock, &[-1.0, 1.5, 0.5, -0.5], &NelderMeadOptions { max_iter: 100_000, ..opts.clone() }).unwrap();
    assert!(r4.f < 1e-10, "{}", r4.f);
    let quad = |x: &[f64]| (x[0] - 3.0).powi(2) + 10.0 * (x[1] + 2.0).powi(2) + x[2].powi(2);
    let rq = nelder_mead(quad, &[0.0, 0.0, 0.0], &opts).unwrap();
    assert!((rq.x[0] - 3.0).abs() < 1e-6 && (rq.x[1] + 2.0).abs() < 1e-6 && rq.x[2].abs() < 1e-6);
    assert!(nelder_mead(quad, &[], &opts).is_err());
}

#[test]
fn nan_objective_is_treated_as_infinite() {
    let f = |x: &[f64]| if x[0] < 0.0 { f64::NAN } else { (x[0] - 2.0).powi(2) };
    let r = nelder_mead(f, &[1.0], &NelderMeadOptions::default()).unwrap();
    assert!((r.x[0] - 2.0).abs() < 1e-6, "{r:?}");
}

fn relaxed_targets() -> SearchTargets {
    SearchTargets {
        jz_range: (30.0 * MHZ, 200.0 * MHZ),
        jx_range: (5.0 * MHZ, 40.0 * MHZ),
        alpha_floor: 0.01,
        ej_ec_floor: 40.0,
        max_iter: 1500,
        ..SearchTargets::default()
    }
}

#[test]
fn seeded_search_returns_feasible_ranked_candidates() {
    let targets = relaxed_targets();
    let seed = CircuitParams::reference(1).unwrap();
    let found = search_circuit_params(&targets, 1, 5, &[seed.clone()]).unwrap();
    assert!(!found.is_empty());
    assert!(found.windows(2).all(|w| w[0].cost <= w[1].cost));
    for cand in &found {
        assert!(cand.feasible);
        let gate = gate_params_from_circuit(&cand.params).unwrap();
        let q = quality_metrics(&cand.params).unwrap();
        for jz in &gate.jz {
            assert!(jz.abs() >= targets.jz_range.0 && jz.abs() <= targets.jz_range.1);
        }
        assert!(gate.jx_dressed.abs() >= targets.jx_range.0 && gate.jx_dressed.abs() <= targets.jx_range.1);
        assert!(q.alpha.iter().all(|a| -a >= targets.alpha_floor));
        assert!(q.ej_over_ec.iter().all(|r| *r >= targets.ej_ec_floor));
    }
    let again = search_circuit_params(&targets, 1, 5, &[seed]).unwrap();
    assert_eq!(found, again);
}

#[test]
fn search_rejects_bad_inputs() {
    let seed = CircuitParams::reference(1).unwrap();
    let two = SearchTargets { n_controls: 2, ..relaxed_targets() };
    assert!(search_circuit_params(&two, 1, 0, &[seed]).is_err());
    let bad = SearchTargets { jz_range: (10.0, 1.0), ..relaxed_targets() };
    assert!(bad.validate().is_err());
    let impossible = SearchTargets {
        jx_range: (1e12, 2e12),
        max_iter: 50,
        ..relaxed_targets()
    };
    let r = search_circuit_params(&impossible, 1, 0, &[CircuitParams::reference(1).unwrap()]);
    assert!(matches!(r, Err(Error::NoFeasible { .. })));
}

#[test]
fn small_flux_monte_carlo_is_deterministic() {
    let p = CircuitParams::reference(2).unwrap();
    let phi = flux_from_fraction(0.1);
    let drive = FluxDrive { theta: phi, chi: phi, omega_phi: None };
    let em = ErrorModel { rel_sigma: 0.05, flux_freq_sigma: MHZ, n_samples: 4, rng_seed: 21 };
    let opts = FluxSimOptions::default();
    let a = monte_carlo_gate_fidelity(&p, &em, &drive, None, &opts).unwrap();
    let b = monte_carlo_gate_fidelity(&p, &em, &drive, None, &opts).unwrap();
    assert_eq!(a.fidelities(), b.fidelities());
    assert_eq!(a.samples.len() + a.failures.len(), 4);
    assert!(a.nominal_fidelity > 0.99 && a.nominal_fidelity <= 1.0);
    assert!(a.fidelities().iter().all(|f| (0.0..=1.0 + 1e-9).contains(f)));
    let f = a.fraction_above(0.0);
    assert!((f - 1.0).abs() < 1e-12);
    let bad = ErrorModel { n_samples: 0, ..em };
    assert!(monte_carlo_gate_fidelity(&p, &bad, &drive, None, &opts).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_elements_are_positive_and_scale_free(seed in 0u64..1000, idx in 0u64..1000, sigma in 0.0f64..1.5) {
        let p = CircuitParams::reference(3).unwrap();
        let em = ErrorModel { rel_sigma: sigma, rng_seed: seed, ..ErrorModel::default() };
        let q = sample_circuit_params(&p, &em, idx);
        prop_assert!(q.elements().iter().all(|&x| x > 0.0 && x.is_finite()));
        prop_assert_eq!(q.flux, p.flux);
        prop_assert_eq!(q.n_controls(), p.n_controls());
    }
}
