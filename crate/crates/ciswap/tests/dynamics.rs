mod common;

use ciswap::dynamics::ode::{integrate, OdeOptions};
use ciswap::dynamics::{
    average_gate_fidelity, channel_from_evolution, collapse_operators, gate_fidelity, haar_average_fidelity,
    lindblad_evolve, rotating_frame, simulate_cniswap, simulate_swap_array, unitary_average_fidelity,
    DecoherenceSpec, Liouvillian, QuantumChannel, TimeDependentHamiltonian,
};
use ciswap::gate_models::{ideal_cniswap, PhaseSign};
use ciswap::quantum_core::{haar_random_state, matrix_exp, sigma_x, sigma_z};
use ciswap::{DensityMatrix, GateModelParams, Operator, SwapArrayParams, GHZ, MHZ, US};
use common::{c, kron_oracle, random_hermitian, rng, taylor_expm};
use proptest::prelude::*;

/// Row-major vectorization: `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)`.
fn dense_liouvillian(h: &Operator, collapse: &[Operator]) -> Operator {
    let d = h.dim();
    let id = Operator::identity(d);
    let mut l = (&kron_oracle(h, &id) - &kron_oracle(&id, &h.transpose())).scale(c(0.0, -1.0));
    for op in collapse {
        let ldl = op.adjoint().matmul(op);
        l += &kron_oracle(op, &op.conj());
        l += &kron_oracle(&ldl, &id).scale_real(-0.5);
        l += &kron_oracle(&id, &ldl.transpose()).scale_real(-0.5);
    }
    l
}

fn apply_super(s: &Operator, rho: &Operator) -> Operator {
    Operator::from_vec(rho.dim(), s.apply(rho.data())).unwrap()
}

#[test]
fn ode_matches_exact_rotation_and_decay() {
    let w = 2.0 * GHZ;
    let gamma = 1e7;
    let times: Vec<f64> = (1..=5).map(|k| k as f64 * 1e-8).collect();
    let sol = integrate(
        |_, y, dy| {
            dy[0] = c(0.0, -w) * y[0];
            dy[1] = -gamma * y[1];
        },
        0.0,
        &[c(1.0, 0.0), c(1.0, 0.0)],
        &times,
        &OdeOptions { rtol: 1e-11, atol: 1e-13, ..OdeOptions::default() },
    )
    .unwrap();
    for (t, y) in times.iter().zip(&sol) {
        assert!((y[0] - c(0.0, -w * t).exp()).norm() < 1e-6, "rotation at {t}");
        assert!((y[1].re - (-gamma * t).exp()).abs() < 1e-8, "decay at {t}");
    }
    assert!(integrate(|_, _, dy| dy[0] = c(0.0, 0.0), 0.0, &[c(1.0, 0.0)], &[-1.0], &OdeOptions::default()).is_err());
}

#[test]
fn sparse_propagator_matches_dense_oracle() {
    let mut r = rng(11);
    let h = random_hermitian(4, &mut r).scale_real(3.0);
    let spec = DecoherenceSpec::uniform(2, 1.5, 1.2);
    let collapse = collapse_operators(2, &spec).unwrap();
    let liou = Liouvillian::new(&h, &collapse).unwrap();
    let dense = dense_liouvillian(&h, &collapse);
    let t = 0.7;
    let ch = liou.propagator(t).unwrap();
    let prop = taylor_expm(&dense.scale_real(t));
    let rho = haar_random_state::<f64>(4, 3).unwrap().to_density();
    let got = ch.apply(rho.as_operator());
    let want = apply_super(&prop, rho.as_operator());
    assert!(got.approx_eq(&want, 1e-10), "{:e}", got.max_abs_diff(&want));
    assert!(liou.apply(rho.as_operator()).approx_eq(&apply_super(&dense, rho.as_operator()), 1e-12));
}

#[test]
fn sectors_split_diagonal_dephasing() {
    let h = sigma_z::<f64>().kron(&Operator::identity(2));
    let spec = DecoherenceSpec::uniform(2, f64::INFINITY, 2.0);
    let liou = Liouvillian::new(&h, &collapse_operators(2, &spec).unwrap()).unwrap();
    // Pure dephasing under a diagonal Hamiltonian couples nothing: 16 singleton sectors.
    assert_eq!(liou.sectors().len(), 16);
}

#[test]
fn amplitude_damping_and_dephasing_rates() {
    let (t1, t2) = (20.0 * US, 15.0 * US);
    let spec = DecoherenceSpec::uniform(1, t1, t2);
    let collapse = collapse_operators(1, &spec).unwrap();
    let h = TimeDependentHamiltonian::constant(Operator::zeros(2));
    let plus = ciswap::PureState::normalized(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let excited = plus.to_density();
    let traj = lindblad_evolve(&h, &excited, &collapse, 10.0 * US, 2.5 * US).unwrap();
    for (t, rho) in traj.times.iter().zip(&traj.states) {
        assert!((rho.as_operator()[(1, 1)].re - (-t / t1).exp()).abs() < 1e-7);
    }
    let sup = ciswap::PureState::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap().to_density();
    let traj = lindblad_evolve(&h, &sup, &collapse, 10.0 * US, 10.0 * US).unwrap();
    let coh = traj.states.last().unwrap().as_operator()[(0, 1)].norm();
    assert!((coh - 0.5 * (-10.0 * US / t2).exp()).abs() < 1e-7);
    assert!(DecoherenceSpec::uniform(1, 1.0, 3.0).validate().is_err());
}

#[test]
fn time_dependent_evolution_matches_constant_propagator() {
    let mut r = rng(12);
    let h0 = random_hermitian(2, &mut r);
    let x = sigma_x::<f64>();
    let h = TimeDependentHamiltonian::constant(h0.clone()).with_drive(x.clone(), |_| 0.5);
    let rho = haar_random_state::<f64>(2, 1).unwrap().to_density();
    let traj = lindblad_evolve(&h, &rho, &[], 2.0, 1.0).unwrap();
    let u = matrix_exp(&(&h0 + &x.scale_real(0.5)).scale(c(0.0, -2.0))).unwrap();
    let want = rho.conjugate(&u);
    assert!(traj.states.last().unwrap().as_operator().approx_eq(want.as_operator(), 1e-7));
    let framed = rotating_frame(&traj, &sigma_z()).unwrap();
    assert_eq!(framed.states.len(), traj.states.len());
    assert!(rotating_frame(&traj, &x).is_err());
}

#[test]
fn closed_form_fidelity_matches_haar_oracle() {
    let mut r = rng(13);
    let h = random_hermitian(4, &mut r);
    let spec = DecoherenceSpec::uniform(2, 3.0, 2.0);
    let ch = Liouvillian::new(&h, &collapse_operators(2, &spec).unwrap()).unwrap().propagator(0.4).unwrap();
    let target = ideal_cniswap::<f64>(0, PhaseSign::MinusI);
    let exact = average_gate_fidelity(&ch, &target).unwrap();
    let (mean, se) = haar_average_fidelity(&ch, &target, 10_000, 7).unwrap();
    assert!((exact - mean).abs() < 3.0 * se, "exact {exact}, sampled {mean} ± {se}");
}

#[test]
fn unitary_and_channel_fidelities_agree() {
    let mut r = rng(14);
    let u = matrix_exp(&random_hermitian(4, &mut r).scale(c(0.0, -1.0))).unwrap();
    let v = matrix_exp(&random_hermitian(4, &mut r).scale(c(0.0, -0.2))).unwrap();
    let a = unitary_average_fidelity(&u, &v).unwrap();
    let b = average_gate_fidelity(&QuantumChannel::from_unitary(&u), &v).unwrap();
    assert!((a - b).abs() < 1e-13);
    assert!((unitary_average_fidelity(&v, &v).unwrap() - 1.0).abs() < 1e-14);
    // Completely depolarizing channel: F = 1/d.
    let dep = channel_from_evolution(|m| Ok(Operator::identity(4).scale(m.trace() / 4.0)), 4).unwrap();
    assert!((average_gate_fidelity(&dep, &v).unwrap() - 0.25).abs() < 1e-14);
    assert!(average_gate_fidelity(&dep, &Operator::zeros(4)).is_err());
}

#[test]
fn frozen_gate_fidelities() {
    let p = GateModelParams::resonant(vec![50.0 * MHZ; 2], 10.0 * MHZ);
    let clean = simulate_cniswap(&p, None).unwrap();
    assert!((clean.fidelity - 0.998376).abs() < 2e-6, "{}", clean.fidelity);
    assert!((clean.gate_time - 25e-9).abs() < 1e-18);
    let spec = DecoherenceSpec::uniform(4, 30.0 * US, 30.0 * US);
    let noisy = simulate_cniswap(&p, Some(&spec)).unwrap();
    assert!((noisy.fidelity - 0.996031).abs() < 2e-6, "{}", noisy.fidelity);

    let sa = SwapArrayParams::resonant(5.0 * GHZ, vec![-20.0 * MHZ, 20.0 * MHZ, 60.0 * MHZ], 4.0 * MHZ, vec![4.0 * GHZ, 4.2 * GHZ, 4.4 * GHZ]);
    let f = simulate_swap_array(&sa, None).unwrap();
    assert!((f - 0.993549).abs() < 2e-6, "{f}");
}

#[test]
fn fidelity_without_exchange_is_not_perfect() {
    let p = GateModelParams::resonant(vec![50.0 * MHZ], 0.0);
    let h = ciswap::gate_models::interaction_hamiltonian(&p).unwrap();
    let f = gate_fidelity(&h, 25e-9, &ideal_cniswap(1, PhaseSign::MinusI), &[]).unwrap();
    // Identity against CiSWAP: |Tr|² = 36 of d = 8.
    assert!((f - (36.0 + 8.0) / 72.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lindblad_channels_are_trace_preserving_and_completely_positive(
        seed in 0u64..10_000,
        t1 in 0.5f64..5.0,
        ratio in 0.1f64..2.0,
        t in 0.01f64..2.0,
    ) {
        let mut r = rng(seed);
        let h = random_hermitian(4, &mut r);
        let spec = DecoherenceSpec::uniform(2, t1, t1 * ratio);
        let ch = Liouvillian::new(&h, &collapse_operators(2, &spec).unwrap()).unwrap().propagator(t).unwrap();
        prop_assert!(ch.trace_preservation_error() < 1e-11);
        let min = ch.choi_eigenvalues().unwrap()[0];
        prop_assert!(min > -1e-10, "Choi eigenvalue {min}");
        let rho = haar_random_state::<f64>(4, seed).unwrap().to_density();
        let out = DensityMatrix::new(ch.apply(rho.as_operator()));
        prop_assert!(out.is_ok());
        let f = average_gate_fidelity(&ch, &Operator::identity(4)).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
    }
}
